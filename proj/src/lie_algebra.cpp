#include "wedgelab/lie_algebra.hpp"

#include <cmath>
#include <sstream>

#include "wedgelab/linalg.hpp"

namespace wedgelab {

namespace {

VectorXd vectorize(const MatrixXd& m) {
  return Eigen::Map<const VectorXd>(m.data(), m.size());
}

MatrixXd commutator(const MatrixXd& a, const MatrixXd& b) { return a * b - b * a; }

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.algebra || !y.algebra || x.algebra.get() != y.algebra.get())
    throw DomainError("elements belong to different algebras");
}

}  // namespace

AlgebraElement::AlgebraElement(AlgebraPtr alg, VectorXd c)
    : algebra(std::move(alg)), coeffs(std::move(c)) {
  if (!algebra) throw DomainError("null algebra");
  if (coeffs.size() != algebra->dim())
    throw DomainError("coefficient vector length does not match algebra dimension");
}

MatrixXd AlgebraElement::realize() const { return algebra->realize(coeffs); }

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_algebra(*this, o);
  return AlgebraElement(algebra, coeffs + o.coeffs);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same_algebra(*this, o);
  return AlgebraElement(algebra, coeffs - o.coeffs);
}

AlgebraElement AlgebraElement::operator*(double s) const {
  return AlgebraElement(algebra, coeffs * s);
}

AlgebraPtr LieAlgebra::make(std::string name, std::vector<MatrixXd> basis,
                            double tolerance) {
  if (basis.empty()) throw DomainError("empty basis");
  if (tolerance < 0) throw DomainError("negative tolerance");
  auto alg = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  alg->name_ = std::move(name);
  alg->tol_ = tolerance;
  alg->n_ = static_cast<int>(basis.front().rows());
  alg->d_ = static_cast<int>(basis.size());
  for (const auto& b : basis) {
    if (b.rows() != alg->n_ || b.cols() != alg->n_)
      throw DomainError("basis matrices must be square and of equal size");
  }
  alg->basis_ = std::move(basis);

  const int n2 = alg->n_ * alg->n_;
  alg->vec_basis_.resize(n2, alg->d_);
  for (int i = 0; i < alg->d_; ++i)
    alg->vec_basis_.col(i) = vectorize(alg->basis_[static_cast<size_t>(i)]);

  if (linalg::rank(alg->vec_basis_, 1e-12) != alg->d_)
    throw DomainError("basis matrices are linearly dependent");
  alg->coord_solver_.compute(alg->vec_basis_);

  // structure constants, with closure check
  alg->structure_.assign(static_cast<size_t>(alg->d_), MatrixXd::Zero(alg->d_, alg->d_));
  for (int i = 0; i < alg->d_; ++i) {
    for (int j = 0; j < alg->d_; ++j) {
      MatrixXd br = commutator(alg->basis_[static_cast<size_t>(i)],
                               alg->basis_[static_cast<size_t>(j)]);
      double res = 0;
      VectorXd c = alg->coordinates(br, &res);
      if (res > alg->tol_ * std::max(1.0, br.norm())) {
        std::ostringstream os;
        os << "bracket [b_" << i << ", b_" << j << "] leaves the span (residual "
           << res << ")";
        throw DomainError(os.str());
      }
      for (int k = 0; k < alg->d_; ++k) alg->structure_[static_cast<size_t>(i)](j, k) = c(k);
    }
  }

  alg->ad_basis_.assign(static_cast<size_t>(alg->d_), MatrixXd::Zero(alg->d_, alg->d_));
  for (int i = 0; i < alg->d_; ++i)
    for (int j = 0; j < alg->d_; ++j)
      for (int k = 0; k < alg->d_; ++k)
        alg->ad_basis_[static_cast<size_t>(i)](k, j) = alg->structure_[static_cast<size_t>(i)](j, k);

  alg->validate();

  alg->killing_.resize(alg->d_, alg->d_);
  for (int i = 0; i < alg->d_; ++i)
    for (int j = i; j < alg->d_; ++j) {
      double v = (alg->ad_basis_[static_cast<size_t>(i)] * alg->ad_basis_[static_cast<size_t>(j)]).trace();
      alg->killing_(i, j) = v;
      alg->killing_(j, i) = v;
    }

  // reference metric: -B(x, theta y) when the transpose involution exists
  alg->metric_ = MatrixXd::Identity(alg->d_, alg->d_);
  bool theta_ok = true;
  MatrixXd theta(alg->d_, alg->d_);
  for (int j = 0; j < alg->d_ && theta_ok; ++j) {
    MatrixXd t = -alg->basis_[static_cast<size_t>(j)].transpose();
    double res = 0;
    VectorXd c = alg->coordinates(t, &res);
    if (res > alg->tol_ * std::max(1.0, t.norm()))
      theta_ok = false;
    else
      theta.col(j) = c;
  }
  if (theta_ok) {
    MatrixXd g = -alg->killing_ * theta;
    g = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    if (es.info() == Eigen::Success && es.eigenvalues().minCoeff() > alg->tol_) {
      alg->metric_ = g;
      alg->cartan_metric_ = true;
    }
  }
  return alg;
}

void LieAlgebra::validate() const {
  // antisymmetry and Jacobi on all basis triples
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        double anti = structure_[static_cast<size_t>(i)](j, k) + structure_[static_cast<size_t>(j)](i, k);
        if (std::abs(anti) > tol_)
          throw DomainError("structure constants violate antisymmetry");
      }
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j)
      for (int k = j + 1; k < d_; ++k) {
        MatrixXd a = basis_[static_cast<size_t>(i)], b = basis_[static_cast<size_t>(j)], c = basis_[static_cast<size_t>(k)];
        MatrixXd jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                       commutator(c, commutator(a, b));
        if (jac.norm() > tol_ * std::max(1.0, a.norm() * b.norm() * c.norm()))
          throw DomainError("Jacobi identity residual exceeds tolerance");
      }
}

VectorXd LieAlgebra::coordinates(const MatrixXd& m, double* residual) const {
  if (m.rows() != n_ || m.cols() != n_) throw DomainError("matrix size mismatch");
  VectorXd v = vectorize(m);
  VectorXd c = coord_solver_.solve(v);
  double res = (vec_basis_ * c - v).norm();
  if (residual) {
    *residual = res;
  } else if (res > tol_ * std::max(1.0, v.norm())) {
    throw DomainError("matrix does not lie in the algebra span");
  }
  return c;
}

MatrixXd LieAlgebra::realize(const VectorXd& coeffs) const {
  if (coeffs.size() != d_) throw DomainError("coefficient length mismatch");
  MatrixXd m = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < d_; ++i) m += coeffs(i) * basis_[static_cast<size_t>(i)];
  return m;
}

AlgebraElement LieAlgebra::element(const VectorXd& coeffs) const {
  return AlgebraElement(shared_from_this(), coeffs);
}

AlgebraElement LieAlgebra::element_from_matrix(const MatrixXd& m) const {
  return AlgebraElement(shared_from_this(), coordinates(m));
}

AlgebraElement LieAlgebra::zero() const { return element(VectorXd::Zero(d_)); }

AlgebraElement LieAlgebra::basis_element(int i) const {
  VectorXd c = VectorXd::Zero(d_);
  c(i) = 1.0;
  return element(c);
}

// ---- Subspace ---------------------------------------------------------------

Subspace::Subspace(AlgebraPtr algebra, const std::vector<AlgebraElement>& basis_vectors)
    : algebra_(std::move(algebra)), vectors_(basis_vectors) {
  if (!algebra_) throw DomainError("null algebra");
  MatrixXd b(algebra_->dim(), static_cast<int>(basis_vectors.size()));
  for (size_t i = 0; i < basis_vectors.size(); ++i) {
    if (basis_vectors[i].algebra.get() != algebra_.get())
      throw DomainError("subspace basis vector from a different algebra");
    b.col(static_cast<int>(i)) = basis_vectors[i].coeffs;
  }
  if (b.cols() > 0 && linalg::rank(b, 1e-12) != b.cols())
    throw DomainError("subspace basis vectors are linearly dependent");
  onb_ = linalg::column_space(b, 1e-12);
}

Subspace::Subspace(AlgebraPtr algebra, const MatrixXd& coeff_basis)
    : algebra_(std::move(algebra)) {
  if (!algebra_) throw DomainError("null algebra");
  if (coeff_basis.rows() != algebra_->dim())
    throw DomainError("coefficient basis has wrong row count");
  if (coeff_basis.cols() > 0 && linalg::rank(coeff_basis, 1e-12) != coeff_basis.cols())
    throw DomainError("subspace basis vectors are linearly dependent");
  for (int i = 0; i < coeff_basis.cols(); ++i)
    vectors_.push_back(algebra_->element(coeff_basis.col(i)));
  onb_ = linalg::column_space(coeff_basis, 1e-12);
}

Subspace Subspace::whole(AlgebraPtr algebra) {
  MatrixXd id = MatrixXd::Identity(algebra->dim(), algebra->dim());
  return Subspace(std::move(algebra), id);
}

AlgebraElement Subspace::project(const AlgebraElement& x) const {
  if (x.algebra.get() != algebra_.get()) throw DomainError("algebra mismatch");
  return algebra_->element(onb_ * (onb_.transpose() * x.coeffs));
}

bool Subspace::contains(const AlgebraElement& x, double* residual) const {
  if (x.algebra.get() != algebra_.get()) throw DomainError("algebra mismatch");
  double res = (x.coeffs - onb_ * (onb_.transpose() * x.coeffs)).norm();
  if (residual) *residual = res;
  return res <= algebra_->tolerance() * std::max(1.0, x.coeffs.norm());
}

bool Subspace::is_subalgebra() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) {
      AlgebraElement br =
          bracket(algebra_->element(onb_.col(i)), algebra_->element(onb_.col(j)));
      if (!contains(br)) return false;
    }
  return true;
}

// ---- Involution -------------------------------------------------------------

Involution::Involution(AlgebraPtr algebra, MatrixXd matrix, Label label)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)), label_(label) {
  if (!algebra_) throw DomainError("null algebra");
  const int d = algebra_->dim();
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw DomainError("involution matrix size mismatch");
  if (involution_residual() > algebra_->tolerance() * 10)
    throw DomainError("matrix is not an involution (square differs from identity)");
  if (automorphism_residual() > algebra_->tolerance() * 10)
    throw DomainError("involution is not bracket-compatible");
}

AlgebraElement Involution::apply(const AlgebraElement& x) const {
  if (x.algebra.get() != algebra_.get()) throw DomainError("algebra mismatch");
  return algebra_->element(matrix_ * x.coeffs);
}

double Involution::involution_residual() const {
  const int d = algebra_->dim();
  return (matrix_ * matrix_ - MatrixXd::Identity(d, d)).norm();
}

double Involution::automorphism_residual() const {
  const int d = algebra_->dim();
  double worst = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      AlgebraElement bi = algebra_->basis_element(i);
      AlgebraElement bj = algebra_->basis_element(j);
      VectorXd lhs = matrix_ * bracket(bi, bj).coeffs;
      VectorXd rhs =
          bracket(algebra_->element(matrix_.col(i)), algebra_->element(matrix_.col(j))).coeffs;
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

// ---- operations -------------------------------------------------------------

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  const auto& alg = *x.algebra;
  VectorXd out = VectorXd::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    if (x.coeffs(i) == 0.0) continue;
    out.noalias() += x.coeffs(i) * (alg.ad_basis(i) * y.coeffs);
  }
  return AlgebraElement(x.algebra, out);
}

MatrixXd ad_matrix(const AlgebraElement& x) {
  const auto& alg = *x.algebra;
  MatrixXd m = MatrixXd::Zero(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    if (x.coeffs(i) != 0.0) m += x.coeffs(i) * alg.ad_basis(i);
  return m;
}

double killing_form(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  return x.coeffs.dot(x.algebra->killing_matrix() * y.coeffs);
}

Spectrum spectrum(const AlgebraElement& x, double cluster_tol) {
  MatrixXd ad = ad_matrix(x);
  Eigen::EigenSolver<MatrixXd> es(ad, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver failed on ad matrix (norm " << ad.norm() << ", size "
       << ad.rows() << ")";
    throw NumericError(os.str());
  }
  Spectrum s;
  s.values = es.eigenvalues();
  s.semisimple = linalg::is_diagonalizable(ad, cluster_tol);
  return s;
}

bool is_euler(const AlgebraElement& h, double cluster_tol) {
  Spectrum s = spectrum(h, cluster_tol);
  if (!s.semisimple) return false;
  bool has_plus = false, has_minus = false;
  for (int i = 0; i < s.values.size(); ++i) {
    std::complex<double> lam = s.values(i);
    if (std::abs(lam.imag()) > cluster_tol) return false;
    double re = lam.real();
    double d0 = std::abs(re), dp = std::abs(re - 1.0), dm = std::abs(re + 1.0);
    if (dp <= cluster_tol)
      has_plus = true;
    else if (dm <= cluster_tol)
      has_minus = true;
    else if (d0 > cluster_tol)
      return false;
  }
  return has_plus && has_minus;
}

Grading grading(const AlgebraElement& h) {
  if (!is_euler(h)) throw PreconditionError("grading requires an Euler element");
  const auto& alg = h.algebra;
  const int d = alg->dim();
  MatrixXd a = ad_matrix(h);
  MatrixXd id = MatrixXd::Identity(d, d);
  MatrixXd p_plus = 0.5 * a * (a + id);
  MatrixXd p_minus = 0.5 * a * (a - id);
  MatrixXd p_zero = id - a * a;
  double tol = 1e-12;
  Grading g{Subspace(alg, linalg::column_space(p_plus, tol)),
            Subspace(alg, linalg::column_space(p_zero, tol)),
            Subspace(alg, linalg::column_space(p_minus, tol))};
  if (g.plus.dim() + g.zero.dim() + g.minus.dim() != d)
    throw NumericError("grading dimensions do not sum to the algebra dimension");
  return g;
}

Involution tau_h_involution(const AlgebraElement& h) {
  if (!is_euler(h)) throw PreconditionError("tau_h requires an Euler element");
  MatrixXd a = ad_matrix(h);
  const int d = h.algebra->dim();
  MatrixXd m = MatrixXd::Identity(d, d) - 2.0 * a * a;
  return Involution(h.algebra, m, Involution::Label::tau_h);
}

Involution cartan_involution_transpose(const AlgebraPtr& algebra) {
  const int d = algebra->dim();
  MatrixXd theta(d, d);
  for (int j = 0; j < d; ++j) {
    MatrixXd t = -algebra->basis()[static_cast<size_t>(j)].transpose();
    double res = 0;
    VectorXd c = algebra->coordinates(t, &res);
    if (res > algebra->tolerance() * std::max(1.0, t.norm()))
      throw UnsupportedError(
          "algebra span is not closed under x -> -x^T; transpose Cartan "
          "involution unavailable");
    theta.col(j) = c;
  }
  Involution inv(algebra, theta, Involution::Label::cartan);
  // Cartan property: -B(x, theta y) positive definite on the basis.
  MatrixXd g = -algebra->killing_matrix() * theta;
  g = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
    throw UnsupportedError("-B(x, theta y) is not positive definite");
  return inv;
}

Involution compose(const Involution& sigma, const Involution& rho) {
  MatrixXd prod = compose_matrix(sigma, rho);
  double comm = (prod - rho.matrix() * sigma.matrix()).norm();
  if (comm > sigma.algebra()->tolerance() * 10)
    throw DomainError("involutions do not commute; composition is not involutive");
  return Involution(sigma.algebra(), prod, Involution::Label::composed);
}

MatrixXd compose_matrix(const Involution& sigma, const Involution& rho) {
  if (sigma.algebra().get() != rho.algebra().get())
    throw DomainError("involutions over different algebras");
  return sigma.matrix() * rho.matrix();
}

EigenspaceSplit eigenspace_split(const Involution& sigma) {
  const auto& alg = sigma.algebra();
  const int d = alg->dim();
  MatrixXd id = MatrixXd::Identity(d, d);
  MatrixXd p_fix = 0.5 * (id + sigma.matrix());
  MatrixXd p_anti = 0.5 * (id - sigma.matrix());
  EigenspaceSplit out{Subspace(alg, linalg::column_space(p_fix, 1e-12)),
                      Subspace(alg, linalg::column_space(p_anti, 1e-12))};
  if (out.fixed.dim() + out.antifixed.dim() != d)
    throw NumericError("eigenspace split dimensions do not sum to algebra dimension");
  return out;
}

bool is_elliptic(const AlgebraElement& x) {
  Spectrum s = spectrum(x);
  if (!s.semisimple) return false;
  double tol = std::max(x.algebra->tolerance(), 1e-10);
  for (int i = 0; i < s.values.size(); ++i)
    if (std::abs(s.values(i).real()) > tol) return false;
  return true;
}

bool is_hyperbolic(const AlgebraElement& x) {
  Spectrum s = spectrum(x);
  if (!s.semisimple) return false;
  double tol = std::max(x.algebra->tolerance(), 1e-10);
  for (int i = 0; i < s.values.size(); ++i)
    if (std::abs(s.values(i).imag()) > tol) return false;
  return true;
}

}  // namespace wedgelab
