#include "wedgelab/modular.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wedgelab/linalg.hpp"

namespace wedgelab {

using json = nlohmann::ordered_json;

VectorXd to_real(const VectorXcd& z) {
  VectorXd x(2 * z.size());
  x.head(z.size()) = z.real();
  x.tail(z.size()) = z.imag();
  return x;
}

VectorXcd to_complex(const VectorXd& x) {
  const int n = static_cast<int>(x.size()) / 2;
  VectorXcd z(n);
  z.real() = x.head(n);
  z.imag() = x.tail(n);
  return z;
}

MatrixXd complex_linear_real(const MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a.real();
  m.topRightCorner(n, n) = -a.imag();
  m.bottomLeftCorner(n, n) = a.imag();
  m.bottomRightCorner(n, n) = a.real();
  return m;
}

MatrixXd antilinear_real(const MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a.real();
  m.topRightCorner(n, n) = a.imag();
  m.bottomLeftCorner(n, n) = a.imag();
  m.bottomRightCorner(n, n) = -a.real();
  return m;
}

MatrixXd mult_i_real(int n) {
  MatrixXd m = MatrixXd::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = -MatrixXd::Identity(n, n);
  m.bottomLeftCorner(n, n) = MatrixXd::Identity(n, n);
  return m;
}

// ---- RealSubspace -----------------------------------------------------------

RealSubspace::RealSubspace(int n, const MatrixXd& real_basis) : n_(n), basis_(real_basis) {
  if (real_basis.rows() != 2 * n) throw DomainError("real basis must have 2n rows");
  if (real_basis.cols() > 0 && linalg::rank(real_basis, 1e-12) != real_basis.cols())
    throw DomainError("real basis vectors are linearly dependent over R");
  onb_ = linalg::column_space(real_basis, 1e-12);
}

RealSubspace RealSubspace::from_complex_vectors(int n, const std::vector<VectorXcd>& vs) {
  MatrixXd b(2 * n, static_cast<int>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != n) throw DomainError("basis vector has wrong dimension");
    b.col(static_cast<int>(i)) = to_real(vs[i]);
  }
  return RealSubspace(n, b);
}

bool RealSubspace::contains(const VectorXcd& v, double tol) const {
  VectorXd x = to_real(v);
  double res = (x - onb_ * (onb_.transpose() * x)).norm();
  return res <= tol * std::max(1.0, x.norm());
}

bool is_cyclic(const RealSubspace& v, double tol) {
  const int n = v.ambient_dim();
  MatrixXd j = mult_i_real(n);
  MatrixXd both(2 * n, 2 * v.dim());
  both << v.onb(), j * v.onb();
  return linalg::rank(both, tol) == 2 * n;
}

bool is_separating(const RealSubspace& v, double tol) {
  const int n = v.ambient_dim();
  MatrixXd j = mult_i_real(n);
  MatrixXd both(2 * n, 2 * v.dim());
  both << v.onb(), j * v.onb();
  return linalg::rank(both, tol) == 2 * v.dim();
}

bool is_standard(const RealSubspace& v, double tol) {
  return is_cyclic(v, tol) && is_separating(v, tol);
}

// ---- Tomita operator ----------------------------------------------------------

RealLinearOp tomita_operator(const RealSubspace& v) {
  if (!is_standard(v)) throw PreconditionError("Tomita operator requires a standard subspace");
  const int n = v.ambient_dim();
  MatrixXd j = mult_i_real(n);
  MatrixXd a = v.onb();  // 2n x n
  MatrixXd domain(2 * n, 2 * n), image(2 * n, 2 * n);
  domain << a, j * a;
  image << a, -j * a;
  RealLinearOp s;
  s.n = n;
  s.m = image * domain.inverse();
  s.antilinear = true;
  double res = (s.m * s.m - MatrixXd::Identity(2 * n, 2 * n)).norm();
  if (res > 1e-10 * std::max(1.0, s.m.norm() * s.m.norm()))
    throw NumericError("Tomita operator failed the involution check");
  return s;
}

// ---- ModularPair ---------------------------------------------------------------

ModularPair::ModularPair(VectorXd lambdas, std::vector<int> pairing, MatrixXcd basis)
    : n_(static_cast<int>(lambdas.size())),
      lambdas_(std::move(lambdas)),
      pairing_(std::move(pairing)),
      basis_(std::move(basis)) {
  if (basis_.size() == 0) basis_ = MatrixXcd::Identity(n_, n_);
  validate();
}

void ModularPair::validate() const {
  if (static_cast<int>(pairing_.size()) != n_)
    throw DomainError("pairing length must equal n");
  for (int i = 0; i < n_; ++i) {
    if (lambdas_(i) <= 0) throw DomainError("modular eigenvalues must be positive");
    int p = pairing_[static_cast<size_t>(i)];
    if (p < 0 || p >= n_ || pairing_[static_cast<size_t>(p)] != i)
      throw DomainError("pairing must be an involution of indices");
    double res = std::abs(lambdas_(p) * lambdas_(i) - 1.0);
    if (res > 1e-12 * std::max(1.0, lambdas_(i)))
      throw DomainError("pairing violates lambda_{p(i)} = 1/lambda_i");
  }
  if (basis_.rows() != n_ || basis_.cols() != n_)
    throw DomainError("basis must be n x n");
  double unit = (basis_ * basis_.adjoint() - MatrixXcd::Identity(n_, n_)).norm();
  if (unit > 1e-9) throw DomainError("modular pair basis is not unitary");
}

MatrixXcd ModularPair::delta_power(double p) const {
  VectorXcd d(n_);
  for (int i = 0; i < n_; ++i) d(i) = std::pow(lambdas_(i), p);
  return basis_ * d.asDiagonal() * basis_.adjoint();
}

MatrixXcd ModularPair::j_matrix() const {
  MatrixXcd perm = MatrixXcd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) perm(i, pairing_[static_cast<size_t>(i)]) = 1.0;
  return basis_ * perm * basis_.transpose();
}

VectorXcd ModularPair::apply_j(const VectorXcd& v) const {
  return j_matrix() * v.conjugate();
}

MatrixXcd ModularPair::unitary(double t) const {
  const double two_pi = 6.283185307179586477;
  VectorXcd d(n_);
  for (int i = 0; i < n_; ++i)
    d(i) = std::exp(std::complex<double>(0, -t / two_pi * std::log(lambdas_(i))));
  return basis_ * d.asDiagonal() * basis_.adjoint();
}

namespace {

// Builds the swap-conjugate normal form from a positive complex-linear Delta
// and an anti-linear J (given by its matrix M, J v = M conj(v)).
ModularPair normal_form(const MatrixXcd& delta, const MatrixXcd& jm, double ctol) {
  const int n = static_cast<int>(delta.rows());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (delta + delta.adjoint()));
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on Delta");
  VectorXd lam = es.eigenvalues();
  if (lam.minCoeff() <= 0) throw PreconditionError("Delta is not positive definite");
  MatrixXcd vecs = es.eigenvectors();

  auto apply_j = [&](const VectorXcd& v) { return VectorXcd(jm * v.conjugate()); };

  std::vector<VectorXcd> columns;
  std::vector<double> out_lams;
  std::vector<int> out_pair;

  // cluster indices by log(lambda)
  std::vector<std::vector<int>> clusters;
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    std::vector<int> c{i};
    used[static_cast<size_t>(i)] = true;
    for (int j = i + 1; j < n; ++j)
      if (!used[static_cast<size_t>(j)] &&
          std::abs(std::log(lam(j)) - std::log(lam(i))) <= ctol) {
        c.push_back(j);
        used[static_cast<size_t>(j)] = true;
      }
    clusters.push_back(c);
  }

  auto cluster_log = [&](const std::vector<int>& c) {
    double s = 0;
    for (int i : c) s += std::log(lam(i));
    return s / static_cast<double>(c.size());
  };

  std::vector<bool> consumed(clusters.size(), false);
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    if (consumed[ci]) continue;
    double lg = cluster_log(clusters[ci]);
    if (std::abs(lg) <= ctol) {
      consumed[ci] = true;
      // J-stable eigenspace at lambda = 1: build a J-fixed orthonormal basis
      std::vector<VectorXcd> fixed;
      for (int idx : clusters[ci]) {
        if (fixed.size() == clusters[ci].size()) break;
        VectorXcd v = vecs.col(idx);
        VectorXcd cands[2] = {v + apply_j(v),
                              std::complex<double>(0, 1) * (v - apply_j(v))};
        for (VectorXcd& w : cands) {
          if (fixed.size() == clusters[ci].size()) break;
          for (const auto& f : fixed) w -= f * f.dot(w);
          if (w.norm() > 1e-8) fixed.push_back(w.normalized());
        }
      }
      if (fixed.size() != clusters[ci].size())
        throw NumericError("failed to build a J-fixed basis of the lambda=1 eigenspace");
      for (const auto& w : fixed) {
        out_pair.push_back(static_cast<int>(columns.size()));
        columns.push_back(w);
        out_lams.push_back(std::exp(lg));
      }
      continue;
    }
    if (lg < 0) continue;  // handled from the partner side
    // find the partner cluster at -lg
    int partner = -1;
    for (size_t cj = 0; cj < clusters.size(); ++cj)
      if (!consumed[cj] && cj != ci && std::abs(cluster_log(clusters[cj]) + lg) <= 2 * ctol &&
          clusters[cj].size() == clusters[ci].size()) {
        partner = static_cast<int>(cj);
        break;
      }
    if (partner < 0)
      throw PreconditionError("Delta spectrum is not symmetric under inversion (J Delta J != Delta^{-1})");
    consumed[ci] = true;
    consumed[static_cast<size_t>(partner)] = true;
    for (int idx : clusters[ci]) {
      VectorXcd u = vecs.col(idx);
      VectorXcd ju = apply_j(u);
      int i_hi = static_cast<int>(columns.size());
      columns.push_back(u);
      out_lams.push_back(std::exp(lg));
      int i_lo = static_cast<int>(columns.size());
      columns.push_back(ju.normalized());
      out_lams.push_back(std::exp(-lg));
      out_pair.push_back(i_lo);
      out_pair.push_back(i_hi);
    }
  }

  MatrixXcd basis(n, n);
  VectorXd lambdas(n);
  for (int i = 0; i < n; ++i) {
    basis.col(i) = columns[static_cast<size_t>(i)];
    lambdas(i) = out_lams[static_cast<size_t>(i)];
  }
  // exact reciprocal pairing (spectral values rounded to the pair average)
  for (int i = 0; i < n; ++i) {
    int p = out_pair[static_cast<size_t>(i)];
    if (p > i) {
      double g = std::sqrt(lambdas(i) / lambdas(p));
      lambdas(i) = g;
      lambdas(p) = 1.0 / g;
    } else if (p == i) {
      lambdas(i) = 1.0;
    }
  }
  return ModularPair(lambdas, out_pair, basis);
}

}  // namespace

ModularPair polar_modular(const RealLinearOp& s) {
  if (!s.antilinear) throw DomainError("Tomita operator must be anti-linear");
  const int n = s.n;
  MatrixXd delta_real = s.m.transpose() * s.m;
  // complex form of the (complex-linear) positive operator
  MatrixXcd delta = MatrixXcd(n, n);
  delta.real() = delta_real.topLeftCorner(n, n);
  delta.imag() = delta_real.bottomLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (delta + delta.adjoint()));
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
    throw NumericError("S^* S is singular; polar decomposition failed");
  // J = S Delta^{-1/2}: anti-linear matrix M_J = M_S conj(Delta^{-1/2})
  MatrixXcd ms(n, n);
  ms.real() = s.m.topLeftCorner(n, n);
  ms.imag() = s.m.bottomLeftCorner(n, n);
  MatrixXcd dinv_half =
      es.eigenvectors() *
      es.eigenvalues().array().pow(-0.5).matrix().cast<std::complex<double>>().asDiagonal() *
      es.eigenvectors().adjoint();
  MatrixXcd mj = ms * dinv_half.conjugate();
  ModularPair pair = normal_form(delta, mj, 1e-8);
  // J Delta J = Delta^{-1} residual check
  MatrixXcd lhs = mj * pair.delta().conjugate() * mj.conjugate();
  double res = (lhs - pair.delta_power(-1.0)).norm();
  if (res > 1e-8 * std::max(1.0, pair.delta().norm()))
    throw NumericError("polar decomposition violates J Delta J = Delta^{-1}");
  return pair;
}

ModularPair modular_pair_from_operators(const MatrixXcd& delta,
                                        const MatrixXcd& j_antilinear_matrix) {
  const int n = static_cast<int>(delta.rows());
  MatrixXcd j2 = j_antilinear_matrix * j_antilinear_matrix.conjugate();
  if ((j2 - MatrixXcd::Identity(n, n)).norm() > 1e-10 * n)
    throw PreconditionError("J is not an involution");
  MatrixXcd jdj = j_antilinear_matrix * delta.conjugate() * j_antilinear_matrix.conjugate();
  MatrixXcd dinv = delta.inverse();
  if ((jdj - dinv).norm() > 1e-10 * std::max(1.0, dinv.norm()))
    throw PreconditionError("pair violates J Delta J = Delta^{-1}");
  return normal_form(delta, j_antilinear_matrix, 1e-8);
}

RealSubspace standard_from_pair(const ModularPair& pair) {
  const int n = pair.dim();
  MatrixXcd t = pair.j_matrix() * pair.delta_power(0.5).conjugate();
  MatrixXd t_real = antilinear_real(t);
  MatrixXd fix = linalg::null_space(t_real - MatrixXd::Identity(2 * n, 2 * n), 1e-10);
  RealSubspace v(n, fix);
  if (v.dim() != n) throw NumericError("Fix(J Delta^{1/2}) has unexpected dimension");
  if (!is_standard(v)) throw NumericError("BGL output subspace is not standard");
  return v;
}

RealSubspace symplectic_complement(const RealSubspace& v) {
  const int n = v.ambient_dim();
  const int k = v.dim();
  MatrixXd constraints(k, 2 * n);
  for (int c = 0; c < k; ++c) {
    VectorXd col = v.onb().col(c);
    constraints.row(c).head(n) = -col.tail(n).transpose();  // -Im(v)
    constraints.row(c).tail(n) = col.head(n).transpose();   // +Re(v)
  }
  return RealSubspace(n, linalg::null_space(constraints, 1e-12));
}

bool kms_membership(const VectorXcd& xi, const ModularPair& pair, double* residual) {
  double nx = xi.norm();
  if (nx == 0.0) {
    if (residual) *residual = 0.0;
    return true;
  }
  VectorXcd diff = pair.delta_power(0.5) * xi - pair.apply_j(xi);
  double r = diff.norm();
  if (residual) *residual = r / nx;
  return r <= 1e-9 * nx;
}

RealSubspace intersect(const RealSubspace& a, const RealSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DomainError("subspaces live in different ambient spaces");
  if (a.dim() == 0 || b.dim() == 0)
    return RealSubspace(a.ambient_dim(), MatrixXd(2 * a.ambient_dim(), 0));
  MatrixXd stacked(2 * a.ambient_dim(), a.dim() + b.dim());
  stacked << a.onb(), -b.onb();
  MatrixXd ns = linalg::null_space(stacked, 1e-12);
  MatrixXd basis = a.onb() * ns.topRows(a.dim());
  return RealSubspace(a.ambient_dim(), linalg::column_space(basis, 1e-10));
}

std::optional<RealSubspace> bgl_local_subspace(const std::vector<ModularPair>& wedges,
                                               const std::vector<int>& covering) {
  if (covering.empty()) return std::nullopt;
  std::optional<RealSubspace> acc;
  for (int idx : covering) {
    if (idx < 0 || idx >= static_cast<int>(wedges.size()))
      throw DomainError("covering references an unknown wedge");
    RealSubspace v = standard_from_pair(wedges[static_cast<size_t>(idx)]);
    acc = acc ? intersect(*acc, v) : v;
  }
  return acc;
}

double subspace_distance(const RealSubspace& a, const RealSubspace& b) {
  return linalg::span_distance(a.onb(), b.onb());
}

std::string modular_pair_to_json(const ModularPair& pair) {
  json j;
  j["n"] = pair.dim();
  j["lambdas"] = std::vector<double>(pair.lambdas().data(),
                                     pair.lambdas().data() + pair.dim());
  j["pairing"] = pair.pairing();
  j["J_convention"] = "swap-conjugate";
  return j.dump(2);
}

ModularPair modular_pair_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(std::string("modular pair JSON parse error: ") + e.what());
  }
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw DomainError("modular pair JSON: missing integer field 'n'");
  const int n = j["n"].get<int>();
  if (!j.contains("lambdas") || !j["lambdas"].is_array() ||
      static_cast<int>(j["lambdas"].size()) != n)
    throw DomainError("modular pair JSON: 'lambdas' must be an array of length n");
  if (!j.contains("pairing") || !j["pairing"].is_array() ||
      static_cast<int>(j["pairing"].size()) != n)
    throw DomainError("modular pair JSON: 'pairing' must be an array of length n");
  VectorXd lam(n);
  for (int i = 0; i < n; ++i) {
    if (!j["lambdas"][static_cast<size_t>(i)].is_number())
      throw DomainError("modular pair JSON: lambdas must be numbers");
    lam(i) = j["lambdas"][static_cast<size_t>(i)].get<double>();
  }
  std::vector<int> pairing(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!j["pairing"][static_cast<size_t>(i)].is_number_integer())
      throw DomainError("modular pair JSON: pairing must be integers");
    pairing[static_cast<size_t>(i)] = j["pairing"][static_cast<size_t>(i)].get<int>();
  }
  return ModularPair(lam, pairing);
}

void write_subspace_csv(const RealSubspace& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open CSV output file: " + path);
  char buf[64];
  for (int r = 0; r < v.basis().rows(); ++r) {
    for (int c = 0; c < v.basis().cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", v.basis()(r, c));
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace wedgelab
