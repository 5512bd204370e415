#include "wedgelab/cone.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "wedgelab/linalg.hpp"
#include "wedgelab/rng.hpp"

namespace wedgelab {

NnlsResult nnls(const MatrixXd& a, const VectorXd& b, double tol, int max_iter) {
  const int m = static_cast<int>(a.cols());
  if (max_iter <= 0) max_iter = 10 * std::max(8, m);
  NnlsResult out;
  out.x = VectorXd::Zero(m);
  std::vector<bool> passive(m, false);

  VectorXd r = b;
  VectorXd w = a.transpose() * r;
  double wtol = tol * std::max(1.0, a.norm() * b.norm());

  auto solve_passive = [&](const std::vector<bool>& set) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (set[i]) idx.push_back(i);
    VectorXd z = VectorXd::Zero(m);
    if (idx.empty()) return z;
    MatrixXd ap(a.rows(), static_cast<int>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<int>(k)) = a.col(idx[k]);
    VectorXd zp = ap.completeOrthogonalDecomposition().solve(b);
    for (size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<int>(k));
    return z;
  };

  int iter = 0;
  while (iter++ < max_iter) {
    int best = -1;
    double best_w = wtol;
    for (int i = 0; i < m; ++i)
      if (!passive[i] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    if (best < 0) break;  // KKT satisfied
    passive[best] = true;

    VectorXd z = solve_passive(passive);
    int inner = 0;
    while (inner++ < max_iter) {
      double alpha = 1.0;
      bool clipped = false;
      for (int i = 0; i < m; ++i) {
        if (passive[i] && z(i) <= 0.0) {
          double denom = out.x(i) - z(i);
          if (denom > 0) {
            alpha = std::min(alpha, out.x(i) / denom);
            clipped = true;
          }
        }
      }
      if (!clipped) break;
      out.x += alpha * (z - out.x);
      for (int i = 0; i < m; ++i)
        if (passive[i] && out.x(i) <= tol * std::max(1.0, out.x.norm())) {
          out.x(i) = 0.0;
          passive[i] = false;
        }
      z = solve_passive(passive);
    }
    out.x = z;
    r = b - a * out.x;
    w = a.transpose() * r;
  }
  r = b - a * out.x;
  out.residual = r.norm();
  out.dual = a.transpose() * r;
  out.converged = iter <= max_iter;
  if (!out.converged) {
    std::ostringstream os;
    os << "NNLS did not converge after " << max_iter
       << " iterations; residual " << out.residual << ", max dual "
       << (out.dual.size() ? out.dual.maxCoeff() : 0.0);
    throw NumericError(os.str());
  }
  return out;
}

namespace {

// Extreme rays of {y : n_i^T y >= 0} in Euclidean coordinates, plus the
// lineality space reported as +/- ray pairs. Brute-force facet enumeration:
// fine for the dimensions in scope (<= ~6).
MatrixXd polar_rays(const MatrixXd& normals_in, double tol) {
  const int k = static_cast<int>(normals_in.rows());
  const int m = static_cast<int>(normals_in.cols());
  std::vector<VectorXd> rays;

  MatrixXd lin = linalg::null_space(normals_in.transpose(), tol);
  for (int i = 0; i < lin.cols(); ++i) {
    rays.push_back(lin.col(i));
    rays.push_back(-lin.col(i));
  }

  MatrixXd w = linalg::column_space(normals_in, tol);  // span of the normals
  const int kp = static_cast<int>(w.cols());
  if (kp > 0) {
    MatrixXd nr = w.transpose() * normals_in;  // normals in reduced coords
    auto feasible_dir = [&](const VectorXd& v) -> int {
      // returns +1 / -1 when v or -v satisfies all constraints, else 0
      double lo = 0, hi = 0;
      for (int i = 0; i < m; ++i) {
        double d = nr.col(i).dot(v);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      double t = tol * std::max(1.0, normals_in.norm());
      if (lo >= -t) return 1;
      if (hi <= t) return -1;
      return 0;
    };
    auto push_ray = [&](VectorXd v) {
      v.normalize();
      VectorXd full = w * v;
      for (const auto& r : rays)
        if ((r - full).norm() < 1e-9) return;
      rays.push_back(full);
    };

    if (kp == 1) {
      VectorXd v = VectorXd::Ones(1);
      int s = feasible_dir(v);
      if (s != 0) push_ray(s * v);
      // both directions feasible only if all normals vanish; handled by lineality
    } else {
      // choose kp-1 active constraints out of m
      std::vector<int> comb(static_cast<size_t>(kp - 1));
      std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == kp - 1) {
          MatrixXd sub(kp - 1, kp);
          for (int r = 0; r < kp - 1; ++r) sub.row(r) = nr.col(comb[static_cast<size_t>(r)]).transpose();
          MatrixXd ns = linalg::null_space(sub, 1e-10);
          if (ns.cols() != 1) return;  // degenerate subset; other subsets cover it
          VectorXd v = ns.col(0);
          int s = feasible_dir(v);
          if (s != 0) push_ray(s * v);
          return;
        }
        for (int i = start; i < m; ++i) {
          comb[static_cast<size_t>(depth)] = i;
          rec(i + 1, depth + 1);
        }
      };
      rec(0, 0);
    }
  }

  MatrixXd out(k, static_cast<int>(rays.size()));
  for (size_t i = 0; i < rays.size(); ++i) out.col(static_cast<int>(i)) = rays[i];
  return out;
}

}  // namespace

ConvexCone::ConvexCone(Subspace ambient, std::vector<AlgebraElement> generators,
                       double tol)
    : ambient_(std::move(ambient)), generators_(std::move(generators)), tol_(tol) {
  const auto& alg = ambient_.algebra();
  if (!alg) throw DomainError("cone requires a valid ambient subspace");
  const int k = ambient_.dim();
  // metric restricted to the subspace, in ONB coordinates
  MatrixXd g = ambient_.onb().transpose() * alg->reference_metric() * ambient_.onb();
  Eigen::LLT<MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw NumericError("reference metric is not positive definite on the ambient subspace");
  chol_ = MatrixXd(llt.matrixL()).transpose();  // g = L L^T, chol_ = L^T
  chol_inv_ = chol_.inverse();

  gens_m_.resize(k, static_cast<int>(generators_.size()));
  for (size_t i = 0; i < generators_.size(); ++i) {
    const auto& gen = generators_[i];
    if (gen.algebra.get() != alg.get()) throw DomainError("generator from a different algebra");
    double res = 0;
    ambient_.contains(gen, &res);
    if (res > tol_ * std::max(1.0, gen.norm()))
      throw DomainError("cone generator lies outside the ambient subspace");
    if (gen.norm() <= tol_) throw DomainError("cone generator is zero");
    gens_m_.col(static_cast<int>(i)) = chol_ * (ambient_.onb().transpose() * gen.coeffs);
  }
}

bool ConvexCone::contains(const AlgebraElement& x, double* residual) const {
  double off = 0;
  ambient_.contains(x, &off);
  VectorXd xm = chol_ * (ambient_.onb().transpose() * x.coeffs);
  if (gens_m_.cols() == 0) {
    double res = std::max(off, xm.norm());
    if (residual) *residual = res;
    return res <= tol_;
  }
  NnlsResult r = nnls(gens_m_, xm, 1e-13);
  double res = std::max(r.residual, off);
  if (residual) *residual = res;
  return res <= tol_ * std::max(1.0, xm.norm());
}

const MatrixXd& ConvexCone::dual_rays() const {
  if (!dual_ready_) {
    dual_rays_ = polar_rays(gens_m_, 1e-10);
    dual_ready_ = true;
  }
  return dual_rays_;
}

bool ConvexCone::contains_interior(const AlgebraElement& x, double* margin) const {
  double off = 0;
  ambient_.contains(x, &off);
  VectorXd xm = chol_ * (ambient_.onb().transpose() * x.coeffs);
  const MatrixXd& rays = dual_rays();
  double m;
  if (rays.cols() == 0) {
    // dual cone is {0}: the cone fills the ambient subspace
    m = 1.0 + xm.norm();
  } else {
    m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rays.cols(); ++i)
      m = std::min(m, rays.col(i).normalized().dot(xm));
  }
  if (off > tol_) m = -off;
  if (margin) *margin = m;
  return m >= tol_;
}

ConvexCone ConvexCone::dual() const {
  const MatrixXd& rays = dual_rays();
  std::vector<AlgebraElement> gens;
  const auto& alg = ambient_.algebra();
  for (int i = 0; i < rays.cols(); ++i) {
    VectorXd sub_coords = chol_inv_ * rays.col(i);  // back to ONB coordinates
    VectorXd coeffs = ambient_.onb() * sub_coords;
    gens.push_back(alg->element(coeffs.normalized()));
  }
  return ConvexCone(ambient_, gens, tol_);
}

bool ConvexCone::is_pointed() const {
  // pointed iff 0 has no nontrivial representation sum lambda_i g_i = 0
  const int m = static_cast<int>(gens_m_.cols());
  if (m == 0) return true;
  MatrixXd a(gens_m_.rows() + 1, m);
  a.topRows(gens_m_.rows()) = gens_m_;
  a.bottomRows(1).setOnes();
  VectorXd b = VectorXd::Zero(gens_m_.rows() + 1);
  b(gens_m_.rows()) = 1.0;
  NnlsResult r = nnls(a, b, 1e-13);
  return r.residual > tol_;
}

bool ConvexCone::is_generating() const {
  return linalg::rank(gens_m_, 1e-10) == ambient_.dim();
}

AlgebraElement adjoint_exp(const AlgebraElement& y, const AlgebraElement& x) {
  if (y.algebra.get() != x.algebra.get())
    throw DomainError("adjoint action across different algebras");
  MatrixXd ad = ad_matrix(y);
  return x.algebra->element(linalg::expm(ad) * x.coeffs);
}

ConvexCone orbit_cone(const Subspace& h_fix, const AlgebraElement& seed,
                      int sample_count, std::uint64_t seed_rng, double radius,
                      double tol) {
  if (seed.is_zero(1e-14)) throw PreconditionError("orbit cone seed must be nonzero");
  if (!h_fix.is_subalgebra())
    throw PreconditionError("orbit cone requires h_fix closed under the bracket");
  std::vector<AlgebraElement> gens{seed};
  Rng rng(seed_rng);
  for (int k = 0; k < sample_count; ++k) {
    VectorXd ball = rng.ball(h_fix.dim(), radius);
    AlgebraElement y = seed.algebra->element(h_fix.onb() * ball);
    gens.push_back(adjoint_exp(y, seed));
  }
  return ConvexCone(Subspace::whole(seed.algebra), gens, tol);
}

}  // namespace wedgelab
