#ifndef WEDGELAB_CONE_HPP
#define WEDGELAB_CONE_HPP

#include <cstdint>
#include <vector>

#include "wedgelab/lie_algebra.hpp"

namespace wedgelab {

/// Non-negative least squares, Lawson-Hanson active set:
/// min ||A x - b|| subject to x >= 0.
/// `dual` carries A^T (b - A x) at exit; when the residual is positive this
/// is a Farkas-type separating certificate (A^T r <= 0, r^T b > 0).
struct NnlsResult {
  VectorXd x;
  double residual = 0;
  VectorXd dual;
  bool converged = false;
};

NnlsResult nnls(const MatrixXd& a, const VectorXd& b, double tol = 1e-12,
                int max_iter = 0);

/// Finitely generated closed convex cone inside a designated subspace of a
/// Lie algebra. All feasibility decisions run in the Cholesky coordinates of
/// the algebra's reference metric restricted to the ambient subspace, so
/// duality is taken relative to that inner product.
class ConvexCone {
 public:
  ConvexCone() = default;
  /// Generators must lie in `ambient` (residual <= tol), and be nonzero.
  ConvexCone(Subspace ambient, std::vector<AlgebraElement> generators,
             double tol = 1e-9);

  const Subspace& ambient() const { return ambient_; }
  const std::vector<AlgebraElement>& generators() const { return generators_; }
  double tolerance() const { return tol_; }

  /// Membership via feasibility of x = sum lambda_i g_i, lambda >= 0.
  /// `residual` receives the NNLS distance of x from the cone.
  bool contains(const AlgebraElement& x, double* residual = nullptr) const;

  /// Strict membership with margin against the dual description:
  /// margin = min over normalized dual rays r of <r, x>.
  bool contains_interior(const AlgebraElement& x, double* margin = nullptr) const;

  /// Dual cone {y in ambient : <y, g_i> >= 0 for all i} as a generated cone.
  ConvexCone dual() const;

  bool is_pointed() const;
  bool is_generating() const;

 private:
  const MatrixXd& dual_rays() const;  // lazily enumerated, metric coordinates

  Subspace ambient_;
  std::vector<AlgebraElement> generators_;
  double tol_ = 1e-9;
  MatrixXd gens_m_;              // k x m generators in metric coordinates
  MatrixXd chol_;                // metric Cholesky factor L^T on subspace coords
  MatrixXd chol_inv_;
  mutable MatrixXd dual_rays_;   // cached
  mutable bool dual_ready_ = false;
};

/// Cone generated by {Ad(exp y_k) seed} for `sample_count` draws of y_k from
/// a ball of `radius` in the subalgebra h_fix (deterministic in seed_rng).
/// The seed itself is always included, so sample_count = 0 gives the ray
/// through seed.
ConvexCone orbit_cone(const Subspace& h_fix, const AlgebraElement& seed,
                      int sample_count, std::uint64_t seed_rng,
                      double radius = 8.0, double tol = 1e-9);

/// Adjoint action Ad(exp y) x computed via the matrix exponential of ad y.
AlgebraElement adjoint_exp(const AlgebraElement& y, const AlgebraElement& x);

}  // namespace wedgelab

#endif
