#ifndef WEDGELAB_SPACES_HPP
#define WEDGELAB_SPACES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "wedgelab/cone.hpp"
#include "wedgelab/lie_algebra.hpp"

namespace wedgelab {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Labeled point cloud produced by the wedge samplers.
struct PointCloud {
  std::string model;
  int d = 0;
  MatrixXd points;            // one point per row, ambient coordinates
  std::vector<char> labels;   // 1 = modular vector field in the open cone
  VectorXd margins;
  std::uint64_t seed = 0;

  void write_csv(const std::string& path) const;
};

/// Number of worker threads for the samplers: WEDGELAB_THREADS when set
/// (clamped to >= 1), else 1. Results never depend on the thread count.
int sampler_threads();

// ---- de Sitter space dS^d ---------------------------------------------------
// { x in R^{d+1} : x_0^2 - x_1^2 - ... - x_d^2 = -1 }, G = SO(1,d)_e.

class DeSitter {
 public:
  explicit DeSitter(int d);

  int dim() const { return d_; }
  /// so(1,d) in the shipped basis; basis element 0 is the wedge boost.
  const AlgebraPtr& algebra() const { return algebra_; }
  /// The Euler boost h with h.x = (x_1, x_0, 0, ..., 0).
  AlgebraElement euler_boost() const { return algebra_->basis_element(0); }

  double quadric_residual(const VectorXd& x) const;
  double quadric_residual(const VectorXcd& z) const;
  VectorXd base_point() const;  // e_1

  /// exp(t h) . m for real t (preserves the quadric).
  VectorXd flow(const AlgebraElement& h, double t, const VectorXd& m) const;
  /// exp(z h) . m on the complexified quadric.
  VectorXcd flow(const AlgebraElement& h, cplx z, const VectorXcd& m) const;

  /// Derivative of the flow at t = 0 (lies in T_m dS^d).
  VectorXd modular_vector_field(const AlgebraElement& h, const VectorXd& m) const;

  /// Signed margin of the modular vector field against the open future cone:
  /// v_0 - |(v_1..v_d)|. Positive iff m is in the positivity domain.
  double positivity_margin(const AlgebraElement& h, const VectorXd& m) const;
  bool positivity_contains(const AlgebraElement& h, const VectorXd& m,
                           double* margin = nullptr) const;

  /// Deterministic pseudo-random quadric points with positivity labels.
  PointCloud wedge_sample(const AlgebraElement& h, int count,
                          std::uint64_t seed) const;

  /// Sampled positivity domain of the reversed Euler element -h (the
  /// reflected wedge {m_1 < -|m_0|} for the standard boost). Rejects h = 0.
  PointCloud negative_wedge_sample(const AlgebraElement& h, int count,
                                   std::uint64_t seed) const;

  /// Crown membership of a complexified quadric point: Im z in the open
  /// forward light cone. Throws PreconditionError off the quadric.
  bool crown_contains(const VectorXcd& z, double* margin = nullptr) const;

  /// exp(sign * (pi i / 2) h) . (i e_0); lands on the real quadric at -+ e_1.
  VectorXd boundary_orbit_point(const AlgebraElement& h, int sign) const;

  /// Grid check of the KMS condition: exp(z h) . m stays in the crown for z
  /// in an (nt x ns) interior grid of the strip 0 < Im z < pi
  /// (Re z in [-3, 3], boundary offset 0.05).
  bool kms_contains(const AlgebraElement& h, const VectorXd& m, int nt = 11,
                    int ns = 11, double* min_margin = nullptr) const;

 private:
  int d_;
  AlgebraPtr algebra_;
};

// ---- Anti-de Sitter space AdS^d ----------------------------------------------
// { x in R^{d+1} : x_0^2 + x_1^2 - x_2^2 - ... - x_d^2 = +1 }, G = SO(2,d-1)_e.

class AntiDeSitter {
 public:
  explicit AntiDeSitter(int d);

  int dim() const { return d_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  /// Euler boost mixing x_1 (+) and x_2 (-); basis element of so(2,d-1).
  AlgebraElement euler_boost() const;

  double quadric_residual(const VectorXd& x) const;
  VectorXd base_point() const;  // e_1

  VectorXd flow(const AlgebraElement& h, double t, const VectorXd& m) const;
  VectorXd modular_vector_field(const AlgebraElement& h, const VectorXd& m) const;

  /// Frame margin a - sqrt(a^2 - Q(v,v)) with a = Q(v, That(m)); the time
  /// orientation field is T(m) = (m_1, -m_0, 0, ...).
  double positivity_margin(const AlgebraElement& h, const VectorXd& m) const;
  bool positivity_contains(const AlgebraElement& h, const VectorXd& m,
                           double* margin = nullptr) const;

  PointCloud wedge_sample(const AlgebraElement& h, int count,
                          std::uint64_t seed) const;

 private:
  int d_;
  AlgebraPtr algebra_;
};

// ---- unit disc --------------------------------------------------------------

namespace disc {

/// Moebius action (a z + b) / (conj(b) z + conj(a)) of an SU(1,1) matrix.
cplx mobius(const MatrixXcd& g, cplx z);

/// exp(t h) . 0 = tanh(t/2) for the Euler element h = (0 1; 1 0)/2.
cplx flow_origin(cplx t);

/// Biholomorphic strip-to-disc map z -> tanh(z/2), |Im z| < pi/2.
cplx strip_to_disc(cplx z);

}  // namespace disc

// ---- SL(2,R) group model ------------------------------------------------------

/// Involution of the matrix group: g -> S g S^{-1}, optionally composed with
/// g -> (g^{-1})^T (Cartan type).
struct GroupInvolution {
  Eigen::Matrix2d conjugator = Eigen::Matrix2d::Identity();
  bool inverse_transpose = false;

  Eigen::Matrix2d apply(const Eigen::Matrix2d& g) const;
};

/// Q(gH) = g tau(g)^{-1}, covering of G/H onto a causal subspace.
Eigen::Matrix2d quotient_embedding(const Eigen::Matrix2d& g, const GroupInvolution& tau);

/// Wedge membership in the group model: Ad(g^{-1}) h - h in the open cone.
/// Throws PreconditionError when the cone fails the sampled Ad-invariance
/// check at tolerance `invariance_tol`.
class GroupWedge {
 public:
  GroupWedge(AlgebraElement h, ConvexCone cone, double invariance_tol = 5e-2);

  const AlgebraElement& euler_element() const { return h_; }
  const ConvexCone& cone() const { return cone_; }

  bool contains(const Eigen::Matrix2d& g, double* margin = nullptr) const;

  struct SemigroupReport {
    int samples = 0;
    int passes = 0;
    std::vector<int> failures;
    std::uint64_t seed = 0;
    double min_margin = 0;
  };

  /// Samples pairs g_i = exp(t_i h) exp(a_i e + b_i f) with t_i in
  /// [-t_range, t_range] and a_i, b_i in [x_min, x_max]; checks both factors
  /// and the product.
  SemigroupReport semigroup_check(int pairs, std::uint64_t seed,
                                  double t_range = 0.5, double x_min = 0.2,
                                  double x_max = 0.8) const;

 private:
  AlgebraElement h_;
  ConvexCone cone_;
};

}  // namespace wedgelab

#endif
