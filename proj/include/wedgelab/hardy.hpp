#ifndef WEDGELAB_HARDY_HPP
#define WEDGELAB_HARDY_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wedgelab/errors.hpp"

namespace wedgelab {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// ---- quadrature ---------------------------------------------------------------

/// Composite Gauss-Legendre quadrature on [a, b]: `panels` equal panels with
/// `per_panel` nodes each (Golub-Welsch nodes, affine-mapped per panel).
struct Quadrature {
  VectorXd nodes;
  VectorXd weights;

  static Quadrature composite(double a, double b, int total_nodes,
                              int per_panel = 32);
};

/// Smooth bump supported on (c - r, c + r): exp(-1 / (1 - ((x-c)/r)^2)).
double bump(double x, double center, double radius);

// ---- strip Hardy model ----------------------------------------------------------

namespace strip {

inline constexpr double pi = 3.14159265358979323846;

/// K(z, w) = i / (4 pi sinh((z - conj(w)) / 2)). Throws DomainError at the
/// kernel singularity z = conj(w) mod 2 pi i.
cplx kernel(cplx z, cplx w);

/// Parameter transport of J: J K_w = K_{pi i + conj(w)}.
cplx j_param(cplx w);

/// Parameter transport of the translation group: U_t K_w = K_{w - t}.
cplx translate_param(double t, cplx w);

/// ||alpha^eta(i t)||^2 = 1 / (4 pi sin(pi/2 + t)) for eta = K_{pi i / 2},
/// |t| < pi/2.
double orbit_norm_squared(double t);

enum class Side { lower, upper };

/// Boundary value of the kernel section: lower i/(4 pi sinh((x + i eps)/2)),
/// upper i/(4 pi sinh((x + i pi)/2)) = 1/(4 pi cosh(x/2)).
cplx boundary_distribution(double x, Side side, double eps = 1e-3);

/// Kernel smear from boundary data: xi(z) = phase * sum_k w_k phi_k K(z, x_k).
struct Smear {
  VectorXd nodes;
  VectorXcd coeffs;

  cplx eval(cplx z) const;
  /// Analytic continuation of the translation orbit: alpha(zeta)(u) =
  /// sum_k c_k K(u + zeta, x_k).
  cplx eval_continued(cplx zeta, cplx u) const;
};

Smear smear(const Quadrature& q, const VectorXd& phi_values, cplx phase = 1.0);

/// Deterministic 32-point interior evaluation grid.
std::vector<cplx> eval_grid();

/// l2 norm of a function's values on the evaluation grid.
double eval_norm(const Smear& s);

/// KMS membership residual for xi = phase * xi_phi:
/// r = || alpha^xi(pi i) - J xi || / || xi || over the evaluation grid.
/// phi = 0 gives r = 0 by convention.
double kms_residual(const Quadrature& q, const VectorXd& phi_values,
                    cplx phase = 1.0);

/// Gram matrix K(z_i, z_j) of interior points.
MatrixXcd gram(const std::vector<cplx>& points);

}  // namespace strip

// ---- upper half-plane Hardy model -----------------------------------------------

namespace halfplane {

/// K(z, w) = (1 / 2 pi) i / (z - conj(w)).
cplx kernel(cplx z, cplx w);

/// Boundary kernel smear sum_k c_k K(., x_k) with real nodes x_k.
/// Test functions enter through the anti-linear boundary pairing, so the
/// coefficient of a datum (phase, phi) is conj(phase) * w_k * phi_k.
struct Smear {
  VectorXd nodes;
  VectorXcd coeffs;

  cplx eval(cplx z) const;
};

Smear smear(const Quadrature& q, const VectorXd& phi_values, cplx phase = 1.0);

/// U(b, a): (U f)(z) = a^{-1/2} f(a^{-1}(z + b)); on kernel data the nodes
/// map to a x - b and coefficients pick up a^{1/2}. Throws DomainError for
/// a <= 0.
Smear affine_action(double b, double a, const Smear& s);

/// (J f)(z) = conj(f(-conj(z))): nodes reflect, coefficients conjugate.
Smear j_action(const Smear& s);

/// Regularized Hilbert-space Gram <xi_i, xi_j> of boundary smears
/// (epsilon-shifted kernel; Hermitian part returned).
MatrixXcd smear_gram(const std::vector<Smear>& vs, double eps = 1e-3);

/// Gram matrix of interior kernel sections K(z_i, z_j).
MatrixXcd gram(const std::vector<cplx>& points);

std::vector<cplx> eval_grid();

/// Mellin data of the smear's positive-frequency representation, closed form
/// per node: F(s) = (1/2pi) Gamma(1/2 - i s) sum_k c_k (i x_k)^{i s - 1/2}.
VectorXcd mellin_transform(const Smear& s, const VectorXd& s_grid);

struct MembershipResult {
  double residual = 0;             // || Delta^{1/2} xi - J xi || / || xi ||
  double calibration_residual = 0; // J Delta J vs Delta^{-1} on the data
  double norm = 0;                 // Mellin-side || xi ||
  int s_points = 0;
};

/// Standard-subspace membership test in the Mellin model. Delta^{1/2} is
/// frozen as multiplication by e^{pi s}; J acts by F(s) -> conj(F(-s)).
/// The support must stay one-signed and bounded away from 0 by at least the
/// quadrature resolution, else PreconditionError.
MembershipResult membership(const Quadrature& q, const VectorXd& phi_values,
                            cplx phase, double s_max = 30.0, double ds = 0.05);

}  // namespace halfplane

// ---- affine-group net of real subspaces ------------------------------------------

/// Finite net over intervals of the boundary line: each interval's subspace
/// is spanned by the library bumps supported inside it.
class AffineNet {
 public:
  struct Bump {
    double center;
    double radius;
  };

  AffineNet(std::vector<Bump> library, int nodes_per_bump = 512,
            cplx boundary_phase = cplx(0.70710678118654752, -0.70710678118654752));

  const std::vector<Bump>& library() const { return library_; }
  cplx boundary_phase() const { return phase_; }

  /// Library indices with support inside the open interval (lo, hi).
  std::vector<int> interval_basis(double lo, double hi) const;

  /// Validates an explicit bump-to-interval assignment; throws
  /// PreconditionError when the bump's support escapes the interval.
  void require_supported(int index, double lo, double hi) const;

  const halfplane::Smear& vector(int index) const;

  /// Worst relative residual of the (lo1,hi1) basis against the span of the
  /// (lo2,hi2) basis. Isotony means ~0 for nested intervals.
  double isotony_residual(double lo1, double hi1, double lo2, double hi2) const;

  /// Span distance between U(b,a) H(lo,hi) and H(a lo - b, a hi - b).
  double covariance_distance(double b, double a, double lo, double hi) const;

  /// Membership residual (halfplane::membership) of one library vector.
  double membership_residual(int index) const;

 private:
  std::vector<Bump> library_;
  std::vector<halfplane::Smear> vectors_;
  std::vector<Quadrature> quads_;
  std::vector<VectorXd> values_;
  cplx phase_;
  double eps_ = 1e-3;
};

}  // namespace wedgelab

#endif
