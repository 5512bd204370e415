#ifndef WEDGELAB_MODULAR_HPP
#define WEDGELAB_MODULAR_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wedgelab/errors.hpp"

namespace wedgelab {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Real 2n-dimensional picture of C^n: vectors as [Re; Im], complex-linear
// operators as [[X,-Y],[Y,X]], anti-linear operators v -> A conj(v) as
// [[X,Y],[Y,-X]]. Inner product <.,.> is linear in the first argument;
// Re<.,.> is the real dot product.
VectorXd to_real(const VectorXcd& z);
VectorXcd to_complex(const VectorXd& x);
MatrixXd complex_linear_real(const MatrixXcd& a);
MatrixXd antilinear_real(const MatrixXcd& a);
MatrixXd mult_i_real(int n);

/// Closed real-linear subspace of C^n, stored as real 2n x k basis columns
/// (independent over R).
class RealSubspace {
 public:
  RealSubspace() = default;
  RealSubspace(int n, const MatrixXd& real_basis);
  static RealSubspace from_complex_vectors(int n, const std::vector<VectorXcd>& vs);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(onb_.cols()); }
  const MatrixXd& basis() const { return basis_; }
  const MatrixXd& onb() const { return onb_; }

  bool contains(const VectorXcd& v, double tol = 1e-10) const;

 private:
  int n_ = 0;
  MatrixXd basis_;
  MatrixXd onb_;
};

bool is_cyclic(const RealSubspace& v, double tol = 1e-10);
bool is_separating(const RealSubspace& v, double tol = 1e-10);
bool is_standard(const RealSubspace& v, double tol = 1e-10);

/// Real-linear operator on C^n in the real 2n picture.
struct RealLinearOp {
  int n = 0;
  MatrixXd m;  // 2n x 2n
  bool antilinear = false;

  VectorXcd apply(const VectorXcd& v) const { return to_complex(m * to_real(v)); }
};

/// The Tomita operator of a standard subspace: S = id on V, S = -id on iV.
RealLinearOp tomita_operator(const RealSubspace& v);

/// Spectral form of a modular pair (Delta, J): Delta = U diag(lambda) U*,
/// J = U o (swap-conjugate along `pairing`) o U*. Invariants:
/// lambda_{p(i)} = 1 / lambda_i, p o p = id, Delta > 0.
class ModularPair {
 public:
  ModularPair() = default;
  ModularPair(VectorXd lambdas, std::vector<int> pairing,
              MatrixXcd basis = MatrixXcd());

  int dim() const { return n_; }
  const VectorXd& lambdas() const { return lambdas_; }
  const std::vector<int>& pairing() const { return pairing_; }
  const MatrixXcd& basis() const { return basis_; }

  MatrixXcd delta() const { return delta_power(1.0); }
  /// U diag(lambda^p) U*.
  MatrixXcd delta_power(double p) const;
  /// Matrix M with J v = M conj(v); M = U P U^T.
  MatrixXcd j_matrix() const;
  VectorXcd apply_j(const VectorXcd& v) const;
  /// Unitary Delta^{-it/2pi} (the R^x-representation at e^t).
  MatrixXcd unitary(double t) const;

 private:
  void validate() const;
  int n_ = 0;
  VectorXd lambdas_;
  std::vector<int> pairing_;
  MatrixXcd basis_;
};

/// Polar decomposition S = J Delta^{1/2} of an involutive real-linear
/// (anti-linear) operator; returns the spectral form.
ModularPair polar_modular(const RealLinearOp& s);

/// Normal form from explicit operators; checks J^2 = 1 and J Delta J =
/// Delta^{-1} (residual <= 1e-10), else PreconditionError.
ModularPair modular_pair_from_operators(const MatrixXcd& delta,
                                        const MatrixXcd& j_antilinear_matrix);

/// V = Fix(J Delta^{1/2}); the output is standard.
RealSubspace standard_from_pair(const ModularPair& pair);

/// Symplectic complement V' = { xi : Im<xi, v> = 0 for all v in V }.
RealSubspace symplectic_complement(const RealSubspace& v);

/// ||Delta^{1/2} xi - J xi|| <= 1e-9 ||xi||; xi = 0 accepted.
bool kms_membership(const VectorXcd& xi, const ModularPair& pair,
                    double* residual = nullptr);

/// Intersection of real subspaces.
RealSubspace intersect(const RealSubspace& a, const RealSubspace& b);

/// BGL net: H(O) = intersection of Fix(J_k Delta_k^{1/2}) over the wedges
/// covering O. An empty cover yields a flagged undefined result (nullopt)
/// rather than the ambient space.
std::optional<RealSubspace> bgl_local_subspace(
    const std::vector<ModularPair>& wedges, const std::vector<int>& covering);

/// sin of the largest principal angle between the real spans; 1.0 when the
/// dimensions differ.
double subspace_distance(const RealSubspace& a, const RealSubspace& b);

/// JSON round-trip of the spectral data:
/// { "n", "lambdas", "pairing", "J_convention": "swap-conjugate" }.
std::string modular_pair_to_json(const ModularPair& pair);
ModularPair modular_pair_from_json(const std::string& text);

/// Subspace export: 2n x k real matrix as CSV rows.
void write_subspace_csv(const RealSubspace& v, const std::string& path);

}  // namespace wedgelab

#endif
