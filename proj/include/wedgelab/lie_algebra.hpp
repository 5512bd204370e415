#ifndef WEDGELAB_LIE_ALGEBRA_HPP
#define WEDGELAB_LIE_ALGEBRA_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "wedgelab/errors.hpp"

namespace wedgelab {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Element of a matrix Lie algebra, stored as a coefficient vector over the
/// algebra's basis.
struct AlgebraElement {
  AlgebraPtr algebra;
  VectorXd coeffs;

  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr alg, VectorXd c);

  /// The realized n x n matrix sum_i coeffs[i] * basis[i].
  MatrixXd realize() const;
  double norm() const { return coeffs.norm(); }
  bool is_zero(double tol) const { return coeffs.norm() <= tol; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;
  AlgebraElement operator-() const { return (*this) * -1.0; }
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

/// Finite-dimensional matrix Lie algebra: an ordered basis of real n x n
/// matrices with cached structure constants. Construction validates linear
/// independence of the basis, closure of brackets in the span, antisymmetry
/// and the Jacobi identity (all within `tolerance`).
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  static AlgebraPtr make(std::string name, std::vector<MatrixXd> basis,
                         double tolerance = 1e-10);

  const std::string& name() const { return name_; }
  int matrix_size() const { return n_; }
  int dim() const { return d_; }
  double tolerance() const { return tol_; }
  const std::vector<MatrixXd>& basis() const { return basis_; }

  /// c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k.
  double structure_constant(int i, int j, int k) const {
    return structure_[static_cast<size_t>(i)](j, k);
  }
  /// Matrix of ad(b_i) in the basis: (ad b_i)_{k j} = c[i][j][k].
  const MatrixXd& ad_basis(int i) const { return ad_basis_[static_cast<size_t>(i)]; }

  /// Coordinates of an n x n matrix in the basis. Throws DomainError if the
  /// matrix lies outside the span (residual > tolerance), unless `residual`
  /// is supplied, in which case the best approximation is returned.
  VectorXd coordinates(const MatrixXd& m, double* residual = nullptr) const;

  MatrixXd realize(const VectorXd& coeffs) const;

  AlgebraElement element(const VectorXd& coeffs) const;
  AlgebraElement element_from_matrix(const MatrixXd& m) const;
  AlgebraElement zero() const;
  AlgebraElement basis_element(int i) const;

  /// Gram matrix of the Killing form in the basis.
  const MatrixXd& killing_matrix() const { return killing_; }

  /// Positive definite reference metric on coefficient space: -B(x, theta y)
  /// with theta the transpose Cartan involution when that exists and the
  /// form is SPD; otherwise the identity (coordinate dot product).
  const MatrixXd& reference_metric() const { return metric_; }
  bool has_cartan_metric() const { return cartan_metric_; }

 private:
  LieAlgebra() = default;
  void validate() const;

  std::string name_;
  int n_ = 0;
  int d_ = 0;
  double tol_ = 1e-10;
  std::vector<MatrixXd> basis_;
  std::vector<MatrixXd> structure_;  // structure_[i](j,k) = c[i][j][k]
  std::vector<MatrixXd> ad_basis_;
  MatrixXd vec_basis_;  // n^2 x d, vectorized basis
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> coord_solver_;
  MatrixXd killing_;
  MatrixXd metric_;
  bool cartan_metric_ = false;

  friend AlgebraPtr make_algebra_impl(std::string, std::vector<MatrixXd>, double);
};

/// Subspace of a Lie algebra given by a list of basis elements; keeps an
/// orthonormalized coordinate matrix for projections and membership tests.
class Subspace {
 public:
  Subspace() = default;
  Subspace(AlgebraPtr algebra, const std::vector<AlgebraElement>& basis_vectors);
  /// Columns of `coeff_basis` are coefficient vectors.
  Subspace(AlgebraPtr algebra, const MatrixXd& coeff_basis);

  static Subspace whole(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  int dim() const { return static_cast<int>(onb_.cols()); }
  const MatrixXd& onb() const { return onb_; }
  const std::vector<AlgebraElement>& basis_vectors() const { return vectors_; }

  AlgebraElement project(const AlgebraElement& x) const;
  bool contains(const AlgebraElement& x, double* residual = nullptr) const;
  /// Closure under the bracket (checked on all basis pairs).
  bool is_subalgebra() const;

 private:
  AlgebraPtr algebra_;
  std::vector<AlgebraElement> vectors_;
  MatrixXd onb_;  // d x k, orthonormal columns
};

/// Linear involutive automorphism acting on coefficient vectors.
class Involution {
 public:
  enum class Label { cartan, tau_h, composed, custom };

  Involution() = default;
  Involution(AlgebraPtr algebra, MatrixXd matrix, Label label);

  const AlgebraPtr& algebra() const { return algebra_; }
  const MatrixXd& matrix() const { return matrix_; }
  Label label() const { return label_; }

  AlgebraElement apply(const AlgebraElement& x) const;

  /// Residual of matrix^2 - I.
  double involution_residual() const;
  /// Max residual of sigma[x,y] - [sigma x, sigma y] over basis pairs.
  double automorphism_residual() const;

 private:
  AlgebraPtr algebra_;
  MatrixXd matrix_;
  Label label_ = Label::custom;
};

// ---- operations ------------------------------------------------------------

/// Lie bracket via structure constants; agrees with the matrix commutator.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Matrix of ad x acting on coefficient vectors (column j = coords of [x, b_j]).
MatrixXd ad_matrix(const AlgebraElement& x);

/// Killing form B(x, y) = trace(ad x ad y).
double killing_form(const AlgebraElement& x, const AlgebraElement& y);

struct Spectrum {
  VectorXcd values;
  bool semisimple = false;
};

/// Spectrum of ad x with a diagonalizability flag (eigenvalue clustering at
/// `cluster_tol`, geometric vs algebraic multiplicities).
Spectrum spectrum(const AlgebraElement& x, double cluster_tol = 1e-8);

/// ad h semisimple, spectrum in {-1, 0, 1}, and both +1 and -1 present.
bool is_euler(const AlgebraElement& h, double cluster_tol = 1e-8);

struct Grading {
  Subspace plus;
  Subspace zero;
  Subspace minus;
};

/// The three real eigenspaces of ad h for an Euler element h, via the exact
/// spectral projectors P_{+1} = A(A+I)/2, P_{-1} = A(A-I)/2, P_0 = I - A^2.
Grading grading(const AlgebraElement& h);

/// Involution equal to +1 on g_0(h) and -1 on g_{+1}(h) + g_{-1}(h);
/// matrix I - 2 (ad h)^2.
Involution tau_h_involution(const AlgebraElement& h);

/// x -> -x^T realized in coordinates. Throws UnsupportedError when the span
/// is not closed under negative transpose. Checks the Cartan property:
/// -B(x, theta y) positive definite on the basis.
Involution cartan_involution_transpose(const AlgebraPtr& algebra);

/// Composition sigma rho as an involution; the factors must commute
/// (commutator residual within tolerance), otherwise DomainError.
Involution compose(const Involution& sigma, const Involution& rho);

/// Raw matrix of the composed automorphism, no involutivity requirement.
MatrixXd compose_matrix(const Involution& sigma, const Involution& rho);

struct EigenspaceSplit {
  Subspace fixed;      // ker(sigma - 1)
  Subspace antifixed;  // ker(sigma + 1)
};

EigenspaceSplit eigenspace_split(const Involution& sigma);

/// ad x semisimple with purely imaginary spectrum.
bool is_elliptic(const AlgebraElement& x);
/// ad x semisimple with real spectrum.
bool is_hyperbolic(const AlgebraElement& x);

}  // namespace wedgelab

#endif
