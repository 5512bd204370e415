#ifndef WEDGELAB_LINALG_HPP
#define WEDGELAB_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace wedgelab::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Numerical rank from singular values, threshold relative to the largest.
int rank(const MatrixXd& m, double tol);

/// Orthonormal basis of the column space (thin, SVD-based).
MatrixXd column_space(const MatrixXd& m, double tol);

/// Orthonormal basis of the null space of m.
MatrixXd null_space(const MatrixXd& m, double tol);

/// sin of the largest principal angle between the column spans of two
/// orthonormal-basis matrices. Returns 1.0 when dimensions differ.
double span_distance(const MatrixXd& q1, const MatrixXd& q2);

/// Least-squares coordinates of b in the columns of a, with residual.
VectorXd least_squares(const MatrixXd& a, const VectorXd& b, double* residual);

/// Real matrix exponential.
MatrixXd expm(const MatrixXd& m);

/// Complex matrix exponential.
MatrixXcd expm(const MatrixXcd& m);

/// Eigenvalues of a general real matrix.
VectorXcd eigenvalues(const MatrixXd& m);

/// Cluster eigenvalues within tol; returns one representative per cluster
/// together with its algebraic multiplicity.
struct EigenCluster {
  std::complex<double> value;
  int multiplicity;
};
std::vector<EigenCluster> cluster_eigenvalues(const VectorXcd& lambdas, double tol);

/// Diagonalizability over C: geometric multiplicity (null-space dimension of
/// m - lambda I at the cluster representative) must equal the algebraic one
/// for every cluster. `cluster_tol` is both the clustering radius and the
/// rank threshold scale.
bool is_diagonalizable(const MatrixXd& m, double cluster_tol);

}  // namespace wedgelab::linalg

#endif
