#include "wedgelab/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>

namespace wedgelab::linalg {

int rank(const MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double thresh = std::max(tol, tol * s(0));
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return r;
}

MatrixXd column_space(const MatrixXd& m, double tol) {
  if (m.size() == 0) return MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double thresh = s.size() ? std::max(tol, tol * s(0)) : tol;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

MatrixXd null_space(const MatrixXd& m, double tol) {
  if (m.rows() == 0) return MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double thresh = s.size() ? std::max(tol, tol * s(0)) : tol;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

double span_distance(const MatrixXd& q1, const MatrixXd& q2) {
  if (q1.cols() != q2.cols()) return 1.0;
  if (q1.cols() == 0) return 0.0;
  // sin of the largest principal angle, computed directly from the residual
  // projections (stable near zero, unlike sqrt(1 - cos^2))
  MatrixXd r12 = q2 - q1 * (q1.transpose() * q2);
  MatrixXd r21 = q1 - q2 * (q2.transpose() * q1);
  Eigen::JacobiSVD<MatrixXd> s12(r12), s21(r21);
  double a = s12.singularValues().size() ? s12.singularValues()(0) : 0.0;
  double b = s21.singularValues().size() ? s21.singularValues()(0) : 0.0;
  return std::min(1.0, std::max(a, b));
}

VectorXd least_squares(const MatrixXd& a, const VectorXd& b, double* residual) {
  VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  if (residual) *residual = (a * x - b).norm();
  return x;
}

MatrixXd expm(const MatrixXd& m) { return m.exp(); }

MatrixXcd expm(const MatrixXcd& m) { return m.exp(); }

VectorXcd eigenvalues(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

std::vector<EigenCluster> cluster_eigenvalues(const VectorXcd& lambdas, double tol) {
  std::vector<EigenCluster> clusters;
  std::vector<bool> used(lambdas.size(), false);
  for (int i = 0; i < lambdas.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = lambdas(i);
    int count = 1;
    used[i] = true;
    for (int j = i + 1; j < lambdas.size(); ++j) {
      if (!used[j] && std::abs(lambdas(j) - lambdas(i)) <= tol) {
        sum += lambdas(j);
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

bool is_diagonalizable(const MatrixXd& m, double cluster_tol) {
  const int d = static_cast<int>(m.rows());
  if (d == 0) return true;
  VectorXcd lam = eigenvalues(m);
  auto clusters = cluster_eigenvalues(lam, cluster_tol);
  double scale = std::max(1.0, m.norm());
  MatrixXcd mc = m.cast<std::complex<double>>();
  for (const auto& c : clusters) {
    if (c.multiplicity == 1) continue;  // geometric multiplicity >= 1 always
    MatrixXcd shifted = mc - c.value * MatrixXcd::Identity(d, d);
    Eigen::JacobiSVD<MatrixXcd> svd(shifted);
    const auto& s = svd.singularValues();
    double thresh = cluster_tol * scale;
    int kernel_dim = 0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) <= thresh) ++kernel_dim;
    if (kernel_dim < c.multiplicity) return false;
  }
  return true;
}

}  // namespace wedgelab::linalg
