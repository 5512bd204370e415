#include "wedgelab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wedgelab/linalg.hpp"

namespace wedgelab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

// Lanczos approximation (g = 7, n = 9), valid for Re z > 0.
cplx gamma_complex(cplx z) {
  static const double g[9] = {0.99999999999980993,  676.5203681218851,
                              -1259.1392167224028,  771.32342877765313,
                              -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection formula; not hit by the library's own calls
    return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  cplx x = g[0];
  for (int i = 1; i < 9; ++i) x += g[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return std::sqrt(kTwoPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Gauss-Legendre nodes/weights on [-1, 1] via the Golub-Welsch Jacobi matrix.
const std::pair<VectorXd, VectorXd>& gl_rule(int n) {
  static std::map<int, std::pair<VectorXd, VectorXd>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k - 1, k) = b;
    jac(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  VectorXd nodes = es.eigenvalues();
  VectorXd weights(n);
  for (int i = 0; i < n; ++i) {
    double v0 = es.eigenvectors()(0, i);
    weights(i) = 2.0 * v0 * v0;
  }
  return cache.emplace(n, std::make_pair(nodes, weights)).first->second;
}

}  // namespace

Quadrature Quadrature::composite(double a, double b, int total_nodes, int per_panel) {
  if (b <= a) throw DomainError("quadrature interval is empty");
  if (total_nodes < 1) throw DomainError("quadrature needs at least one node");
  per_panel = std::min(per_panel, total_nodes);
  int panels = std::max(1, total_nodes / per_panel);
  const auto& [xs, ws] = gl_rule(per_panel);
  Quadrature q;
  q.nodes.resize(panels * per_panel);
  q.weights.resize(panels * per_panel);
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    for (int i = 0; i < per_panel; ++i) {
      q.nodes(p * per_panel + i) = lo + 0.5 * h * (xs(i) + 1.0);
      q.weights(p * per_panel + i) = 0.5 * h * ws(i);
    }
  }
  return q;
}

double bump(double x, double center, double radius) {
  double t = (x - center) / radius;
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

// ---- strip ----------------------------------------------------------------------

namespace strip {

cplx kernel(cplx z, cplx w) {
  cplx s = std::sinh(0.5 * (z - std::conj(w)));
  if (std::abs(s) < 1e-14)
    throw DomainError("strip kernel singularity: z = conj(w) mod 2 pi i");
  return cplx(0, 1) / (4.0 * pi * s);
}

cplx j_param(cplx w) { return cplx(0, pi) + std::conj(w); }

cplx translate_param(double t, cplx w) { return w - t; }

double orbit_norm_squared(double t) {
  if (std::abs(t) >= pi / 2) throw DomainError("orbit norm requires |t| < pi/2");
  return 1.0 / (4.0 * pi * std::sin(pi / 2 + t));
}

cplx boundary_distribution(double x, Side side, double eps) {
  if (side == Side::upper) return kernel(cplx(x, pi), 0.0);
  if (eps <= 0.0 && std::abs(x) < 1e-12)
    throw DomainError("lower boundary value at x = 0 requires eps > 0");
  cplx s = std::sinh(0.5 * cplx(x, eps));
  return cplx(0, 1) / (4.0 * pi * s);
}

cplx Smear::eval(cplx z) const { return eval_continued(0.0, z); }

cplx Smear::eval_continued(cplx zeta, cplx u) const {
  cplx acc = 0;
  for (int k = 0; k < nodes.size(); ++k)
    acc += coeffs(k) * kernel(u + zeta, nodes(k));
  return acc;
}

Smear smear(const Quadrature& q, const VectorXd& phi_values, cplx phase) {
  if (phi_values.size() != q.nodes.size())
    throw DomainError("phi values do not match the quadrature nodes");
  Smear s;
  s.nodes = q.nodes;
  VectorXd real_coeffs = (q.weights.array() * phi_values.array()).matrix();
  s.coeffs = phase * real_coeffs.cast<cplx>();
  return s;
}

std::vector<cplx> eval_grid() {
  std::vector<cplx> pts;
  for (int i = 0; i < 8; ++i) {
    double re = -3.0 + 6.0 * i / 7.0;
    for (int j = 1; j <= 4; ++j) pts.emplace_back(re, 0.2 * pi * j);
  }
  return pts;
}

double eval_norm(const Smear& s) {
  double acc = 0;
  for (cplx u : eval_grid()) acc += std::norm(s.eval(u));
  return std::sqrt(acc);
}

double kms_residual(const Quadrature& q, const VectorXd& phi_values, cplx phase) {
  Smear xi = smear(q, phi_values, phase);
  if (xi.coeffs.norm() == 0.0) return 0.0;
  double num = 0, den = 0;
  for (cplx u : eval_grid()) {
    cplx continued = xi.eval_continued(cplx(0, pi), u);
    cplx jxi = std::conj(xi.eval(cplx(0, pi) + std::conj(u)));
    num += std::norm(continued - jxi);
    den += std::norm(xi.eval(u));
  }
  return std::sqrt(num) / std::sqrt(den);
}

MatrixXcd gram(const std::vector<cplx>& points) {
  const int n = static_cast<int>(points.size());
  MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = kernel(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
  return 0.5 * (g + g.adjoint());
}

}  // namespace strip

// ---- halfplane -------------------------------------------------------------------

namespace halfplane {

cplx kernel(cplx z, cplx w) {
  cplx d = z - std::conj(w);
  if (std::abs(d) < 1e-14) throw DomainError("half-plane kernel singularity");
  return cplx(0, 1) / (kTwoPi * d);
}

cplx Smear::eval(cplx z) const {
  cplx acc = 0;
  for (int k = 0; k < nodes.size(); ++k) acc += coeffs(k) * kernel(z, nodes(k));
  return acc;
}

Smear smear(const Quadrature& q, const VectorXd& phi_values, cplx phase) {
  if (phi_values.size() != q.nodes.size())
    throw DomainError("phi values do not match the quadrature nodes");
  Smear s;
  s.nodes = q.nodes;
  // anti-linear boundary pairing: the phase enters conjugated
  VectorXd real_coeffs = (q.weights.array() * phi_values.array()).matrix();
  s.coeffs = std::conj(phase) * real_coeffs.cast<cplx>();
  return s;
}

Smear affine_action(double b, double a, const Smear& s) {
  if (a <= 0.0) throw DomainError("affine dilation parameter must be positive");
  Smear out;
  out.nodes = (a * s.nodes.array() - b).matrix();
  out.coeffs = std::sqrt(a) * s.coeffs;
  return out;
}

Smear j_action(const Smear& s) {
  Smear out;
  out.nodes = -s.nodes;
  out.coeffs = s.coeffs.conjugate();
  return out;
}

MatrixXcd smear_gram(const std::vector<Smear>& vs, double eps) {
  const int n = static_cast<int>(vs.size());
  MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // <xi_i, xi_j> = sum_{k,l} c^i_k conj(c^j_l) K(x^j_l + i eps, x^i_k)
      const Smear& a = vs[static_cast<size_t>(i)];
      const Smear& b = vs[static_cast<size_t>(j)];
      cplx acc = 0;
      for (int k = 0; k < a.nodes.size(); ++k)
        for (int l = 0; l < b.nodes.size(); ++l)
          acc += a.coeffs(k) * std::conj(b.coeffs(l)) *
                 kernel(cplx(b.nodes(l), eps), a.nodes(k));
      g(i, j) = acc;
    }
  return 0.5 * (g + g.adjoint());
}

MatrixXcd gram(const std::vector<cplx>& points) {
  const int n = static_cast<int>(points.size());
  MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = kernel(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
  return 0.5 * (g + g.adjoint());
}

std::vector<cplx> eval_grid() {
  std::vector<cplx> pts;
  const double ims[4] = {0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 8; ++i) {
    double re = -3.0 + 6.0 * i / 7.0;
    for (double im : ims) pts.emplace_back(re, im);
  }
  return pts;
}

VectorXcd mellin_transform(const Smear& s, const VectorXd& s_grid) {
  // F(s) = (1/sqrt(2pi)) int_0^inf fhat(p) p^{-is-1/2} dp with
  // fhat(p) = (1/sqrt(2pi)) sum_k c_k e^{-i p x_k}; per node the integral is
  // Gamma(1/2 - i s) (i x)^{i s - 1/2}.
  const int m = static_cast<int>(s_grid.size());
  VectorXcd out(m);
  VectorXd logs(s.nodes.size());
  for (int k = 0; k < s.nodes.size(); ++k) {
    if (s.nodes(k) == 0.0) throw PreconditionError("smear node at the boundary origin");
    logs(k) = std::log(std::abs(s.nodes(k)));
  }
  for (int i = 0; i < m; ++i) {
    cplx a(0.5, -s_grid(i));  // exponent 1/2 - i s
    cplx gam = gamma_complex(a);
    cplx acc = 0;
    for (int k = 0; k < s.nodes.size(); ++k) {
      // (i x)^{-a}: x > 0 gives e^{-a(ln x + i pi/2)}, x < 0 flips the branch
      double sign = s.nodes(k) > 0 ? 1.0 : -1.0;
      cplx expo = -a * cplx(logs(k), sign * kPi / 2);
      acc += s.coeffs(k) * std::exp(expo);
    }
    out(i) = gam * acc / kTwoPi;
  }
  return out;
}

MembershipResult membership(const Quadrature& q, const VectorXd& phi_values,
                            cplx phase, double s_max, double ds) {
  // support validation: one-signed, bounded away from 0 by the resolution
  double resolution = (q.nodes.maxCoeff() - q.nodes.minCoeff()) /
                      std::max(1, static_cast<int>(q.nodes.size()));
  double min_abs = q.nodes.cwiseAbs().minCoeff();
  bool has_pos = (q.nodes.array() > 0).any();
  bool has_neg = (q.nodes.array() < 0).any();
  if (has_pos && has_neg)
    throw PreconditionError("support must stay on one side of the boundary origin");
  if (min_abs < std::max(resolution, 1e-9))
    throw PreconditionError("support touches the boundary origin");

  Smear xi = smear(q, phi_values, phase);

  const int half = std::max(1, static_cast<int>(std::round(s_max / ds)));
  VectorXd s_grid(2 * half + 1);
  for (int j = 0; j <= 2 * half; ++j) s_grid(j) = (j - half) * ds;

  VectorXcd f = mellin_transform(xi, s_grid);

  MembershipResult res;
  res.s_points = static_cast<int>(s_grid.size());
  double num = 0, den = 0, cal_num = 0, cal_den = 0;
  for (int j = 0; j <= 2 * half; ++j) {
    cplx jf = std::conj(f(2 * half - j));          // (JF)(s) = conj(F(-s))
    cplx mf = std::exp(kPi * s_grid(j)) * f(j);    // Delta^{1/2} F
    num += std::norm(mf - jf);
    den += std::norm(f(j));
    // J Delta J F vs Delta^{-1} F
    cplx jdjf = std::conj(std::exp(kTwoPi * s_grid(2 * half - j)) *
                          std::conj(f(j)));
    cplx dinvf = std::exp(-kTwoPi * s_grid(j)) * f(j);
    cal_num += std::norm(jdjf - dinvf);
    cal_den += std::norm(dinvf);
  }
  if (den == 0.0) {
    res.residual = 0.0;
    res.calibration_residual = 0.0;
    return res;
  }
  res.norm = std::sqrt(den * ds);
  res.residual = std::sqrt(num / den);
  res.calibration_residual = cal_den > 0 ? std::sqrt(cal_num / cal_den) : 0.0;
  return res;
}

}  // namespace halfplane

// ---- affine net -------------------------------------------------------------------

AffineNet::AffineNet(std::vector<Bump> library, int nodes_per_bump, cplx boundary_phase)
    : library_(std::move(library)), phase_(boundary_phase) {
  for (const auto& b : library_) {
    if (b.radius <= 0) throw DomainError("bump radius must be positive");
    Quadrature q = Quadrature::composite(b.center - b.radius, b.center + b.radius,
                                         nodes_per_bump);
    VectorXd vals(q.nodes.size());
    for (int i = 0; i < q.nodes.size(); ++i)
      vals(i) = bump(q.nodes(i), b.center, b.radius);
    vectors_.push_back(halfplane::smear(q, vals, phase_));
    quads_.push_back(q);
    values_.push_back(vals);
  }
}

std::vector<int> AffineNet::interval_basis(double lo, double hi) const {
  std::vector<int> out;
  for (size_t i = 0; i < library_.size(); ++i) {
    const auto& b = library_[i];
    if (b.center - b.radius >= lo && b.center + b.radius <= hi)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

const halfplane::Smear& AffineNet::vector(int index) const {
  return vectors_.at(static_cast<size_t>(index));
}

void AffineNet::require_supported(int index, double lo, double hi) const {
  const auto& b = library_.at(static_cast<size_t>(index));
  if (b.center - b.radius < lo || b.center + b.radius > hi)
    throw PreconditionError("test function escapes its assigned interval");
}

namespace {

// Residuals / distances through the regularized Gram: embed the abstract
// vectors into C^m via a square root of the joint Gram, then use ordinary
// linear algebra.
MatrixXcd gram_embedding(const MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
  VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double AffineNet::isotony_residual(double lo1, double hi1, double lo2, double hi2) const {
  auto small = interval_basis(lo1, hi1);
  auto big = interval_basis(lo2, hi2);
  if (small.empty()) return 0.0;
  if (big.empty()) return 1.0;
  std::vector<halfplane::Smear> all;
  for (int i : big) all.push_back(vectors_[static_cast<size_t>(i)]);
  for (int i : small) all.push_back(vectors_[static_cast<size_t>(i)]);
  MatrixXcd g = halfplane::smear_gram(all, eps_);
  MatrixXcd emb = gram_embedding(g);
  const int nb = static_cast<int>(big.size());
  MatrixXcd basis = emb.leftCols(nb);
  Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(basis);
  double worst = 0;
  for (size_t k = 0; k < small.size(); ++k) {
    VectorXcd v = emb.col(nb + static_cast<int>(k));
    VectorXcd x = cod.solve(v);
    double rel = (basis * x - v).norm() / std::max(1e-300, v.norm());
    worst = std::max(worst, rel);
  }
  return worst;
}

double AffineNet::covariance_distance(double b, double a, double lo, double hi) const {
  auto src = interval_basis(lo, hi);
  auto dst = interval_basis(a * lo - b, a * hi - b);
  std::vector<halfplane::Smear> all;
  for (int i : src)
    all.push_back(halfplane::affine_action(b, a, vectors_[static_cast<size_t>(i)]));
  for (int i : dst) all.push_back(vectors_[static_cast<size_t>(i)]);
  if (src.empty() && dst.empty()) return 0.0;
  if (src.empty() || dst.empty()) return 1.0;
  MatrixXcd g = halfplane::smear_gram(all, eps_);
  MatrixXcd emb = gram_embedding(g);
  const int ns = static_cast<int>(src.size());
  // orthonormalize each group (complex), compare spans via principal angles
  MatrixXcd q1 = Eigen::HouseholderQR<MatrixXcd>(emb.leftCols(ns))
                     .householderQ() *
                 MatrixXcd::Identity(emb.rows(), ns);
  MatrixXcd q2 = Eigen::HouseholderQR<MatrixXcd>(emb.rightCols(static_cast<int>(dst.size())))
                     .householderQ() *
                 MatrixXcd::Identity(emb.rows(), static_cast<int>(dst.size()));
  if (q1.cols() != q2.cols()) return 1.0;
  MatrixXcd r12 = q2 - q1 * (q1.adjoint() * q2);
  MatrixXcd r21 = q1 - q2 * (q2.adjoint() * q1);
  Eigen::JacobiSVD<MatrixXcd> s12(r12), s21(r21);
  double sin12 = s12.singularValues().size() ? s12.singularValues()(0) : 0.0;
  double sin21 = s21.singularValues().size() ? s21.singularValues()(0) : 0.0;
  return std::min(1.0, std::max(sin12, sin21));
}

double AffineNet::membership_residual(int index) const {
  const Quadrature& q = quads_.at(static_cast<size_t>(index));
  const VectorXd& vals = values_.at(static_cast<size_t>(index));
  return halfplane::membership(q, vals, phase_).residual;
}

}  // namespace wedgelab
