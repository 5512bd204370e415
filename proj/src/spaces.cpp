#include "wedgelab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "wedgelab/builtins.hpp"
#include "wedgelab/linalg.hpp"
#include "wedgelab/rng.hpp"

namespace wedgelab {

void PointCloud::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open CSV output file: " + path);
  out << "model,d";
  for (int j = 0; j < points.cols(); ++j) out << ",x" << j;
  out << ",label,margin\n";
  char buf[64];
  for (int i = 0; i < points.rows(); ++i) {
    out << model << "," << d;
    for (int j = 0; j < points.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", points(i, j));
      out << "," << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", margins(i));
    out << "," << static_cast<int>(labels[static_cast<size_t>(i)]) << "," << buf << "\n";
  }
}

int sampler_threads() {
  const char* env = std::getenv("WEDGELAB_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return std::max(1, n);
}

namespace {

// Runs fn(i) for i in [0, count) over the sampler thread pool. Each index is
// independent, so the result is identical for any thread count.
template <typename Fn>
void indexed_for(int count, const Fn& fn) {
  int threads = std::min(sampler_threads(), std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

double lorentz_margin_ds(const VectorXd& v) {
  return v(0) - v.tail(v.size() - 1).norm();
}

}  // namespace

// ---- DeSitter ----------------------------------------------------------------

DeSitter::DeSitter(int d) : d_(d) {
  if (d < 2) throw DomainError("dS^d requires d >= 2");
  algebra_ = so1d(d);
}

double DeSitter::quadric_residual(const VectorXd& x) const {
  if (x.size() != d_ + 1) throw DomainError("dS point has wrong dimension");
  double q = x(0) * x(0) - x.tail(d_).squaredNorm();
  return std::abs(q + 1.0);
}

double DeSitter::quadric_residual(const VectorXcd& z) const {
  if (z.size() != d_ + 1) throw DomainError("dS point has wrong dimension");
  cplx q = z(0) * z(0);
  for (int i = 1; i <= d_; ++i) q -= z(i) * z(i);
  return std::abs(q + 1.0);
}

VectorXd DeSitter::base_point() const {
  VectorXd e1 = VectorXd::Zero(d_ + 1);
  e1(1) = 1.0;
  return e1;
}

VectorXd DeSitter::flow(const AlgebraElement& h, double t, const VectorXd& m) const {
  if (h.algebra.get() != algebra_.get()) throw DomainError("Euler element from a different algebra");
  return linalg::expm(MatrixXd(t * h.realize())) * m;
}

VectorXcd DeSitter::flow(const AlgebraElement& h, cplx z, const VectorXcd& m) const {
  if (h.algebra.get() != algebra_.get()) throw DomainError("Euler element from a different algebra");
  MatrixXcd gen = h.realize().cast<cplx>();
  return linalg::expm(MatrixXcd(z * gen)) * m;
}

VectorXd DeSitter::modular_vector_field(const AlgebraElement& h, const VectorXd& m) const {
  if (h.algebra.get() != algebra_.get()) throw DomainError("Euler element from a different algebra");
  return h.realize() * m;
}

double DeSitter::positivity_margin(const AlgebraElement& h, const VectorXd& m) const {
  return lorentz_margin_ds(modular_vector_field(h, m));
}

bool DeSitter::positivity_contains(const AlgebraElement& h, const VectorXd& m,
                                   double* margin) const {
  double mg = positivity_margin(h, m);
  if (margin) *margin = mg;
  return mg >= 1e-8;
}

PointCloud DeSitter::wedge_sample(const AlgebraElement& h, int count,
                                  std::uint64_t seed) const {
  if (count < 1) throw PreconditionError("sample count must be >= 1");
  PointCloud cloud;
  cloud.model = "ds";
  cloud.d = d_;
  cloud.seed = seed;
  cloud.points.resize(count, d_ + 1);
  cloud.labels.assign(static_cast<size_t>(count), 0);
  cloud.margins.resize(count);
  MatrixXd gen = h.realize();
  indexed_for(count, [&](int i) {
    Rng rng = Rng::indexed(seed, static_cast<std::uint64_t>(i));
    double x0 = 1.2 * rng.normal();
    VectorXd dir = rng.normal_vector(d_);
    dir.normalize();
    VectorXd x(d_ + 1);
    x(0) = x0;
    x.tail(d_) = std::sqrt(1.0 + x0 * x0) * dir;
    cloud.points.row(i) = x.transpose();
    double mg = lorentz_margin_ds(gen * x);
    cloud.margins(i) = mg;
    cloud.labels[static_cast<size_t>(i)] = mg >= 1e-8 ? 1 : 0;
  });
  return cloud;
}

PointCloud DeSitter::negative_wedge_sample(const AlgebraElement& h, int count,
                                           std::uint64_t seed) const {
  if (h.is_zero(1e-14))
    throw PreconditionError("reversed-wedge sampling requires a nonzero Euler element");
  return wedge_sample(h * -1.0, count, seed);
}

bool DeSitter::crown_contains(const VectorXcd& z, double* margin) const {
  if (quadric_residual(z) > 1e-9)
    throw PreconditionError("point is not on the complexified quadric");
  VectorXd y = z.imag();
  double mg = lorentz_margin_ds(y);
  if (margin) *margin = mg;
  return mg >= 1e-10;
}

VectorXd DeSitter::boundary_orbit_point(const AlgebraElement& h, int sign) const {
  VectorXcd ie0 = VectorXcd::Zero(d_ + 1);
  ie0(0) = cplx(0, 1);
  cplx z(0, (sign >= 0 ? 1.0 : -1.0) * 1.5707963267948966);
  VectorXcd w = flow(h, z, ie0);
  if (w.imag().norm() > 1e-10)
    throw NumericError("boundary orbit point has a nonreal component");
  return w.real();
}

bool DeSitter::kms_contains(const AlgebraElement& h, const VectorXd& m, int nt,
                            int ns, double* min_margin) const {
  if (nt < 1 || ns < 1) throw DomainError("grid must be at least 1x1");
  const double offset = 0.05;
  const double pi = 3.14159265358979323846;
  VectorXcd mc = m.cast<cplx>();
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (int i = 0; i < nt; ++i) {
    double t = nt == 1 ? 0.0 : -3.0 + 6.0 * i / (nt - 1);
    for (int j = 0; j < ns; ++j) {
      double s = ns == 1 ? pi / 2 : offset + (pi - 2 * offset) * j / (ns - 1);
      VectorXcd w = flow(h, cplx(t, s), mc);
      double mg = 0;
      bool in = crown_contains(w, &mg);
      worst = std::min(worst, mg);
      if (!in) ok = false;
    }
  }
  if (min_margin) *min_margin = worst;
  return ok;
}

// ---- AntiDeSitter --------------------------------------------------------------

AntiDeSitter::AntiDeSitter(int d) : d_(d) {
  if (d < 3) throw DomainError("AdS^d requires d >= 3");
  algebra_ = so2d(d - 1);  // acts on R^{d+1} with form diag(1,1,-1,...,-1)
}

AlgebraElement AntiDeSitter::euler_boost() const { return algebra_->basis_element(0); }

double AntiDeSitter::quadric_residual(const VectorXd& x) const {
  if (x.size() != d_ + 1) throw DomainError("AdS point has wrong dimension");
  double q = x(0) * x(0) + x(1) * x(1) - x.tail(d_ - 1).squaredNorm();
  return std::abs(q - 1.0);
}

VectorXd AntiDeSitter::base_point() const {
  VectorXd e1 = VectorXd::Zero(d_ + 1);
  e1(1) = 1.0;
  return e1;
}

VectorXd AntiDeSitter::flow(const AlgebraElement& h, double t, const VectorXd& m) const {
  if (h.algebra.get() != algebra_.get()) throw DomainError("Euler element from a different algebra");
  return linalg::expm(MatrixXd(t * h.realize())) * m;
}

VectorXd AntiDeSitter::modular_vector_field(const AlgebraElement& h,
                                            const VectorXd& m) const {
  if (h.algebra.get() != algebra_.get()) throw DomainError("Euler element from a different algebra");
  return h.realize() * m;
}

double AntiDeSitter::positivity_margin(const AlgebraElement& h, const VectorXd& m) const {
  VectorXd v = modular_vector_field(h, m);
  auto form = [this](const VectorXd& a, const VectorXd& b) {
    return a(0) * b(0) + a(1) * b(1) - a.tail(d_ - 1).dot(b.tail(d_ - 1));
  };
  VectorXd tfield = VectorXd::Zero(d_ + 1);
  tfield(0) = m(1);
  tfield(1) = -m(0);
  double tn = form(tfield, tfield);
  if (tn <= 0) throw NumericError("time orientation field degenerates off the quadric");
  VectorXd that = tfield / std::sqrt(tn);
  double a = form(v, that);
  double s = a * a - form(v, v);
  return a - std::sqrt(std::max(0.0, s));
}

bool AntiDeSitter::positivity_contains(const AlgebraElement& h, const VectorXd& m,
                                       double* margin) const {
  double mg = positivity_margin(h, m);
  if (margin) *margin = mg;
  return mg >= 1e-8;
}

PointCloud AntiDeSitter::wedge_sample(const AlgebraElement& h, int count,
                                      std::uint64_t seed) const {
  if (count < 1) throw PreconditionError("sample count must be >= 1");
  PointCloud cloud;
  cloud.model = "ads";
  cloud.d = d_;
  cloud.seed = seed;
  cloud.points.resize(count, d_ + 1);
  cloud.labels.assign(static_cast<size_t>(count), 0);
  cloud.margins.resize(count);
  indexed_for(count, [&](int i) {
    Rng rng = Rng::indexed(seed, static_cast<std::uint64_t>(i));
    VectorXd tail = rng.normal_vector(d_ - 1);
    double r = std::sqrt(1.0 + tail.squaredNorm());
    double phi = rng.uniform(0.0, 6.283185307179586477);
    VectorXd x(d_ + 1);
    x(0) = r * std::cos(phi);
    x(1) = r * std::sin(phi);
    x.tail(d_ - 1) = tail;
    cloud.points.row(i) = x.transpose();
    double mg = positivity_margin(h, x);
    cloud.margins(i) = mg;
    cloud.labels[static_cast<size_t>(i)] = mg >= 1e-8 ? 1 : 0;
  });
  return cloud;
}

// ---- disc ----------------------------------------------------------------------

namespace disc {

cplx mobius(const MatrixXcd& g, cplx z) {
  if (std::abs(z) >= 1.0) throw DomainError("disc point must satisfy |z| < 1");
  cplx a = g(0, 0), b = g(0, 1);
  double su = std::abs(std::norm(a) - std::norm(b) - 1.0);
  if (su > 1e-9 || std::abs(g(1, 0) - std::conj(b)) > 1e-9 ||
      std::abs(g(1, 1) - std::conj(a)) > 1e-9)
    throw DomainError("matrix is not in SU(1,1)");
  return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

cplx flow_origin(cplx t) { return std::tanh(t / 2.0); }

cplx strip_to_disc(cplx z) {
  if (std::abs(z.imag()) >= 1.5707963267948966)
    throw DomainError("strip point must satisfy |Im z| < pi/2");
  return std::tanh(z / 2.0);
}

}  // namespace disc

// ---- group model ------------------------------------------------------------------

Eigen::Matrix2d GroupInvolution::apply(const Eigen::Matrix2d& g) const {
  Eigen::Matrix2d x = g;
  if (inverse_transpose) x = x.inverse().transpose().eval();
  return conjugator * x * conjugator.inverse();
}

Eigen::Matrix2d quotient_embedding(const Eigen::Matrix2d& g, const GroupInvolution& tau) {
  return g * tau.apply(g).inverse();
}

GroupWedge::GroupWedge(AlgebraElement h, ConvexCone cone, double invariance_tol)
    : h_(std::move(h)), cone_(std::move(cone)) {
  if (!is_euler(h_)) throw PreconditionError("group wedge requires an Euler element");
  // sampled Ad-invariance of the cone (the generator description is an
  // inscribed approximation; the tolerance reflects the sampling resolution)
  Rng rng(0xC0FFEEULL);
  const auto& alg = h_.algebra;
  for (int trial = 0; trial < 8; ++trial) {
    VectorXd y = rng.ball(alg->dim(), 0.5);
    AlgebraElement gy = alg->element(y);
    for (size_t i = 0; i < cone_.generators().size(); i += std::max<size_t>(1, cone_.generators().size() / 8)) {
      AlgebraElement moved = adjoint_exp(gy, cone_.generators()[i]);
      moved = moved * (1.0 / std::max(1e-300, moved.norm()));
      double res = 0;
      cone_.contains(moved, &res);
      if (res > invariance_tol)
        throw PreconditionError("cone is not invariant under sampled Ad within tolerance");
    }
  }
}

bool GroupWedge::contains(const Eigen::Matrix2d& g, double* margin) const {
  if (std::abs(g.determinant() - 1.0) > 1e-9)
    throw DomainError("group point must have determinant 1");
  const auto& alg = h_.algebra;
  MatrixXd hmat = h_.realize();
  MatrixXd x = g.inverse() * hmat * g - hmat;  // Ad(g^{-1}) h - h
  AlgebraElement xe = alg->element_from_matrix(x);
  return cone_.contains_interior(xe, margin);
}

GroupWedge::SemigroupReport GroupWedge::semigroup_check(int pairs, std::uint64_t seed,
                                                        double t_range, double x_min,
                                                        double x_max) const {
  SemigroupReport rep;
  rep.samples = pairs;
  rep.seed = seed;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const auto& alg = h_.algebra;
  MatrixXd hmat = h_.realize();
  MatrixXd emat = alg->basis_element(1).realize();
  MatrixXd fmat = alg->basis_element(2).realize();

  auto sample_element = [&](Rng& rng) {
    double t = rng.uniform(-t_range, t_range);
    double a = rng.uniform(x_min, x_max);
    double b = rng.uniform(x_min, x_max);
    MatrixXd k = linalg::expm(MatrixXd(t * hmat));
    MatrixXd x = linalg::expm(MatrixXd(a * emat + b * fmat));
    return MatrixXd(k * x);
  };

  for (int i = 0; i < pairs; ++i) {
    Rng rng = Rng::indexed(seed, static_cast<std::uint64_t>(i));
    Eigen::Matrix2d g1 = sample_element(rng);
    Eigen::Matrix2d g2 = sample_element(rng);
    Eigen::Matrix2d g12 = g1 * g2;
    double m1 = 0, m2 = 0, m12 = 0;
    bool ok = contains(g1, &m1) && contains(g2, &m2) && contains(g12, &m12);
    rep.min_margin = std::min({rep.min_margin, m1, m2, m12});
    if (ok)
      ++rep.passes;
    else
      rep.failures.push_back(i);
  }
  return rep;
}

}  // namespace wedgelab
