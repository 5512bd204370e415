#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "wedgelab/builtins.hpp"
#include "wedgelab/lie_algebra.hpp"
#include "wedgelab/linalg.hpp"
#include "wedgelab/rng.hpp"

using namespace wedgelab;

namespace {

AlgebraElement elem(const AlgebraPtr& a, std::initializer_list<double> c) {
  VectorXd v(static_cast<int>(c.size()));
  int i = 0;
  for (double x : c) v(i++) = x;
  return a->element(v);
}

bool spans_match(const Subspace& s, const std::vector<AlgebraElement>& gens, double tol = 1e-10) {
  if (s.dim() != static_cast<int>(gens.size())) return false;
  for (const auto& g : gens) {
    double res = 0;
    s.contains(g, &res);
    if (res > tol * std::max(1.0, g.norm())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sl2 bracket table") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  CHECK((bracket(h, e) - e).norm() <= 1e-12);
  CHECK((bracket(h, f) + f).norm() <= 1e-12);
  CHECK((bracket(e, f) - h * 2.0).norm() <= 1e-12);
  CHECK(bracket(e, e).norm() <= 1e-15);

  // structure-constant bracket agrees with the realized matrix commutator
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    AlgebraElement x = a->element(rng.normal_vector(3));
    AlgebraElement y = a->element(rng.normal_vector(3));
    MatrixXd comm = x.realize() * y.realize() - y.realize() * x.realize();
    CHECK((bracket(x, y).realize() - comm).norm() <= 1e-12);
  }

  auto b = sl2();
  CHECK_THROWS_AS((void)bracket(a->basis_element(0), b->basis_element(0)), DomainError);
}

TEST_CASE("ad matrices") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1);

  MatrixXd adh = ad_matrix(h);
  MatrixXd expected = Eigen::Vector3d(0, 1, -1).asDiagonal();
  CHECK((adh - expected).norm() <= 1e-14);

  CHECK(ad_matrix(a->zero()).norm() == 0.0);

  MatrixXd ade = ad_matrix(e);
  CHECK((ade * ade * ade).norm() <= 1e-13);
  CHECK(ade.norm() > 0.1);

  // linearity
  Rng rng(5);
  AlgebraElement x = a->element(rng.normal_vector(3));
  AlgebraElement y = a->element(rng.normal_vector(3));
  CHECK((ad_matrix(x + y) - ad_matrix(x) - ad_matrix(y)).norm() <= 1e-13);
}

TEST_CASE("Killing form") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  CHECK(killing_form(h, h) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(killing_form(h, e)) <= 1e-13);
  CHECK(std::abs(killing_form(e, f) - 4.0) <= 1e-13);
  CHECK(killing_form(e, a->zero()) == 0.0);

  // symmetry and invariance B([z,x],y) + B(x,[z,y]) = 0
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    AlgebraElement x = a->element(rng.normal_vector(3));
    AlgebraElement y = a->element(rng.normal_vector(3));
    AlgebraElement z = a->element(rng.normal_vector(3));
    CHECK(std::abs(killing_form(x, y) - killing_form(y, x)) <= 1e-11);
    CHECK(std::abs(killing_form(bracket(z, x), y) + killing_form(x, bracket(z, y))) <= 1e-10);
  }
}

TEST_CASE("spectrum and semisimplicity") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  Spectrum sh = spectrum(h);
  CHECK(sh.semisimple);
  std::vector<double> re;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(sh.values(i).imag()) <= 1e-10);
    re.push_back(sh.values(i).real());
  }
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0] + 1) <= 1e-10);
  CHECK(std::abs(re[1]) <= 1e-10);
  CHECK(std::abs(re[2] - 1) <= 1e-10);

  Spectrum se = spectrum(e);
  CHECK(!se.semisimple);
  CHECK(se.values.cwiseAbs().maxCoeff() <= 1e-7);

  Spectrum sef = spectrum(e - f);
  CHECK(sef.semisimple);
  double max_re = 0, max_im = 0;
  for (int i = 0; i < 3; ++i) {
    max_re = std::max(max_re, std::abs(sef.values(i).real()));
    max_im = std::max(max_im, std::abs(sef.values(i).imag()));
  }
  CHECK(max_re <= 1e-10);
  CHECK(max_im == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Euler detection") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  CHECK(is_euler(h));
  CHECK(!is_euler(a->zero()));
  CHECK(is_euler((e + f) * 0.5));
  CHECK(!is_euler(e));          // nilpotent
  CHECK(!is_euler(h * 2.0));    // spectrum {0, +/-2}
  CHECK(!is_euler(e - f));      // elliptic
}

TEST_CASE("grading of sl2") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  Grading g = grading(h);
  CHECK(spans_match(g.plus, {e}));
  CHECK(spans_match(g.zero, {h}));
  CHECK(spans_match(g.minus, {f}));

  CHECK_THROWS_AS((void)grading(e), PreconditionError);

  // projector identities
  MatrixXd adh = ad_matrix(h);
  MatrixXd id = MatrixXd::Identity(3, 3);
  MatrixXd pp = 0.5 * adh * (adh + id);
  MatrixXd pm = 0.5 * adh * (adh - id);
  MatrixXd p0 = id - adh * adh;
  CHECK((pp + pm + p0 - id).norm() <= 1e-12);
  CHECK((pp * pp - pp).norm() <= 1e-12);
  CHECK((pp * pm).norm() <= 1e-12);
  CHECK((pp * p0).norm() <= 1e-12);
}

TEST_CASE("grading dimensions for so(1,d) and so(2,d)") {
  for (int d = 2; d <= 4; ++d) {
    auto a = so1d(d);
    AlgebraElement boost = a->basis_element(0);
    REQUIRE(is_euler(boost));
    Grading g = grading(boost);
    CHECK(g.plus.dim() == d - 1);
    CHECK(g.minus.dim() == d - 1);
    CHECK(g.plus.dim() + g.zero.dim() + g.minus.dim() == a->dim());
  }
  for (int d = 3; d <= 4; ++d) {
    auto a = so2d(d);
    AlgebraElement h = a->basis_element(0);
    REQUIRE(is_euler(h));
    Grading g = grading(h);
    CHECK(g.plus.dim() == d);
    CHECK(g.minus.dim() == d);
    CHECK(g.plus.dim() + g.zero.dim() + g.minus.dim() == a->dim());
  }
}

TEST_CASE("bracket compatibility of the grading") {
  auto a = so2d(3);
  Grading g = grading(a->basis_element(0));
  const Subspace* spaces[3] = {&g.minus, &g.zero, &g.plus};
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      const Subspace& si = *spaces[i + 1];
      const Subspace& sj = *spaces[j + 1];
      for (int ci = 0; ci < si.dim(); ++ci)
        for (int cj = 0; cj < sj.dim(); ++cj) {
          AlgebraElement br = bracket(a->element(si.onb().col(ci)),
                                      a->element(sj.onb().col(cj)));
          int target = i + j;
          double res = 0;
          if (std::abs(target) > 1) {
            res = br.norm();
          } else {
            spaces[target + 1]->contains(br, &res);
          }
          CHECK(res <= 1e-10);
        }
    }
}

TEST_CASE("tau_h involution") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);
  Involution tau = tau_h_involution(h);

  CHECK((tau.apply(e) + e).norm() <= 1e-12);
  CHECK((tau.apply(f) + f).norm() <= 1e-12);
  CHECK((tau.apply(h) - h).norm() <= 1e-12);
  CHECK(tau.involution_residual() <= 1e-12);

  EigenspaceSplit split = eigenspace_split(tau);
  CHECK(spans_match(split.fixed, {h}));
  CHECK(spans_match(split.antifixed, {e, f}));

  CHECK_THROWS_AS((void)tau_h_involution(e), PreconditionError);
}

TEST_CASE("transpose Cartan involution") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);
  Involution theta = cartan_involution_transpose(a);

  CHECK((theta.apply(h) + h).norm() <= 1e-12);
  CHECK((theta.apply(e) + f).norm() <= 1e-12);
  CHECK((theta.apply(f) + e).norm() <= 1e-12);
  CHECK(theta.involution_residual() <= 1e-12);

  // positive definiteness of -B(x, theta x)
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    AlgebraElement x = a->element(rng.normal_vector(3));
    if (x.norm() < 1e-8) continue;
    CHECK(-killing_form(x, theta.apply(x)) > 0.0);
  }
}

TEST_CASE("involutions preserve the Killing form") {
  for (const auto& a : {sl2(), so1d(3), su11_real()}) {
    Involution theta = cartan_involution_transpose(a);
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
      AlgebraElement x = a->element(rng.normal_vector(a->dim()));
      AlgebraElement y = a->element(rng.normal_vector(a->dim()));
      double lhs = killing_form(theta.apply(x), theta.apply(y));
      CHECK(std::abs(lhs - killing_form(x, y)) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("composition theta tau_h") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);
  Involution theta = cartan_involution_transpose(a);
  Involution tau_h = tau_h_involution(h);
  Involution tau = compose(theta, tau_h);

  // independent oracle: eigenvectors of the 3x3 composed matrix
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (tau.matrix() + tau.matrix().transpose()));
  REQUIRE(es.info() == Eigen::Success);
  int fixed_dim = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(es.eigenvalues()(i) - 1.0) < 1e-9) ++fixed_dim;
  CHECK(fixed_dim == 1);

  EigenspaceSplit split = eigenspace_split(tau);
  CHECK(split.fixed.dim() == 1);
  CHECK(split.antifixed.dim() == 2);
  // tau(e) = theta(-e) = f, so the fixed line is R(e + f) and
  // the antifixed plane is spanned by h and e - f
  CHECK(spans_match(split.fixed, {e + f}));
  CHECK(spans_match(split.antifixed, {h, e - f}));
  // h is antifixed: tau(h) = -h (h is a causal direction for this pair)
  CHECK((tau.apply(h) + h).norm() <= 1e-12);

  // order does not matter for commuting involutions
  Involution tau2 = compose(tau_h, theta);
  CHECK((tau.matrix() - tau2.matrix()).norm() <= 1e-12);

  // identity split
  Involution ident(a, MatrixXd::Identity(3, 3), Involution::Label::custom);
  EigenspaceSplit id_split = eigenspace_split(ident);
  CHECK(id_split.fixed.dim() == 3);
  CHECK(id_split.antifixed.dim() == 0);
}

TEST_CASE("non-commuting composition is rejected") {
  auto a = sl2();
  Involution tau_h = tau_h_involution(a->basis_element(0));
  // conjugate tau_h by exp(0.3 ad e): still an involutive automorphism,
  // but it no longer commutes with tau_h
  MatrixXd m = linalg::expm(MatrixXd(0.3 * ad_matrix(a->basis_element(1))));
  Involution rho(a, m * tau_h.matrix() * m.inverse(), Involution::Label::custom);
  CHECK_THROWS_AS((void)compose(tau_h, rho), DomainError);
  // the raw product is still a well-defined automorphism, just not involutive
  MatrixXd prod = compose_matrix(tau_h, rho);
  CHECK((prod * prod - MatrixXd::Identity(3, 3)).norm() > 1e-3);
  AlgebraElement x = a->basis_element(1), y = a->basis_element(2);
  VectorXd lhs = prod * bracket(x, y).coeffs;
  VectorXd rhs = bracket(a->element(prod * x.coeffs), a->element(prod * y.coeffs)).coeffs;
  CHECK((lhs - rhs).norm() <= 1e-10);
}

TEST_CASE("elliptic / hyperbolic dichotomy") {
  auto a = sl2();
  auto h = a->basis_element(0), e = a->basis_element(1), f = a->basis_element(2);

  CHECK(is_elliptic(e - f));
  CHECK(!is_hyperbolic(e - f));
  CHECK(is_hyperbolic(e + f));
  CHECK(!is_elliptic(e + f));
  CHECK(!is_elliptic(e));
  CHECK(!is_hyperbolic(e));
  // zero is both (ad = 0)
  CHECK(is_elliptic(a->zero()));
  CHECK(is_hyperbolic(a->zero()));

  // every Euler element is hyperbolic
  CHECK(is_hyperbolic(h));
  CHECK(is_hyperbolic((e + f) * 0.5));
  CHECK(is_hyperbolic(so1d(3)->basis_element(0)));
  CHECK(is_hyperbolic(so2d(3)->basis_element(0)));
}

TEST_CASE("su(1,1) realified") {
  auto a = su11_real();
  CHECK(a->dim() == 3);
  CHECK(a->matrix_size() == 4);
  AlgebraElement k = a->basis_element(0), h = a->basis_element(1), b = a->basis_element(2);
  CHECK((bracket(k, h) - b).norm() <= 1e-12);
  CHECK((bracket(h, b) + k).norm() <= 1e-12);
  CHECK((bracket(b, k) - h).norm() <= 1e-12);
  CHECK(is_euler(h));
  CHECK(is_elliptic(k));
  Grading g = grading(h);
  CHECK(g.plus.dim() == 1);
  CHECK(g.zero.dim() == 1);
  CHECK(g.minus.dim() == 1);
}

TEST_CASE("structure residuals of every shipped algebra") {
  // construction already enforces antisymmetry, closure and Jacobi at 1e-10;
  // re-check the residuals explicitly
  for (const auto& a : {sl2(), so1d(2), so1d(3), so1d(4), so2d(3), so2d(4), su11_real()}) {
    const int d = a->dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        MatrixXd direct = a->basis()[static_cast<size_t>(i)] * a->basis()[static_cast<size_t>(j)] -
                          a->basis()[static_cast<size_t>(j)] * a->basis()[static_cast<size_t>(i)];
        MatrixXd from_constants = MatrixXd::Zero(a->matrix_size(), a->matrix_size());
        for (int k = 0; k < d; ++k)
          from_constants += a->structure_constant(i, j, k) * a->basis()[static_cast<size_t>(k)];
        CHECK((direct - from_constants).norm() <= 1e-10);
      }
  }
}

TEST_CASE("subspace membership is idempotent") {
  auto a = so1d(3);
  Rng rng(23);
  std::vector<AlgebraElement> gens{a->element(rng.normal_vector(6)),
                                   a->element(rng.normal_vector(6))};
  Subspace s(a, gens);
  AlgebraElement x = a->element(rng.normal_vector(6));
  AlgebraElement p1 = s.project(x);
  AlgebraElement p2 = s.project(p1);
  CHECK((p1 - p2).norm() <= 1e-12);
  CHECK(s.contains(p1));
}

TEST_CASE("algebra JSON round trip") {
  for (const auto& a : {sl2(), so1d(3), so2d(3), su11_real()}) {
    std::string text = algebra_to_json(*a);
    CHECK(text == algebra_to_json(*a));  // emission is deterministic
    auto b = algebra_from_json(text);
    CHECK(b->name() == a->name());
    CHECK(b->dim() == a->dim());
    for (int i = 0; i < a->dim(); ++i)
      CHECK((a->basis()[static_cast<size_t>(i)] - b->basis()[static_cast<size_t>(i)]).norm() == 0.0);
  }
  // builtin constructors are bit-stable across invocations
  CHECK(algebra_to_json(*so2d(4)) == algebra_to_json(*so2d(4)));
}

TEST_CASE("algebra validation errors") {
  MatrixXd e(2, 2), e2(2, 2);
  e << 0, 1, 0, 0;
  e2 << 0, 2, 0, 0;
  CHECK_THROWS_AS((void)LieAlgebra::make("dep", {e, e2}), DomainError);

  MatrixXd h(2, 2);
  h << 0.5, 0, 0, -0.5;
  // {h, e} is not closed: [h, e] = e is fine, but {e, f} alone is not closed
  MatrixXd f(2, 2);
  f << 0, 0, 1, 0;
  CHECK_THROWS_AS((void)LieAlgebra::make("open", {e, f}), DomainError);
  CHECK_NOTHROW((void)LieAlgebra::make("heisenberg-like", {h, e}));
}
