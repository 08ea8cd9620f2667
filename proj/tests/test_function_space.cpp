#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gus/function_space.hpp"

using namespace gus;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

RealField random_field(const FunctionSpace& s, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  RealField u(s);
  for (int i = 0; i < s.dim(); ++i) u.c[i] = n(rng);
  return u;
}

// Analytic integral over the periodic domain of a product of basis functions,
// via exponential expansion: each factor is sum of c_m e^{i m pi x / beta};
// only the zero-frequency part survives and integrates to 2*beta.
struct Harmonic {
  int m;
  cd coef;
};

std::vector<Harmonic> basis_harmonics(const FunctionSpace& s, int i) {
  if (i == 0) return {{0, cd(1, 0)}};
  const int k = (i + 1) / 2;
  if (i % 2 == 1) return {{k, cd(0.5, 0)}, {-k, cd(0.5, 0)}};
  return {{k, cd(0, -0.5)}, {-k, cd(0, 0.5)}};
}

double analytic_triple_product_integral(const FunctionSpace& s, int i, int j, int k) {
  cd acc(0, 0);
  for (const auto& a : basis_harmonics(s, i))
    for (const auto& b : basis_harmonics(s, j))
      for (const auto& c : basis_harmonics(s, k))
        if (a.m + b.m + c.m == 0) acc += a.coef * b.coef * c.coef;
  return acc.real() * 2.0 * s.beta();
}

double quad_triple_product(const FunctionSpace& s, int i, int j, int k) {
  const Vec& x = s.quad_nodes();
  double acc = 0.0;
  for (int q = 0; q < s.num_nodes(); ++q)
    acc += s.basis_value(i, x[q]) * s.basis_value(j, x[q]) * s.basis_value(k, x[q]);
  return acc * s.quad_weight();
}

}  // namespace

TEST_CASE("build_space dimensions and errors") {
  auto s1 = build_space(SpaceKind::Periodic, kPi, 1);
  CHECK(s1.dim() == 3);
  CHECK(s1.num_nodes() >= 3 * 1 + 1);

  auto s0 = build_space(SpaceKind::Periodic, 10.0, 0);
  CHECK(s0.dim() == 1);
  RealField one(s0);
  one.c[0] = 1.0;
  auto d = derivative(one);
  CHECK(d.c.norm() == 0.0);

  auto sd = build_space(SpaceKind::Dirichlet, 1.0, 4);
  CHECK(sd.dim() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(sd.basis_value(i, 0.0)) < 1e-13);
    CHECK(std::abs(sd.basis_value(i, 1.0)) < 1e-12);
  }

  CHECK_THROWS_AS(build_space(SpaceKind::Periodic, -1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_space(SpaceKind::Periodic, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_space(SpaceKind::Periodic, 1.0, -2), std::invalid_argument);
}

TEST_CASE("integral of basis members and random fields") {
  auto s = build_space(SpaceKind::Periodic, 10.0, 6);
  RealField one(s);
  one.c[0] = 1.0;
  CHECK(integral(one) == doctest::Approx(20.0).epsilon(1e-14));

  RealField sn(s);
  sn.c[2] = 1.0;  // sin(pi x / beta)
  CHECK(std::abs(integral(sn)) < 1e-14);

  // dense-grid trapezoid oracle
  auto u = random_field(s, 17);
  const int N = 200000;
  double acc = 0.0;
  for (int j = 0; j < N; ++j) {
    const double x = -10.0 + 20.0 * j / N;
    double v = 0.0;
    for (int i = 0; i < s.dim(); ++i) v += u.c[i] * s.basis_value(i, x);
    acc += v;
  }
  acc *= 20.0 / N;
  CHECK(integral(u) == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("inner product: symmetry, positivity, oracle") {
  const double beta = 3.0;
  auto s = build_space(SpaceKind::Periodic, beta, 5);
  RealField sn(s), one(s), cs(s);
  sn.c[2] = 1.0;
  one.c[0] = 1.0;
  cs.c[2 * 3 - 1] = 1.0;
  CHECK(inner_product(sn, sn) == doctest::Approx(beta).epsilon(1e-14));
  CHECK(std::abs(inner_product(one, cs)) < 1e-14);

  auto u = random_field(s, 3);
  CHECK(inner_product(u, u) >= 0.0);
  const int N = 400000;
  double acc = 0.0;
  for (int j = 0; j < N; ++j) {
    const double x = -beta + 2 * beta * j / N;
    double v = 0.0;
    for (int i = 0; i < s.dim(); ++i) v += u.c[i] * s.basis_value(i, x);
    acc += v * v;
  }
  acc *= 2 * beta / N;
  CHECK(inner_product(u, u) == doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("Parseval consistency of quadrature inner product") {
  auto s = build_space(SpaceKind::Periodic, 2.5, 9);
  auto u = random_field(s, 5);
  Vec nodes = node_values(u);
  double quad = nodes.squaredNorm() * s.quad_weight();
  CHECK(quad == doctest::Approx(inner_product(u, u)).epsilon(1e-12));
}

TEST_CASE("projection: idempotence, sawtooth coefficients, Galerkin orthogonality") {
  const double beta = 2.0;
  auto s = build_space(SpaceKind::Periodic, beta, 8);

  auto w = random_field(s, 11);
  auto back = project(s, [&](double x) {
    double v = 0.0;
    for (int i = 0; i < s.dim(); ++i) v += w.c[i] * s.basis_value(i, x);
    return v;
  });
  CHECK((back.c - w.c).lpNorm<Eigen::Infinity>() < 1e-12);

  // f(x) = x: sine coefficients 2*beta*(-1)^{k+1}/(k pi), cos/constant zero
  auto p = project(s, [](double x) { return x; });
  CHECK(std::abs(p.c[0]) < 1e-12);
  for (int k = 1; k <= 8; ++k) {
    const double expect = 2.0 * beta * ((k % 2 == 1) ? 1.0 : -1.0) / (k * kPi);
    CHECK(p.c[2 * k - 1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.c[2 * k] == doctest::Approx(expect).epsilon(1e-10));
  }

  // residual f - Pf orthogonal to every basis function
  for (int i = 0; i < s.dim(); ++i) {
    RealField phi(s);
    phi.c[i] = 1.0;
    const double lhs = pair_dense(phi, [](double x) { return x; });
    const double rhs = inner_product(phi, p);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("derivative identities") {
  const double beta = 1.7;
  auto s = build_space(SpaceKind::Periodic, beta, 7);

  RealField one(s);
  one.c[0] = 1.0;
  CHECK(derivative(one).c.norm() == 0.0);

  RealField sn(s);
  sn.c[2] = 1.0;
  auto d = derivative(sn);
  RealField expect(s);
  expect.c[1] = kPi / beta;
  CHECK((d.c - expect.c).norm() < 1e-14);

  auto u = random_field(s, 21), v = random_field(s, 22);
  const double skew = inner_product(derivative(u), v) + inner_product(u, derivative(v));
  CHECK(std::abs(skew) < 1e-10 * norm(u) * norm(v));

  // exhaustive skew-adjointness over basis pairs
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      RealField a(s), b(s);
      a.c[i] = 1.0;
      b.c[j] = 1.0;
      CHECK(std::abs(inner_product(derivative(a), b) + inner_product(a, derivative(b))) <
            1e-12);
    }

  auto sd = build_space(SpaceKind::Dirichlet, 1.0, 3);
  RealField ud(sd);
  ud.c[0] = 1.0;
  CHECK_THROWS_AS(derivative(ud), std::invalid_argument);
}

TEST_CASE("laplacian identities") {
  const double beta = 2.2;
  auto s = build_space(SpaceKind::Periodic, beta, 6);
  RealField one(s);
  one.c[0] = 1.0;
  CHECK(laplacian(one).c.norm() == 0.0);

  RealField sn(s);
  sn.c[2] = 1.0;
  auto l = laplacian(sn);
  CHECK(l.c[2] == doctest::Approx(-(kPi / beta) * (kPi / beta)).epsilon(1e-14));

  auto u = random_field(s, 31), v = random_field(s, 32);
  CHECK(inner_product(laplacian(u), v) ==
        doctest::Approx(inner_product(u, laplacian(v))).epsilon(1e-12));
}

TEST_CASE("multiply_project") {
  const double beta = kPi;
  auto s = build_space(SpaceKind::Periodic, beta, 4);

  RealField one(s);
  one.c[0] = 1.0;
  auto v = random_field(s, 41);
  auto pv = multiply_project(one, v);
  CHECK((pv.c - v.c).lpNorm<Eigen::Infinity>() < 1e-12);

  RealField sn(s);
  sn.c[2] = 1.0;
  auto sq = multiply_project(sn, sn);  // sin^2 = 1/2 - 1/2 cos(2 pi x/beta)
  RealField expect(s);
  expect.c[0] = 0.5;
  expect.c[3] = -0.5;
  CHECK((sq.c - expect.c).lpNorm<Eigen::Infinity>() < 1e-12);

  // defining property: <P(uv), w> = quadrature integral of u v w
  auto u = random_field(s, 42);
  auto uv = multiply_project(u, v);
  Vec un = node_values(u), vn = node_values(v);
  for (int i = 0; i < s.dim(); ++i) {
    RealField w(s);
    w.c[i] = 1.0;
    Vec wn = node_values(w);
    const double direct = (un.array() * vn.array() * wn.array()).sum() * s.quad_weight();
    CHECK(std::abs(inner_product(uv, w) - direct) < 1e-10);
  }
}

TEST_CASE("quadrature exactness for basis triples (periodic)") {
  auto s = build_space(SpaceKind::Periodic, 1.3, 5);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, s.dim() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int i = pick(rng), j = pick(rng), k = pick(rng);
    CHECK(std::abs(quad_triple_product(s, i, j, k) -
                   analytic_triple_product_integral(s, i, j, k)) < 1e-10);
  }
}

TEST_CASE("Dirichlet quadrature exact for the even pairings used downstream") {
  // products of four sines expand into cosines; the composite midpoint rule
  // integrates those exactly below the aliasing threshold
  auto s = build_space(SpaceKind::Dirichlet, 1.4, 5);
  const Vec& x = s.quad_nodes();
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> pick(0, s.dim() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    double quad = 0.0;
    for (int q = 0; q < s.num_nodes(); ++q)
      quad += s.basis_value(a, x[q]) * s.basis_value(b, x[q]) * s.basis_value(c, x[q]) *
              s.basis_value(d, x[q]);
    quad *= s.quad_weight();
    // analytic: product of four sines, expand over signed frequencies
    cd acc(0, 0);
    int fr[4] = {a + 1, b + 1, c + 1, d + 1};
    for (int sa = -1; sa <= 1; sa += 2)
      for (int sb = -1; sb <= 1; sb += 2)
        for (int sc = -1; sc <= 1; sc += 2)
          for (int sd_ = -1; sd_ <= 1; sd_ += 2) {
            const int m = sa * fr[0] + sb * fr[1] + sc * fr[2] + sd_ * fr[3];
            const cd coef = cd(0, -0.5 * sa) * cd(0, -0.5 * sb) * cd(0, -0.5 * sc) *
                            cd(0, -0.5 * sd_);
            if (m == 0)
              acc += coef * s.beta();
            else {
              const cd im(0, m * kPi / s.beta());
              acc += coef * (std::exp(im * s.beta()) - 1.0) / im;
            }
          }
    CHECK(std::abs(quad - acc.real()) < 1e-10);
  }
}

TEST_CASE("evaluate") {
  const double beta = 2.0;
  auto s = build_space(SpaceKind::Periodic, beta, 3);
  RealField one(s);
  one.c[0] = 1.0;
  Vec pts(3);
  pts << -1.0, 0.3, 1.9;
  CHECK((evaluate(one, pts).array() - 1.0).abs().maxCoeff() < 1e-14);

  RealField sn(s);
  sn.c[2] = 1.0;
  Vec half(1);
  half << beta / 2.0;
  CHECK(evaluate(sn, half)[0] == doctest::Approx(1.0).epsilon(1e-14));

  auto u = random_field(s, 55);
  Vec ends(2);
  ends << -beta, beta;
  Vec ev = evaluate(u, ends);
  CHECK(std::abs(ev[0] - ev[1]) < 1e-12);

  Vec outside(1);
  outside << beta + 0.1;
  CHECK_THROWS_AS(evaluate(u, outside), std::domain_error);
}

TEST_CASE("complex flavor: Hermitian inner product and transforms") {
  auto s = build_space(SpaceKind::Periodic, kPi, 6);
  std::mt19937 rng(66);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexField u(s), v(s);
  for (int i = 0; i < s.dim(); ++i) {
    u.c[i] = cd(n(rng), n(rng));
    v.c[i] = cd(n(rng), n(rng));
  }
  const cd a = inner_product(u, v);
  const cd b = inner_product(v, u);
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
  CHECK(inner_product(u, u).real() >= 0.0);
  CHECK(std::abs(inner_product(u, u).imag()) < 1e-12);

  // synth/analyze round trip = identity on the space
  auto back = project_nodes(s, node_values(u));
  CHECK((back.c - u.c).norm() < 1e-12);

  // quadrature Parseval
  CVec nodes = node_values(u);
  const double quad = nodes.squaredNorm() * s.quad_weight();
  CHECK(quad == doctest::Approx(inner_product(u, u).real()).epsilon(1e-12));
}

TEST_CASE("projection round trip through node grid") {
  auto s = build_space(SpaceKind::Periodic, 1.0, 12);
  auto u = random_field(s, 77);
  auto again = project_nodes(s, node_values(u));
  CHECK((again.c - u.c).lpNorm<Eigen::Infinity>() < 1e-12);

  auto sd = build_space(SpaceKind::Dirichlet, 2.0, 9);
  auto ud = random_field(sd, 78);
  auto againd = project_nodes(sd, node_values(ud));
  CHECK((againd.c - ud.c).lpNorm<Eigen::Infinity>() < 1e-12);
}
