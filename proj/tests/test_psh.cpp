#include <doctest.h>

#include <cmath>

#include "scv/psh.hpp"

using namespace scv;

namespace {
GridPtr disc_grid(int m) { return build_grid(DomainSpec::disc({0, 0}, 1.0), {m}); }
const std::vector<Complex> kProbes = {Complex(0, 0), Complex(0.25, 0.1), Complex(-0.3, 0.2)};
const std::vector<double> kRadii = {0.05, 0.15, 0.3};
} // namespace

TEST_CASE("circle means of closed-form functions") {
  CHECK(circle_mean([](Complex z) { return z.real(); }, Complex(0.2, -0.4), 0.3) ==
        doctest::Approx(0.2).epsilon(1e-10));
  CHECK(circle_mean([](Complex z) { return std::norm(z); }, Complex(0, 0), 0.5) ==
        doctest::Approx(0.25).epsilon(1e-10));
  // log|z| is harmonic away from its pole
  CHECK(circle_mean([](Complex z) { return std::log(std::abs(z)); }, Complex(0.3, 0), 0.1) ==
        doctest::Approx(std::log(0.3)).epsilon(1e-9));
}

TEST_CASE("submean verdicts") {
  CHECK(submean_test([](Complex z) { return std::norm(z); }, kProbes, kRadii).pass);
  const Certificate bad =
      submean_test([](Complex z) { return -std::norm(z); }, kProbes, kRadii);
  CHECK(!bad.pass);
  CHECK(!bad.witness.empty());
  // log|z-a| passes even when circles enclose the pole
  CHECK(submean_test(
            [](Complex z) { return std::max(std::log(std::abs(z - Complex(0.2, 0))), kLogFloor); },
            kProbes, kRadii)
            .pass);
  CHECK(submean_test([](Complex z) { return std::abs(std::exp(z)); }, kProbes, kRadii).pass);
}

TEST_CASE("radial kernel moments") {
  const RadialKernel k(0.25);
  CHECK(k.delta() == 0.25);
  // midpoint cross-check of the normalization integral
  const int n = 20000;
  double mid = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    mid += k.profile(t) * t;
  }
  mid *= 2.0 * kPi / n;
  CHECK(std::abs(mid - k.normalization()) / k.normalization() < 1e-6);
  CHECK(k.second_moment() > 0.0);
  CHECK(k.second_moment() < 1.0);
}

TEST_CASE("mollification reproduces harmonic samples") {
  const auto g = disc_grid(96);
  const RadialKernel k(0.2);
  const ScalarField u =
      sample([](std::span<const Complex> z) { return Complex(z[0].real(), 0); }, g);
  const MaskedField m = mollify(u, k);
  std::vector<Complex> zv(1);
  int64_t produced = 0;
  for (int64_t i = 0; i < g->node_count(); ++i) {
    if (!m.valid[size_t(i)]) continue;
    ++produced;
    g->node_coords(i, zv);
    CHECK(std::abs(m.values[size_t(i)].real() - zv[0].real()) < 1e-8);
  }
  CHECK(produced > 0);
}

TEST_CASE("mollification shifts |z|^2 by the kernel second moment") {
  const auto g = disc_grid(96);
  const double delta = 0.2;
  const RadialKernel k(delta);
  const ScalarField u =
      sample([](std::span<const Complex> z) { return Complex(std::norm(z[0]), 0); }, g);
  const MaskedField m = mollify(u, k);
  const double pred = delta * delta * k.second_moment();
  std::vector<Complex> zv(1);
  for (int64_t i = 0; i < g->node_count(); ++i) {
    if (!m.valid[size_t(i)]) continue;
    g->node_coords(i, zv);
    const double shift = m.values[size_t(i)].real() - std::norm(zv[0]);
    CHECK(std::abs(shift - pred) / pred < 0.01);
  }
}

TEST_CASE("mollification of the subharmonic log stays above the samples") {
  const auto g = disc_grid(96);
  const RadialKernel k(0.15);
  const ScalarField u = sample(
      [](std::span<const Complex> z) {
        return Complex(std::max(std::log(std::norm(z[0]) + 0.01), kLogFloor), 0);
      },
      g);
  const MaskedField m = mollify(u, k);
  for (int64_t i = 0; i < g->node_count(); ++i)
    if (m.valid[size_t(i)])
      CHECK(m.values[size_t(i)].real() >= u[i].real() - 1e-12);
}

TEST_CASE("mollification scale ordering and commutation") {
  const auto g = disc_grid(96);
  const ScalarField u = sample(
      [](std::span<const Complex> z) {
        return Complex(std::max(std::log(std::abs(z[0] - Complex(0.1, 0))), kLogFloor), 0);
      },
      g);
  CHECK(mollify_monotone_check(u, 0.2, 0.1).pass);

  const ScalarField bowl =
      sample([](std::span<const Complex> z) { return Complex(-std::norm(z[0]), 0); }, g);
  CHECK(!mollify_monotone_check(bowl, 0.2, 0.1).pass);

  const RadialKernel kd(0.15), ke(0.1);
  const MaskedField a = mollify(mollify(u, kd), ke);
  const MaskedField b = mollify(mollify(u, ke), kd);
  for (int64_t i = 0; i < g->node_count(); ++i)
    if (a.valid[size_t(i)] && b.valid[size_t(i)])
      CHECK(std::abs(a.values[size_t(i)] - b.values[size_t(i)]) < 1e-9);

  CHECK_THROWS(mollify(u, RadialKernel(5.0))); // scale exceeds the grid
}

TEST_CASE("convex increasing composition preserves subharmonicity") {
  const RealFn1 u = [](Complex z) {
    return std::max(std::log(std::abs(z - Complex(0.3, 0))), kLogFloor);
  };
  std::vector<Complex> probes = kProbes;
  probes.push_back(Complex(0.31, 0.01)); // near the pole, exp recovers |f|
  CHECK(convex_compose_check(parse_expr("exp(x1)"), u, probes, kRadii).pass);
  CHECK(convex_compose_check(parse_expr("x1"), u, kProbes, kRadii).pass);
  CHECK_THROWS(convex_compose_check(parse_expr("-x1"), u, kProbes, kRadii));
}

TEST_CASE("levi-based psh verdicts") {
  std::vector<CVector> probes;
  for (const Complex p : kProbes) probes.push_back({p, Complex(0.1, -0.1)});
  {
    const Certificate c = psh_test(parse_expr("z_abs2_1 + z_abs2_2"), probes);
    CHECK(c.pass);
    CHECK(c.params.at("strict").get<bool>());
  }
  {
    const Certificate c = psh_test(parse_expr("x1"), probes);
    CHECK(c.pass);
    CHECK(!c.params.at("strict").get<bool>());
  }
  CHECK(!psh_test(parse_expr("-z_abs2_1 - z_abs2_2"), probes).pass);
}

TEST_CASE("distance fields") {
  const DomainSpec disc = DomainSpec::disc({0, 0}, 1.0);
  const auto g = disc_grid(65); // odd: nodes at 0 and at 0.5 exactly
  const ScalarField nld = neg_log_dist_field(disc, g);
  const ScalarField ex = exhaustion_field(disc, g);
  std::vector<Complex> zv(1);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    g->node_coords(k, zv);
    if (std::abs(zv[0]) < 1e-14) {
      CHECK(std::abs(nld[k].real()) < 1e-12);
      CHECK(std::abs(ex[k].real()) < 1e-12);
    }
    if (std::abs(zv[0] - Complex(0.5, 0)) < 1e-14)
      CHECK(nld[k].real() == doctest::Approx(-std::log(0.5)));
  }

  const DomainSpec pd = DomainSpec::polydisc({{0, 0}, {0, 0}}, {1.0, 1.0});
  const Complex p[2] = {Complex(0.5, 0), Complex(0, 0)};
  CHECK(-std::log(boundary_distance(pd, p)) == doctest::Approx(-std::log(0.5)));
}
