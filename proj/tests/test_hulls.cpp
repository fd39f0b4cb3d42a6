#include <doctest.h>

#include <cmath>

#include "scv/hulls.hpp"

using namespace scv;

namespace {

CompactSample circle_sample(double radius, int count = 256) {
  CompactSample s;
  s.label = "circle";
  for (int k = 0; k < count; ++k) {
    const double th = 2.0 * kPi * k / count;
    s.points.push_back({radius * Complex(std::cos(th), std::sin(th))});
  }
  return s;
}

} // namespace

TEST_CASE("hull of the unit circle inside a larger ambient disc") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.5), {96});
  const HullResult hull = poly_hull_membership(circle_sample(1.0), g, 8, 50, 42);
  std::vector<Complex> z(1);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    g->node_coords(k, z);
    const double r = std::abs(z[0]);
    if (r >= 1.02) CHECK(!hull.retained[size_t(k)]); // rejected by z^8
    if (r <= 0.9) CHECK(hull.retained[size_t(k)]);   // maximum principle keeps the inside
  }
}

TEST_CASE("hull distance is preserved for the half-radius circle") {
  const DomainSpec disc = DomainSpec::disc({0, 0}, 1.0);
  const auto g = build_grid(disc, {96});
  const CompactSample K = circle_sample(0.5);
  const HullResult hull = poly_hull_membership(K, g, 8, 200, 7);
  const Certificate c = hull_distance_check(K, hull, g, disc);
  CHECK(c.pass);
  const double dK = c.params.at("d_K").get<double>();
  const double dH = c.params.at("d_hull").get<double>();
  CHECK(dK == doctest::Approx(0.5));
  CHECK(std::abs(dK - dH) <= 2.0 * g->max_spacing());
}

TEST_CASE("single point pins to its own cell") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.0), {97}); // odd: node at 0.25? use exact node
  CompactSample one;
  one.label = "point";
  // place the point exactly on a grid node so the vanishing polynomial keeps it
  const double h = g->spacing(0);
  const Complex p = Complex(-1.0 + 48 * h, -1.0 + 48 * h); // center node (0,0)
  one.points.push_back({p});
  const HullResult hull = poly_hull_membership(one, g, 4, 50, 3);
  std::vector<Complex> z(1);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    g->node_coords(k, z);
    if (hull.retained[size_t(k)]) CHECK(std::abs(z[0] - p) < 1.5 * h);
  }
}

TEST_CASE("two points pin to their cells through the vanishing product") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.0), {97});
  const double h = g->spacing(0);
  CompactSample two;
  two.label = "pair";
  two.points.push_back({Complex(-1.0 + 48 * h, -1.0 + 48 * h)});
  two.points.push_back({Complex(-1.0 + 64 * h, -1.0 + 48 * h)});
  const HullResult hull = poly_hull_membership(two, g, 4, 200, 5);
  std::vector<Complex> z(1);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    if (!hull.retained[size_t(k)]) continue;
    g->node_coords(k, z);
    const double d = std::min(std::abs(z[0] - two.points[0][0]), std::abs(z[0] - two.points[1][0]));
    CHECK(d < 1.5 * h);
  }
}

TEST_CASE("raising the degree never grows the retained set") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.0), {64});
  const CompactSample K = circle_sample(0.5, 128);
  const HullResult lo = poly_hull_membership(K, g, 3, 40, 11);
  const HullResult hi = poly_hull_membership(K, g, 8, 40, 11);
  for (size_t i = 0; i < lo.retained.size(); ++i)
    if (hi.retained[i]) CHECK(lo.retained[i]);
}

TEST_CASE("psh hull with moduli of polynomials sits inside the polynomial hull") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.0), {64});
  const CompactSample K = circle_sample(0.5, 128);
  const HullResult poly = poly_hull_membership(K, g, 8, 100, 13);
  std::vector<Expr> family;
  family.push_back(parse_expr("z_abs2_1"));
  family.push_back(parse_expr("(z_abs2_1)^2"));
  family.push_back(parse_expr("(z_abs2_1)^3"));
  const std::vector<CVector> probes = {{Complex(0.2, 0.1)}, {Complex(-0.1, -0.3)}};
  const HullResult psh = psh_hull_membership(K, g, family, probes);
  for (size_t i = 0; i < psh.retained.size(); ++i)
    if (psh.retained[i]) CHECK(poly.retained[i]);

  // family augmented with a pluriharmonic member keeps the same disc
  std::vector<Expr> fam2 = family;
  fam2.push_back(parse_expr("x1"));
  const HullResult psh2 = psh_hull_membership(K, g, fam2, probes);
  std::vector<Complex> z(1);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    g->node_coords(k, z);
    if (std::abs(z[0]) <= 0.45) CHECK(psh2.retained[size_t(k)]);
  }

  // an empty family retains everything
  const HullResult vac = psh_hull_membership(K, g, std::vector<Expr>{}, probes);
  for (const auto r : vac.retained) CHECK(r);

  // non-psh member is rejected
  std::vector<Expr> badfam;
  badfam.push_back(parse_expr("-z_abs2_1"));
  CHECK_THROWS(psh_hull_membership(K, g, badfam, probes));
}
