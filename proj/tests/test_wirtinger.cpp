#include <doctest.h>

#include <cmath>

#include "scv/wirtinger.hpp"

using namespace scv;

namespace {

GridPtr disc_grid(int m) { return build_grid(DomainSpec::disc({0, 0}, 1.0), {m}); }

double interior_sup_error(const ScalarField& got,
                          const std::function<Complex(Complex)>& want, int margin = 3) {
  const Grid& g = *got.grid;
  const auto interior = interior_mask(g, margin);
  double worst = 0.0;
  std::vector<Complex> z(1);
  for (int64_t k = 0; k < g.node_count(); ++k) {
    if (!interior[size_t(g.full_of_compact(k))]) continue;
    g.node_coords(k, z);
    worst = std::max(worst, std::abs(got[k] - want(z[0])));
  }
  return worst;
}

} // namespace

TEST_CASE("wirtinger derivatives on exact linear fields") {
  const auto g = disc_grid(48);
  const ScalarField zf = sample([](std::span<const Complex> z) { return z[0]; }, g);
  const ScalarField zb =
      sample([](std::span<const Complex> z) { return std::conj(z[0]); }, g);

  CHECK(interior_sup_error(d_dz(zf, 0), [](Complex) { return Complex(1, 0); }) < 1e-12);
  CHECK(interior_sup_error(d_dz(zb, 0), [](Complex) { return Complex(0, 0); }) < 1e-12);
  CHECK(interior_sup_error(d_dzbar(zb, 0), [](Complex) { return Complex(1, 0); }) < 1e-12);
  CHECK(interior_sup_error(d_dzbar(zf, 0), [](Complex) { return Complex(0, 0); }) < 1e-12);
}

TEST_CASE("second order accuracy against analytic derivatives") {
  const auto g = disc_grid(64);
  const ScalarField zsq = sample([](std::span<const Complex> z) { return z[0] * z[0]; }, g);
  const double h = g->spacing(0);
  CHECK(interior_sup_error(d_dz(zsq, 0), [](Complex z) { return 2.0 * z; }) < 10.0 * h * h);

  const ScalarField zzb =
      sample([](std::span<const Complex> z) { return z[0] * std::conj(z[0]); }, g);
  CHECK(interior_sup_error(d_dzbar(zzb, 0), [](Complex z) { return z; }) < 10.0 * h * h);
}

TEST_CASE("derivative error drops by at least 3x when h halves") {
  double errs[2];
  int i = 0;
  for (const int m : {48, 96}) {
    const auto g = disc_grid(m);
    const ScalarField ez = sample([](std::span<const Complex> z) { return std::exp(z[0]); }, g);
    errs[i++] = interior_sup_error(d_dz(ez, 0), [](Complex z) { return std::exp(z); });
  }
  CHECK(errs[0] / errs[1] >= 3.0);
}

TEST_CASE("laplacian examples") {
  const auto g = disc_grid(64);
  const ScalarField zzb =
      sample([](std::span<const Complex> z) { return Complex(std::norm(z[0]), 0); }, g);
  CHECK(interior_sup_error(laplacian(zzb, 0), [](Complex) { return Complex(4, 0); }) < 1e-9);

  const ScalarField re =
      sample([](std::span<const Complex> z) { return Complex(z[0].real(), 0); }, g);
  CHECK(interior_sup_error(laplacian(re, 0), [](Complex) { return Complex(0, 0); }) < 1e-10);
}

TEST_CASE("laplacian of the regularized log matches the closed form") {
  const double s2 = 0.01;
  const auto g = disc_grid(256);
  const ScalarField f = sample(
      [&](std::span<const Complex> z) { return Complex(std::log(std::norm(z[0]) + s2), 0); },
      g);
  const ScalarField lap = laplacian(f, 0);
  const auto interior = interior_mask(*g, 3);
  std::vector<Complex> z(1);
  double worst_rel = 0.0;
  for (int64_t k = 0; k < g->node_count(); ++k) {
    if (!interior[size_t(g->full_of_compact(k))]) continue;
    g->node_coords(k, z);
    const double q = std::norm(z[0]) + s2;
    const double want = 4.0 * s2 / (q * q);
    worst_rel = std::max(worst_rel, std::abs(lap[k].real() - want) / want);
  }
  CHECK(worst_rel < 0.02);
}

TEST_CASE("dbar squared vanishes to rounding") {
  const auto g = build_grid(DomainSpec::polydisc({{0, 0}, {0, 0}}, {1.0, 1.0}), {24, 24});
  const ScalarField u = sample(
      [](std::span<const Complex> z) {
        return z[0] * z[0] * std::conj(z[1]) + std::exp(z[0]) * std::conj(z[0]);
      },
      g);
  const FormField ddu = dbar_form(dbar_form(FormField::scalar(u)));
  const auto interior = interior_mask(*g, 3);
  double worst = 0.0;
  for (const auto& [key, field] : ddu.coeffs)
    for (int64_t k = 0; k < g->node_count(); ++k)
      if (interior[size_t(g->full_of_compact(k))])
        worst = std::max(worst, std::abs(field[k]));
  CHECK(worst < 1e-10);
}

TEST_CASE("conjugation identity is exact") {
  const auto g = disc_grid(32);
  const ScalarField f = sample(
      [](std::span<const Complex> z) { return std::exp(z[0]) + 2.0 * std::conj(z[0]); }, g);
  ScalarField fbar = f;
  for (auto& v : fbar.values) v = std::conj(v);
  const ScalarField lhs = d_dz(fbar, 0);
  const ScalarField rhs = d_dzbar(f, 0);
  double worst = 0.0;
  for (int64_t k = 0; k < g->node_count(); ++k)
    worst = std::max(worst, std::abs(lhs[k] - std::conj(rhs[k])));
  CHECK(worst == 0.0);
}

TEST_CASE("multiindex signs") {
  const int a12[] = {1, 2}, a21[] = {2, 1}, a11[] = {1, 1};
  CHECK(multiindex_sign(a12, a12) == 1);
  CHECK(multiindex_sign(a21, a12) == -1);
  CHECK(multiindex_sign(a11, a11) == 0);
  const int b[] = {1, 3};
  CHECK(multiindex_sign(a12, b) == 0);
  const int c123[] = {0, 1, 2}, c231[] = {1, 2, 0};
  CHECK(multiindex_sign(c231, c123) == 1); // cyclic, even
}

TEST_CASE("dbar of a (0,1) form picks up the reorder sign") {
  const auto g = build_grid(DomainSpec::polydisc({{0, 0}, {0, 0}}, {1.0, 1.0}), {20, 20});
  // f = conj(z2) dzbar_1
  std::vector<ScalarField> comp;
  comp.push_back(sample([](std::span<const Complex> z) { return std::conj(z[1]); }, g));
  comp.push_back(zero_field(g));
  const FormField f = FormField::zero_one(std::move(comp));
  const FormField df = dbar_form(f);
  const ScalarField* c = df.coeff({}, {0, 1});
  REQUIRE(c != nullptr);
  const auto interior = interior_mask(*g, 3);
  for (int64_t k = 0; k < g->node_count(); ++k)
    if (interior[size_t(g->full_of_compact(k))])
      CHECK(std::abs((*c)[k] - Complex(-1, 0)) < 1e-10);
}

TEST_CASE("dbar of scalars") {
  const auto g = build_grid(DomainSpec::polydisc({{0, 0}, {0, 0}}, {1.0, 1.0}), {20, 20});
  const ScalarField zb1 = sample([](std::span<const Complex> z) { return std::conj(z[0]); }, g);
  const FormField d1 = dbar_form(FormField::scalar(zb1));
  const auto interior = interior_mask(*g, 3);
  const ScalarField* c0 = d1.coeff({}, {0});
  const ScalarField* c1 = d1.coeff({}, {1});
  REQUIRE(c0 != nullptr);
  for (int64_t k = 0; k < g->node_count(); ++k) {
    if (!interior[size_t(g->full_of_compact(k))]) continue;
    CHECK(std::abs((*c0)[k] - Complex(1, 0)) < 1e-10);
    if (c1 != nullptr) CHECK(std::abs((*c1)[k]) < 1e-10);
  }

  const ScalarField holo = sample([](std::span<const Complex> z) { return z[0] * z[1]; }, g);
  const FormField dh = dbar_form(FormField::scalar(holo));
  for (const auto& [key, field] : dh.coeffs)
    for (int64_t k = 0; k < g->node_count(); ++k)
      if (interior[size_t(g->full_of_compact(k))]) CHECK(std::abs(field[k]) < 1e-10);
}

TEST_CASE("degree overflow is rejected") {
  const auto g = disc_grid(16);
  const FormField f = FormField::zero_one(g, {Complex(1, 0)});
  CHECK_THROWS(dbar_form(f)); // q = n = 1 already
}

TEST_CASE("cr residual classifies holomorphy") {
  const auto g = disc_grid(64);
  const double h = g->spacing(0);
  const ScalarField ez = sample([](std::span<const Complex> z) { return std::exp(z[0]); }, g);
  CHECK(cr_residual(ez) <= 10.0 * h * h);
  const ScalarField zb = sample([](std::span<const Complex> z) { return std::conj(z[0]); }, g);
  CHECK(cr_residual(zb) == doctest::Approx(1.0).epsilon(1e-8));
  const ScalarField c = sample([](std::span<const Complex>) { return Complex(2, 3); }, g);
  CHECK(cr_residual(c) == 0.0);
}

TEST_CASE("levi form of the squared norm is the identity") {
  const Expr w = parse_expr("z_abs2_1 + z_abs2_2");
  for (const Complex base : {Complex(0, 0), Complex(0.3, -0.2)}) {
    const Complex pt[2] = {base, Complex(0.1, 0.1)};
    const LeviForm lf = levi_form(w, pt);
    CHECK(lf.matrix.hermitian_deviation() <= 1e-10);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(lf.matrix(i, j) - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-8);
  }
}

TEST_CASE("levi form of a pluriharmonic weight vanishes") {
  const Expr w = parse_expr("x1");
  const Complex pt[2] = {Complex(0.2, 0.1), Complex(0, 0)};
  const LeviForm lf = levi_form(w, pt);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(lf.matrix(i, j)) < 1e-8);
}

TEST_CASE("levi form of the regularized log weight") {
  const Expr w = parse_expr("log(z_abs2_1 + 0.01)");
  const Complex pt[1] = {Complex(0.1, 0)};
  const LeviForm lf = levi_form(w, pt);
  // s^2/(|z|^2+s^2)^2 with s^2 = 0.01 at |z| = 0.1
  CHECK(std::abs(lf.matrix(0, 0).real() - 25.0) < 0.01);
}

TEST_CASE("weighted norms and pairings") {
  const auto g = disc_grid(64);
  const Expr zero = parse_expr("0*x1");
  const FormField one = FormField::scalar(
      sample([](std::span<const Complex>) { return Complex(1, 0); }, g));
  CHECK(weighted_lp_norm(one, zero, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(0.02));

  const FormField zf = FormField::scalar(zero_field(g));
  CHECK(weighted_lp_norm(zf, zero, 2.0) == 0.0);

  // two-component (0,1) form: |f|^2 sums over components
  const FormField f2 = FormField::zero_one(g, {Complex(1, 0)});
  const double n2 = weighted_lp_norm(f2, zero, 2.0);
  const double area = double(g->node_count()) * g->cell_weight();
  CHECK(n2 == doctest::Approx(std::sqrt(area)).epsilon(1e-12));

  // <f,f> = ||f||_2^2
  const FormField f = FormField::scalar(
      sample([](std::span<const Complex> z) { return z[0] + Complex(0, 0.5); }, g));
  const Complex ff = pairing(f, f, zero);
  const double nf = weighted_lp_norm(f, zero, 2.0);
  CHECK(std::abs(ff.real() - nf * nf) < 1e-10);
  CHECK(std::abs(ff.imag()) < 1e-14);
  CHECK(std::abs(pairing(f, zf, zero)) == 0.0);

  // conjugate symmetry and the Hoelder bound
  const FormField gfield = FormField::scalar(
      sample([](std::span<const Complex> z) { return std::exp(z[0]) * std::conj(z[0]); }, g));
  const Complex fg = pairing(f, gfield, zero);
  const Complex gf = pairing(gfield, f, zero);
  CHECK(std::abs(fg - std::conj(gf)) < 1e-12);
  const Expr w = parse_expr("z_abs2_1");
  const Complex fg_w = pairing(f, gfield, w);
  CHECK(std::abs(fg_w) <=
        weighted_lp_norm(f, w, 2.0) * weighted_lp_norm(gfield, w, 2.0) * (1 + 1e-12));
  CHECK(std::abs(fg_w) <=
        weighted_lp_norm(f, w, 4.0) * weighted_lp_norm(gfield, w, 4.0 / 3.0) * (1 + 1e-12));
}
