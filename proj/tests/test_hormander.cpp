#include <doctest.h>

#include <cmath>

#include "scv/hormander.hpp"

using namespace scv;

TEST_CASE("chen weights at the origin") {
  const ChenWeights w = chen_weights(0.1, Complex(0, 0));
  CHECK(w.rho == doctest::Approx(std::log(0.01)));
  CHECK(w.eta == doctest::Approx(-std::log(0.01) + std::log(-std::log(0.01))));
  CHECK(w.psi == doctest::Approx(-1.8137).epsilon(1e-4));
}

TEST_CASE("chen weights respect their validity domain") {
  CHECK_THROWS(chen_weights(0.1, Complex(0.6, 0.0))); // 0.36 + 0.01 just under 1/e? 0.37 > 0.3679
  CHECK_THROWS(chen_weights(0.7, Complex(0, 0)));
  CHECK(chen_admissible(0.1, Complex(0.5, 0)));
  CHECK(!chen_admissible(0.1, Complex(0.62, 0)));
}

TEST_CASE("order chain holds across the admissible disc") {
  for (const double s : {0.1, 0.01, 0.001}) {
    for (const Complex z : chen_sample_points(s, 500)) {
      const ChenWeights w = chen_weights(s, z);
      CHECK(1.0 < -w.rho);
      CHECK(-w.rho < w.eta);
      CHECK(w.eta < -2.0 * w.rho);
    }
  }
}

TEST_CASE("closed-form derivative spot values") {
  const ChenDerivatives d = chen_derivatives(0.1, Complex(0.1, 0));
  CHECK(std::abs(d.rho_zbar - Complex(5, 0)) < 1e-12);  // z/(|z|^2+s^2) = 0.1/0.02
  CHECK(d.rho_zzbar == doctest::Approx(25.0));          // s^2/(0.02)^2
}

TEST_CASE("the nine identities certify on a small cloud") {
  for (const double s : {0.1, 0.01, 0.001}) {
    const CVector pts = chen_sample_points(s, 300);
    const auto certs = weight_identities_check(s, pts, 0.0);
    REQUIRE(certs.size() == 9);
    for (const auto& c : certs) {
      INFO(c.check, " s=", s, " margin=", c.margin);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("chen constant: dual quadrature and rescaling") {
  const ChenConstant C = chen_constant_C();
  CHECK(C.dual_quadrature.pass);
  CHECK(C.rescale_invariance.pass);
  // frozen from an independent Gauss-Legendre evaluation of the radial form
  CHECK(C.value == doctest::Approx(55.07987119930191).epsilon(1e-7));

  ChiProfile increasing;
  increasing.value = [](double t) { return t < 0.5 ? 1.0 : (t >= 1.0 ? 0.0 : 2.0 * t); };
  increasing.derivative = [](double) { return 2.0; };
  CHECK_THROWS(chen_constant_C(increasing));
}

TEST_CASE("sixth bound sweep") {
  const Certificate c = sixth_bound_check();
  CHECK(c.pass);
  CHECK(c.params.at("infimum_at_left_end").get<bool>());
  // spot values
  const auto g = [](double x) { return x * x / (x * x + 4 * x + 1); };
  CHECK(g(1.0) == doctest::Approx(1.0 / 6.0));
  CHECK(g(2.0) == doctest::Approx(4.0 / 13.0));
  CHECK(g(1e9) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("r0 optimization matches the closed-form root") {
  const R0Result r = optimize_r0();
  const double root = (-8.0 + std::sqrt(64.0 + 8.0 / 3.0)) / 8.0;
  CHECK(r.r0_closed == doctest::Approx(root).epsilon(1e-14));
  CHECK(std::abs(r.r0 - r.r0_closed) <= 1e-8);
  CHECK(r.c_prime == doctest::Approx(587.93876913).epsilon(1e-6));
  CHECK(r.stationarity <= 1e-6);
}

TEST_CASE("lp iteration closed form and limits") {
  {
    const auto seq = lp_iteration(1.0, 1.0, 1.0, 10);
    for (const double a : seq) CHECK(a == 1.0);
  }
  {
    const auto seq = lp_iteration(10.0, 1.0, 1.0, 25);
    CHECK(seq[1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
    CHECK(seq[2] == doctest::Approx(std::pow(10.0, 0.25)).epsilon(1e-14));
    CHECK(std::abs(seq[25] - 1.0) <= 1e-6);
    for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i + 1] <= seq[i]);
  }
  {
    const auto seq = lp_iteration(0.1, 1.0, 1.0, 25);
    for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i + 1] >= seq[i]);
    CHECK(std::abs(seq[25] - 1.0) <= 1e-6);
  }
  CHECK_THROWS(lp_iteration(1.0, 1.0, 2.5, 5));
}

TEST_CASE("breakdown exponents") {
  const double deltas[] = {1e-2};
  {
    const Certificate c = lp_breakdown_exponents(1, 2.0, 2.0, deltas);
    CHECK(c.pass);
    CHECK(c.lhs == doctest::Approx(1.0)); // (q+2)/(2q) = 1
    CHECK(c.rhs == doctest::Approx(1.0)); // 2/p = 1
  }
  {
    const Certificate c = lp_breakdown_exponents(1, 3.0, 3.0, deltas);
    CHECK(!c.pass);
    CHECK(c.rhs == doctest::Approx(2.0 / 3.0));
    CHECK(c.lhs == doctest::Approx(5.0 / 6.0));
  }
  {
    const Certificate c = lp_breakdown_exponents(100, 2.0, 2.0, deltas);
    CHECK(c.pass);
    CHECK(std::abs(c.lhs - c.rhs) < 0.01);
  }
}

TEST_CASE("openness threshold demo") {
  {
    const Certificate c = openness_threshold_demo(2.0, 1, 1.0, 20);
    CHECK(c.pass);
    CHECK(c.params.at("analytic_finite").get<bool>());
    CHECK(c.params.at("numeric_finite").get<bool>());
  }
  {
    const Certificate c = openness_threshold_demo(2.0, 0, 2.0, 20);
    CHECK(c.pass);
    CHECK(!c.params.at("analytic_finite").get<bool>());
    CHECK(c.params.at("divergence_blow_up_x2").get<bool>());
  }
  {
    const Certificate c = openness_threshold_demo(2.0, 0, 1.0, 20);
    CHECK(c.pass);
    CHECK(c.params.at("boundary_log_divergence").get<bool>());
    CHECK(!c.params.at("numeric_finite").get<bool>());
  }
}

TEST_CASE("hormander solve input guards") {
  const auto g = build_grid(DomainSpec::disc({0, 0}, 1.0), {32});
  const FormField f = FormField::zero_one(g, {Complex(1, 0)});
  CHECK_THROWS(hormander_solve(f, parse_expr("-z_abs2_1"), 4)); // not psh
  const FormField f0 = FormField::zero_one(g, {Complex(0, 0)});
  const HormanderSolution sol = hormander_solve(f0, parse_expr("z_abs2_1"), 4);
  CHECK(sol.lhs <= 1e-20);
  CHECK(sol.certificate.pass);
}

TEST_CASE("ot extension guards") {
  const ChenConstant C = chen_constant_C();
  const R0Result r0 = optimize_r0();
  {
    // second-axis radius beyond e^{-1/2}
    const auto g = build_grid(
        DomainSpec::product({{Complex(0, 0), 0.9}, {Complex(0, 0), 0.7}}), {16, 16});
    OtConfig cfg;
    cfg.grid = g;
    cfg.phi = parse_expr("z_abs2_1 + z_abs2_2");
    cfg.slice_f = [](Complex) { return Complex(1, 0); };
    cfg.chen_C = C.value;
    cfg.c_prime = r0.c_prime;
    CHECK_THROWS(ot_extend_check(cfg));
  }
  {
    // extension that fails to restrict to the slice data
    const auto g = build_grid(
        DomainSpec::product({{Complex(0, 0), 0.9}, {Complex(0, 0), 0.5}}), {16, 16});
    OtConfig cfg;
    cfg.grid = g;
    cfg.phi = parse_expr("z_abs2_1 + z_abs2_2");
    cfg.slice_f = [](Complex) { return Complex(1, 0); };
    cfg.extension = [](Complex, Complex) { return Complex(2, 0); };
    cfg.chen_C = C.value;
    cfg.c_prime = r0.c_prime;
    CHECK_THROWS(ot_extend_check(cfg));
  }
}
