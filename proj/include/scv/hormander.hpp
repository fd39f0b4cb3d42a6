#pragma once

#include <functional>
#include <span>
#include <vector>

#include "scv/certificate.hpp"
#include "scv/expr.hpp"
#include "scv/grid.hpp"
#include "scv/wirtinger.hpp"

namespace scv {

// Auxiliary weight family rho_s = log(|z|^2 + s^2), eta_s = -rho_s + log(-rho_s),
// psi_s = -log eta_s, valid where |z|^2 + s^2 < 1/e.
struct ChenWeights {
  double rho;
  double eta;
  double psi;
};

ChenWeights chen_weights(double s, Complex z);

bool chen_admissible(double s, Complex z);

// Closed-form derivative package used by the curvature identities.
struct ChenDerivatives {
  Complex rho_z, rho_zbar, eta_z, psi_z;
  double rho_zzbar, eta_zzbar, psi_zzbar;
};

ChenDerivatives chen_derivatives(double s, Complex z);

// Certificates for the nine curvature identities/inequalities; equalities are
// FD-vs-closed-form, inequalities closed-form with margins.
std::vector<Certificate> weight_identities_check(double s, std::span<const Complex> points,
                                                 double h_fd);

// Deterministic Halton cloud in the admissible disc for the parameter s.
CVector chen_sample_points(double s, int count);

struct ChiProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static ChiProfile quintic(); // 1 on t<=1/2, 0 on t>=1
};

struct ChenConstant {
  double value = 0.0;
  Certificate dual_quadrature;   // radial Gauss-type vs 2-D tensor quadrature
  Certificate rescale_invariance; // s-substitution identity
};

ChenConstant chen_constant_C(const ChiProfile& chi = ChiProfile::quintic());

Certificate sixth_bound_check(int sweep_count = 2000, double x_max = 1e6);

struct R0Result {
  double r0 = 0.0;        // golden-section minimizer
  double r0_closed = 0.0; // positive root of 4r^2 + 8r - 1/6 = 0
  double c_prime = 0.0;
  double stationarity = 0.0; // |g'(r0)| * r0 / g(r0)
};

R0Result optimize_r0();

struct HormanderSolution {
  ScalarField u;
  Certificate certificate; // int |u|^2 e^-phi <= int |f|^2_A e^-phi
  double lhs = 0.0;
  double rhs = 0.0;
};

// Weighted existence certificate: particular solution, minimal-norm
// correction by weighted projection onto holomorphic polynomials of total
// degree <= projection_degree, then the L2 comparison.
HormanderSolution hormander_solve(const FormField& f, const Expr& phi, int projection_degree);

struct OtConfig {
  GridPtr grid;  // product Omega' x disc(0, r_n), r_n < e^{-1/2}
  Expr phi;
  std::function<Complex(Complex)> slice_f;          // holomorphic on Omega'
  std::function<Complex(Complex, Complex)> extension; // defaults to trivial
  double chen_C = 0.0;      // from chen_constant_C
  double c_prime = 0.0;     // from optimize_r0
};

Certificate ot_extend_check(const OtConfig& cfg);

std::vector<double> lp_iteration(double A0, double C0, double p, int steps);

Certificate lp_breakdown_exponents(int n, double p, double q, std::span<const double> deltas);

Certificate openness_threshold_demo(double p, int k, double alpha, int j_max);

} // namespace scv
