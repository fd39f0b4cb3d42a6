#pragma once

#include <functional>
#include <span>

#include "scv/certificate.hpp"
#include "scv/expr.hpp"
#include "scv/grid.hpp"

namespace scv {

using RealFn1 = std::function<double(Complex)>;

// Normalized radial bump of scale delta; quintic profile, compact support in
// the unit disc, moments computed by quadrature at construction.
class RadialKernel {
 public:
  explicit RadialKernel(double delta);

  double delta() const { return delta_; }
  double profile(double t) const; // on [0,1]
  double normalization() const { return normalization_; } // integral of profile(|z|)
  double second_moment() const { return second_moment_; } // E|zeta|^2, normalized

 private:
  double delta_;
  double normalization_;
  double second_moment_;
};

double circle_mean(const RealFn1& u, Complex z, double r, int m_nodes = 512);

Certificate submean_test(const RealFn1& u, std::span<const Complex> probes,
                         std::span<const double> radii, int m_nodes = 512,
                         double tolerance = 1e-9);

// Field with a validity mask on a shrunk subgrid (mollification shrinks the
// usable region by its support radius).
struct MaskedField {
  GridPtr grid;
  CVector values;
  std::vector<uint8_t> valid; // per compact node

  static MaskedField from_field(const ScalarField& f);
};

MaskedField mollify(const MaskedField& u, const RadialKernel& kernel);
MaskedField mollify(const ScalarField& u, const RadialKernel& kernel);

// Pointwise mollified function built from the same discrete stencil, for
// exact circle-mean comparisons.
RealFn1 mollify_fn(const RealFn1& u, const RadialKernel& kernel, double h);

Certificate mollify_monotone_check(const ScalarField& u, double delta1, double delta2,
                                   double tolerance = 1e-9);

Certificate convex_compose_check(const Expr& phi, const RealFn1& u,
                                 std::span<const Complex> probes, std::span<const double> radii);

Certificate psh_test_fn(const std::function<double(std::span<const Complex>)>& weight,
                        std::span<const CVector> probes, double h_fd = 0.0);
Certificate psh_test(const Expr& weight, std::span<const CVector> probes, double h_fd = 0.0);

// -log d(z, complement) sampled on the grid.
ScalarField neg_log_dist_field(const DomainSpec& domain, const GridPtr& grid);

// ||z||^2 - log d(z, complement): continuous exhaustion of the domain.
ScalarField exhaustion_field(const DomainSpec& domain, const GridPtr& grid);

inline constexpr double kLogFloor = -1e12; // clamp for -infinity samples

} // namespace scv
