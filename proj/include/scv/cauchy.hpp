#pragma once

#include <functional>
#include <optional>
#include <span>

#include "scv/certificate.hpp"
#include "scv/grid.hpp"

namespace scv {

// Uniform angular nodes theta_k = 2*pi*k/m on a circle; trapezoid weights.
struct ContourGrid {
  Complex center;
  double radius;
  int m;

  ContourGrid(Complex c, double r, int nodes);
  Complex node(int k) const;
  CVector sample(const std::function<Complex(Complex)>& u) const;
};

// Cauchy-Pompeiu reconstruction: contour term plus the dz/dzbar area term.
// dbar_u may be null for holomorphic u; zeta must be well inside the contour.
Complex cauchy_integral(std::span<const Complex> u_boundary, const ScalarField* dbar_u,
                        Complex zeta, const ContourGrid& contour, const Grid* area_grid);

// u(zeta) = (1/2*pi*i) Int phi(z)/(z-zeta) dz^dzbar over a one-variable grid.
// Satisfies dbar u = phi in the FD sense.
Complex cauchy_transform(const ScalarField& phi, Complex zeta);

// Transform evaluated at every grid node; optionally reports the sup of
// |dbar u - phi| over interior nodes.
ScalarField solve_dbar_1d(const ScalarField& phi, double* sup_residual = nullptr);

// Boundary samples of u on the distinguished boundary of a polydisc: values
// indexed row-major over n angle indices, m nodes per circle.
struct BoundaryTensor {
  std::vector<Complex> centers;
  std::vector<double> radii;
  int m = 0;
  CVector values;
};

BoundaryTensor sample_distinguished_boundary(
    const std::function<Complex(std::span<const Complex>)>& u, std::vector<Complex> centers,
    std::vector<double> radii, int m);

// Taylor coefficients a_alpha = d^alpha u(0)/alpha! up to the given order per
// axis, by tensor trapezoid quadrature over the distinguished boundary.
struct PowerSeries {
  std::vector<int> orders; // inclusive max order per axis
  CVector a;               // row-major over alpha
  Complex coeff(std::span<const int> alpha) const;
};

PowerSeries power_series(const BoundaryTensor& boundary, std::vector<int> orders);

Certificate cauchy_inequality_check(const PowerSeries& series, double M,
                                    std::span<const double> radii);

// Shared one-axis machinery, also used by the polydisc solver.
struct AxisTransformTables {
  int m = 0;
  double h = 0.0;
  Complex center;
  double radius = 0.0;
  CVector k1;        // (2m-1)^2 kernel table, (-1/pi) h^2 / dz, zero at dz=0
  CVector k2;        // same with conj(dz)/dz
  CVector t1, t2;    // per-target masked kernel sums, size m^2
  double masked_area = 0.0;
};

AxisTransformTables build_axis_tables(const Grid& grid, int axis);

// One slice transform with three-term singularity subtraction. g, gz, gzb and
// out are per-axis-lattice arrays of length m^2; g must vanish at masked
// entries. Values are produced at unmasked targets only.
void transform_slice(const AxisTransformTables& tables, const std::vector<uint8_t>& axis_mask,
                     std::span<const Complex> g, std::span<const Complex> gz,
                     std::span<const Complex> gzb, std::span<Complex> out);

} // namespace scv
