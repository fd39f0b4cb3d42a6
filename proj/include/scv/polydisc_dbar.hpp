#pragma once

#include <optional>

#include "scv/certificate.hpp"
#include "scv/grid.hpp"
#include "scv/wirtinger.hpp"

namespace scv {

// Radial cutoff for one polydisc axis: 1 on |tau| <= r_inner, quintic fade to
// zero before |tau| = r_outer.
struct CutoffSpec {
  double r_inner = 0.0;
  double r_outer = 0.0;
  double fade_end = 0.0; // support ends here; defaults to 0.98 * r_outer

  static CutoffSpec between(double r_inner, double r_outer);
  double value(double abs_tau) const;
};

struct StepOptions {
  double pre_tolerance = 0.0;          // 0: use 50 h^2
  std::vector<double> check_radii;     // per-axis |z_j - c_j| bound for the precondition check
};

// Axis-k Cauchy transform of cutoff * g. Output satisfies dbar_k G = psi * g
// and stays holomorphic in axes > k wherever g is.
ScalarField solve_step(const ScalarField& g, int axis, const CutoffSpec& cutoff,
                       const StepOptions& opts = {});

struct PolydiscSolution {
  ScalarField u;
  Certificate residual; // sup |dbar u - f| on the shrunk polydisc vs 20 h
};

// Two-step constructive solver for dbar u = f, f a dbar-closed (0,1)-form on a
// bidisc; the solution is certified on the concentric polydisc shrunk by the
// given factor.
PolydiscSolution solve_dbar_polydisc(const FormField& f, double shrink,
                                     double closure_tolerance = 0.0);

} // namespace scv
