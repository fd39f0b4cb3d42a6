#include "scv/polydisc_dbar.hpp"

#include <cmath>
#include <stdexcept>

#include "scv/cauchy.hpp"

namespace scv {

namespace {

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

} // namespace

CutoffSpec CutoffSpec::between(double r_inner, double r_outer) {
  if (!(r_inner > 0.0) || !(r_inner < r_outer))
    throw std::invalid_argument("CutoffSpec: requires 0 < r_inner < r_outer");
  CutoffSpec c;
  c.r_inner = r_inner;
  c.r_outer = r_outer;
  c.fade_end = 0.98 * r_outer;
  if (!(c.fade_end > r_inner))
    throw std::invalid_argument("CutoffSpec: no room for the fade region");
  return c;
}

double CutoffSpec::value(double abs_tau) const {
  if (abs_tau <= r_inner) return 1.0;
  if (abs_tau >= fade_end) return 0.0;
  return 1.0 - smoothstep5((abs_tau - r_inner) / (fade_end - r_inner));
}

ScalarField solve_step(const ScalarField& g, int axis, const CutoffSpec& cutoff,
                       const StepOptions& opts) {
  const Grid& grid = *g.grid;
  const int n = grid.dim();
  if (axis < 0 || axis >= n) throw std::invalid_argument("solve_step: axis out of range");
  const double h = grid.max_spacing();
  const double pre_tol = opts.pre_tolerance > 0.0 ? opts.pre_tolerance : 50.0 * h * h;

  // Precondition: g holomorphic in every axis beyond this one, measured on the
  // requested sub-polydisc.
  if (axis + 1 < n) {
    const auto interior = interior_mask(grid, 3);
    std::vector<Complex> z(static_cast<size_t>(n));
    for (int j = axis + 1; j < n; ++j) {
      const ScalarField d = d_dzbar(g, j);
      double worst = 0.0;
      for (int64_t k = 0; k < grid.node_count(); ++k) {
        if (!interior[size_t(grid.full_of_compact(k))]) continue;
        if (!opts.check_radii.empty()) {
          grid.node_coords(k, z);
          bool in_region = true;
          for (int jj = 0; jj < n && in_region; ++jj)
            in_region = std::abs(z[size_t(jj)] - grid.domain().axes()[size_t(jj)].center) <=
                        opts.check_radii[size_t(jj)];
          if (!in_region) continue;
        }
        worst = std::max(worst, std::abs(d[k]));
      }
      if (worst > pre_tol)
        throw std::runtime_error("solve_step: input not holomorphic in axis " + std::to_string(j) +
                                 ", residual " + std::to_string(worst) + " > " +
                                 std::to_string(pre_tol));
    }
  }

  // Multiply by the cutoff, then transform slice by slice along the axis.
  ScalarField gc = zero_field(g.grid);
  std::vector<int64_t> per_idx(static_cast<size_t>(n));
  for (int64_t k = 0; k < grid.node_count(); ++k) {
    grid.decode_full(grid.full_of_compact(k), per_idx);
    const Complex tau = grid.axis_coord(axis, per_idx[size_t(axis)]) -
                        grid.domain().axes()[size_t(axis)].center;
    gc[k] = g[k] * cutoff.value(std::abs(tau));
  }
  const ScalarField gz = d_dz(gc, axis);
  const ScalarField gzb = d_dzbar(gc, axis);

  const auto tables = build_axis_tables(grid, axis);
  const int64_t lat = grid.axis_lattice_size(axis);
  ScalarField out = zero_field(g.grid);

  // Group compact nodes by their off-axis lattice position.
  std::vector<int64_t> per(static_cast<size_t>(n));
  if (n == 1) {
    CVector gs(static_cast<size_t>(lat), Complex(0, 0));
    CVector gzs(static_cast<size_t>(lat), Complex(0, 0));
    CVector gzbs(static_cast<size_t>(lat), Complex(0, 0));
    CVector us(static_cast<size_t>(lat));
    for (int64_t k = 0; k < grid.node_count(); ++k) {
      const int64_t a = grid.full_of_compact(k);
      gs[size_t(a)] = gc[k];
      gzs[size_t(a)] = gz[k];
      gzbs[size_t(a)] = gzb[k];
    }
    transform_slice(tables, grid.axis_mask(0), gs, gzs, gzbs, us);
    for (int64_t k = 0; k < grid.node_count(); ++k) out[k] = us[size_t(grid.full_of_compact(k))];
    return out;
  }

  if (n != 2) throw std::invalid_argument("solve_step: implemented for one and two variables");
  const int other = 1 - axis;
  const int64_t other_lat = grid.axis_lattice_size(other);
  CVector gs(static_cast<size_t>(lat)), gzs(static_cast<size_t>(lat)), gzbs(static_cast<size_t>(lat)), us(static_cast<size_t>(lat));
  for (int64_t b = 0; b < other_lat; ++b) {
    if (!grid.axis_inside(other, b)) continue;
    std::fill(gs.begin(), gs.end(), Complex(0, 0));
    std::fill(gzs.begin(), gzs.end(), Complex(0, 0));
    std::fill(gzbs.begin(), gzbs.end(), Complex(0, 0));
    for (int64_t a = 0; a < lat; ++a) {
      if (!grid.axis_inside(axis, a)) continue;
      per[size_t(axis)] = a;
      per[size_t(other)] = b;
      const int32_t k = grid.compact_of_full(grid.full_index(per));
      if (k < 0) continue;
      gs[size_t(a)] = gc[k];
      gzs[size_t(a)] = gz[k];
      gzbs[size_t(a)] = gzb[k];
    }
    transform_slice(tables, grid.axis_mask(axis), gs, gzs, gzbs, us);
    for (int64_t a = 0; a < lat; ++a) {
      if (!grid.axis_inside(axis, a)) continue;
      per[size_t(axis)] = a;
      per[size_t(other)] = b;
      const int32_t k = grid.compact_of_full(grid.full_index(per));
      if (k >= 0) out[k] = us[size_t(a)];
    }
  }
  return out;
}

PolydiscSolution solve_dbar_polydisc(const FormField& f, double shrink, double closure_tolerance) {
  const GridPtr grid = f.grid;
  const int n = grid->dim();
  if (n != 2) throw std::invalid_argument("solve_dbar_polydisc: two variables only");
  if (f.p != 0 || f.q != 1)
    throw std::invalid_argument("solve_dbar_polydisc: expects a (0,1)-form");
  if (!(shrink > 0.0 && shrink < 1.0))
    throw std::invalid_argument("solve_dbar_polydisc: shrink factor must be in (0,1)");
  const double h = grid->max_spacing();
  const double closure_tol = closure_tolerance > 0.0 ? closure_tolerance : 50.0 * h * h;

  // Closure: the single (0,2) coefficient of dbar f must vanish.
  {
    const FormField df = dbar_form(f);
    const auto interior = interior_mask(*grid, 3);
    double worst = 0.0;
    for (const auto& [key, field] : df.coeffs)
      for (int64_t k = 0; k < grid->node_count(); ++k)
        if (interior[size_t(grid->full_of_compact(k))])
          worst = std::max(worst, std::abs(field[k]));
    if (worst > closure_tol)
      throw std::runtime_error("solve_dbar_polydisc: form is not dbar-closed, residual " +
                               std::to_string(worst) + " > " + std::to_string(closure_tol));
  }

  const auto& axes = grid->domain().axes();
  std::vector<double> r_prime(2), r_mid(2);
  for (int j = 0; j < 2; ++j) {
    r_prime[size_t(j)] = shrink * axes[size_t(j)].radius;
    r_mid[size_t(j)] = 0.5 * (r_prime[size_t(j)] + axes[size_t(j)].radius);
  }

  auto coeff_or_zero = [&](int j) {
    const ScalarField* c = f.coeff({}, {j});
    return c != nullptr ? *c : zero_field(grid);
  };
  const ScalarField f1 = coeff_or_zero(0);
  const ScalarField f2 = coeff_or_zero(1);

  // Step one along the last axis: no trailing-axis precondition applies.
  const CutoffSpec cut2 = CutoffSpec::between(r_mid[1], axes[1].radius);
  const ScalarField G2 = solve_step(f2, 1, cut2);

  // Reduced data has only a dzbar_1 component, holomorphic in z2 on the
  // sub-polydisc where the first cutoff is identically one.
  ScalarField g1 = d_dzbar(G2, 0);
  for (int64_t k = 0; k < grid->node_count(); ++k) g1[k] = f1[k] - g1[k];

  const CutoffSpec cut1 = CutoffSpec::between(r_mid[0], axes[0].radius);
  StepOptions opts;
  opts.check_radii = {axes[0].radius, r_mid[1] - 3.0 * grid->spacing(1)};
  const ScalarField G1 = solve_step(g1, 0, cut1, opts);

  ScalarField u = zero_field(grid);
  for (int64_t k = 0; k < grid->node_count(); ++k) u[k] = G1[k] + G2[k];

  // Residual certificate on the shrunk polydisc.
  const ScalarField du1 = d_dzbar(u, 0);
  const ScalarField du2 = d_dzbar(u, 1);
  const auto interior = interior_mask(*grid, 3);
  double worst = 0.0;
  int64_t witness = -1;
  std::vector<Complex> z(2);
  for (int64_t k = 0; k < grid->node_count(); ++k) {
    if (!interior[size_t(grid->full_of_compact(k))]) continue;
    grid->node_coords(k, z);
    if (std::abs(z[0] - axes[0].center) >= r_prime[0] ||
        std::abs(z[1] - axes[1].center) >= r_prime[1])
      continue;
    const double r = std::max(std::abs(du1[k] - f1[k]), std::abs(du2[k] - f2[k]));
    if (r > worst) {
      worst = r;
      witness = k;
    }
  }
  nlohmann::ordered_json params;
  params["shrink"] = shrink;
  params["h"] = h;
  std::string wtxt;
  if (witness >= 0) {
    grid->node_coords(witness, z);
    wtxt = "node (" + std::to_string(z[0].real()) + "+" + std::to_string(z[0].imag()) + "i, " +
           std::to_string(z[1].real()) + "+" + std::to_string(z[1].imag()) + "i)";
  }
  PolydiscSolution sol{std::move(u), Certificate::make("polydisc_dbar_residual", worst, 20.0 * h,
                                                       0.0, wtxt, params)};
  return sol;
}

} // namespace scv
