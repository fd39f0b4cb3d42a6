#include "scv/psh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scv/wirtinger.hpp"

namespace scv {

namespace {

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

// Composite Simpson on [a,b].
double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

struct Stencil {
  std::vector<std::pair<int, int>> offsets;
  std::vector<double> weights; // renormalized to sum 1
};

Stencil kernel_stencil(const RadialKernel& kernel, double h) {
  const double delta = kernel.delta();
  const int R = int(std::floor(delta / h));
  if (R < 1) throw std::invalid_argument("mollify: kernel scale below one grid cell");
  Stencil st;
  double sum = 0.0;
  for (int a = -R; a <= R; ++a) {
    for (int b = -R; b <= R; ++b) {
      const double t = std::hypot(a * h, b * h) / delta;
      if (t > 1.0) continue;
      const double w = kernel.profile(t);
      if (w <= 0.0) continue;
      st.offsets.emplace_back(a, b);
      st.weights.push_back(w);
      sum += w;
    }
  }
  for (double& w : st.weights) w /= sum;
  return st;
}

} // namespace

RadialKernel::RadialKernel(double delta) : delta_(delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("RadialKernel: scale must be positive");
  const auto prof = [this](double t) { return profile(t); };
  normalization_ = 2.0 * kPi * simpson([&](double t) { return prof(t) * t; }, 0.0, 1.0, 4096);
  second_moment_ =
      2.0 * kPi * simpson([&](double t) { return prof(t) * t * t * t; }, 0.0, 1.0, 4096) /
      normalization_;
}

double RadialKernel::profile(double t) const {
  if (t >= 1.0) return 0.0;
  return 1.0 - smoothstep5(t);
}

double circle_mean(const RealFn1& u, Complex z, double r, int m_nodes) {
  double acc = 0.0;
  for (int k = 0; k < m_nodes; ++k) {
    const double th = 2.0 * kPi * double(k) / double(m_nodes);
    acc += u(z + r * Complex(std::cos(th), std::sin(th)));
  }
  return acc / double(m_nodes);
}

Certificate submean_test(const RealFn1& u, std::span<const Complex> probes,
                         std::span<const double> radii, int m_nodes, double tolerance) {
  double worst = std::numeric_limits<double>::infinity();
  std::string witness;
  for (const Complex z : probes) {
    const double uz = u(z);
    for (const double r : radii) {
      const double mean = circle_mean(u, z, r, m_nodes);
      const double margin = mean - uz;
      if (margin < worst) {
        worst = margin;
        witness = "z=(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                  "), r=" + std::to_string(r);
      }
    }
  }
  return Certificate::make("submean", -worst, 0.0, tolerance, witness,
                           {{"probes", probes.size()}, {"radii", radii.size()}});
}

MaskedField MaskedField::from_field(const ScalarField& f) {
  MaskedField m;
  m.grid = f.grid;
  m.values = f.values;
  m.valid.assign(size_t(f.grid->node_count()), 1);
  return m;
}

MaskedField mollify(const MaskedField& u, const RadialKernel& kernel) {
  const Grid& g = *u.grid;
  if (g.dim() != 1) throw std::invalid_argument("mollify: one-variable grids only");
  const double h = g.spacing(0);
  const Stencil st = kernel_stencil(kernel, h);

  MaskedField out;
  out.grid = u.grid;
  out.values.assign(size_t(g.node_count()), Complex(0.0, 0.0));
  out.valid.assign(size_t(g.node_count()), 0);
  int64_t produced = 0;
  for (int64_t k = 0; k < g.node_count(); ++k) {
    const int64_t full = g.full_of_compact(k);
    Complex acc(0.0, 0.0);
    bool ok = true;
    for (size_t i = 0; i < st.offsets.size() && ok; ++i) {
      // u(z - delta z') sampled at lattice offsets
      const int64_t nb = g.shift_full(full, 0, -st.offsets[i].first, -st.offsets[i].second);
      const int32_t c = nb >= 0 ? g.compact_of_full(nb) : -1;
      if (c < 0 || !u.valid[size_t(c)]) {
        ok = false;
        break;
      }
      acc += st.weights[i] * u.values[size_t(c)];
    }
    if (ok) {
      out.values[size_t(k)] = acc;
      out.valid[size_t(k)] = 1;
      ++produced;
    }
  }
  if (produced == 0)
    throw std::invalid_argument("mollify: scale too large, no nodes survive the shrink");
  return out;
}

MaskedField mollify(const ScalarField& u, const RadialKernel& kernel) {
  return mollify(MaskedField::from_field(u), kernel);
}

RealFn1 mollify_fn(const RealFn1& u, const RadialKernel& kernel, double h) {
  const Stencil st = kernel_stencil(kernel, h);
  return [u, st, h](Complex z) {
    double acc = 0.0;
    for (size_t i = 0; i < st.offsets.size(); ++i)
      acc += st.weights[i] *
             u(z - Complex(st.offsets[i].first * h, st.offsets[i].second * h));
    return acc;
  };
}

Certificate mollify_monotone_check(const ScalarField& u, double delta1, double delta2,
                                   double tolerance) {
  if (!(delta1 > delta2)) throw std::invalid_argument("mollify_monotone_check: delta1 > delta2");
  const RadialKernel k1(delta1), k2(delta2);
  const MaskedField u1 = mollify(u, k1);
  const MaskedField u2 = mollify(u, k2);
  double worst = std::numeric_limits<double>::infinity();
  std::string witness;
  const Grid& g = *u.grid;
  for (int64_t k = 0; k < g.node_count(); ++k) {
    if (!u1.valid[size_t(k)] || !u2.valid[size_t(k)]) continue;
    const double margin = u1.values[size_t(k)].real() - u2.values[size_t(k)].real();
    if (margin < worst) {
      worst = margin;
      const CVector z = g.node(k);
      witness = "z=(" + std::to_string(z[0].real()) + "," + std::to_string(z[0].imag()) + ")";
    }
  }
  return Certificate::make("mollify_monotone", -worst, 0.0, tolerance, witness,
                           {{"delta1", delta1}, {"delta2", delta2}});
}

Certificate convex_compose_check(const Expr& phi, const RealFn1& u,
                                 std::span<const Complex> probes, std::span<const double> radii) {
  // Spot-check convexity and monotonicity of phi over the sampled range of u.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Complex z : probes) {
    for (const double r : radii) {
      for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * kPi * k / 64.0;
        const double v = u(z + r * Complex(std::cos(th), std::sin(th)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    lo = std::min(lo, u(z));
    hi = std::max(hi, u(z));
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const int samples = 101;
  const double step = (hi - lo) / (samples - 1);
  std::vector<double> vals(samples);
  for (int i = 0; i < samples; ++i) vals[size_t(i)] = phi.eval(std::vector<double>{lo + i * step, 0.0});
  for (int i = 0; i + 1 < samples; ++i)
    if (vals[size_t(i + 1)] - vals[size_t(i)] < -1e-9 * (1.0 + std::abs(vals[size_t(i)])))
      throw std::invalid_argument("convex_compose_check: composing function is not increasing");
  for (int i = 1; i + 1 < samples; ++i)
    if (vals[size_t(i + 1)] - 2.0 * vals[size_t(i)] + vals[size_t(i - 1)] < -1e-9 * (1.0 + std::abs(vals[size_t(i)])))
      throw std::invalid_argument("convex_compose_check: composing function is not convex");

  const RealFn1 composed = [&phi, &u](Complex z) {
    return phi.eval(std::vector<double>{u(z), 0.0});
  };
  Certificate c = submean_test(composed, probes, radii);
  c.check = "convex_compose_submean";
  return c;
}

Certificate psh_test_fn(const std::function<double(std::span<const Complex>)>& weight,
                        std::span<const CVector> probes, double h_fd) {
  double worst = std::numeric_limits<double>::infinity();
  std::string witness;
  for (const auto& z : probes) {
    const LeviForm lf = levi_form_fn(weight, z, h_fd);
    const auto e = eig(lf.matrix);
    if (e.values.back() < worst) {
      worst = e.values.back();
      witness = "probe re(z1)=" + std::to_string(z[0].real());
    }
  }
  const bool strict = worst > 1e-6;
  auto c = Certificate::make("psh_min_eigenvalue", -worst, 0.0, 1e-6, witness,
                             {{"strict", strict}, {"min_eigenvalue", worst}});
  return c;
}

Certificate psh_test(const Expr& weight, std::span<const CVector> probes, double h_fd) {
  return psh_test_fn([&weight](std::span<const Complex> z) { return weight.eval_at(z); }, probes,
                     h_fd);
}

ScalarField neg_log_dist_field(const DomainSpec& domain, const GridPtr& grid) {
  ScalarField out = zero_field(grid);
  std::vector<Complex> z(static_cast<size_t>(grid->dim()));
  for (int64_t k = 0; k < grid->node_count(); ++k) {
    grid->node_coords(k, z);
    const double d = boundary_distance(domain, z);
    out[k] = d > 0.0 ? -std::log(d) : -kLogFloor;
  }
  return out;
}

ScalarField exhaustion_field(const DomainSpec& domain, const GridPtr& grid) {
  ScalarField out = neg_log_dist_field(domain, grid);
  std::vector<Complex> z(static_cast<size_t>(grid->dim()));
  for (int64_t k = 0; k < grid->node_count(); ++k) {
    grid->node_coords(k, z);
    double n2 = 0.0;
    for (const Complex& zj : z) n2 += std::norm(zj);
    out[k] += n2;
  }
  return out;
}

} // namespace scv
