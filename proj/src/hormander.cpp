#include "scv/hormander.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scv/cauchy.hpp"
#include "scv/hermitian.hpp"
#include "scv/polydisc_dbar.hpp"
#include "scv/psh.hpp"

namespace scv {

namespace {

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

} // namespace

bool chen_admissible(double s, Complex z) { return std::norm(z) + s * s < std::exp(-1.0); }

ChenWeights chen_weights(double s, Complex z) {
  if (!(s > 0.0)) throw std::invalid_argument("chen_weights: s must be positive");
  if (!chen_admissible(s, z))
    throw std::invalid_argument("chen_weights: |z|^2 + s^2 must stay below 1/e");
  ChenWeights w;
  w.rho = std::log(std::norm(z) + s * s);
  w.eta = -w.rho + std::log(-w.rho);
  w.psi = -std::log(w.eta);
  return w;
}

ChenDerivatives chen_derivatives(double s, Complex z) {
  const ChenWeights w = chen_weights(s, z);
  ChenDerivatives d;
  const double q = std::norm(z) + s * s;
  d.rho_zbar = z / q;
  d.rho_z = std::conj(z) / q;
  d.rho_zzbar = s * s / (q * q);
  const double rho = w.rho;
  d.eta_z = -(1.0 + 1.0 / (-rho)) * d.rho_z;
  d.eta_zzbar = -(1.0 + 1.0 / (-rho)) * d.rho_zzbar - std::norm(d.rho_z) / (rho * rho);
  d.psi_z = -d.eta_z / w.eta;
  d.psi_zzbar = -d.eta_zzbar / w.eta + std::norm(d.eta_z) / (w.eta * w.eta);
  return d;
}

CVector chen_sample_points(double s, int count) {
  const double r_adm = 0.999 * std::sqrt(std::exp(-1.0) - s * s);
  CVector pts;
  pts.reserve(size_t(count));
  int index = 1;
  while (int(pts.size()) < count) {
    const double u = halton(index, 2), v = halton(index, 3);
    ++index;
    const Complex z(r_adm * (2.0 * u - 1.0), r_adm * (2.0 * v - 1.0));
    if (std::abs(z) < r_adm) pts.push_back(z);
  }
  return pts;
}

std::vector<Certificate> weight_identities_check(double s, std::span<const Complex> points,
                                                 double h_fd) {
  std::vector<Certificate> certs;

  auto rho_fn = [s](Complex z) { return std::log(std::norm(z) + s * s); };
  auto eta_fn = [&](Complex z) {
    const double r = rho_fn(z);
    return -r + std::log(-r);
  };
  auto psi_fn = [&](Complex z) { return -std::log(eta_fn(z)); };

  // Curvature-adapted step: the functions vary on the scale sqrt(|z|^2+s^2).
  // A fixed double-precision step cannot reach the 1e-5 tolerance across the
  // whole admissible disc for small s.
  auto step = [&](Complex z) {
    return h_fd > 0.0 ? h_fd : 4e-3 * std::sqrt(std::norm(z) + s * s);
  };

  auto fd_z = [&](const std::function<double(Complex)>& f, Complex z) {
    const double h = step(z);
    const double dx =
        (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12.0 * h);
    const double dy = (-f(z + Complex(0, 2 * h)) + 8.0 * f(z + Complex(0, h)) -
                       8.0 * f(z - Complex(0, h)) + f(z - Complex(0, 2 * h))) /
                      (12.0 * h);
    return 0.5 * Complex(dx, -dy);
  };
  auto fd_zzbar = [&](const std::function<double(Complex)>& f, Complex z) {
    const double h = step(z);
    const double f0 = f(z);
    const double fxx = (-f(z + 2 * h) + 16.0 * f(z + h) - 30.0 * f0 + 16.0 * f(z - h) -
                        f(z - 2 * h)) /
                       (12.0 * h * h);
    const double fyy = (-f(z + Complex(0, 2 * h)) + 16.0 * f(z + Complex(0, h)) - 30.0 * f0 +
                        16.0 * f(z - Complex(0, h)) - f(z - Complex(0, 2 * h))) /
                       (12.0 * h * h);
    return 0.25 * (fxx + fyy);
  };

  struct EqualityCheck {
    const char* name;
    std::function<double(Complex)> fd_vs_closed; // normalized |fd - closed|/(1+|closed|)
  };

  std::vector<EqualityCheck> eqs;
  eqs.push_back({"chen_identity_1_rho_zbar", [&](Complex z) {
                   const Complex fd = std::conj(fd_z(rho_fn, z));
                   const Complex cf = chen_derivatives(s, z).rho_zbar;
                   return std::abs(fd - cf) / (1.0 + std::abs(cf));
                 }});
  eqs.push_back({"chen_identity_2_rho_zzbar", [&](Complex z) {
                   const double fd = fd_zzbar(rho_fn, z);
                   const double cf = chen_derivatives(s, z).rho_zzbar;
                   return std::abs(fd - cf) / (1.0 + std::abs(cf));
                 }});
  eqs.push_back({"chen_identity_3_eta_z", [&](Complex z) {
                   const Complex fd = fd_z(eta_fn, z);
                   const Complex cf = chen_derivatives(s, z).eta_z;
                   return std::abs(fd - cf) / (1.0 + std::abs(cf));
                 }});
  eqs.push_back({"chen_identity_4_eta_zzbar", [&](Complex z) {
                   const double fd = fd_zzbar(eta_fn, z);
                   const double cf = chen_derivatives(s, z).eta_zzbar;
                   return std::abs(fd - cf) / (1.0 + std::abs(cf));
                 }});
  eqs.push_back({"chen_identity_5_psi_zzbar", [&](Complex z) {
                   const double fd = fd_zzbar(psi_fn, z);
                   const ChenDerivatives d = chen_derivatives(s, z);
                   const ChenWeights w = chen_weights(s, z);
                   // second form of (5)
                   const double cf = (1.0 + 1.0 / (-w.rho)) * d.rho_zzbar / w.eta +
                                     std::norm(d.rho_z) / (w.eta * w.rho * w.rho) +
                                     std::norm(d.eta_z) / (w.eta * w.eta);
                   return std::abs(fd - cf) / (1.0 + std::abs(cf));
                 }});

  for (const auto& eq : eqs) {
    double worst = 0.0;
    Complex at;
    for (const Complex z : points) {
      const double v = eq.fd_vs_closed(z);
      if (v > worst) {
        worst = v;
        at = z;
      }
    }
    certs.push_back(Certificate::make(
        eq.name, worst, 1e-5, 0.0,
        "z=(" + std::to_string(at.real()) + "," + std::to_string(at.imag()) + ")",
        {{"s", s}, {"h_fd", h_fd > 0.0 ? h_fd : 0.0}, {"adaptive_step", h_fd <= 0.0}, {"points", points.size()}}));
  }

  auto ineq_cert = [&](const char* name, std::span<const Complex> pts,
                       const std::function<double(Complex)>& margin_fn,
                       nlohmann::ordered_json extra) {
    double worst = std::numeric_limits<double>::infinity();
    Complex at;
    for (const Complex z : pts) {
      const double m = margin_fn(z);
      if (m < worst) {
        worst = m;
        at = z;
      }
    }
    extra["s"] = s;
    extra["points"] = pts.size();
    return Certificate::make(
        name, -worst, 0.0, 1e-8,
        "z=(" + std::to_string(at.real()) + "," + std::to_string(at.imag()) + ")", extra);
  };

  certs.push_back(ineq_cert(
      "chen_inequality_6_psi_curvature", points,
      [&](Complex z) {
        const ChenDerivatives d = chen_derivatives(s, z);
        const ChenWeights w = chen_weights(s, z);
        const double bound = (1.0 / (w.eta * w.eta) +
                              1.0 / (w.eta * (-w.rho + 1.0) * (-w.rho + 1.0))) *
                             std::norm(d.eta_z);
        return d.psi_zzbar - bound;
      },
      {}));
  certs.push_back(ineq_cert(
      "chen_inequality_7_psi_lower", points,
      [&](Complex z) {
        const ChenDerivatives d = chen_derivatives(s, z);
        const ChenWeights w = chen_weights(s, z);
        const double q = std::norm(z) + s * s;
        return d.psi_zzbar - s * s / (w.eta * q * q);
      },
      {}));

  // (8) |psi_z|^2 equality, FD against closed form.
  {
    double worst = 0.0;
    Complex at;
    for (const Complex z : points) {
      const Complex fd = fd_z(psi_fn, z);
      const ChenDerivatives d = chen_derivatives(s, z);
      const ChenWeights w = chen_weights(s, z);
      const double cf = std::pow(1.0 + 1.0 / (-w.rho), 2.0) * std::norm(d.rho_z) /
                        (w.eta * w.eta);
      const double v = std::abs(std::norm(fd) - cf) / (1.0 + std::abs(cf));
      if (v > worst) {
        worst = v;
        at = z;
      }
    }
    certs.push_back(Certificate::make(
        "chen_identity_8_psi_z_sq", worst, 1e-5, 0.0,
        "z=(" + std::to_string(at.real()) + "," + std::to_string(at.imag()) + ")",
        {{"s", s}, {"h_fd", h_fd > 0.0 ? h_fd : 0.0}, {"adaptive_step", h_fd <= 0.0}, {"points", points.size()}}));
  }

  // (9) only applies where |z|^2 <= s^2: map the cloud into that disc.
  {
    double rmax = 0.0;
    for (const Complex z : points) rmax = std::max(rmax, std::abs(z));
    CVector pts9(points.begin(), points.end());
    const double scale = 0.999 * s / std::max(rmax, 1e-300);
    for (Complex& z : pts9) z *= scale;
    certs.push_back(ineq_cert(
        "chen_inequality_9_small_disc", pts9,
        [&](Complex z) {
          const ChenDerivatives d = chen_derivatives(s, z);
          const ChenWeights w = chen_weights(s, z);
          return d.psi_zzbar - std::norm(d.rho_z) / w.eta;
        },
        {{"rescaled_into", "|z| <= s"}}));
  }

  return certs;
}

ChiProfile ChiProfile::quintic() {
  ChiProfile p;
  p.value = [](double t) {
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - smoothstep5((t - 0.5) / 0.5);
  };
  p.derivative = [](double t) {
    if (t <= 0.5 || t >= 1.0) return 0.0;
    const double u = (t - 0.5) / 0.5;
    return -30.0 * u * u * (1.0 - u) * (1.0 - u) / 0.5;
  };
  return p;
}

ChenConstant chen_constant_C(const ChiProfile& chi) {
  // Profile sanity: 1 below 1/2, 0 above 1, nonincreasing.
  if (std::abs(chi.value(0.25) - 1.0) > 1e-12 || std::abs(chi.value(1.25)) > 1e-12)
    throw std::invalid_argument("chen_constant_C: profile must be 1 on t<=1/2 and 0 on t>=1");
  for (int i = 0; i + 1 <= 200; ++i) {
    const double t0 = i / 200.0 * 1.5, t1 = (i + 1) / 200.0 * 1.5;
    if (chi.value(t1) > chi.value(t0) + 1e-12)
      throw std::invalid_argument("chen_constant_C: profile must be decreasing");
  }

  // C = 2 Int_{1/2<|w|^2<1} chi'(|w|^2)^2 (|w|^2+1)^2 dlambda
  //   = 2 pi Int_{1/2}^{1} chi'(t)^2 (t+1)^2 dt.
  auto radial_integrand = [&](double t) {
    const double d = chi.derivative(t);
    return d * d * (t + 1.0) * (t + 1.0);
  };
  const double c_radial = 2.0 * kPi * simpson(radial_integrand, 0.5, 1.0, 16384);

  // Independent 2-D masked tensor quadrature over the annulus.
  double c_2d = 0.0;
  {
    const int m = 2000;
    const double h = 2.0 / m;
    for (int i = 0; i < m; ++i) {
      const double x = -1.0 + h * (i + 0.5);
      for (int j = 0; j < m; ++j) {
        const double y = -1.0 + h * (j + 0.5);
        const double t = x * x + y * y;
        if (t <= 0.5 || t >= 1.0) continue;
        const double d = chi.derivative(t);
        c_2d += d * d * (t + 1.0) * (t + 1.0);
      }
    }
    c_2d *= 2.0 * h * h;
  }

  ChenConstant out;
  out.value = c_radial;
  out.dual_quadrature = Certificate::make(
      "chen_constant_dual_quadrature", std::abs(c_radial - c_2d) / c_radial, 1e-6, 0.0, "",
      {{"radial", c_radial}, {"tensor_2d", c_2d}});

  // Rescaling: 2 Int_{s^2/2<|z|^2<s^2} chi'(|z|^2/s^2)^2 (|z|^2+s^2)^2 / s^6 = C.
  double worst = 0.0;
  nlohmann::ordered_json svals = nlohmann::ordered_json::array();
  for (const double s : {0.5, 0.1}) {
    auto integ = [&](double t) {
      const double d = chi.derivative(t / (s * s));
      return d * d * (t + s * s) * (t + s * s) / std::pow(s, 6.0);
    };
    const double c_s = 2.0 * kPi * 0.5 * 2.0 * simpson(integ, s * s / 2.0, s * s, 16384);
    worst = std::max(worst, std::abs(c_s - c_radial) / c_radial);
    svals.push_back({{"s", s}, {"value", c_s}});
  }
  out.rescale_invariance = Certificate::make("chen_constant_rescale_invariance", worst, 1e-6, 0.0,
                                             "", {{"sweep", svals}});
  return out;
}

Certificate sixth_bound_check(int sweep_count, double x_max) {
  double worst = std::numeric_limits<double>::infinity();
  double argmin = 1.0;
  for (int i = 0; i < sweep_count; ++i) {
    const double x = std::exp(std::log(x_max) * double(i) / double(sweep_count - 1));
    const double v = x * x / (x * x + 4.0 * x + 1.0);
    if (v < worst) {
      worst = v;
      argmin = x;
    }
  }
  nlohmann::ordered_json params;
  params["argmin"] = argmin;
  params["min_value"] = worst;
  params["infimum_at_left_end"] = (argmin == 1.0);
  return Certificate::make("sixth_bound", 1.0 / 6.0 - 1e-12, worst, 0.0,
                           "x=" + std::to_string(argmin), params);
}

R0Result optimize_r0() {
  auto g = [](double r) { return (1.0 + 1.0 / r) / (1.0 / 6.0 - 4.0 * r); };
  double a = 1e-6, b = 1.0 / 24.0 - 1e-6;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-12) {
    if (g(c) < g(d)) {
      b = d;
      d = c;
      c = b - gr * (b - a);
    } else {
      a = c;
      c = d;
      d = a + gr * (b - a);
    }
  }
  R0Result res;
  res.r0 = 0.5 * (a + b);
  res.r0_closed = (-8.0 + std::sqrt(64.0 + 8.0 / 3.0)) / 8.0;
  res.c_prime = g(res.r0_closed);
  const double eps = 1e-7;
  const double gprime = (g(res.r0_closed + eps) - g(res.r0_closed - eps)) / (2.0 * eps);
  res.stationarity = std::abs(gprime) * res.r0_closed / res.c_prime;
  return res;
}

namespace {

// Holomorphic monomial basis of total degree <= D on the grid.
std::vector<CVector> monomial_fields(const Grid& g, int D) {
  const int n = g.dim();
  std::vector<std::vector<int>> alphas;
  std::vector<int> alpha(static_cast<size_t>(n), 0);
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total <= D) alphas.push_back(alpha);
    int j = n - 1;
    while (j >= 0) {
      if (++alpha[size_t(j)] <= D) break;
      alpha[size_t(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(alphas.begin(), alphas.end());
  std::vector<CVector> fields;
  std::vector<Complex> z(static_cast<size_t>(n));
  for (const auto& a : alphas) {
    CVector f(static_cast<size_t>(g.node_count()));
    for (int64_t k = 0; k < g.node_count(); ++k) {
      g.node_coords(k, z);
      Complex v(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        for (int e = 0; e < a[size_t(j)]; ++e) v *= z[size_t(j)];
      f[size_t(k)] = v;
    }
    fields.push_back(std::move(f));
  }
  return fields;
}

// Solve the Hermitian positive definite system G c = r by eigendecomposition.
CVector solve_hpd(const HermitianMatrix& G, const CVector& r) {
  const EigResult e = eig(G);
  const int n = G.size();
  CVector c(static_cast<size_t>(n), Complex(0, 0));
  for (int k = 0; k < n; ++k) {
    if (e.values[size_t(k)] <= 1e-14 * e.values.front()) continue;
    Complex proj(0, 0);
    for (int i = 0; i < n; ++i) proj += std::conj(e.vectors[size_t(k) * n + i]) * r[size_t(i)];
    proj /= e.values[size_t(k)];
    for (int i = 0; i < n; ++i) c[size_t(i)] += proj * e.vectors[size_t(k) * n + i];
  }
  return c;
}

} // namespace

HormanderSolution hormander_solve(const FormField& f, const Expr& phi, int projection_degree) {
  const GridPtr grid = f.grid;
  const int n = grid->dim();
  if (f.p != 0 || f.q != 1) throw std::invalid_argument("hormander_solve: expects a (0,1)-form");
  if (n != 1 && n != 2) throw std::invalid_argument("hormander_solve: one or two variables");

  // Strict plurisubharmonicity of the weight at a probe set.
  {
    std::vector<CVector> probes;
    const auto& axes = grid->domain().axes();
    for (double fr : {0.0, 0.35, -0.45}) {
      CVector z(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) z[size_t(j)] = axes[size_t(j)].center + fr * axes[size_t(j)].radius;
      probes.push_back(std::move(z));
    }
    const Certificate c = psh_test(phi, probes);
    const double mineig = c.params.at("min_eigenvalue").get<double>();
    if (!(mineig > 1e-6))
      throw std::invalid_argument("hormander_solve: weight is not strictly plurisubharmonic");
  }

  // Particular solution.
  ScalarField u0 = zero_field(grid);
  double solver_residual = 0.0;
  if (n == 1) {
    const ScalarField* c = f.coeff({}, {0});
    if (c == nullptr) {
      // zero form: nothing to solve
    } else {
      u0 = solve_dbar_1d(*c, &solver_residual);
    }
  } else {
    PolydiscSolution ps = solve_dbar_polydisc(f, 0.6);
    u0 = std::move(ps.u);
    solver_residual = ps.residual.lhs;
  }

  // Restrict all quadratures to the region where the solve is certified.
  std::vector<uint8_t> region(static_cast<size_t>(grid->node_count()), 1);
  if (n == 2) {
    const auto& axes = grid->domain().axes();
    std::vector<Complex> z(2);
    for (int64_t k = 0; k < grid->node_count(); ++k) {
      grid->node_coords(k, z);
      region[size_t(k)] = (std::abs(z[0] - axes[0].center) < 0.6 * axes[0].radius &&
                           std::abs(z[1] - axes[1].center) < 0.6 * axes[1].radius)
                              ? 1
                              : 0;
    }
  }

  // Weight and Levi form per node.
  const int64_t N = grid->node_count();
  std::vector<double> wexp(static_cast<size_t>(N));
  std::vector<double> rhs_density(static_cast<size_t>(N), 0.0);
  std::vector<Complex> z(static_cast<size_t>(n));
  CVector fvec(static_cast<size_t>(n));
  for (int64_t k = 0; k < N; ++k) {
    if (!region[size_t(k)]) {
      wexp[size_t(k)] = 0.0;
      continue;
    }
    grid->node_coords(k, z);
    wexp[size_t(k)] = std::exp(-phi.eval_at(z));
    const LeviForm lf = levi_form(phi, z);
    const EigResult e = eig(lf.matrix);
    if (e.values.back() <= 1e-10)
      throw std::runtime_error("hormander_solve: Levi form numerically singular at node " +
                               std::to_string(k));
    for (int j = 0; j < n; ++j) {
      const ScalarField* c = f.coeff({}, {j});
      fvec[size_t(j)] = c != nullptr ? (*c)[k] : Complex(0, 0);
    }
    rhs_density[size_t(k)] = norm_A_sq(fvec, lf.matrix);
  }

  // Minimal-norm correction: subtract the weighted projection onto
  // holomorphic polynomials.
  const auto basis = monomial_fields(*grid, projection_degree);
  const int B = int(basis.size());
  const double w = grid->cell_weight();
  CVector gram(static_cast<size_t>(B) * B, Complex(0, 0));
  CVector rvec(static_cast<size_t>(B), Complex(0, 0));
  for (int a = 0; a < B; ++a) {
    for (int b = 0; b <= a; ++b) {
      Complex acc(0, 0);
      for (int64_t k = 0; k < N; ++k)
        if (region[size_t(k)])
          acc += basis[size_t(a)][size_t(k)] * std::conj(basis[size_t(b)][size_t(k)]) *
                 wexp[size_t(k)];
      gram[size_t(a) * B + b] = acc * w;
      gram[size_t(b) * B + a] = std::conj(acc) * w;
    }
    Complex acc(0, 0);
    for (int64_t k = 0; k < N; ++k)
      if (region[size_t(k)])
        acc += u0[k] * std::conj(basis[size_t(a)][size_t(k)]) * wexp[size_t(k)];
    rvec[size_t(a)] = acc * w;
  }
  const CVector coef = solve_hpd(HermitianMatrix::from_entries(B, gram), rvec);

  ScalarField u = zero_field(grid);
  for (int64_t k = 0; k < N; ++k) {
    Complex v = u0[k];
    for (int a = 0; a < B; ++a) v -= coef[size_t(a)] * basis[size_t(a)][size_t(k)];
    u[k] = v;
  }

  double lhs = 0.0, rhs = 0.0;
  for (int64_t k = 0; k < N; ++k) {
    if (!region[size_t(k)]) continue;
    lhs += std::norm(u[k]) * wexp[size_t(k)];
    rhs += rhs_density[size_t(k)] * wexp[size_t(k)];
  }
  lhs *= w;
  rhs *= w;

  nlohmann::ordered_json params;
  params["projection_degree"] = projection_degree;
  params["basis_size"] = B;
  params["solver_residual"] = solver_residual;
  HormanderSolution sol;
  sol.u = std::move(u);
  sol.lhs = lhs;
  sol.rhs = rhs;
  sol.certificate = Certificate::make("hormander_l2_estimate", lhs, rhs, 0.0, "", params);
  return sol;
}

Certificate ot_extend_check(const OtConfig& cfg) {
  const GridPtr grid = cfg.grid;
  if (grid->dim() != 2) throw std::invalid_argument("ot_extend_check: two variables expected");
  const auto& axes = grid->domain().axes();
  const double rn = axes[1].radius;
  if (!(std::abs(axes[1].center) + rn < std::exp(-0.5)))
    throw std::invalid_argument("ot_extend_check: sup |z_n| must stay below e^{-1/2}");

  std::function<Complex(Complex, Complex)> F = cfg.extension;
  if (!F) F = [&cfg](Complex zp, Complex) { return cfg.slice_f(zp); };

  // Slice agreement F(z', 0) = f(z').
  const int m0 = grid->nodes_per_axis(0);
  (void)m0;
  double slice_dev = 0.0;
  for (int64_t a = 0; a < grid->axis_lattice_size(0); ++a) {
    if (!grid->axis_inside(0, a)) continue;
    const Complex zp = grid->axis_coord(0, a);
    slice_dev = std::max(slice_dev, std::abs(F(zp, Complex(0, 0)) - cfg.slice_f(zp)));
  }
  if (slice_dev > 1e-8)
    throw std::invalid_argument("ot_extend_check: extension does not restrict to the slice data");

  const double h2 = grid->spacing(1);
  const double cut = 2.0 * h2;
  const double w = grid->cell_weight();

  double lhs_main = 0.0;
  double sup_density = 0.0;
  std::vector<Complex> z(2);
  for (int64_t k = 0; k < grid->node_count(); ++k) {
    grid->node_coords(k, z);
    const double fe = std::norm(F(z[0], z[1])) * std::exp(-cfg.phi.eval_at(z));
    sup_density = std::max(sup_density, fe);
    const double r = std::abs(z[1]);
    if (r < cut) continue;
    const double lg = std::log(r * r);
    lhs_main += fe / (r * r * lg * lg);
  }
  lhs_main *= w;

  // Analytic tail over |z_n| < 2h: Int 2 pi r dr / (r^2 (log r^2)^2) = pi/(2 log(1/2h)).
  const double tail_kernel = kPi / (2.0 * std::log(1.0 / cut));
  const double h0 = grid->spacing(0);
  double slice_area = 0.0;
  double rhs_slice = 0.0;
  for (int64_t a = 0; a < grid->axis_lattice_size(0); ++a) {
    if (!grid->axis_inside(0, a)) continue;
    slice_area += h0 * h0;
    const Complex zp = grid->axis_coord(0, a);
    const Complex zpt[2] = {zp, Complex(0, 0)};
    rhs_slice += std::norm(cfg.slice_f(zp)) * std::exp(-cfg.phi.eval_at(zpt));
  }
  rhs_slice *= h0 * h0;
  const double tail = tail_kernel * sup_density * slice_area;
  const double lhs_upper = lhs_main + tail;

  const double factor = 8.0 * cfg.c_prime * cfg.chen_C;
  const double rhs = factor * rhs_slice;

  nlohmann::ordered_json params;
  params["lhs_main"] = lhs_main;
  params["singular_tail_bound"] = tail;
  params["rhs_slice_integral"] = rhs_slice;
  params["chen_C"] = cfg.chen_C;
  params["c_prime"] = cfg.c_prime;
  params["factor_8CpC"] = factor;
  params["excluded_radius"] = cut;
  return Certificate::make("ot_extension_estimate", lhs_upper, rhs, 0.0, "", params);
}

std::vector<double> lp_iteration(double A0, double C0, double p, int steps) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("lp_iteration: p in (0,2] required");
  if (!(A0 > 0.0 && C0 > 0.0)) throw std::invalid_argument("lp_iteration: positive constants");
  std::vector<double> a(static_cast<size_t>(steps) + 1);
  a[0] = A0;
  for (int i = 1; i <= steps; ++i)
    a[size_t(i)] = a[size_t(i - 1)] * std::pow(C0 / a[size_t(i - 1)], p / 2.0);
  return a;
}

Certificate lp_breakdown_exponents(int n, double p, double q, std::span<const double> deltas) {
  if (!(p > 0.0) || !(q > 0.0))
    throw std::invalid_argument("lp_breakdown_exponents: positive exponents required");
  const double lhs_exp = (double(n) * q + 2.0) / ((double(n) + 1.0) * q);
  const double rhs_exp = 2.0 / p;
  const double cn = std::pow(double(n) * q + 2.0, -1.0 / q);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const double d : deltas) {
    rows.push_back({{"delta", d},
                    {"extension_lp_norm", std::pow(d, rhs_exp)},
                    {"slice_lq_norm", cn * std::pow(d, lhs_exp)}});
  }
  nlohmann::ordered_json params;
  params["n"] = n;
  params["p"] = p;
  params["q"] = q;
  params["necessary_condition"] = "2/p >= (nq+2)/((n+1)q)";
  params["first_example_p_le_q"] = (p <= q);
  params["model_norms"] = rows;
  return Certificate::make("lp_breakdown_exponents", lhs_exp, rhs_exp, 1e-12, "", params);
}

Certificate openness_threshold_demo(double p, int k, double alpha, int j_max) {
  if (!(alpha > 0.0) || !(p > 0.0))
    throw std::invalid_argument("openness_threshold_demo: alpha > 0 and p > 0 required");
  const double e = p * double(k) - 2.0 * alpha;
  const bool boundary = std::abs(e + 2.0) <= 1e-12;
  const bool analytic_finite = e > -2.0 && !boundary;

  // Dyadic annuli quadrature of int |z|^{pk} e^{-2 alpha log|z|} = int r^{e} dlambda.
  const int levels = 40;
  std::vector<double> contrib(static_cast<size_t>(levels));
  for (int l = 0; l < levels; ++l) {
    const double r1 = std::pow(2.0, -double(l));
    const double r0 = 0.5 * r1;
    contrib[size_t(l)] =
        2.0 * kPi * simpson([&](double r) { return std::pow(r, e + 1.0); }, r0, r1, 64);
  }
  const double ratio = contrib[levels - 1] / contrib[levels - 2];
  const bool numeric_finite = ratio < 0.999;
  const bool blow_up = ratio >= 2.0 - 1e-9;

  // Truncated weights keep every integral finite.
  nlohmann::ordered_json phij = nlohmann::ordered_json::array();
  for (const int j : {1, j_max}) {
    // phi_j = max(2 alpha log|z|, -j): integrand r^{pk} e^{-phi_j}
    auto integ = [&](double r) {
      const double ph = std::max(2.0 * alpha * std::log(r), -double(j));
      return std::pow(r, p * double(k) + 1.0) * std::exp(-ph);
    };
    const double v = 2.0 * kPi * simpson(integ, 1e-9, 1.0, 8192);
    phij.push_back({{"j", j}, {"integral", v}, {"finite", std::isfinite(v)}});
  }

  nlohmann::ordered_json params;
  params["p"] = p;
  params["k"] = k;
  params["alpha"] = alpha;
  params["exponent_pk_minus_2alpha"] = e;
  params["analytic_finite"] = analytic_finite;
  params["boundary_log_divergence"] = boundary;
  params["numeric_finite"] = numeric_finite;
  params["annulus_ratio"] = ratio;
  params["divergence_blow_up_x2"] = blow_up;
  params["truncated_weights"] = phij;

  const bool agree = (numeric_finite == analytic_finite);
  return Certificate::make("openness_threshold", agree ? 0.0 : 1.0, 0.0, 0.0,
                           "pk-2alpha=" + std::to_string(e), params);
}

} // namespace scv
