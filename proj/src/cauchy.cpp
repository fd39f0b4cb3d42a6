#include "scv/cauchy.hpp"

#include <cmath>
#include <stdexcept>

#include "scv/wirtinger.hpp"

namespace scv {

ContourGrid::ContourGrid(Complex c, double r, int nodes) : center(c), radius(r), m(nodes) {
  if (m < 16) throw std::invalid_argument("ContourGrid: need at least 16 angular nodes");
  if (!(r > 0.0)) throw std::invalid_argument("ContourGrid: radius must be positive");
}

Complex ContourGrid::node(int k) const {
  const double th = 2.0 * kPi * double(k) / double(m);
  return center + radius * Complex(std::cos(th), std::sin(th));
}

CVector ContourGrid::sample(const std::function<Complex(Complex)>& u) const {
  CVector v(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) v[size_t(k)] = u(node(k));
  return v;
}

namespace {

// Bilinear interpolation of a field (and its FD Wirtinger derivatives) at an
// off-lattice point of a one-variable grid. Requires the four surrounding
// lattice nodes to be unmasked.
struct InterpolatedJet {
  Complex g, gz, gzb;
};

std::optional<InterpolatedJet> interpolate_jet(const ScalarField& f, const ScalarField& fz,
                                               const ScalarField& fzb, Complex zeta) {
  const Grid& g = *f.grid;
  const int m = g.nodes_per_axis(0);
  const auto& ax = g.domain().axes()[0];
  const double h = g.spacing(0);
  const double fx = (zeta.real() - (ax.center.real() - ax.radius)) / h;
  const double fy = (zeta.imag() - (ax.center.imag() - ax.radius)) / h;
  const int ix = int(std::floor(fx)), iy = int(std::floor(fy));
  if (ix < 0 || iy < 0 || ix + 1 >= m || iy + 1 >= m) return std::nullopt;
  const double tx = fx - ix, ty = fy - iy;
  int32_t c[4];
  const int64_t base = int64_t(ix) * m + iy;
  c[0] = g.compact_of_full(base);
  c[1] = g.compact_of_full(base + m);     // +x
  c[2] = g.compact_of_full(base + 1);     // +y
  c[3] = g.compact_of_full(base + m + 1); // +x+y
  for (int i = 0; i < 4; ++i)
    if (c[i] < 0) return std::nullopt;
  auto lerp = [&](const ScalarField& field) {
    return (1 - tx) * (1 - ty) * field[c[0]] + tx * (1 - ty) * field[c[1]] +
           (1 - tx) * ty * field[c[2]] + tx * ty * field[c[3]];
  };
  return InterpolatedJet{lerp(f), lerp(fz), lerp(fzb)};
}

// (-1/pi) Int (g(s) - g(zeta) - gz(zeta)(s-zeta) - gzb(zeta)conj(s-zeta))/(s-zeta)
// as a lattice sum, plus the three Taylor moments integrated in closed form
// over the exact disc.
Complex transform_at(const ScalarField& phi, const ScalarField& phz, const ScalarField& phzb,
                     Complex zeta) {
  const Grid& g = *phi.grid;
  const auto& ax = g.domain().axes()[0];
  const double h = g.spacing(0);
  const double w = g.cell_weight();

  CVector zv = {zeta};
  const bool inside = g.domain().contains(std::span<const Complex>(zv));
  if (!inside) {
    Complex acc(0.0, 0.0);
    for (int64_t k = 0; k < g.node_count(); ++k) {
      const Complex s = g.axis_coord(0, g.full_of_compact(k));
      acc += phi[k] / (s - zeta);
    }
    return acc * (-w / kPi);
  }

  const auto jet = interpolate_jet(phi, phz, phzb, zeta);
  if (!jet) throw std::runtime_error("cauchy_transform: point too close to the mask edge");
  Complex acc(0.0, 0.0);
  for (int64_t k = 0; k < g.node_count(); ++k) {
    const Complex s = g.axis_coord(0, g.full_of_compact(k));
    const Complex d = s - zeta;
    if (std::abs(d) < 0.5 * h) continue;
    acc += (phi[k] - jet->g - jet->gz * d - jet->gzb * std::conj(d)) / d;
  }
  const Complex zc = std::conj(zeta - ax.center);
  return acc * (-w / kPi) + jet->g * zc - jet->gz * ax.radius * ax.radius -
         jet->gzb * zc * zc * 0.5;
}

} // namespace

Complex cauchy_integral(std::span<const Complex> u_boundary, const ScalarField* dbar_u,
                        Complex zeta, const ContourGrid& contour, const Grid* area_grid) {
  if (int(u_boundary.size()) != contour.m)
    throw std::invalid_argument("cauchy_integral: boundary sample count mismatch");
  const double dist = contour.radius - std::abs(zeta - contour.center);
  double h = area_grid ? area_grid->spacing(0) : contour.radius / contour.m;
  if (!(dist >= 3.0 * h))
    throw std::invalid_argument("cauchy_integral: zeta outside or too close to the contour");

  // (1/2*pi*i) Int u(z)/(z-zeta) dz with z = c + R e^{i t}, dz = i R e^{i t} dt
  Complex acc(0.0, 0.0);
  for (int k = 0; k < contour.m; ++k) {
    const Complex z = contour.node(k);
    acc += u_boundary[size_t(k)] * (z - contour.center) / (z - zeta);
  }
  Complex result = acc / double(contour.m);

  if (dbar_u != nullptr) {
    if (area_grid == nullptr || dbar_u->grid.get() != area_grid)
      throw std::invalid_argument("cauchy_integral: area term needs dbar_u sampled on area_grid");
    const ScalarField dz = d_dz(*dbar_u, 0);
    const ScalarField dzb = d_dzbar(*dbar_u, 0);
    result += transform_at(*dbar_u, dz, dzb, zeta);
  }
  return result;
}

Complex cauchy_transform(const ScalarField& phi, Complex zeta) {
  if (phi.grid->dim() != 1)
    throw std::invalid_argument("cauchy_transform: one-variable grids only");
  const ScalarField pz = d_dz(phi, 0);
  const ScalarField pzb = d_dzbar(phi, 0);
  return transform_at(phi, pz, pzb, zeta);
}

AxisTransformTables build_axis_tables(const Grid& grid, int axis) {
  AxisTransformTables t;
  t.m = grid.nodes_per_axis(axis);
  t.h = grid.spacing(axis);
  t.center = grid.domain().axes()[size_t(axis)].center;
  t.radius = grid.domain().axes()[size_t(axis)].radius;
  const int m = t.m;
  const double w = t.h * t.h;
  const int tw = 2 * m - 1;
  t.k1.assign(size_t(tw) * tw, Complex(0.0, 0.0));
  t.k2.assign(size_t(tw) * tw, Complex(0.0, 0.0));
  for (int dx = -(m - 1); dx <= m - 1; ++dx) {
    for (int dy = -(m - 1); dy <= m - 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const Complex d(t.h * dx, t.h * dy);
      const size_t idx = size_t(dx + m - 1) * tw + size_t(dy + m - 1);
      t.k1[idx] = (-1.0 / kPi) * w / d;
      t.k2[idx] = (-1.0 / kPi) * w * std::conj(d) / d;
    }
  }
  const auto& mask = grid.axis_mask(axis);
  const int64_t lat = grid.axis_lattice_size(axis);
  t.t1.assign(size_t(lat), Complex(0.0, 0.0));
  t.t2.assign(size_t(lat), Complex(0.0, 0.0));
  double area = 0.0;
  for (int64_t a = 0; a < lat; ++a) area += mask[size_t(a)] ? w : 0.0;
  t.masked_area = area;
#pragma omp parallel for schedule(static)
  for (int64_t tt = 0; tt < lat; ++tt) {
    const int txi = int(tt / m), tyi = int(tt % m);
    Complex s1(0.0, 0.0), s2(0.0, 0.0);
    for (int64_t ss = 0; ss < lat; ++ss) {
      if (!mask[size_t(ss)]) continue;
      const int sxi = int(ss / m), syi = int(ss % m);
      const size_t idx = size_t(sxi - txi + m - 1) * tw + size_t(syi - tyi + m - 1);
      s1 += t.k1[idx];
      s2 += t.k2[idx];
    }
    t.t1[size_t(tt)] = s1;
    t.t2[size_t(tt)] = s2;
  }
  return t;
}

void transform_slice(const AxisTransformTables& t, const std::vector<uint8_t>& axis_mask,
                     std::span<const Complex> g, std::span<const Complex> gz,
                     std::span<const Complex> gzb, std::span<Complex> out) {
  const int m = t.m;
  const int tw = 2 * m - 1;
  const int64_t lat = int64_t(m) * m;
  const double w = t.h * t.h;
#pragma omp parallel for schedule(static)
  for (int64_t tt = 0; tt < lat; ++tt) {
    if (!axis_mask[size_t(tt)]) {
      out[size_t(tt)] = Complex(0.0, 0.0);
      continue;
    }
    const int txi = int(tt / m), tyi = int(tt % m);
    Complex acc(0.0, 0.0);
    for (int sxi = 0; sxi < m; ++sxi) {
      const size_t row = size_t(sxi) * m;
      const size_t krow = size_t(sxi - txi + m - 1) * tw + size_t(m - 1 - tyi);
      for (int syi = 0; syi < m; ++syi) {
        acc += g[row + syi] * t.k1[krow + syi];
      }
    }
    const Complex zt = t.center + Complex(-t.radius + t.h * txi, -t.radius + t.h * tyi);
    const Complex zc = std::conj(zt - t.center);
    const Complex a = g[size_t(tt)];
    const Complex az = gz[size_t(tt)];
    const Complex azb = gzb[size_t(tt)];
    acc -= a * t.t1[size_t(tt)];
    acc -= azb * t.t2[size_t(tt)];
    acc -= az * (-1.0 / kPi) * (t.masked_area - w);
    out[size_t(tt)] = acc + a * zc - az * t.radius * t.radius - azb * zc * zc * 0.5;
  }
}

ScalarField solve_dbar_1d(const ScalarField& phi, double* sup_residual) {
  const Grid& g = *phi.grid;
  if (g.dim() != 1) throw std::invalid_argument("solve_dbar_1d: one-variable grids only");
  const auto tables = build_axis_tables(g, 0);
  const ScalarField pz = d_dz(phi, 0);
  const ScalarField pzb = d_dzbar(phi, 0);
  const int64_t lat = g.axis_lattice_size(0);
  CVector gs(static_cast<size_t>(lat), Complex(0.0, 0.0));
  CVector gzs(static_cast<size_t>(lat), Complex(0.0, 0.0));
  CVector gzbs(static_cast<size_t>(lat), Complex(0.0, 0.0));
  for (int64_t k = 0; k < g.node_count(); ++k) {
    const int64_t a = g.full_of_compact(k);
    gs[size_t(a)] = phi[k];
    gzs[size_t(a)] = pz[k];
    gzbs[size_t(a)] = pzb[k];
  }
  CVector us(static_cast<size_t>(lat));
  transform_slice(tables, g.axis_mask(0), gs, gzs, gzbs, us);
  ScalarField u = zero_field(phi.grid);
  for (int64_t k = 0; k < g.node_count(); ++k) u[k] = us[size_t(g.full_of_compact(k))];

  if (sup_residual != nullptr) {
    const ScalarField du = d_dzbar(u, 0);
    const auto interior = interior_mask(g, 3);
    double worst = 0.0;
    for (int64_t k = 0; k < g.node_count(); ++k)
      if (interior[size_t(g.full_of_compact(k))])
        worst = std::max(worst, std::abs(du[k] - phi[k]));
    *sup_residual = worst;
  }
  return u;
}

BoundaryTensor sample_distinguished_boundary(
    const std::function<Complex(std::span<const Complex>)>& u, std::vector<Complex> centers,
    std::vector<double> radii, int m) {
  if (centers.size() != radii.size() || centers.empty())
    throw std::invalid_argument("sample_distinguished_boundary: axis count mismatch");
  if (m < 16) throw std::invalid_argument("sample_distinguished_boundary: m >= 16 required");
  BoundaryTensor b;
  b.centers = std::move(centers);
  b.radii = std::move(radii);
  b.m = m;
  const int n = int(b.centers.size());
  int64_t total = 1;
  for (int j = 0; j < n; ++j) total *= m;
  b.values.resize(size_t(total));
  std::vector<Complex> z(static_cast<size_t>(n));
  for (int64_t idx = 0; idx < total; ++idx) {
    int64_t rest = idx;
    for (int j = n - 1; j >= 0; --j) {
      const int k = int(rest % m);
      rest /= m;
      const double th = 2.0 * kPi * double(k) / double(m);
      z[size_t(j)] = b.centers[size_t(j)] + b.radii[size_t(j)] * Complex(std::cos(th), std::sin(th));
    }
    b.values[size_t(idx)] = u(z);
  }
  return b;
}

PowerSeries power_series(const BoundaryTensor& boundary, std::vector<int> orders) {
  const int n = int(boundary.centers.size());
  if (int(orders.size()) != n) throw std::invalid_argument("power_series: order per axis required");
  const int m = boundary.m;
  PowerSeries ps;
  ps.orders = orders;
  int64_t count = 1;
  for (int o : orders) count *= int64_t(o) + 1;
  ps.a.assign(size_t(count), Complex(0.0, 0.0));

  // a_alpha = (1/(2 pi i))^n Int u / (zeta^alpha zeta_1..zeta_n) dzeta
  //        = m^{-n} sum_k u(theta_k) prod_j r_j^{-alpha_j} e^{-i alpha_j theta_kj}
  int64_t total = 1;
  for (int j = 0; j < n; ++j) total *= m;
  std::vector<int> alpha(static_cast<size_t>(n), 0);
  for (int64_t ai = 0; ai < count; ++ai) {
    int64_t rest = ai;
    for (int j = n - 1; j >= 0; --j) {
      alpha[size_t(j)] = int(rest % (orders[size_t(j)] + 1));
      rest /= orders[size_t(j)] + 1;
    }
    Complex acc(0.0, 0.0);
    for (int64_t idx = 0; idx < total; ++idx) {
      int64_t r = idx;
      double phase = 0.0;
      for (int j = n - 1; j >= 0; --j) {
        const int k = int(r % m);
        r /= m;
        phase -= 2.0 * kPi * double(k) * alpha[size_t(j)] / double(m);
      }
      acc += boundary.values[size_t(idx)] * Complex(std::cos(phase), std::sin(phase));
    }
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale *= std::pow(boundary.radii[size_t(j)], alpha[size_t(j)]);
    double mn = 1.0;
    for (int j = 0; j < n; ++j) mn *= double(m);
    ps.a[size_t(ai)] = acc / (mn * scale);
  }
  return ps;
}

Complex PowerSeries::coeff(std::span<const int> alpha) const {
  int64_t idx = 0;
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] < 0 || alpha[j] > orders[j]) throw std::out_of_range("PowerSeries::coeff");
    idx = idx * (orders[j] + 1) + alpha[j];
  }
  return a[size_t(idx)];
}

Certificate cauchy_inequality_check(const PowerSeries& series, double M,
                                    std::span<const double> radii) {
  const int n = int(series.orders.size());
  int64_t count = 1;
  for (int o : series.orders) count *= int64_t(o) + 1;
  double worst = -std::numeric_limits<double>::infinity();
  std::string witness;
  for (int64_t ai = 0; ai < count; ++ai) {
    int64_t rest = ai;
    double ralpha = 1.0;
    std::string alpha_str;
    for (int j = n - 1; j >= 0; --j) {
      const int aj = int(rest % (series.orders[size_t(j)] + 1));
      rest /= series.orders[size_t(j)] + 1;
      ralpha *= std::pow(radii[size_t(j)], aj);
      alpha_str = std::to_string(aj) + (alpha_str.empty() ? "" : ",") + alpha_str;
    }
    const double lhs = std::abs(series.a[size_t(ai)]) * ralpha;
    if (lhs - M > worst) {
      worst = lhs - M;
      witness = "alpha=(" + alpha_str + ")";
    }
  }
  // pass iff |a_alpha| r^alpha <= M (1 + 1e-8) for every alpha
  return Certificate::make("cauchy_inequalities", worst + M, M * (1.0 + 1e-8), 0.0, witness,
                           {{"M", M}});
}

} // namespace scv
