#include "scv/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scv {

namespace {

enum class Dir { X, Y };

// Second-order difference along one real direction of one complex axis.
// Centered where both neighbors exist, else one-sided.
Complex fd_dir(const ScalarField& f, const Grid& g, int64_t full, int axis, Dir dir) {
  const double h = g.spacing(axis);
  const int dx = dir == Dir::X ? 1 : 0;
  const int dy = dir == Dir::Y ? 1 : 0;
  auto val = [&](int64_t fu) -> const Complex* {
    if (fu < 0) return nullptr;
    const int32_t c = g.compact_of_full(fu);
    return c >= 0 ? &f[c] : nullptr;
  };
  const Complex* c0 = val(full);
  const Complex* cp = val(g.shift_full(full, axis, dx, dy));
  const Complex* cm = val(g.shift_full(full, axis, -dx, -dy));
  if (cp && cm) return (*cp - *cm) / (2.0 * h);
  if (cp) {
    const Complex* cpp = val(g.shift_full(full, axis, 2 * dx, 2 * dy));
    if (cpp) return (-3.0 * *c0 + 4.0 * *cp - *cpp) / (2.0 * h);
  }
  if (cm) {
    const Complex* cmm = val(g.shift_full(full, axis, -2 * dx, -2 * dy));
    if (cmm) return (3.0 * *c0 - 4.0 * *cm + *cmm) / (2.0 * h);
  }
  throw std::runtime_error("finite difference: grid too small for a stencil at a mask edge");
}

ScalarField wirtinger(const ScalarField& f, int axis, double iy_sign) {
  const Grid& g = *f.grid;
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("wirtinger: axis out of range");
  ScalarField out = zero_field(f.grid);
  for (int64_t k = 0; k < g.node_count(); ++k) {
    const int64_t full = g.full_of_compact(k);
    const Complex dx = fd_dir(f, g, full, axis, Dir::X);
    const Complex dy = fd_dir(f, g, full, axis, Dir::Y);
    out[k] = 0.5 * (dx + Complex(0.0, iy_sign) * dy);
  }
  return out;
}

} // namespace

ScalarField d_dz(const ScalarField& field, int axis) { return wirtinger(field, axis, -1.0); }
ScalarField d_dzbar(const ScalarField& field, int axis) { return wirtinger(field, axis, 1.0); }

ScalarField laplacian(const ScalarField& field, int axis) {
  ScalarField g = d_dzbar(field, axis);
  ScalarField out = d_dz(g, axis);
  for (auto& v : out.values) v *= 4.0;
  return out;
}

int multiindex_sign(std::span<const int> from, std::span<const int> to) {
  if (from.size() != to.size()) return 0;
  const size_t n = from.size();
  std::vector<int> a(from.begin(), from.end());
  std::vector<int> b(to.begin(), to.end());
  {
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return 0;
    for (size_t i = 0; i + 1 < n; ++i)
      if (sa[i] == sa[i + 1]) return 0;
  }
  // permutation pi with a[i] = b[pi[i]]; parity by counting inversions
  std::vector<int> pos(n);
  for (size_t i = 0; i < n; ++i) {
    const auto it = std::find(b.begin(), b.end(), a[i]);
    pos[i] = int(it - b.begin());
  }
  int inv = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (pos[i] > pos[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

FormField FormField::scalar(ScalarField f) {
  FormField out;
  out.grid = f.grid;
  out.p = 0;
  out.q = 0;
  out.coeffs.emplace(std::make_pair(MultiIndex{}, MultiIndex{}), std::move(f));
  return out;
}

FormField FormField::zero_one(GridPtr grid, CVector per_axis_constants) {
  if (int(per_axis_constants.size()) != grid->dim())
    throw std::invalid_argument("zero_one: one constant per axis required");
  std::vector<ScalarField> fields;
  for (int j = 0; j < grid->dim(); ++j) {
    ScalarField f = zero_field(grid);
    std::fill(f.values.begin(), f.values.end(), per_axis_constants[size_t(j)]);
    fields.push_back(std::move(f));
  }
  return zero_one(std::move(fields));
}

FormField FormField::zero_one(std::vector<ScalarField> per_axis) {
  if (per_axis.empty()) throw std::invalid_argument("zero_one: empty coefficient list");
  FormField out;
  out.grid = per_axis[0].grid;
  out.p = 0;
  out.q = 1;
  for (int j = 0; j < int(per_axis.size()); ++j)
    out.coeffs.emplace(std::make_pair(MultiIndex{}, MultiIndex{j}), std::move(per_axis[size_t(j)]));
  return out;
}

const ScalarField* FormField::coeff(const MultiIndex& I, const MultiIndex& J) const {
  const auto it = coeffs.find(std::make_pair(I, J));
  return it == coeffs.end() ? nullptr : &it->second;
}

FormField dbar_form(const FormField& f) {
  const int n = f.grid->dim();
  if (f.q >= n)
    throw std::invalid_argument("dbar_form: degree overflow, q already equals the dimension");
  FormField out;
  out.grid = f.grid;
  out.p = f.p;
  out.q = f.q + 1;
  const double p_sign = f.p % 2 == 0 ? 1.0 : -1.0;
  for (const auto& [key, field] : f.coeffs) {
    const auto& [I, J] = key;
    for (int j = 0; j < n; ++j) {
      if (std::find(J.begin(), J.end(), j) != J.end()) continue;
      MultiIndex M = J;
      M.push_back(j);
      std::sort(M.begin(), M.end());
      MultiIndex jJ;
      jJ.push_back(j);
      jJ.insert(jJ.end(), J.begin(), J.end());
      const double sgn = p_sign * multiindex_sign(jJ, M);
      ScalarField term = d_dzbar(field, j);
      auto [it, inserted] = out.coeffs.emplace(std::make_pair(I, M), zero_field(f.grid));
      for (int64_t k = 0; k < f.grid->node_count(); ++k) it->second[k] += sgn * term[k];
    }
  }
  return out;
}

double cr_residual(const ScalarField& field) {
  const Grid& g = *field.grid;
  const auto interior = interior_mask(g, 3);
  double worst = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const ScalarField d = d_dzbar(field, axis);
    for (int64_t k = 0; k < g.node_count(); ++k)
      if (interior[size_t(g.full_of_compact(k))]) worst = std::max(worst, std::abs(d[k]));
  }
  return worst;
}

double default_levi_fd_step(std::span<const Complex> point) {
  double norm2 = 0.0;
  for (const Complex& z : point) norm2 += std::norm(z);
  return 1e-4 * (1.0 + std::sqrt(norm2));
}

LeviForm levi_form_fn(const std::function<double(std::span<const Complex>)>& weight,
                      std::span<const Complex> point, double h_fd) {
  const int n = int(point.size());
  if (h_fd <= 0.0) h_fd = default_levi_fd_step(point);
  CVector z(point.begin(), point.end());
  auto at = [&](int coord, double d1, int coord2, double d2) {
    CVector w = z;
    const int axis1 = coord / 2;
    w[size_t(axis1)] += (coord % 2 == 0) ? Complex(d1, 0.0) : Complex(0.0, d1);
    const int axis2 = coord2 / 2;
    w[size_t(axis2)] += (coord2 % 2 == 0) ? Complex(d2, 0.0) : Complex(0.0, d2);
    return weight(w);
  };
  const double f0 = weight(z);
  // D[a][b] = second mixed difference over real coordinates a, b
  auto second = [&](int a, int b) -> double {
    if (a == b) {
      return (at(a, h_fd, a, 0.0) - 2.0 * f0 + at(a, -h_fd, a, 0.0)) / (h_fd * h_fd);
    }
    return (at(a, h_fd, b, h_fd) - at(a, h_fd, b, -h_fd) - at(a, -h_fd, b, h_fd) +
            at(a, -h_fd, b, -h_fd)) /
           (4.0 * h_fd * h_fd);
  };
  CVector entries(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      const double re = second(xj, xk) + second(yj, yk);
      const double im = second(xj, yk) - second(yj, xk);
      entries[size_t(j) * n + k] = 0.25 * Complex(re, im);
    }
  }
  LeviForm lf{CVector(point.begin(), point.end()), HermitianMatrix::from_entries(n, entries)};
  return lf;
}

LeviForm levi_form(const Expr& weight, std::span<const Complex> point, double h_fd) {
  return levi_form_fn([&weight](std::span<const Complex> z) { return weight.eval_at(z); }, point,
                      h_fd);
}

double weighted_lp_norm(const FormField& f, const Expr& phi, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("weighted_lp_norm: r >= 1 required");
  const Grid& g = *f.grid;
  std::vector<Complex> z(static_cast<size_t>(g.dim()));
  double acc = 0.0;
  for (int64_t k = 0; k < g.node_count(); ++k) {
    double p = 0.0;
    for (const auto& [key, field] : f.coeffs) p += std::pow(std::abs(field[k]), r);
    if (p == 0.0) continue;
    g.node_coords(k, z);
    acc += p * std::exp(-phi.eval_at(z));
  }
  return std::pow(acc * g.cell_weight(), 1.0 / r);
}

Complex pairing(const FormField& f, const FormField& g, const Expr& phi) {
  if (f.p != g.p || f.q != g.q) throw std::invalid_argument("pairing: degree mismatch");
  if (f.grid.get() != g.grid.get()) throw std::invalid_argument("pairing: grid mismatch");
  const Grid& gr = *f.grid;
  std::vector<Complex> z(static_cast<size_t>(gr.dim()));
  Complex acc(0.0, 0.0);
  for (int64_t k = 0; k < gr.node_count(); ++k) {
    Complex s(0.0, 0.0);
    for (const auto& [key, field] : f.coeffs) {
      const ScalarField* other = g.coeff(key.first, key.second);
      if (other != nullptr) s += field[k] * std::conj((*other)[k]);
    }
    if (s == Complex(0.0, 0.0)) continue;
    gr.node_coords(k, z);
    acc += s * std::exp(-phi.eval_at(z));
  }
  return acc * gr.cell_weight();
}

} // namespace scv
