#include "scv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scv {

namespace {

void check_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("domain radius must be strictly positive");
}

} // namespace

DomainSpec DomainSpec::disc(Complex center, double radius) {
  check_radius(radius);
  DomainSpec d;
  d.kind_ = DomainKind::Disc;
  d.axes_ = {{center, radius}};
  return d;
}

DomainSpec DomainSpec::polydisc(std::vector<Complex> centers, std::vector<double> radii) {
  if (centers.size() != radii.size() || centers.empty())
    throw std::invalid_argument("polydisc: centers/radii axis count mismatch");
  DomainSpec d;
  d.kind_ = DomainKind::Polydisc;
  for (size_t j = 0; j < centers.size(); ++j) {
    check_radius(radii[j]);
    d.axes_.push_back({centers[j], radii[j]});
  }
  return d;
}

DomainSpec DomainSpec::product(std::vector<AxisDisc> discs) {
  if (discs.empty()) throw std::invalid_argument("product: needs at least one disc");
  DomainSpec d;
  d.kind_ = DomainKind::Product;
  for (const auto& a : discs) check_radius(a.radius);
  d.axes_ = std::move(discs);
  return d;
}

DomainSpec DomainSpec::annulus(Complex center, double r_inner, double r_outer) {
  check_radius(r_outer);
  if (!(r_inner > 0.0) || !(r_inner < r_outer))
    throw std::invalid_argument("annulus: requires 0 < r_inner < r_outer");
  DomainSpec d;
  d.kind_ = DomainKind::Annulus;
  d.axes_ = {{center, r_outer}};
  d.inner_radius_ = r_inner;
  return d;
}

bool DomainSpec::contains(std::span<const Complex> z) const {
  if (int(z.size()) != dimension()) throw std::invalid_argument("contains: dimension mismatch");
  switch (kind_) {
    case DomainKind::Annulus: {
      const double d = std::abs(z[0] - axes_[0].center);
      return d > inner_radius_ && d < axes_[0].radius;
    }
    default:
      for (size_t j = 0; j < axes_.size(); ++j)
        if (!(std::abs(z[j] - axes_[j].center) < axes_[j].radius)) return false;
      return true;
  }
}

nlohmann::ordered_json DomainSpec::to_json() const {
  nlohmann::ordered_json j;
  auto cpx = [](Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); };
  switch (kind_) {
    case DomainKind::Disc:
      j["kind"] = "disc";
      j["params"] = {{"center", cpx(axes_[0].center)}, {"radius", axes_[0].radius}};
      break;
    case DomainKind::Polydisc: {
      j["kind"] = "polydisc";
      auto cs = nlohmann::ordered_json::array();
      auto rs = nlohmann::ordered_json::array();
      for (const auto& a : axes_) {
        cs.push_back(cpx(a.center));
        rs.push_back(a.radius);
      }
      j["params"] = {{"centers", cs}, {"radii", rs}};
      break;
    }
    case DomainKind::Product: {
      j["kind"] = "product";
      auto ds = nlohmann::ordered_json::array();
      for (const auto& a : axes_)
        ds.push_back({{"center", cpx(a.center)}, {"radius", a.radius}});
      j["params"] = {{"discs", ds}};
      break;
    }
    case DomainKind::Annulus:
      j["kind"] = "annulus";
      j["params"] = {{"center", cpx(axes_[0].center)},
                     {"r_inner", inner_radius_},
                     {"r_outer", axes_[0].radius}};
      break;
  }
  return j;
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto& p = j.at("params");
  auto cpx = [](const nlohmann::json& v) { return Complex(v.at(0).get<double>(), v.at(1).get<double>()); };
  if (kind == "disc") return disc(cpx(p.at("center")), p.at("radius").get<double>());
  if (kind == "polydisc") {
    std::vector<Complex> cs;
    for (const auto& c : p.at("centers")) cs.push_back(cpx(c));
    std::vector<double> rs = p.at("radii").get<std::vector<double>>();
    return polydisc(std::move(cs), std::move(rs));
  }
  if (kind == "product") {
    std::vector<AxisDisc> ds;
    for (const auto& d : p.at("discs")) ds.push_back({cpx(d.at("center")), d.at("radius").get<double>()});
    return product(std::move(ds));
  }
  if (kind == "annulus")
    return annulus(cpx(p.at("center")), p.at("r_inner").get<double>(), p.at("r_outer").get<double>());
  throw std::invalid_argument("unknown domain kind: " + kind);
}

double boundary_distance(const DomainSpec& domain, std::span<const Complex> point) {
  if (!domain.contains(point)) throw std::invalid_argument("boundary_distance: point outside domain");
  const auto& axes = domain.axes();
  switch (domain.kind()) {
    case DomainKind::Annulus: {
      const double d = std::abs(point[0] - axes[0].center);
      return std::min(d - domain.inner_radius(), axes[0].radius - d);
    }
    default: {
      double best = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < axes.size(); ++j)
        best = std::min(best, axes[j].radius - std::abs(point[j] - axes[j].center));
      return best;
    }
  }
}

Grid::Grid(DomainSpec domain, std::vector<int> nodes_per_axis)
    : domain_(std::move(domain)), nodes_per_axis_(std::move(nodes_per_axis)) {
  const int n = domain_.dimension();
  if (int(nodes_per_axis_.size()) != n)
    throw std::invalid_argument("build_grid: nodes_per_axis count does not match dimension");
  for (int m : nodes_per_axis_)
    if (m < 8) throw std::invalid_argument("build_grid: need at least 8 nodes per axis");

  h_.resize(n);
  axis_mask_.resize(n);
  stride_.resize(n);
  cell_weight_ = 1.0;
  full_size_ = 1;
  std::vector<Complex> probe(n);
  for (int j = 0; j < n; ++j) probe[j] = domain_.axes()[j].center;
  if (domain_.kind() == DomainKind::Annulus)
    probe[0] += 0.5 * (domain_.inner_radius() + domain_.axes()[0].radius);

  for (int j = n - 1; j >= 0; --j) {
    stride_[j] = full_size_;
    full_size_ *= axis_lattice_size(j);
  }
  for (int j = 0; j < n; ++j) {
    const int m = nodes_per_axis_[j];
    const double r = domain_.axes()[j].radius;
    h_[j] = 2.0 * r / (m - 1);
    cell_weight_ *= h_[j] * h_[j];
    axis_mask_[j].assign(size_t(m) * m, 0);
  }
  // Per-axis masks: for disc/polydisc/product the membership is a product of
  // per-axis disc tests; the annulus needs the joint test (n = 1 anyway).
  for (int j = 0; j < n; ++j) {
    const int m = nodes_per_axis_[j];
    for (int64_t a = 0; a < axis_lattice_size(j); ++a) {
      probe[j] = axis_coord(j, a);
      bool ok;
      if (domain_.kind() == DomainKind::Annulus) {
        const double d = std::abs(probe[j] - domain_.axes()[0].center);
        ok = d > domain_.inner_radius() && d < domain_.axes()[0].radius;
      } else {
        ok = std::abs(probe[j] - domain_.axes()[j].center) < domain_.axes()[j].radius;
      }
      axis_mask_[j][size_t(a)] = ok ? 1 : 0;
    }
    probe[j] = domain_.axes()[j].center;
    (void)m;
  }

  compact_of_full_.assign(size_t(full_size_), -1);
  std::vector<int64_t> per_axis(n, 0);
  for (int64_t f = 0; f < full_size_; ++f) {
    decode_full(f, per_axis);
    bool inside = true;
    for (int j = 0; j < n && inside; ++j) inside = axis_mask_[j][size_t(per_axis[j])] != 0;
    if (inside) {
      compact_of_full_[size_t(f)] = int32_t(full_of_compact_.size());
      full_of_compact_.push_back(f);
    }
  }
}

double Grid::max_spacing() const { return *std::max_element(h_.begin(), h_.end()); }

Complex Grid::axis_coord(int axis, int64_t a) const {
  const int m = nodes_per_axis_[axis];
  const auto& ax = domain_.axes()[axis];
  const int64_t ix = a / m, iy = a % m;
  return ax.center + Complex(-ax.radius + h_[axis] * double(ix), -ax.radius + h_[axis] * double(iy));
}

int64_t Grid::full_index(std::span<const int64_t> per_axis) const {
  int64_t f = 0;
  for (int j = 0; j < dim(); ++j) f += per_axis[j] * stride_[j];
  return f;
}

void Grid::decode_full(int64_t full, std::span<int64_t> per_axis) const {
  for (int j = 0; j < dim(); ++j) {
    per_axis[j] = full / stride_[j];
    full -= per_axis[j] * stride_[j];
  }
}

void Grid::node_coords(int64_t compact, std::span<Complex> out) const {
  int64_t f = full_of_compact(compact);
  for (int j = 0; j < dim(); ++j) {
    const int64_t a = f / stride_[j];
    f -= a * stride_[j];
    out[j] = axis_coord(j, a);
  }
}

CVector Grid::node(int64_t compact) const {
  CVector z(dim());
  node_coords(compact, z);
  return z;
}

int64_t Grid::shift_full(int64_t full, int axis, int dx, int dy) const {
  const int m = nodes_per_axis_[axis];
  const int64_t a = (full / stride_[axis]) % axis_lattice_size(axis);
  const int64_t ix = a / m + dx, iy = a % m + dy;
  if (ix < 0 || ix >= m || iy < 0 || iy >= m) return -1;
  return full + ((ix * m + iy) - a) * stride_[axis];
}

GridPtr build_grid(const DomainSpec& domain, std::vector<int> nodes_per_axis) {
  return std::make_shared<const Grid>(domain, std::move(nodes_per_axis));
}

ScalarField zero_field(const GridPtr& grid) {
  ScalarField f;
  f.grid = grid;
  f.values.assign(size_t(grid->node_count()), Complex(0.0, 0.0));
  return f;
}

ScalarField sample(const std::function<Complex(std::span<const Complex>)>& fn, const GridPtr& grid) {
  ScalarField f = zero_field(grid);
  std::vector<Complex> z(grid->dim());
  for (int64_t k = 0; k < grid->node_count(); ++k) {
    grid->node_coords(k, z);
    const Complex v = fn(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::runtime_error("sample: function evaluated to a non-finite value at a node");
    f[k] = v;
  }
  return f;
}

Complex integrate(const ScalarField& field) {
  const Grid& g = *field.grid;
  Complex acc(0.0, 0.0);
  for (int64_t k = 0; k < g.node_count(); ++k) acc += field[k];
  return acc * g.cell_weight();
}

std::vector<uint8_t> interior_mask(const Grid& grid, int margin_cells) {
  // Separable Chebyshev erosion: per axis, per direction, margin passes.
  std::vector<uint8_t> cur(static_cast<size_t>(grid.full_size()), 0);
  for (int64_t k = 0; k < grid.node_count(); ++k) cur[size_t(grid.full_of_compact(k))] = 1;
  std::vector<uint8_t> next(cur.size());
  for (int axis = 0; axis < grid.dim(); ++axis) {
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      for (int pass = 0; pass < margin_cells; ++pass) {
        for (int64_t f = 0; f < grid.full_size(); ++f) {
          if (!cur[size_t(f)]) {
            next[size_t(f)] = 0;
            continue;
          }
          const int64_t nb = grid.shift_full(f, axis, dx, dy);
          next[size_t(f)] = (nb >= 0 && cur[size_t(nb)]) ? 1 : 0;
        }
        std::swap(cur, next);
      }
    }
  }
  return cur;
}

} // namespace scv
