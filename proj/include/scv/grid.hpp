#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scv/types.hpp"

namespace scv {

enum class DomainKind { Disc, Polydisc, Product, Annulus };

struct AxisDisc {
  Complex center;
  double radius;
};

// Model domains: discs, polydiscs, products of discs, annuli.
class DomainSpec {
 public:
  static DomainSpec disc(Complex center, double radius);
  static DomainSpec polydisc(std::vector<Complex> centers, std::vector<double> radii);
  static DomainSpec product(std::vector<AxisDisc> discs);
  static DomainSpec annulus(Complex center, double r_inner, double r_outer);

  DomainKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(axes_.size()); }
  const std::vector<AxisDisc>& axes() const { return axes_; }
  double inner_radius() const { return inner_radius_; }

  bool contains(std::span<const Complex> z) const;

  nlohmann::ordered_json to_json() const;
  static DomainSpec from_json(const nlohmann::json& j);

 private:
  DomainSpec() = default;
  DomainKind kind_ = DomainKind::Disc;
  std::vector<AxisDisc> axes_;
  double inner_radius_ = 0.0; // annulus only
};

// Euclidean distance from an interior point to the complement of the domain.
double boundary_distance(const DomainSpec& domain, std::span<const Complex> point);

// Tensor lattice over the squares covering each axis disc, nodes outside the
// domain masked out. Immutable after construction.
class Grid {
 public:
  Grid(DomainSpec domain, std::vector<int> nodes_per_axis);

  const DomainSpec& domain() const { return domain_; }
  int dim() const { return static_cast<int>(nodes_per_axis_.size()); }
  int nodes_per_axis(int axis) const { return nodes_per_axis_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  double max_spacing() const;

  int64_t axis_lattice_size(int axis) const {
    return int64_t(nodes_per_axis_[axis]) * nodes_per_axis_[axis];
  }
  int64_t full_size() const { return full_size_; }
  int64_t node_count() const { return int64_t(full_of_compact_.size()); }
  double cell_weight() const { return cell_weight_; }
  double quad_weight(int64_t /*compact*/) const { return cell_weight_; }

  // Per-axis lattice index a in [0, m^2): a = ix*m + iy.
  Complex axis_coord(int axis, int64_t a) const;
  bool axis_inside(int axis, int64_t a) const { return axis_mask_[axis][size_t(a)] != 0; }
  const std::vector<uint8_t>& axis_mask(int axis) const { return axis_mask_[axis]; }

  int64_t full_index(std::span<const int64_t> per_axis) const;
  void decode_full(int64_t full, std::span<int64_t> per_axis) const;
  int32_t compact_of_full(int64_t full) const { return compact_of_full_[size_t(full)]; }
  int64_t full_of_compact(int64_t compact) const { return full_of_compact_[size_t(compact)]; }

  void node_coords(int64_t compact, std::span<Complex> out) const;
  CVector node(int64_t compact) const;

  // Steps one axis lattice position by (dx, dy); -1 when off the lattice.
  int64_t shift_full(int64_t full, int axis, int dx, int dy) const;

 private:
  DomainSpec domain_;
  std::vector<int> nodes_per_axis_;
  std::vector<double> h_;
  std::vector<std::vector<uint8_t>> axis_mask_; // per axis, length m^2
  std::vector<int64_t> stride_;                 // stride of axis lattice index in full index
  int64_t full_size_ = 0;
  double cell_weight_ = 0.0;
  std::vector<int32_t> compact_of_full_;
  std::vector<int64_t> full_of_compact_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const DomainSpec& domain, std::vector<int> nodes_per_axis);

struct ScalarField {
  GridPtr grid;
  CVector values; // one per unmasked node

  Complex& operator[](int64_t k) { return values[size_t(k)]; }
  const Complex& operator[](int64_t k) const { return values[size_t(k)]; }
};

ScalarField zero_field(const GridPtr& grid);
ScalarField sample(const std::function<Complex(std::span<const Complex>)>& fn, const GridPtr& grid);
Complex integrate(const ScalarField& field);

// Nodes whose full (2·margin+1)-wide lattice neighborhood on every axis is unmasked.
std::vector<uint8_t> interior_mask(const Grid& grid, int margin_cells);

} // namespace scv
