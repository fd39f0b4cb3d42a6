#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scv/certificate.hpp"
#include "scv/expr.hpp"
#include "scv/grid.hpp"

namespace scv {

struct CompactSample {
  std::vector<CVector> points;
  std::string label;
};

struct HullResult {
  std::vector<uint8_t> retained; // per compact node of the candidate grid
  int degree = 0;
  int family_size = 0;
  uint64_t seed = 0;
};

// Outer approximation of the holomorphic hull by monomials of total degree
// <= D plus seeded random polynomials.
HullResult poly_hull_membership(const CompactSample& K, const GridPtr& candidates, int degree,
                                int random_count = 200, uint64_t seed = 0x5c01ab5ULL);

// Outer approximation of the P(Omega) hull by a supplied psh family; every
// family member must pass psh_test at the supplied probes.
HullResult psh_hull_membership(const CompactSample& K, const GridPtr& candidates,
                               std::span<const Expr> family, std::span<const CVector> psh_probes);

Certificate hull_distance_check(const CompactSample& K, const HullResult& retained,
                                const GridPtr& candidates, const DomainSpec& ambient);

} // namespace scv
