#include "scv/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "scv/psh.hpp"

namespace scv {

namespace {

// Monomial exponent tuples with total degree in [1, D].
std::vector<std::vector<int>> monomials_up_to(int n, int D) {
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(static_cast<size_t>(n), 0);
  // odometer over per-axis degrees bounded by D, filtered by total degree
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total >= 1 && total <= D) out.push_back(alpha);
    int j = n - 1;
    while (j >= 0) {
      if (++alpha[size_t(j)] <= D) break;
      alpha[size_t(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

Complex eval_poly(std::span<const std::vector<int>> monos, std::span<const Complex> coeffs,
                  std::span<const Complex> z) {
  Complex acc(0.0, 0.0);
  for (size_t t = 0; t < monos.size(); ++t) {
    Complex term = coeffs.empty() ? Complex(1.0, 0.0) : coeffs[t];
    for (size_t j = 0; j < z.size(); ++j)
      for (int e = 0; e < monos[t][j]; ++e) term *= z[j];
    acc += term;
  }
  return acc;
}

} // namespace

HullResult poly_hull_membership(const CompactSample& K, const GridPtr& candidates, int degree,
                                int random_count, uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("poly_hull_membership: degree >= 1 required");
  if (K.points.empty()) throw std::invalid_argument("poly_hull_membership: empty compact");
  const int n = candidates->dim();
  for (const auto& p : K.points)
    if (int(p.size()) != n)
      throw std::invalid_argument("poly_hull_membership: sample dimension mismatch");

  const auto monos = monomials_up_to(n, degree);
  // family: each single monomial, then random_count random degree-<=D polynomials
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw_coeff = [&]() {
    // uniform on the unit disc by rejection
    for (;;) {
      const double x = unit(rng), y = unit(rng);
      if (x * x + y * y <= 1.0) return Complex(x, y);
    }
  };
  std::vector<CVector> random_polys;
  for (int t = 0; t < random_count; ++t) {
    CVector c(monos.size());
    for (auto& v : c) v = draw_coeff();
    random_polys.push_back(std::move(c));
  }

  HullResult res;
  res.degree = degree;
  res.family_size = int(monos.size()) + random_count;
  res.seed = seed;
  res.retained.assign(size_t(candidates->node_count()), 1);

  std::vector<Complex> z(static_cast<size_t>(n));
  auto apply_function = [&](const std::function<Complex(std::span<const Complex>)>& f) {
    double supK = 0.0;
    for (const auto& p : K.points) supK = std::max(supK, std::abs(f(p)));
    const double bound = supK * (1.0 + 1e-9);
    for (int64_t k = 0; k < candidates->node_count(); ++k) {
      if (!res.retained[size_t(k)]) continue;
      candidates->node_coords(k, z);
      if (std::abs(f(z)) > bound) res.retained[size_t(k)] = 0;
    }
  };

  for (size_t t = 0; t < monos.size(); ++t) {
    std::span<const std::vector<int>> one(&monos[t], 1);
    apply_function([&](std::span<const Complex> w) { return eval_poly(one, {}, w); });
  }
  for (const auto& coeffs : random_polys)
    apply_function([&](std::span<const Complex> w) { return eval_poly(monos, coeffs, w); });

  // Small compacts admit per-coordinate vanishing products of degree <= D;
  // their sup over K is zero, which pins the retained set to the sample cells.
  if (int(K.points.size()) <= degree) {
    for (int j = 0; j < n; ++j) {
      apply_function([&](std::span<const Complex> w) {
        Complex prod(1.0, 0.0);
        for (const auto& p : K.points) prod *= w[size_t(j)] - p[size_t(j)];
        return prod;
      });
      res.family_size += 1;
    }
  }
  return res;
}

HullResult psh_hull_membership(const CompactSample& K, const GridPtr& candidates,
                               std::span<const Expr> family, std::span<const CVector> psh_probes) {
  const int n = candidates->dim();
  HullResult res;
  res.family_size = int(family.size());
  res.retained.assign(size_t(candidates->node_count()), 1);
  for (const Expr& u : family) {
    const Certificate c = psh_test(u, psh_probes);
    if (!c.pass)
      throw std::invalid_argument("psh_hull_membership: family member fails the psh test (" +
                                  u.print() + ")");
  }
  std::vector<Complex> z(static_cast<size_t>(n));
  for (const Expr& u : family) {
    double supK = -std::numeric_limits<double>::infinity();
    for (const auto& p : K.points) supK = std::max(supK, u.eval_at(p));
    for (int64_t k = 0; k < candidates->node_count(); ++k) {
      if (!res.retained[size_t(k)]) continue;
      candidates->node_coords(k, z);
      if (u.eval_at(z) > supK + 1e-9) res.retained[size_t(k)] = 0;
    }
  }
  return res;
}

Certificate hull_distance_check(const CompactSample& K, const HullResult& retained,
                                const GridPtr& candidates, const DomainSpec& ambient) {
  double dK = std::numeric_limits<double>::infinity();
  for (const auto& p : K.points) dK = std::min(dK, boundary_distance(ambient, p));
  double dHull = std::numeric_limits<double>::infinity();
  std::vector<Complex> z(static_cast<size_t>(candidates->dim()));
  int64_t count = 0;
  for (int64_t k = 0; k < candidates->node_count(); ++k) {
    if (!retained.retained[size_t(k)]) continue;
    ++count;
    candidates->node_coords(k, z);
    if (ambient.contains(z)) dHull = std::min(dHull, boundary_distance(ambient, z));
  }
  const double h = candidates->max_spacing();
  nlohmann::ordered_json params;
  params["d_K"] = dK;
  params["d_hull"] = dHull;
  params["retained_nodes"] = count;
  params["family_size"] = retained.family_size;
  params["degree"] = retained.degree;
  params["seed"] = retained.seed;
  // pass iff d(hull) >= d(K) - 2h
  return Certificate::make("hull_distance_preserved", dK - 2.0 * h, dHull, 0.0, "", params);
}

} // namespace scv
