#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scv/certificate.hpp"
#include "scv/types.hpp"

namespace scv {

// Finite-dimensional weighted inner-product space:
// <x,y> = sum_k x_k conj(y_k) w_k.
struct WeightedSpace {
  std::vector<double> weights;

  int dim() const { return int(weights.size()); }
  static WeightedSpace unit(int n) { return {std::vector<double>(size_t(n), 1.0)}; }
  Complex inner(std::span<const Complex> x, std::span<const Complex> y) const;
  double norm(std::span<const Complex> x) const;
};

// Matrix operator between weighted spaces; matrix is target_dim x source_dim,
// row-major.
struct LinearOpModel {
  WeightedSpace source;
  WeightedSpace target;
  CVector matrix;

  CVector apply(std::span<const Complex> x) const;
};

LinearOpModel adjoint(const LinearOpModel& T);

Certificate graph_perp_check(const LinearOpModel& T);

// Smallest C with ||P_F y|| <= C ||T* y|| for all y; throws when F exceeds the
// range (the estimate is unbounded) or fails to contain it.
double estimate_constant(const LinearOpModel& T, std::span<const CVector> F_basis);

// Minimal-norm solution of T x = z with ||x|| <= C ||z||.
CVector solve_with_bound(const LinearOpModel& T, std::span<const Complex> z, double C);

// Exact constant for ||f||^2 <= C^2 (||T* f||^2 + ||S f||^2), via the minimum
// eigenvalue of the associated quadratic form on the middle space.
double basic_estimate_constant(const LinearOpModel& T, const LinearOpModel& S);

Certificate basic_estimate_equivalence(const LinearOpModel& T, const LinearOpModel& S, double C,
                                       int samples, uint64_t seed);

// Minimal-norm solution of T* f = v for v perpendicular to null(T).
CVector solve_adjoint(const LinearOpModel& T, std::span<const Complex> v, double C);

// Subspace comparison: max projection residual between the two spans (in the
// standard inner product of stacked coordinates).
double subspace_residual(std::span<const CVector> A, std::span<const CVector> B);

} // namespace scv
