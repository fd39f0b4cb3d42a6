#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "scv/expr.hpp"
#include "scv/grid.hpp"
#include "scv/hermitian.hpp"

namespace scv {

// Strictly increasing multi-index, 0-based axes.
using MultiIndex = std::vector<int>;

// (p,q)-form: map from (I, J) to coefficient fields; missing keys are zero.
struct FormField {
  GridPtr grid;
  int p = 0;
  int q = 0;
  std::map<std::pair<MultiIndex, MultiIndex>, ScalarField> coeffs;

  static FormField scalar(ScalarField f);                    // (0,0)
  static FormField zero_one(GridPtr grid, CVector per_axis_constants);
  static FormField zero_one(std::vector<ScalarField> per_axis); // (0,1), coefficient of dzbar_j
  const ScalarField* coeff(const MultiIndex& I, const MultiIndex& J) const;
};

// Finite-difference Wirtinger derivatives: centered second order in the
// interior, one-sided second order at mask edges.
ScalarField d_dz(const ScalarField& field, int axis);
ScalarField d_dzbar(const ScalarField& field, int axis);
ScalarField laplacian(const ScalarField& field, int axis = 0);

// Signature of the permutation taking from -> to; 0 on repeats or mismatched
// multisets.
int multiindex_sign(std::span<const int> from, std::span<const int> to);

FormField dbar_form(const FormField& f);

// Max FD Cauchy-Riemann defect over axes and interior nodes (margin 3 cells).
double cr_residual(const ScalarField& field);

struct LeviForm {
  CVector point;
  HermitianMatrix matrix;
};

double default_levi_fd_step(std::span<const Complex> point);

LeviForm levi_form_fn(const std::function<double(std::span<const Complex>)>& weight,
                      std::span<const Complex> point, double h_fd = 0.0);
LeviForm levi_form(const Expr& weight, std::span<const Complex> point, double h_fd = 0.0);

// (Int |f|^r e^{-phi})^{1/r} with |f|^r summed over increasing multi-indices.
double weighted_lp_norm(const FormField& f, const Expr& phi, double r);

// <f,g>_phi = Int sum' f_IJ conj(g_IJ) e^{-phi}.
Complex pairing(const FormField& f, const FormField& g, const Expr& phi);

} // namespace scv
