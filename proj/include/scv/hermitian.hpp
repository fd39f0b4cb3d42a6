#pragma once

#include <span>
#include <vector>

#include "scv/types.hpp"

namespace scv {

// Hermitian matrix; construction symmetrizes (A + A^H)/2 and records the
// pre-symmetrization deviation.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);
  static HermitianMatrix from_entries(int n, std::span<const Complex> row_major);
  static HermitianMatrix diagonal(std::span<const double> d);

  int size() const { return n_; }
  Complex operator()(int i, int j) const { return a_[size_t(i) * n_ + j]; }
  double hermitian_deviation() const { return deviation_; }

  void set_symmetric(int i, int j, Complex v); // sets (i,j) and conj at (j,i)

 private:
  int n_;
  CVector a_;
  double deviation_ = 0.0;
};

struct EigResult {
  std::vector<double> values; // descending
  CVector vectors;            // column-major, vectors[k*n + i] = component i of eigenvector k
};

// Cyclic Jacobi for complex Hermitian matrices, n <= 64.
EigResult eig(const HermitianMatrix& A);

bool is_psd(const HermitianMatrix& A, double tol);

HermitianMatrix sqrt_psd(const HermitianMatrix& A);

// f^* A^{-1} f for positive definite A.
double norm_A_sq(std::span<const Complex> f, const HermitianMatrix& A);

double matrix_sup_norm(const HermitianMatrix& A);

} // namespace scv
