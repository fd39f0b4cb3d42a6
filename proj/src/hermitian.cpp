#include "scv/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scv {

HermitianMatrix::HermitianMatrix(int n) : n_(n), a_(size_t(n) * n, Complex(0.0, 0.0)) {
  if (n < 1) throw std::invalid_argument("HermitianMatrix: n must be positive");
}

HermitianMatrix HermitianMatrix::from_entries(int n, std::span<const Complex> row_major) {
  if (int64_t(row_major.size()) != int64_t(n) * n)
    throw std::invalid_argument("HermitianMatrix: entry count mismatch");
  HermitianMatrix m(n);
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex aij = row_major[size_t(i) * n + j];
      const Complex aji = row_major[size_t(j) * n + i];
      dev = std::max(dev, std::abs(aij - std::conj(aji)));
      m.a_[size_t(i) * n + j] = 0.5 * (aij + std::conj(aji));
    }
  m.deviation_ = dev;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  HermitianMatrix m(int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.a_[i * d.size() + i] = d[i];
  return m;
}

void HermitianMatrix::set_symmetric(int i, int j, Complex v) {
  a_[size_t(i) * n_ + j] = v;
  a_[size_t(j) * n_ + i] = std::conj(v);
  if (i == j) a_[size_t(i) * n_ + i] = Complex(v.real(), 0.0);
}

double matrix_sup_norm(const HermitianMatrix& A) {
  double m = 0.0;
  for (int i = 0; i < A.size(); ++i)
    for (int j = 0; j < A.size(); ++j) m = std::max(m, std::abs(A(i, j)));
  return m;
}

EigResult eig(const HermitianMatrix& A) {
  const int n = A.size();
  if (n > 64) throw std::invalid_argument("eig: n exceeds the desk-scale cap of 64");
  CVector a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[size_t(i) * n + j] = A(i, j);
  CVector v(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
  for (int i = 0; i < n; ++i) v[size_t(i) * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a[size_t(i) * n + j]);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (const Complex& x : a) scale = std::max(scale, std::abs(x));
  const double tol = 1e-14 * std::max(scale, 1.0);

  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a[size_t(p) * n + q];
        const double b = std::abs(apq);
        if (b <= tol * 1e-2) continue;
        const double alpha = a[size_t(p) * n + p].real();
        const double gamma = a[size_t(q) * n + q].real();
        const Complex phase = apq / b;
        const double tau = (gamma - alpha) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = t * c * phase;
        // A <- U^H A U with U = I except U(p,p)=c, U(p,q)=s, U(q,p)=-conj(s), U(q,q)=c
        for (int k = 0; k < n; ++k) {
          const Complex akp = a[size_t(k) * n + p], akq = a[size_t(k) * n + q];
          a[size_t(k) * n + p] = c * akp - std::conj(s) * akq;
          a[size_t(k) * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a[size_t(p) * n + k], aqk = a[size_t(q) * n + k];
          a[size_t(p) * n + k] = c * apk - s * aqk;
          a[size_t(q) * n + k] = std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v[size_t(k) * n + p], vkq = v[size_t(k) * n + q];
          v[size_t(k) * n + p] = c * vkp - std::conj(s) * vkq;
          v[size_t(k) * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > std::sqrt(tol) * 10.0 && sweep == max_sweeps)
    throw std::runtime_error("eig: Jacobi did not converge, off-diagonal norm " +
                             std::to_string(off_norm()));

  EigResult r;
  r.values.resize(size_t(n));
  for (int i = 0; i < n; ++i) r.values[size_t(i)] = a[size_t(i) * n + i].real();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return r.values[size_t(i)] > r.values[size_t(j)]; });
  EigResult out;
  out.values.resize(size_t(n));
  out.vectors.resize(size_t(n) * n);
  for (int k = 0; k < n; ++k) {
    out.values[size_t(k)] = r.values[size_t(order[size_t(k)])];
    for (int i = 0; i < n; ++i)
      out.vectors[size_t(k) * n + i] = v[size_t(i) * n + order[size_t(k)]];
  }
  return out;
}

bool is_psd(const HermitianMatrix& A, double tol) {
  const auto e = eig(A);
  return e.values.back() >= -tol;
}

HermitianMatrix sqrt_psd(const HermitianMatrix& A) {
  const int n = A.size();
  const auto e = eig(A);
  const double floor = -1e-10 * std::max(1.0, std::abs(e.values.front()));
  if (e.values.back() < floor)
    throw std::invalid_argument("sqrt_psd: matrix has a negative eigenvalue " +
                                std::to_string(e.values.back()));
  CVector b(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(0.0, e.values[size_t(k)]));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b[size_t(i) * n + j] += s * e.vectors[size_t(k) * n + i] *
                                std::conj(e.vectors[size_t(k) * n + j]);
  }
  return HermitianMatrix::from_entries(n, b);
}

double norm_A_sq(std::span<const Complex> f, const HermitianMatrix& A) {
  const int n = A.size();
  if (int(f.size()) != n) throw std::invalid_argument("norm_A_sq: dimension mismatch");
  const auto e = eig(A);
  if (e.values.back() <= 1e-12)
    throw std::invalid_argument("norm_A_sq: matrix is numerically singular (min eigenvalue " +
                                std::to_string(e.values.back()) + ")");
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    Complex proj(0.0, 0.0);
    for (int i = 0; i < n; ++i) proj += std::conj(e.vectors[size_t(k) * n + i]) * f[size_t(i)];
    acc += std::norm(proj) / e.values[size_t(k)];
  }
  return acc;
}

} // namespace scv
