#include <doctest.h>

#include <cmath>
#include <random>

#include "scv/hermitian.hpp"

using namespace scv;

namespace {

HermitianMatrix random_hermitian(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector a(static_cast<size_t>(n) * n);
  for (auto& v : a) v = Complex(gauss(rng), gauss(rng));
  return HermitianMatrix::from_entries(n, a); // symmetrized
}

} // namespace

TEST_CASE("eigenvalues of small closed-form matrices") {
  {
    const double d[] = {4, 9};
    const auto e = eig(HermitianMatrix::diagonal(d));
    CHECK(e.values[0] == doctest::Approx(9));
    CHECK(e.values[1] == doctest::Approx(4));
  }
  {
    const CVector a = {Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(2, 0)};
    const auto e = eig(HermitianMatrix::from_entries(2, a));
    CHECK(e.values[0] == doctest::Approx(3));
    CHECK(e.values[1] == doctest::Approx(1));
  }
  {
    const double d[] = {1, 1, 1};
    const auto e = eig(HermitianMatrix::diagonal(d));
    for (const double v : e.values) CHECK(v == doctest::Approx(1));
  }
}

TEST_CASE("jacobi reaches the contract accuracy on random matrices") {
  for (const uint64_t seed : {1ull, 2ull, 3ull}) {
    const int n = 8;
    const HermitianMatrix A = random_hermitian(n, seed);
    const auto e = eig(A);
    const double scale = matrix_sup_norm(A);
    for (int k = 0; k < n; ++k) {
      // residual ||A v - lambda v||
      double resid = 0.0;
      for (int i = 0; i < n; ++i) {
        Complex av(0, 0);
        for (int j = 0; j < n; ++j) av += A(i, j) * e.vectors[size_t(k) * n + j];
        resid += std::norm(av - e.values[size_t(k)] * e.vectors[size_t(k) * n + i]);
      }
      CHECK(std::sqrt(resid) <= 1e-10 * std::max(1.0, scale));
      for (int l = 0; l <= k; ++l) {
        Complex dot(0, 0);
        for (int i = 0; i < n; ++i)
          dot += e.vectors[size_t(k) * n + i] * std::conj(e.vectors[size_t(l) * n + i]);
        CHECK(std::abs(dot - (k == l ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
      }
    }
  }
}

TEST_CASE("psd tests") {
  const double id[] = {1, 1};
  CHECK(is_psd(HermitianMatrix::diagonal(id), 1e-12));
  const double mixed[] = {1, -1};
  CHECK(!is_psd(HermitianMatrix::diagonal(mixed), 1e-12));
}

TEST_CASE("matrix square root") {
  {
    const double d[] = {4, 9};
    const auto B = sqrt_psd(HermitianMatrix::diagonal(d));
    CHECK(B(0, 0).real() == doctest::Approx(2));
    CHECK(B(1, 1).real() == doctest::Approx(3));
  }
  {
    const CVector a = {Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(2, 0)};
    const HermitianMatrix A = HermitianMatrix::from_entries(2, a);
    const HermitianMatrix B = sqrt_psd(A);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex bb(0, 0);
        for (int k = 0; k < 2; ++k) bb += B(i, k) * B(k, j);
        worst = std::max(worst, std::abs(bb - A(i, j)));
      }
    CHECK(worst <= 1e-9 * (1.0 + matrix_sup_norm(A)));
  }
  const double neg[] = {1, -0.5};
  CHECK_THROWS(sqrt_psd(HermitianMatrix::diagonal(neg)));
}

TEST_CASE("square root varies continuously") {
  auto at = [](double t) {
    const CVector a = {Complex(1, 0), Complex(t, 0), Complex(t, 0), Complex(1, 0)};
    return sqrt_psd(HermitianMatrix::from_entries(2, a));
  };
  double prev = 1e300;
  for (const double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto B0 = at(0.5);
    const auto B1 = at(0.5 + eps);
    double diff = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) diff = std::max(diff, std::abs(B1(i, j) - B0(i, j)));
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("inverse-weighted norms") {
  {
    const double id[] = {1, 1};
    const Complex f[] = {Complex(3, 0), Complex(4, 0)};
    CHECK(norm_A_sq(f, HermitianMatrix::diagonal(id)) == doctest::Approx(25.0));
  }
  {
    const double two[] = {2};
    const Complex f[] = {Complex(1, 0)};
    CHECK(norm_A_sq(f, HermitianMatrix::diagonal(two)) == doctest::Approx(0.5));
  }
  {
    const CVector a = {Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(2, 0)};
    const Complex f[] = {Complex(1, 0), Complex(0, 0)};
    CHECK(norm_A_sq(f, HermitianMatrix::from_entries(2, a)) == doctest::Approx(2.0 / 3.0));
  }
  {
    // c*identity gives |f|^2/c
    const double c3[] = {3, 3, 3};
    const Complex f[] = {Complex(1, 2), Complex(0, -1), Complex(0.5, 0)};
    double n2 = 0.0;
    for (const Complex& v : f) n2 += std::norm(v);
    CHECK(norm_A_sq(f, HermitianMatrix::diagonal(c3)) == doctest::Approx(n2 / 3.0));
  }
  const double sing[] = {1, 0};
  const Complex f[] = {Complex(1, 0), Complex(1, 0)};
  CHECK_THROWS(norm_A_sq(f, HermitianMatrix::diagonal(sing)));
}

TEST_CASE("hermitian matrices act self-adjointly") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 6;
  const HermitianMatrix A = random_hermitian(n, 99);
  for (int trial = 0; trial < 10; ++trial) {
    CVector x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
    for (auto& v : x) v = Complex(gauss(rng), gauss(rng));
    for (auto& v : y) v = Complex(gauss(rng), gauss(rng));
    Complex xAy(0, 0), Axy(0, 0);
    for (int i = 0; i < n; ++i) {
      Complex ay(0, 0), ax(0, 0);
      for (int j = 0; j < n; ++j) {
        ay += A(i, j) * y[size_t(j)];
        ax += A(i, j) * x[size_t(j)];
      }
      xAy += x[size_t(i)] * std::conj(ay);
      Axy += ax * std::conj(y[size_t(i)]);
    }
    CHECK(std::abs(xAy - Axy) < 1e-12 * (1.0 + std::abs(xAy)));
  }
}
