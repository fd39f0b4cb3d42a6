#include "scv/operator_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "scv/hermitian.hpp"

namespace scv {

namespace {

// Whitened coordinates: x~ = W^{1/2} x turns every weighted space into the
// standard one; M~ = Wt^{1/2} M Ws^{-1/2}.
CVector whiten_matrix(const LinearOpModel& T) {
  const int t = T.target.dim(), s = T.source.dim();
  CVector m(static_cast<size_t>(t) * s);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < s; ++j)
      m[size_t(i) * s + j] = T.matrix[size_t(i) * s + j] *
                             std::sqrt(T.target.weights[size_t(i)]) /
                             std::sqrt(T.source.weights[size_t(j)]);
  return m;
}

CVector vec_whiten(std::span<const Complex> x, const WeightedSpace& w) {
  CVector out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] * std::sqrt(w.weights[i]);
  return out;
}

CVector vec_unwhiten(std::span<const Complex> x, const WeightedSpace& w) {
  CVector out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] / std::sqrt(w.weights[i]);
  return out;
}

CVector matvec(std::span<const Complex> m, int rows, int cols, std::span<const Complex> x) {
  CVector y(static_cast<size_t>(rows), Complex(0, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) y[size_t(i)] += m[size_t(i) * cols + j] * x[size_t(j)];
  return y;
}

CVector conj_transpose(std::span<const Complex> m, int rows, int cols) {
  CVector out(static_cast<size_t>(cols) * rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[size_t(j) * rows + i] = std::conj(m[size_t(i) * cols + j]);
  return out;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc(0, 0);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc;
}

double nrm(std::span<const Complex> a) { return std::sqrt(std::abs(dot(a, a))); }

// Modified Gram-Schmidt; drops vectors below the tolerance.
std::vector<CVector> orthonormalize(std::vector<CVector> vs, double tol = 1e-12) {
  std::vector<CVector> basis;
  for (auto& v : vs) {
    for (const auto& b : basis) {
      const Complex c = dot(v, b);
      for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    const double n = nrm(v);
    if (n > tol) {
      for (auto& x : v) x /= n;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

// Hermitian eigensystem of A^H A for a rows x cols matrix.
EigResult gram_eig(std::span<const Complex> m, int rows, int cols) {
  CVector g(static_cast<size_t>(cols) * cols, Complex(0, 0));
  for (int j = 0; j < cols; ++j)
    for (int k = 0; k < cols; ++k) {
      Complex acc(0, 0);
      for (int i = 0; i < rows; ++i)
        acc += std::conj(m[size_t(i) * cols + j]) * m[size_t(i) * cols + k];
      g[size_t(j) * cols + k] = acc;
    }
  return eig(HermitianMatrix::from_entries(cols, g));
}

double frobenius(std::span<const Complex> m) {
  double s = 0.0;
  for (const Complex& x : m) s += std::norm(x);
  return std::sqrt(s);
}

} // namespace

Complex WeightedSpace::inner(std::span<const Complex> x, std::span<const Complex> y) const {
  Complex acc(0, 0);
  for (size_t i = 0; i < weights.size(); ++i) acc += x[i] * std::conj(y[i]) * weights[i];
  return acc;
}

double WeightedSpace::norm(std::span<const Complex> x) const {
  return std::sqrt(std::abs(inner(x, x)));
}

CVector LinearOpModel::apply(std::span<const Complex> x) const {
  return matvec(matrix, target.dim(), source.dim(), x);
}

LinearOpModel adjoint(const LinearOpModel& T) {
  const int t = T.target.dim(), s = T.source.dim();
  LinearOpModel A;
  A.source = T.target;
  A.target = T.source;
  A.matrix.assign(size_t(s) * t, Complex(0, 0));
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < t; ++i)
      A.matrix[size_t(j) * t + i] = std::conj(T.matrix[size_t(i) * s + j]) *
                                    T.target.weights[size_t(i)] / T.source.weights[size_t(j)];
  return A;
}

double subspace_residual(std::span<const CVector> A, std::span<const CVector> B) {
  auto qa = orthonormalize(std::vector<CVector>(A.begin(), A.end()));
  auto qb = orthonormalize(std::vector<CVector>(B.begin(), B.end()));
  double worst = std::abs(double(qa.size()) - double(qb.size())) > 0 ? 1.0 : 0.0;
  auto project_residual = [](const CVector& v, const std::vector<CVector>& basis) {
    CVector r = v;
    for (const auto& b : basis) {
      const Complex c = dot(r, b);
      for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    return nrm(r);
  };
  for (const auto& v : qa) worst = std::max(worst, project_residual(v, qb));
  for (const auto& v : qb) worst = std::max(worst, project_residual(v, qa));
  return worst;
}

Certificate graph_perp_check(const LinearOpModel& T) {
  const int s = T.source.dim(), t = T.target.dim();
  if (s > 32 || t > 32) throw std::invalid_argument("graph_perp_check: dims <= 32 only");
  const CVector M = whiten_matrix(T);
  const CVector Mh = conj_transpose(M, t, s);

  // Null space of the pairing C = [I_s | -M^H] acting on stacked (a, b).
  const int cols = s + t;
  CVector C(static_cast<size_t>(s) * cols, Complex(0, 0));
  for (int i = 0; i < s; ++i) {
    C[size_t(i) * cols + i] = 1.0;
    for (int j = 0; j < t; ++j) C[size_t(i) * cols + s + j] = -Mh[size_t(i) * t + j];
  }
  const EigResult ge = gram_eig(C, s, cols);
  // Nonzero eigenvalues of the pairing gram are >= 1, so the null gap is wide.
  const double scale = std::max(1.0, ge.values.front());
  std::vector<CVector> null_basis;
  for (int k = 0; k < cols; ++k) {
    if (ge.values[size_t(k)] < 1e-10 * scale) {
      CVector v(static_cast<size_t>(cols));
      for (int i = 0; i < cols; ++i) v[size_t(i)] = ge.vectors[size_t(k) * cols + i];
      null_basis.push_back(std::move(v));
    }
  }
  // Graph of the adjoint: stacked (M^H e_i, e_i).
  std::vector<CVector> adj_graph;
  for (int i = 0; i < t; ++i) {
    CVector v(static_cast<size_t>(cols), Complex(0, 0));
    for (int j = 0; j < s; ++j) v[size_t(j)] = Mh[size_t(j) * t + i];
    v[size_t(s + i)] = 1.0;
    adj_graph.push_back(std::move(v));
  }
  const double resid = subspace_residual(null_basis, adj_graph);
  nlohmann::ordered_json params;
  params["dim_source"] = s;
  params["dim_target"] = t;
  params["null_dim"] = null_basis.size();
  return Certificate::make("graph_perp_equals_adjoint_graph", resid, 1e-10, 0.0, "", params);
}

double estimate_constant(const LinearOpModel& T, std::span<const CVector> F_basis) {
  const int s = T.source.dim(), t = T.target.dim();
  const CVector M = whiten_matrix(T);
  std::vector<CVector> Fw;
  for (const auto& f : F_basis) Fw.push_back(vec_whiten(f, T.target));
  auto qf = orthonormalize(std::move(Fw));
  if (qf.empty()) throw std::invalid_argument("estimate_constant: empty subspace");

  // range(T) inside span(F)?
  for (int j = 0; j < s; ++j) {
    CVector col(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) col[size_t(i)] = M[size_t(i) * s + j];
    const double cn = nrm(col);
    if (cn < 1e-14) continue;
    CVector r = col;
    for (const auto& b : qf) {
      const Complex c = dot(r, b);
      for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    if (nrm(r) > 1e-10 * cn)
      throw std::invalid_argument("estimate_constant: F does not contain the range of T");
  }

  // B = M^H Q_F; C = 1/sigma_min(B).
  const int d = int(qf.size());
  CVector B(static_cast<size_t>(s) * d);
  const CVector Mh = conj_transpose(M, t, s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < d; ++k) {
      Complex acc(0, 0);
      for (int j = 0; j < t; ++j) acc += Mh[size_t(i) * t + j] * qf[size_t(k)][size_t(j)];
      B[size_t(i) * d + k] = acc;
    }
  const EigResult ge = gram_eig(B, s, d);
  const double lmin = ge.values.back();
  const double scale = std::max(ge.values.front(), 1e-30);
  if (lmin <= 1e-14 * scale)
    throw std::invalid_argument(
        "estimate_constant: estimate unbounded (F strictly exceeds the closed range)");
  return 1.0 / std::sqrt(lmin);
}

CVector solve_with_bound(const LinearOpModel& T, std::span<const Complex> z, double C) {
  const int s = T.source.dim(), t = T.target.dim();
  const CVector M = whiten_matrix(T);
  const CVector zw = vec_whiten(z, T.target);
  // Gram on the target side: G = M M^H.
  CVector G(static_cast<size_t>(t) * t, Complex(0, 0));
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k) {
      Complex acc(0, 0);
      for (int j = 0; j < s; ++j)
        acc += M[size_t(i) * s + j] * std::conj(M[size_t(k) * s + j]);
      G[size_t(i) * t + k] = acc;
    }
  const EigResult ge = eig(HermitianMatrix::from_entries(t, G));
  const double scale = std::max(ge.values.front(), 1e-30);
  // z must lie in the range: expand in eigenvectors with nonzero eigenvalue.
  CVector y(static_cast<size_t>(t), Complex(0, 0)); // y = (M M^H)^+ z
  double outside = 0.0;
  for (int k = 0; k < t; ++k) {
    CVector v(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) v[size_t(i)] = ge.vectors[size_t(k) * t + i];
    const Complex c = dot(zw, v);
    if (ge.values[size_t(k)] > 1e-12 * scale) {
      for (int i = 0; i < t; ++i) y[size_t(i)] += (c / ge.values[size_t(k)]) * v[size_t(i)];
    } else {
      outside += std::norm(c);
    }
  }
  const double zn = nrm(zw);
  if (std::sqrt(outside) > 1e-10 * std::max(zn, 1e-30))
    throw std::invalid_argument("solve_with_bound: z is not in the range of T");
  // x = M^H y: minimal-norm solution, perpendicular to null(T).
  const CVector Mh = conj_transpose(M, t, s);
  const CVector xw = matvec(Mh, s, t, y);
  if (C > 0.0 && nrm(xw) > C * zn * (1.0 + 1e-10))
    throw std::runtime_error("solve_with_bound: bound violated; C below the estimate constant");
  return vec_unwhiten(xw, T.source);
}

double basic_estimate_constant(const LinearOpModel& T, const LinearOpModel& S) {
  const int s1 = T.source.dim(), t = T.target.dim(), t3 = S.target.dim();
  const CVector M = whiten_matrix(T);
  const CVector N = whiten_matrix(S); // t3 x t
  // Q = M M^H + N^H N on the middle space.
  CVector Q(static_cast<size_t>(t) * t, Complex(0, 0));
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k) {
      Complex acc(0, 0);
      for (int j = 0; j < s1; ++j) acc += M[size_t(i) * s1 + j] * std::conj(M[size_t(k) * s1 + j]);
      for (int j = 0; j < t3; ++j)
        acc += std::conj(N[size_t(j) * t + i]) * N[size_t(j) * t + k];
      Q[size_t(i) * t + k] = acc;
    }
  const EigResult ge = eig(HermitianMatrix::from_entries(t, Q));
  const double lmin = ge.values.back();
  if (lmin <= 0.0)
    throw std::invalid_argument("basic_estimate_constant: quadratic form is singular");
  return 1.0 / std::sqrt(lmin);
}

Certificate basic_estimate_equivalence(const LinearOpModel& T, const LinearOpModel& S, double C,
                                       int samples, uint64_t seed) {
  const int t = T.target.dim();
  if (S.source.dim() != t)
    throw std::invalid_argument("basic_estimate_equivalence: S source must match T target");
  // (S,T) system: S o T = 0.
  {
    const int s1 = T.source.dim(), t3 = S.target.dim();
    CVector P(static_cast<size_t>(t3) * s1, Complex(0, 0));
    for (int i = 0; i < t3; ++i)
      for (int j = 0; j < s1; ++j) {
        Complex acc(0, 0);
        for (int k = 0; k < t; ++k)
          acc += S.matrix[size_t(i) * t + k] * T.matrix[size_t(k) * s1 + j];
        P[size_t(i) * s1 + j] = acc;
      }
    const double st = frobenius(P);
    const double sc = std::max(1.0, frobenius(T.matrix) * frobenius(S.matrix));
    if (st > 1e-12 * sc)
      throw std::invalid_argument("basic_estimate_equivalence: S composed with T is nonzero");
  }

  const LinearOpModel Tstar = adjoint(T);
  const double Cslack = C * (1.0 + 1e-8);

  // N_{T*} = R_T^perp as whitened subspaces.
  const CVector M = whiten_matrix(T);
  const int s1 = T.source.dim();
  std::vector<CVector> range_perp;
  {
    CVector G(static_cast<size_t>(t) * t, Complex(0, 0));
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < t; ++k) {
        Complex acc(0, 0);
        for (int j = 0; j < s1; ++j)
          acc += M[size_t(i) * s1 + j] * std::conj(M[size_t(k) * s1 + j]);
        G[size_t(i) * t + k] = acc;
      }
    const EigResult ge = eig(HermitianMatrix::from_entries(t, G));
    const double scale = std::max(ge.values.front(), 1e-30);
    for (int k = 0; k < t; ++k)
      if (ge.values[size_t(k)] <= 1e-12 * scale) {
        CVector v(static_cast<size_t>(t));
        for (int i = 0; i < t; ++i) v[size_t(i)] = ge.vectors[size_t(k) * t + i];
        range_perp.push_back(std::move(v));
      }
    // null(T^*): eigenvectors of M^H's gram, i.e. of M M^H -- same matrix.
  }
  // null(T*) in whitened coordinates = null(M^H) = range(M)^perp; the identity
  // is exact here, so instead audit it via residuals of T* on the basis.
  double null_resid = 0.0;
  for (const auto& v : range_perp) {
    const CVector vw = vec_unwhiten(v, T.target);
    const CVector w = Tstar.apply(vw);
    null_resid = std::max(null_resid, Tstar.target.norm(w));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_vec = [&](int n) {
    CVector v(static_cast<size_t>(n));
    for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
    return v;
  };

  double worst1 = std::numeric_limits<double>::infinity();
  double worst2 = std::numeric_limits<double>::infinity();
  int worst_index = -1;

  // Include the extremal vector of the quadratic form so a too-small C is
  // always witnessed.
  std::vector<CVector> f_samples;
  {
    const int t3 = S.target.dim();
    CVector Q(static_cast<size_t>(t) * t, Complex(0, 0));
    const CVector N = whiten_matrix(S);
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < t; ++k) {
        Complex acc(0, 0);
        for (int j = 0; j < s1; ++j)
          acc += M[size_t(i) * s1 + j] * std::conj(M[size_t(k) * s1 + j]);
        for (int j = 0; j < t3; ++j)
          acc += std::conj(N[size_t(j) * t + i]) * N[size_t(j) * t + k];
        Q[size_t(i) * t + k] = acc;
      }
    const EigResult ge = eig(HermitianMatrix::from_entries(t, Q));
    CVector ext(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) ext[size_t(i)] = ge.vectors[size_t(t - 1) * t + i];
    f_samples.push_back(vec_unwhiten(ext, T.target));
  }
  for (int it = 0; it < samples; ++it) f_samples.push_back(rand_vec(t));

  for (size_t it = 0; it < f_samples.size(); ++it) {
    const CVector& f = f_samples[it];
    const double lhs = T.target.norm(f);
    const double rhs = Cslack * (Tstar.target.norm(Tstar.apply(f)) + S.target.norm(S.apply(f)));
    if (rhs - lhs < worst1) {
      worst1 = rhs - lhs;
      if (rhs - lhs < 0) worst_index = int(it);
    }
  }
  for (int it = 0; it < samples; ++it) {
    const CVector y = rand_vec(t), u = rand_vec(t);
    const double lhs = std::abs(T.target.inner(u, y));
    const double rhs = Cslack * (Tstar.target.norm(Tstar.apply(y)) * T.target.norm(u) +
                                 S.target.norm(S.apply(u)) * T.target.norm(y));
    if (rhs - lhs < worst2) worst2 = rhs - lhs;
  }

  nlohmann::ordered_json params;
  params["C"] = C;
  params["samples"] = samples;
  params["seed"] = seed;
  params["worst_margin_1"] = worst1;
  params["worst_margin_2"] = worst2;
  params["null_Tstar_vs_range_perp_residual"] = null_resid;
  const double worst = std::min(std::min(worst1, worst2), 1e-10 - null_resid);
  return Certificate::make("basic_estimate_equivalence", -worst, 0.0, 0.0,
                           worst_index >= 0 ? "sample " + std::to_string(worst_index) : "",
                           params);
}

CVector solve_adjoint(const LinearOpModel& T, std::span<const Complex> v, double C) {
  const int s = T.source.dim(), t = T.target.dim();
  const CVector M = whiten_matrix(T);
  const CVector vw = vec_whiten(v, T.source);
  // null(T): eigenvectors of M^H M with zero eigenvalue.
  const EigResult ge = gram_eig(M, t, s);
  const double scale = std::max(ge.values.front(), 1e-30);
  double overlap = 0.0;
  CVector x(static_cast<size_t>(s), Complex(0, 0)); // x = (M^H M)^+ v
  for (int k = 0; k < s; ++k) {
    CVector w(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) w[size_t(i)] = ge.vectors[size_t(k) * s + i];
    const Complex c = dot(vw, w);
    if (ge.values[size_t(k)] > 1e-12 * scale) {
      for (int i = 0; i < s; ++i) x[size_t(i)] += (c / ge.values[size_t(k)]) * w[size_t(i)];
    } else {
      overlap += std::norm(c);
    }
  }
  const double vn = nrm(vw);
  if (std::sqrt(overlap) > 1e-10 * std::max(vn, 1e-30))
    throw std::invalid_argument("solve_adjoint: v is not perpendicular to null(T)");
  // f = M x solves M^H f = v with minimal norm.
  const CVector fw = matvec(M, t, s, x);
  if (C > 0.0 && nrm(fw) > C * vn * (1.0 + 1e-10))
    throw std::runtime_error("solve_adjoint: bound violated; C below the estimate constant");
  return vec_unwhiten(fw, T.target);
}

} // namespace scv
