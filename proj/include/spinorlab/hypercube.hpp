#ifndef SPINORLAB_HYPERCUBE_HPP
#define SPINORLAB_HYPERCUBE_HPP

#include "spinorlab/schatten.hpp"

namespace spinorlab {

/// Function on D_N = {-1,1}^N, values indexed by sign patterns in binary
/// order: bit j of the index is 1 iff eps_j = +1 (consistent with the Fock
/// bitmask order).
struct HypercubeFunction {
  int N = 0;
  CVec values;
};

inline int hypercube_sign(std::uint32_t point, int j) {
  return (point & (1u << (j - 1))) ? 1 : -1;
}

inline HypercubeFunction rademacher(int N, int j) {
  if (j < 1 || j > N) throw IndexOutOfRange("rademacher: j out of 1..N");
  HypercubeFunction f;
  f.N = N;
  f.values = CVec(Index(1) << N);
  for (std::uint32_t w = 0; w < (1u << N); ++w)
    f.values(w) = double(hypercube_sign(w, j));
  return f;
}

/// (2^{-N} sum |values|^p)^{1/p}; max at p = inf.
inline double lp_norm(const HypercubeFunction& f, PExponent p) {
  Index dim = Index(1) << f.N;
  if (f.values.size() != dim)
    throw LengthMismatch("lp_norm: value count != 2^N");
  if (p.is_inf) return f.values.cwiseAbs().maxCoeff();
  double acc = 0.0;
  for (Index i = 0; i < dim; ++i)
    acc += std::pow(std::abs(f.values(i)), p.value);
  return std::pow(acc / double(dim), 1.0 / p.value);
}

/// alpha_0 + sum_{j<=2n} alpha_j eps_j + alpha_{2n+1} prod eps_j on D_2n.
inline HypercubeFunction rademacher_span(int n, const CVec& alpha) {
  if (alpha.size() != 2 * n + 2)
    throw LengthMismatch("rademacher_span: need 2n+2 coefficients");
  HypercubeFunction f;
  f.N = 2 * n;
  f.values = CVec(Index(1) << f.N);
  for (std::uint32_t w = 0; w < (1u << f.N); ++w) {
    Complex v = alpha(0);
    int prod = 1;
    for (int j = 1; j <= 2 * n; ++j) {
      int e = hypercube_sign(w, j);
      v += alpha(j) * double(e);
      prod *= e;
    }
    f.values(w) = v + alpha(2 * n + 1) * double(prod);
  }
  return f;
}

inline double rademacher_norm(int n, const CVec& alpha, PExponent p) {
  return lp_norm(rademacher_span(n, alpha), p);
}

/// ||alpha_0 + sum alpha_j eps_j + alpha_{2n+1} prod eps||_p over the same
/// with the product term negated: a certified lower bound for
/// cb||tau: F_n^p -> F_n^p||.
inline double rad1_ratio(int n, const CVec& alpha, PExponent p) {
  CVec flipped = alpha;
  flipped(2 * n + 1) = -flipped(2 * n + 1);
  double den = rademacher_norm(n, flipped, p);
  if (den <= 1e-300) throw ZeroDenominator("rad1_ratio: denominator vanishes");
  return rademacher_norm(n, alpha, p) / den;
}

struct FgReport {
  // 2^{2n} * ||f||_1 and 2^{2n} * ||g||_1, exact integers
  long long f_abs_sum = 0;
  long long g_abs_sum = 0;
  bool norm_identity = false;      // 2n * sum|g| == (2n+2) * sum|f|
  bool pointwise_identity = false; // 2n g == f + sum_i rho_i(f) + rho(f)
  bool f_in_4z = false;            // f valued in 4Z
};

/// f = 1 + sum eps_j - (-1)^n prod eps_j and g with the opposite product
/// sign; everything runs in exact integer arithmetic.
inline FgReport fg_identity_check(int n) {
  if (n < 1) throw IndexOutOfRange("fg_identity_check: n < 1");
  const int N = 2 * n;
  const std::uint32_t dim = 1u << N;
  auto fval = [&](std::uint32_t w) -> long long {
    long long base = 1;
    int prod = 1;
    for (int j = 1; j <= N; ++j) {
      int e = hypercube_sign(w, j);
      base += e;
      prod *= e;
    }
    return base - ((n % 2 == 0) ? 1 : -1) * prod;
  };
  auto gval = [&](std::uint32_t w) -> long long {
    long long base = 1;
    int prod = 1;
    for (int j = 1; j <= N; ++j) {
      int e = hypercube_sign(w, j);
      base += e;
      prod *= e;
    }
    return base + ((n % 2 == 0) ? 1 : -1) * prod;
  };
  FgReport rep;
  rep.pointwise_identity = true;
  rep.f_in_4z = true;
  for (std::uint32_t w = 0; w < dim; ++w) {
    long long f = fval(w), g = gval(w);
    rep.f_abs_sum += std::llabs(f);
    rep.g_abs_sum += std::llabs(g);
    if (f % 4 != 0) rep.f_in_4z = false;
    // rho_i flips eps_i; rho = -rho_1 o ... o rho_{2n} negates and flips all
    long long rhs = f;
    for (int i = 1; i <= N; ++i) rhs += fval(w ^ (1u << (i - 1)));
    rhs += -fval(w ^ (dim - 1));
    if (rhs != 2 * n * g) rep.pointwise_identity = false;
  }
  rep.norm_identity = (2LL * n * rep.g_abs_sum ==
                       (2LL * n + 2) * rep.f_abs_sum);
  return rep;
}

/// P(t) = ||1 + sum eps_j + t prod eps_j||_p^p on D_2n.
inline double poly_P(int n, PExponent p, double t) {
  if (p.is_inf) throw InvalidExponent("poly_P: finite p required");
  const int N = 2 * n;
  double acc = 0.0;
  for (std::uint32_t w = 0; w < (1u << N); ++w) {
    double base = 1.0;
    int prod = 1;
    for (int j = 1; j <= N; ++j) {
      int e = hypercube_sign(w, j);
      base += e;
      prod *= e;
    }
    acc += std::pow(std::abs(base + t * prod), p.value);
  }
  return acc / double(1u << N);
}

/// P(t) - P(-t); nonzero detects that tau on F_n^p is not completely
/// contractive.
inline double asym_probe(int n, PExponent p, double t) {
  return poly_P(n, p, t) - poly_P(n, p, -t);
}

}  // namespace spinorlab

#endif
