#ifndef SPINORLAB_FOCK_HPP
#define SPINORLAB_FOCK_HPP

#include <Eigen/LU>

#include "spinorlab/common.hpp"

namespace spinorlab {

/// Basis of the anti-symmetric Fock space over l^2_n: subsets A of {1..n}
/// as bitmasks in binary-counting order, e_A = e_{j1} ^ ... ^ e_{jk}.
struct FockBasis {
  int n = 0;
  std::vector<std::uint32_t> order;

  Index size() const { return Index(order.size()); }
};

inline FockBasis fock_basis(int n) {
  if (n < 0) throw IndexOutOfRange("fock_basis: n < 0");
  FockBasis b;
  b.n = n;
  b.order.resize(std::size_t(1) << n);
  for (std::uint32_t a = 0; a < b.order.size(); ++a) b.order[a] = a;
  return b;
}

/// Rank-k layer: subsets of cardinality k in increasing bitmask order.
struct GradedBasis {
  int n = 0, k = 0;
  std::vector<std::uint32_t> order;

  Index size() const { return Index(order.size()); }
  /// position of mask within the layer, -1 if |mask| != k
  int index_of(std::uint32_t mask) const {
    auto it = std::lower_bound(order.begin(), order.end(), mask);
    return (it != order.end() && *it == mask) ? int(it - order.begin()) : -1;
  }
};

inline GradedBasis graded_basis(int n, int k) {
  if (k < 0 || k > n) throw IndexOutOfRange("graded_basis: k out of range");
  GradedBasis b;
  b.n = n;
  b.k = k;
  b.order = subsets_of_size(n, k);
  return b;
}

/// sign of e_j ^ e_A reordered increasingly: (-1)^{#{i in A : i < j}}
inline int wedge_sign(std::uint32_t A, int j) {
  return (popcount(A & ((1u << (j - 1)) - 1)) % 2 == 0) ? 1 : -1;
}

/// Creation operator c_{n,j} on Lambda_n. Column A maps to sign * e_{A+j}
/// when j is absent from A, to zero otherwise.
inline CMat creation(int n, int j) {
  if (j < 1 || j > n) throw IndexOutOfRange("creation: j out of 1..n");
  Index dim = Index(1) << n;
  CMat c = CMat::Zero(dim, dim);
  std::uint32_t bit = 1u << (j - 1);
  for (std::uint32_t A = 0; A < std::uint32_t(dim); ++A) {
    if (A & bit) continue;
    c(A | bit, A) = double(wedge_sign(A, j));
  }
  return c;
}

/// c_{n,j,k}: the (k, k-1) graded block of c_{n,j}, a binom(n,k) x binom(n,k-1)
/// matrix with entries in {-1,0,1}.
inline CMat creation_restricted(int n, int j, int k) {
  if (k < 1 || k > n) throw IndexOutOfRange("creation_restricted: k out of 1..n");
  if (j < 1 || j > n) throw IndexOutOfRange("creation_restricted: j out of 1..n");
  GradedBasis rows = graded_basis(n, k), cols = graded_basis(n, k - 1);
  CMat c = CMat::Zero(rows.size(), cols.size());
  std::uint32_t bit = 1u << (j - 1);
  for (Index b = 0; b < cols.size(); ++b) {
    std::uint32_t A = cols.order[std::size_t(b)];
    if (A & bit) continue;
    c(rows.index_of(A | bit), b) = double(wedge_sign(A, j));
  }
  return c;
}

/// Orthogonal projection P_n onto Lambda_n^even (diagonal 0/1).
inline CMat parity_projection(int n) {
  if (n < 1) throw IndexOutOfRange("parity_projection: n < 1");
  Index dim = Index(1) << n;
  CMat p = CMat::Zero(dim, dim);
  for (std::uint32_t A = 0; A < std::uint32_t(dim); ++A)
    if (popcount(A) % 2 == 0) p(A, A) = 1.0;
  return p;
}

/// Second quantization F(T): block (A,B) is det T[A,B] for |A| = |B|,
/// F(T)Omega = Omega. T need not be a strict contraction; callers verifying
/// norm statements should pass contractions.
inline CMat second_quantization(int n, const CMat& T) {
  if (T.rows() != n || T.cols() != n)
    throw DimensionMismatch("second_quantization: T must be n x n");
  require_finite(T, "second_quantization");
  Index dim = Index(1) << n;
  CMat f = CMat::Zero(dim, dim);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(dim));
  for (std::uint32_t A = 0; A < std::uint32_t(dim); ++A)
    for (int i = 0; i < n; ++i)
      if (A & (1u << i)) members[A].push_back(i);
  for (std::uint32_t A = 0; A < std::uint32_t(dim); ++A) {
    for (std::uint32_t B = 0; B < std::uint32_t(dim); ++B) {
      if (popcount(A) != popcount(B)) continue;
      const auto& ra = members[A];
      const auto& cb = members[B];
      if (ra.empty()) {
        f(A, B) = 1.0;
        continue;
      }
      CMat sub(ra.size(), cb.size());
      for (std::size_t i = 0; i < ra.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j) sub(i, j) = T(ra[i], cb[j]);
      f(A, B) = sub.determinant();
    }
  }
  return f;
}

/// F(U) W F(U)* for unitary U; Lemma-style intertwining with the graded
/// creation blocks is exercised in tests.
inline CMat quantized_conjugation(int n, const CMat& U, const CMat& W,
                                  double tol = 1e-10) {
  if (U.rows() != n || U.cols() != n)
    throw DimensionMismatch("quantized_conjugation: U must be n x n");
  if ((U.adjoint() * U - CMat::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw NotUnitary("quantized_conjugation: U*U != I");
  Index dim = Index(1) << n;
  if (W.rows() != dim || W.cols() != dim)
    throw DimensionMismatch("quantized_conjugation: W must act on Lambda_n");
  CMat FU = second_quantization(n, U);
  return FU * W * FU.adjoint();
}

}  // namespace spinorlab

#endif
