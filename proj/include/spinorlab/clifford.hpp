#ifndef SPINORLAB_CLIFFORD_HPP
#define SPINORLAB_CLIFFORD_HPP

#include <Eigen/QR>
#include <functional>
#include <optional>
#include <tuple>

#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"

namespace spinorlab {

// ---------------------------------------------------------------------------
// Fermions and Clifford words on Lambda_N
// ---------------------------------------------------------------------------

/// omega_j = c_j + c_j^*, a selfadjoint unitary; Fermions anticommute.
inline CMat fermion(int N, int j) {
  CMat c = creation(N, j);
  return c + c.adjoint();
}

/// omega_{-j} = (c_j - c_j^*) / i; together with the omega_j these form the
/// 2n-element spin system used throughout section 5.
inline CMat fermion_minus(int n, int j) {
  CMat c = creation(n, j);
  return Complex(0, -1) * (c - CMat(c.adjoint()));
}

/// omega_A = omega_{i1} ... omega_{il} over the increasing enumeration of A.
inline CMat omega_word(int N, std::uint32_t A) {
  Index dim = Index(1) << N;
  CMat m = CMat::Identity(dim, dim);
  for (int j = 1; j <= N; ++j)
    if (A & (1u << (j - 1))) m = m * fermion(N, j);
  return m;
}

/// Normalized trace Tr(x) = <x Omega, Omega>; on C_N this equals
/// 2^{-N} * (matrix trace), which tests enforce as an invariant.
inline Complex normalized_trace(const CMat& x) {
  if (x.rows() != x.cols())
    throw DimensionMismatch("normalized_trace: matrix not square");
  return x(0, 0);
}

struct SpinSystemReport {
  std::vector<double> selfadjoint;  // ||s_j - s_j^*|| per element
  std::vector<double> unitary;      // ||s_j^2 - I|| per element
  // ||s_a s_b + s_b s_a|| per pair a < b
  std::vector<std::tuple<std::size_t, std::size_t, double>> anticommute;
  double max_selfadjoint = 0.0;
  double max_unitary = 0.0;
  double max_anticommute = 0.0;
  bool pass = false;
};

inline SpinSystemReport is_spin_system(const std::vector<CMat>& mats,
                                       double tol = 1e-10) {
  SpinSystemReport r;
  if (mats.empty()) {
    r.pass = true;
    return r;
  }
  Index dim = mats.front().rows();
  for (const auto& s : mats)
    if (s.rows() != dim || s.cols() != dim)
      throw DimensionMismatch("is_spin_system: mixed matrix sizes");
  CMat id = CMat::Identity(dim, dim);
  for (std::size_t a = 0; a < mats.size(); ++a) {
    r.selfadjoint.push_back(
        (mats[a] - CMat(mats[a].adjoint())).cwiseAbs().maxCoeff());
    r.unitary.push_back((mats[a] * mats[a] - id).cwiseAbs().maxCoeff());
    r.max_selfadjoint = std::max(r.max_selfadjoint, r.selfadjoint.back());
    r.max_unitary = std::max(r.max_unitary, r.unitary.back());
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      double res =
          (mats[a] * mats[b] + mats[b] * mats[a]).cwiseAbs().maxCoeff();
      r.anticommute.emplace_back(a, b, res);
      r.max_anticommute = std::max(r.max_anticommute, res);
    }
  }
  r.pass = r.max_selfadjoint <= tol && r.max_unitary <= tol &&
           r.max_anticommute <= tol;
  return r;
}

/// rho_n = (1 + i^n omega_1...omega_{2n+1}) / 2, the central projection of
/// C_{2n+1} realized on Lambda_{2n+1}.
inline CMat rho_central(int n) {
  if (n < 1) throw IndexOutOfRange("rho_central: n < 1");
  int N = 2 * n + 1;
  Index dim = Index(1) << N;
  CMat word = omega_word(N, (1u << N) - 1);
  return 0.5 * (CMat::Identity(dim, dim) + std::pow(Complex(0, 1), n) * word);
}

// ---------------------------------------------------------------------------
// Subspaces of matrix spaces
// ---------------------------------------------------------------------------

/// Ordered spanning set of a subspace of a (possibly rectangular) matrix
/// space. Elements must be linearly independent; basis_* factories check the
/// Gram matrix.
struct SubspaceBasis {
  Index ambient_rows = 0;
  Index ambient_cols = 0;
  std::vector<CMat> elements;
  std::string name;

  Index dim() const { return Index(elements.size()); }

  /// Stacked column-major vectorization of the elements, one per column.
  CMat stacked() const {
    CMat b(ambient_rows * ambient_cols, dim());
    for (Index q = 0; q < dim(); ++q)
      b.col(q) = Eigen::Map<const CVec>(elements[std::size_t(q)].data(),
                                        ambient_rows * ambient_cols);
    return b;
  }

  /// Least-squares coordinates of x over the basis; optional residual.
  CVec coordinates(const CMat& x, double* residual = nullptr) const {
    if (x.rows() != ambient_rows || x.cols() != ambient_cols)
      throw DimensionMismatch("SubspaceBasis::coordinates: wrong ambient");
    CMat b = stacked();
    CVec v = Eigen::Map<const CVec>(x.data(), x.size());
    CVec c = b.completeOrthogonalDecomposition().solve(v);
    if (residual) *residual = (b * c - v).norm();
    return c;
  }

  CMat realize(const CVec& coeffs) const {
    if (coeffs.size() != dim())
      throw LengthMismatch("SubspaceBasis::realize: wrong coefficient count");
    CMat out = CMat::Zero(ambient_rows, ambient_cols);
    for (Index q = 0; q < dim(); ++q)
      out += coeffs(q) * elements[std::size_t(q)];
    return out;
  }

  /// Smallest singular value of the Gram matrix; > 0 iff independent.
  double gram_min_singular() const {
    CMat b = stacked();
    CMat gram = b.adjoint() * b;
    RVec sv = singular_values(gram);
    return sv.size() ? sv(sv.size() - 1) : 0.0;
  }
};

inline SubspaceBasis make_basis(std::vector<CMat> elems, std::string name,
                                double tol = 1e-10) {
  if (elems.empty()) throw LengthMismatch("make_basis: empty element list");
  SubspaceBasis b;
  b.ambient_rows = elems.front().rows();
  b.ambient_cols = elems.front().cols();
  for (const auto& e : elems)
    if (e.rows() != b.ambient_rows || e.cols() != b.ambient_cols)
      throw DimensionMismatch("make_basis: mixed ambient sizes");
  b.elements = std::move(elems);
  b.name = std::move(name);
  if (b.gram_min_singular() <= tol)
    throw Error("make_basis: elements of '" + b.name +
                "' are not linearly independent");
  return b;
}

/// Linear map u: X -> Y recorded by its coefficient matrix over the two
/// subspace bases: u(d_m) = sum_q coeffs(q, m) c_q.
struct SubspaceMap {
  SubspaceBasis domain;
  SubspaceBasis codomain;
  CMat coeffs;
  std::string name;

  CMat apply(const CMat& x, double* off_subspace = nullptr) const {
    CVec c = domain.coordinates(x, off_subspace);
    return codomain.realize(coeffs * c);
  }
};

struct SignTuple {
  std::vector<int> theta;  // entries in {-1, +1}
};

// ---------------------------------------------------------------------------
// The distinguished subspaces
// ---------------------------------------------------------------------------

/// E_N = span{1, omega_1, ..., omega_N} in C_N.
inline SubspaceBasis basis_E(int N) {
  if (N < 1) throw IndexOutOfRange("basis_E: N < 1");
  Index dim = Index(1) << N;
  std::vector<CMat> e;
  e.push_back(CMat::Identity(dim, dim));
  for (int j = 1; j <= N; ++j) e.push_back(fermion(N, j));
  return make_basis(std::move(e), "E_" + std::to_string(N));
}

/// F_n = span{1, omega_1..omega_2n, omega_1...omega_2n} in C_2n; the order
/// matches the s_j numbering (s_0 = 1, s_j = omega_j, s_{2n+1} = full word).
inline SubspaceBasis basis_F(int n) {
  if (n < 1) throw IndexOutOfRange("basis_F: n < 1");
  int N = 2 * n;
  Index dim = Index(1) << N;
  std::vector<CMat> e;
  e.push_back(CMat::Identity(dim, dim));
  for (int j = 1; j <= N; ++j) e.push_back(fermion(N, j));
  e.push_back(omega_word(N, (1u << N) - 1));
  return make_basis(std::move(e), "F_" + std::to_string(n));
}

/// Phi_N = span{omega_1, ..., omega_N}.
inline SubspaceBasis basis_Phi(int N) {
  if (N < 1) throw IndexOutOfRange("basis_Phi: N < 1");
  std::vector<CMat> e;
  for (int j = 1; j <= N; ++j) e.push_back(fermion(N, j));
  return make_basis(std::move(e), "Phi_" + std::to_string(N));
}

/// AH_n = span{x_{n,j} = c_j P_n, xt_{n,j} = c_j^* P_n}, element order
/// x_1..x_n, xt_1..xt_n. The n = 1 instance degenerates (xt_{1,1} = 0), so
/// n >= 2 is required.
inline SubspaceBasis basis_AH(int n) {
  if (n < 2) throw IndexOutOfRange("basis_AH: requires n >= 2");
  CMat P = parity_projection(n);
  std::vector<CMat> e;
  for (int j = 1; j <= n; ++j) e.push_back(creation(n, j) * P);
  for (int j = 1; j <= n; ++j)
    e.push_back(CMat(creation(n, j).adjoint()) * P);
  return make_basis(std::move(e), "AH_" + std::to_string(n));
}

/// BH_n = {x^* : x in AH_n}, order x_1^*..x_n^*, xt_1^*..xt_n^*.
inline SubspaceBasis basis_BH(int n) {
  SubspaceBasis ah = basis_AH(n);
  std::vector<CMat> e;
  for (const auto& x : ah.elements) e.push_back(x.adjoint());
  return make_basis(std::move(e), "BH_" + std::to_string(n));
}

/// DAH_n = span{x_{n,n} + xt_{n,n}; x_{n,j}, xt_{n,j} for j < n}.
inline SubspaceBasis basis_DAH(int n) {
  if (n < 2) throw IndexOutOfRange("basis_DAH: requires n >= 2");
  CMat P = parity_projection(n);
  std::vector<CMat> e;
  e.push_back(creation(n, n) * P + CMat(creation(n, n).adjoint()) * P);
  for (int j = 1; j < n; ++j) {
    e.push_back(creation(n, j) * P);
    e.push_back(CMat(creation(n, j).adjoint()) * P);
  }
  return make_basis(std::move(e), "DAH_" + std::to_string(n));
}

/// H_{n,k} = span{c_{n,j,k} : j = 1..n}, rectangular ambient.
inline SubspaceBasis basis_H(int n, int k) {
  if (k < 1 || k > n) throw IndexOutOfRange("basis_H: k out of 1..n");
  std::vector<CMat> e;
  for (int j = 1; j <= n; ++j) e.push_back(creation_restricted(n, j, k));
  return make_basis(std::move(e),
                    "H_" + std::to_string(n) + "_" + std::to_string(k));
}

// ---------------------------------------------------------------------------
// tau, tau_Theta, kappa and the conjugation diagonals
// ---------------------------------------------------------------------------

/// tau: F_n -> F_n fixes 1 and every omega_j and negates the full word.
inline SubspaceMap tau(int n) {
  SubspaceMap m;
  m.domain = basis_F(n);
  m.codomain = m.domain;
  Index d = m.domain.dim();
  CVec diag = CVec::Ones(d);
  diag(d - 1) = -1.0;
  m.coeffs = diag.asDiagonal();
  m.name = "tau_" + std::to_string(n);
  return m;
}

/// tau_Theta: s_j -> theta_j s_j over the numbering s_0 = 1, s_j = omega_j,
/// s_{2n+1} = omega_1...omega_2n.
inline SubspaceMap tau_theta(int n, const SignTuple& t) {
  if (Index(t.theta.size()) != 2 * n + 2)
    throw LengthMismatch("tau_theta: need 2n+2 signs");
  for (int s : t.theta)
    if (s != 1 && s != -1) throw InvalidWeight("tau_theta: signs must be +-1");
  SubspaceMap m;
  m.domain = basis_F(n);
  m.codomain = m.domain;
  CVec diag(2 * n + 2);
  for (int j = 0; j < 2 * n + 2; ++j) diag(j) = double(t.theta[std::size_t(j)]);
  m.coeffs = diag.asDiagonal();
  m.name = "tau_theta_" + std::to_string(n);
  return m;
}

/// kappa: AH_n -> BH_n, x_{n,j} -> xt_{n,j}^*, xt_{n,j} -> x_{n,j}^*.
inline SubspaceMap kappa(int n) {
  SubspaceMap m;
  m.domain = basis_AH(n);
  m.codomain = basis_BH(n);
  Index d = m.domain.dim();
  m.coeffs = CMat::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    m.coeffs(n + j, j) = 1.0;  // x_j -> xt_j^*
    m.coeffs(j, n + j) = 1.0;  // xt_j -> x_j^*
  }
  m.name = "kappa_" + std::to_string(n);
  return m;
}

/// +-1 diagonal of x -> s_j^* x s_j over the omega_A basis of C_2n,
/// j in 0..2n+1 with the s_j numbering above.
inline RVec conjugation_pi(int n, int j) {
  if (j < 0 || j > 2 * n + 1)
    throw IndexOutOfRange("conjugation_pi: j out of 0..2n+1");
  Index dim = Index(1) << (2 * n);
  RVec d(dim);
  for (std::uint32_t A = 0; A < std::uint32_t(dim); ++A) {
    if (j == 0) {
      d(A) = 1.0;
    } else if (j <= 2 * n) {
      bool in = A & (1u << (j - 1));
      bool even = popcount(A) % 2 == 0;
      d(A) = ((even && !in) || (!even && in)) ? 1.0 : -1.0;
    } else {
      d(A) = (popcount(A) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Relation (tau via kappa) and the Wittstock factorization
// ---------------------------------------------------------------------------

struct RelationReport {
  double relation_residual = 0.0;  // max coefficient deviation over F_{n-1}
  double rho_residual = 0.0;       // || pi(rho_{n-1}) - P_n ||_max
  double spin_residual = 0.0;      // spin-system residual of the omega' tuple
  bool spin_degenerate = false;    // q in {0, 1}: Lemma-unique-spin case split
  bool pass(double tol) const {
    return !spin_degenerate && relation_residual <= tol &&
           rho_residual <= tol && spin_residual <= tol;
  }
};

/// Verifies tau = (pi_1^{-1} pi^{-1} W) o kappa o (W^{-1} pi pi_0) on the
/// basis of F_{n-1}, with W left multiplication by i*omega_n and pi the spin
/// representation of C_{2n-1} on Lambda_n built from omega'_j = i
/// omega_n omega_j. Also checks pi(rho_{n-1}) = P_n.
inline RelationReport verify_relation_tau_kappa(int n, double tol = 1e-10) {
  if (n < 2) throw IndexOutOfRange("verify_relation_tau_kappa: n >= 2");
  RelationReport rep;
  const int M = 2 * n - 1;        // generators of the odd algebra
  const Index big = Index(1) << M;
  const Index small = Index(1) << n;

  // spin tuple (w'_{-n}, w'_{n-1}, w'_{-(n-1)}, ..., w'_1, w'_{-1})
  CMat wn = fermion(n, n);
  auto wprime = [&](int j) {
    CMat wj = (j < 0) ? fermion_minus(n, -j) : fermion(n, j);
    return CMat(Complex(0, 1) * wn * wj);
  };
  std::vector<CMat> spin;
  spin.push_back(wprime(-n));
  for (int j = n - 1; j >= 1; --j) {
    spin.push_back(wprime(j));
    spin.push_back(wprime(-j));
  }
  SpinSystemReport sp = is_spin_system(spin, tol);
  rep.spin_residual =
      std::max({sp.max_selfadjoint, sp.max_unitary, sp.max_anticommute});

  auto pi_word = [&](std::uint32_t A) {
    CMat m = CMat::Identity(small, small);
    for (int idx = 0; idx < M; ++idx)
      if (A & (1u << idx)) m = m * spin[std::size_t(idx)];
    return m;
  };

  // q = pi(rho_{n-1}); degenerate iff the spin word is a multiple of 1
  CMat q = 0.5 * (CMat::Identity(small, small) +
                  std::pow(Complex(0, 1), n - 1) * pi_word((1u << M) - 1));
  double q_norm = q.cwiseAbs().maxCoeff();
  double q_minus_id = (q - CMat::Identity(small, small)).cwiseAbs().maxCoeff();
  if (q_norm <= tol || q_minus_id <= tol) {
    rep.spin_degenerate = true;
    return rep;
  }
  rep.rho_residual = (q - parity_projection(n)).cwiseAbs().maxCoeff();

  SubspaceBasis ah = basis_AH(n);
  SubspaceBasis bh = basis_BH(n);
  SubspaceMap kap = kappa(n);

  // rho_{n-1} and the generators of C_{2n-1} on Lambda_{2n-1}
  CMat word_big = omega_word(M, (1u << M) - 1);
  CMat rho = 0.5 * (CMat::Identity(big, big) +
                    std::pow(Complex(0, 1), n - 1) * word_big);
  CMat one_minus_rho = CMat::Identity(big, big) - rho;

  // F_{n-1} basis labels as subsets of {1..2n-2}
  std::vector<std::uint32_t> fsets;
  fsets.push_back(0);
  for (int j = 0; j < 2 * n - 2; ++j) fsets.push_back(1u << j);
  fsets.push_back((1u << (2 * n - 2)) - 1);

  for (std::size_t t = 0; t < fsets.size(); ++t) {
    std::uint32_t A = fsets[t];
    // pi(pi_0(omega_A)) = q * pi(omega_A), then W^{-1} = mult by -i omega_n
    CMat y = Complex(0, -1) * wn * (q * pi_word(A));
    double off = 0.0;
    CVec c = ah.coordinates(y, &off);
    rep.relation_residual = std::max(rep.relation_residual, off);
    CMat img = Complex(0, 1) * wn * bh.realize(kap.coeffs * c);  // W o kappa
    // pi^{-1}: coefficients over the orthonormal family pi(omega_A)
    // (normalized matrix trace), then pi_1^{-1} via the orthogonal family
    // sqrt(2) (1-rho) omega_B.
    CMat elem = CMat::Zero(big, big);
    for (std::uint32_t A2 = 0; A2 < (1u << M); ++A2) {
      CMat pw = pi_word(A2);
      Complex coef = (pw.adjoint() * img).trace() / double(small);
      if (std::abs(coef) > 1e-14) elem += coef * omega_word(M, A2);
    }
    CMat z = one_minus_rho * elem;
    for (std::uint32_t B = 0; B < (1u << (2 * n - 2)); ++B) {
      CMat base = one_minus_rho * omega_word(M, B);
      Complex got = 2.0 * normalized_trace(CMat(base.adjoint() * z));
      Complex want = 0.0;
      if (B == A) want = (A == (1u << (2 * n - 2)) - 1) ? -1.0 : 1.0;
      rep.relation_residual =
          std::max(rep.relation_residual, std::abs(got - want));
    }
  }
  return rep;
}

struct WittstockReport {
  std::vector<CMat> a, b;
  double tau_residual = 0.0;       // reproduction of tau on the F_n basis
  double bound_a = 0.0;            // || sum a_j^* a_j ||
  double bound_b = 0.0;            // || sum b_j^* b_j ||
  bool final_pair_is_word = false; // s_{2n+1} (vs s_0 = 1) closed the sum
  double residual_alternative = 0.0;  // residual of the rejected candidate
};

/// Explicit factorization tau(x) = sum_j a_j^* x b_j with
/// a_j = (2n)^{-1/2} s_{2n+1} s_j, j = 1..2n+1, plus a final pair. The final
/// element is tried as s_{2n+1} and as s_0 = 1; the report records which one
/// reproduces tau.
inline WittstockReport wittstock_factorization(int n) {
  if (n < 1) throw IndexOutOfRange("wittstock_factorization: n < 1");
  int N = 2 * n;
  Index dim = Index(1) << N;
  std::vector<CMat> s;
  s.push_back(CMat::Identity(dim, dim));
  for (int j = 1; j <= N; ++j) s.push_back(fermion(N, j));
  s.push_back(omega_word(N, (1u << N) - 1));

  SubspaceBasis f = basis_F(n);
  double scale = 1.0 / std::sqrt(double(2 * n));

  auto residual_for = [&](const CMat& last) {
    std::vector<CMat> a, b;
    for (int j = 1; j <= 2 * n + 1; ++j) {
      a.push_back(scale * s[std::size_t(2 * n + 1)] * s[std::size_t(j)]);
      b.push_back(a.back());
    }
    a.push_back(scale * last);
    b.push_back(-scale * last);
    double res = 0.0;
    for (Index m = 0; m < f.dim(); ++m) {
      const CMat& x = f.elements[std::size_t(m)];
      CMat u = CMat::Zero(dim, dim);
      for (std::size_t j = 0; j < a.size(); ++j)
        u += a[j].adjoint() * x * b[j];
      CMat want = (m == f.dim() - 1) ? CMat(-x) : x;
      res = std::max(res, (u - want).cwiseAbs().maxCoeff());
    }
    return std::tuple<double, std::vector<CMat>, std::vector<CMat>>(
        res, std::move(a), std::move(b));
  };

  auto [res_word, a_word, b_word] = residual_for(s.back());
  auto [res_one, a_one, b_one] = residual_for(s.front());

  WittstockReport rep;
  if (res_word <= res_one) {
    rep.final_pair_is_word = true;
    rep.tau_residual = res_word;
    rep.residual_alternative = res_one;
    rep.a = std::move(a_word);
    rep.b = std::move(b_word);
  } else {
    rep.final_pair_is_word = false;
    rep.tau_residual = res_one;
    rep.residual_alternative = res_word;
    rep.a = std::move(a_one);
    rep.b = std::move(b_one);
  }
  CMat suma = CMat::Zero(dim, dim), sumb = CMat::Zero(dim, dim);
  for (const auto& m : rep.a) suma += m.adjoint() * m;
  for (const auto& m : rep.b) sumb += m.adjoint() * m;
  rep.bound_a = singular_values(suma)(0);
  rep.bound_b = singular_values(sumb)(0);
  return rep;
}

}  // namespace spinorlab

#endif
