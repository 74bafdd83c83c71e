#include "spinorlab/suites.hpp"

#include <sstream>

#include "spinorlab/projections.hpp"

namespace spinorlab {

namespace {

double maxabs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

OptimizerConfig opt_config(const RunConfig& cfg, std::uint64_t salt) {
  OptimizerConfig oc;
  oc.seed = cfg.seed * 1000003ULL + salt;
  oc.restarts = cfg.restarts;
  oc.max_iter = cfg.max_iter;
  oc.step0 = cfg.step0;
  oc.tol = cfg.tol_opt;
  return oc;
}

/// Budget used for the large full-block searches; exceeding it buys nothing
/// once the bound clears 1, and keeps `verify all` inside its time budget.
OptimizerConfig opt_config_block(const RunConfig& cfg, std::uint64_t salt) {
  OptimizerConfig oc = opt_config(cfg, salt);
  oc.restarts = std::clamp(cfg.restarts / 8, 4, 16);
  oc.max_iter = std::min(cfg.max_iter, 250);
  return oc;
}

std::string fmt_p(double p) {
  return std::isinf(p) ? "inf" : format_double(p);
}

// ---------------------------------------------------------------------------
// fock
// ---------------------------------------------------------------------------

void suite_fock(const RunConfig& cfg, std::vector<CheckResult>& out) {
  {
    double res = 0.0;
    for (int n = 1; n <= 5; ++n) {
      Index dim = Index(1) << n;
      for (int i = 1; i <= n; ++i) {
        CMat ci = creation(n, i);
        for (int j = i; j <= n; ++j) {
          CMat cj = creation(n, j);
          res = std::max(res, maxabs(CMat(ci * cj + cj * ci)));
          CMat want = (i == j) ? CMat(CMat::Identity(dim, dim))
                               : CMat(CMat::Zero(dim, dim));
          res = std::max(
              res, maxabs(CMat(ci * cj.adjoint() + cj.adjoint() * ci - want)));
        }
      }
    }
    out.push_back(CheckResult::against("fock.car", res, 0.0, 0.0)
                      .with("n_max", 5LL));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 5; ++n)
      for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j) {
          CMat full = creation(n, j);
          GradedBasis rows = graded_basis(n, k), cols = graded_basis(n, k - 1);
          CMat r = creation_restricted(n, j, k);
          for (Index a = 0; a < rows.size(); ++a)
            for (Index b = 0; b < cols.size(); ++b)
              res = std::max(res,
                             std::abs(r(a, b) - full(rows.order[std::size_t(a)],
                                                     cols.order[std::size_t(b)])));
          res = std::max(res, std::abs(r.squaredNorm() -
                                       double(binom(n - 1, k - 1))));
        }
    out.push_back(
        CheckResult::against("fock.graded_block", res, 0.0, 0.0));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 5; ++n) {
      CMat p = parity_projection(n);
      res = std::max(res, std::abs(p.trace().real() - double(1 << (n - 1))));
      res = std::max(res, maxabs(CMat(p * p - p)));
    }
    out.push_back(CheckResult::against("fock.parity", res, 0.0, 0.0));
  }
  {
    Rng rng(cfg.seed ^ 0xf0c5);
    double res = 0.0, unit = 0.0;
    for (int n = 2; n <= 4; ++n) {
      CMat u1 = random_unitary(n, rng), u2 = random_unitary(n, rng);
      CMat lhs = second_quantization(n, CMat(u1 * u2));
      res = std::max(res, maxabs(CMat(lhs - second_quantization(n, u1) *
                                                second_quantization(n, u2))));
      CMat fu = second_quantization(n, u1);
      unit = std::max(unit, maxabs(CMat(fu.adjoint() * fu -
                                        CMat::Identity(fu.rows(), fu.rows()))));
    }
    out.push_back(CheckResult::flag("fock.second_quantization.functorial",
                                    res <= 1e-12, res, 1e-12));
    out.push_back(CheckResult::flag("fock.second_quantization.unitary",
                                    unit <= 1e-10, unit, 1e-10));
  }
  {
    const int n = 3, k = 2;
    Rng rng(cfg.seed ^ 0x4aa);
    CMat u = random_unitary(n, rng);
    double res = 0.0;
    GradedBasis rows = graded_basis(n, k), cols = graded_basis(n, k - 1);
    for (int j = 1; j <= n; ++j) {
      CMat big = quantized_conjugation(n, u, creation(n, j));
      CMat want = CMat::Zero(rows.size(), cols.size());
      for (int i = 1; i <= n; ++i)
        want += u(i - 1, j - 1) * creation_restricted(n, i, k);
      for (Index a = 0; a < rows.size(); ++a)
        for (Index b = 0; b < cols.size(); ++b)
          res = std::max(res, std::abs(big(rows.order[std::size_t(a)],
                                           cols.order[std::size_t(b)]) -
                                       want(a, b)));
    }
    out.push_back(CheckResult::flag("fock.quant_intertwine", res <= 1e-10,
                                    res, 1e-10)
                      .with("n", 3LL)
                      .with("k", 2LL));
  }
}

// ---------------------------------------------------------------------------
// clifford
// ---------------------------------------------------------------------------

void suite_clifford(const RunConfig& cfg, std::vector<CheckResult>& out) {
  {
    double res = 0.0;
    for (int N = 1; N <= 5; ++N) {
      std::vector<CMat> f;
      for (int j = 1; j <= N; ++j) f.push_back(fermion(N, j));
      SpinSystemReport r = is_spin_system(f, cfg.tol_exact);
      res = std::max({res, r.max_selfadjoint, r.max_unitary,
                      r.max_anticommute});
    }
    out.push_back(CheckResult::against("clifford.spin.fermions", res, 0.0, 0.0));
  }
  {
    // (omega_1..omega_2n, i^n omega_1...omega_2n) is a spin system
    double res = 0.0;
    for (int n = 1; n <= 2; ++n) {
      int N = 2 * n;
      std::vector<CMat> f;
      for (int j = 1; j <= N; ++j) f.push_back(fermion(N, j));
      f.push_back(std::pow(Complex(0, 1), n) * omega_word(N, (1u << N) - 1));
      SpinSystemReport r = is_spin_system(f, cfg.tol_exact);
      res = std::max({res, r.max_selfadjoint, r.max_unitary,
                      r.max_anticommute});
    }
    out.push_back(
        CheckResult::flag("clifford.spin.odd_tuple", res <= 1e-12, res, 1e-12));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 3; ++n) {
      std::vector<CMat> f;
      for (int j = 1; j <= n; ++j) f.push_back(fermion(n, j));
      for (int j = 1; j <= n; ++j) f.push_back(fermion_minus(n, j));
      SpinSystemReport r = is_spin_system(f, cfg.tol_exact);
      res = std::max({res, r.max_selfadjoint, r.max_unitary,
                      r.max_anticommute});
    }
    out.push_back(
        CheckResult::flag("clifford.spin.minus_tuple", res <= 1e-12, res, 1e-12));
  }
  {
    double res = 0.0;
    for (int N = 1; N <= 5; ++N)
      for (std::uint32_t a = 0; a < (1u << N); ++a) {
        CMat w = omega_word(N, a);
        Complex tr = normalized_trace(w);
        res = std::max(res,
                       std::abs(tr - w.trace() / double(Index(1) << N)));
        if (a) res = std::max(res, std::abs(tr));
      }
    out.push_back(
        CheckResult::flag("clifford.trace_coherence", res <= 1e-12, res, 1e-12));
  }
  {
    double res = 0.0;
    for (int N = 1; N <= 4; ++N)
      for (std::uint32_t a = 0; a < (1u << N); ++a) {
        CMat wa = omega_word(N, a);
        for (std::uint32_t b = 0; b < (1u << N); ++b) {
          Complex ip = normalized_trace(CMat(omega_word(N, b).adjoint() * wa));
          res = std::max(res, std::abs(ip - (a == b ? 1.0 : 0.0)));
        }
      }
    out.push_back(
        CheckResult::flag("clifford.word_orthonormal", res <= 1e-12, res, 1e-12));
  }
  {
    double res = 0.0;
    for (int N = 1; N <= 5; ++N) {
      CMat w = omega_word(N, (1u << N) - 1);
      double sign = (((std::int64_t(N) * (N - 1) / 2) % 2) == 0) ? 1.0 : -1.0;
      res = std::max(res, maxabs(CMat(w * w - sign * CMat::Identity(w.rows(),
                                                                    w.rows()))));
    }
    out.push_back(CheckResult::against("clifford.word_square", res, 0.0, 0.0));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 5; ++n) {
      Index dim = Index(1) << n;
      CMat word = CMat::Identity(dim, dim);
      for (int j = n; j >= 1; --j) word = word * fermion(n, j) * fermion_minus(n, j);
      CMat pn = 0.5 * (CMat::Identity(dim, dim) +
                       std::pow(Complex(0, 1), n) * word);
      res = std::max(res, maxabs(CMat(pn - parity_projection(n))));
    }
    out.push_back(CheckResult::flag("clifford.pn_identity", res <= 1e-12, res,
                                    1e-12)
                      .with("n_max", 5LL));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 3; ++n) {
      CMat r = rho_central(n);
      res = std::max(res, maxabs(CMat(r * r - r)));
      res = std::max(res, maxabs(CMat(r - r.adjoint())));
      res = std::max(res, std::abs(normalized_trace(r) - 0.5));
      int N = 2 * n + 1;
      for (int j = 1; j <= N; ++j) {
        CMat w = fermion(N, j);
        res = std::max(res, maxabs(CMat(r * w - w * r)));
      }
      // rho_n omega_{2n+1} = rho_n (i^n omega_1..omega_2n) and the 1-rho twin
      CMat even_word = std::pow(Complex(0, 1), n) *
                       omega_word(N, (1u << (N - 1)) - 1);
      CMat wlast = fermion(N, N);
      CMat one_minus = CMat::Identity(r.rows(), r.rows()) - r;
      res = std::max(res, maxabs(CMat(r * wlast - r * even_word)));
      res = std::max(res, maxabs(CMat(one_minus * wlast + one_minus * even_word)));
    }
    out.push_back(
        CheckResult::flag("clifford.rho", res <= 1e-12, res, 1e-12));
  }
  {
    // dim rho_n C_{2n+1} = 2^{2n}: rank of the left-multiplication image
    bool ok = true;
    for (int n = 1; n <= 2; ++n) {
      int N = 2 * n + 1;
      Index dim = Index(1) << N;
      CMat r = rho_central(n);
      CMat coeff(dim, dim);
      for (std::uint32_t a = 0; a < std::uint32_t(dim); ++a) {
        CMat img = r * omega_word(N, a);
        for (std::uint32_t b = 0; b < std::uint32_t(dim); ++b)
          coeff(b, a) =
              normalized_trace(CMat(omega_word(N, b).adjoint() * img));
      }
      RVec sv = singular_values(coeff);
      Index rank = 0;
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9) ++rank;
      if (rank != (Index(1) << (2 * n))) ok = false;
    }
    out.push_back(CheckResult::boolean("clifford.rho_rank", ok));
  }
  {
    bool ok = true;
    for (int N = 1; N <= 5; ++N)
      if (basis_E(N).dim() != N + 1) ok = false;
    for (int n = 1; n <= 2; ++n)
      if (basis_F(n).dim() != 2 * n + 2) ok = false;
    for (int n = 2; n <= 3; ++n) {
      if (basis_AH(n).dim() != 2 * n) ok = false;
      if (basis_BH(n).dim() != 2 * n) ok = false;
      if (basis_DAH(n).dim() != 2 * n - 1) ok = false;
    }
    // AH_2 Gram rank = 4
    SubspaceBasis ah2 = basis_AH(2);
    CMat b = ah2.stacked();
    RVec sv = singular_values(CMat(b.adjoint() * b));
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9) ++rank;
    if (rank != 4) ok = false;
    out.push_back(CheckResult::boolean("clifford.basis_dims", ok));
  }
  {
    double res = 0.0;
    for (int n = 1; n <= 5; ++n)
      for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= n; ++j)
          for (double p : {1.0, 2.0, 3.0, 4.0}) {
            double nrm =
                schatten_norm(creation_restricted(n, j, k), PExponent::of(p));
            res = std::max(res, std::abs(std::pow(nrm, p) -
                                         double(binom(n - 1, k - 1))));
          }
    out.push_back(
        CheckResult::flag("clifford.phi_scaling", res <= 1e-9, res, 1e-9));
  }
  {
    // omega_j omega_{-j} = i (c_j c_j^* - c_j^* c_j)
    double res = 0.0;
    for (int n = 1; n <= 3; ++n)
      for (int j = 1; j <= n; ++j) {
        CMat c = creation(n, j);
        CMat want = Complex(0, 1) *
                    (c * c.adjoint() - CMat(c.adjoint() * c));
        res = std::max(
            res, maxabs(CMat(fermion(n, j) * fermion_minus(n, j) - want)));
      }
    out.push_back(
        CheckResult::against("clifford.fermion_pair", res, 0.0, 0.0));
  }
}

// ---------------------------------------------------------------------------
// tau
// ---------------------------------------------------------------------------

void suite_tau(const RunConfig& cfg, std::vector<CheckResult>& out) {
  {
    SubspaceMap t = tau(2);
    double res = maxabs(CMat(t.coeffs * t.coeffs -
                             CMat::Identity(t.coeffs.rows(), t.coeffs.rows())));
    out.push_back(CheckResult::against("tau.involution", res, 0.0, 0.0));
  }
  {
    // Pauli identification: 1 -> 1, a -> w1, b -> w2, c -> w1w2 is
    // multiplicative, and transpose on M_2 matches tau's coefficient action.
    CMat a = CMat::Zero(2, 2), b = CMat::Zero(2, 2), c = CMat::Zero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = -1;
    b(0, 1) = 1;
    b(1, 0) = 1;
    c(0, 1) = 1;
    c(1, 0) = -1;
    std::vector<CMat> pauli{CMat::Identity(2, 2), a, b, c};
    std::vector<CMat> cliff{CMat::Identity(4, 4), fermion(2, 1), fermion(2, 2),
                            omega_word(2, 3)};
    double res = 0.0;
    SubspaceBasis m2;
    m2.ambient_rows = m2.ambient_cols = 2;
    m2.elements = pauli;
    m2.name = "pauli";
    SubspaceBasis f1 = basis_F(1);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CVec cm = m2.coordinates(CMat(pauli[std::size_t(i)] * pauli[std::size_t(j)]));
        CVec cc = f1.coordinates(CMat(cliff[std::size_t(i)] * cliff[std::size_t(j)]));
        res = std::max(res, (cm - cc).cwiseAbs().maxCoeff());
      }
    // transpose fixes 1,a,b and negates c, i.e. tau's diagonal
    for (int i = 0; i < 4; ++i) {
      CVec ct = m2.coordinates(CMat(pauli[std::size_t(i)].transpose()));
      CVec want = CVec::Zero(4);
      want(i) = (i == 3) ? -1.0 : 1.0;
      res = std::max(res, (ct - want).cwiseAbs().maxCoeff());
    }
    out.push_back(CheckResult::flag("tau.pauli_transpose", res <= 1e-12, res,
                                    1e-12));
  }
  {
    Rng rng(cfg.seed ^ 0x7a0);
    double res = 0.0;
    for (int n = 1; n <= 2; ++n) {
      SubspaceMap t = tau(n);
      double norm2n = 1.0 / double(Index(1) << (2 * n));
      for (double p : {1.0, 3.0, 4.0})
        for (int trial = 0; trial < 10; ++trial) {
          CVec coef = rng.gaussian_vec(t.domain.dim());
          CMat x = t.domain.realize(coef);
          CMat tx = t.codomain.realize(t.coeffs * coef);
          res = std::max(res, std::abs(
              schatten_norm(tx, PExponent::of(p), norm2n) -
              schatten_norm(x, PExponent::of(p), norm2n)));
        }
    }
    out.push_back(CheckResult::flag("tau.isometry", res <= 1e-10, res, 1e-10));
  }
  {
    // 2n tau_Theta = pi_0 - sum_{j>=1} pi_j on F_n for Theta = (-1,1,...,1)
    double res = 0.0;
    for (int n = 1; n <= 3; ++n) {
      int N = 2 * n;
      Index dim = Index(1) << N;
      std::vector<CMat> s;
      s.push_back(CMat::Identity(dim, dim));
      for (int j = 1; j <= N; ++j) s.push_back(fermion(N, j));
      s.push_back(omega_word(N, (1u << N) - 1));
      SignTuple th;
      th.theta.assign(std::size_t(2 * n + 2), 1);
      th.theta[0] = -1;
      SubspaceMap tt = tau_theta(n, th);
      for (Index m = 0; m < tt.domain.dim(); ++m) {
        const CMat& x = tt.domain.elements[std::size_t(m)];
        CMat rhs = x;
        for (int j = 1; j <= 2 * n + 1; ++j)
          rhs -= s[std::size_t(j)].adjoint() * x * s[std::size_t(j)];
        CVec e = CVec::Zero(tt.domain.dim());
        e(m) = 1.0;
        CMat lhs = double(2 * n) * tt.codomain.realize(tt.coeffs * e);
        res = std::max(res, maxabs(CMat(lhs - rhs)));
      }
    }
    out.push_back(
        CheckResult::flag("tau.theta_identity", res <= 1e-12, res, 1e-12));
  }
  {
    // conjugation_pi matches the explicit conjugations
    double res = 0.0;
    for (int n = 1; n <= 2; ++n) {
      int N = 2 * n;
      Index dim = Index(1) << N;
      std::vector<CMat> s;
      s.push_back(CMat::Identity(dim, dim));
      for (int j = 1; j <= N; ++j) s.push_back(fermion(N, j));
      s.push_back(omega_word(N, (1u << N) - 1));
      for (int j = 0; j <= 2 * n + 1; ++j) {
        RVec d = conjugation_pi(n, j);
        for (std::uint32_t a = 0; a < (1u << N); ++a) {
          CMat w = omega_word(N, a);
          res = std::max(res, maxabs(CMat(s[std::size_t(j)].adjoint() * w *
                                              s[std::size_t(j)] -
                                          d(a) * w)));
        }
      }
    }
    out.push_back(CheckResult::flag("tau.pi_conjugation", res <= 1e-12, res,
                                    1e-12));
  }
  {
    // Exact diagonal extremes: minus-word 2n, all-plus 2n+2, for n <= 4.
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      CVec minus = CVec::Ones(2 * n + 2);
      minus(2 * n + 1) = -1.0;
      double lo = spin_multiplier_norm(n, minus, PExponent::inf()).value;
      double hi = spin_multiplier_norm(n, CVec::Ones(2 * n + 2),
                                       PExponent::inf()).value;
      if (lo != double(2 * n) || hi != double(2 * n + 2)) ok = false;
    }
    out.push_back(CheckResult::boolean("tau.pi_extremes", ok));
  }
  {
    // cb||tau|| = (n+1)/n read off the exact diagonal values
    for (int n = 1; n <= 4; ++n) {
      CVec minus = CVec::Ones(2 * n + 2);
      minus(2 * n + 1) = -1.0;
      double lo = spin_multiplier_norm(n, minus, PExponent::inf()).value;
      double hi =
          spin_multiplier_norm(n, CVec::Ones(2 * n + 2), PExponent::inf()).value;
      out.push_back(CheckResult::against("tau.cb_exact", hi / lo,
                                         double(n + 1) / double(n), 1e-12)
                        .with("n", (long long)n));
    }
  }
  {
    // optimizer reaches the cb value at level 2 for n = 1, p in {inf, 1}
    for (double p : {std::numeric_limits<double>::infinity(), 1.0}) {
      NormEstimate est = level_norm_lower_bound(tau(1), 2, PExponent::of(p),
                                                opt_config(cfg, 0x1a1));
      out.push_back(CheckResult::bound("tau.cb_optimizer", est.value,
                                       est.value >= 2.0 - 1e-3, 2.0 - 1e-3)
                        .with("n", 1LL)
                        .with("p", fmt_p(p))
                        .with("k", 2LL));
    }
  }
  {
    for (int n = 1; n <= 3; ++n) {
      WittstockReport w = wittstock_factorization(n);
      bool ok = w.tau_residual <= 1e-10 &&
                std::abs(w.bound_a - double(n + 1) / n) <= 1e-10 &&
                std::abs(w.bound_b - double(n + 1) / n) <= 1e-10 &&
                w.final_pair_is_word;
      out.push_back(CheckResult::flag("tau.wittstock", ok, w.tau_residual,
                                      1e-10)
                        .with("n", (long long)n)
                        .with("bound", w.bound_a)
                        .with("final_pair",
                              w.final_pair_is_word ? "s_{2n+1}" : "s_0"));
    }
  }
  {
    // even number of minus signs: tau_Theta is a complete isometry; the
    // level-2 estimate sits at 1 within optimizer tolerance
    SignTuple th;
    th.theta = {1, -1, -1, 1, 1, 1};
    NormEstimate est = level_norm_lower_bound(tau_theta(2, th), 2,
                                              PExponent::of(3.0),
                                              opt_config_block(cfg, 0x3b3));
    out.push_back(CheckResult::against("tau.theta_parity", est.value, 1.0,
                                       cfg.tol_opt)
                      .with("n", 2LL)
                      .with("p", 3.0));
  }
}

// ---------------------------------------------------------------------------
// theorem7
// ---------------------------------------------------------------------------

void suite_theorem7(const RunConfig& cfg, std::vector<CheckResult>& out) {
  {
    // spin multiplier norm vs hypercube norm, 100 seeded draws per (n, p)
    double worst = 0.0;
    Rng rng(cfg.seed ^ 0x7ad);
    for (int n = 1; n <= 3; ++n)
      for (double p : {1.0, 1.5, 2.0, 3.0, 4.0})
        for (int trial = 0; trial < 100; ++trial) {
          CVec alpha = rng.gaussian_vec(2 * n + 2);
          double lhs = spin_multiplier_norm(n, alpha, PExponent::of(p)).value;
          double rhs = rademacher_norm(n, alpha, PExponent::of(p));
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-300));
        }
    out.push_back(CheckResult::flag("theorem7.rad2_cross", worst <= 1e-10,
                                    worst, 1e-10)
                      .with("trials_per_cell", 100LL));
  }
  {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
      FgReport r = fg_identity_check(n);
      if (!r.norm_identity || !r.pointwise_identity || !r.f_in_4z) ok = false;
      if (n == 1 && (r.f_abs_sum != 4 || r.g_abs_sum != 8)) ok = false;
    }
    out.push_back(CheckResult::boolean("theorem7.fg_identity", ok).with("n_max", 6LL));
  }
  {
    const std::vector<double> grid{-1.0, -0.5, 0.3, 0.7, 1.0};
    auto max_asym = [&](int n, double p) {
      double m = 0.0;
      for (double t : grid)
        m = std::max(m, std::abs(asym_probe(n, PExponent::of(p), t)));
      return m;
    };
    for (int n = 1; n <= 3; ++n)
      for (int q = 1; q <= n; ++q) {
        double m = max_asym(n, 2.0 * q);
        out.push_back(CheckResult::against("theorem7.asym_zero", m, 0.0, 1e-10)
                          .with("n", (long long)n)
                          .with("p", 2.0 * q));
      }
    for (auto [n, p] : std::vector<std::pair<int, double>>{
             {1, 4.0}, {2, 6.0}, {1, 3.0}, {2, 3.0}}) {
      out.push_back(CheckResult::gate("theorem7.asym_nonzero", max_asym(n, p),
                                      1e-6)
                        .with("n", (long long)n)
                        .with("p", p));
    }
  }
  {
    TensorEqualityReport eq = tensor_equality_check(2, 4, 50, cfg.seed ^ 0x7e4);
    out.push_back(CheckResult::flag("theorem7.tensor_equal",
                                    eq.max_rel_dev <= 1e-9, eq.max_rel_dev,
                                    1e-9)
                      .with("n", 2LL)
                      .with("p", 4.0));
    TensorEqualityReport ne = tensor_equality_check(1, 4, 50, cfg.seed ^ 0x7e5);
    out.push_back(CheckResult::gate("theorem7.tensor_break", ne.max_rel_dev,
                                    1e-3)
                      .with("n", 1LL)
                      .with("p", 4.0));
  }
  {
    CVec a = CVec::Ones(4);
    out.push_back(CheckResult::against("theorem7.rad1_sqrt2",
                                       rad1_ratio(1, a, PExponent::of(4.0)),
                                       std::sqrt(2.0), 1e-12));
    CVec b = CVec::Ones(4);
    b(3) = -1.0;
    out.push_back(CheckResult::against("theorem7.rad1_two",
                                       rad1_ratio(1, b, PExponent::of(1.0)),
                                       2.0, 1e-12));
    CVec c = CVec::Ones(4);
    c(3) = 0.0;
    out.push_back(CheckResult::against("theorem7.rad1_trivial",
                                       rad1_ratio(1, c, PExponent::of(3.0)),
                                       1.0, 1e-12));
  }
  {
    double res = 0.0;
    for (double t : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
      double closed = (std::pow(3 + t, 4) + 3 * std::pow(1 - t, 4)) / 4.0;
      res = std::max(res, std::abs(poly_P(1, PExponent::of(4.0), t) - closed));
      res = std::max(res,
                     std::abs(asym_probe(1, PExponent::of(4.0), t) - 48.0 * t));
    }
    out.push_back(CheckResult::flag("theorem7.polyP_closed_form", res <= 1e-10,
                                    res, 1e-10));
  }
  {
    // distribution invariance eps_j -> eps_j * prod(eps) and single sign flips
    Rng rng(cfg.seed ^ 0xd15);
    double res = 0.0;
    for (int n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        CVec alpha = rng.gaussian_vec(2 * n + 2);
        for (double p : {1.0, 2.5, 4.0}) {
          double base = rademacher_norm(n, alpha, PExponent::of(p));
          // substituted function evaluated by direct enumeration
          HypercubeFunction sub;
          sub.N = 2 * n;
          sub.values = CVec(Index(1) << sub.N);
          for (std::uint32_t w = 0; w < (1u << sub.N); ++w) {
            int prod = 1;
            for (int j = 1; j <= 2 * n; ++j) prod *= hypercube_sign(w, j);
            Complex v = alpha(0);
            for (int j = 1; j <= 2 * n; ++j)
              v += alpha(j) * double(hypercube_sign(w, j) * prod);
            v += alpha(2 * n + 1) * double(prod);
            sub.values(w) = v;
          }
          res = std::max(res, std::abs(lp_norm(sub, PExponent::of(p)) - base));
          for (int j = 1; j <= 2 * n; ++j) {
            // the cube symmetry eps_j -> -eps_j flips alpha_j jointly with
            // the product coefficient
            CVec flip = alpha;
            flip(j) = -flip(j);
            flip(2 * n + 1) = -flip(2 * n + 1);
            res = std::max(res, std::abs(rademacher_norm(n, flip,
                                                         PExponent::of(p)) -
                                         base));
          }
        }
      }
    out.push_back(CheckResult::flag("theorem7.distribution_invariance",
                                    res <= 1e-12, res, 1e-12));
  }
}

// ---------------------------------------------------------------------------
// projections
// ---------------------------------------------------------------------------

void suite_projections(const RunConfig& cfg, std::vector<CheckResult>& out) {
  std::vector<ProjectionSpec> specs;
  specs.push_back(proj_sym(2));
  specs.push_back(proj_asym(3));
  specs.push_back(proj_rect(2, 1, 0.5));
  specs.push_back(proj_orth_E(2));
  specs.push_back(proj_orth_F(2));
  specs.push_back(proj_R(2, 0.5));
  {
    double idem = 0.0, range = 0.0;
    for (const auto& s : specs) {
      idem = std::max(idem, idempotence_residual(s, cfg.seed ^ 0x1de));
      range = std::max(range, range_span_residual(s, cfg.seed ^ 0x1df));
    }
    out.push_back(
        CheckResult::flag("projections.idempotent", idem <= 1e-10, idem, 1e-10));
    out.push_back(
        CheckResult::flag("projections.range_span", range <= 1e-10, range, 1e-10));
  }
  {
    // P_s + P_a = Id; dim A_3 = 3
    ProjectionSpec ps = proj_sym(3), pa = proj_asym(3);
    Rng rng(cfg.seed ^ 0x5a5);
    CMat z = rng.gaussian(3, 3);
    double res = maxabs(CMat(ps.map.apply({z})[0] + pa.map.apply({z})[0] - z));
    out.push_back(
        CheckResult::against("projections.sym_split", res, 0.0, 1e-14));
    out.push_back(CheckResult::boolean("projections.asym_range_dim",
                                       pa.range.size() == 3));
  }
  {
    // level-1 contractivity of the rectangular projection
    double worst = 0.0;
    std::uint64_t salt = 0;
    for (double p : {1.0, 1.5, 3.0, 4.0})
      for (double t : {0.3, 0.5, 0.9}) {
        NormEstimate est =
            level_norm_lower_bound(proj_rect(2, 1, t).map, 1,
                                   PExponent::of(p), opt_config(cfg, 0x900 + salt++));
        worst = std::max(worst, est.value);
      }
    out.push_back(
        CheckResult::against("projections.rect_level1", worst, 1.0,
                             cfg.tol_opt));
  }
  {
    double worst = 0.0;
    std::uint64_t salt = 0;
    for (double p : {1.0, 3.0, 4.0}) {
      NormEstimate est = level_norm_lower_bound(proj_sym(2).map, 1,
                                                PExponent::of(p),
                                                opt_config(cfg, 0x920 + salt++));
      worst = std::max(worst, est.value);
    }
    out.push_back(
        CheckResult::against("projections.sym_level1", worst, 1.0,
                             cfg.tol_opt));
  }
  {
    // unital + selfadjoint coefficient matrix for P onto E_N
    ProjectionSpec pe = proj_orth_E(2);
    Index dim = 4;
    CMat one = CMat::Identity(dim, dim);
    double res = maxabs(CMat(pe.map.apply({one})[0] - one));
    // coefficient matrix over the omega basis of C_2
    CMat cf(4, 4);
    for (std::uint32_t a = 0; a < 4; ++a) {
      CMat img = pe.map.apply({omega_word(2, a)})[0];
      for (std::uint32_t b = 0; b < 4; ++b)
        cf(b, a) = normalized_trace(CMat(omega_word(2, b).adjoint() * img));
    }
    res = std::max(res, maxabs(CMat(cf - cf.adjoint())));
    out.push_back(CheckResult::flag("projections.orthE_unital_selfadjoint",
                                    res <= 1e-12, res, 1e-12));
  }
  {
    // positivity of P onto E_N on random PSD inputs
    Rng rng(cfg.seed ^ 0x90d);
    ProjectionSpec pe = proj_orth_E(2);
    double min_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      CMat g = rng.gaussian(4, 4);
      CMat psd = g * g.adjoint();
      CMat img = pe.map.apply({psd})[0];
      HermitianEigen e = hermitian_eig(CMat(0.5 * (img + img.adjoint())), 1e-8);
      min_eig = std::min(min_eig, e.eigenvalues(e.eigenvalues.size() - 1));
    }
    out.push_back(CheckResult::flag("projections.orthE_positive",
                                    min_eig >= -1e-10, min_eig, 1e-10)
                      .with("trials", 100LL));
  }
  {
    // truncation: words of length >= 2 die under P onto E_N
    double res = 0.0;
    ProjectionSpec pe = proj_orth_E(3);
    for (std::uint32_t a = 0; a < 8; ++a) {
      CMat img = pe.map.apply({omega_word(3, a)})[0];
      if (popcount(a) >= 2) res = std::max(res, maxabs(img));
    }
    out.push_back(
        CheckResult::flag("projections.orthE_truncation", res <= 1e-14, res, 1e-14));
  }
  {
    // level-2 lower bounds above 1 at p != 2, equal to 1 at p = 2
    struct Named {
      const char* id;
      BlockMap map;
    };
    std::vector<Named> maps;
    maps.push_back({"projections.level2.orthE", proj_orth_E(2).map});
    maps.push_back({"projections.level2.orthF", proj_orth_F(2).map});
    maps.push_back({"projections.level2.R", proj_R(2, 0.5).map});
    std::uint64_t salt = 0;
    for (auto& nm : maps) {
      for (double p : {1.0, 3.0, 4.0}) {
        NormEstimate est = level_norm_lower_bound(
            nm.map, 2, PExponent::of(p), opt_config_block(cfg, 0x940 + salt++));
        out.push_back(
            CheckResult::bound(nm.id, est.value, est.value > 1.0, 1.0)
                .with("p", p));
      }
      NormEstimate at2 = level_norm_lower_bound(
          nm.map, 2, PExponent::of(2.0), opt_config_block(cfg, 0x940 + salt++));
      out.push_back(CheckResult::against(std::string(nm.id) + "_p2", at2.value,
                                         1.0, cfg.tol_opt));
    }
  }
  {
    bool ok = true;
    double dev = 0.0;
    Rng rng(cfg.seed ^ 0x41c);
    for (int n = 3; n <= 5; ++n)
      for (int k = 1; k <= n; ++k) {
        Complex s1 = rng.cnormal(), s2 = rng.cnormal();
        HnkReport r = hnk_block_check(n, k, s1, s2);
        if (!r.pass(1e-9)) ok = false;
        dev = std::max(dev, r.max_dev);
      }
    HnkReport fixed = hnk_block_check(4, 2, 1.0, 1.0);
    if (fixed.nonzero_count != 3 || fixed.max_dev > 1e-12) ok = false;
    HnkReport single = hnk_block_check(4, 2, 1.0, 0.0);
    if (single.nonzero_count != binom(3, 1)) ok = false;
    HnkReport zero = hnk_block_check(4, 2, 0.0, 0.0);
    if (zero.singular.cwiseAbs().maxCoeff() > 0.0) ok = false;
    out.push_back(CheckResult::flag("projections.hnk_blocks", ok, dev, 1e-9));
  }
  {
    RVec a2(2);
    a2 << 1.0, 0.0;
    HilbertformReport one =
        hilbertform_isometry_check(2, 3.0, a2, 20, cfg.seed ^ 0x41d);
    RVec a3(3);
    a3 << 0.7, 1.3, 0.4;
    HilbertformReport gen =
        hilbertform_isometry_check(3, 4.0, a3, 20, cfg.seed ^ 0x41e);
    double dev = std::max(one.max_dev, gen.max_dev);
    out.push_back(
        CheckResult::flag("projections.hilbertform", dev <= 1e-9, dev, 1e-9));
  }
  {
    double res = 0.0, hs = 0.0, adj = 0.0;
    Rng rng(cfg.seed ^ 0x4a9);
    for (int n = 2; n <= 3; ++n) {
      SubspaceMap k = kappa(n);
      SubspaceBasis ah = basis_AH(n);
      for (int trial = 0; trial < 50; ++trial) {
        CVec coef = rng.gaussian_vec(k.domain.dim());
        CMat x = k.domain.realize(coef);
        CMat kx = k.codomain.realize(k.coeffs * coef);
        for (double p : {1.0, 3.0, 4.0})
          res = std::max(res, std::abs(schatten_norm(kx, PExponent::of(p)) -
                                       schatten_norm(x, PExponent::of(p))));
        hs = std::max(hs, std::abs(kx.norm() - x.norm()));
        double off = 0.0;
        ah.coordinates(CMat(kx.adjoint()), &off);
        adj = std::max(adj, off);
      }
    }
    out.push_back(CheckResult::flag("projections.kappa_isometry", res <= 1e-10,
                                    res, 1e-10));
    out.push_back(CheckResult::flag("projections.kappa_hs", hs <= 1e-12, hs,
                                    1e-12));
    out.push_back(CheckResult::flag("projections.kappa_adjoint_range",
                                    adj <= 1e-10, adj, 1e-10));
  }
  {
    for (int n = 2; n <= 3; ++n) {
      RelationReport r = verify_relation_tau_kappa(n, cfg.tol_exact);
      bool ok = r.pass(1e-10) && r.rho_residual <= 1e-12;
      out.push_back(CheckResult::flag("projections.relation", ok,
                                      r.relation_residual, 1e-10)
                        .with("n", (long long)n)
                        .with("rho_residual", r.rho_residual));
    }
  }
}

// ---------------------------------------------------------------------------
// witnesses
// ---------------------------------------------------------------------------

void suite_witnesses(const RunConfig& cfg, std::vector<CheckResult>& out) {
  for (double p : {1.0, 1.5, 4.0}) {
    out.push_back(CheckResult::gate("witnesses.rect",
                                    witness_rect(p, 0.5, 0.3), 1.0 + 1e-4)
                      .with("p", p)
                      .with("t", 0.5)
                      .with("theta", 0.3));
  }
  for (double p : {1.0, 1.5, 3.0, 4.0})
    for (double theta : {0.05, 0.1}) {
      out.push_back(CheckResult::gate("witnesses.rect_small_theta",
                                      witness_rect(p, 0.5, theta), 1.0)
                        .with("p", p)
                        .with("theta", theta));
    }
  {
    double res = std::max(std::abs(witness_rect(4.0, 0.0, 0.3) - 1.0),
                          std::abs(witness_rect(4.0, 1.0, 0.3) - 1.0));
    out.push_back(CheckResult::flag("witnesses.rect_degenerate", res <= 1e-9,
                                    res, 1e-9));
  }
  {
    bool threw = false;
    try {
      witness_rect(2.0, 0.5, 0.3);
    } catch (const InvalidExponent&) {
      threw = true;
    }
    out.push_back(CheckResult::boolean("witnesses.rect_p2_rejected", threw));
  }
  {
    std::uint64_t salt = 0;
    for (double p : {1.0, 4.0}) {
      NormEstimate est = level_norm_lower_bound(
          proj_sym(2).map, 2, PExponent::of(p), opt_config(cfg, 0xaa0 + salt++));
      out.push_back(CheckResult::bound("witnesses.ps_level2", est.value,
                                       est.value > 1.0 + 1e-4, 1.0 + 1e-4)
                        .with("p", p));
    }
    NormEstimate at2 = level_norm_lower_bound(
        proj_sym(2).map, 2, PExponent::of(2.0), opt_config(cfg, 0xaa0 + salt++));
    out.push_back(
        CheckResult::against("witnesses.ps_level2_p2", at2.value, 1.0,
                             cfg.tol_opt));
    NormEstimate pa = level_norm_lower_bound(
        proj_asym(3).map, 2, PExponent::of(4.0), opt_config_block(cfg, 0xab0));
    out.push_back(CheckResult::bound("witnesses.pa_level2", pa.value,
                                     pa.value > 1.0 + 1e-4, 1.0 + 1e-4)
                      .with("p", 4.0));
  }
  {
    CVec b = CVec::Ones(4);
    b(3) = -1.0;
    out.push_back(CheckResult::against(
        "witnesses.rad1_p1", rad1_ratio(1, b, PExponent::of(1.0)), 2.0, 1e-12));
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"fock",        "clifford", "tau",      "theorem7",
          "projections", "witnesses", "all"};
}

std::vector<CheckResult> run_suite(const std::string& name,
                                   const RunConfig& config) {
  config.validate();
  std::vector<CheckResult> out;
  if (name == "fock") {
    suite_fock(config, out);
  } else if (name == "clifford") {
    suite_clifford(config, out);
  } else if (name == "tau") {
    suite_tau(config, out);
  } else if (name == "theorem7") {
    suite_theorem7(config, out);
  } else if (name == "projections") {
    suite_projections(config, out);
  } else if (name == "witnesses") {
    suite_witnesses(config, out);
  } else if (name == "all") {
    suite_fock(config, out);
    suite_clifford(config, out);
    suite_tau(config, out);
    suite_theorem7(config, out);
    suite_projections(config, out);
    suite_witnesses(config, out);
  } else {
    throw UnknownSuite("unknown suite '" + name + "'");
  }
  return out;
}

std::vector<CheckResult> table_tau_cb(int n_min, int n_max,
                                      const RunConfig& config) {
  config.validate();
  if (n_min < 1 || n_max < n_min) throw RangeTooLarge("tau_cb: bad n range");
  if (2 * n_max > 16 || (Index(1) << (2 * n_max)) > config.dimension_cap)
    throw RangeTooLarge("tau_cb: 2^{2n} exceeds the dimension cap");
  std::vector<CheckResult> out;
  for (int n = n_min; n <= n_max; ++n) {
    CVec minus = CVec::Ones(2 * n + 2);
    minus(2 * n + 1) = -1.0;
    double lo = spin_multiplier_norm(n, minus, PExponent::inf()).value;
    double hi =
        spin_multiplier_norm(n, CVec::Ones(2 * n + 2), PExponent::inf()).value;
    out.push_back(CheckResult::against("table.tau_cb", hi / lo,
                                       double(n + 1) / double(n), 1e-12)
                      .with("n", (long long)n));
  }
  return out;
}

std::vector<CheckResult> table_theorem7_grid(int n_min, int n_max,
                                             const std::vector<double>& ps,
                                             const std::vector<double>& ts,
                                             const RunConfig& config) {
  config.validate();
  if (n_min < 1 || n_max < n_min)
    throw RangeTooLarge("theorem7_grid: bad n range");
  if ((Index(1) << (2 * n_max)) > config.dimension_cap)
    throw RangeTooLarge("theorem7_grid: 2^{2n} exceeds the dimension cap");
  std::vector<CheckResult> out;
  for (int n = n_min; n <= n_max; ++n)
    for (double p : ps) {
      double m = 0.0;
      for (double t : ts)
        m = std::max(m, std::abs(asym_probe(n, PExponent::of(p), t)));
      bool zero = m <= 1e-10;
      bool expect_zero =
          (p == std::floor(p)) && (int(p) % 2 == 0) && (p / 2.0 <= n);
      CheckResult r =
          CheckResult::boolean("table.theorem7_grid", zero == expect_zero);
      r.with("n", (long long)n)
          .with("p", p)
          .with("max_asym", m)
          .with("asym_zero", zero ? "true" : "false");
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<CheckResult> table_rad1_sweep(int n, double p,
                                          const std::vector<double>& ts,
                                          const RunConfig& config) {
  config.validate();
  if (n < 1 || (Index(1) << (2 * n)) > config.dimension_cap)
    throw RangeTooLarge("rad1_sweep: 2^{2n} exceeds the dimension cap");
  std::vector<CheckResult> out;
  for (double t : ts) {
    CVec alpha = CVec::Ones(2 * n + 2);
    alpha(2 * n + 1) = t;
    CheckResult r = CheckResult::bound(
        "table.rad1_sweep", rad1_ratio(n, alpha, PExponent::of(p)), true);
    r.with("n", (long long)n).with("p", p).with("t", t);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> table_witness_rect_sweep(
    const std::vector<double>& ps, double t, const std::vector<double>& thetas,
    const RunConfig& config) {
  config.validate();
  std::vector<CheckResult> out;
  for (double p : ps)
    for (double theta : thetas) {
      CheckResult r =
          CheckResult::bound("table.witness_rect", witness_rect(p, t, theta),
                             true);
      r.with("p", p).with("t", t).with("theta", theta);
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace spinorlab
