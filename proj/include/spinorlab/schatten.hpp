#ifndef SPINORLAB_SCHATTEN_HPP
#define SPINORLAB_SCHATTEN_HPP

#include <Eigen/SVD>
#include <functional>
#include <limits>
#include <span>

#include "spinorlab/clifford.hpp"

namespace spinorlab {

// ---------------------------------------------------------------------------
// Exponents and plain norms
// ---------------------------------------------------------------------------

/// Exponent p >= 1, with infinity for the operator norm.
struct PExponent {
  double value = 2.0;
  bool is_inf = false;

  static PExponent of(double p) {
    if (std::isnan(p) || p < 1.0)
      throw InvalidExponent("PExponent: need p >= 1, got " + std::to_string(p));
    PExponent e;
    if (std::isinf(p)) {
      e.is_inf = true;
      e.value = std::numeric_limits<double>::infinity();
    } else {
      e.value = p;
    }
    return e;
  }
  static PExponent inf() { return of(std::numeric_limits<double>::infinity()); }
};

/// (normalizer * sum sigma_i^p)^{1/p}; p = inf gives sigma_1.
/// Use normalizer 1 for S^p and 2^{-N} for L^p(C_N).
inline double schatten_norm(const CMat& x, PExponent p,
                            double trace_normalizer = 1.0) {
  if (trace_normalizer <= 0)
    throw InvalidWeight("schatten_norm: normalizer must be positive");
  RVec sv = singular_values(x);
  if (sv.size() == 0) return 0.0;
  if (p.is_inf) return sv(0);
  double acc = 0.0;
  for (Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p.value);
  return std::pow(trace_normalizer * acc, 1.0 / p.value);
}

/// Weighted p-direct-sum norm (sum_i w_i ||part_i||_p^p)^{1/p}; max at p = inf.
inline double pdirect_norm(std::span<const CMat> parts,
                           std::span<const double> weights, PExponent p,
                           double trace_normalizer = 1.0) {
  if (parts.size() != weights.size())
    throw LengthMismatch("pdirect_norm: |parts| != |weights|");
  if (p.is_inf) {
    double m = 0.0;
    for (const CMat& x : parts)
      m = std::max(m, schatten_norm(x, p, trace_normalizer));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (weights[i] < 0) throw InvalidWeight("pdirect_norm: negative weight");
    acc += weights[i] *
           std::pow(schatten_norm(parts[i], p, trace_normalizer), p.value);
  }
  return std::pow(acc, 1.0 / p.value);
}

/// Weighted direct sum of subspaces; weights sum to 1.
struct WeightedDirectSum {
  std::vector<SubspaceBasis> blocks;
  std::vector<double> weights;
};

inline WeightedDirectSum make_weighted_sum(std::vector<SubspaceBasis> blocks,
                                           std::vector<double> weights) {
  if (blocks.empty() || blocks.size() != weights.size())
    throw LengthMismatch("make_weighted_sum: block/weight mismatch");
  double s = 0.0;
  for (double w : weights) {
    if (w < 0) throw InvalidWeight("make_weighted_sum: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw InvalidWeight("make_weighted_sum: weights must sum to 1");
  return {std::move(blocks), std::move(weights)};
}

// ---------------------------------------------------------------------------
// Amplification
// ---------------------------------------------------------------------------

/// I_{S^p_k} (x) u on the basis {kron(E_ij, x_m)}, coefficient matrix
/// I_{k^2} (x) coeffs(u). Basis index q = (i*k + j)*dim(X) + m.
inline SubspaceMap amplify(const SubspaceMap& u, int k,
                           Index cap = kDefaultDimensionCap) {
  if (k < 1) throw IndexOutOfRange("amplify: k < 1");
  if (k == 1) return u;
  auto lift = [&](const SubspaceBasis& b) {
    if (k * b.ambient_rows > cap || k * b.ambient_cols > cap)
      throw DimensionCap("amplify: ambient exceeds dimension cap");
    SubspaceBasis out;
    out.ambient_rows = k * b.ambient_rows;
    out.ambient_cols = k * b.ambient_cols;
    out.name = "S^p_" + std::to_string(k) + " (x) " + b.name;
    CMat e = CMat::Zero(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        e(i, j) = 1.0;
        for (const auto& x : b.elements) out.elements.push_back(kron(e, x, cap));
        e(i, j) = 0.0;
      }
    return out;
  };
  SubspaceMap a;
  a.domain = lift(u.domain);
  a.codomain = lift(u.codomain);
  a.coeffs = kron(CMat::Identity(k * k, k * k), u.coeffs,
                  std::numeric_limits<Index>::max());
  a.name = "[" + std::to_string(k) + "]" + u.name;
  return a;
}

// ---------------------------------------------------------------------------
// Norm estimates and the lower-bound optimizer
// ---------------------------------------------------------------------------

struct OptimizerConfig {
  std::uint64_t seed = 1;
  int restarts = 64;
  int max_iter = 500;
  double step0 = 0.5;
  double tol = 1e-9;
};

enum class EstimateKind { Exact, CertifiedLowerBound };

struct NormEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::CertifiedLowerBound;
  std::vector<CMat> witness;  // realized domain blocks achieving value
  std::string method;
  int iterations = 0;
  bool stalled = false;
};

namespace detail {

/// Value and gradient of the Schatten p-norm at M (gradient with respect to
/// conj(M), Wirtinger convention). Values come from the Gram spectrum, the
/// same kernel singular_values uses; the gradient U w V^* is assembled as
/// M V (w/sigma) V^* without forming U. p = 1 is smoothed by
/// sqrt(s^2 + eps^2) during ascent; exact ratios are recomputed at witnesses.
inline double snorm_grad(const CMat& m, PExponent p, CMat* grad,
                         double eps = 1e-9) {
  bool tall = m.rows() >= m.cols();
  CMat gram = tall ? CMat(m.adjoint() * m) : CMat(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es;
  es.compute(gram, grad ? Eigen::ComputeEigenvectors
                        : Eigen::EigenvaluesOnly);
  Index k = gram.rows();
  RVec sv(k);
  for (Index i = 0; i < k; ++i)
    sv(i) = std::sqrt(std::max(0.0, es.eigenvalues()(k - 1 - i)));

  double nrm = 0.0;
  RVec w = RVec::Zero(k);  // gradient weights per singular value
  if (p.is_inf) {
    nrm = k ? sv(0) : 0.0;
    if (k) w(0) = 1.0;
  } else if (p.value == 1.0) {
    for (Index i = 0; i < k; ++i) {
      double sm = std::sqrt(sv(i) * sv(i) + eps * eps);
      nrm += sm;
      w(i) = sv(i) / sm;
    }
  } else {
    double acc = 0.0;
    for (Index i = 0; i < k; ++i) acc += std::pow(sv(i), p.value);
    nrm = std::pow(acc, 1.0 / p.value);
    if (nrm > 0)
      for (Index i = 0; i < k; ++i)
        w(i) = std::pow(sv(i), p.value - 1.0) / std::pow(nrm, p.value - 1.0);
  }
  if (grad) {
    if (nrm <= 0 || k == 0) {
      *grad = CMat::Zero(m.rows(), m.cols());
      return nrm;
    }
    double floor = std::max(sv(0), 1.0) * 1e-13;
    CVec f(k);
    for (Index i = 0; i < k; ++i)
      f(i) = w(i) / std::max(sv(i), floor);
    CMat basis(k, k);  // eigenvectors reordered to descending
    for (Index i = 0; i < k; ++i) basis.col(i) = es.eigenvectors().col(k - 1 - i);
    CMat core = basis * f.asDiagonal() * basis.adjoint();
    *grad = tall ? CMat(m * core) : CMat(core * m);
  }
  return nrm;
}

/// Weighted p-direct-sum norm with per-block gradients.
inline double wnorm_grad(const std::vector<CMat>& blocks,
                         const std::vector<double>& weights, PExponent p,
                         std::vector<CMat>* grads) {
  if (grads) grads->assign(blocks.size(), CMat());
  if (p.is_inf) {
    double best = -1.0;
    std::size_t arg = 0;
    std::vector<CMat> gs(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      CMat g;
      double v = snorm_grad(blocks[i], p, grads ? &g : nullptr);
      if (grads) gs[i] = std::move(g);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (grads) {
      for (std::size_t i = 0; i < blocks.size(); ++i)
        (*grads)[i] = (i == arg)
                          ? gs[i]
                          : CMat::Zero(blocks[i].rows(), blocks[i].cols());
    }
    return best;
  }
  double acc = 0.0;
  std::vector<std::pair<double, CMat>> parts(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CMat g;
    double v = snorm_grad(blocks[i], p, grads ? &g : nullptr);
    parts[i] = {v, std::move(g)};
    acc += weights[i] * std::pow(v, p.value);
  }
  double f = std::pow(acc, 1.0 / p.value);
  if (grads) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      double scale =
          (f > 0) ? weights[i] * std::pow(parts[i].first / f, p.value - 1.0)
                  : 0.0;
      (*grads)[i] = scale * parts[i].second;
    }
  }
  return f;
}

/// Objective callbacks for one ratio-ascent problem over complex parameters.
struct RatioProblem {
  Index dim = 0;
  // value and (optional) Wirtinger gradient of numerator / denominator
  std::function<double(const CVec&, CVec*)> num;
  std::function<double(const CVec&, CVec*)> den;
};

struct AscentOutcome {
  CVec best;
  double ratio = 0.0;
  int iterations = 0;
  bool stalled = false;
};

inline AscentOutcome ratio_ascent(const RatioProblem& prob,
                                  const OptimizerConfig& cfg) {
  AscentOutcome out;
  out.ratio = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::for_restart(cfg.seed, std::uint64_t(r));
    CVec c = rng.gaussian_vec(prob.dim);
    c /= c.norm();
    double step = cfg.step0;
    auto eval = [&](const CVec& x, CVec* g) {
      CVec gn, gd;
      double nn = prob.num(x, g ? &gn : nullptr);
      double dd = prob.den(x, g ? &gd : nullptr);
      if (dd <= 1e-300) return -1.0;
      double ratio = nn / dd;
      if (g) *g = ratio * (gn / nn - gd / dd);
      return ratio;
    };
    CVec g;
    double ratio = eval(c, &g);
    int it = 0;
    bool moved = true;
    for (; it < cfg.max_iter && moved; ++it) {
      double gn = g.norm();
      if (gn <= 1e-14 || ratio < 0) break;
      moved = false;
      // backtracking with value-only probes; gradient once on acceptance
      while (step >= 1e-12) {
        CVec c2 = c + (step * c.norm() / gn) * g;
        double r2 = eval(c2, nullptr);
        if (r2 > ratio) {
          c = std::move(c2);
          ratio = eval(c, &g);
          step = std::min(step * 1.25, 4.0);
          moved = true;
          break;
        }
        step *= 0.5;
      }
    }
    out.iterations += it;
    // exact re-evaluation happens in the caller; first-max tie break
    double exact = eval(c, nullptr);
    if (exact > out.ratio + 1e-12) {
      out.ratio = exact;
      out.best = c;
    }
    if (it >= cfg.max_iter) out.stalled = true;
  }
  return out;
}

}  // namespace detail

/// Certified lower bound for ||u||_{[k]} on S^p: maximizes the exact ratio
/// ||u_amplified(z)||_p / ||z||_p over z in S^p_k (x) X by projected ascent
/// with deterministic seeded restarts. The returned value is the ratio
/// re-evaluated at the witness with exact norms, so it is a valid lower
/// bound regardless of ascent quality.
inline NormEstimate level_norm_lower_bound(const SubspaceMap& u, int k,
                                           PExponent p,
                                           const OptimizerConfig& cfg = {},
                                           Index cap = kDefaultDimensionCap) {
  SubspaceMap a = amplify(u, k, cap);
  CMat bd = a.domain.stacked();
  CMat bc = a.codomain.stacked();
  Index rc = a.codomain.ambient_rows, cc = a.codomain.ambient_cols;
  Index rd = a.domain.ambient_rows, cd = a.domain.ambient_cols;

  detail::RatioProblem prob;
  prob.dim = a.domain.dim();
  prob.num = [&](const CVec& c, CVec* g) {
    CVec w = a.coeffs * c;
    CVec v = bc * w;
    CMat m = Eigen::Map<const CMat>(v.data(), rc, cc);
    CMat grad;
    double val = detail::snorm_grad(m, p, g ? &grad : nullptr);
    if (g) {
      CVec gv = Eigen::Map<const CVec>(grad.data(), grad.size());
      *g = a.coeffs.adjoint() * (bc.adjoint() * gv);
    }
    return val;
  };
  prob.den = [&](const CVec& c, CVec* g) {
    CVec v = bd * c;
    CMat m = Eigen::Map<const CMat>(v.data(), rd, cd);
    CMat grad;
    double val = detail::snorm_grad(m, p, g ? &grad : nullptr);
    if (g) {
      CVec gv = Eigen::Map<const CVec>(grad.data(), grad.size());
      *g = bd.adjoint() * gv;
    }
    return val;
  };

  detail::AscentOutcome got = detail::ratio_ascent(prob, cfg);
  NormEstimate est;
  est.method = "projected-ascent[" + std::to_string(k) + "]";
  est.iterations = got.iterations;
  est.stalled = got.stalled;
  if (got.best.size() == 0) {
    est.value = 0.0;
    return est;
  }
  CMat z = a.domain.realize(got.best);
  CMat img = a.codomain.realize(a.coeffs * got.best);
  double den = schatten_norm(z, p);
  est.value = (den > 0) ? schatten_norm(img, p) / den : 0.0;
  est.witness = {z};
  return est;
}

/// A linear map on a weighted direct sum of full matrix blocks, given by
/// apply/adjoint callbacks (adjoint with respect to the plain Frobenius
/// inner product, used only for ascent directions).
struct BlockMap {
  std::vector<std::pair<Index, Index>> shapes;
  std::vector<double> weights;
  std::function<std::vector<CMat>(const std::vector<CMat>&)> apply;
  std::function<std::vector<CMat>(const std::vector<CMat>&)> adjoint;
  std::string name;
};

/// Applies the unamplified block map across the k x k amplification cells.
inline std::vector<CMat> apply_amplified(const BlockMap& m, int k,
                                         const std::vector<CMat>& z,
                                         bool use_adjoint = false) {
  if (z.size() != m.shapes.size())
    throw LengthMismatch("apply_amplified: block count mismatch");
  std::vector<CMat> out(z.size());
  for (std::size_t b = 0; b < z.size(); ++b)
    out[b] = CMat::Zero(z[b].rows(), z[b].cols());
  std::vector<CMat> cell(z.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      for (std::size_t b = 0; b < z.size(); ++b) {
        auto [r, c] = m.shapes[b];
        cell[b] = z[b].block(i * r, j * c, r, c);
      }
      std::vector<CMat> img = use_adjoint ? m.adjoint(cell) : m.apply(cell);
      for (std::size_t b = 0; b < z.size(); ++b) {
        auto [r, c] = m.shapes[b];
        out[b].block(i * r, j * c, r, c) = img[b];
      }
    }
  return out;
}

/// Block-map variant of the [k]-lower-bound search; parameters are the raw
/// entries of the amplified blocks.
inline NormEstimate level_norm_lower_bound(const BlockMap& m, int k,
                                           PExponent p,
                                           const OptimizerConfig& cfg = {},
                                           Index cap = kDefaultDimensionCap) {
  if (k < 1) throw IndexOutOfRange("level_norm_lower_bound: k < 1");
  Index dim = 0;
  for (auto [r, c] : m.shapes) {
    if (k * r > cap || k * c > cap)
      throw DimensionCap("level_norm_lower_bound: block exceeds cap");
    dim += k * r * k * c;
  }
  auto unpack = [&](const CVec& cvec) {
    std::vector<CMat> z(m.shapes.size());
    Index off = 0;
    for (std::size_t b = 0; b < m.shapes.size(); ++b) {
      auto [r, c] = m.shapes[b];
      z[b] = Eigen::Map<const CMat>(cvec.data() + off, k * r, k * c);
      off += k * r * k * c;
    }
    return z;
  };
  auto pack = [&](const std::vector<CMat>& z) {
    CVec v(dim);
    Index off = 0;
    for (const auto& blk : z) {
      v.segment(off, blk.size()) = Eigen::Map<const CVec>(blk.data(), blk.size());
      off += blk.size();
    }
    return v;
  };

  detail::RatioProblem prob;
  prob.dim = dim;
  prob.num = [&](const CVec& c, CVec* g) {
    std::vector<CMat> y = apply_amplified(m, k, unpack(c));
    std::vector<CMat> grads;
    double val = detail::wnorm_grad(y, m.weights, p, g ? &grads : nullptr);
    if (g) *g = pack(apply_amplified(m, k, grads, /*use_adjoint=*/true));
    return val;
  };
  prob.den = [&](const CVec& c, CVec* g) {
    std::vector<CMat> z = unpack(c);
    std::vector<CMat> grads;
    double val = detail::wnorm_grad(z, m.weights, p, g ? &grads : nullptr);
    if (g) *g = pack(grads);
    return val;
  };

  detail::AscentOutcome got = detail::ratio_ascent(prob, cfg);
  NormEstimate est;
  est.method = "projected-ascent-blocks[" + std::to_string(k) + "]";
  est.iterations = got.iterations;
  est.stalled = got.stalled;
  if (got.best.size() == 0) {
    est.value = 0.0;
    return est;
  }
  std::vector<CMat> z = unpack(got.best);
  std::vector<CMat> y = apply_amplified(m, k, z);
  double den = pdirect_norm(z, m.weights, p);
  double num = pdirect_norm(y, m.weights, p);
  est.value = (den > 0) ? num / den : 0.0;
  est.witness = z;
  return est;
}

// ---------------------------------------------------------------------------
// Exact evaluators for spin multipliers and the tensor identity
// ---------------------------------------------------------------------------

/// Exact norm of sum_j alpha_j pi_j as a diagonal operator on the omega_A
/// basis: (2^{-2n} sum_A |d_A|^p)^{1/p}, max at p = inf.
inline NormEstimate spin_multiplier_norm(int n, const CVec& alpha,
                                         PExponent p) {
  if (alpha.size() != 2 * n + 2)
    throw LengthMismatch("spin_multiplier_norm: need 2n+2 coefficients");
  Index dim = Index(1) << (2 * n);
  std::vector<RVec> diag;
  for (int j = 0; j <= 2 * n + 1; ++j) diag.push_back(conjugation_pi(n, j));
  NormEstimate est;
  est.kind = EstimateKind::Exact;
  est.method = "diagonal-multiplier";
  if (p.is_inf) {
    double best = 0.0;
    for (Index a = 0; a < dim; ++a) {
      Complex d = 0.0;
      for (int j = 0; j <= 2 * n + 1; ++j) d += alpha(j) * diag[std::size_t(j)](a);
      best = std::max(best, std::abs(d));
    }
    est.value = best;
    return est;
  }
  double acc = 0.0;
  for (Index a = 0; a < dim; ++a) {
    Complex d = 0.0;
    for (int j = 0; j <= 2 * n + 1; ++j) d += alpha(j) * diag[std::size_t(j)](a);
    acc += std::pow(std::abs(d), p.value);
  }
  est.value = std::pow(acc / double(dim), 1.0 / p.value);
  return est;
}

struct TensorEqualityReport {
  double max_rel_dev = 0.0;
  int trials = 0;
};

/// Both sides of the even-exponent tensor identity: Schatten-p norms of
/// sum_j a_j (x) s_j with the sign of the a_{2n+1} term flipped, over seeded
/// random matrix tuples. Deviation is expected to vanish iff p/2 <= n.
inline TensorEqualityReport tensor_equality_check(int n, int p_even,
                                                  int trials,
                                                  std::uint64_t seed) {
  if (p_even < 2 || p_even % 2 != 0)
    throw InvalidExponent("tensor_equality_check: p must be a positive even integer");
  int N = 2 * n;
  Index dim = Index(1) << N;
  std::vector<CMat> s;
  s.push_back(CMat::Identity(dim, dim));
  for (int j = 1; j <= N; ++j) s.push_back(fermion(N, j));
  s.push_back(omega_word(N, (1u << N) - 1));
  PExponent p = PExponent::of(double(p_even));
  double normalizer = 1.0 / double(dim);
  TensorEqualityReport rep;
  rep.trials = trials;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Index msize = 2 + (t % 2);  // alternate 2x2 / 3x3 coefficient tuples
    CMat lhs = CMat::Zero(msize * dim, msize * dim);
    CMat rhs = CMat::Zero(msize * dim, msize * dim);
    for (int j = 0; j <= 2 * n + 1; ++j) {
      CMat a = rng.gaussian(msize, msize);
      CMat term = kron(a, s[std::size_t(j)], std::numeric_limits<Index>::max());
      lhs += term;
      rhs += (j == 2 * n + 1) ? CMat(-term) : term;
    }
    double n1 = schatten_norm(lhs, p, normalizer);
    double n2 = schatten_norm(rhs, p, normalizer);
    double dev = std::abs(n1 - n2) / std::max({n1, n2, 1e-300});
    rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
  }
  return rep;
}

}  // namespace spinorlab

#endif
