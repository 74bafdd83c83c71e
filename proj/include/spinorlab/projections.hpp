#ifndef SPINORLAB_PROJECTIONS_HPP
#define SPINORLAB_PROJECTIONS_HPP

#include "spinorlab/hypercube.hpp"

namespace spinorlab {

/// A concrete projection on a weighted direct sum of matrix blocks, with its
/// range recorded as spanning tuples.
struct ProjectionSpec {
  BlockMap map;
  std::vector<std::vector<CMat>> range;  // each entry: one tuple of blocks
  std::string name;
};

namespace detail {

inline CMat transpose_of(const CMat& m) { return m.transpose(); }

/// Orthogonal projection onto the span of orthonormal words (normalized
/// matrix trace), with a per-word image (identity for Q, tau images for tauQ).
struct WordProjector {
  std::vector<CMat> words;
  std::vector<CMat> images;
  double inv_dim = 1.0;

  CMat operator()(const CMat& z) const {
    CMat out = CMat::Zero(z.rows(), z.cols());
    for (std::size_t q = 0; q < words.size(); ++q) {
      Complex coef = words[q].conjugate().cwiseProduct(z).sum() * inv_dim;
      out += coef * images[q];
    }
    return out;
  }
};

inline WordProjector word_projector(const SubspaceBasis& b,
                                    std::vector<CMat> images) {
  WordProjector p;
  p.words = b.elements;
  p.images = std::move(images);
  p.inv_dim = 1.0 / double(b.ambient_rows);
  return p;
}

}  // namespace detail

/// P_s = (Id + sigma)/2 on S_I; range = symmetric matrices.
inline ProjectionSpec proj_sym(Index size) {
  if (size < 1) throw IndexOutOfRange("proj_sym: size < 1");
  ProjectionSpec spec;
  spec.name = "P_s(S_" + std::to_string(size) + ")";
  spec.map.shapes = {{size, size}};
  spec.map.weights = {1.0};
  spec.map.name = spec.name;
  spec.map.apply = [](const std::vector<CMat>& z) {
    return std::vector<CMat>{0.5 * (z[0] + detail::transpose_of(z[0]))};
  };
  spec.map.adjoint = spec.map.apply;  // sigma is Frobenius-selfadjoint
  for (Index i = 0; i < size; ++i)
    for (Index j = i; j < size; ++j) {
      CMat e = CMat::Zero(size, size);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      spec.range.push_back({e});
    }
  return spec;
}

/// P_a = (Id - sigma)/2 on S_I; range = anti-symmetric matrices.
inline ProjectionSpec proj_asym(Index size) {
  if (size < 1) throw IndexOutOfRange("proj_asym: size < 1");
  ProjectionSpec spec;
  spec.name = "P_a(S_" + std::to_string(size) + ")";
  spec.map.shapes = {{size, size}};
  spec.map.weights = {1.0};
  spec.map.name = spec.name;
  spec.map.apply = [](const std::vector<CMat>& z) {
    return std::vector<CMat>{0.5 * (z[0] - detail::transpose_of(z[0]))};
  };
  spec.map.adjoint = spec.map.apply;
  for (Index i = 0; i < size; ++i)
    for (Index j = i + 1; j < size; ++j) {
      CMat e = CMat::Zero(size, size);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      spec.range.push_back({e});
    }
  return spec;
}

/// The rectangular projection (z1, z2) -> (t z1 + (1-t) z2^T, t z1^T + (1-t) z2)
/// on the (t, 1-t)-weighted p-direct sum of S_{I,J} and S_{J,I}.
inline ProjectionSpec proj_rect(Index I, Index J, double t) {
  if (I < 1 || J < 1) throw IndexOutOfRange("proj_rect: empty index set");
  if (t < 0.0 || t > 1.0) throw InvalidWeight("proj_rect: t outside [0,1]");
  ProjectionSpec spec;
  spec.name = "P_rect(" + std::to_string(I) + "," + std::to_string(J) + ")";
  spec.map.shapes = {{I, J}, {J, I}};
  spec.map.weights = {t, 1.0 - t};
  spec.map.name = spec.name;
  spec.map.apply = [t](const std::vector<CMat>& z) {
    return std::vector<CMat>{t * z[0] + (1.0 - t) * detail::transpose_of(z[1]),
                             t * detail::transpose_of(z[0]) + (1.0 - t) * z[1]};
  };
  spec.map.adjoint = [t](const std::vector<CMat>& y) {
    return std::vector<CMat>{t * y[0] + t * detail::transpose_of(y[1]),
                             (1.0 - t) * detail::transpose_of(y[0]) +
                                 (1.0 - t) * y[1]};
  };
  for (Index i = 0; i < I; ++i)
    for (Index j = 0; j < J; ++j) {
      CMat w = CMat::Zero(I, J);
      w(i, j) = 1.0;
      spec.range.push_back({w, detail::transpose_of(w)});
    }
  return spec;
}

namespace detail {

/// Partial transpose in the convention of the section-3 witness matrices:
/// the amplifying 2x2 cells stay intact, their block positions transpose.
/// Takes an (I*2) x (J*2) matrix to a (J*2) x (I*2) one.
inline CMat witness_block_transpose(const CMat& m, Index I, Index J) {
  CMat out(J * 2, I * 2);
  for (Index r = 0; r < I; ++r)
    for (Index s = 0; s < J; ++s)
      out.block(2 * s, 2 * r, 2, 2) = m.block(2 * r, 2 * s, 2, 2);
  return out;
}

}  // namespace detail

/// Ratio ||(I_{S^p_2} (x) P)(z)|| / ||z|| at the section-3 witness pair
/// z = (z1(theta), z2(theta)), built verbatim for the three exponent ranges.
/// A value > 1 certifies that P is not [2]-contractive.
inline double witness_rect(double p, double t, double theta) {
  if (p < 1 || p == 2.0)
    throw InvalidExponent("witness_rect: need p >= 1, p != 2");
  if (t < 0.0 || t > 1.0) throw InvalidWeight("witness_rect: t outside [0,1]");
  PExponent pe = PExponent::of(p);
  CMat z1 = CMat::Zero(4, 2), z2 = CMat::Zero(2, 4);
  if (p > 2) {
    double c = std::pow(std::cos(theta), 2.0 / p);
    double s = std::pow(std::sin(theta), 2.0 / p);
    z1(0, 0) = c;
    z1(2, 1) = s;
    z2(0, 0) = c;
    z2(1, 2) = s;
  } else if (p > 1) {
    double pc = p / (p - 1.0);
    double c = std::pow(std::cos(theta), 2.0 / pc);
    double s = std::pow(std::sin(theta), 2.0 / pc);
    z1(0, 0) = c;
    z1(3, 0) = s;
    z2(0, 0) = c;
    z2(0, 3) = s;
  } else {
    z1(0, 0) = 1.0;
    z1(3, 0) = theta;
    z2(0, 0) = 1.0;
    z2(0, 3) = theta;
  }
  CMat w1 = t * z1 + (1.0 - t) * detail::witness_block_transpose(z2, 1, 2);
  CMat w2 = t * detail::witness_block_transpose(z1, 2, 1) + (1.0 - t) * z2;
  std::vector<CMat> img{w1, w2}, arg{z1, z2};
  std::vector<double> wts{t, 1.0 - t};
  double den = pdirect_norm(arg, wts, pe);
  if (den <= 1e-300) throw ZeroDenominator("witness_rect: zero witness");
  return pdirect_norm(img, wts, pe) / den;
}

/// Orthogonal projection of L^p(C_N) onto E_N.
inline ProjectionSpec proj_orth_E(int N) {
  SubspaceBasis e = basis_E(N);
  Index dim = e.ambient_rows;
  auto proj = detail::word_projector(e, e.elements);
  ProjectionSpec spec;
  spec.name = "P(E_" + std::to_string(N) + ")";
  spec.map.shapes = {{dim, dim}};
  spec.map.weights = {1.0};
  spec.map.name = spec.name;
  spec.map.apply = [proj](const std::vector<CMat>& z) {
    return std::vector<CMat>{proj(z[0])};
  };
  spec.map.adjoint = spec.map.apply;
  for (const auto& b : e.elements) spec.range.push_back({b});
  return spec;
}

/// Orthogonal projection of L^p(C_2n) onto F_n.
inline ProjectionSpec proj_orth_F(int n) {
  SubspaceBasis f = basis_F(n);
  Index dim = f.ambient_rows;
  auto proj = detail::word_projector(f, f.elements);
  ProjectionSpec spec;
  spec.name = "Q(F_" + std::to_string(n) + ")";
  spec.map.shapes = {{dim, dim}};
  spec.map.weights = {1.0};
  spec.map.name = spec.name;
  spec.map.apply = [proj](const std::vector<CMat>& z) {
    return std::vector<CMat>{proj(z[0])};
  };
  spec.map.adjoint = spec.map.apply;
  for (const auto& b : f.elements) spec.range.push_back({b});
  return spec;
}

/// R(z1, z2) = (t Q z1 + (1-t) tauQ z2, t tauQ z1 + (1-t) Q z2) on the
/// weighted sum of two copies of L^p(C_2n); the range is the graph of tau.
inline ProjectionSpec proj_R(int n, double t) {
  if (n < 1) throw IndexOutOfRange("proj_R: n < 1");
  if (t < 0.0 || t > 1.0) throw InvalidWeight("proj_R: t outside [0,1]");
  SubspaceBasis f = basis_F(n);
  Index dim = f.ambient_rows;
  std::vector<CMat> tau_images = f.elements;
  tau_images.back() = -tau_images.back();
  auto q = detail::word_projector(f, f.elements);
  auto tq = detail::word_projector(f, tau_images);
  ProjectionSpec spec;
  spec.name = "R(F_" + std::to_string(n) + ")";
  spec.map.shapes = {{dim, dim}, {dim, dim}};
  spec.map.weights = {t, 1.0 - t};
  spec.map.name = spec.name;
  spec.map.apply = [q, tq, t](const std::vector<CMat>& z) {
    return std::vector<CMat>{t * q(z[0]) + (1.0 - t) * tq(z[1]),
                             t * tq(z[0]) + (1.0 - t) * q(z[1])};
  };
  spec.map.adjoint = [q, tq, t](const std::vector<CMat>& y) {
    return std::vector<CMat>{t * q(y[0]) + t * tq(y[1]),
                             (1.0 - t) * tq(y[0]) + (1.0 - t) * q(y[1])};
  };
  for (std::size_t m = 0; m < f.elements.size(); ++m)
    spec.range.push_back({f.elements[m], tau_images[m]});
  return spec;
}

/// Max residual of P(P(z)) - P(z) over seeded random inputs.
inline double idempotence_residual(const ProjectionSpec& spec,
                                   std::uint64_t seed, int trials = 10) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<CMat> z;
    for (auto [r, c] : spec.map.shapes) z.push_back(rng.gaussian(r, c));
    std::vector<CMat> y = spec.map.apply(z);
    std::vector<CMat> yy = spec.map.apply(y);
    for (std::size_t b = 0; b < y.size(); ++b)
      worst = std::max(worst, (yy[b] - y[b]).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Max distance of P(z) from the recorded range span, over seeded inputs.
inline double range_span_residual(const ProjectionSpec& spec,
                                  std::uint64_t seed, int trials = 10) {
  Index total = 0;
  for (auto [r, c] : spec.map.shapes) total += r * c;
  CMat basis(total, Index(spec.range.size()));
  for (std::size_t q = 0; q < spec.range.size(); ++q) {
    Index off = 0;
    for (const auto& blk : spec.range[q]) {
      basis.col(Index(q)).segment(off, blk.size()) =
          Eigen::Map<const CVec>(blk.data(), blk.size());
      off += blk.size();
    }
  }
  auto cod = basis.completeOrthogonalDecomposition();
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<CMat> z;
    for (auto [r, c] : spec.map.shapes) z.push_back(rng.gaussian(r, c));
    std::vector<CMat> y = spec.map.apply(z);
    CVec v(total);
    Index off = 0;
    for (const auto& blk : y) {
      v.segment(off, blk.size()) = Eigen::Map<const CVec>(blk.data(), blk.size());
      off += blk.size();
    }
    worst = std::max(worst, (basis * cod.solve(v) - v).norm());
  }
  return worst;
}

struct HnkReport {
  RVec singular;
  int nonzero_count = 0;
  long long expected_multiplicity = 0;
  double max_dev = 0.0;  // deviation of the nonzero block from sqrt(|s1|^2+|s2|^2)
  bool pass(double tol) const {
    return nonzero_count == expected_multiplicity && max_dev <= tol;
  }
};

/// Singular structure of M_k(s1,s2) = s1 c_{n,1,k} + s2 c_{n,2,k}: the value
/// sqrt(|s1|^2 + |s2|^2) with multiplicity binom(n-2,k-1) + binom(n-2,k-2),
/// zero otherwise.
inline HnkReport hnk_block_check(int n, int k, Complex s1, Complex s2) {
  if (n < 2) throw IndexOutOfRange("hnk_block_check: n >= 2 required");
  if (k < 1 || k > n) throw IndexOutOfRange("hnk_block_check: k out of 1..n");
  CMat m = s1 * creation_restricted(n, 1, k) + s2 * creation_restricted(n, 2, k);
  HnkReport rep;
  rep.singular = singular_values(m);
  rep.expected_multiplicity = binom(n - 2, k - 1) + binom(n - 2, k - 2);
  double level = std::sqrt(std::norm(s1) + std::norm(s2));
  double split = level / 2.0;
  for (Index i = 0; i < rep.singular.size(); ++i) {
    if (rep.singular(i) > split) {
      ++rep.nonzero_count;
      rep.max_dev = std::max(rep.max_dev, std::abs(rep.singular(i) - level));
    } else {
      rep.max_dev = std::max(rep.max_dev, rep.singular(i));
    }
  }
  return rep;
}

struct HilbertformReport {
  double max_dev = 0.0;
  int trials = 0;
};

/// For random s in l^2_n, the weighted p-direct sum of the phi_k(s) blocks
/// (scalar a_k surrogates) has norm ||s||_2 once the a_k are normalized by
/// sum_k binom(n-1,k-1) a_k^p = 1. The ambient is the weighted sum of the
/// H_{n,k} with weights binom(n-1,k-1) a_k^p and unit-normalized blocks.
inline HilbertformReport hilbertform_isometry_check(int n, double p,
                                                    const RVec& a_norms,
                                                    int trials,
                                                    std::uint64_t seed) {
  if (a_norms.size() != n)
    throw LengthMismatch("hilbertform_isometry_check: need n block norms");
  PExponent pe = PExponent::of(p);
  double scale = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (a_norms(k - 1) < 0)
      throw InvalidWeight("hilbertform_isometry_check: negative block norm");
    scale += double(binom(n - 1, k - 1)) * std::pow(a_norms(k - 1), p);
  }
  if (scale <= 0)
    throw InvalidWeight("hilbertform_isometry_check: all blocks zero");
  RVec a = a_norms / std::pow(scale, 1.0 / p);

  std::vector<SubspaceBasis> blocks;
  std::vector<double> weights;
  for (int k = 1; k <= n; ++k) {
    blocks.push_back(basis_H(n, k));
    weights.push_back(double(binom(n - 1, k - 1)) * std::pow(a(k - 1), p));
  }
  WeightedDirectSum ambient = make_weighted_sum(std::move(blocks), weights);

  HilbertformReport rep;
  rep.trials = trials;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    CVec s = rng.gaussian_vec(n);
    std::vector<CMat> parts;
    for (int k = 1; k <= n; ++k) {
      double unit = std::pow(double(binom(n - 1, k - 1)), -1.0 / p);
      parts.push_back(unit *
                      ambient.blocks[std::size_t(k - 1)].realize(s));
    }
    double nrm = pdirect_norm(parts, ambient.weights, pe);
    rep.max_dev = std::max(rep.max_dev, std::abs(nrm - s.norm()));
  }
  return rep;
}

}  // namespace spinorlab

#endif
