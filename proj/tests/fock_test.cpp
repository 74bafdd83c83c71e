#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinorlab/fock.hpp"
#include "spinorlab/linalg.hpp"

using namespace spinorlab;

namespace {
double maxabs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("fock basis enumeration") {
  FockBasis b = fock_basis(3);
  REQUIRE(b.size() == 8);
  for (std::uint32_t i = 0; i < 8; ++i) CHECK(b.order[i] == i);

  GradedBasis g = graded_basis(4, 2);
  REQUIRE(g.size() == 6);
  CHECK(g.order.front() == 0b0011);
  CHECK(g.order.back() == 0b1100);
  CHECK(g.index_of(0b0101) == 1);
  CHECK(g.index_of(0b0111) == -1);
}

TEST_CASE("creation: explicit small matrices") {
  CMat c11 = creation(1, 1);
  CHECK(c11(1, 0) == Complex(1.0, 0.0));
  CHECK(maxabs(c11) == 1.0);
  CHECK(c11.cwiseAbs().sum() == 1.0);

  // c_{2,2} e_{1} = -e_{12}: one smaller index present
  CMat c22 = creation(2, 2);
  CHECK(c22(0b11, 0b01) == Complex(-1.0, 0.0));
  CHECK(c22(0b10, 0b00) == Complex(1.0, 0.0));

  // c_j^2 = 0
  CMat c32 = creation(3, 2);
  CHECK(maxabs(CMat(c32 * c32)) == 0.0);

  CHECK_THROWS_AS(creation(3, 4), IndexOutOfRange);
  CHECK_THROWS_AS(creation(3, 0), IndexOutOfRange);
}

TEST_CASE("CAR relations hold exactly for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    Index dim = Index(1) << n;
    for (int i = 1; i <= n; ++i) {
      CMat ci = creation(n, i);
      for (int j = 1; j <= n; ++j) {
        CMat cj = creation(n, j);
        CHECK(maxabs(CMat(ci * cj + cj * ci)) == 0.0);
        CMat mixed = ci * cj.adjoint() + cj.adjoint() * ci;
        CMat want = (i == j) ? CMat(CMat::Identity(dim, dim)) : CMat(CMat::Zero(dim, dim));
        CHECK(maxabs(CMat(mixed - want)) == 0.0);
      }
    }
  }
}

TEST_CASE("creation_restricted is the graded block of creation") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      for (int j = 1; j <= n; ++j) {
        CMat full = creation(n, j);
        GradedBasis rows = graded_basis(n, k), cols = graded_basis(n, k - 1);
        CMat blk(rows.size(), cols.size());
        for (Index r = 0; r < rows.size(); ++r)
          for (Index c = 0; c < cols.size(); ++c)
            blk(r, c) = full(rows.order[std::size_t(r)], cols.order[std::size_t(c)]);
        CHECK(maxabs(CMat(blk - creation_restricted(n, j, k))) == 0.0);
      }
}

TEST_CASE("creation_restricted: entries, sparsity and HS norm") {
  CMat m = creation_restricted(3, 1, 1);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 1);
  CHECK(m(0, 0) == Complex(1.0, 0.0));  // vacuum -> {1}
  CHECK(m.squaredNorm() == 1.0);        // binom(2,0)

  CHECK(creation_restricted(3, 2, 2).squaredNorm() == 2.0);  // binom(2,1)

  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      for (int j = 1; j <= n; ++j) {
        CMat r = creation_restricted(n, j, k);
        CHECK(r.squaredNorm() == double(binom(n - 1, k - 1)));
        for (Index i = 0; i < r.rows(); ++i)
          CHECK((r.row(i).cwiseAbs().array() > 0).count() <= 1);
        for (Index c = 0; c < r.cols(); ++c)
          CHECK((r.col(c).cwiseAbs().array() > 0).count() <= 1);
        for (Index i = 0; i < r.rows(); ++i)
          for (Index c = 0; c < r.cols(); ++c) {
            double v = std::abs(r(i, c));
            CHECK((v == 0.0 || v == 1.0));
          }
      }
}

TEST_CASE("parity projection") {
  CMat p = parity_projection(2);
  CHECK(p(0, 0) == Complex(1.0, 0.0));
  CHECK(p(1, 1) == Complex(0.0, 0.0));
  CHECK(p(2, 2) == Complex(0.0, 0.0));
  CHECK(p(3, 3) == Complex(1.0, 0.0));

  for (int n = 1; n <= 5; ++n) {
    CMat q = parity_projection(n);
    // trace = number of even subsets, counted independently
    int even = 0;
    for (std::uint32_t a = 0; a < (1u << n); ++a)
      if (popcount(a) % 2 == 0) ++even;
    CHECK(q.trace().real() == double(even));
    CHECK(even == (1 << (n - 1)));
    CHECK(maxabs(CMat(q * q - q)) == 0.0);
    CHECK(maxabs(CMat(q - q.adjoint())) == 0.0);
  }
}

TEST_CASE("second quantization: identity, diagonal, functoriality") {
  for (int n = 1; n <= 4; ++n)
    CHECK(maxabs(CMat(second_quantization(n, CMat::Identity(n, n)) -
                      CMat::Identity(Index(1) << n, Index(1) << n))) == 0.0);

  CMat t = CMat::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = -1.0;
  CMat f = second_quantization(2, t);
  CHECK(f(0, 0) == Complex(1.0, 0.0));
  CHECK(f(1, 1) == Complex(1.0, 0.0));
  CHECK(f(2, 2) == Complex(-1.0, 0.0));
  CHECK(f(3, 3) == Complex(-1.0, 0.0));

  Rng rng(5);
  for (int n = 2; n <= 4; ++n) {
    CMat u1 = random_unitary(n, rng), u2 = random_unitary(n, rng);
    CMat lhs = second_quantization(n, CMat(u1 * u2));
    CMat rhs = second_quantization(n, u1) * second_quantization(n, u2);
    CHECK(maxabs(CMat(lhs - rhs)) <= 1e-12);
    CMat fu = second_quantization(n, u1);
    CHECK(maxabs(CMat(fu.adjoint() * fu -
                      CMat::Identity(fu.rows(), fu.cols()))) <= 1e-10);
  }
}

TEST_CASE("second quantization: vacuum fixed and grading respected") {
  Rng rng(9);
  CMat t = rng.gaussian(3, 3);
  t /= singular_values(t)(0);  // contraction
  CMat f = second_quantization(3, t);
  CHECK(f(0, 0) == Complex(1.0, 0.0));
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b)
      if (popcount(a) != popcount(b)) CHECK(f(a, b) == Complex(0.0, 0.0));
}

TEST_CASE("quantized conjugation acts as U on the graded creation blocks") {
  const int n = 3, k = 2;
  Rng rng(13);
  CMat u = random_unitary(n, rng);
  for (int j = 1; j <= n; ++j) {
    CMat big = quantized_conjugation(n, u, creation(n, j));
    GradedBasis rows = graded_basis(n, k), cols = graded_basis(n, k - 1);
    CMat blk(rows.size(), cols.size());
    for (Index r = 0; r < rows.size(); ++r)
      for (Index c = 0; c < cols.size(); ++c)
        blk(r, c) = big(rows.order[std::size_t(r)], cols.order[std::size_t(c)]);
    CMat want = CMat::Zero(rows.size(), cols.size());
    for (int i = 1; i <= n; ++i)
      want += u(i - 1, j - 1) * creation_restricted(n, i, k);
    CHECK(maxabs(CMat(blk - want)) <= 1e-10);
  }
  // U = I leaves W untouched
  CMat w = rng.gaussian(8, 8);
  CHECK(maxabs(CMat(quantized_conjugation(3, CMat::Identity(3, 3), w) - w)) <=
        1e-12);
  CHECK_THROWS_AS(quantized_conjugation(3, CMat(2.0 * CMat::Identity(3, 3)), w),
                  NotUnitary);
}

TEST_CASE("quantized conjugation reproduces the parity fixed points") {
  // U = diag(1, 1, -1): F(U)^2 = I and Delta = (Id + U-hat)/2 fixes exactly
  // the span of words with equal parity content in the flipped generators.
  CMat u = CMat::Identity(3, 3);
  u(2, 2) = -1.0;
  CMat fu = second_quantization(3, u);
  CHECK(maxabs(CMat(fu * fu - CMat::Identity(8, 8))) == 0.0);
  CMat c1 = creation(3, 1);
  CMat fixed = quantized_conjugation(3, u, c1);
  CHECK(maxabs(CMat(fixed - c1)) <= 1e-12);  // generator 1 untouched by U
  CMat c3 = creation(3, 3);
  CMat flipped = quantized_conjugation(3, u, c3);
  CHECK(maxabs(CMat(flipped + c3)) <= 1e-12);  // generator 3 negated
}
