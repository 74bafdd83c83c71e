#ifndef SPINORLAB_COMMON_HPP
#define SPINORLAB_COMMON_HPP

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinorlab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DimensionCap : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct InvalidExponent : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct InvalidWeight : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct RangeTooLarge : Error { using Error::Error; };

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " at line " + std::to_string(line_) + ", column " +
              std::to_string(column_)),
        line(line_),
        column(column_) {}
};

inline bool all_finite(const CMat& m) {
  return m.allFinite();
}

inline void require_finite(const CMat& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

inline int popcount(std::uint32_t x) { return std::popcount(x); }

inline std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// Subsets of {1..n} with |A| = k, as bitmasks in increasing order.
inline std::vector<std::uint32_t> subsets_of_size(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < (1u << n); ++a)
    if (popcount(a) == k) out.push_back(a);
  return out;
}

/// Deterministic, platform-independent RNG (splitmix64 + Box-Muller).
/// std::normal_distribution is implementation-defined, which would break the
/// byte-identical-report contract; this generator is pinned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_restart(std::uint64_t seed, std::uint64_t restart) {
    return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (restart + 1)));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  Complex cnormal() {
    double a = normal();
    double b = normal();
    return {a, b};
  }

  CMat gaussian(Index rows, Index cols) {
    CMat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

  CVec gaussian_vec(Index n) {
    CVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-ish random unitary via QR of a complex Gaussian.
inline CMat random_unitary(Index n, Rng& rng) {
  CMat z = rng.gaussian(n, n);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
  }
  return q;
}

}  // namespace spinorlab

#endif
