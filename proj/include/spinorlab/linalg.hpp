#ifndef SPINORLAB_LINALG_HPP
#define SPINORLAB_LINALG_HPP

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

#include "spinorlab/common.hpp"

namespace spinorlab {

inline constexpr Index kDefaultDimensionCap = 4096;

/// Full spectral decomposition of a Hermitian matrix.
/// Eigenvalues descending; eigenvector columns unitary.
struct HermitianEigen {
  RVec eigenvalues;
  CMat eigenvectors;
  bool converged = true;
};

inline HermitianEigen hermitian_eig(const CMat& m, double tol = 1e-10) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_eig: matrix not square");
  require_finite(m, "hermitian_eig");
  double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol)
    throw NotHermitian("hermitian_eig: symmetry residual " +
                       std::to_string(asym) + " exceeds tol");
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()));
  HermitianEigen out;
  out.converged = (es.info() == Eigen::Success);
  Index n = m.rows();
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = CMat(n, n);
  for (Index j = 0; j < n; ++j)
    out.eigenvectors.col(j) = es.eigenvectors().col(n - 1 - j);
  return out;
}

/// Singular values, descending, length min(rows, cols). One-sided SVD on m
/// itself; the m*m route loses half the precision at small singular values
/// (spurious sqrt(eps) values on rank-deficient inputs), which the 1e-10
/// norm tolerances cannot afford.
inline RVec singular_values(const CMat& m) {
  require_finite(m, "singular_values");
  if (m.rows() == 0 || m.cols() == 0) return RVec(0);
  if (std::min(m.rows(), m.cols()) > 32)
    return Eigen::BDCSVD<CMat>(m).singularValues();
  return Eigen::JacobiSVD<CMat>(m).singularValues();
}

/// Kronecker product; kron(a,b)(i*rb+k, j*cb+l) = a(i,j)*b(k,l).
inline CMat kron(const CMat& a, const CMat& b, Index cap = kDefaultDimensionCap) {
  Index rows = a.rows() * b.rows(), cols = a.cols() * b.cols();
  if (rows > cap || cols > cap)
    throw DimensionCap("kron: result " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " exceeds cap " +
                       std::to_string(cap));
  CMat out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace spinorlab

#endif
