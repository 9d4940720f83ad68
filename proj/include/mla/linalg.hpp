#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mla/error.hpp"
#include "mla/tensor.hpp"

namespace mla {

template <typename Scalar>
struct SvdResult {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  Matrix<Scalar> U;            // m x m unitary
  Vector<RealScalar> sigma;    // min(m, n), nonincreasing
  Matrix<Scalar> V;            // n x n unitary
};

// Full SVD. Both unitary factors are returned because the null-space and
// full-rank helpers below need the trailing singular vectors.
template <typename Derived>
SvdResult<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::BDCSVD<Plain> solver(Plain(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("svd did not converge");
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

// Numerical-rank threshold: sigma_max * max(rows, cols) * eps.
template <typename RealScalar>
RealScalar rank_tolerance(const Vector<RealScalar>& sigma, Index rows, Index cols) {
  if (sigma.size() == 0) return RealScalar(0);
  return sigma(0) * static_cast<RealScalar>(std::max(rows, cols)) *
         std::numeric_limits<RealScalar>::epsilon();
}

template <typename RealScalar>
Index rank_from_sigma(const Vector<RealScalar>& sigma, Index rows, Index cols) {
  const RealScalar tol = rank_tolerance(sigma, rows, cols);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol) ++r;
  return r;
}

template <typename Derived>
Index rank_with_tol(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::BDCSVD<Plain> solver{Plain(m)};
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("svd did not converge");
  return rank_from_sigma(Vector<typename Eigen::NumTraits<Scalar>::Real>(solver.singularValues()),
                         m.rows(), m.cols());
}

// Rank with an explicit absolute threshold on the singular values.
template <typename Derived>
Index rank_with_tol(const Eigen::MatrixBase<Derived>& m, double tol) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::BDCSVD<Plain> solver{Plain(m)};
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("svd did not converge");
  return (solver.singularValues().array() > tol).count();
}

template <typename Derived>
Matrix<typename Derived::Scalar> pinv(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto s = svd(m);
  const Index r = rank_from_sigma(s.sigma, m.rows(), m.cols());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(m.cols(), m.rows());
  if (r == 0) return out;
  out = s.V.leftCols(r) * s.sigma.head(r).cwiseInverse().template cast<Scalar>().asDiagonal() *
        s.U.leftCols(r).adjoint();
  return out;
}

// Orthonormal basis (as columns) of the null space of m.
template <typename Derived>
Matrix<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& m) {
  const auto s = svd(m);
  const Index r = rank_from_sigma(s.sigma, m.rows(), m.cols());
  return s.V.rightCols(m.cols() - r);
}

// Eigenvalues with multiplicity, via Hessenberg reduction and shifted QR.
template <typename Derived>
std::vector<std::complex<typename Eigen::NumTraits<typename Derived::Scalar>::Real>> eigenvalues(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw ShapeMismatch("eigenvalues: matrix must be square");
  Eigen::ComplexEigenSolver<CMatrix> solver(CMatrix(m.template cast<Complex>()), false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace mla
