#pragma once

#include <cmath>

#include "mla/tensor.hpp"

namespace mla {

/// Additive splitting A = D + L + U.
///
/// Lower/upper are decided by comparing linearized row and column
/// multi-indices, which is the visiting order of the Gauss-Seidel sweep.
template <typename Scalar>
struct SplitOperator {
  SquareTensor<Scalar> D;
  SquareTensor<Scalar> L;
  SquareTensor<Scalar> U;
};

template <typename Scalar>
SplitOperator<Scalar> split_dlu(const SquareTensor<Scalar>& a) {
  SplitOperator<Scalar> s{SquareTensor<Scalar>(a.dims()), SquareTensor<Scalar>(a.dims()),
                          SquareTensor<Scalar>(a.dims())};
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (i == j)
        s.D(i, j) = a(i, j);
      else if (i > j)
        s.L(i, j) = a(i, j);
      else
        s.U(i, j) = a(i, j);
    }
  return s;
}

template <typename Scalar>
bool is_diagonal(const SquareTensor<Scalar>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != Scalar(0)) return false;
  return true;
}

// |a(i,i)| >= sum_{j != i} |a(i,j)| for every row (> when strict).
template <typename Scalar>
bool is_diagonally_dominant(const SquareTensor<Scalar>& a, bool strict) {
  for (Index i = 0; i < a.rows(); ++i) {
    typename Tensor<Scalar>::RealScalar off = 0;
    for (Index j = 0; j < a.cols(); ++j)
      if (j != i) off += std::abs(a(i, j));
    const auto diag = std::abs(a(i, i));
    if (strict ? !(diag > off) : !(diag >= off)) return false;
  }
  return true;
}

template <typename Scalar>
Index count_nonzeros(const Tensor<Scalar>& a) {
  Index n = 0;
  for (const auto& v : a.data())
    if (v != Scalar(0)) ++n;
  return n;
}

}  // namespace mla
