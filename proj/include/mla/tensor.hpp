#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mla/error.hpp"
#include "mla/shape.hpp"

namespace mla {

// Row-major dynamic matrix; the image of rsh.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense tensor with an explicit split into row modes and column modes.
///
/// Entries are stored row-major over the concatenated multi-index
/// (i_1..i_M, j_1..j_N), so the reshape onto a row_count x col_count matrix
/// is a reinterpretation of the same buffer.
template <typename Scalar_>
class Tensor {
 public:
  using Scalar = Scalar_;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using MatrixType = Matrix<Scalar>;

  Tensor() : data_(1, Scalar(0)) {}
  explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_.size(), Scalar(0)) {}
  Tensor(Shape shape, std::vector<Scalar> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (static_cast<Index>(data_.size()) != shape_.size())
      throw ShapeMismatch("data length does not match shape " + shape_.to_string());
  }

  static Tensor Zero(const Shape& shape) { return Tensor(shape); }

  const Shape& shape() const { return shape_; }
  const Dims& row_dims() const { return shape_.row_dims(); }
  const Dims& col_dims() const { return shape_.col_dims(); }
  Index rows() const { return shape_.row_count(); }
  Index cols() const { return shape_.col_count(); }
  Index size() const { return shape_.size(); }

  // Linearized (row, col) access.
  Scalar& operator()(Index row, Index col) { return data_[row * cols() + col]; }
  const Scalar& operator()(Index row, Index col) const { return data_[row * cols() + col]; }

  // 0-based multi-index access.
  Scalar& at(const Dims& row, const Dims& col) {
    return (*this)(linear_index(row_dims(), row), linear_index(col_dims(), col));
  }
  const Scalar& at(const Dims& row, const Dims& col) const {
    return (*this)(linear_index(row_dims(), row), linear_index(col_dims(), col));
  }

  std::span<Scalar> data() { return data_; }
  std::span<const Scalar> data() const { return data_; }

  Eigen::Map<MatrixType> matrix() { return {data_.data(), rows(), cols()}; }
  Eigen::Map<const MatrixType> matrix() const { return {data_.data(), rows(), cols()}; }

  template <typename NewScalar>
  Tensor<NewScalar> cast() const {
    std::vector<NewScalar> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(),
                   [](const Scalar& v) { return static_cast<NewScalar>(v); });
    return Tensor<NewScalar>(shape_, std::move(out));
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<Scalar> data_;
};

/// Even-order tensor whose row modes equal its column modes. This is the
/// domain of powers, index, Drazin and group inverses.
template <typename Scalar_>
class SquareTensor : public Tensor<Scalar_> {
 public:
  using Base = Tensor<Scalar_>;
  using typename Base::Scalar;

  SquareTensor() = default;
  explicit SquareTensor(Base t) : Base(std::move(t)) {
    if (!this->shape().is_square())
      throw ShapeMismatch("expected a square tensor, got " + this->shape().to_string());
  }
  explicit SquareTensor(const Dims& dims) : Base(Shape::square(dims)) {}

  static SquareTensor Zero(const Dims& dims) { return SquareTensor(dims); }

  const Dims& dims() const { return this->row_dims(); }
  Index order() const { return this->rows(); }
};

using TensorXd = Tensor<double>;
using TensorXcd = Tensor<std::complex<double>>;
using SquareTensorXd = SquareTensor<double>;
using SquareTensorXcd = SquareTensor<std::complex<double>>;

// ---------------------------------------------------------------------------
// Reshape isomorphism

// Zero-copy matrix view of a tensor.
template <typename Scalar>
Eigen::Map<const Matrix<Scalar>> rsh(const Tensor<Scalar>& a) {
  return a.matrix();
}

template <typename Derived>
Tensor<typename Derived::Scalar> rsh_inv(const Eigen::MatrixBase<Derived>& m, const Shape& shape) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != shape.row_count() || m.cols() != shape.col_count())
    throw ShapeMismatch("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        ", shape " + shape.to_string() + " needs " +
                        std::to_string(shape.row_count()) + "x" + std::to_string(shape.col_count()));
  Tensor<Scalar> t(shape);
  t.matrix() = m;
  return t;
}

template <typename Derived>
SquareTensor<typename Derived::Scalar> rsh_inv_square(const Eigen::MatrixBase<Derived>& m,
                                                      const Dims& dims) {
  return SquareTensor<typename Derived::Scalar>(rsh_inv(m, Shape::square(dims)));
}

// ---------------------------------------------------------------------------
// Elementwise companions

template <typename Scalar>
Tensor<Scalar> operator+(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (a.shape() != b.shape()) throw ShapeMismatch("operator+: shapes differ");
  Tensor<Scalar> out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += bd[i];
  return out;
}

template <typename Scalar>
Tensor<Scalar> operator-(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (a.shape() != b.shape()) throw ShapeMismatch("operator-: shapes differ");
  Tensor<Scalar> out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bd[i];
  return out;
}

template <typename Scalar>
Tensor<Scalar> operator-(const Tensor<Scalar>& a) {
  Tensor<Scalar> out = a;
  for (auto& v : out.data()) v = -v;
  return out;
}

template <typename Scalar>
Tensor<Scalar> operator*(const Scalar& s, const Tensor<Scalar>& a) {
  Tensor<Scalar> out = a;
  for (auto& v : out.data()) v *= s;
  return out;
}

template <typename Scalar>
SquareTensor<Scalar> operator+(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  return SquareTensor<Scalar>(static_cast<const Tensor<Scalar>&>(a) + b);
}

template <typename Scalar>
SquareTensor<Scalar> operator-(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  return SquareTensor<Scalar>(static_cast<const Tensor<Scalar>&>(a) - b);
}

template <typename Scalar>
SquareTensor<Scalar> operator-(const SquareTensor<Scalar>& a) {
  return SquareTensor<Scalar>(-static_cast<const Tensor<Scalar>&>(a));
}

template <typename Scalar>
SquareTensor<Scalar> operator*(const Scalar& s, const SquareTensor<Scalar>& a) {
  return SquareTensor<Scalar>(s * static_cast<const Tensor<Scalar>&>(a));
}

// ---------------------------------------------------------------------------
// Einstein product

/// Contracts the column modes of `a` against the row modes of `b`.
///
/// Every output entry is accumulated over the contracted linear index k in
/// ascending order, so repeated calls on identical inputs are bit-identical.
template <typename Scalar>
Tensor<Scalar> einstein_product(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (a.col_dims() != b.row_dims())
    throw ShapeMismatch("einstein_product: " + a.shape().to_string() + " * " + b.shape().to_string());
  const Index m = a.rows(), inner = a.cols(), n = b.cols();
  Tensor<Scalar> out(Shape(a.row_dims(), b.col_dims()));
  const Scalar* pa = a.data().data();
  const Scalar* pb = b.data().data();
  Scalar* pc = out.data().data();
  for (Index i = 0; i < m; ++i) {
    Scalar* crow = pc + i * n;
    for (Index k = 0; k < inner; ++k) {
      const Scalar aik = pa[i * inner + k];
      const Scalar* brow = pb + k * n;
      for (Index j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return out;
}

template <typename Scalar>
Tensor<Scalar> operator*(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  return einstein_product(a, b);
}

template <typename Scalar>
SquareTensor<Scalar> operator*(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  return SquareTensor<Scalar>(
      einstein_product(static_cast<const Tensor<Scalar>&>(a), static_cast<const Tensor<Scalar>&>(b)));
}

// ---------------------------------------------------------------------------
// Constructors and unary maps

template <typename Scalar = std::complex<double>>
SquareTensor<Scalar> identity(const Dims& dims) {
  if (dims.empty()) throw ShapeMismatch("identity: dims must be nonempty");
  SquareTensor<Scalar> t(dims);
  for (Index i = 0; i < t.rows(); ++i) t(i, i) = Scalar(1);
  return t;
}

template <typename Scalar>
Tensor<Scalar> conj_transpose(const Tensor<Scalar>& a) {
  Tensor<Scalar> out(a.shape().transposed());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(j, i) = Eigen::numext::conj(a(i, j));
  return out;
}

template <typename Scalar>
SquareTensor<Scalar> conj_transpose(const SquareTensor<Scalar>& a) {
  return SquareTensor<Scalar>(conj_transpose(static_cast<const Tensor<Scalar>&>(a)));
}

// rsh(kron_lift(a, b)) = kron(rsh(a), rsh(b)).
template <typename Scalar>
Tensor<Scalar> kron_lift(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  Dims rows = a.row_dims(), cols = a.col_dims();
  rows.insert(rows.end(), b.row_dims().begin(), b.row_dims().end());
  cols.insert(cols.end(), b.col_dims().begin(), b.col_dims().end());
  Tensor<Scalar> out(Shape(rows, cols));
  const Index br = b.rows(), bc = b.cols();
  for (Index ia = 0; ia < a.rows(); ++ia)
    for (Index ja = 0; ja < a.cols(); ++ja) {
      const Scalar s = a(ia, ja);
      if (s == Scalar(0)) continue;
      for (Index ib = 0; ib < br; ++ib)
        for (Index jb = 0; jb < bc; ++jb) out(ia * br + ib, ja * bc + jb) = s * b(ib, jb);
    }
  return out;
}

template <typename Scalar>
SquareTensor<Scalar> kron_lift(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  return SquareTensor<Scalar>(
      kron_lift(static_cast<const Tensor<Scalar>&>(a), static_cast<const Tensor<Scalar>&>(b)));
}

// A^p by binary exponentiation; A^0 = I.
template <typename Scalar>
SquareTensor<Scalar> power(const SquareTensor<Scalar>& a, Index p) {
  if (p < 0) throw std::invalid_argument("power: exponent must be nonnegative");
  if (p == 1) return a;
  SquareTensor<Scalar> result = identity<Scalar>(a.dims());
  SquareTensor<Scalar> base = a;
  bool first = true;
  while (p > 0) {
    if (p & 1) {
      result = first ? base : result * base;
      first = false;
    }
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Norms

enum class NormKind { Frobenius, Max };

template <typename Scalar>
typename Tensor<Scalar>::RealScalar frobenius_norm(const Tensor<Scalar>& a) {
  typename Tensor<Scalar>::RealScalar s = 0;
  for (const auto& v : a.data()) s += Eigen::numext::abs2(v);
  return std::sqrt(s);
}

// max over column multi-index j of sum_i |a(i, j)|, i.e. the 1-norm of rsh(a).
template <typename Scalar>
typename Tensor<Scalar>::RealScalar max_norm(const Tensor<Scalar>& a) {
  using Real = typename Tensor<Scalar>::RealScalar;
  Real best = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    Real col = 0;
    for (Index i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

template <typename Scalar>
typename Tensor<Scalar>::RealScalar norm(const Tensor<Scalar>& a, NormKind kind = NormKind::Frobenius) {
  return kind == NormKind::Frobenius ? frobenius_norm(a) : max_norm(a);
}

// ||x - y||_F / scale, or 0 when x and y coincide. `scale` should be built
// from the norms of the operands that produced x and y.
template <typename Scalar>
double relative_gap(const Tensor<Scalar>& x, const Tensor<Scalar>& y, double scale) {
  const double diff = frobenius_norm(Tensor<Scalar>(x - y));
  if (diff == 0.0) return 0.0;
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

// Gap scaled by the larger of the two norms.
template <typename Scalar>
double relative_gap(const Tensor<Scalar>& x, const Tensor<Scalar>& y) {
  const double scale = std::max(frobenius_norm(x), frobenius_norm(y));
  return relative_gap(x, y, scale);
}

}  // namespace mla
