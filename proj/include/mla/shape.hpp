#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mla/error.hpp"

namespace mla {

using Index = Eigen::Index;
using Dims = std::vector<Index>;

namespace detail {

inline Index checked_product(const Dims& dims) {
  Index prod = 1;
  for (Index d : dims) {
    if (d < 1) throw ShapeMismatch("tensor dimensions must be >= 1");
    if (prod > std::numeric_limits<Index>::max() / d)
      throw ShapeMismatch("tensor size overflows the index type");
    prod *= d;
  }
  return prod;
}

inline std::string dims_to_string(const Dims& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

}  // namespace detail

// Row modes I(M) and column modes J(N) of a tensor viewed as an operator
// C^{J(N)} -> C^{I(M)}. Either list may be empty (a pure right-hand side has
// no column modes); the empty product is 1.
class Shape {
 public:
  Shape() = default;
  Shape(Dims row_dims, Dims col_dims)
      : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
    row_count_ = detail::checked_product(row_dims_);
    col_count_ = detail::checked_product(col_dims_);
    if (row_count_ > 0 && col_count_ > std::numeric_limits<Index>::max() / row_count_)
      throw ShapeMismatch("tensor size overflows the index type");
  }

  // Square shape I(N) x I(N).
  static Shape square(const Dims& dims) { return Shape(dims, dims); }

  const Dims& row_dims() const { return row_dims_; }
  const Dims& col_dims() const { return col_dims_; }
  Index row_count() const { return row_count_; }
  Index col_count() const { return col_count_; }
  Index size() const { return row_count_ * col_count_; }

  bool is_square() const { return row_dims_ == col_dims_; }

  Shape transposed() const { return Shape(col_dims_, row_dims_); }

  friend bool operator==(const Shape&, const Shape&) = default;

  std::string to_string() const {
    return detail::dims_to_string(row_dims_) + "x" + detail::dims_to_string(col_dims_);
  }

 private:
  Dims row_dims_;
  Dims col_dims_;
  Index row_count_ = 1;
  Index col_count_ = 1;
};

// Row-major linear offset of a 0-based multi-index. Mode 0 varies slowest.
inline Index linear_index(const Dims& dims, const Dims& multi) {
  if (multi.size() != dims.size()) throw ShapeMismatch("multi-index has wrong number of modes");
  Index lin = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= dims[k]) throw ShapeMismatch("multi-index out of range");
    lin = lin * dims[k] + multi[k];
  }
  return lin;
}

inline Dims multi_index(const Dims& dims, Index lin) {
  Dims multi(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    multi[k] = lin % dims[k];
    lin /= dims[k];
  }
  return multi;
}

}  // namespace mla
