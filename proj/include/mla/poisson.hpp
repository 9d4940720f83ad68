#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include "mla/error.hpp"
#include "mla/gen_inverse.hpp"
#include "mla/tensor.hpp"

namespace mla {

enum class BoundaryCondition { Dirichlet, Neumann };

struct PoissonSpec {
  int dim = 2;  // 2, 3 or 4
  Index n = 4;  // grid points per axis
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
};

// Second-order n x n tensor tridiag(off, diag, off).
template <typename Scalar = std::complex<double>>
SquareTensor<Scalar> tridiagonal(Index n, Scalar off, Scalar diag) {
  SquareTensor<Scalar> t(Dims{n});
  for (Index i = 0; i < n; ++i) {
    t(i, i) = diag;
    if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = off;
  }
  return t;
}

// sum_axis I x .. x P x .. x I with P on position `axis` among `dim` factors.
template <typename Scalar>
SquareTensor<Scalar> kronecker_sum(const SquareTensor<Scalar>& p, int dim) {
  const Dims one{p.rows()};
  SquareTensor<Scalar> sum(Dims(dim, p.rows()));
  for (int axis = 0; axis < dim; ++axis) {
    SquareTensor<Scalar> term = axis == 0 ? p : identity<Scalar>(one);
    for (int f = 1; f < dim; ++f) term = kron_lift(term, f == axis ? p : identity<Scalar>(one));
    sum = sum + term;
  }
  return sum;
}

/// Discrete Laplacian on an n^dim grid as a Kronecker sum.
///
/// Dirichlet: sum of copies of P = tridiag(-1, 2, -1). Neumann (dim 2 only):
/// I x P + P x I with P = tridiag(-1, 0, -1), plus a diagonal tensor holding
/// each node's neighbour count, so every row sums to zero.
template <typename Scalar = std::complex<double>>
SquareTensor<Scalar> generate(const PoissonSpec& spec) {
  if (spec.dim < 2 || spec.dim > 4) throw Unsupported("poisson: dim must be 2, 3 or 4");
  if (spec.n < 2) throw Unsupported("poisson: n must be >= 2");
  if (spec.bc == BoundaryCondition::Dirichlet)
    return kronecker_sum(tridiagonal<Scalar>(spec.n, Scalar(-1), Scalar(2)), spec.dim);

  if (spec.dim != 2) throw Unsupported("poisson: neumann boundary is only implemented for dim 2");
  SquareTensor<Scalar> a = kronecker_sum(tridiagonal<Scalar>(spec.n, Scalar(-1), Scalar(0)), 2);
  for (Index i = 0; i < a.rows(); ++i) {
    Scalar neighbours(0);
    for (Index j = 0; j < a.cols(); ++j)
      if (j != i) neighbours -= a(i, j);
    a(i, i) = neighbours;
  }
  return a;
}

// Portable uniform double in [-1, 1) from a 64-bit engine.
inline double uniform_signed(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

/// B = A^max(k,1) Y for Y drawn from `seed`, so B lies in R(A^k).
template <typename Scalar>
Tensor<Scalar> consistent_rhs(const SquareTensor<Scalar>& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tensor<Scalar> y(Shape(a.dims(), {}));
  for (auto& v : y.data()) v = Scalar(uniform_signed(rng));
  const Index k = std::max<Index>(index(a).k, 1);
  return power(a, k) * y;
}

inline std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

}  // namespace mla
