#pragma once

#include <algorithm>

#include "mla/error.hpp"
#include "mla/gen_inverse.hpp"
#include "mla/tensor.hpp"

namespace mla {

// B in C^{I(M) x J(N)} with weight W in C^{J(N) x I(M)}.
template <typename Scalar>
struct WeightedPair {
  Tensor<Scalar> B;
  Tensor<Scalar> W;

  WeightedPair(Tensor<Scalar> b, Tensor<Scalar> w) : B(std::move(b)), W(std::move(w)) {
    if (B.col_dims() != W.row_dims() || W.col_dims() != B.row_dims())
      throw ShapeMismatch("weighted pair: B is " + B.shape().to_string() + ", W is " +
                          W.shape().to_string());
  }

  SquareTensor<Scalar> bw() const { return SquareTensor<Scalar>(B * W); }
  SquareTensor<Scalar> wb() const { return SquareTensor<Scalar>(W * B); }
};

// Exponent used in the first defining equation: max(ind(B W), 1).
template <typename Scalar>
Index weighted_index(const WeightedPair<Scalar>& p) {
  return std::max<Index>(index(p.bw()).k, 1);
}

/// B^{D,W} = B [(W B)^2]^D.
template <typename Scalar>
Tensor<Scalar> w_drazin(const WeightedPair<Scalar>& p) {
  const SquareTensor<Scalar> wb = p.wb();
  return p.B * drazin(SquareTensor<Scalar>(wb * wb));
}

struct WeightedResiduals {
  double power_eq = 0;    // (BW)^{k+1} X W = (BW)^k
  double outer_eq = 0;    // X W B W X = X
  double commute_eq = 0;  // B W X = X W B
  bool accepted = false;
  double max() const { return std::max({power_eq, outer_eq, commute_eq}); }
};

// Residuals of the three defining equations; accepted iff all <= tol.
template <typename Scalar>
WeightedResiduals verify_w_drazin(const WeightedPair<Scalar>& p, const Tensor<Scalar>& x,
                                  double tol = 1e-8) {
  if (x.shape() != p.B.shape())
    throw ShapeMismatch("verify_w_drazin: X must have the shape of B");
  const Index k = weighted_index(p);
  const SquareTensor<Scalar> bw = p.bw();
  const SquareTensor<Scalar> bwk = power(bw, k);
  const SquareTensor<Scalar> bwk1 = bwk * bw;
  const Tensor<Scalar> xw = x * p.W;
  const double nb = frobenius_norm(p.B), nw = frobenius_norm(p.W), nx = frobenius_norm(x);
  WeightedResiduals r;
  r.power_eq = relative_gap(Tensor<Scalar>(bwk1 * xw), bwk,
                            frobenius_norm(bwk1) * nx * nw + frobenius_norm(bwk));
  r.outer_eq = relative_gap(Tensor<Scalar>(xw * bw * x), x, nx * nw * nb * nw * nx + nx);
  r.commute_eq = relative_gap(Tensor<Scalar>(bw * x), Tensor<Scalar>(xw * p.B), 2 * nb * nw * nx);
  r.accepted = r.max() <= tol;
  return r;
}

}  // namespace mla
