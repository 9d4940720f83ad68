#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/LU>

#include "mla/error.hpp"
#include "mla/linalg.hpp"
#include "mla/tensor.hpp"

namespace mla {

// ---------------------------------------------------------------------------
// Reshape rank and index

template <typename Scalar>
Index rshrank(const Tensor<Scalar>& a) {
  return rank_with_tol(rsh(a));
}

struct IndexResult {
  Index k = 0;
  // rshrank(A^i) for i = 0..k+1.
  std::vector<Index> rank_sequence;
};

/// Smallest k >= 0 with rshrank(A^k) == rshrank(A^{k+1}).
///
/// The rank chain of a square operator of order n stabilizes after at most n
/// steps, which bounds the loop.
template <typename Scalar>
IndexResult index(const SquareTensor<Scalar>& a) {
  IndexResult out;
  const Index n = a.order();
  out.rank_sequence.push_back(n);  // A^0 = I
  SquareTensor<Scalar> p = a;
  for (Index i = 0; i <= n; ++i) {
    out.rank_sequence.push_back(rshrank(p));
    if (out.rank_sequence[i + 1] == out.rank_sequence[i]) {
      out.k = i;
      return out;
    }
    p = p * a;
  }
  out.k = n;
  return out;
}

// ---------------------------------------------------------------------------
// Moore-Penrose and {1}-inverses

template <typename Scalar>
Tensor<Scalar> moore_penrose(const Tensor<Scalar>& a) {
  return rsh_inv(pinv(rsh(a)), a.shape().transposed());
}

template <typename Scalar>
SquareTensor<Scalar> moore_penrose(const SquareTensor<Scalar>& a) {
  return SquareTensor<Scalar>(moore_penrose(static_cast<const Tensor<Scalar>&>(a)));
}

// Canonical {1}-inverse: the Moore-Penrose inverse.
template <typename Scalar>
Tensor<Scalar> one_inverse(const Tensor<Scalar>& a) {
  return moore_penrose(a);
}

template <typename Scalar>
SquareTensor<Scalar> one_inverse(const SquareTensor<Scalar>& a) {
  return moore_penrose(a);
}

struct PenroseResiduals {
  double axa = 0;   // A X A = A
  double xax = 0;   // X A X = X
  double ax_h = 0;  // (A X)^* = A X
  double xa_h = 0;  // (X A)^* = X A
  double max() const { return std::max({axa, xax, ax_h, xa_h}); }
};

template <typename Scalar>
PenroseResiduals penrose_residuals(const Tensor<Scalar>& a, const Tensor<Scalar>& x) {
  const double na = frobenius_norm(a), nx = frobenius_norm(x);
  const Tensor<Scalar> ax = a * x, xa = x * a;
  PenroseResiduals r;
  r.axa = relative_gap(Tensor<Scalar>(ax * a), a, na * nx * na + na);
  r.xax = relative_gap(Tensor<Scalar>(xa * x), x, nx * na * nx + nx);
  r.ax_h = relative_gap(conj_transpose(ax), ax, 2 * na * nx);
  r.xa_h = relative_gap(conj_transpose(xa), xa, 2 * na * nx);
  return r;
}

// ---------------------------------------------------------------------------
// Drazin inverse

/// A^D = A^k (A^{2k+1})^+ A^k with k = ind(A).
///
/// With the thin SVD A^k = U S V^*, A^{2k+1} = U S (V^* A U) S V^* and the
/// r x r middle factor is invertible, so (A^{2k+1})^+ = V S^-1 (V^* A U)^-1 S^-1 U^*
/// and the formula collapses to U (V^* A U)^-1 V^*. Evaluating it this way
/// avoids forming A^{2k+1}, whose condition number is the cube of the core's.
template <typename Scalar>
SquareTensor<Scalar> drazin(const SquareTensor<Scalar>& a, Index k) {
  const auto s = svd(rsh(power(a, k)));
  const Index n = a.rows();
  const Index r = rank_from_sigma(s.sigma, n, n);
  if (r == 0) return SquareTensor<Scalar>::Zero(a.dims());
  const Matrix<Scalar> u = s.U.leftCols(r), v = s.V.leftCols(r);
  const Matrix<Scalar> mid = v.adjoint() * rsh(a) * u;
  const Matrix<Scalar> x = u * mid.fullPivLu().solve(Matrix<Scalar>(v.adjoint()));
  return rsh_inv_square(x, a.dims());
}

template <typename Scalar>
SquareTensor<Scalar> drazin(const SquareTensor<Scalar>& a) {
  return drazin(a, index(a).k);
}

struct DrazinResiduals {
  double power_eq = 0;    // A^{k+1} X = A^k
  double outer_eq = 0;    // X A X = X
  double commute_eq = 0;  // A X = X A
  double max() const { return std::max({power_eq, outer_eq, commute_eq}); }
};

template <typename Scalar>
DrazinResiduals drazin_residuals(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& x,
                                 Index k) {
  const SquareTensor<Scalar> ak = power(a, k);
  const SquareTensor<Scalar> ak1 = ak * a;
  const double na = frobenius_norm(a), nx = frobenius_norm(x);
  DrazinResiduals r;
  r.power_eq = relative_gap(ak1 * x, ak, frobenius_norm(ak1) * nx + frobenius_norm(ak));
  r.outer_eq = relative_gap(x * a * x, x, nx * na * nx + nx);
  r.commute_eq = relative_gap(a * x, x * a, 2 * na * nx);
  return r;
}

// Verification route: A^D = X^{k+1} A^k for any X with A X^{k+1} = X^k and
// X A^{k+1} = A^k.
template <typename Scalar>
SquareTensor<Scalar> drazin_from_candidate(const SquareTensor<Scalar>& a,
                                           const SquareTensor<Scalar>& x, double tol = 1e-8) {
  if (a.dims() != x.dims()) throw ShapeMismatch("drazin_from_candidate: dims differ");
  const Index k = index(a).k;
  const SquareTensor<Scalar> xk = power(x, k), ak = power(a, k);
  const SquareTensor<Scalar> xk1 = xk * x, ak1 = ak * a;
  const double na = frobenius_norm(a), nx = frobenius_norm(x);
  const double r1 = relative_gap(a * xk1, xk, na * frobenius_norm(xk1) + frobenius_norm(xk));
  const double r2 = relative_gap(x * ak1, ak, nx * frobenius_norm(ak1) + frobenius_norm(ak));
  if (r1 > tol || r2 > tol) throw CandidateInvalid("candidate does not satisfy A X^{k+1} = X^k and X A^{k+1} = A^k");
  return xk1 * ak;
}

// Verification route: A^D = Y^+ with Y = (A^l)^+ A^{2l+1} (A^l)^+, l >= ind(A).
template <typename Scalar>
SquareTensor<Scalar> drazin_dual(const SquareTensor<Scalar>& a, Index l) {
  const SquareTensor<Scalar> al = power(a, l);
  const SquareTensor<Scalar> al_pinv = moore_penrose(al);
  const SquareTensor<Scalar> y = al_pinv * (al * al * a) * al_pinv;
  return moore_penrose(y);
}

// ---------------------------------------------------------------------------
// Full-rank factorization and group inverse

template <typename Scalar>
struct FullRankFactors {
  Tensor<Scalar> F;  // I(M) x [r]
  Tensor<Scalar> G;  // [r] x J(N)
  Index r = 0;
};

/// A = F * G with F = U_r Sigma_r and G = V_r^*, both of reshape rank r.
template <typename Scalar>
FullRankFactors<Scalar> full_rank_decomposition(const Tensor<Scalar>& a) {
  const auto s = svd(rsh(a));
  const Index r = rank_from_sigma(s.sigma, a.rows(), a.cols());
  if (r == 0) throw ZeroTensor("full_rank_decomposition: tensor has reshape rank 0");
  Matrix<Scalar> f = s.U.leftCols(r) * s.sigma.head(r).template cast<Scalar>().asDiagonal();
  Matrix<Scalar> g = s.V.leftCols(r).adjoint();
  FullRankFactors<Scalar> out;
  out.F = rsh_inv(f, Shape(a.row_dims(), {r}));
  out.G = rsh_inv(g, Shape({r}, a.col_dims()));
  out.r = r;
  return out;
}

/// ind(A) <= 1, i.e. rank(A^2) == rank(A). The rank of the rounded product
/// A*A is judged against its own error floor n eps ||A||_2^2 rather than
/// sigma_max(A^2), so computed operands with rounding noise are classified
/// correctly.
template <typename Scalar>
bool index_at_most_one(const SquareTensor<Scalar>& a, std::optional<Index> rank_a = std::nullopt) {
  const Matrix<Scalar> m = rsh(a);
  const auto s = svd(m);
  const Index r = rank_a ? *rank_a : rank_from_sigma(s.sigma, m.rows(), m.cols());
  const double tol = s.sigma(0) * s.sigma(0) * static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon();
  return rank_with_tol(Matrix<Scalar>(m * m), tol) == r;
}

/// A^# = F (G F)^{-2} G. Throws IndexNotOne unless rank(A^2) == rank(A).
template <typename Scalar>
SquareTensor<Scalar> group_inverse(const SquareTensor<Scalar>& a) {
  const Index r1 = rshrank(a);
  if (r1 == 0) return SquareTensor<Scalar>::Zero(a.dims());
  if (!index_at_most_one(a, r1)) throw IndexNotOne("group_inverse: rank(A^2) < rank(A)");
  const auto frd = full_rank_decomposition(static_cast<const Tensor<Scalar>&>(a));
  const Tensor<Scalar> gf = frd.G * frd.F;
  Eigen::FullPivLU<Matrix<Scalar>> lu(rsh(gf));
  if (!lu.isInvertible()) throw IndexNotOne("group_inverse: G*F is singular");
  const Matrix<Scalar> gf_inv = lu.inverse();
  const Tensor<Scalar> gf_inv2 = rsh_inv(Matrix<Scalar>(gf_inv * gf_inv), gf.shape());
  return SquareTensor<Scalar>(frd.F * gf_inv2 * frd.G);
}

/// A^# = A (A^3)^{(1)} A for any {1}-inverse of A^3.
template <typename Scalar>
SquareTensor<Scalar> group_via_one_inverse(const SquareTensor<Scalar>& a,
                                           const SquareTensor<Scalar>& a3_one_inverse) {
  const Index r1 = rshrank(a);
  if (r1 != 0 && !index_at_most_one(a, r1)) throw IndexNotOne("group_via_one_inverse: rank(A^2) < rank(A)");
  return a * a3_one_inverse * a;
}

template <typename Scalar>
SquareTensor<Scalar> group_via_one_inverse(const SquareTensor<Scalar>& a) {
  return group_via_one_inverse(a, one_inverse(power(a, 3)));
}

// ---------------------------------------------------------------------------
// Core-nilpotent decomposition

template <typename Scalar>
struct CoreNilpotent {
  SquareTensor<Scalar> core;       // index <= 1
  SquareTensor<Scalar> nilpotent;  // N^k = O, k = ind(A)
};

template <typename Scalar>
CoreNilpotent<Scalar> core_nilpotent(const SquareTensor<Scalar>& a) {
  const SquareTensor<Scalar> ad = drazin(a);
  SquareTensor<Scalar> core = a * a * ad;
  SquareTensor<Scalar> nil = a - core;
  return {std::move(core), std::move(nil)};
}

}  // namespace mla
