#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "mla/gen_inverse.hpp"
#include "mla/linalg.hpp"
#include "mla/tensor.hpp"
#include "mla/weighted_drazin.hpp"

namespace mla {

struct Check {
  std::string name;
  double residual = 0;
  bool passed = false;
};

/// Named residual checks. A check passes when its relative residual is at
/// most `tol`; "expect different" checks invert the comparison.
class CheckReport {
 public:
  explicit CheckReport(double tol = 1e-8) : tol_(tol) {}

  void expect_small(std::string name, double residual) {
    checks_.push_back({std::move(name), residual, residual <= tol_});
  }
  void expect_large(std::string name, double gap) {
    checks_.push_back({std::move(name), gap, gap > tol_});
  }
  void merge(const CheckReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  const std::vector<Check>& checks() const { return checks_; }
  double tol() const { return tol_; }
  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
  }
  const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return &c;
    return nullptr;
  }

 private:
  double tol_;
  std::vector<Check> checks_;
};

namespace detail {

template <typename Scalar>
double nf(const Tensor<Scalar>& t) {
  return frobenius_norm(t);
}

}  // namespace detail

// Defining-equation residuals of the computed Drazin inverse.
template <typename Scalar>
CheckReport drazin_axiom_checks(const SquareTensor<Scalar>& a, double tol = 1e-8) {
  CheckReport rep(tol);
  const Index k = index(a).k;
  const auto x = drazin(a, k);
  const auto r = drazin_residuals(a, x, k);
  rep.expect_small("A^{k+1} X = A^k", r.power_eq);
  rep.expect_small("X A X = X", r.outer_eq);
  rep.expect_small("A X = X A", r.commute_eq);
  return rep;
}

template <typename Scalar>
CheckReport penrose_checks(const Tensor<Scalar>& a, double tol = 1e-10) {
  CheckReport rep(tol);
  const auto r = penrose_residuals(a, moore_penrose(a));
  rep.expect_small("A X A = A", r.axa);
  rep.expect_small("X A X = X", r.xax);
  rep.expect_small("(A X)^* = A X", r.ax_h);
  rep.expect_small("(X A)^* = X A", r.xa_h);
  return rep;
}

// Power sums sum_i (lambda_i^m)^j versus sum_i mu_i^j, mu = eig(A^m), for
// j = 1..r. Equal power sums for every j <= r is equivalent to equal
// multisets. The comparison runs on the core: with U an orthonormal basis of
// the invariant subspace R(A^k), the nonzero eigenvalues of A are those of
// U^* A U and those of A^m are those of U^* A^m U. The remaining eigenvalues
// are zero on both sides, and computing them directly would only measure the
// eps^(1/b) blur of a size-b Jordan block.
template <typename Scalar>
double eigen_power_gap(const SquareTensor<Scalar>& a, Index m) {
  using C = std::complex<double>;
  const Index k = index(a).k;
  const auto s = svd(rsh(power(a, k)));
  const Index r = rank_from_sigma(s.sigma, a.rows(), a.cols());
  if (r == 0) return 0.0;
  const Matrix<Scalar> u = s.U.leftCols(r);
  const auto lam = eigenvalues(Matrix<Scalar>(u.adjoint() * rsh(a) * u));
  const auto mu = eigenvalues(Matrix<Scalar>(u.adjoint() * rsh(power(a, m)) * u));
  double worst = 0;
  for (Index j = 1; j <= r; ++j) {
    C s1 = 0, s2 = 0;
    double scale = 0;
    for (const auto& l : lam) {
      const C t = std::pow(C(l), static_cast<double>(m * j));
      s1 += t;
      scale += std::abs(t);
    }
    for (const auto& v : mu) {
      const C t = std::pow(C(v), static_cast<double>(j));
      s2 += t;
      scale += std::abs(t);
    }
    if (scale > 0) worst = std::max(worst, std::abs(s1 - s2) / scale);
  }
  return worst;
}

/// Single-operand identity suite for the Drazin inverse.
template <typename Scalar>
CheckReport drazin_identity_checks(const SquareTensor<Scalar>& a, double tol = 1e-8) {
  using Sq = SquareTensor<Scalar>;
  CheckReport rep(tol);
  const auto idx = index(a);
  const Index k = idx.k;
  const Sq ad = drazin(a, k);
  const double na = detail::nf(a), nd = detail::nf(ad);

  rep.merge(drazin_axiom_checks(a, tol));

  // (A^*)^D = (A^D)^*
  rep.expect_small("(A^*)^D = (A^D)^*", relative_gap(drazin(conj_transpose(a)), conj_transpose(ad), nd));

  // (A^l)^D = (A^D)^l
  for (Index l : {2, 3}) {
    const Sq lhs = drazin(power(a, l));
    const Sq rhs = power(ad, l);
    rep.expect_small("(A^" + std::to_string(l) + ")^D = (A^D)^" + std::to_string(l),
                     relative_gap(lhs, rhs, std::max(detail::nf(lhs), detail::nf(rhs))));
  }

  // (A^D)^# = A^2 A^D
  {
    const Sq lhs = group_inverse(ad);
    const Sq rhs = a * a * ad;
    rep.expect_small("(A^D)^# = A^2 A^D", relative_gap(lhs, rhs, na * na * nd + detail::nf(lhs)));
  }

  // ((A^D)^D)^D = A^D
  const Sq add = drazin(ad);
  rep.expect_small("((A^D)^D)^D = A^D", relative_gap(drazin(add), ad, nd + detail::nf(add)));

  // (A^D)^D = A iff ind(A) <= 1
  {
    const double gap = relative_gap(add, a, na + detail::nf(add));
    if (k <= 1)
      rep.expect_small("(A^D)^D = A (index <= 1)", gap);
    else
      rep.expect_large("(A^D)^D != A (index > 1)", gap);
  }

  // A^D = Y^+, Y = (A^l)^+ A^{2l+1} (A^l)^+, l >= k
  for (Index l : {k, k + 1}) {
    if (l == 0) continue;
    rep.expect_small("A^D = Y^+ (l = " + std::to_string(l) + ")", relative_gap(drazin_dual(a, l), ad, nd));
  }

  // A^p (A^D)^p = A A^D = (A^D)^p A^p
  const Sq aad = a * ad;
  for (Index p : {1, 2, 3}) {
    const Sq ap = power(a, p), adp = power(ad, p);
    const double scale = detail::nf(ap) * detail::nf(adp) + detail::nf(aad);
    rep.expect_small("A^" + std::to_string(p) + " (A^D)^" + std::to_string(p) + " = A A^D",
                     relative_gap(ap * adp, aad, scale));
    rep.expect_small("(A^D)^" + std::to_string(p) + " A^" + std::to_string(p) + " = A A^D",
                     relative_gap(adp * ap, aad, scale));
  }

  // A^l (A^D)^m = A^{l-m} for l - m >= k
  for (Index m : {1, 2}) {
    const Index l = k + m + 1;
    const Sq lhs = power(a, l) * power(ad, m);
    const Sq rhs = power(a, l - m);
    rep.expect_small("A^" + std::to_string(l) + " (A^D)^" + std::to_string(m) + " = A^" + std::to_string(l - m),
                     relative_gap(lhs, rhs, detail::nf(power(a, l)) * std::pow(nd, m) + detail::nf(rhs)));
  }

  // Core-nilpotent decomposition
  {
    const auto cn = core_nilpotent(a);
    const double s2 = na * na + na * nd * na;
    rep.expect_small("B + N = A", relative_gap(cn.core + cn.nilpotent, a, na + detail::nf(cn.core)));
    rep.expect_small("B N = O", detail::nf(cn.core * cn.nilpotent) / std::max(s2, 1e-300));
    rep.expect_small("N B = O", detail::nf(cn.nilpotent * cn.core) / std::max(s2, 1e-300));
    if (k > 0) {
      const double nn = detail::nf(cn.nilpotent);
      rep.expect_small("N^k = O", detail::nf(power(cn.nilpotent, k)) / std::max(std::pow(std::max(nn, na), k), 1e-300));
    }
    rep.expect_small("ind(B) <= 1", index_at_most_one(cn.core) ? 0.0 : 1.0);
  }

  // lambda^m in eig(A^m)
  for (Index m : {2, 3})
    rep.expect_small("eig(A)^" + std::to_string(m) + " = eig(A^" + std::to_string(m) + ")", eigen_power_gap(a, m));

  return rep;
}

// (A B)^D = A [(B A)^2]^D B for arbitrary A, B.
template <typename Scalar>
double cline_gap(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  const SquareTensor<Scalar> ab = a * b, ba = b * a;
  const SquareTensor<Scalar> lhs = drazin(ab);
  const SquareTensor<Scalar> rhs = a * drazin(SquareTensor<Scalar>(ba * ba)) * b;
  return relative_gap(lhs, rhs, std::max(frobenius_norm(lhs), frobenius_norm(rhs)));
}

/// Reverse-order law for commuting A, B (caller guarantees A B = B A).
template <typename Scalar>
CheckReport commuting_checks(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b,
                             double tol = 1e-8) {
  CheckReport rep(tol);
  const auto ad = drazin(a), bd = drazin(b);
  const auto abd = drazin(SquareTensor<Scalar>(a * b));
  const double s = frobenius_norm(ad) * frobenius_norm(bd) + frobenius_norm(abd);
  rep.expect_small("(A B)^D = A^D B^D", relative_gap(abd, ad * bd, s));
  rep.expect_small("(A B)^D = B^D A^D", relative_gap(abd, bd * ad, s));
  rep.expect_small("A^D B = B A^D",
                   relative_gap(ad * b, b * ad, 2 * frobenius_norm(ad) * frobenius_norm(b)));
  return rep;
}

/// Additivity for A B = B A = O.
template <typename Scalar>
CheckReport orthogonal_sum_checks(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b,
                                  double tol = 1e-8) {
  CheckReport rep(tol);
  const auto ad = drazin(a), bd = drazin(b);
  const double s = frobenius_norm(ad) + frobenius_norm(bd);
  rep.expect_small("(A + B)^D = A^D + B^D", relative_gap(drazin(a + b), ad + bd, s));
  rep.expect_small("(A - B)^D = A^D - B^D", relative_gap(drazin(a - b), ad - bd, s));
  return rep;
}

// (A + B)^# = (I - B B^#) A^# + B^# (I - A A^#) for index-one A, B with A B = O.
template <typename Scalar>
double group_sum_gap(const SquareTensor<Scalar>& a, const SquareTensor<Scalar>& b) {
  const auto ag = group_inverse(a), bg = group_inverse(b);
  const auto id = identity<Scalar>(a.dims());
  const SquareTensor<Scalar> rhs = (id - b * bg) * ag + bg * (id - a * ag);
  const SquareTensor<Scalar> lhs = group_inverse(SquareTensor<Scalar>(a + b));
  return relative_gap(lhs, rhs, std::max(frobenius_norm(lhs), frobenius_norm(rhs)));
}

/// Identity suite of the W-weighted Drazin inverse.
template <typename Scalar>
CheckReport weighted_identity_checks(const WeightedPair<Scalar>& p, double tol = 1e-8) {
  using Sq = SquareTensor<Scalar>;
  using T = Tensor<Scalar>;
  CheckReport rep(tol);
  const Sq bw = p.bw(), wb = p.wb();
  const double nb = frobenius_norm(p.B), nw = frobenius_norm(p.W);
  const T x = w_drazin(p);
  const double nx = frobenius_norm(x);

  const auto r = verify_w_drazin(p, x, tol);
  rep.expect_small("(BW)^{k+1} X W = (BW)^k", r.power_eq);
  rep.expect_small("X W B W X = X", r.outer_eq);
  rep.expect_small("B W X = X W B", r.commute_eq);

  for (Index q : {1, 2, 3}) {
    const Sq bwq_d = drazin(power(bw, q)), wbq_d = drazin(power(wb, q));
    const std::string qs = std::to_string(q);
    const double sw = nw * (frobenius_norm(bwq_d) + frobenius_norm(wbq_d));
    const double sb = nb * (frobenius_norm(bwq_d) + frobenius_norm(wbq_d));
    rep.expect_small("W [(BW)^" + qs + "]^D = [(WB)^" + qs + "]^D W",
                     relative_gap(T(p.W * bwq_d), T(wbq_d * p.W), sw));
    rep.expect_small("B [(WB)^" + qs + "]^D = [(BW)^" + qs + "]^D B",
                     relative_gap(T(p.B * wbq_d), T(bwq_d * p.B), sb));
  }

  const Sq wb2_d = drazin(Sq(wb * wb));
  const Sq bw_d = drazin(bw);
  {
    const T rhs = p.B * wb2_d * p.W;
    rep.expect_small("(BW)^D = B [(WB)^2]^D W",
                     relative_gap(T(bw_d), rhs, frobenius_norm(bw_d) + nb * frobenius_norm(wb2_d) * nw));
  }

  // Characterizations with p = 2.
  {
    const Sq bw2_d = drazin(Sq(bw * bw));
    const double s = frobenius_norm(bw_d) * nx * nw + frobenius_norm(bw2_d);
    rep.expect_small("(BW)^D X W = [(BW)^2]^D", relative_gap(T(bw_d * x * p.W), T(bw2_d), s));
    rep.expect_small("B W (BW)^D X = X",
                     relative_gap(T(bw * bw_d * x), x, frobenius_norm(bw) * frobenius_norm(bw_d) * nx + nx));
    rep.expect_small("X W = B W [(BW)^2]^D",
                     relative_gap(T(x * p.W), T(bw * bw2_d), nx * nw + frobenius_norm(bw) * frobenius_norm(bw2_d)));
    rep.expect_small("W X = W B [(WB)^2]^D",
                     relative_gap(T(p.W * x), T(wb * wb2_d), nw * nx + frobenius_norm(wb) * frobenius_norm(wb2_d)));
  }

  // Index-one factorization through Y = [(WB)^2]^D W.
  {
    const T y = wb2_d * p.W;
    const Sq by(p.B * y), yb(y * p.B);
    rep.expect_small("ind(B Y) <= 1", index_at_most_one(by) ? 0.0 : 1.0);
    rep.expect_small("ind(Y B) <= 1", index_at_most_one(yb) ? 0.0 : 1.0);
    const T xf = by * by * p.B;
    rep.expect_small("B Y B Y B = B^{D,W}",
                     relative_gap(xf, x, std::max(nx, frobenius_norm(xf))));
  }
  return rep;
}

}  // namespace mla
