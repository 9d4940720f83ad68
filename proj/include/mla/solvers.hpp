#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mla/error.hpp"
#include "mla/gen_inverse.hpp"
#include "mla/linalg.hpp"
#include "mla/structure.hpp"
#include "mla/tensor.hpp"

namespace mla {

// |lambda| within this distance of 1 counts as 1.
inline constexpr double kSpectralTolerance = 1e-10;

namespace detail {

template <typename Scalar>
void check_rhs(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b, const char* who) {
  if (b.row_dims() != a.dims())
    throw ShapeMismatch(std::string(who) + ": rhs " + b.shape().to_string() +
                        " does not conform to " + a.shape().to_string());
}

}  // namespace detail

// ||A * X - B||_F
template <typename Scalar>
double residual_norm(const SquareTensor<Scalar>& a, const Tensor<Scalar>& x, const Tensor<Scalar>& b) {
  return (rsh(a) * rsh(x) - rsh(b)).norm();
}

// ---------------------------------------------------------------------------
// Direct solution through the Drazin inverse

// B in R(A^k): rank [rsh(A^k) | rsh(B)] == rank rsh(A^k).
template <typename Scalar>
bool is_drazin_consistent(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                          std::optional<Index> k = std::nullopt) {
  detail::check_rhs(a, b, "is_drazin_consistent");
  const Index kk = k ? *k : index(a).k;
  const SquareTensor<Scalar> ak = power(a, kk);
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << rsh(ak), rsh(b);
  return rank_with_tol(aug) == rshrank(ak);
}

template <typename Scalar>
struct DrazinSolution {
  Tensor<Scalar> particular;  // A^D * B
  bool consistent = false;
  Index index_used = 0;
};

template <typename Scalar>
DrazinSolution<Scalar> drazin_solve(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b) {
  detail::check_rhs(a, b, "drazin_solve");
  const Index k = index(a).k;
  return {drazin(a, k) * b, is_drazin_consistent(a, b, k), k};
}

/// A^D B + (I - A^D A) Z. Solves A^{k+1} X = A^k B for every Z, and A X = B
/// when Z lies in R(A^{k-1}) + N(A).
template <typename Scalar>
Tensor<Scalar> general_solution(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                                const Tensor<Scalar>& z) {
  detail::check_rhs(a, b, "general_solution");
  if (z.shape() != b.shape()) throw ShapeMismatch("general_solution: Z must have the shape of B");
  const Index k = index(a).k;
  if (!is_drazin_consistent(a, b, k)) throw Inconsistent("general_solution: B is not in R(A^k)");
  const SquareTensor<Scalar> ad = drazin(a, k);
  const SquareTensor<Scalar> proj = identity<Scalar>(a.dims()) - ad * a;
  return ad * b + proj * z;
}

enum class NormalVariant {
  DrazinNormal,  // A^{k+1} X = A^k B  ->  A^D B
  Modified,      // A^{2k} X = A^k B   ->  (A^k)^D B
};

template <typename Scalar>
Tensor<Scalar> normal_solve(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                            NormalVariant variant) {
  detail::check_rhs(a, b, "normal_solve");
  const Index k = index(a).k;
  if (!is_drazin_consistent(a, b, k)) throw Inconsistent("normal_solve: B is not in R(A^k)");
  if (variant == NormalVariant::DrazinNormal) return drazin(a, k) * b;
  return drazin(power(a, k)) * b;
}

// ---------------------------------------------------------------------------
// Spectral quantities

template <typename Scalar>
double spectral_radius(const SquareTensor<Scalar>& a) {
  double rho = 0;
  for (const auto& lambda : eigenvalues(rsh(a))) rho = std::max(rho, static_cast<double>(std::abs(lambda)));
  return rho;
}

/// (I - A)^{-1} as the partial sums of sum_m A^m, stopped once ||A^m||_F <= tol.
template <typename Scalar>
SquareTensor<Scalar> neumann_inverse(const SquareTensor<Scalar>& a, double tol = 1e-15,
                                     Index max_terms = 100000) {
  const double rho = spectral_radius(a);
  if (rho >= 1.0 - kSpectralTolerance)
    throw NotConvergent("neumann_inverse: spectral radius " + std::to_string(rho) + " >= 1");
  SquareTensor<Scalar> sum = identity<Scalar>(a.dims());
  SquareTensor<Scalar> term = sum;
  for (Index m = 1; m <= max_terms; ++m) {
    term = term * a;
    sum = sum + term;
    if (frobenius_norm(term) <= tol) return sum;
  }
  throw NotConvergent("neumann_inverse: series not converged after " + std::to_string(max_terms) +
                      " terms");
}

// ---------------------------------------------------------------------------
// Stationary iterations

enum class StopReason { Tolerance, MaxIter, Divergence };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::MaxIter: return "max_iter";
    case StopReason::Divergence: return "divergence";
  }
  return "unknown";
}

struct IterationReport {
  Index iterations = 0;
  // ||A X^(k) - B||_F for k = 0..iterations.
  std::vector<double> residual_history;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIter;
  // Ratio of the last two successive-difference norms.
  std::optional<double> spectral_radius_estimate;
};

template <typename Scalar>
struct IterationOptions {
  std::optional<Tensor<Scalar>> x0;  // zero tensor when absent
  double tol = 1e-10;                // on ||X^(k) - X^(k-1)||_F
  Index max_iter = 10000;
  double divergence_factor = 1e6;    // relative to the initial residual
};

template <typename Scalar>
struct IterationResult {
  Tensor<Scalar> solution;
  IterationReport report;
};

enum class Method { Jacobi, GaussSeidel };

namespace detail {

template <typename Scalar>
void check_diagonal(const SquareTensor<Scalar>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    if (a(i, i) == Scalar(0))
      throw ZeroDiagonal("zero diagonal entry at linear index " + std::to_string(i));
}

// One sweep over every column of X. Jacobi reads only `prev`; Gauss-Seidel
// overwrites entries of `next` in ascending order and reads them back for
// j < i, matching the triple loop of the higher-order Gauss-Seidel method.
template <typename Scalar>
void sweep(Method method, const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
           const Tensor<Scalar>& prev, Tensor<Scalar>& next) {
  const Index n = a.rows();
  for (Index c = 0; c < b.cols(); ++c) {
    for (Index i = 0; i < n; ++i) {
      Scalar s = b(i, c);
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const Scalar xj = (method == Method::GaussSeidel && j < i) ? next(j, c) : prev(j, c);
        s -= a(i, j) * xj;
      }
      next(i, c) = s / a(i, i);
    }
  }
}

template <typename Scalar>
IterationResult<Scalar> iterate(Method method, const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                                const IterationOptions<Scalar>& opts) {
  check_rhs(a, b, method == Method::Jacobi ? "jacobi" : "gauss_seidel");
  check_diagonal(a);
  Tensor<Scalar> x = opts.x0 ? *opts.x0 : Tensor<Scalar>(b.shape());
  if (x.shape() != b.shape()) throw ShapeMismatch("initial guess must have the shape of B");

  IterationResult<Scalar> out;
  auto& rep = out.report;
  const double r0 = residual_norm(a, x, b);
  rep.residual_history.push_back(r0);
  Tensor<Scalar> next = x;
  double prev_diff = -1;
  for (Index k = 1; k <= opts.max_iter; ++k) {
    sweep(method, a, b, x, next);
    const double diff = frobenius_norm(Tensor<Scalar>(next - x));
    const double r = residual_norm(a, next, b);
    rep.residual_history.push_back(r);
    rep.iterations = k;
    if (prev_diff > 0) rep.spectral_radius_estimate = diff / prev_diff;
    prev_diff = diff;
    std::swap(x, next);
    if (!std::isfinite(r) || (r0 > 0 && r > opts.divergence_factor * r0)) {
      rep.stop_reason = StopReason::Divergence;
      rep.converged = false;
      out.solution = std::move(x);
      return out;
    }
    if (diff < opts.tol) {
      rep.stop_reason = StopReason::Tolerance;
      rep.converged = true;
      out.solution = std::move(x);
      return out;
    }
  }
  rep.stop_reason = StopReason::MaxIter;
  rep.converged = false;
  out.solution = std::move(x);
  return out;
}

}  // namespace detail

/// Jacobi iteration X <- D^{-1} (B - (L + U) X).
template <typename Scalar>
IterationResult<Scalar> jacobi(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                               const IterationOptions<Scalar>& opts = {}) {
  return detail::iterate(Method::Jacobi, a, b, opts);
}

/// Higher-order Gauss-Seidel; equivalent to H = -(D+L)^{-1} U, C = (D+L)^{-1} B.
template <typename Scalar>
IterationResult<Scalar> gauss_seidel(const SquareTensor<Scalar>& a, const Tensor<Scalar>& b,
                                     const IterationOptions<Scalar>& opts = {}) {
  return detail::iterate(Method::GaussSeidel, a, b, opts);
}

// Iteration tensor H of the splitting: -D^{-1}(L+U) or -(D+L)^{-1} U.
template <typename Scalar>
SquareTensor<Scalar> iteration_tensor(const SquareTensor<Scalar>& a, Method method) {
  detail::check_diagonal(a);
  const auto s = split_dlu(a);
  Matrix<Scalar> h;
  if (method == Method::Jacobi) {
    const Vector<Scalar> d = rsh(s.D).diagonal();
    h = -(d.cwiseInverse().asDiagonal() * (rsh(s.L) + rsh(s.U)));
  } else {
    const Matrix<Scalar> dl = rsh(s.D) + rsh(s.L);
    h = -(dl.template triangularView<Eigen::Lower>().solve(Matrix<Scalar>(rsh(s.U))));
  }
  return rsh_inv_square(h, a.dims());
}

struct ConvergenceDiagnosis {
  double spectral_radius = 0;
  double h_frobenius = 0;
  bool strictly_diagonally_dominant = false;
  bool converges = false;  // rho(H) < 1
};

template <typename Scalar>
ConvergenceDiagnosis convergence_check(const SquareTensor<Scalar>& a, Method method) {
  const SquareTensor<Scalar> h = iteration_tensor(a, method);
  ConvergenceDiagnosis d;
  d.spectral_radius = spectral_radius(h);
  d.h_frobenius = frobenius_norm(h);
  d.strictly_diagonally_dominant = is_diagonally_dominant(a, true);
  d.converges = d.spectral_radius < 1.0 - kSpectralTolerance;
  return d;
}

}  // namespace mla
