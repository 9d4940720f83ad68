#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracle/rational.hpp"

using namespace mla;
using fx::C;
using fx::M;
using fx::Sq;
using fx::T;

namespace {

T rhs_of(const Sq& a, std::mt19937_64& rng) { return fx::random_complex(Shape(a.dims(), {}), rng); }

T ones(const Dims& dims) {
  T t(Shape(dims, {}));
  for (auto& v : t.data()) v = C(1);
  return t;
}

double rel_residual(const Sq& a, const T& x, const T& b) { return residual_norm(a, x, b) / frobenius_norm(b); }

// Jacobi iteration tensor with spectral radius 1.2.
Sq jacobi_unstable() {
  Sq p(Dims{2});
  p(0, 0) = p(1, 1) = C(1);
  p(0, 1) = p(1, 0) = C(1.2);
  return kron_lift(p, identity<C>({2}));
}

// Basis of N(A) as a tensor with one column mode.
T null_basis(const Sq& a) {
  const M ns = null_space(rsh(a));
  return rsh_inv(ns, Shape(a.dims(), {ns.cols()}));
}

}  // namespace

TEST_CASE("Drazin consistency") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 10; ++t) {
    const auto s = fx::random_structured({2, 2}, t % 2 == 0, rng);
    const T b = power(s.a, s.k) * rhs_of(s.a, rng);
    CHECK(is_drazin_consistent(s.a, b));
  }

  const Sq a = fx::example_a();
  CHECK_FALSE(is_drazin_consistent(a, rhs_of(a, rng)));

  // R(A^6) = {O} for the index-6 example, so A^3 Y is not consistent; the
  // decision agrees with the exact rank test.
  const T y = fx::random_integer(Shape({2, 3}, {}), rng, -3, 3);
  const T b3 = power(a, 3) * y;
  const auto a6 = oracle::from_tensor(power(a, 6));
  oracle::QMatrix aug(6, 7);
  const auto qb = oracle::from_tensor(b3);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) aug(i, j) = a6(i, j);
    aug(i, 6) = qb(i, 0);
  }
  const bool exact = oracle::rank(aug) == oracle::rank(a6);
  CHECK(is_drazin_consistent(a, b3) == exact);
  CHECK_FALSE(exact);
  CHECK(is_drazin_consistent(a, b3, Index{3}));

  CHECK_THROWS_AS(is_drazin_consistent(a, T(Shape({3, 2}, {}))), ShapeMismatch);
}

TEST_CASE("drazin_solve") {
  std::mt19937_64 rng(72);
  const Sq id = identity<C>({2, 2});
  const T b = rhs_of(id, rng);
  CHECK(relative_gap(drazin_solve(id, b).particular, b) <= 1e-15);

  const Sq n8 = generate<C>({2, 8, BoundaryCondition::Neumann});
  const T bn = consistent_rhs(n8, 5);
  const auto sol = drazin_solve(n8, bn);
  CHECK(sol.consistent);
  CHECK(sol.index_used == 1);
  CHECK(rel_residual(n8, sol.particular, bn) <= 1e-8);

  // The constant tensor spans N(A^*), so it is far from R(A).
  const T bad = ones({8, 8});
  const auto inc = drazin_solve(n8, bad);
  CHECK_FALSE(inc.consistent);
  CHECK(rel_residual(n8, inc.particular, bad) > 1e-6);
}

TEST_CASE("general_solution") {
  std::mt19937_64 rng(73);
  const auto s = fx::structured({2, 3}, 3, {2, 1}, true, rng);
  const T b = power(s.a, s.k) * rhs_of(s.a, rng);
  const T part = drazin_solve(s.a, b).particular;
  CHECK(relative_gap(general_solution(s.a, b, T(b.shape())), part) <= 1e-15);

  const T basis = null_basis(s.a);
  T coeff(Shape({basis.cols()}, {}));
  for (auto& v : coeff.data()) v = C(fx::uniform(rng), fx::uniform(rng));
  const T z = basis * coeff;
  CHECK(rel_residual(s.a, general_solution(s.a, b, z), b) <= 1e-8);

  // For index <= 1 every Z works.
  const auto one = fx::structured({2, 3}, 4, {1, 1}, true, rng);
  const T b1 = one.a * rhs_of(one.a, rng);
  for (int t = 0; t < 5; ++t) CHECK(rel_residual(one.a, general_solution(one.a, b1, rhs_of(one.a, rng)), b1) <= 1e-8);

  // The normal equation holds for every Z.
  const Sq ak = power(s.a, s.k);
  const T zr = rhs_of(s.a, rng);
  const T x = general_solution(s.a, b, zr);
  CHECK(relative_gap(T(ak * s.a * x), T(ak * b)) <= 1e-8);

  CHECK_THROWS_AS(general_solution(fx::example_a(), rhs_of(fx::example_a(), rng), rhs_of(fx::example_a(), rng)),
                  Inconsistent);
}

TEST_CASE("normal_solve") {
  std::mt19937_64 rng(74);
  const Sq id = identity<C>({2, 2});
  const T b = rhs_of(id, rng);
  CHECK(relative_gap(normal_solve(id, b, NormalVariant::DrazinNormal), b) <= 1e-15);
  CHECK(relative_gap(normal_solve(id, b, NormalVariant::Modified), b) <= 1e-15);

  const auto one = fx::structured({2, 2}, 2, {1, 1}, true, rng);
  const T b1 = one.a * rhs_of(one.a, rng);
  const T g = group_inverse(one.a) * b1;
  CHECK(relative_gap(normal_solve(one.a, b1, NormalVariant::DrazinNormal), g) <= 1e-8);
  CHECK(relative_gap(normal_solve(one.a, b1, NormalVariant::Modified), g) <= 1e-8);

  for (int t = 0; t < 10; ++t) {
    const auto s = fx::structured({2, 3}, 3, {2, 1}, false, rng);
    const Sq a2 = power(s.a, 2);
    const T b2 = a2 * fx::random_integer(Shape({2, 3}, {}), rng, -3, 3);
    const T x = normal_solve(s.a, b2, NormalVariant::DrazinNormal);
    const T rhs = a2 * b2;
    CHECK(relative_gap(T(a2 * s.a * x), rhs, frobenius_norm(rhs)) <= 1e-8);
    const auto exact = oracle::drazin(oracle::from_tensor(s.a)) * oracle::from_tensor(b2);
    CHECK(relative_gap(x, oracle::to_tensor(exact, b2.shape()), frobenius_norm(x)) <= 1e-8);
    const T xm = normal_solve(s.a, b2, NormalVariant::Modified);
    CHECK(relative_gap(T(a2 * a2 * xm), rhs, frobenius_norm(rhs)) <= 1e-8);
  }
  CHECK_THROWS_AS(normal_solve(fx::example_a(), rhs_of(fx::example_a(), rng), NormalVariant::Modified),
                  Inconsistent);
}

TEST_CASE("solution set of the normal equation") {
  std::mt19937_64 rng(75);
  for (int t = 0; t < 10; ++t) {
    const auto s = fx::structured({2, 3}, 3, {2, 1}, t % 2 == 0, rng);
    const Sq ak = power(s.a, s.k), ak1 = ak * s.a;
    const T b = ak * rhs_of(s.a, rng);
    const T x = normal_solve(s.a, b, NormalVariant::DrazinNormal);

    const T basis = null_basis(ak);
    T coeff(Shape({basis.cols()}, {}));
    for (auto& v : coeff.data()) v = C(fx::uniform(rng), fx::uniform(rng));
    const T shifted = x + basis * coeff;
    const T akb = ak * b;
    CHECK(relative_gap(T(ak1 * shifted), akb, frobenius_norm(akb)) <= 1e-8);

    // A solution of A X = B also solves the normal equation, and its
    // projection onto R(A^k) is the particular solution.
    const T sol = general_solution(s.a, b, T(b.shape()));
    CHECK(rel_residual(s.a, sol, b) <= 1e-8);
    CHECK(relative_gap(T(ak1 * sol), akb, frobenius_norm(akb)) <= 1e-8);
    CHECK(relative_gap(sol, x) <= 1e-8);
  }
}

TEST_CASE("spectral_radius") {
  CHECK(spectral_radius(identity<C>({2, 2})) == doctest::Approx(1.0));
  Sq shift(Dims{2, 2});
  for (Index i = 0; i + 1 < 4; ++i) shift(i, i + 1) = C(1);
  CHECK(spectral_radius(shift) == 0.0);
  const Sq p = generate<C>({2, 4, BoundaryCondition::Dirichlet});
  CHECK(spectral_radius(iteration_tensor(p, Method::Jacobi)) == doctest::Approx(std::cos(std::numbers::pi / 5)).epsilon(1e-6));
}

TEST_CASE("neumann_inverse") {
  const Sq half = C(0.5) * identity<C>({2, 2});
  CHECK(relative_gap(neumann_inverse(half), C(2) * identity<C>({2, 2})) <= 1e-14);
  CHECK(relative_gap(neumann_inverse(Sq(Dims{2, 2})), identity<C>({2, 2})) == 0.0);

  std::mt19937_64 rng(76);
  for (int t = 0; t < 10; ++t) {
    Sq a = fx::random_complex(Dims{2, 3}, rng);
    a = C(0.5 / frobenius_norm(a)) * a;
    const Sq x = neumann_inverse(a);
    const Sq id = identity<C>({2, 3});
    CHECK(frobenius_norm(Sq(x * (id - a) - id)) <= 1e-8);
  }
  CHECK_THROWS_AS(neumann_inverse(identity<C>({2})), NotConvergent);
}

TEST_CASE("powers of a small tensor decay") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 10; ++t) {
    Sq a = fx::random_complex(Dims{2, 2}, rng);
    a = C(0.9 / frobenius_norm(a)) * a;
    Sq p = a;
    double prev = frobenius_norm(p);
    for (int k = 2; k <= 100; ++k) {
      p = p * a;
      const double cur = frobenius_norm(p);
      CHECK(cur <= prev);
      prev = cur;
    }
    CHECK(prev < 1e-4);
  }
}

TEST_CASE("jacobi on a diagonal tensor is exact after one sweep") {
  Sq d(Dims{2, 2});
  for (Index i = 0; i < 4; ++i) d(i, i) = C(1.0 + i);
  std::mt19937_64 rng(78);
  const T b = rhs_of(d, rng);
  for (auto method : {Method::Jacobi, Method::GaussSeidel}) {
    const auto res = method == Method::Jacobi ? jacobi(d, b) : gauss_seidel(d, b);
    CHECK(res.report.converged);
    CHECK(res.report.residual_history[1] <= 1e-15 * frobenius_norm(b));
    CHECK(res.report.iterations <= 2);
  }
}

TEST_CASE("jacobi on the 2D Dirichlet Poisson tensor") {
  const Sq p = generate<C>({2, 4, BoundaryCondition::Dirichlet});
  const T one = ones({4, 4});
  const T b = p * one;
  IterationOptions<C> opts;
  opts.tol = 1e-10;
  const auto res = jacobi(p, b, opts);
  CHECK(res.report.converged);
  CHECK(res.report.stop_reason == StopReason::Tolerance);
  CHECK(relative_gap(res.solution, one) <= 1e-8);
  CHECK(res.report.residual_history.size() == static_cast<std::size_t>(res.report.iterations + 1));
  REQUIRE(res.report.spectral_radius_estimate);
  CHECK(*res.report.spectral_radius_estimate == doctest::Approx(std::cos(std::numbers::pi / 5)).epsilon(1e-3));
}

TEST_CASE("iteration reports divergence when rho(H) > 1") {
  const Sq a = jacobi_unstable();
  const auto diag = convergence_check(a, Method::Jacobi);
  CHECK(diag.spectral_radius == doctest::Approx(1.2));
  CHECK_FALSE(diag.converges);
  std::mt19937_64 rng(79);
  const auto res = jacobi(a, rhs_of(a, rng));
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.stop_reason == StopReason::Divergence);
}

TEST_CASE("iteration stops at max_iter") {
  const Sq p = generate<C>({2, 8, BoundaryCondition::Dirichlet});
  std::mt19937_64 rng(80);
  IterationOptions<C> opts;
  opts.max_iter = 3;
  const auto res = gauss_seidel(p, rhs_of(p, rng), opts);
  CHECK(res.report.iterations == 3);
  CHECK(res.report.stop_reason == StopReason::MaxIter);
  CHECK_FALSE(res.report.converged);
}

TEST_CASE("zero diagonal is rejected") {
  Sq a = identity<C>({2, 2});
  a(2, 2) = C(0);
  std::mt19937_64 rng(81);
  CHECK_THROWS_AS(jacobi(a, rhs_of(a, rng)), ZeroDiagonal);
  CHECK_THROWS_AS(gauss_seidel(a, rhs_of(a, rng)), ZeroDiagonal);
  CHECK_THROWS_AS(convergence_check(a, Method::GaussSeidel), ZeroDiagonal);
}

TEST_CASE("gauss_seidel converges on strictly diagonally dominant tensors") {
  std::mt19937_64 rng(82);
  for (int t = 0; t < 20; ++t) {
    const Sq a = fx::random_sdd({2, 3}, rng);
    CHECK(convergence_check(a, Method::GaussSeidel).converges);
    CHECK(convergence_check(a, Method::GaussSeidel).strictly_diagonally_dominant);
    const T b = rhs_of(a, rng);
    for (int s = 0; s < 3; ++s) {
      IterationOptions<C> opts;
      opts.x0 = fx::random_complex(b.shape(), rng);
      opts.tol = 1e-12;
      const auto res = gauss_seidel(a, b, opts);
      CHECK(res.report.converged);
      CHECK(residual_norm(a, res.solution, b) <= 10 * opts.tol * frobenius_norm(b));
    }
  }
}

TEST_CASE("gauss_seidel agrees with matrix Gauss-Seidel on the reshaped system") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 5; ++t) {
    const Sq a = fx::random_sdd({2, 2}, rng);
    const T b = rhs_of(a, rng);
    const auto s = split_dlu(a);
    const M dl = rsh(s.D) + rsh(s.L);
    M x = M::Zero(4, 1);
    for (Index k = 1; k <= 10; ++k) {
      x = dl.triangularView<Eigen::Lower>().solve(M(rsh(b) - rsh(s.U) * x));
      IterationOptions<C> opts;
      opts.max_iter = k;
      opts.tol = 0;
      const auto res = gauss_seidel(a, b, opts);
      CHECK((rsh(res.solution) - x).norm() <= 1e-13 * x.norm());
    }
  }
}

TEST_CASE("gauss_seidel needs fewer sweeps than jacobi on the 2D Poisson tensor") {
  const Sq p = generate<C>({2, 8, BoundaryCondition::Dirichlet});
  const T b = consistent_rhs(p, 1);
  IterationOptions<C> opts;
  opts.tol = 1e-8;
  const auto gs = gauss_seidel(p, b, opts);
  const auto jac = jacobi(p, b, opts);
  CHECK(gs.report.converged);
  CHECK(jac.report.converged);
  CHECK(gs.report.iterations < jac.report.iterations);
}

TEST_CASE("convergence_check") {
  const auto id = convergence_check(identity<C>({2, 2}), Method::Jacobi);
  CHECK(id.spectral_radius == 0.0);
  CHECK(id.converges);
  const Sq p = generate<C>({2, 4, BoundaryCondition::Dirichlet});
  const auto gs = convergence_check(p, Method::GaussSeidel);
  // rho(H_GS) = rho(H_J)^2 for consistently ordered matrices.
  CHECK(gs.spectral_radius == doctest::Approx(std::pow(std::cos(std::numbers::pi / 5), 2)).epsilon(1e-8));
}

TEST_CASE("multi-column right-hand sides") {
  std::mt19937_64 rng(84);
  const Sq a = fx::random_sdd({2, 2}, rng);
  const T b = fx::random_complex(Shape({2, 2}, {3}), rng);
  const auto res = gauss_seidel(a, b);
  CHECK(res.report.converged);
  CHECK(residual_norm(a, res.solution, b) <= 1e-8 * frobenius_norm(b));
  const auto d = drazin_solve(a, b);
  CHECK(relative_gap(d.particular, res.solution) <= 1e-8);
}
