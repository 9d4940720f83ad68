#include <doctest.h>

#include <iostream>

#include "properties.hpp"

using namespace mla;
using fx::C;
using fx::Sq;
using fx::T;

TEST_CASE("weighted pair shape validation") {
  CHECK_NOTHROW(WeightedPair<C>(T(Shape({2, 3}, {2})), T(Shape({2}, {2, 3}))));
  CHECK_THROWS_AS(WeightedPair<C>(T(Shape({2, 3}, {2})), T(Shape({2}, {3, 2}))), ShapeMismatch);
  CHECK_THROWS_AS(WeightedPair<C>(T(Shape({2, 3}, {2})), T(Shape({3}, {2, 3}))), ShapeMismatch);
}

TEST_CASE("identity weight reduces to the Drazin inverse") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto s = fx::random_structured({2, 2}, t % 2 == 0, rng);
    const WeightedPair<C> p(s.a, identity<C>({2, 2}));
    CHECK(relative_gap(w_drazin(p), s.drazin, std::max(1.0, frobenius_norm(s.drazin))) <= 1e-8);
  }
}

TEST_CASE("zero B gives zero") {
  std::mt19937_64 rng(62);
  const WeightedPair<C> p(T(Shape({2, 3}, {2, 2})), fx::random_complex(Shape({2, 2}, {2, 3}), rng));
  CHECK(frobenius_norm(w_drazin(p)) == 0.0);
  CHECK(verify_w_drazin(p, w_drazin(p)).accepted);
}

TEST_CASE("integer pairs match the rational oracle") {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 20; ++t) {
    const T b = fx::random_integer(Shape({2, 3}, {3, 2}), rng, -2, 2);
    const T w = fx::random_integer(Shape({3, 2}, {2, 3}), rng, -2, 2);
    const WeightedPair<C> p(b, w);
    const auto qb = oracle::from_tensor(b), qw = oracle::from_tensor(w);
    const auto wb = qw * qb;
    const auto exact = oracle::to_tensor(qb * oracle::drazin(wb * wb), b.shape());
    const T x = w_drazin(p);
    CHECK(relative_gap(x, exact, std::max(1.0, frobenius_norm(exact))) <= 1e-8);
    CHECK(verify_w_drazin(p, x).accepted);
  }
}

TEST_CASE("verify_w_drazin rejects wrong answers") {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 20; ++t) {
    const WeightedPair<C> p(fx::random_complex(Shape({2, 3}, {2, 2}), rng),
                            fx::random_complex(Shape({2, 2}, {2, 3}), rng));
    const T x = w_drazin(p);
    CHECK(verify_w_drazin(p, x).accepted);
    const auto zero = verify_w_drazin(p, T(p.B.shape()));
    CHECK_FALSE(zero.accepted);
    CHECK(zero.power_eq == doctest::Approx(1.0));
    const T bumped = x + C(1e-3) * fx::random_complex(x.shape(), rng);
    CHECK_FALSE(verify_w_drazin(p, bumped).accepted);
  }
  const WeightedPair<C> p(T(Shape({2}, {3})), T(Shape({3}, {2})));
  CHECK_THROWS_AS(verify_w_drazin(p, T(Shape({3}, {2}))), ShapeMismatch);
}

TEST_CASE("weighted index uses max(ind(BW), 1)") {
  const WeightedPair<C> p(identity<C>({2}), identity<C>({2}));
  CHECK(index(p.bw()).k == 0);
  CHECK(weighted_index(p) == 1);
}

TEST_CASE("randomized W-weighted identities") {
  props::Tally tally;
  props::run_weighted_suite(tally, 77);
  if (!tally.ok()) tally.print(std::cerr, true);
  CHECK(tally.samples() >= 100);
  CHECK(tally.ok());
}
