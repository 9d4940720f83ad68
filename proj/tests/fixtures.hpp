#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "mla/mla.hpp"

namespace fx {

using mla::Dims;
using mla::Index;
using C = std::complex<double>;
using T = mla::TensorXcd;
using Sq = mla::SquareTensorXcd;
using M = mla::Matrix<C>;

// Six 2x3 frontal slices over (i, j), ordered (k, l) = 11, 12, 13, 21, 22, 23.
using Slices = std::array<std::array<int, 6>, 6>;

inline Sq from_slices(const Slices& s) {
  Sq t(Dims{2, 3});
  for (Index q = 0; q < 6; ++q)
    for (Index row = 0; row < 6; ++row) t(row, q) = C(s[q][row], 0);
  return t;
}

// Nilpotent 0/1 tensor whose Drazin inverse is zero.
inline Sq example_a() {
  return from_slices({{{0, 1, 1, 1, 1, 1},
                       {0, 0, 1, 0, 1, 1},
                       {0, 0, 0, 0, 0, 1},
                       {0, 1, 1, 0, 1, 1},
                       {0, 0, 1, 0, 0, 1},
                       {0, 0, 0, 0, 0, 0}}});
}

// Partner of example_a with (A B)^D != A^D B^D.
inline Sq example_b() {
  return from_slices({{{0, 0, 0, 0, 0, 0},
                       {1, 0, 0, 1, 0, 0},
                       {1, 1, 0, 1, 1, 0},
                       {1, 0, 0, 0, 0, 0},
                       {1, 1, 0, 1, 0, 0},
                       {1, 1, 1, 1, 1, 0}}});
}

// Reference slices of (A B)^D for the pair above.
inline Sq reference_ab_drazin() {
  return from_slices({{{0, 0, 0, 0, 0, 0},
                       {1, 2, 0, -1, -1, 0},
                       {0, 0, 2, 0, -1, -1},
                       {0, -1, 0, 2, 0, 0},
                       {0, -1, -1, 0, 2, 0},
                       {0, 0, -1, 0, 0, 1}}});
}

// Exact (A B)^D; differs from the reference slices only at x_{1212}.
inline Sq exact_ab_drazin() {
  return from_slices({{{0, 0, 0, 0, 0, 0},
                       {0, 2, 0, -1, -1, 0},
                       {0, 0, 2, 0, -1, -1},
                       {0, -1, 0, 2, 0, 0},
                       {0, -1, -1, 0, 2, 0},
                       {0, 0, -1, 0, 0, 1}}});
}

// Non-commuting partner of example_a with (A B)^D = A^D B^D = O.
inline Sq example_b_noncommuting() {
  return from_slices({{{0, 0, 0, 2, 0, 0},
                       {0, 0, 0, 0, 4, 0},
                       {0, 0, 0, 0, 0, 1},
                       {0, 3, 0, 0, 0, 0},
                       {0, 0, 5, 0, 0, 1},
                       {0, 0, 0, 0, 0, 2}}});
}

inline Sq reference_ab_product() {
  return from_slices({{{0, 2, 2, 0, 2, 2},
                       {0, 0, 4, 0, 0, 4},
                       {0, 0, 0, 0, 0, 0},
                       {0, 0, 3, 0, 3, 3},
                       {0, 0, 0, 0, 0, 5},
                       {0, 0, 0, 0, 0, 0}}});
}

inline Sq reference_ba_product() {
  return from_slices({{{0, 3, 5, 0, 4, 4},
                       {0, 0, 5, 0, 0, 4},
                       {0, 0, 0, 0, 0, 2},
                       {0, 0, 5, 0, 4, 4},
                       {0, 0, 0, 0, 0, 3},
                       {0, 0, 0, 0, 0, 0}}});
}

// ---------------------------------------------------------------------------
// Random generators

inline double uniform(std::mt19937_64& rng) { return mla::uniform_signed(rng); }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Sq random_complex(const Dims& dims, std::mt19937_64& rng) {
  Sq t(dims);
  for (auto& v : t.data()) v = C(uniform(rng), uniform(rng));
  return t;
}

inline T random_complex(const mla::Shape& shape, std::mt19937_64& rng) {
  T t(shape);
  for (auto& v : t.data()) v = C(uniform(rng), uniform(rng));
  return t;
}

inline Sq random_real(const Dims& dims, std::mt19937_64& rng) {
  Sq t(dims);
  for (auto& v : t.data()) v = C(uniform(rng), 0);
  return t;
}

inline T random_integer(const mla::Shape& shape, std::mt19937_64& rng, int lo, int hi) {
  T t(shape);
  for (auto& v : t.data()) v = C(uniform_int(rng, lo, hi), 0);
  return t;
}

inline Sq random_integer(const Dims& dims, std::mt19937_64& rng, int lo, int hi) {
  return Sq(random_integer(mla::Shape::square(dims), rng, lo, hi));
}

// Unimodular S and its exact inverse from `ops` elementary row operations
// R_i += c R_j with c in {-1, 1} (and {-i, i} when complex).
struct Unimodular {
  M s, s_inv;
};

inline Unimodular random_unimodular(Index n, int ops, bool complex, std::mt19937_64& rng) {
  Unimodular u{M::Identity(n, n), M::Identity(n, n)};
  if (n < 2) return u;
  for (int t = 0; t < ops; ++t) {
    const Index i = uniform_int(rng, 0, static_cast<int>(n) - 1);
    Index j = uniform_int(rng, 0, static_cast<int>(n) - 2);
    if (j >= i) ++j;
    C c(uniform_int(rng, 0, 1) ? 1 : -1, 0);
    if (complex && uniform_int(rng, 0, 1)) c = C(0, c.real());
    u.s.row(i) += c * u.s.row(j);
    u.s_inv.col(j) -= c * u.s_inv.col(i);
  }
  return u;
}

// A = S diag(Tc, N) S^{-1} with Tc upper triangular and nonsingular and N
// nilpotent with the given Jordan block sizes; A^D = S diag(Tc^{-1}, 0) S^{-1}.
struct Structured {
  Sq a;
  Sq drazin;
  Index k = 0;
};

inline Structured structured(const Dims& dims, Index core, const std::vector<Index>& blocks, bool complex,
                             std::mt19937_64& rng, int ops = -1) {
  const Index n = mla::Shape::square(dims).row_count();
  Index nil = 0, k = 0;
  for (Index b : blocks) {
    nil += b;
    k = std::max(k, b);
  }
  if (core + nil != n) throw std::invalid_argument("structured: block sizes do not add up");

  M tc = M::Zero(core, core);
  static constexpr int kDiag[] = {1, -1, 2, -2};
  for (Index i = 0; i < core; ++i) {
    tc(i, i) = C(kDiag[uniform_int(rng, 0, 3)], 0);
    for (Index j = i + 1; j < core; ++j) {
      tc(i, j) = C(uniform_int(rng, -1, 1), 0);
      if (complex && uniform_int(rng, 0, 1)) tc(i, j) = C(0, uniform_int(rng, -1, 1));
    }
  }
  M core_inv = tc.triangularView<Eigen::Upper>().solve(M(M::Identity(core, core)));

  M inner = M::Zero(n, n), inner_d = M::Zero(n, n);
  inner.topLeftCorner(core, core) = tc;
  inner_d.topLeftCorner(core, core) = core_inv;
  Index at = core;
  for (Index b : blocks) {
    for (Index i = 0; i + 1 < b; ++i) inner(at + i, at + i + 1) = C(uniform_int(rng, 0, 1) ? 1 : -1, 0);
    at += b;
  }
  const auto u = random_unimodular(n, ops < 0 ? static_cast<int>(n) : ops, complex, rng);
  Structured out;
  out.a = mla::rsh_inv_square(M(u.s * inner * u.s_inv), dims);
  out.drazin = mla::rsh_inv_square(M(u.s * inner_d * u.s_inv), dims);
  out.k = k;
  return out;
}

// Random split of n - core into Jordan blocks.
inline std::vector<Index> random_blocks(Index total, std::mt19937_64& rng, Index max_block = 3) {
  std::vector<Index> out;
  while (total > 0) {
    const Index b = std::min<Index>(total, uniform_int(rng, 1, static_cast<int>(max_block)));
    out.push_back(b);
    total -= b;
  }
  return out;
}

inline Structured random_structured(const Dims& dims, bool complex, std::mt19937_64& rng) {
  const Index n = mla::Shape::square(dims).row_count();
  const Index core = uniform_int(rng, 0, static_cast<int>(n));
  return structured(dims, core, random_blocks(n - core, rng), complex, rng);
}

// Strictly row diagonally dominant random tensor.
inline Sq random_sdd(const Dims& dims, std::mt19937_64& rng, bool complex = true) {
  Sq t = complex ? random_complex(dims, rng) : random_real(dims, rng);
  for (Index i = 0; i < t.rows(); ++i) {
    double off = 0;
    for (Index j = 0; j < t.cols(); ++j)
      if (j != i) off += std::abs(t(i, j));
    const double margin = 0.1 + 0.5 * (uniform(rng) + 1.0);
    t(i, i) = C(off + margin, 0) * (uniform(rng) < 0 ? -1.0 : 1.0);
  }
  return t;
}

}  // namespace fx
