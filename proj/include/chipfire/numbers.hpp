#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <vector>

namespace chipfire {

// Every chip count, edge multiplicity and firing count in this library is an
// arbitrary-precision integer. The file formats put no bound on them, so
// fixed-width arithmetic is never acceptable.
using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major, square unless stated otherwise

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n), Int(0)); }

inline Int vec_sum(const Vec& v) {
  Int s = 0;
  for (const Int& e : v) s += e;
  return s;
}

inline bool is_nonneg(const Vec& v) {
  for (const Int& e : v)
    if (e < 0) return false;
  return true;
}

inline bool is_zero(const Vec& v) {
  for (const Int& e : v)
    if (e != 0) return false;
  return true;
}

// gcd of all entries, 0 for the zero vector
inline Int vec_gcd(const Vec& v) {
  Int g = 0;
  for (const Int& e : v) {
    Int a = abs(e);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

// y += c * x
inline void vec_axpy(Vec& y, const Int& c, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

// A * x for row-major square A
inline Vec mat_vec(const Mat& a, const Vec& x) {
  Vec r(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) r[i] += a[i][j] * x[j];
  return r;
}

// Hash for chip-distribution vectors; used by the BFS oracle and the halting
// simulator to detect revisited states.
struct VecHash {
  std::size_t operator()(const Vec& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const Int& e : v) {
      std::uint64_t m = mpz_fdiv_ui(e.get_mpz_t(), 0x7fffffffffffffe7ULL);
      if (sgn(e) < 0) m = ~m;
      h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace chipfire
