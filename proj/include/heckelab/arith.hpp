#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

// Elementary integer arithmetic used throughout: factorization by trial
// division (levels and indices here stay far below 2^40), divisor lists,
// Euler phi, and the Kronecker symbol.

namespace heckelab {

// (prime, exponent) pairs with primes increasing.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  if (n <= 0) throw std::invalid_argument("factorize: need n > 0");
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto [q, e] : factorize(n)) {
    size_t m = out.size();
    int64_t qk = 1;
    for (int k = 1; k <= e; ++k) {
      qk *= q;
      for (size_t i = 0; i < m; ++i) out.push_back(out[i] * qk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (auto [q, e] : factorize(n)) r -= r / q;
  return r;
}

inline int valuation(int64_t n, int64_t q) {
  int v = 0;
  while (n % q == 0) {
    n /= q;
    ++v;
  }
  return v;
}

// Kronecker symbol (a|n), extending the Jacobi symbol to all integers n.
// Cohen, A Course in Computational Algebraic Number Theory, Algorithm 1.4.10.
inline int kronecker(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (2|a) for a mod 8
  int k = 1;
  if (v & 1) k = tab2[((a % 8) + 8) % 8];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // Now n is odd and positive; standard Jacobi loop with reciprocity.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    v = 0;
    while ((a & 1) == 0) {
      a >>= 1;
      ++v;
    }
    if (v & 1) k *= tab2[n % 8];
    if ((a % 4 == 3) && (n % 4 == 3)) k = -k;
    int64_t t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? k : 0;
}

inline bool is_squarefree(int64_t n) {
  for (auto [q, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

// Integer square root, exact floor.
inline int64_t isqrt64(int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt64: need n >= 0");
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace heckelab
