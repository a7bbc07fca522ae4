#pragma once

#include <cstdint>
#include <stdexcept>

// Scalar arithmetic mod a prime p < 2^31.  Residues are stored as uint32_t
// in [0, p); all products are accumulated in uint64_t, which cannot overflow
// for this range of moduli.

namespace heckelab {

inline uint32_t addmod(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint32_t submod(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint32_t negmod(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t mulmod(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

inline uint32_t powmod(uint32_t a, uint64_t e, uint32_t p) {
  uint32_t r = 1 % p;
  uint32_t base = a % p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

// Inverse mod p via extended Euclid; requires gcd(a, p) = 1.
inline uint32_t invmod(uint32_t a, uint32_t p) {
  int64_t t = 0, new_t = 1;
  int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: argument not invertible");
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

// Reduce a signed integer into [0, p).
inline uint32_t reduce_int(int64_t a, uint32_t p) {
  int64_t r = a % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness
// set (Sinclair's list).
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod64 = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
  };
  auto powmod64 = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
    uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod64(r, a, m);
      a = mulmod64(a, a, m);
      e >>= 1;
    }
    return r;
  };
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline void require_prime_modulus(uint32_t p) {
  if (p < 2 || p >= (1u << 31) || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be a prime below 2^31");
}

}  // namespace heckelab
