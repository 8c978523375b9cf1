// Copyright 2026 The apnforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file field.hpp
 * @brief Arithmetic in GF(2^n) for 1 <= n <= 24.
 *
 * Elements are bit vectors in the polynomial basis: bit i is the coefficient
 * of x^i. A FieldCtx carries the extension degree and the reduction modulus
 * (an irreducible polynomial over GF(2) of degree n, stored with its x^n bit).
 * Contexts are small immutable values; every element operation is
 * interpreted relative to one context and elements are never converted
 * between contexts implicitly (use FieldEmbedding).
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apnforge/error.hpp"

namespace apnforge {

/// An element of GF(2^n); only the low n bits may be set.
struct Elem {
  std::uint32_t bits = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }
  constexpr bool is_one() const { return bits == 1; }

  friend constexpr Elem operator+(Elem a, Elem b) { return Elem{a.bits ^ b.bits}; }
  constexpr Elem& operator+=(Elem b) {
    bits ^= b.bits;
    return *this;
  }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

/// Renders an element (or a modulus) as lowercase hex with a 0x prefix.
inline std::string to_hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}
inline std::string to_hex(Elem e) { return to_hex(e.bits); }

namespace gf2x {

// Polynomials over GF(2) packed into 64-bit words; degree < 64.

inline int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

/// Carry-less product; caller guarantees deg(a) + deg(b) < 64.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return mod(clmul(a, b), m);
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

/// x^(2^k) mod m.
inline std::uint64_t x_pow_2k(int k, std::uint64_t m) {
  std::uint64_t r = mod(2, m);
  for (int i = 0; i < k; ++i) r = mulmod(r, r, m);
  return r;
}

inline std::vector<int> prime_divisors(std::uint64_t v) {
  std::vector<int> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(static_cast<int>(p));
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(static_cast<int>(v));
  return out;
}

/// Rabin's test: m of degree n is irreducible iff x^(2^n) = x mod m and
/// gcd(x^(2^(n/p)) - x, m) = 1 for every prime p | n.
inline bool is_irreducible(std::uint64_t m) {
  const int n = degree(m);
  if (n < 1) return false;
  if (n == 1) return true;
  if ((m & 1) == 0) return false;
  if (x_pow_2k(n, m) != mod(2, m)) return false;
  for (int p : prime_divisors(static_cast<std::uint64_t>(n))) {
    const std::uint64_t t = x_pow_2k(n / p, m) ^ 2;
    if (degree(gcd(m, t)) != 0) return false;
  }
  return true;
}

}  // namespace gf2x

inline constexpr int kMaxFieldDegree = 24;

namespace detail {

// Lexicographically smallest irreducible polynomial of each degree with the
// constant term set, indexed by n - 1.
inline constexpr std::array<std::uint64_t, kMaxFieldDegree> kDefaultModuli = {
    0x3,      0x7,      0xb,      0x13,      0x25,     0x43,
    0x83,     0x11b,    0x203,    0x409,     0x805,    0x1009,
    0x201b,   0x4021,   0x8003,   0x1002b,   0x20009,  0x40009,
    0x80027,  0x100009, 0x200005, 0x400003,  0x800021, 0x100001b};

inline const std::array<std::uint64_t, kMaxFieldDegree>& verified_default_moduli() {
  static const auto table = [] {
    for (std::size_t i = 0; i < kDefaultModuli.size(); ++i) {
      const auto m = kDefaultModuli[i];
      if (gf2x::degree(m) != static_cast<int>(i + 1) || (m & 1) == 0 ||
          !gf2x::is_irreducible(m)) {
        throw std::logic_error("default modulus table entry " + std::to_string(i + 1) +
                               " failed the irreducibility test");
      }
    }
    return kDefaultModuli;
  }();
  return table;
}

}  // namespace detail

/// The default modulus for GF(2^n), verified irreducible on first use.
inline std::uint64_t default_modulus(int n) {
  if (n < 1 || n > kMaxFieldDegree) {
    throw DomainError("field degree " + std::to_string(n) + " out of range [1, 24]");
  }
  return detail::verified_default_moduli()[static_cast<std::size_t>(n - 1)];
}

/// Immutable description of GF(2^n).
class FieldCtx {
 public:
  /// Builds GF(2^n) with the given modulus, or the default one. Throws
  /// DomainError when n is out of range or the modulus has the wrong degree
  /// or is reducible.
  static FieldCtx create(int n, std::optional<std::uint64_t> modulus = std::nullopt) {
    if (n < 1 || n > kMaxFieldDegree) {
      throw DomainError("field degree " + std::to_string(n) + " out of range [1, 24]");
    }
    if (!modulus) return FieldCtx(n, default_modulus(n));
    const std::uint64_t m = *modulus;
    if (gf2x::degree(m) != n) {
      throw DomainError("modulus " + to_hex(m) + " has degree " +
                        std::to_string(gf2x::degree(m)) + ", expected " + std::to_string(n));
    }
    if ((m & 1) == 0 || !gf2x::is_irreducible(m)) {
      throw DomainError("modulus " + to_hex(m) + " is reducible over GF(2)");
    }
    return FieldCtx(n, m);
  }

  int degree() const { return n_; }
  std::uint64_t modulus() const { return modulus_; }
  /// q = 2^n.
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  std::uint32_t mask() const { return static_cast<std::uint32_t>(size() - 1); }

  bool contains(Elem a) const { return (a.bits & ~mask()) == 0; }

  /// Checked conversion from a raw bit pattern.
  Elem element(std::uint64_t bits) const {
    if (bits >= size()) {
      throw DomainError("value " + to_hex(bits) + " is not an element of GF(2^" +
                        std::to_string(n_) + ")");
    }
    return Elem{static_cast<std::uint32_t>(bits)};
  }

  Elem mul(Elem a, Elem b) const {
    return Elem{static_cast<std::uint32_t>(gf2x::mulmod(a.bits, b.bits, modulus_))};
  }
  Elem sqr(Elem a) const { return mul(a, a); }

  /// Square-and-multiply; 0^0 = 1 so monomials evaluate consistently at 0.
  Elem pow(Elem a, std::uint64_t e) const {
    Elem result = kOne;
    Elem base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = sqr(base);
      e >>= 1;
    }
    return result;
  }

  /// a^(2^n - 2). Throws DomainError for a = 0.
  Elem inv(Elem a) const {
    if (a.is_zero()) throw DomainError("inverse of zero");
    return pow(a, size() - 2);
  }

  /// a^(2^k), the k-th Frobenius power.
  Elem frobenius(Elem a, int k) const {
    for (int i = 0; i < k; ++i) a = sqr(a);
    return a;
  }

  /// Multiplicative order, by stripping prime factors from 2^n - 1.
  std::uint64_t element_order(Elem a) const {
    if (a.is_zero()) throw DomainError("order of zero is undefined");
    std::uint64_t t = size() - 1;
    for (int p : gf2x::prime_divisors(size() - 1)) {
      while (t % static_cast<std::uint64_t>(p) == 0 && pow(a, t / p).is_one()) t /= p;
    }
    return t;
  }

  /// Smallest (by bit pattern) generator of the multiplicative group.
  Elem primitive_element() const {
    if (n_ == 1) return kOne;
    for (std::uint32_t b = 2; b < size(); ++b) {
      if (element_order(Elem{b}) == size() - 1) return Elem{b};
    }
    throw std::logic_error("no primitive element found");
  }

  /// Smallest element of exact order t. Throws when t does not divide 2^n - 1.
  Elem element_of_order(std::uint64_t t) const {
    if (t == 0 || (size() - 1) % t != 0) {
      throw DomainError("no element of order " + std::to_string(t) + " in GF(2^" +
                        std::to_string(n_) + ")");
    }
    for (std::uint32_t b = 1; b < size(); ++b) {
      if (element_order(Elem{b}) == t) return Elem{b};
    }
    throw std::logic_error("element of order not found");
  }

  /// The 2^k fixed points of a -> a^(2^k), i.e. the copy of GF(2^k) inside
  /// this field, sorted by bit pattern.
  std::vector<Elem> subfield_elements(int k) const {
    if (k < 1 || n_ % k != 0) {
      throw DomainError("subfield degree " + std::to_string(k) + " does not divide " +
                        std::to_string(n_));
    }
    std::vector<Elem> out;
    out.reserve(std::size_t{1} << k);
    if (k == n_) {
      for (std::uint32_t b = 0; b < size(); ++b) out.push_back(Elem{b});
      return out;
    }
    const std::uint64_t sub_order = (std::uint64_t{1} << k) - 1;
    const Elem gen = pow(primitive_element(), (size() - 1) / sub_order);
    out.push_back(kZero);
    Elem e = kOne;
    for (std::uint64_t i = 0; i < sub_order; ++i) {
      out.push_back(e);
      e = mul(e, gen);
    }
    std::sort(out.begin(), out.end());
    for (Elem s : out) {
      if (frobenius(s, k) != s) throw std::logic_error("subfield element is not Frobenius-fixed");
    }
    return out;
  }

  friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

 private:
  FieldCtx(int n, std::uint64_t modulus) : n_(n), modulus_(modulus) {}

  int n_;
  std::uint64_t modulus_;
};

inline FieldCtx create_field(int n, std::optional<std::uint64_t> modulus = std::nullopt) {
  return FieldCtx::create(n, modulus);
}

/// Field homomorphism GF(2^n) -> GF(2^N) for n | N, sending the generator x of
/// the small field to the smallest root of its modulus in the large field.
class FieldEmbedding {
 public:
  FieldEmbedding(const FieldCtx& from, const FieldCtx& to) : from_(from), to_(to) {
    if (to.degree() % from.degree() != 0) {
      throw DomainError("cannot embed GF(2^" + std::to_string(from.degree()) + ") into GF(2^" +
                        std::to_string(to.degree()) + ")");
    }
    const int n = from.degree();
    std::optional<Elem> root;
    for (Elem cand : to.subfield_elements(n)) {
      Elem acc = kZero;  // Horner on the modulus bits, high to low
      for (int i = n; i >= 0; --i) {
        acc = to.mul(acc, cand);
        if ((from.modulus() >> i) & 1) acc += kOne;
      }
      if (acc.is_zero()) {
        root = cand;
        break;
      }
    }
    if (!root) throw std::logic_error("modulus has no root in the extension");
    Elem p = kOne;
    for (int i = 0; i < n; ++i) {
      basis_images_.push_back(p);
      p = to.mul(p, *root);
    }
  }

  const FieldCtx& from() const { return from_; }
  const FieldCtx& to() const { return to_; }

  Elem operator()(Elem a) const {
    Elem r = kZero;
    for (std::size_t i = 0; i < basis_images_.size(); ++i) {
      if ((a.bits >> i) & 1) r += basis_images_[i];
    }
    return r;
  }

 private:
  FieldCtx from_;
  FieldCtx to_;
  std::vector<Elem> basis_images_;
};

}  // namespace apnforge
