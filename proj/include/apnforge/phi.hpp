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
 * @file phi.hpp
 * @brief The surface polynomial of a univariate f over GF(2^n).
 *
 *   phi_f(x,y,z) = (f(x) + f(y) + f(z) + f(x+y+z)) / ((x+y)(x+z)(y+z))
 *
 * phi_j denotes the surface of the monomial x^j; it is homogeneous of degree
 * j - 3 with coefficients in GF(2), and phi_f = sum_j a_j phi_j.
 */

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "apnforge/field.hpp"
#include "apnforge/poly.hpp"

namespace apnforge {

/// D = (x+y)(x+z)(y+z).
inline TriPoly denominator_surface(const FieldCtx& ctx) {
  const auto xy = TriPoly::linear(ctx, kOne, kOne, kZero);
  const auto xz = TriPoly::linear(ctx, kOne, kZero, kOne);
  const auto yz = TriPoly::linear(ctx, kZero, kOne, kOne);
  return xy * xz * yz;
}

/// (x+y+z)^j mod 2: the multinomial coefficient is odd exactly when the
/// exponent triple splits the bits of j without carries.
inline TriPoly trinomial_power(std::uint32_t j, const FieldCtx& ctx) {
  TriPoly out(ctx);
  for (std::uint32_t a = j;; a = (a - 1) & j) {
    const std::uint32_t rest = j ^ a;
    for (std::uint32_t b = rest;; b = (b - 1) & rest) {
      out.add_term(Monomial{{a, b, rest ^ b}}, kOne);
      if (b == 0) break;
    }
    if (a == 0) break;
  }
  return out;
}

/// f(x) + f(y) + f(z) + f(x+y+z), expanded.
inline TriPoly numerator_surface(const UniPoly& f) {
  const auto& ctx = f.ctx();
  TriPoly out(ctx);
  for (const auto& [d, c] : f.terms()) {
    if (d > kMaxTotalDegree) throw DomainError("degree exceeds the 2^16 cap for surfaces");
    const auto j = static_cast<std::uint32_t>(d);
    TriPoly part = trinomial_power(j, ctx);
    part.add_term(Monomial{{j, 0, 0}}, kOne);
    part.add_term(Monomial{{0, j, 0}}, kOne);
    part.add_term(Monomial{{0, 0, j}}, kOne);
    out += part.scaled(c);
  }
  return out;
}

/// Divides the numerator surface by (x+y), (x+z), (y+z), in that order.
/// Divisibility always holds; a failure is an internal error.
inline TriPoly build_phi(const UniPoly& f) {
  TriPoly p = numerator_surface(f);
  try {
    p = exact_div_linear(p, {kOne, kOne, kZero});
    p = exact_div_linear(p, {kOne, kZero, kOne});
    p = exact_div_linear(p, {kZero, kOne, kOne});
  } catch (const NotDivisible& e) {
    throw std::logic_error(std::string("numerator surface not divisible by D: ") + e.what());
  }
  return p;
}

inline TriPoly build_phi_j(std::uint32_t j, const FieldCtx& ctx) {
  return build_phi(UniPoly::monomial(ctx, j));
}

/// Product of x + a*y + (a+1)*z over a in GF(2^k) \ GF(2), computed as a
/// balanced product tree. Requires k | n.
inline TriPoly gold_product(int k, const FieldCtx& ctx) {
  if (k < 1 || ctx.degree() % k != 0) {
    throw DomainError("gold_product: k = " + std::to_string(k) + " does not divide n = " +
                      std::to_string(ctx.degree()));
  }
  std::vector<TriPoly> layer;
  for (Elem a : ctx.subfield_elements(k)) {
    if (a.is_zero() || a.is_one()) continue;
    layer.push_back(TriPoly::linear(ctx, kOne, a, a + kOne));
  }
  if (layer.empty()) return TriPoly::constant(ctx, kOne);
  while (layer.size() > 1) {
    std::vector<TriPoly> next;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
    if (layer.size() % 2) next.push_back(layer.back());
    layer = std::move(next);
  }
  return layer.front();
}

/// j = 2^t * m with m odd, and the verified identity
///   phi_j = D^(2^t - 1) * phi_m^(2^t).
struct EvenReduction {
  TriPoly multiplier;               ///< D^(2^t - 1)
  std::uint32_t odd_core = 0;       ///< m
  std::uint32_t square_exponent = 0;  ///< 2^t
};

inline EvenReduction even_reduction(std::uint32_t j, const FieldCtx& ctx) {
  if (j == 0 || j % 2 != 0) {
    throw DomainError("even_reduction: j = " + std::to_string(j) + " is not a positive even integer");
  }
  const int t = std::countr_zero(j);
  const std::uint32_t m = j >> t;

  // D^(2^t - 1) = D * D^2 * D^4 * ... * D^(2^(t-1))
  const TriPoly d = denominator_surface(ctx);
  TriPoly multiplier = d;
  TriPoly d_pow = d;
  for (int i = 1; i < t; ++i) {
    d_pow = d_pow.frobenius();
    multiplier = multiplier * d_pow;
  }

  TriPoly core_power = build_phi_j(m, ctx);
  for (int i = 0; i < t; ++i) core_power = core_power.frobenius();

  const TriPoly lhs = build_phi_j(j, ctx);
  if (!(lhs == multiplier * core_power)) {
    throw std::logic_error("even reduction identity failed for j = " + std::to_string(j));
  }
  return EvenReduction{std::move(multiplier), m, std::uint32_t{1} << t};
}

}  // namespace apnforge
