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

#include <random>

#include <gtest/gtest.h>

#include "apnforge/phi.hpp"
#include "apnforge/screen.hpp"
#include "test_util.hpp"

namespace apnforge {
namespace {

const FieldCtx kF2 = create_field(1);
const char* const kPhi5 = "x^2+x*y+x*z+y^2+y*z+z^2";

TEST(Numerator, Cube) {
  EXPECT_EQ(numerator_surface(UniPoly::monomial(kF2, 3)), denominator_surface(kF2));
}

TEST(Numerator, SymmetricAndVanishesOnDiagonal) {
  std::mt19937 rng(23);
  const auto ctx = create_field(4);
  for (int t = 0; t < 10; ++t) {
    const UniPoly f = testing::random_unipoly(rng, ctx, 4, 20);
    const TriPoly num = numerator_surface(f);
    for (std::uint32_t x = 0; x < 16; x += 3) {
      for (std::uint32_t y = 0; y < 16; y += 5) {
        for (std::uint32_t z = 0; z < 16; z += 7) {
          const Elem a{x}, b{y}, c{z};
          const Elem v = tri_eval(num, a, b, c);
          EXPECT_EQ(v, tri_eval(num, b, a, c));
          EXPECT_EQ(v, tri_eval(num, c, b, a));
          EXPECT_EQ(v, tri_eval(num, a, c, b));
        }
        EXPECT_EQ(tri_eval(num, Elem{x}, Elem{x}, Elem{y}), kZero);
      }
    }
  }
}

TEST(BuildPhi, Examples) {
  EXPECT_EQ(build_phi(UniPoly::monomial(kF2, 3)), TriPoly::constant(kF2, kOne));
  EXPECT_EQ(render(build_phi(UniPoly::monomial(kF2, 5))), kPhi5);
  EXPECT_TRUE(build_phi(UniPoly::monomial(kF2, 4)).is_zero());
  for (std::uint32_t j : {0u, 1u, 2u, 4u, 8u, 16u, 32u}) EXPECT_TRUE(build_phi_j(j, kF2).is_zero()) << j;
  EXPECT_EQ(build_phi_j(9, create_field(3)), gold_product(3, create_field(3)));
}

TEST(BuildPhi, HomogeneousOfDegreeJMinus3) {
  for (std::uint32_t j = 3; j <= 65; ++j) {
    const TriPoly p = build_phi_j(j, kF2);
    if (p.is_zero()) continue;
    EXPECT_TRUE(p.is_homogeneous()) << j;
    EXPECT_EQ(p.total_degree(), static_cast<std::int64_t>(j) - 3) << j;
    EXPECT_TRUE(p.has_binary_coefficients()) << j;
  }
}

TEST(BuildPhi, ZeroExactlyForTwoPowers) {
  for (std::uint32_t j = 0; j <= 65; ++j) {
    const bool expect_zero = j <= 2 || is_affine_degree(j) || (j % 2 == 0 && is_affine_degree(j / 2));
    EXPECT_EQ(build_phi_j(j, kF2).is_zero(), expect_zero) << j;
  }
}

TEST(BuildPhi, CoefficientsBinaryInAnyContext) {
  for (int n : {3, 8}) {
    const auto ctx = create_field(n);
    for (std::uint32_t j : {7u, 13u, 21u}) {
      const TriPoly p = build_phi_j(j, ctx);
      EXPECT_TRUE(p.has_binary_coefficients());
      EXPECT_EQ(render(p), render(build_phi_j(j, kF2)));
    }
  }
}

TEST(BuildPhi, Linear) {
  std::mt19937 rng(29);
  const auto ctx = create_field(5);
  for (int t = 0; t < 20; ++t) {
    const UniPoly f = testing::random_unipoly(rng, ctx, 4, 24);
    const UniPoly g = testing::random_unipoly(rng, ctx, 4, 24);
    EXPECT_EQ(build_phi(f + g), build_phi(f) + build_phi(g));
    TriPoly sum(ctx);
    for (const auto& [d, c] : f.terms()) sum += build_phi_j(static_cast<std::uint32_t>(d), ctx).scaled(c);
    EXPECT_EQ(build_phi(f), sum);
  }
}

TEST(BuildPhi, DegreeOfGeneralF) {
  const auto ctx = create_field(4);
  const UniPoly f = parse_unipoly("x^11+0x7*x^6+x^3+x", ctx);
  EXPECT_EQ(build_phi(f).total_degree(), 8);
  EXPECT_TRUE(build_phi(parse_unipoly("x^2+0x3*x", ctx)).is_zero());
}

TEST(BuildPhi, DefinitionHoldsPointwise) {
  // phi * D = numerator, evaluated off and on the diagonal planes.
  const auto ctx = create_field(4);
  const UniPoly f = parse_unipoly("x^9+0x3*x^7+x^5", ctx);
  const TriPoly phi = build_phi(f);
  const TriPoly d = denominator_surface(ctx);
  for (std::uint32_t x = 0; x < 16; ++x) {
    for (std::uint32_t y = 0; y < 16; y += 3) {
      for (std::uint32_t z = 0; z < 16; z += 5) {
        const Elem a{x}, b{y}, c{z};
        EXPECT_EQ(ctx.mul(tri_eval(phi, a, b, c), tri_eval(d, a, b, c)),
                  f.eval(a) + f.eval(b) + f.eval(c) + f.eval(a + b + c));
      }
    }
  }
}

TEST(GoldProduct, Examples) {
  const auto f4 = create_field(2);
  EXPECT_EQ(render(gold_product(2, f4)), kPhi5);
  EXPECT_EQ(gold_product(1, create_field(3)), TriPoly::constant(create_field(3), kOne));
  EXPECT_THROW(gold_product(3, create_field(4)), DomainError);
}

TEST(GoldProduct, EqualsPhiOfGoldExponent) {
  for (int k = 2; k <= 5; ++k) {
    const auto ctx = create_field(k);
    const TriPoly g = gold_product(k, ctx);
    EXPECT_EQ(g, build_phi_j((1u << k) + 1, ctx)) << k;
    EXPECT_EQ(g.total_degree(), (1 << k) - 2);
  }
  // Computed in a larger ambient field the product is the same polynomial.
  EXPECT_EQ(render(gold_product(2, create_field(6))), kPhi5);
}

TEST(GoldProduct, CoprimeToDenominator) {
  const auto ctx = create_field(12);
  const TriPoly d = denominator_surface(ctx);
  for (int k : {2, 3, 4}) {
    for (Elem a : ctx.subfield_elements(k)) {
      if (a.is_zero() || a.is_one()) continue;
      EXPECT_FALSE(linear_form_divides(d, a));
    }
  }
  // The factors of D are exactly the forms excluded from the product.
  EXPECT_TRUE(linear_form_divides(d, kOne));
  EXPECT_TRUE(linear_form_divides(d, kZero));
}

TEST(EvenReduction, Examples) {
  const auto r10 = even_reduction(10, kF2);
  EXPECT_EQ(r10.odd_core, 5u);
  EXPECT_EQ(r10.square_exponent, 2u);
  EXPECT_EQ(r10.multiplier, denominator_surface(kF2));
  EXPECT_EQ(build_phi_j(10, kF2), denominator_surface(kF2) * build_phi_j(5, kF2).frobenius());

  EXPECT_TRUE(build_phi_j(4, kF2).is_zero());
  EXPECT_EQ(even_reduction(4, kF2).odd_core, 1u);
  EXPECT_EQ(build_phi_j(6, kF2), denominator_surface(kF2));
  EXPECT_EQ(even_reduction(6, kF2).odd_core, 3u);

  const auto r12 = even_reduction(12, kF2);
  EXPECT_EQ(r12.square_exponent, 4u);
  EXPECT_EQ(r12.multiplier, tri_pow(denominator_surface(kF2), 3));

  EXPECT_THROW(even_reduction(7, kF2), DomainError);
  EXPECT_THROW(even_reduction(0, kF2), DomainError);
}

TEST(EvenReduction, IdentityUpTo64) {
  const TriPoly d = denominator_surface(kF2);
  for (std::uint32_t m = 1; m <= 32; ++m) {
    EXPECT_EQ(build_phi_j(2 * m, kF2), d * build_phi_j(m, kF2).frobenius()) << m;
  }
  for (std::uint32_t j = 2; j <= 64; j += 2) EXPECT_NO_THROW(even_reduction(j, kF2)) << j;
}

}  // namespace
}  // namespace apnforge
