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
 * @file screen.hpp
 * @brief Coprimality of Gold surfaces, divisor oracles and the screen that
 *        decides whether a polynomial can be exceptional APN.
 *
 * The Gold surface phi_{2^k+1} is the product of the linear forms
 * x + a*y + (a+1)*z, a in GF(2^k) \ GF(2). Coprimality of phi_{2^k+1} and
 * phi_d therefore reduces to a finite scan over a, which is the brute-force
 * side checked against the closed-form criterion.
 */

#include <algorithm>
#include <functional>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "apnforge/error.hpp"
#include "apnforge/field.hpp"
#include "apnforge/phi.hpp"
#include "apnforge/poly.hpp"

namespace apnforge {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Arithmetic predicates
// ---------------------------------------------------------------------------

/// C(a, b) mod 2: odd exactly when the bits of b are a subset of the bits of a.
constexpr bool lucas_mod2(std::uint64_t a, std::uint64_t b) { return (a & b) == b; }

/// k with d = 2^k + 1, d >= 3.
inline std::optional<std::uint32_t> gold_parameter(std::uint64_t d) {
  if (d < 3 || !std::has_single_bit(d - 1)) return std::nullopt;
  return static_cast<std::uint32_t>(std::countr_zero(d - 1));
}

/// k >= 2 with d = 2^(2k) - 2^k + 1 (k = 1 gives 3, which is Gold).
inline std::optional<std::uint32_t> kasami_welch_parameter(std::uint64_t d) {
  for (std::uint32_t k = 2; 2 * k < 63; ++k) {
    const std::uint64_t v = (std::uint64_t{1} << (2 * k)) - (std::uint64_t{1} << k) + 1;
    if (v == d) return k;
    if (v > d) break;
  }
  return std::nullopt;
}

/// Degrees whose surface vanishes identically: 0 and the powers of two.
constexpr bool is_affine_degree(std::uint64_t d) { return d == 0 || std::has_single_bit(d); }

// ---------------------------------------------------------------------------
// Linear-form divisibility
// ---------------------------------------------------------------------------

/// Does x + alpha*y + (alpha+1)*z divide p? Each homogeneous part is tested by
/// substituting x = alpha*y + (alpha+1)*z and checking that it vanishes.
inline bool linear_form_divides(const TriPoly& p, Elem alpha) {
  const auto& ctx = p.ctx();
  const TriPoly root = TriPoly::linear(ctx, kZero, alpha, alpha + kOne);
  const auto parts = homogeneous_parts(p);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!substitute_linear(it->second, 0, root).is_zero()) return false;
  }
  return true;
}

/// Bivariate variant: does x + alpha*y divide p(x, y)? Holds iff every
/// homogeneous part F_r satisfies F_r(alpha, 1) = 0.
inline bool linear_form_divides_xy(const TriPoly& p, Elem alpha) {
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[2] != 0) throw DomainError("linear_form_divides_xy expects a polynomial in x, y");
  }
  for (const auto& [deg, part] : homogeneous_parts(p)) {
    if (!tri_eval(part, alpha, kOne, kZero).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Coprimality of Gold surfaces
// ---------------------------------------------------------------------------

/// Closed form: phi_{2^k+1} and phi_d (d odd) are coprime unless
/// d = 2^l + 1 with gcd(l, k) > 1.
inline bool coprime_gold_formula(std::uint32_t k, std::uint64_t d) {
  if (k < 1) throw DomainError("coprime_gold_formula: k must be positive");
  if (d % 2 == 0) {
    throw DomainError("coprime_gold_formula: d = " + std::to_string(d) +
                      " is even; use the brute-force check");
  }
  if (d < 3) throw DomainError("coprime_gold_formula: d must be at least 3");
  const auto l = gold_parameter(d);
  return !(l && std::gcd(*l, k) > 1);
}

inline constexpr std::uint64_t kMaxBruteforceDegree = 256;

namespace detail {

inline std::vector<Elem> gold_roots(std::uint32_t k, const FieldCtx& ambient) {
  std::vector<Elem> out;
  for (Elem a : ambient.subfield_elements(static_cast<int>(k))) {
    if (!a.is_zero() && !a.is_one()) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// Brute force: scans every a in GF(2^k) \ GF(2) for a linear factor
/// x + a*y + (a+1)*z shared with phi_d. Even d is first reduced to
/// phi_d = D^(2^t - 1) * phi_m^(2^t); D has no Gold factor, so only the odd
/// core m matters.
inline bool coprime_bruteforce(std::uint32_t k, std::uint64_t d, const FieldCtx& ambient) {
  if (k < 1 || ambient.degree() % static_cast<int>(k) != 0) {
    throw DomainError("coprime_bruteforce: GF(2^" + std::to_string(k) + ") is not a subfield of GF(2^" +
                      std::to_string(ambient.degree()) + ")");
  }
  if (d < 3) throw DomainError("coprime_bruteforce: d must be at least 3");
  if (d > kMaxBruteforceDegree) {
    throw DomainError("coprime_bruteforce: d = " + std::to_string(d) + " exceeds the limit 256");
  }
  const auto roots = detail::gold_roots(k, ambient);
  if (roots.empty()) return true;  // phi_3 = 1

  std::uint64_t core = d;
  if (d % 2 == 0) {
    const auto reduction = even_reduction(static_cast<std::uint32_t>(d), ambient);
    const TriPoly denom = denominator_surface(ambient);
    for (Elem a : roots) {
      if (linear_form_divides(denom, a)) {
        throw std::logic_error("denominator surface shares a factor with the Gold product");
      }
    }
    core = reduction.odd_core;
    if (core < 3) return false;  // phi_d = 0
  }
  const TriPoly phi = build_phi_j(static_cast<std::uint32_t>(core), ambient);
  for (Elem a : roots) {
    if (linear_form_divides(phi, a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Root-of-unity audit
// ---------------------------------------------------------------------------

struct AuditRow {
  Elem alpha;
  bool premises = false;       ///< F_{m-1}(a,1) = 0 and F_m(a,1) = 0
  bool alpha_root = false;     ///< a^(l-1) = 1
  bool alpha1_root = false;    ///< (a+1)^(l-1) = 1
  bool low_part_nonzero = false;  ///< component of degree m-(2^i+1) is 1 at (a,1)
};

struct AuditReport {
  bool gold_case = false;  ///< l = 1: m is a Gold number and the audit does not apply
  std::uint64_t m = 0;
  bool binomial_odd = false;  ///< C(m, 2^i+1) mod 2 = 1
  std::vector<AuditRow> rows;       ///< one per a in GF(2^k) \ GF(2)
  std::vector<Elem> violations;     ///< a where the implication chain breaks
};

/// For m = 2^i * l + 1, checks the chain used to rule out a common factor
/// x + a*y of the shifted surfaces: whenever a satisfies
///   (a+1)^l + a^l + 1 = 0 and (a+1)^(l+1) + a^(l+1) + 1 = 0,
/// both a and a+1 must be (l-1)-th roots of unity and the degree
/// m - (2^i+1) component must evaluate to 1 at (a, 1).
inline AuditReport root_of_unity_audit(std::uint32_t k, std::uint32_t i, std::uint64_t l,
                                       const FieldCtx& ambient) {
  if (k < 1 || ambient.degree() % static_cast<int>(k) != 0) {
    throw DomainError("root_of_unity_audit: GF(2^" + std::to_string(k) + ") is not a subfield");
  }
  if (i < 1 || i > 40) throw DomainError("root_of_unity_audit: i must be in [1, 40]");
  if (l % 2 == 0) throw DomainError("root_of_unity_audit: l must be odd");
  AuditReport report;
  report.m = (std::uint64_t{1} << i) * l + 1;
  if (l == 1) {
    report.gold_case = true;
    return report;
  }
  const std::uint64_t low = report.m - ((std::uint64_t{1} << i) + 1);
  report.binomial_odd = lucas_mod2(report.m, (std::uint64_t{1} << i) + 1);
  const auto& f = ambient;
  for (Elem a : detail::gold_roots(k, ambient)) {
    const Elem a1 = a + kOne;
    AuditRow row{a};
    const bool first = (f.pow(a1, l) + f.pow(a, l) + kOne).is_zero();
    const bool second = (f.pow(a1, l + 1) + f.pow(a, l + 1) + kOne).is_zero();
    row.premises = first && second;
    row.alpha_root = f.pow(a, l - 1).is_one();
    row.alpha1_root = f.pow(a1, l - 1).is_one();
    row.low_part_nonzero =
        lucas_mod2(report.m, low) && (f.pow(a1, low) + f.pow(a, low) + kOne).is_one();
    if (row.premises && !(row.alpha_root && row.alpha1_root && row.low_part_nonzero &&
                          report.binomial_odd)) {
      report.violations.push_back(a);
    }
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cubic divisors (x+y)(y+z)(z+x) + P
// ---------------------------------------------------------------------------

/// P = c1(x^2+y^2+z^2) + c4(xy+xz+yz) + b1(x+y+z) + d.
struct CubicParams {
  Elem c1, c4, b1, d;
  friend auto operator<=>(const CubicParams&, const CubicParams&) = default;
};

namespace detail {

struct CubicLayers {
  TriPoly s2, s11, s1;
  explicit CubicLayers(const FieldCtx& ctx)
      : s2(TriPoly::term(ctx, 2, 0, 0) + TriPoly::term(ctx, 0, 2, 0) + TriPoly::term(ctx, 0, 0, 2)),
        s11(TriPoly::term(ctx, 1, 1, 0) + TriPoly::term(ctx, 1, 0, 1) + TriPoly::term(ctx, 0, 1, 1)),
        s1(TriPoly::linear(ctx, kOne, kOne, kOne)) {}
};

inline std::optional<TriPoly> try_div_denominator(const TriPoly& p) {
  auto q = try_exact_div_linear(p, {kOne, kOne, kZero});
  if (!q) return std::nullopt;
  q = try_exact_div_linear(*q, {kOne, kZero, kOne});
  if (!q) return std::nullopt;
  return try_exact_div_linear(*q, {kZero, kOne, kOne});
}

}  // namespace detail

inline TriPoly candidate_cubic(const FieldCtx& ctx, const CubicParams& p) {
  const detail::CubicLayers layers(ctx);
  return denominator_surface(ctx) + layers.s2.scaled(p.c1) + layers.s11.scaled(p.c4) +
         layers.s1.scaled(p.b1) + TriPoly::constant(ctx, p.d);
}

/// Multivariate division by a single polynomial in graded lex order. A single
/// polynomial is a Groebner basis of the ideal it generates, so the remainder
/// is zero exactly when `divisor` divides `p`.
inline bool polynomial_divides(const TriPoly& divisor, const TriPoly& p) {
  require_same_ctx(divisor.ctx(), p.ctx());
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.is_zero()) return true;
  const auto& ctx = p.ctx();
  const auto [lead, lead_c] = *divisor.terms().begin();
  const Elem lead_inv = ctx.inv(lead_c);
  TriPoly rem = p;
  while (!rem.is_zero()) {
    const auto [m, c] = *rem.terms().begin();
    for (int v = 0; v < 3; ++v) {
      if (m.exp[static_cast<std::size_t>(v)] < lead.exp[static_cast<std::size_t>(v)]) return false;
    }
    const Monomial shift{{m.exp[0] - lead.exp[0], m.exp[1] - lead.exp[1], m.exp[2] - lead.exp[2]}};
    const Elem factor = ctx.mul(c, lead_inv);
    for (const auto& [dm, dc] : divisor.terms()) {
      rem.add_term(Monomial{{dm.exp[0] + shift.exp[0], dm.exp[1] + shift.exp[1],
                             dm.exp[2] + shift.exp[2]}},
                   ctx.mul(dc, factor));
    }
  }
  return true;
}

/// Single-candidate mode: phi and the parameters live in the same field
/// (the cubic extension of phi's coefficient field).
inline bool cubic_divisor_check(const TriPoly& phi, const CubicParams& params) {
  const auto& ctx = phi.ctx();
  for (Elem e : {params.c1, params.c4, params.b1, params.d}) {
    if (!ctx.contains(e)) throw DomainError("cubic parameter outside the polynomial's field");
  }
  if (!phi.is_zero() && phi.total_degree() < 3) return false;
  return polynomial_divides(candidate_cubic(ctx, params), phi);
}

/// Exhaustive mode over GF(q^3) for phi over GF(q), q <= 4. Writes phi = C*Q
/// by homogeneous layers: Q_t = phi_T / D, and each lower layer of Q follows
/// by exact division by D once the parameters it involves are fixed
/// ((c1, c4), then b1, then d). Results are sorted lexicographically.
inline std::vector<CubicParams> exhaustive_cubic_search(const TriPoly& phi) {
  const auto& base = phi.ctx();
  if (base.degree() > 2) {
    throw DomainError("exhaustive cubic search requires q <= 4 (n <= 2)");
  }
  if (phi.is_zero()) throw DomainError("the zero polynomial is divisible by every cubic");
  std::vector<CubicParams> found;
  if (phi.total_degree() < 3) return found;

  const FieldCtx ext = FieldCtx::create(3 * base.degree());
  const TriPoly p = phi.embedded(FieldEmbedding(base, ext));
  const detail::CubicLayers layers(ext);
  const auto T = static_cast<int>(p.total_degree());
  const int t = T - 3;

  std::vector<TriPoly> parts(static_cast<std::size_t>(T) + 1, TriPoly(ext));
  for (auto& [deg, part] : homogeneous_parts(p)) parts[deg] = part;

  // quot[b] holds Q_b; entries above t stay zero.
  std::vector<TriPoly> quot(static_cast<std::size_t>(T) + 1, TriPoly(ext));
  std::vector<TriPoly> s2q(quot.size(), TriPoly(ext)), s11q(quot.size(), TriPoly(ext)),
      s1q(quot.size(), TriPoly(ext));
  auto set_quot = [&](int b, TriPoly value) {
    const auto i = static_cast<std::size_t>(b);
    s2q[i] = layers.s2 * value;
    s11q[i] = layers.s11 * value;
    s1q[i] = layers.s1 * value;
    quot[i] = std::move(value);
  };
  auto q_at = [&](int b) -> const TriPoly* {
    return (b < 0 || b > t) ? nullptr : &quot[static_cast<std::size_t>(b)];
  };

  // Solves layer delta: phi_delta = D*Q_{delta-3} + C2*Q_{delta-2} + C1*Q_{delta-1} + d*Q_delta.
  auto step = [&](int delta, const CubicParams& c) {
    TriPoly r = parts[static_cast<std::size_t>(delta)];
    if (q_at(delta - 2)) {
      r += s2q[static_cast<std::size_t>(delta - 2)].scaled(c.c1);
      r += s11q[static_cast<std::size_t>(delta - 2)].scaled(c.c4);
    }
    if (q_at(delta - 1)) r += s1q[static_cast<std::size_t>(delta - 1)].scaled(c.b1);
    if (const TriPoly* qd = q_at(delta)) r += qd->scaled(c.d);
    if (delta >= 3) {
      auto q = detail::try_div_denominator(r);
      if (!q) return false;
      set_quot(delta - 3, std::move(*q));
      return true;
    }
    return r.is_zero();
  };

  const auto elems = ext.subfield_elements(ext.degree());
  CubicParams c{};
  if (!step(T, c)) return found;
  for (Elem c1 : elems) {
    for (Elem c4 : elems) {
      c.c1 = c1;
      c.c4 = c4;
      if (T - 1 >= 0 && !step(T - 1, c)) continue;
      for (Elem b1 : elems) {
        c.b1 = b1;
        if (T - 2 >= 0 && !step(T - 2, c)) continue;
        for (Elem d : elems) {
          c.d = d;
          bool ok = true;
          for (int delta = T - 3; delta >= 0 && ok; --delta) ok = step(delta, c);
          if (ok) found.push_back(c);
        }
      }
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Field-size threshold
// ---------------------------------------------------------------------------

/// d < 0.45 * 2^(n/4) + 0.5, decided exactly as (20d - 10)^4 < 9^4 * 2^n.
inline bool field_size_inequality(std::uint64_t d, int n) {
  using boost::multiprecision::cpp_int;
  if (d == 0) return true;
  cpp_int lhs = cpp_int(20) * d - 10;
  lhs = lhs * lhs * lhs * lhs;
  const cpp_int rhs = cpp_int(6561) << n;
  return lhs < rhs;
}

/// Smallest n with d < 0.45 * 2^(n/4) + 0.5.
inline int theorem1_min_field(std::uint64_t d) {
  if (d < 9) throw DomainError("the field-size threshold requires d >= 9");
  int n = 1;
  while (!field_size_inequality(d, n)) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Heuristic absolute irreducibility
// ---------------------------------------------------------------------------

namespace detail {

/// Same monomials with coefficient 1 in another field. Requires GF(2) coefficients.
inline TriPoly rebase_binary(const TriPoly& p, const FieldCtx& ctx) {
  if (!p.has_binary_coefficients()) throw DomainError("polynomial has coefficients outside GF(2)");
  TriPoly out(ctx);
  for (const auto& [m, c] : p.terms()) out.add_term(m, kOne);
  return out;
}

inline std::vector<Elem> roots_of(const std::vector<Elem>& elems,
                                  const std::function<Elem(Elem)>& g) {
  std::vector<Elem> out;
  for (Elem e : elems) {
    if (g(e).is_zero()) out.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Finds a linear factor over GF(2^m) of a polynomial with GF(2)
/// coefficients. Candidates are narrowed by the points (b,1,0), (c,0,1),
/// (0,c,1) the factor's plane must pass through, then confirmed by
/// substitution.
inline std::optional<LinearForm> find_linear_factor(const TriPoly& p, int m) {
  const FieldCtx ctx = FieldCtx::create(m);
  const TriPoly q = detail::rebase_binary(p, ctx);
  if (q.is_zero() || q.total_degree() < 1) return std::nullopt;
  const auto elems = ctx.subfield_elements(m);
  const auto zero = TriPoly(ctx);

  // z | q
  if (substitute_linear(q, 2, zero).is_zero()) return LinearForm{kZero, kZero, kOne};
  // y + c z
  for (Elem c : detail::roots_of(elems, [&](Elem e) { return tri_eval(q, kZero, e, kOne); })) {
    if (substitute_linear(q, 1, TriPoly::linear(ctx, kZero, kZero, c)).is_zero()) {
      return LinearForm{kZero, kOne, c};
    }
  }
  // x + b y + c z
  const auto bs = detail::roots_of(elems, [&](Elem e) { return tri_eval(q, e, kOne, kZero); });
  const auto cs = detail::roots_of(elems, [&](Elem e) { return tri_eval(q, e, kZero, kOne); });
  for (Elem b : bs) {
    for (Elem c : cs) {
      if (substitute_linear(q, 0, TriPoly::linear(ctx, kZero, b, c)).is_zero()) {
        return LinearForm{kOne, b, c};
      }
    }
  }
  return std::nullopt;
}

/// Evidence (not proof) that phi_j is absolutely irreducible: nonconstant,
/// no linear factor over GF(2^m) for any m <= 8, and no cubic divisor of the
/// (x+y)(y+z)(z+x) + P shape over GF(8).
inline bool heuristic_absolutely_irreducible(std::uint32_t j) {
  const FieldCtx f2 = FieldCtx::create(1);
  const TriPoly phi = build_phi_j(j, f2);
  if (phi.is_zero() || phi.total_degree() < 1) return false;
  // GF(2^m) for m <= 8 all sit inside GF(2^8), GF(2^7), GF(2^6) or GF(2^5).
  for (int m : {8, 7, 6, 5}) {
    if (find_linear_factor(phi, m)) return false;
  }
  if (phi.total_degree() > 3 && !exhaustive_cubic_search(phi).empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exceptional-APN screen
// ---------------------------------------------------------------------------

enum class Status { NotExceptional, ConjecturedExceptional, Inconclusive, Informational };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::NotExceptional: return "NotExceptional";
    case Status::ConjecturedExceptional: return "ConjecturedExceptional";
    case Status::Inconclusive: return "Inconclusive";
    case Status::Informational: return "Informational";
  }
  return "?";
}

struct TraceEntry {
  std::string test;
  json inputs;
  json outcome;
};

struct Verdict {
  Status status = Status::Inconclusive;
  std::optional<std::string> theorem;
  bool heuristic = false;
  std::vector<TraceEntry> trace;
};

inline json to_json(const Verdict& v) {
  json out;
  out["status"] = status_name(v.status);
  out["theorem"] = v.theorem ? json(*v.theorem) : json(nullptr);
  out["heuristic"] = v.heuristic;
  json trace = json::array();
  for (const auto& e : v.trace) {
    json entry;
    entry["test"] = e.test;
    entry["inputs"] = e.inputs;
    entry["outcome"] = e.outcome;
    trace.push_back(std::move(entry));
  }
  out["trace"] = std::move(trace);
  return out;
}

inline json cubic_params_json(const CubicParams& c) {
  return json{{"c1", to_hex(c.c1)}, {"c4", to_hex(c.c4)}, {"b1", to_hex(c.b1)}, {"d", to_hex(c.d)}};
}

namespace detail {

inline UniPoly drop_affine_terms(const UniPoly& f) {
  UniPoly out(f.ctx());
  for (const auto& [d, c] : f.terms()) {
    if (!is_affine_degree(d)) out.add_term(d, c);
  }
  return out;
}

inline bool has_odd_degree_term(const UniPoly& f) {
  return std::any_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.first % 2 == 1; });
}

/// h = a*x^(2^(k-1)+2) + a^2*x^3 for some a != 0.
inline bool h_exceptional_shape(const UniPoly& h, std::uint32_t k) {
  const std::uint64_t top = (std::uint64_t{1} << (k - 1)) + 2;
  if (h.terms().size() != 2) return false;
  const Elem a = h.coefficient(top);
  const Elem a2 = h.coefficient(3);
  return !a.is_zero() && !a2.is_zero() && h.ctx().sqr(a) == a2;
}

inline json exhaustive_cubic_outcome(const UniPoly& f) {
  if (f.ctx().degree() > 2) return "not searchable: q > 4";
  json out = json::array();
  for (const auto& c : exhaustive_cubic_search(build_phi(f))) out.push_back(cubic_params_json(c));
  return out;
}

class Screen {
 public:
  explicit Screen(const UniPoly& f) : original_(f), f_(f.ctx()) {}

  Verdict run() {
    const auto& ctx = original_.ctx();
    if (original_.degree() < 1) throw DomainError("screen requires a nonconstant polynomial");

    UniPoly eff = drop_affine_terms(original_);
    record("drop_affine_terms", {{"poly", render(original_)}}, render(eff));
    if (eff.is_zero()) {
      decide(Status::NotExceptional, "affine");
      return verdict_;
    }
    if (!eff.leading_coefficient().is_one()) {
      const Elem inv = ctx.inv(eff.leading_coefficient());
      record("normalize_leading_coefficient", {{"poly", render(eff)}},
             render(eff.scaled(inv)));
      eff = eff.scaled(inv);
    }
    f_ = eff;
    degree_ = static_cast<std::uint64_t>(f_.degree());

    monomial_branch();
    odd_degree_branch();
    twice_odd_branch();
    four_times_odd_branch();
    gold_branch();
    kasami_welch_branch();
    classification_branch();
    return verdict_;
  }

 private:
  void record(std::string test, json inputs, json outcome) {
    verdict_.trace.push_back({std::move(test), std::move(inputs), std::move(outcome)});
  }

  bool decided() const { return decided_; }

  void decide(Status s, std::string theorem, bool heuristic = false) {
    if (decided_) return;
    decided_ = true;
    verdict_.status = s;
    verdict_.theorem = std::move(theorem);
    verdict_.heuristic = heuristic;
  }

  void monomial_branch() {
    if (f_.terms().size() != 1) return;
    std::string cls = "other";
    if (gold_parameter(degree_)) cls = "gold";
    else if (kasami_welch_parameter(degree_)) cls = "kasami-welch";
    record("monomial_exponent_class", {{"degree", degree_}}, cls);
    if (cls == "gold") decide(Status::ConjecturedExceptional, "Conjecture (Gold monomial)");
    if (cls == "kasami-welch") {
      decide(Status::ConjecturedExceptional, "Conjecture (Kasami-Welch monomial)");
    }
  }

  void odd_degree_branch() {
    const bool applies =
        degree_ % 2 == 1 && !gold_parameter(degree_) && !kasami_welch_parameter(degree_);
    record("odd_degree_not_gold_or_kasami_welch", {{"degree", degree_}}, applies);
    if (applies) decide(Status::NotExceptional, "Thm 2");
  }

  void twice_odd_branch() {
    const bool shape = degree_ % 2 == 0 && (degree_ / 2) % 2 == 1;
    record("degree_2e_with_e_odd", {{"degree", degree_}}, shape);
    if (!shape) return;
    const bool odd_term = has_odd_degree_term(f_);
    record("has_odd_degree_term", {{"poly", render(f_)}}, odd_term);
    if (odd_term) decide(Status::NotExceptional, "Thm 3");
  }

  void four_times_odd_branch() {
    const bool shape = degree_ % 4 == 0 && (degree_ / 4) % 4 == 3;
    record("degree_4e_with_e_3_mod_4", {{"degree", degree_}}, shape);
    if (!shape) return;
    const json outcome = exhaustive_cubic_outcome(f_);
    record("exhaustive_cubic_search", {{"poly", render(f_)}, {"n", f_.ctx().degree()}}, outcome);
    if (outcome.is_array() && outcome.empty()) decide(Status::NotExceptional, "Thm 4");
  }

  bool coprime_term(std::uint32_t k, std::uint64_t j) {
    const FieldCtx ambient = FieldCtx::create(static_cast<int>(k));
    const bool ok = coprime_bruteforce(k, j, ambient);
    record("coprime_bruteforce", {{"k", k}, {"d", j}, {"ambient_n", k}}, ok);
    return ok;
  }

  void gold_branch() {
    const auto k = gold_parameter(degree_);
    if (!k || *k < 2) return;
    UniPoly h = f_;
    h.add_term(degree_, kOne);
    record("gold_degree", {{"degree", degree_}}, *k);
    if (h.is_zero()) return;
    const auto dh = static_cast<std::uint64_t>(h.degree());

    // Odd deg(h) outside the Gold exceptions.
    const bool odd = dh % 2 == 1;
    record("h_degree_odd", {{"h", render(h)}}, odd);
    if (odd) {
      const bool formula = coprime_gold_formula(*k, dh);
      record("coprime_gold_formula", {{"k", *k}, {"d", dh}}, formula);
      if (formula) {
        decide(Status::NotExceptional, "Thm 11");
        return;
      }
    }

    // Any term of h coprime to the Gold surface.
    for (const auto& [j, c] : h.terms()) {
      if (j > kMaxBruteforceDegree) continue;
      if (coprime_term(*k, j)) {
        decide(Status::NotExceptional, "Thm 5");
        return;
      }
    }

    const std::uint64_t exceptional_degree = (std::uint64_t{1} << (*k - 1)) + 2;
    if (dh == exceptional_degree) {
      const int n = f_.ctx().degree();
      const bool applicable = *k % 2 == 1 && std::gcd(static_cast<int>(*k), n) == 1;
      record("k_odd_and_coprime_to_n", {{"k", *k}, {"n", n}}, applicable);
      if (applicable) {
        const bool shape = h_exceptional_shape(h, *k);
        record("h_exceptional_shape", {{"h", render(h)}, {"k", *k}}, shape);
        if (!shape) {
          decide(Status::NotExceptional, "Thm 6");
          return;
        }
      }
    }

    if (*k % 2 == 0) {
      const std::uint32_t half = *k / 2;
      const std::uint64_t gold_square_degree = (std::uint64_t{1} << (2 * half - 1)) + 2;
      const bool shape = half >= 2 && dh == gold_square_degree;
      record("gold_square_degree_shape", {{"degree", degree_}, {"h_degree", dh}}, shape);
      if (shape) {
        record("top_term_never_coprime_note", {{"k", half}, {"h_degree", dh}},
               "phi_" + std::to_string(dh) + " = D*phi_" +
                   std::to_string((std::uint64_t{1} << (2 * half - 2)) + 1) +
                   "^2 shares the Gold factors over GF(4) with phi_" + std::to_string(degree_) +
                   ", so the top term of h never satisfies the coprimality hypothesis; "
                   "a coprime lower term is required");
        for (const auto& [j, c] : h.terms()) {
          if (j > kMaxBruteforceDegree) continue;
          if (coprime_term(*k, j)) {
            decide(Status::NotExceptional, "Thm 12");
            return;
          }
        }
      }
    }
  }

  void kasami_welch_branch() {
    const auto k = kasami_welch_parameter(degree_);
    if (!k) return;
    UniPoly g = f_;
    g.add_term(degree_, kOne);
    record("kasami_welch_degree", {{"degree", degree_}}, *k);
    if (g.is_zero()) return;
    const std::uint64_t bound =
        (std::uint64_t{1} << (2 * *k - 1)) - (std::uint64_t{1} << (*k - 1)) + 1;
    const auto dg = static_cast<std::uint64_t>(g.degree());
    const bool within = dg <= bound;
    record("kasami_welch_g_degree_bound", {{"g_degree", dg}, {"bound", bound}}, within);
    if (!within) return;
    for (const auto& [j, c] : g.terms()) {
      const bool ok = heuristic_absolutely_irreducible(static_cast<std::uint32_t>(j));
      record("heuristic_absolute_irreducibility", {{"j", j}}, ok);
      if (ok) {
        decide(Status::NotExceptional, "Thm 9", true);
        return;
      }
    }
  }

  void classification_branch() {
    const bool special = degree_ == 12 || degree_ == 20;
    record("degree_12_or_20", {{"degree", degree_}}, special);
    if (special) {
      decide(Status::Informational,
             degree_ == 12 ? "Degree-12 classification (not APN for large n, or CCZ-equivalent to x^3)"
                           : "Degree-20 classification (not APN for large n, or CCZ-equivalent to x^5)");
    }
  }

  UniPoly original_;
  UniPoly f_;
  std::uint64_t degree_ = 0;
  Verdict verdict_;
  bool decided_ = false;
};

}  // namespace detail

/// Applies the decision ledger in a fixed order and records every test run.
/// The verdict cites the first branch that decides; later branches are still
/// evaluated and traced.
inline Verdict screen_exceptional(const UniPoly& f) { return detail::Screen(f).run(); }

/// Recomputes the outcome of one trace entry from its inputs alone.
inline json replay_trace_entry(const TraceEntry& e, const FieldCtx& ctx) {
  const auto& in = e.inputs;
  auto poly = [&](const char* key) { return parse_unipoly(in.at(key).get<std::string>(), ctx); };
  auto num = [&](const char* key) { return in.at(key).get<std::uint64_t>(); };
  const std::string& t = e.test;
  if (t == "drop_affine_terms") return render(detail::drop_affine_terms(poly("poly")));
  if (t == "normalize_leading_coefficient") {
    const UniPoly p = poly("poly");
    return render(p.scaled(ctx.inv(p.leading_coefficient())));
  }
  if (t == "monomial_exponent_class") {
    const auto d = num("degree");
    return gold_parameter(d) ? "gold" : kasami_welch_parameter(d) ? "kasami-welch" : "other";
  }
  if (t == "odd_degree_not_gold_or_kasami_welch") {
    const auto d = num("degree");
    return d % 2 == 1 && !gold_parameter(d) && !kasami_welch_parameter(d);
  }
  if (t == "degree_2e_with_e_odd") return num("degree") % 2 == 0 && (num("degree") / 2) % 2 == 1;
  if (t == "has_odd_degree_term") return detail::has_odd_degree_term(poly("poly"));
  if (t == "degree_4e_with_e_3_mod_4") return num("degree") % 4 == 0 && (num("degree") / 4) % 4 == 3;
  if (t == "exhaustive_cubic_search") {
    const FieldCtx c = FieldCtx::create(in.at("n").get<int>(), ctx.modulus());
    return detail::exhaustive_cubic_outcome(parse_unipoly(in.at("poly").get<std::string>(), c));
  }
  if (t == "gold_degree") return *gold_parameter(num("degree"));
  if (t == "h_degree_odd") return poly("h").degree() % 2 == 1;
  if (t == "coprime_gold_formula") return coprime_gold_formula(static_cast<std::uint32_t>(num("k")), num("d"));
  if (t == "coprime_bruteforce") {
    return coprime_bruteforce(static_cast<std::uint32_t>(num("k")), num("d"),
                              FieldCtx::create(static_cast<int>(num("ambient_n"))));
  }
  if (t == "k_odd_and_coprime_to_n") {
    return num("k") % 2 == 1 && std::gcd(num("k"), num("n")) == 1;
  }
  if (t == "h_exceptional_shape") {
    return detail::h_exceptional_shape(poly("h"), static_cast<std::uint32_t>(num("k")));
  }
  if (t == "gold_square_degree_shape") {
    const auto k = gold_parameter(num("degree"));
    if (!k || *k % 2 != 0 || *k / 2 < 2) return false;
    return num("h_degree") == (std::uint64_t{1} << (*k - 1)) + 2;
  }
  if (t == "top_term_never_coprime_note") return e.outcome;
  if (t == "kasami_welch_degree") return *kasami_welch_parameter(num("degree"));
  if (t == "kasami_welch_g_degree_bound") return num("g_degree") <= num("bound");
  if (t == "heuristic_absolute_irreducibility") {
    return heuristic_absolutely_irreducible(static_cast<std::uint32_t>(num("j")));
  }
  if (t == "degree_12_or_20") return num("degree") == 12 || num("degree") == 20;
  throw DomainError("unknown trace test '" + t + "'");
}

}  // namespace apnforge
