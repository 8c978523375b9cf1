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
 * @file poly.hpp
 * @brief Sparse univariate and trivariate polynomials over GF(2^n).
 *
 * UniPoly holds the univariate functions f, g, h; TriPoly holds the surface
 * polynomials in x, y, z. Both store only nonzero coefficients, keyed in
 * descending order (degree for UniPoly, graded lex with x > y > z for
 * TriPoly) so iteration and rendering are canonical.
 */

#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apnforge/error.hpp"
#include "apnforge/field.hpp"

namespace apnforge {

/// Degree reported for the zero polynomial.
inline constexpr std::int64_t kMinusInfinity = std::numeric_limits<std::int64_t>::min();

/// Total-degree cap on trivariate monomials.
inline constexpr std::uint32_t kMaxTotalDegree = 1u << 16;

inline void require_same_ctx(const FieldCtx& a, const FieldCtx& b) {
  if (!(a == b)) throw DomainError("polynomials live over different field contexts");
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

class UniPoly {
 public:
  using Terms = std::map<std::uint64_t, Elem, std::greater<>>;

  explicit UniPoly(FieldCtx ctx) : ctx_(ctx) {}

  static UniPoly monomial(FieldCtx ctx, std::uint64_t degree, Elem coeff = kOne) {
    UniPoly p(ctx);
    p.add_term(degree, coeff);
    return p;
  }

  const FieldCtx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t degree() const {
    return terms_.empty() ? kMinusInfinity : static_cast<std::int64_t>(terms_.begin()->first);
  }

  Elem leading_coefficient() const { return terms_.empty() ? kZero : terms_.begin()->second; }

  Elem coefficient(std::uint64_t d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? kZero : it->second;
  }

  /// Adds c * x^d; like terms cancel in characteristic 2.
  void add_term(std::uint64_t d, Elem c) {
    if (!ctx_.contains(c)) throw DomainError("coefficient " + to_hex(c) + " not in field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  UniPoly& operator+=(const UniPoly& o) {
    require_same_ctx(ctx_, o.ctx_);
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }

  UniPoly scaled(Elem s) const {
    UniPoly r(ctx_);
    for (const auto& [d, c] : terms_) r.add_term(d, ctx_.mul(c, s));
    return r;
  }

  Elem eval(Elem x) const {
    Elem acc = kZero;
    for (const auto& [d, c] : terms_) acc += ctx_.mul(c, ctx_.pow(x, d));
    return acc;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  FieldCtx ctx_;
  Terms terms_;
};

/// Canonical text form, e.g. "x^17+0x3*x^10+x^5"; "0" for the zero polynomial.
inline std::string render(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [d, c] : p.terms()) {
    if (!out.empty()) out += '+';
    if (d == 0) {
      out += to_hex(c);
      continue;
    }
    if (!c.is_one()) out += to_hex(c) + "*";
    out += 'x';
    if (d != 1) out += "^" + std::to_string(d);
  }
  return out;
}

namespace detail {

class UniParser {
 public:
  UniParser(std::string_view text, const FieldCtx& ctx) : text_(text), ctx_(ctx) {}

  UniPoly parse() {
    UniPoly p(ctx_);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '0' &&
        (pos_ + 1 == text_.size() || (text_[pos_ + 1] != 'x' && text_[pos_ + 1] != 'X'))) {
      // Bare "0" denotes the zero polynomial.
      std::size_t save = pos_++;
      skip_ws();
      if (pos_ == text_.size()) return p;
      pos_ = save;
    }
    parse_term(p);
    skip_ws();
    while (pos_ < text_.size()) {
      expect('+');
      parse_term(p);
      skip_ws();
    }
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint64_t parse_decimal() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        pos_ = start;
        fail("exponent too large");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    return v;
  }

  Elem parse_hex() {
    std::size_t start = pos_;
    pos_ += 2;  // "0x"
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v >> 32) {
        pos_ = start;
        fail("coefficient too large");
      }
      const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
      v = v * 16 + static_cast<std::uint64_t>(ch <= '9' ? ch - '0' : ch - 'a' + 10);
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail("expected hex digits");
    if (v >= ctx_.size()) {
      pos_ = start;
      fail("coefficient " + to_hex(v) + " not representable in GF(2^" +
           std::to_string(ctx_.degree()) + ")");
    }
    return Elem{static_cast<std::uint32_t>(v)};
  }

  bool at_hex() const {
    return pos_ + 1 < text_.size() && text_[pos_] == '0' &&
           (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X') &&
           pos_ + 2 < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_ + 2]));
  }

  void parse_term(UniPoly& p) {
    skip_ws();
    Elem coeff = kOne;
    if (at_hex()) {
      coeff = parse_hex();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '*') {
        p.add_term(0, coeff);  // constant term
        return;
      }
      ++pos_;
      skip_ws();
    }
    if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected 'x'");
    ++pos_;
    std::uint64_t e = 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      e = parse_decimal();
    }
    p.add_term(e, coeff);
  }

  std::string_view text_;
  const FieldCtx& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `poly := term ('+' term)*; term := [coeff '*'] 'x' ['^' exp] | coeff`
/// with hex coefficients (0x prefix). Whitespace is ignored; like terms cancel.
inline UniPoly parse_unipoly(std::string_view text, const FieldCtx& ctx) {
  return detail::UniParser(text, ctx).parse();
}

// ---------------------------------------------------------------------------
// TriPoly
// ---------------------------------------------------------------------------

/// Exponent triple (x, y, z).
struct Monomial {
  std::array<std::uint32_t, 3> exp{};

  std::uint32_t total() const { return exp[0] + exp[1] + exp[2]; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lex, x > y > z; larger monomials sort first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    return a.exp > b.exp;
  }
};

namespace detail {

inline std::uint64_t pack(const Monomial& m) {
  return (std::uint64_t{m.exp[0]} << 42) | (std::uint64_t{m.exp[1]} << 21) | m.exp[2];
}
inline Monomial unpack(std::uint64_t k) {
  constexpr std::uint64_t mask = (1u << 21) - 1;
  return Monomial{{static_cast<std::uint32_t>(k >> 42), static_cast<std::uint32_t>((k >> 21) & mask),
                   static_cast<std::uint32_t>(k & mask)}};
}

}  // namespace detail

class TriPoly {
 public:
  using Terms = std::map<Monomial, Elem, GrlexGreater>;

  explicit TriPoly(FieldCtx ctx) : ctx_(ctx) {}

  static TriPoly constant(FieldCtx ctx, Elem c) {
    TriPoly p(ctx);
    p.add_term(Monomial{}, c);
    return p;
  }
  /// The variable x (0), y (1) or z (2).
  static TriPoly variable(FieldCtx ctx, int index) {
    TriPoly p(ctx);
    Monomial m;
    m.exp[static_cast<std::size_t>(index)] = 1;
    p.add_term(m, kOne);
    return p;
  }
  static TriPoly term(FieldCtx ctx, std::uint32_t i, std::uint32_t j, std::uint32_t k,
                      Elem c = kOne) {
    TriPoly p(ctx);
    p.add_term(Monomial{{i, j, k}}, c);
    return p;
  }
  /// c_x*x + c_y*y + c_z*z.
  static TriPoly linear(FieldCtx ctx, Elem cx, Elem cy, Elem cz) {
    TriPoly p(ctx);
    p.add_term(Monomial{{1, 0, 0}}, cx);
    p.add_term(Monomial{{0, 1, 0}}, cy);
    p.add_term(Monomial{{0, 0, 1}}, cz);
    return p;
  }

  const FieldCtx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::int64_t total_degree() const {
    return terms_.empty() ? kMinusInfinity : static_cast<std::int64_t>(terms_.begin()->first.total());
  }

  Elem coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? kZero : it->second;
  }

  void add_term(const Monomial& m, Elem c) {
    if (m.total() > kMaxTotalDegree) throw DomainError("monomial exceeds total-degree cap 2^16");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const auto d = terms_.begin()->first.total();
    for (const auto& [m, c] : terms_) {
      if (m.total() != d) return false;
    }
    return true;
  }

  /// True when every coefficient is 0 or 1.
  bool has_binary_coefficients() const {
    for (const auto& [m, c] : terms_) {
      if (!c.is_one()) return false;
    }
    return true;
  }

  TriPoly& operator+=(const TriPoly& o) {
    require_same_ctx(ctx_, o.ctx_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }

  TriPoly scaled(Elem s) const {
    TriPoly r(ctx_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, ctx_.mul(c, s));
    return r;
  }

  /// p^2, using the characteristic-2 identity (sum c m)^2 = sum c^2 m^2.
  TriPoly frobenius() const {
    TriPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
      r.add_term(Monomial{{2 * m.exp[0], 2 * m.exp[1], 2 * m.exp[2]}}, ctx_.sqr(c));
    }
    return r;
  }

  /// Image under a coefficient embedding into a larger field.
  TriPoly embedded(const FieldEmbedding& emb) const {
    require_same_ctx(ctx_, emb.from());
    TriPoly r(emb.to());
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, emb(c));
    return r;
  }

  friend bool operator==(const TriPoly& a, const TriPoly& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  FieldCtx ctx_;
  Terms terms_;
};

namespace detail {

/// Accumulates terms with XOR-able coefficients in a hash map, then sorts.
class TermAccumulator {
 public:
  explicit TermAccumulator(FieldCtx ctx) : ctx_(ctx) {}

  void add(const Monomial& m, Elem c) {
    if (m.total() > kMaxTotalDegree) throw DomainError("monomial exceeds total-degree cap 2^16");
    acc_[pack(m)] += c;
  }

  TriPoly finish() const {
    TriPoly r(ctx_);
    for (const auto& [k, c] : acc_) {
      if (!c.is_zero()) r.add_term(unpack(k), c);
    }
    return r;
  }

 private:
  FieldCtx ctx_;
  std::unordered_map<std::uint64_t, Elem> acc_;
};

}  // namespace detail

inline TriPoly tri_mul(const TriPoly& p, const TriPoly& q) {
  require_same_ctx(p.ctx(), q.ctx());
  const auto& ctx = p.ctx();
  detail::TermAccumulator acc(ctx);
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      acc.add(Monomial{{mp.exp[0] + mq.exp[0], mp.exp[1] + mq.exp[1], mp.exp[2] + mq.exp[2]}},
              ctx.mul(cp, cq));
    }
  }
  return acc.finish();
}

inline TriPoly operator*(const TriPoly& p, const TriPoly& q) { return tri_mul(p, q); }

inline TriPoly tri_pow(const TriPoly& p, std::uint64_t e) {
  TriPoly result = TriPoly::constant(p.ctx(), kOne);
  TriPoly base = p;
  while (e) {
    if (e & 1) result = tri_mul(result, base);
    e >>= 1;
    if (e) base = tri_mul(base, base);
  }
  return result;
}

/// Evaluates p at a point of p's field.
inline Elem tri_eval(const TriPoly& p, Elem x, Elem y, Elem z) {
  const auto& ctx = p.ctx();
  if (!ctx.contains(x) || !ctx.contains(y) || !ctx.contains(z)) {
    throw DomainError("evaluation point outside the polynomial's field");
  }
  std::unordered_map<std::uint64_t, Elem> cache[3];
  const std::array<Elem, 3> point{x, y, z};
  auto power = [&](int v, std::uint32_t e) {
    auto [it, inserted] = cache[v].try_emplace(e);
    if (inserted) it->second = ctx.pow(point[static_cast<std::size_t>(v)], e);
    return it->second;
  };
  Elem acc = kZero;
  for (const auto& [m, c] : p.terms()) {
    acc += ctx.mul(c, ctx.mul(power(0, m.exp[0]), ctx.mul(power(1, m.exp[1]), power(2, m.exp[2]))));
  }
  return acc;
}

/// Evaluates p at a point of a larger field, mapping coefficients through `emb`.
inline Elem tri_eval(const TriPoly& p, const FieldEmbedding& emb, Elem x, Elem y, Elem z) {
  return tri_eval(p.embedded(emb), x, y, z);
}

/// Buckets terms by total degree; the parts sum back to p.
inline std::map<std::uint32_t, TriPoly> homogeneous_parts(const TriPoly& p) {
  std::map<std::uint32_t, TriPoly> parts;
  for (const auto& [m, c] : p.terms()) {
    auto it = parts.try_emplace(m.total(), p.ctx()).first;
    it->second.add_term(m, c);
  }
  return parts;
}

/// Highest-degree homogeneous part (zero for the zero polynomial).
inline TriPoly leading_form(const TriPoly& p) {
  TriPoly out(p.ctx());
  if (p.is_zero()) return out;
  const auto top = p.terms().begin()->first.total();
  for (const auto& [m, c] : p.terms()) {
    if (m.total() == top) out.add_term(m, c);
  }
  return out;
}

/// Substitutes x -> x+1, y -> y+1, z -> 1. The result has no z.
inline TriPoly shift_xy(const TriPoly& p) {
  detail::TermAccumulator acc(p.ctx());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t i = m.exp[0], j = m.exp[1];
    // (x+1)^i = sum over a subset-of-bits of i of x^a (Lucas mod 2).
    for (std::uint32_t a = i;; a = (a - 1) & i) {
      for (std::uint32_t b = j;; b = (b - 1) & j) {
        acc.add(Monomial{{a, b, 0}}, c);
        if (b == 0) break;
      }
      if (a == 0) break;
    }
  }
  return acc.finish();
}

/// Substitutes variable `var` := `replacement` (a linear polynomial in the
/// other variables) and expands. Binomial coefficients are taken mod 2.
inline TriPoly substitute_linear(const TriPoly& p, int var, const TriPoly& replacement) {
  require_same_ctx(p.ctx(), replacement.ctx());
  const auto& ctx = p.ctx();
  // replacement = c1 * u + c2 * w with u, w the other two variables.
  const int u = (var + 1) % 3 < (var + 2) % 3 ? (var + 1) % 3 : (var + 2) % 3;
  const int w = 3 - var - u;
  Elem cu = kZero, cw = kZero;
  for (const auto& [m, c] : replacement.terms()) {
    if (m.total() != 1 || m.exp[static_cast<std::size_t>(var)] != 0) {
      throw DomainError("replacement must be a linear form in the other variables");
    }
    (m.exp[static_cast<std::size_t>(u)] ? cu : cw) = c;
  }
  detail::TermAccumulator acc(ctx);
  std::unordered_map<std::uint32_t, Elem> pu, pw;
  auto power = [&](std::unordered_map<std::uint32_t, Elem>& cache, Elem base, std::uint32_t e) {
    auto [it, ins] = cache.try_emplace(e);
    if (ins) it->second = ctx.pow(base, e);
    return it->second;
  };
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m.exp[static_cast<std::size_t>(var)];
    for (std::uint32_t a = e;; a = (a - 1) & e) {
      const Elem coeff = ctx.mul(c, ctx.mul(power(pu, cu, a), power(pw, cw, e - a)));
      if (!coeff.is_zero()) {
        Monomial out = m;
        out.exp[static_cast<std::size_t>(var)] = 0;
        out.exp[static_cast<std::size_t>(u)] += a;
        out.exp[static_cast<std::size_t>(w)] += e - a;
        acc.add(out, coeff);
      }
      if (a == 0) break;
    }
  }
  return acc.finish();
}

/// Coefficients of a linear form c_x*x + c_y*y + c_z*z.
struct LinearForm {
  Elem cx, cy, cz;
};

inline std::string render_form(LinearForm f) {
  std::string out;
  const std::array<std::pair<Elem, const char*>, 3> parts{
      {{f.cx, "x"}, {f.cy, "y"}, {f.cz, "z"}}};
  for (const auto& [c, name] : parts) {
    if (c.is_zero()) continue;
    if (!out.empty()) out += '+';
    if (!c.is_one()) out += to_hex(c) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

/// Quotient of p by a linear form, or nullopt when the form does not divide p.
/// The form's first nonzero variable v leads; p is written as a polynomial in
/// v and divided synthetically by (v + root). The synthetic remainder is p
/// with v substituted by the root, so it vanishes exactly when the form
/// divides p (the substitution check, e.g. p(y, y, z) = 0 for x + y).
inline std::optional<TriPoly> try_exact_div_linear(const TriPoly& p, LinearForm form) {
  const auto& ctx = p.ctx();
  const std::array<Elem, 3> c{form.cx, form.cy, form.cz};
  int v = 0;
  while (v < 3 && c[static_cast<std::size_t>(v)].is_zero()) ++v;
  if (v == 3) throw DomainError("division by the zero linear form");
  const auto vi = static_cast<std::size_t>(v);
  const Elem lead_inv = ctx.inv(c[vi]);

  TriPoly root(ctx);
  for (int u = 0; u < 3; ++u) {
    if (u == v) continue;
    Monomial m;
    m.exp[static_cast<std::size_t>(u)] = 1;
    root.add_term(m, ctx.mul(c[static_cast<std::size_t>(u)], lead_inv));
  }

  if (p.is_zero()) return TriPoly(ctx);

  std::uint32_t top = 0;
  for (const auto& [m, cf] : p.terms()) top = std::max(top, m.exp[vi]);
  std::vector<TriPoly> coeffs(top + 1, TriPoly(ctx));
  for (const auto& [m, cf] : p.terms()) {
    Monomial stripped = m;
    stripped.exp[vi] = 0;
    coeffs[m.exp[vi]].add_term(stripped, cf);
  }

  // b_{e-1} = p_e + root * b_e; remainder = p_0 + root * b_0.
  std::vector<TriPoly> quot(top, TriPoly(ctx));
  TriPoly carry(ctx);
  for (std::uint32_t e = top; e >= 1; --e) {
    carry = coeffs[e] + tri_mul(root, carry);
    quot[e - 1] = carry;
  }
  if (!(coeffs[0] + tri_mul(root, carry)).is_zero()) return std::nullopt;

  TriPoly q(ctx);
  for (std::uint32_t e = 0; e < top; ++e) {
    for (const auto& [m, cf] : quot[e].terms()) {
      Monomial out = m;
      out.exp[vi] = e;
      q.add_term(out, ctx.mul(cf, lead_inv));
    }
  }
  return q;
}

/// Returns q with q * form == p; throws NotDivisible otherwise.
inline TriPoly exact_div_linear(const TriPoly& p, LinearForm form) {
  auto q = try_exact_div_linear(p, form);
  if (!q) {
    throw NotDivisible(render_form(form) + " does not divide the polynomial: substituting its "
                       "root leaves a nonzero remainder");
  }
  return *std::move(q);
}

/// Renders in graded-lex order, e.g. "x^2+x*y+x*z+y^2+y*z+z^2".
inline std::string render(const TriPoly& p) {
  if (p.is_zero()) return "0";
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += '+';
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      const auto e = m.exp[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.is_one() ? "1" : to_hex(c);
    } else {
      if (!c.is_one()) out += to_hex(c) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace apnforge
