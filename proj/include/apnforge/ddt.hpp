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
 * @file ddt.hpp
 * @brief Differential spectra, APN checks, the monomial APN families and
 *        exhaustive rational-point scans of the surface of f.
 *
 * Everything here enumerates the field, so sizes are capped: spectra up to
 * n = 20, triple scans up to n = 7.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "apnforge/error.hpp"
#include "apnforge/field.hpp"
#include "apnforge/phi.hpp"
#include "apnforge/poly.hpp"

namespace apnforge {

inline constexpr int kMaxSpectrumDegree = 20;
inline constexpr int kMaxFullTableDegree = 12;
inline constexpr int kMaxTripleScanDegree = 7;

/// f(x) for every x, indexed by the bit pattern of x.
inline std::vector<std::uint32_t> value_table(const UniPoly& f) {
  const auto& ctx = f.ctx();
  std::vector<std::uint32_t> table(ctx.size(), 0);
  for (const auto& [d, c] : f.terms()) {
    for (std::uint32_t x = 0; x < ctx.size(); ++x) {
      table[x] ^= ctx.mul(c, ctx.pow(Elem{x}, d)).bits;
    }
  }
  return table;
}

/// Histogram: solution count -> number of b with that count.
using CountHistogram = std::map<std::uint64_t, std::uint64_t>;

struct DiffSpectrum {
  FieldCtx ctx;
  /// Entry a - 1 holds the histogram for difference a (a = 1 .. q-1).
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> per_difference;
  /// Sum of the per-difference histograms.
  CountHistogram histogram;
  std::uint64_t uniformity = 0;
};

namespace detail {

inline void require_spectrum_size(const FieldCtx& ctx) {
  if (ctx.degree() > kMaxSpectrumDegree) {
    throw DomainError("field GF(2^" + std::to_string(ctx.degree()) +
                      ") too large for exhaustive differential enumeration (n <= 20)");
  }
}

inline unsigned effective_jobs(unsigned jobs, std::uint64_t work_items) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(work_items, 1)));
}

/// Runs body(begin, end) over [first, last) split into contiguous slices.
template <typename Body>
void parallel_slices(std::uint64_t first, std::uint64_t last, unsigned jobs, Body body) {
  const std::uint64_t total = last - first;
  jobs = effective_jobs(jobs, total);
  if (jobs <= 1) {
    body(first, last);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    const std::uint64_t b = first + t * chunk;
    const std::uint64_t e = std::min(last, b + chunk);
    if (b >= e) break;
    workers.emplace_back([=, &body] { body(b, e); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace detail

/// Solution-count histograms of f(x+a) + f(x) = b for every a != 0.
/// `jobs` = 0 uses the hardware concurrency; results do not depend on it.
inline DiffSpectrum diff_spectrum(const UniPoly& f, unsigned jobs = 1) {
  const auto& ctx = f.ctx();
  detail::require_spectrum_size(ctx);
  const auto values = value_table(f);
  const std::uint64_t q = ctx.size();

  DiffSpectrum out{ctx, {}, {}, 0};
  out.per_difference.resize(q - 1);
  detail::parallel_slices(1, q, jobs, [&](std::uint64_t a_begin, std::uint64_t a_end) {
    std::vector<std::uint32_t> counts(q);
    std::vector<std::uint32_t> freq(q + 1);
    for (std::uint64_t a = a_begin; a < a_end; ++a) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint64_t x = 0; x < q; ++x) ++counts[values[x] ^ values[x ^ a]];
      std::fill(freq.begin(), freq.end(), 0);
      for (auto c : counts) ++freq[c];
      auto& hist = out.per_difference[a - 1];
      for (std::uint32_t c = 0; c <= q; ++c) {
        if (freq[c]) hist.emplace_back(c, freq[c]);
      }
    }
  });
  for (const auto& hist : out.per_difference) {
    for (auto [count, frequency] : hist) {
      out.histogram[count] += frequency;
      out.uniformity = std::max<std::uint64_t>(out.uniformity, count);
    }
  }
  return out;
}

/// The complete q x q table, row a, column b. Limited to n <= 12.
inline std::vector<std::vector<std::uint32_t>> full_ddt(const UniPoly& f) {
  const auto& ctx = f.ctx();
  if (ctx.degree() > kMaxFullTableDegree) {
    throw DomainError("full difference table limited to n <= 12");
  }
  const auto values = value_table(f);
  const std::uint64_t q = ctx.size();
  std::vector<std::vector<std::uint32_t>> table(q, std::vector<std::uint32_t>(q, 0));
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t x = 0; x < q; ++x) ++table[a][values[x] ^ values[x ^ a]];
  }
  return table;
}

inline bool is_apn(const UniPoly& f, unsigned jobs = 1) { return diff_spectrum(f, jobs).uniformity == 2; }

// ---------------------------------------------------------------------------
// Monomial families
// ---------------------------------------------------------------------------

enum class Family { Gold, KasamiWelch, Welch, Niho, Inverse, Dobbertin, EKPBinomial, BCLFamily };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Gold: return "gold";
    case Family::KasamiWelch: return "kasami-welch";
    case Family::Welch: return "welch";
    case Family::Niho: return "niho";
    case Family::Inverse: return "inverse";
    case Family::Dobbertin: return "dobbertin";
    case Family::EKPBinomial: return "ekp";
    case Family::BCLFamily: return "bcl";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Gold, Family::KasamiWelch, Family::Welch, Family::Niho, Family::Inverse,
                   Family::Dobbertin, Family::EKPBinomial, Family::BCLFamily}) {
    if (name == family_name(f)) return f;
  }
  return std::nullopt;
}

struct FamilySpec {
  Family family = Family::Gold;
  std::uint32_t r = 0;
  std::uint32_t s = 0;  ///< BCL only
  std::uint32_t k = 0;  ///< BCL only
  int n = 0;
  /// u for EKP, w for BCL; a default admissible value is chosen when empty.
  std::optional<Elem> coefficient;
  /// Field modulus for the binomial families; default modulus when empty.
  std::optional<std::uint64_t> modulus;
};

/// u in w*GF(2^5)^* union w^2*GF(2^5)^*, w of order 3 in GF(2^10); sorted.
inline std::vector<Elem> ekp_admissible_u(const FieldCtx& ctx) {
  if (ctx.degree() != 10) throw ConstraintViolated("EKP binomial requires n = 10");
  const Elem w = ctx.element_of_order(3);
  const Elem w2 = ctx.sqr(w);
  std::vector<Elem> out;
  for (Elem v : ctx.subfield_elements(5)) {
    if (v.is_zero()) continue;
    out.push_back(ctx.mul(w, v));
    out.push_back(ctx.mul(w2, v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline std::uint64_t pow2(std::uint64_t e) {
  if (e >= 63) throw ConstraintViolated("exponent 2^" + std::to_string(e) + " overflows");
  return std::uint64_t{1} << e;
}

inline void require(bool ok, const std::string& condition) {
  if (!ok) throw ConstraintViolated("constraint violated: " + condition);
}

/// x^e and x^e' agree as maps on GF(q) when e' = ((e-1) mod (q-1)) + 1.
inline std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t q) {
  return e < q ? e : ((e - 1) % (q - 1)) + 1;
}

}  // namespace detail

/// The exponent of a monomial family, or the binomial for EKP and BCL.
inline std::variant<std::uint64_t, UniPoly> family_exponent(const FamilySpec& spec) {
  using detail::pow2;
  using detail::require;
  const std::uint64_t r = spec.r;
  const auto n = static_cast<std::uint64_t>(spec.n);
  require(spec.n >= 1, "n >= 1");
  switch (spec.family) {
    case Family::Gold:
      require(r >= 1, "r >= 1");
      require(std::gcd(r, n) == 1, "(r,n)=1");
      return pow2(r) + 1;
    case Family::KasamiWelch:
      require(r >= 1, "r >= 1");
      require(n % 2 == 1, "n odd");
      require(std::gcd(r, n) == 1, "(r,n)=1");
      return pow2(2 * r) - pow2(r) + 1;
    case Family::Welch:
      require(n == 2 * r + 1, "n=2r+1");
      return pow2(r) + 3;
    case Family::Niho:
      require(n == 2 * r + 1, "n=2r+1");
      if (r % 2 == 0) return pow2(r) + pow2(r / 2) - 1;
      return pow2(r) + pow2((3 * r + 1) / 2) - 1;
    case Family::Inverse:
      require(n == 2 * r + 1, "n=2r+1");
      return pow2(2 * r) - 1;
    case Family::Dobbertin:
      require(r >= 1, "r >= 1");
      require(n == 5 * r, "n=5r");
      return pow2(4 * r) + pow2(3 * r) + pow2(2 * r) + pow2(r) - 1;
    case Family::EKPBinomial: {
      require(n == 10, "n=10");
      const auto ctx = FieldCtx::create(10, spec.modulus);
      const auto admissible = ekp_admissible_u(ctx);
      const Elem u = spec.coefficient.value_or(admissible.front());
      require(std::binary_search(admissible.begin(), admissible.end(), u),
              "u in w*GF(2^5)^* or w^2*GF(2^5)^* with w of order 3");
      UniPoly f = UniPoly::monomial(ctx, 3);
      f.add_term(36, u);
      return f;
    }
    case Family::BCLFamily: {
      const std::uint64_t k = spec.k, s = spec.s;
      require(n == 3 * k, "n=3k");
      require(k >= 4, "k>=4");
      require(std::gcd(k, std::uint64_t{3}) == 1, "(k,3)=1");
      require(s >= 1 && std::gcd(s, 3 * k) == 1, "(s,3k)=1");
      const auto ctx = FieldCtx::create(spec.n, spec.modulus);
      const std::uint64_t i = (s * k) % 3;
      const std::uint64_t m = 3 - i;
      const std::uint64_t w_order = pow2(2 * k) + pow2(k) + 1;
      Elem w;
      if (spec.coefficient) {
        w = ctx.element(spec.coefficient->bits);
        require(!w.is_zero() && ctx.element_order(w) == w_order, "w of order 2^(2k)+2^k+1");
      } else {
        w = ctx.element_of_order(w_order);
      }
      const std::uint64_t q = ctx.size();
      UniPoly f = UniPoly::monomial(ctx, detail::reduce_exponent(pow2(s) + 1, q));
      f.add_term(detail::reduce_exponent(pow2(i * k) + pow2(m * k + s), q), w);
      return f;
    }
  }
  throw std::logic_error("unknown family");
}

/// The family's function on GF(2^n) as a polynomial.
inline UniPoly family_function(const FamilySpec& spec) {
  auto result = family_exponent(spec);
  if (auto* poly = std::get_if<UniPoly>(&result)) return *poly;
  const auto ctx = FieldCtx::create(spec.n, spec.modulus);
  return UniPoly::monomial(ctx, detail::reduce_exponent(std::get<std::uint64_t>(result), ctx.size()));
}

// ---------------------------------------------------------------------------
// Triple scan and point counting
// ---------------------------------------------------------------------------

using Triple = std::array<Elem, 3>;

struct Prop1Result {
  bool holds = true;
  std::optional<Triple> witness;  ///< lexicographically first violating (x, y, z)
};

/// Checks that every zero of f(x)+f(y)+f(z)+f(x+y+z) lies on (x+y)(x+z)(y+z) = 0.
/// The answer is cross-checked against is_apn; a disagreement is an internal error.
inline Prop1Result prop1_check(const UniPoly& f) {
  const auto& ctx = f.ctx();
  if (ctx.degree() > kMaxTripleScanDegree) {
    throw DomainError("field too large for the triple scan (n <= 7)");
  }
  const auto v = value_table(f);
  const std::uint32_t q = static_cast<std::uint32_t>(ctx.size());
  Prop1Result result;
  for (std::uint32_t x = 0; x < q && result.holds; ++x) {
    for (std::uint32_t y = 0; y < q && result.holds; ++y) {
      if (y == x) continue;
      for (std::uint32_t z = 0; z < q; ++z) {
        if (z == x || z == y) continue;
        if ((v[x] ^ v[y] ^ v[z] ^ v[x ^ y ^ z]) == 0) {
          result.holds = false;
          result.witness = Triple{Elem{x}, Elem{y}, Elem{z}};
          break;
        }
      }
    }
  }
  if (result.holds != is_apn(f)) {
    throw std::logic_error("surface containment disagrees with the differential spectrum");
  }
  return result;
}

/// 4((d-3)q+1), the point bound for an absolutely irreducible surface of an APN f.
inline std::uint64_t point_count_bound(std::uint64_t d, std::uint64_t q) {
  if (d < 3) throw DomainError("bound requires d >= 3");
  return 4 * ((d - 3) * q + 1);
}

struct PointCount {
  std::uint64_t affine = 0;
  std::uint64_t at_infinity = 0;
  std::uint64_t total() const { return affine + at_infinity; }
};

namespace detail {

/// Evaluates a fixed TriPoly at many points of a small field using
/// per-exponent power tables.
class SurfaceEvaluator {
 public:
  explicit SurfaceEvaluator(const TriPoly& p) : ctx_(p.ctx()) {
    const std::uint32_t q = static_cast<std::uint32_t>(ctx_.size());
    for (const auto& [m, c] : p.terms()) {
      by_x_[m.exp[0]].push_back({m.exp[1], m.exp[2], c});
      for (auto e : m.exp) {
        auto [it, ins] = powers_.try_emplace(e);
        if (!ins) continue;
        it->second.resize(q);
        for (std::uint32_t v = 0; v < q; ++v) it->second[v] = ctx_.pow(Elem{v}, e);
      }
    }
  }

  /// Number of x with p(x, y, z) = 0 for fixed (y, z).
  std::uint64_t count_zeros_in_x(Elem y, Elem z) const {
    std::vector<std::pair<const std::vector<Elem>*, Elem>> row;
    for (const auto& [i, yz_terms] : by_x_) {
      Elem acc = kZero;
      for (const auto& t : yz_terms) {
        acc += ctx_.mul(t.c, ctx_.mul(powers_.at(t.j)[y.bits], powers_.at(t.k)[z.bits]));
      }
      if (!acc.is_zero()) row.emplace_back(&powers_.at(i), acc);
    }
    std::uint64_t zeros = 0;
    for (std::uint32_t x = 0; x < ctx_.size(); ++x) {
      Elem acc = kZero;
      for (const auto& [pw, c] : row) acc += ctx_.mul(c, (*pw)[x]);
      if (acc.is_zero()) ++zeros;
    }
    return zeros;
  }

  Elem eval(Elem x, Elem y, Elem z) const {
    Elem acc = kZero;
    for (const auto& [i, yz_terms] : by_x_) {
      for (const auto& t : yz_terms) {
        acc += ctx_.mul(t.c, ctx_.mul(powers_.at(i)[x.bits],
                                      ctx_.mul(powers_.at(t.j)[y.bits], powers_.at(t.k)[z.bits])));
      }
    }
    return acc;
  }

 private:
  struct YZTerm {
    std::uint32_t j, k;
    Elem c;
  };
  FieldCtx ctx_;
  std::map<std::uint32_t, std::vector<YZTerm>> by_x_;
  std::map<std::uint32_t, std::vector<Elem>> powers_;
};

}  // namespace detail

/// Rational points of the projective closure of phi_f = 0 in P^3: all affine
/// (x, y, z) plus the zeros of the top homogeneous part over P^2, one
/// representative per class (first nonzero coordinate equal to 1).
inline PointCount projective_point_count(const UniPoly& f, unsigned jobs = 1) {
  const auto& ctx = f.ctx();
  if (ctx.degree() > kMaxTripleScanDegree) {
    throw DomainError("field too large for point counting (n <= 7)");
  }
  if (f.degree() < 5) throw DomainError("point counting requires deg(f) >= 5");
  const TriPoly phi = build_phi(f);
  const std::uint32_t q = static_cast<std::uint32_t>(ctx.size());

  PointCount out;
  const detail::SurfaceEvaluator affine(phi);
  std::vector<std::uint64_t> per_y(q, 0);
  detail::parallel_slices(0, q, jobs, [&](std::uint64_t y_begin, std::uint64_t y_end) {
    for (auto y = y_begin; y < y_end; ++y) {
      for (std::uint32_t z = 0; z < q; ++z) {
        per_y[y] += affine.count_zeros_in_x(Elem{static_cast<std::uint32_t>(y)}, Elem{z});
      }
    }
  });
  out.affine = std::accumulate(per_y.begin(), per_y.end(), std::uint64_t{0});

  const TriPoly top = leading_form(phi);
  if (!top.is_zero()) {
    const detail::SurfaceEvaluator infinity(top);
    for (std::uint32_t y = 0; y < q; ++y) {
      for (std::uint32_t z = 0; z < q; ++z) {
        if (infinity.eval(kOne, Elem{y}, Elem{z}).is_zero()) ++out.at_infinity;
      }
    }
    for (std::uint32_t z = 0; z < q; ++z) {
      if (infinity.eval(kZero, kOne, Elem{z}).is_zero()) ++out.at_infinity;
    }
    if (infinity.eval(kZero, kZero, kOne).is_zero()) ++out.at_infinity;
  }
  return out;
}

}  // namespace apnforge
