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

// Bundled verification suites. Each check recomputes an identity or compares
// two independent computations and reports the outcome with its wall time.

#include <chrono>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"
#include "apnforge/phi.hpp"
#include "apnforge/screen.hpp"

namespace apnforge {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gold-factorization", "coprimality", "families",
                                                 "prop1",              "lucas",       "even-identity"};
  return names;
}

namespace detail {

using CheckBody = std::function<bool(std::string&)>;

inline CheckResult timed_check(std::string name, const CheckBody& body) {
  CheckResult r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  r.passed = body(r.detail);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline bool all_counts_even(const DiffSpectrum& s) {
  for (const auto& [count, freq] : s.histogram) {
    if (count % 2 != 0) return false;
  }
  return true;
}

}  // namespace detail

// --- gold-factorization -----------------------------------------------------

inline std::vector<CheckResult> suite_gold_factorization() {
  std::vector<CheckResult> out;
  for (int k = 2; k <= 5; ++k) {
    out.push_back(detail::timed_check("gold k=" + std::to_string(k), [k](std::string& detail) {
      const FieldCtx ctx = FieldCtx::create(k);
      const TriPoly product = gold_product(k, ctx);
      const TriPoly phi = build_phi_j((1u << k) + 1, ctx);
      detail = std::to_string(phi.size()) + " terms, degree " + std::to_string(phi.total_degree());
      return product == phi;
    }));
  }
  return out;
}

// --- coprimality ------------------------------------------------------------

inline std::vector<CheckResult> suite_coprimality() {
  std::vector<CheckResult> out;
  for (std::uint32_t k = 2; k <= 5; ++k) {
    out.push_back(detail::timed_check("formula vs brute force k=" + std::to_string(k), [k](std::string& detail) {
      const FieldCtx ambient = FieldCtx::create(static_cast<int>(k));
      int cases = 0;
      std::vector<std::uint64_t> mismatches;
      for (std::uint64_t d = 3; d <= 65; d += 2) {
        ++cases;
        if (coprime_gold_formula(k, d) != coprime_bruteforce(k, d, ambient)) mismatches.push_back(d);
      }
      detail = std::to_string(cases) + " odd d in [3,65]";
      for (auto d : mismatches) detail += ", mismatch d=" + std::to_string(d);
      return mismatches.empty();
    }));
  }
  out.push_back(detail::timed_check("named cases", [](std::string& detail) {
    const bool a = coprime_bruteforce(2, 9, FieldCtx::create(2));
    const bool b = !coprime_bruteforce(4, 5, FieldCtx::create(4));
    const bool c = !coprime_bruteforce(3, 9, FieldCtx::create(3));
    const bool e = !coprime_bruteforce(2, 10, FieldCtx::create(2));
    detail = "(2,9) coprime, (4,5) not, (3,9) not, (2,10) not";
    return a && b && c && e;
  }));
  return out;
}

// --- families ---------------------------------------------------------------

struct FamilyCase {
  std::string label;
  FamilySpec spec;
};

inline FamilySpec monomial_family(Family family, std::uint32_t r, int n) {
  FamilySpec spec;
  spec.family = family;
  spec.r = r;
  spec.n = n;
  return spec;
}

inline std::vector<FamilyCase> apn_family_cases() {
  using F = Family;
  return {
      {"Gold r=1 n=4", monomial_family(F::Gold, 1, 4)},
      {"Gold r=3 n=10", monomial_family(F::Gold, 3, 10)},
      {"Kasami-Welch r=2 n=5", monomial_family(F::KasamiWelch, 2, 5)},
      {"Welch r=2 n=5", monomial_family(F::Welch, 2, 5)},
      {"Niho r=2 n=5", monomial_family(F::Niho, 2, 5)},
      {"Inverse r=2 n=5", monomial_family(F::Inverse, 2, 5)},
      {"Dobbertin r=1 n=5", monomial_family(F::Dobbertin, 1, 5)},
  };
}

/// Sampled EKP coefficients: evenly spaced through the sorted admissible set.
inline std::vector<Elem> ekp_sample(const FieldCtx& ctx, std::size_t count) {
  const auto all = ekp_admissible_u(ctx);
  std::vector<Elem> out;
  for (std::size_t i = 0; i < count && i < all.size(); ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

inline std::vector<CheckResult> suite_families(unsigned jobs = 1) {
  std::vector<CheckResult> out;
  for (const auto& c : apn_family_cases()) {
    out.push_back(detail::timed_check(c.label, [&c, jobs](std::string& detail) {
      const UniPoly f = family_function(c.spec);
      const auto s = diff_spectrum(f, jobs);
      detail = render(f) + ", uniformity " + std::to_string(s.uniformity);
      return s.uniformity == 2 && detail::all_counts_even(s);
    }));
  }
  for (auto [n, d] : {std::pair{4, 5}, std::pair{6, 9}}) {
    out.push_back(detail::timed_check("x^" + std::to_string(d) + " n=" + std::to_string(n) + " not APN",
                                      [n, d, jobs](std::string& detail) {
                                        const auto s = diff_spectrum(
                                            UniPoly::monomial(FieldCtx::create(n), static_cast<std::uint64_t>(d)), jobs);
                                        detail = "uniformity " + std::to_string(s.uniformity);
                                        return s.uniformity >= 4 && detail::all_counts_even(s);
                                      }));
  }
  out.push_back(detail::timed_check("EKP x^3+u*x^36 n=10", [jobs](std::string& detail) {
    const FieldCtx ctx = FieldCtx::create(10);
    bool ok = true;
    for (Elem u : ekp_sample(ctx, 4)) {
      FamilySpec spec = monomial_family(Family::EKPBinomial, 0, 10);
      spec.coefficient = u;
      const auto s = diff_spectrum(family_function(spec), jobs);
      detail += (detail.empty() ? "u=" : ", u=") + to_hex(u) + ":" + std::to_string(s.uniformity);
      ok = ok && s.uniformity == 2 && detail::all_counts_even(s);
    }
    return ok;
  }));
  return out;
}

// --- prop1 ------------------------------------------------------------------

inline std::vector<CheckResult> suite_prop1() {
  std::vector<CheckResult> out;
  for (int n : {4, 5}) {
    for (const char* text : {"x^3", "x^5", "x^7", "x^9+x^7", "x^13"}) {
      out.push_back(detail::timed_check(std::string(text) + " n=" + std::to_string(n), [n, text](std::string& detail) {
        const UniPoly f = parse_unipoly(text, FieldCtx::create(n));
        const bool apn = is_apn(f);
        // prop1_check itself throws if the scan and the spectrum disagree.
        const auto r = prop1_check(f);
        detail = std::string("apn ") + (apn ? "yes" : "no") + ", contained " + (r.holds ? "yes" : "no");
        return r.holds == apn;
      }));
    }
  }
  return out;
}

// --- lucas ------------------------------------------------------------------

inline std::vector<CheckResult> suite_lucas() {
  std::vector<CheckResult> out;
  out.push_back(detail::timed_check("pascal mod 2, a,b <= 512", [](std::string& detail) {
    constexpr int kMax = 512;
    std::vector<std::uint8_t> row{1}, next;
    int mismatches = 0;
    for (int a = 0; a <= kMax; ++a) {
      for (int b = 0; b <= a; ++b) {
        if (lucas_mod2(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)) != (row[static_cast<std::size_t>(b)] == 1)) ++mismatches;
      }
      next.assign(static_cast<std::size_t>(a) + 2, 0);
      next[0] = 1;
      for (int b = 1; b <= a + 1; ++b) {
        const auto i = static_cast<std::size_t>(b);
        next[i] = static_cast<std::uint8_t>((b <= a ? row[i] : 0) ^ row[i - 1]);
      }
      row.swap(next);
    }
    detail = std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
  }));
  out.push_back(detail::timed_check("C(2^i*l+1, 2^i+1) = 1, 1 <= i <= 4, odd l <= 31", [](std::string& detail) {
    int cases = 0;
    // i >= 1: the pattern is about odd m = 2^i*l+1.
    for (std::uint64_t i = 1; i <= 4; ++i) {
      for (std::uint64_t l = 1; l <= 31; l += 2) {
        ++cases;
        if (!lucas_mod2((l << i) + 1, (std::uint64_t{1} << i) + 1)) {
          detail = "fails at i=" + std::to_string(i) + " l=" + std::to_string(l);
          return false;
        }
      }
    }
    detail = std::to_string(cases) + " cases";
    return true;
  }));
  return out;
}

// --- even-identity ----------------------------------------------------------

inline std::vector<CheckResult> suite_even_identity() {
  std::vector<CheckResult> out;
  out.push_back(detail::timed_check("phi_2m = D*phi_m^2, m <= 32", [](std::string& detail) {
    const FieldCtx ctx = FieldCtx::create(1);
    const TriPoly d = denominator_surface(ctx);
    for (std::uint32_t m = 1; m <= 32; ++m) {
      if (!(build_phi_j(2 * m, ctx) == d * build_phi_j(m, ctx).frobenius())) {
        detail = "fails at m=" + std::to_string(m);
        return false;
      }
    }
    detail = "32 cases";
    return true;
  }));
  out.push_back(detail::timed_check("phi_10 = D*phi_5^2 via even_reduction", [](std::string& detail) {
    const auto r = even_reduction(10, FieldCtx::create(1));
    detail = "odd core " + std::to_string(r.odd_core) + ", square exponent " + std::to_string(r.square_exponent);
    return r.odd_core == 5 && r.square_exponent == 2;
  }));
  return out;
}

/// Runs one named suite, or every suite for "all". Progress goes to `progress`.
inline std::vector<CheckResult> verify_suite(const std::string& name, unsigned jobs = 1,
                                             std::ostream* progress = nullptr) {
  auto run_one = [&](const std::string& s) -> std::vector<CheckResult> {
    if (progress) *progress << "running suite " << s << '\n';
    if (s == "gold-factorization") return suite_gold_factorization();
    if (s == "coprimality") return suite_coprimality();
    if (s == "families") return suite_families(jobs);
    if (s == "prop1") return suite_prop1();
    if (s == "lucas") return suite_lucas();
    if (s == "even-identity") return suite_even_identity();
    throw DomainError("unknown suite '" + s + "'");
  };
  if (name != "all") return run_one(name);
  std::vector<CheckResult> all;
  for (const auto& s : suite_names()) {
    for (auto& r : run_one(s)) {
      r.name = s + ": " + r.name;
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace apnforge
