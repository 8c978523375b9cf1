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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time limit.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "apnforge/ddt.hpp"
#include "apnforge/phi.hpp"
#include "apnforge/screen.hpp"
#include "apnforge/verify.hpp"

using namespace apnforge;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<bool(std::string&)> body;
};

// Every spectrum computed by the gate goes through here so the evenness
// criterion can audit all of them.
struct SpectrumLedger {
  std::uint64_t spectra = 0;
  std::uint64_t odd_counts = 0;
} g_ledger;

DiffSpectrum audited_spectrum(const UniPoly& f, unsigned jobs = 1) {
  DiffSpectrum s = diff_spectrum(f, jobs);
  ++g_ledger.spectra;
  for (const auto& row : s.per_difference) {
    for (const auto& [count, freq] : row) {
      if (count % 2 != 0) ++g_ledger.odd_counts;
    }
  }
  return s;
}

bool criterion_gold(std::string& detail) {
  for (int k = 2; k <= 5; ++k) {
    const FieldCtx ctx = FieldCtx::create(k);
    if (!(gold_product(k, ctx) == build_phi_j((1u << k) + 1, ctx))) {
      detail = "mismatch at k=" + std::to_string(k);
      return false;
    }
  }
  detail = "k=2..5 term-for-term";
  return true;
}

bool criterion_homogeneity(std::string& detail) {
  const FieldCtx f2 = FieldCtx::create(1);
  int nonzero = 0;
  for (std::uint32_t j = 3; j <= 65; ++j) {
    const TriPoly p = build_phi_j(j, f2);
    if (p.is_zero()) continue;
    ++nonzero;
    if (!p.is_homogeneous() || p.total_degree() != static_cast<std::int64_t>(j) - 3) {
      detail = "j=" + std::to_string(j);
      return false;
    }
  }
  detail = std::to_string(nonzero) + " nonzero phi_j, all homogeneous of degree j-3";
  return true;
}

bool criterion_even_identity(std::string& detail) {
  const FieldCtx f2 = FieldCtx::create(1);
  const TriPoly d = denominator_surface(f2);
  for (std::uint32_t m = 1; m <= 32; ++m) {
    if (!(build_phi_j(2 * m, f2) == d * build_phi_j(m, f2).frobenius())) {
      detail = "m=" + std::to_string(m);
      return false;
    }
  }
  detail = "m=1..32";
  return true;
}

bool criterion_coprimality(std::string& detail) {
  int cases = 0, mismatches = 0;
  for (std::uint32_t k = 2; k <= 5; ++k) {
    const FieldCtx ambient = FieldCtx::create(static_cast<int>(k));
    for (std::uint64_t d = 3; d <= 65; d += 2) {
      ++cases;
      if (coprime_gold_formula(k, d) != coprime_bruteforce(k, d, ambient)) {
        ++mismatches;
        detail += "mismatch k=" + std::to_string(k) + " d=" + std::to_string(d) + "; ";
      }
    }
  }
  const bool named = coprime_bruteforce(2, 9, FieldCtx::create(2)) && !coprime_bruteforce(4, 5, FieldCtx::create(4)) &&
                     !coprime_bruteforce(3, 9, FieldCtx::create(3));
  detail += std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches, named cases " +
            (named ? "ok" : "WRONG");
  return cases == 128 && mismatches == 0 && named;
}

bool criterion_families(std::string& detail) {
  bool ok = true;
  for (const auto& c : apn_family_cases()) {
    const auto s = audited_spectrum(family_function(c.spec), 4);
    detail += c.label + ":" + std::to_string(s.uniformity) + " ";
    ok = ok && s.uniformity == 2;
  }
  for (auto [n, d] : {std::pair{4, 5}, std::pair{6, 9}}) {
    const auto s = audited_spectrum(UniPoly::monomial(FieldCtx::create(n), static_cast<std::uint64_t>(d)));
    detail += "x^" + std::to_string(d) + "/n=" + std::to_string(n) + ":" + std::to_string(s.uniformity) + " ";
    ok = ok && s.uniformity >= 4;
  }
  return ok;
}

bool criterion_ekp(std::string& detail) {
  const FieldCtx ctx = FieldCtx::create(10);
  const auto sample = ekp_sample(ctx, 8);
  int apn = 0;
  for (Elem u : sample) {
    FamilySpec spec = monomial_family(Family::EKPBinomial, 0, 10);
    spec.coefficient = u;
    if (audited_spectrum(family_function(spec), 4).uniformity == 2) ++apn;
  }
  detail = std::to_string(apn) + "/" + std::to_string(sample.size()) + " sampled u give uniformity 2";
  return sample.size() >= 4 && apn == static_cast<int>(sample.size());
}

bool criterion_prop1(std::string& detail) {
  int agree = 0, total = 0;
  for (int n : {4, 5}) {
    for (const char* text : {"x^3", "x^5", "x^7", "x^9+x^7", "x^13"}) {
      const UniPoly f = parse_unipoly(text, FieldCtx::create(n));
      const bool apn = audited_spectrum(f).uniformity == 2;
      ++total;
      if (prop1_check(f).holds == apn) ++agree;
    }
  }
  detail = std::to_string(agree) + "/" + std::to_string(total) + " agree";
  return agree == total;
}

bool criterion_lucas(std::string& detail) {
  bool ok = true;
  for (const auto& r : suite_lucas()) {
    ok = ok && r.passed;
    detail += r.detail + "; ";
  }
  return ok;
}

bool criterion_point_bound(std::string& detail) {
  bool ok = true;
  for (int n : {5, 7}) {
    const UniPoly f = parse_unipoly("x^9+x^7", FieldCtx::create(n));
    const bool apn = audited_spectrum(f, 4).uniformity == 2;
    const auto pc = projective_point_count(f, 4);
    const auto bound = point_count_bound(9, f.ctx().size());
    const bool holds = !apn || pc.total() <= bound;
    detail += "n=" + std::to_string(n) + ": apn=" + (apn ? "yes" : "no") + " points=" + std::to_string(pc.total()) +
              " bound=" + std::to_string(bound) + (apn ? "" : " (vacuous)") + "; ";
    ok = ok && holds;
  }
  return ok;
}

json screen_table() {
  json table = json::array();
  const FieldCtx f2 = FieldCtx::create(1);
  for (const char* text : {"x^3", "x^7+x^5", "x^6+x^3", "x^9+x^7", "x^9+x^5", "x^17+x^5", "x^17+x^10", "x^12+x^3"}) {
    table.push_back({{"poly", text}, {"verdict", to_json(screen_exceptional(parse_unipoly(text, f2)))}});
  }
  return table;
}

bool criterion_screen(std::string& detail) {
  const std::string path = std::string(APNFORGE_GOLDEN_DIR) + "/screen_table.json";
  std::ifstream in(path);
  if (!in) {
    detail = "missing golden file " + path;
    return false;
  }
  std::stringstream golden;
  golden << in.rdbuf();
  const std::string actual = screen_table().dump(2) + "\n";
  if (actual != golden.str()) {
    detail = "JSON differs from golden";
    return false;
  }
  // The golden bytes must also say what the verdict table says.
  const json t = json::parse(actual);
  const std::vector<std::pair<std::string, json>> expected = {
      {"ConjecturedExceptional", "Conjecture (Gold monomial)"},
      {"NotExceptional", "Thm 2"},
      {"NotExceptional", "Thm 3"},
      {"NotExceptional", "Thm 11"},
      {"NotExceptional", "Thm 11"},
      {"Inconclusive", nullptr},
      {"Inconclusive", nullptr},
      {"Informational", "Degree-12 classification (not APN for large n, or CCZ-equivalent to x^3)"},
  };
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& v = t[i]["verdict"];
    if (v["status"] != expected[i].first || v["theorem"] != expected[i].second) {
      detail = "wrong verdict for " + t[i]["poly"].get<std::string>();
      return false;
    }
  }
  bool noted = false;
  for (const auto& e : t[6]["verdict"]["trace"]) noted = noted || e["test"] == "top_term_never_coprime_note";
  detail = std::to_string(expected.size()) + " verdicts byte-exact";
  if (!noted) detail = "x^17+x^10 trace lacks the top-term note";
  return noted;
}

bool criterion_theorem1(std::string& detail) {
  const int n9 = theorem1_min_field(9), n13 = theorem1_min_field(13);
  const bool boundary = !field_size_inequality(9, n9 - 1) && !field_size_inequality(13, n13 - 1) &&
                        field_size_inequality(9, n9) && field_size_inequality(13, n13);
  detail = "d=9 -> " + std::to_string(n9) + ", d=13 -> " + std::to_string(n13);
  return n9 == 17 && n13 == 20 && boundary;
}

bool criterion_evenness(std::string& detail) {
  // Also sweep a fixed set of non-APN polynomials, where large counts occur.
  for (int n = 2; n <= 9; ++n) {
    const FieldCtx ctx = FieldCtx::create(n);
    for (const char* text : {"x^5", "x^6+x^3", "x^9+x^7", "x^12+0x1*x^3+x", "x^15+x^10+x^5"}) {
      audited_spectrum(parse_unipoly(text, ctx));
    }
  }
  detail = std::to_string(g_ledger.spectra) + " spectra, " + std::to_string(g_ledger.odd_counts) + " odd counts";
  return g_ledger.spectra > 0 && g_ledger.odd_counts == 0;
}

}  // namespace

int main() {
  // Criterion 8 runs last so it sees every spectrum computed by the others.
  std::vector<Criterion> criteria = {
      {1, "Gold factorization", 10, criterion_gold},
      {2, "Homogeneity and degree of phi_j", 10, criterion_homogeneity},
      {3, "Even identity phi_2m = D*phi_m^2", 30, criterion_even_identity},
      {4, "Coprimality formula vs brute force", 120, criterion_coprimality},
      {5, "APN family table", 120, criterion_families},
      {6, "EKP binomial over GF(2^10)", 300, criterion_ekp},
      {7, "Surface containment iff APN", 120, criterion_prop1},
      {9, "Lucas mod 2", 5, criterion_lucas},
      {10, "Point bound implication", 180, criterion_point_bound},
      {11, "Screen regression (golden JSON)", 60, criterion_screen},
      {12, "Field-size threshold", 1, criterion_theorem1},
      {8, "Evenness of solution counts", 60, criterion_evenness},
  };

  std::vector<std::string> lines(13);
  bool all = true;
  for (const auto& c : criteria) {
    std::string detail;
    bool passed = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      passed = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    if (!in_time) detail += " [time limit exceeded]";
    passed = passed && in_time;
    all = all && passed;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %2d  %-38s %8.3fs / %4.0fs  ", passed ? "PASS" : "FAIL", c.id,
                  c.title.c_str(), secs, c.limit_seconds);
    lines[static_cast<std::size_t>(c.id)] = head + detail;
    std::cerr << "finished criterion " << c.id << '\n';
  }
  for (std::size_t i = 1; i < lines.size(); ++i) std::cout << lines[i] << '\n';
  std::cout << (all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILED") << '\n';
  return all ? 0 : 1;
}
