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

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with string streams.
//
// Exit status: 0 success, 1 a verification check failed, 2 usage or parse
// error, 3 domain error (constraint violated, field too large, ...), 4 internal
// error.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "apnforge/ddt.hpp"
#include "apnforge/error.hpp"
#include "apnforge/field.hpp"
#include "apnforge/io.hpp"
#include "apnforge/phi.hpp"
#include "apnforge/poly.hpp"
#include "apnforge/screen.hpp"
#include "apnforge/verify.hpp"

namespace apnforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitInternal = 4;

struct UsageError : std::runtime_error {
  UsageError(std::string flag, const std::string& message)
      : std::runtime_error(message), flag(std::move(flag)) {}
  std::string flag;
};

struct Options {
  std::optional<int> n;
  std::optional<std::string> modulus;
  std::optional<std::string> poly;
  std::optional<std::uint32_t> j, k, i, r, s;
  std::optional<std::uint64_t> d, l;
  std::optional<std::string> u;
  std::optional<std::string> family;
  std::string format = "table";
  unsigned jobs = 1;
  bool full = false;
  bool check = false;
  std::string suite = "all";
};

inline const std::map<std::string, std::string>& verb_examples() {
  static const std::map<std::string, std::string> examples = {
      {"ddt", "apnforge ddt --n 4 --poly \"x^5\" --format json"},
      {"apn", "apnforge apn --n 10 --poly \"x^3\""},
      {"phi", "apnforge phi --j 5"},
      {"gold", "apnforge gold --k 3"},
      {"coprime", "apnforge coprime --k 4 --d 5"},
      {"screen", "apnforge screen --poly \"x^9+x^7\" --format json"},
      {"points", "apnforge points --n 5 --poly \"x^9+x^7\""},
      {"audit", "apnforge audit --k 2 --i 1 --l 3"},
      {"families", "apnforge families --family gold --r 3 --n 10 --check"},
      {"verify", "apnforge verify --suite lucas"},
  };
  return examples;
}

namespace detail {

inline std::uint64_t parse_hex_flag(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  const bool prefixed = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  try {
    v = std::stoull(prefixed ? text.substr(2) : std::string(), &used, 16);
  } catch (const std::exception&) {
    used = 0;
  }
  if (!prefixed || used != text.size() - 2) {
    throw UsageError(flag, flag + ": expected a hex literal such as 0x13, got '" + text + "'");
  }
  return v;
}

inline FieldCtx field_from(const Options& o, std::optional<int> fallback_n = std::nullopt) {
  const auto n = o.n ? o.n : fallback_n;
  if (!n) throw UsageError("--n", "--n is required");
  std::optional<std::uint64_t> modulus;
  if (o.modulus) modulus = parse_hex_flag("--modulus", *o.modulus);
  return FieldCtx::create(*n, modulus);
}

inline UniPoly poly_from(const Options& o, const FieldCtx& ctx) {
  if (!o.poly) throw UsageError("--poly", "--poly is required");
  try {
    return parse_unipoly(*o.poly, ctx);
  } catch (const ParseError& e) {
    throw UsageError("--poly", std::string("--poly: ") + e.what());
  }
}

template <typename T>
T required(const std::optional<T>& v, const std::string& flag) {
  if (!v) throw UsageError(flag, flag + " is required");
  return *v;
}

inline void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw UsageError("--format", "--format " + o.format + " is not supported here (use " + list + ")");
}

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- verbs -------------------------------------------------------------------

inline int cmd_spectrum(const Options& o, bool apn_only, std::ostream& out, std::ostream& err) {
  require_format(o, {"table", "json", "csv"});
  const FieldCtx ctx = field_from(o);
  const UniPoly f = poly_from(o, ctx);
  if (ctx.degree() >= 14) err << "scanning " << ctx.size() - 1 << " differences over GF(2^" << ctx.degree() << ")\n";
  const DiffSpectrum s = diff_spectrum(f, o.jobs);
  if (o.full && apn_only) throw UsageError("--full", "--full applies to the ddt verb only");
  if (o.full) {
    const auto table = full_ddt(f);
    if (o.format == "json") {
      json j = spectrum_json(f, s);
      j["table"] = table;
      emit_json(out, j);
    } else {
      if (o.format == "csv") out << "a,b,count\n";
      for (std::size_t a = 0; a < table.size(); ++a) {
        for (std::size_t b = 0; b < table[a].size(); ++b) {
          if (o.format == "csv") {
            out << a << ',' << b << ',' << table[a][b] << '\n';
          } else {
            out << (b ? " " : "") << table[a][b];
          }
        }
        if (o.format == "table") out << '\n';
      }
    }
    return kExitOk;
  }
  if (o.format == "json") {
    emit_json(out, spectrum_json(f, s));
  } else if (o.format == "csv") {
    write_spectrum_csv(out, s);
  } else if (apn_only) {
    out << render(f) << " over GF(2^" << ctx.degree() << "): " << (s.uniformity == 2 ? "APN" : "not APN")
        << " (uniformity " << s.uniformity << ")\n";
  } else {
    write_spectrum_table(out, f, s);
  }
  return kExitOk;
}

inline int cmd_phi(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  if (o.j && o.poly) throw UsageError("--j", "--j and --poly are mutually exclusive");
  const FieldCtx ctx = field_from(o, 1);
  std::string source;
  TriPoly phi(ctx);
  if (o.j) {
    phi = build_phi_j(*o.j, ctx);
    source = "x^" + std::to_string(*o.j);
  } else {
    const UniPoly f = poly_from(o, ctx);
    phi = build_phi(f);
    source = render(f);
  }
  if (o.format == "json") {
    json j;
    j["poly"] = source;
    j["phi"] = render(phi);
    j["degree"] = phi.is_zero() ? json(nullptr) : json(phi.total_degree());
    j["terms"] = phi.size();
    emit_json(out, j);
  } else {
    out << render(phi) << '\n';
  }
  return kExitOk;
}

inline int cmd_gold(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const auto k = required(o.k, "--k");
  if (k < 1 || k > 8) throw UsageError("--k", "--k must be in [1, 8]");
  const FieldCtx ctx = field_from(o, static_cast<int>(k));
  const TriPoly product = gold_product(static_cast<int>(k), ctx);
  const TriPoly phi = build_phi_j((1u << k) + 1, ctx);
  if (o.format == "json") {
    json j;
    j["k"] = k;
    j["n"] = ctx.degree();
    j["factors"] = (std::uint64_t{1} << k) - 2;
    j["product"] = render(product);
    j["equals_phi"] = product == phi;
    emit_json(out, j);
  } else {
    out << render(product) << '\n';
    out << "equals phi_" << (1u << k) + 1 << ": " << (product == phi ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

inline int cmd_coprime(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const auto k = required(o.k, "--k");
  const auto d = required(o.d, "--d");
  if (k < 1 || k > 24) throw UsageError("--k", "--k must be in [1, 24]");
  const FieldCtx ambient = field_from(o, static_cast<int>(k));
  std::optional<bool> formula;
  if (d % 2 == 1) formula = coprime_gold_formula(k, d);
  const bool brute = coprime_bruteforce(k, d, ambient);
  json j;
  j["formula"] = formula ? json(*formula) : json(nullptr);
  j["bruteforce"] = brute;
  j["agree"] = formula ? json(*formula == brute) : json(nullptr);
  if (o.format == "json") {
    emit_json(out, j);
  } else {
    out << "formula     " << (formula ? (*formula ? "coprime" : "not coprime") : "n/a (even d)") << '\n';
    out << "bruteforce  " << (brute ? "coprime" : "not coprime") << '\n';
    out << "agree       " << (formula ? (*formula == brute ? "yes" : "NO") : "n/a") << '\n';
  }
  return kExitOk;
}

inline int cmd_screen(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const FieldCtx ctx = field_from(o, 1);
  const Verdict v = screen_exceptional(poly_from(o, ctx));
  if (o.format == "json") {
    emit_json(out, to_json(v));
    return kExitOk;
  }
  out << "status     " << status_name(v.status) << '\n';
  out << "theorem    " << v.theorem.value_or("-") << '\n';
  out << "heuristic  " << (v.heuristic ? "yes" : "no") << '\n';
  out << "trace\n";
  for (const auto& e : v.trace) out << "  " << e.test << ' ' << e.inputs.dump() << " -> " << e.outcome.dump() << '\n';
  return kExitOk;
}

inline int cmd_points(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const FieldCtx ctx = field_from(o);
  const UniPoly f = poly_from(o, ctx);
  const PointCount pc = projective_point_count(f, o.jobs);
  const auto d = static_cast<std::uint64_t>(f.degree());
  const std::uint64_t bound = point_count_bound(d, ctx.size());
  json j;
  j["n"] = ctx.degree();
  j["poly"] = render(f);
  j["affine"] = pc.affine;
  j["at_infinity"] = pc.at_infinity;
  j["total"] = pc.total();
  j["bound"] = bound;
  j["within_bound"] = pc.total() <= bound;
  if (o.format == "json") {
    emit_json(out, j);
  } else {
    for (const auto& [key, value] : j.items()) out << key << std::string(14 - key.size(), ' ') << value.dump() << '\n';
  }
  return kExitOk;
}

inline int cmd_audit(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const auto k = required(o.k, "--k");
  const auto i = required(o.i, "--i");
  const auto l = required(o.l, "--l");
  if (k < 1 || k > 24) throw UsageError("--k", "--k must be in [1, 24]");
  const FieldCtx ambient = field_from(o, static_cast<int>(k));
  const AuditReport rep = root_of_unity_audit(k, i, l, ambient);
  json j;
  j["k"] = k;
  j["m"] = rep.m;
  j["gold_case"] = rep.gold_case;
  if (!rep.gold_case) {
    j["binomial_odd"] = rep.binomial_odd;
    json rows = json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({{"alpha", to_hex(r.alpha)},
                      {"premises", r.premises},
                      {"alpha_root", r.alpha_root},
                      {"alpha1_root", r.alpha1_root},
                      {"low_component_one", r.low_part_nonzero}});
    }
    j["rows"] = std::move(rows);
    json viol = json::array();
    for (Elem a : rep.violations) viol.push_back(to_hex(a));
    j["violations"] = std::move(viol);
  }
  if (o.format == "json") {
    emit_json(out, j);
    return kExitOk;
  }
  out << "m = " << rep.m << (rep.gold_case ? " (Gold case: audit not applicable)" : "") << '\n';
  if (rep.gold_case) return kExitOk;
  out << "C(m, 2^i+1) mod 2 = " << (rep.binomial_odd ? 1 : 0) << '\n';
  out << "alpha     premises  a^(l-1)=1  (a+1)^(l-1)=1  low=1\n";
  for (const auto& r : rep.rows) {
    const std::string a = to_hex(r.alpha);
    out << a << std::string(10 - std::min<std::size_t>(9, a.size()), ' ') << (r.premises ? "yes" : "no ")
        << "       " << (r.alpha_root ? "yes" : "no ") << "        " << (r.alpha1_root ? "yes" : "no ")
        << "            " << (r.low_part_nonzero ? "yes" : "no") << '\n';
  }
  out << "violations: " << rep.violations.size() << '\n';
  return kExitOk;
}

inline const std::vector<std::pair<Family, std::string>>& family_constraints() {
  static const std::vector<std::pair<Family, std::string>> rows = {
      {Family::Gold, "2^r+1, (r,n)=1"},
      {Family::KasamiWelch, "2^(2r)-2^r+1, (r,n)=1, n odd"},
      {Family::Welch, "2^r+3, n=2r+1"},
      {Family::Niho, "2^r+2^(r/2)-1 (r even) or 2^r+2^((3r+1)/2)-1 (r odd), n=2r+1"},
      {Family::Inverse, "2^(2r)-1, n=2r+1"},
      {Family::Dobbertin, "2^(4r)+2^(3r)+2^(2r)+2^r-1, n=5r"},
      {Family::EKPBinomial, "x^3+u*x^36, n=10, u in w*GF(2^5)^* or w^2*GF(2^5)^*, w of order 3"},
      {Family::BCLFamily, "x^(2^s+1)+w*x^(2^(ik)+2^(mk+s)), n=3k, (k,3)=(s,3k)=1, k>=4"},
  };
  return rows;
}

inline int cmd_families(const Options& o, std::ostream& out) {
  if (!o.family) {
    require_format(o, {"table", "json", "csv"});
    if (o.format == "json") {
      json j = json::array();
      for (const auto& [f, c] : family_constraints()) j.push_back({{"family", family_name(f)}, {"constraint", c}});
      emit_json(out, j);
    } else if (o.format == "csv") {
      out << "family,constraint\n";
      for (const auto& [f, c] : family_constraints()) out << family_name(f) << ",\"" << c << "\"\n";
    } else {
      for (const auto& [f, c] : family_constraints()) {
        const std::string name = family_name(f);
        out << name << std::string(14 - name.size(), ' ') << c << '\n';
      }
    }
    return kExitOk;
  }
  require_format(o, {"table", "json"});
  const auto fam = parse_family(*o.family);
  if (!fam) throw UsageError("--family", "--family: unknown family '" + *o.family + "'");
  FamilySpec spec;
  spec.family = *fam;
  spec.n = required(o.n, "--n");
  spec.r = o.r.value_or(0);
  spec.s = o.s.value_or(0);
  spec.k = o.k.value_or(0);
  if (o.modulus) spec.modulus = parse_hex_flag("--modulus", *o.modulus);
  if (o.u) spec.coefficient = Elem{static_cast<std::uint32_t>(parse_hex_flag("--u", *o.u))};
  const auto result = family_exponent(spec);
  json j;
  j["family"] = family_name(*fam);
  j["n"] = spec.n;
  if (const auto* e = std::get_if<std::uint64_t>(&result)) j["exponent"] = *e;
  const UniPoly f = family_function(spec);
  j["poly"] = render(f);
  if (o.check) {
    const auto s = diff_spectrum(f, o.jobs);
    j["uniformity"] = s.uniformity;
    j["apn"] = s.uniformity == 2;
  }
  if (o.format == "json") {
    emit_json(out, j);
  } else {
    for (const auto& [key, value] : j.items()) {
      out << key << std::string(12 - key.size(), ' ') << (value.is_string() ? value.get<std::string>() : value.dump())
          << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"table", "json", "csv"});
  const auto results = verify_suite(o.suite, o.jobs, &err);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (o.format == "json") {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    emit_json(out, json{{"suite", o.suite}, {"passed", ok}, {"checks", std::move(checks)}});
  } else if (o.format == "csv") {
    out << "name,passed,seconds\n";
    for (const auto& r : results) out << '"' << r.name << "\"," << (r.passed ? "true" : "false") << ',' << r.seconds << '\n';
  } else {
    for (const auto& r : results) {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%8.3fs", r.seconds);
      out << (r.passed ? "PASS " : "FAIL ") << secs << "  " << r.name << "  (" << r.detail << ")\n";
    }
    out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"apnforge: APN function and surface-polynomial toolkit"};
  app.require_subcommand(1);
  Options o;

  struct VerbSpec {
    const char* name;
    const char* help;
  };
  const VerbSpec verbs[] = {
      {"ddt", "differential spectrum of f over GF(2^n)"},
      {"apn", "APN verdict for f over GF(2^n)"},
      {"phi", "surface polynomial of x^j or of f"},
      {"gold", "product of the Gold linear forms for k"},
      {"coprime", "coprimality of the Gold surface for k and phi_d"},
      {"screen", "exceptional-APN screen for f"},
      {"points", "projective point count of the surface of f"},
      {"audit", "root-of-unity audit for m = 2^i*l+1 over GF(2^k)"},
      {"families", "APN family table, exponents and checks"},
      {"verify", "run bundled verification suites"},
  };
  const std::vector<std::string> formats = {"table", "json", "csv"};
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");

  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    const std::string name = v.name;
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--n", o.n, "extension degree n of GF(2^n)")->check(CLI::Range(1, 24));
    sub->add_option("--modulus", o.modulus, "field modulus as hex, e.g. 0x13");
    if (name == "ddt" || name == "apn" || name == "phi" || name == "screen" || name == "points") {
      sub->add_option("--poly", o.poly, "polynomial, e.g. \"x^17+0x3*x^10+x^5\"");
    }
    if (name == "ddt" || name == "apn" || name == "points" || name == "families" || name == "verify") {
      sub->add_option("--jobs", o.jobs, "worker threads (0 = hardware concurrency)");
    }
    if (name == "ddt") sub->add_flag("--full", o.full, "emit the complete table (n <= 12)");
    if (name == "phi") sub->add_option("--j", o.j, "exponent j")->check(CLI::Range(0u, kMaxTotalDegree));
    if (name == "gold" || name == "coprime" || name == "audit" || name == "families") {
      sub->add_option("--k", o.k, "subfield degree k (BCL: n = 3k)");
    }
    if (name == "coprime") sub->add_option("--d", o.d, "degree d");
    if (name == "audit") {
      sub->add_option("--i", o.i, "exponent i in m = 2^i*l+1");
      sub->add_option("--l", o.l, "odd l in m = 2^i*l+1");
    }
    if (name == "families") {
      sub->add_option("--family", o.family, "gold|kasami-welch|welch|niho|inverse|dobbertin|ekp|bcl");
      sub->add_option("--r", o.r, "family parameter r");
      sub->add_option("--s", o.s, "BCL parameter s");
      sub->add_option("--u", o.u, "binomial coefficient (EKP u, BCL w) as hex");
      sub->add_flag("--check", o.check, "compute the differential uniformity");
    }
    if (name == "verify") sub->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(suites));
  }

  std::string verb;
  auto usage_failure = [&](const std::string& message) {
    err << "error: " << message << '\n';
    const auto& ex = verb_examples();
    if (auto it = ex.find(verb); it != ex.end()) {
      err << "example: " << it->second << '\n';
    } else {
      err << "example: " << ex.at("apn") << '\n';
    }
    return kExitUsage;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!args.empty()) verb = args.front();
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage_failure(e.what());
  }
  verb = app.get_subcommands().front()->get_name();

  try {
    if (verb == "ddt") return detail::cmd_spectrum(o, false, out, err);
    if (verb == "apn") return detail::cmd_spectrum(o, true, out, err);
    if (verb == "phi") return detail::cmd_phi(o, out);
    if (verb == "gold") return detail::cmd_gold(o, out);
    if (verb == "coprime") return detail::cmd_coprime(o, out);
    if (verb == "screen") return detail::cmd_screen(o, out);
    if (verb == "points") return detail::cmd_points(o, out);
    if (verb == "audit") return detail::cmd_audit(o, out);
    if (verb == "families") return detail::cmd_families(o, out);
    if (verb == "verify") return detail::cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    return usage_failure(e.what());
  } catch (const ParseError& e) {
    return usage_failure(e.what());
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return usage_failure("unknown verb '" + verb + "'");
}

}  // namespace apnforge::cli
