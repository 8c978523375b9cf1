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

// Report serialization shared by the CLI and the tests.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "apnforge/ddt.hpp"
#include "apnforge/field.hpp"
#include "apnforge/poly.hpp"

namespace apnforge {

using json = nlohmann::ordered_json;

inline std::string modulus_hex(const FieldCtx& ctx) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(ctx.modulus()));
  return buf;
}

/// {n, modulus, poly, uniformity, histogram:[{count, frequency}], apn}
inline json spectrum_json(const UniPoly& f, const DiffSpectrum& s) {
  json hist = json::array();
  for (const auto& [count, freq] : s.histogram) hist.push_back({{"count", count}, {"frequency", freq}});
  json out;
  out["n"] = s.ctx.degree();
  out["modulus"] = modulus_hex(s.ctx);
  out["poly"] = render(f);
  out["uniformity"] = s.uniformity;
  out["histogram"] = std::move(hist);
  out["apn"] = s.uniformity == 2;
  return out;
}

inline void write_spectrum_csv(std::ostream& os, const DiffSpectrum& s) {
  os << "count,frequency\n";
  for (const auto& [count, freq] : s.histogram) os << count << ',' << freq << '\n';
}

inline void write_spectrum_table(std::ostream& os, const UniPoly& f, const DiffSpectrum& s) {
  os << "field       GF(2^" << s.ctx.degree() << "), modulus " << modulus_hex(s.ctx) << '\n';
  os << "poly        " << render(f) << '\n';
  os << "uniformity  " << s.uniformity << '\n';
  os << "apn         " << (s.uniformity == 2 ? "yes" : "no") << '\n';
  os << "  count  frequency\n";
  for (const auto& [count, freq] : s.histogram) {
    std::string c = std::to_string(count);
    os << std::string(7 - std::min<std::size_t>(7, c.size()), ' ') << c << "  " << freq << '\n';
  }
}

}  // namespace apnforge
