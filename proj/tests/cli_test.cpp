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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "apnforge/cli.hpp"

namespace apnforge::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, PhiJ5) {
  const auto r = invoke({"phi", "--j", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x^2+x*y+x*z+y^2+y*z+z^2\n");
}

TEST(Cli, ApnGold) {
  const auto r = invoke({"apn", "--n", "10", "--poly", "x^3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["apn"], true);
  EXPECT_EQ(j["uniformity"], 2);
  EXPECT_EQ(j["n"], 10);
  EXPECT_EQ(j["modulus"], "0x409");
  EXPECT_EQ(j["poly"], "x^3");
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "modulus", "poly", "uniformity", "histogram", "apn"}));
}

TEST(Cli, Coprime) {
  const auto r = invoke({"coprime", "--k", "4", "--d", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out), json::parse(R"({"formula":false,"bruteforce":false,"agree":true})"));
  const auto even = invoke({"coprime", "--k", "2", "--d", "10", "--format", "json"});
  EXPECT_EQ(json::parse(even.out)["formula"], nullptr);
  EXPECT_EQ(json::parse(even.out)["bruteforce"], false);
}

TEST(Cli, SpectrumCsv) {
  const auto r = invoke({"ddt", "--n", "4", "--poly", "x^5", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "count,frequency\n0,180\n4,60\n");
}

TEST(Cli, FullTable) {
  const auto r = invoke({"ddt", "--n", "2", "--poly", "x^3", "--full", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 16), "a,b,count\n0,0,4\n");
  EXPECT_EQ(invoke({"ddt", "--n", "13", "--poly", "x^3", "--full"}).code, kExitDomain);
}

TEST(Cli, ModulusOverride) {
  const auto r = invoke({"apn", "--n", "4", "--modulus", "0x1f", "--poly", "x^3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["modulus"], "0x1f");
  EXPECT_EQ(invoke({"apn", "--n", "4", "--modulus", "0x15", "--poly", "x^3"}).code, kExitDomain);
  EXPECT_EQ(invoke({"apn", "--n", "4", "--modulus", "21", "--poly", "x^3"}).code, kExitUsage);
}

TEST(Cli, UsageErrorsNameFlagAndExample) {
  auto r = invoke({"apn", "--n", "4", "--poly", "x^^3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--poly"), std::string::npos);
  EXPECT_NE(r.err.find("example: apnforge apn"), std::string::npos);

  r = invoke({"apn", "--n", "4", "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);

  r = invoke({"apn", "--poly", "x^3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--n"), std::string::npos);

  r = invoke({"apn", "--n", "40", "--poly", "x^3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--n"), std::string::npos);

  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"phi", "--j", "5", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"screen", "--poly", "x^5", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--suite", "unknown"}).code, kExitUsage);
}

TEST(Cli, DomainErrors) {
  auto r = invoke({"families", "--family", "kasami-welch", "--r", "2", "--n", "4"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("n odd"), std::string::npos);
  EXPECT_EQ(invoke({"apn", "--n", "21", "--poly", "x^3"}).code, kExitDomain);
  EXPECT_EQ(invoke({"points", "--n", "8", "--poly", "x^9"}).code, kExitDomain);
  EXPECT_EQ(invoke({"coprime", "--k", "3", "--d", "9", "--n", "4"}).code, kExitDomain);
  EXPECT_EQ(invoke({"screen", "--poly", "0x1"}).code, kExitDomain);
}

TEST(Cli, Families) {
  auto r = invoke({"families", "--family", "dobbertin", "--r", "1", "--n", "5", "--check", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["exponent"], 29);
  EXPECT_EQ(j["apn"], true);
  r = invoke({"families"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kasami-welch"), std::string::npos);
}

TEST(Cli, ScreenPointsAuditGold) {
  auto r = invoke({"screen", "--poly", "x^9+x^7", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["theorem"], "Thm 11");

  r = invoke({"points", "--n", "5", "--poly", "x^9+x^7", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["total"], 1058);

  r = invoke({"audit", "--k", "2", "--i", "1", "--l", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["violations"].size(), 0u);

  r = invoke({"gold", "--k", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["equals_phi"], true);
  EXPECT_EQ(json::parse(r.out)["factors"], 6);
}

TEST(Cli, VerifySuites) {
  auto r = invoke({"verify", "--suite", "lucas"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.err.find("running suite lucas"), std::string::npos);
  r = invoke({"verify", "--suite", "gold-factorization", "--format", "json"});
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["checks"].size(), 4u);
  EXPECT_EQ(j["passed"], true);
}

TEST(Cli, DeterministicAcrossJobs) {
  const auto a = invoke({"ddt", "--n", "9", "--poly", "x^13+x^6", "--format", "json", "--jobs", "1"});
  const auto b = invoke({"ddt", "--n", "9", "--poly", "x^13+x^6", "--format", "json", "--jobs", "4"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, RenderedPolynomialsReparse) {
  const auto r = invoke({"apn", "--n", "4", "--poly", "x^5 + 0x3*x^3 + x^5 + x^9", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const std::string poly = json::parse(r.out)["poly"];
  EXPECT_EQ(poly, "x^9+0x3*x^3");
  const auto again = invoke({"apn", "--n", "4", "--poly", poly, "--format", "json"});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, ScreenGoldenBytes) {
  std::ifstream in(std::string(APNFORGE_GOLDEN_DIR) + "/screen_x17_x10.json");
  ASSERT_TRUE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  const auto r = invoke({"screen", "--poly", "x^17+x^10", "--format", "json"});
  EXPECT_EQ(r.out, golden.str());
}

}  // namespace
}  // namespace apnforge::cli
