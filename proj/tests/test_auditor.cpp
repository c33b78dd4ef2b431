// Copyright 2026 The Attrspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auditor.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

using namespace attrspec;
using auditor::StructuredResponse;

namespace {

Decimal dec(const char* text) { return *Decimal::parse(text); }

std::string read_fixture(const std::string& name) {
  std::ifstream in(testsupport::bank_dir() + "/responses/" + name);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int violations_in(const std::string& text) {
  return static_cast<int>(auditor::lint_boundaries(testsupport::bank_spec(), text).size());
}

// Brute-force provenance oracle: every token against every value and every
// pairwise difference, with dumb loops.
std::vector<std::string> fabrication_oracle(const StructuredResponse& response,
                                            const snapshot::DataSnapshot& snap) {
  std::vector<Decimal> values;
  for (const auto& [k, v] : snap.context) {
    (void)k;
    if (const auto* d = std::get_if<Decimal>(&v)) values.push_back(*d);
  }
  for (const auto& [q, bindings] : snap.per_question) {
    (void)q;
    for (const auto& [k, v] : bindings) {
      (void)k;
      if (const auto* d = std::get_if<Decimal>(&v)) values.push_back(*d);
    }
  }
  std::vector<std::string> fabricated;
  for (const auto& claim : response.claims) {
    bool ok = false;
    for (const Decimal& v : values) {
      if (v == claim.value) ok = true;
    }
    for (const Decimal& a : values) {
      for (const Decimal& b : values) {
        if (a - b == claim.value) ok = true;
      }
    }
    if (!ok) fabricated.push_back(claim.token);
  }
  return fabricated;
}

}  // namespace

TEST_CASE("completeness against the queried chain") {
  const AgentSpec& spec = testsupport::bank_spec();
  using D = Dimension;

  auto [full, none_missing] = auditor::check_completeness(
      spec, "Q2", {D::Results, D::Process, D::Support, D::LongTerm});
  CHECK(full);
  CHECK(none_missing.empty());

  auto [bare, missing] = auditor::check_completeness(spec, "Q2", {D::Results});
  CHECK_FALSE(bare);
  CHECK(missing == std::vector<D>{D::Process, D::Support, D::LongTerm});

  // A Process-targeted query never requires Results.
  auto [process_ok, process_missing] =
      auditor::check_completeness(spec, "Q4", {D::Process, D::Support, D::LongTerm});
  CHECK(process_ok);
  CHECK(process_missing.empty());

  CHECK_THROWS_AS(auditor::check_completeness(spec, "Q99", {}), auditor::AuditError);
}

TEST_CASE("boundary linting matches the pilot violation classes") {
  CHECK(violations_in("consider reassigning underperforming RMs") == 1);
  CHECK(violations_in("this will definitely improve performance") == 1);
  CHECK(violations_in("Low penetration suggests cross-sell opportunity") == 0);
  CHECK(violations_in("this suggests management failure") == 1);

  auto spans = auditor::lint_boundaries(testsupport::bank_spec(),
                                        "We should definitely reassign staff.");
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].category == "overconfidence");
  CHECK(spans[0].span == "definitely");
  CHECK(spans[1].category == "prohibited_topic");
  CHECK(spans[1].span == "reassign");
  CHECK(spans[1].offset == std::string("We should definitely ").size());
}

TEST_CASE("lint matches whole words only") {
  // "management review" is fine; "management failure" is not.
  CHECK(violations_in("decisions require management review") == 0);
  // "fire" must not match inside other words.
  CHECK(violations_in("the misfired campaign refires quarterly") == 0);
  CHECK(violations_in("Fire the analyst") == 1);  // case-insensitive
}

TEST_CASE("hedging discipline applies to Interpretation sections only") {
  const char* hedged =
      "queried: Q2\n\nResults: value is 0.88.\n\n"
      "Interpretation: Penetration at 0.24 suggests a cross-sell gap.\n";
  CHECK(violations_in(hedged) == 0);

  const char* unhedged =
      "queried: Q2\n\nResults: value is 0.88.\n\n"
      "Interpretation: Penetration at 0.24 is a cross-sell failure of coverage.\n";
  auto spans = auditor::lint_boundaries(testsupport::bank_spec(), unhedged);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].category == "unhedged_claim");

  // The same sentence outside an Interpretation section is exempt.
  const char* display_only = "Results: Penetration at 0.24 is below the 0.41 benchmark.\n";
  CHECK(violations_in(display_only) == 0);
}

TEST_CASE("the violation corpus flags every line; clean text flags none") {
  std::istringstream corpus(read_fixture("violation_corpus.txt"));
  std::string line;
  int lines = 0;
  while (std::getline(corpus, line)) {
    if (line.empty()) continue;
    ++lines;
    CAPTURE(line);
    CHECK(violations_in(line) >= 1);
  }
  CHECK(lines == 10);
  CHECK(violations_in(read_fixture("attribution_q2.txt")) == 0);
  CHECK(violations_in(read_fixture("baseline_q2.txt")) == 0);
}

TEST_CASE("lint violations survive appended text") {
  std::string base = "We should definitely reassign staff.";
  auto before = auditor::lint_boundaries(testsupport::bank_spec(), base);
  auto after = auditor::lint_boundaries(testsupport::bank_spec(),
                                        base + "\nFurther campaign notes follow here.");
  for (const auto& v : before) {
    bool kept = false;
    for (const auto& w : after) {
      if (w.category == v.category && w.offset == v.offset && w.span == v.span) kept = true;
    }
    CHECK(kept);
  }
}

TEST_CASE("numeric claim extraction") {
  auto claims = auditor::extract_numeric_claims(
      "AUM at 88% of target (12pp gap). Penetration 0.24 vs 0.41. Coverage 67%.", "results");
  REQUIRE(claims.size() == 5);
  CHECK(claims[0].token == "88%");
  CHECK(claims[0].value == dec("0.88"));
  CHECK(claims[1].token == "12pp");
  CHECK(claims[1].value == dec("0.12"));
  CHECK(claims[2].value == dec("0.24"));
  CHECK(claims[3].value == dec("0.41"));
  CHECK(claims[4].value == dec("0.67"));

  // Identifiers, dates, enumerators, and unit-suffixed tokens are skipped.
  CHECK(auditor::extract_numeric_claims("Q4 as of 2025-09-30", "x").empty());
  CHECK(auditor::extract_numeric_claims("(1) first item; (2) second item", "x").empty());
  CHECK(auditor::extract_numeric_claims("1. first\n2. second\n", "x").empty());
  CHECK(auditor::extract_numeric_claims("portfolio of $12M", "x").empty());
  CHECK(auditor::extract_numeric_claims("snapshot eastern_2025_q3", "x").empty());

  auto thousands = auditor::extract_numeric_claims("1,240 customers", "x");
  REQUIRE(thousands.size() == 1);
  CHECK(thousands[0].value == dec("1240"));

  auto negative = auditor::extract_numeric_claims("delta -3.2 this period", "x");
  REQUIRE(negative.size() == 1);
  CHECK(negative[0].value == dec("-3.2"));
}

TEST_CASE("provenance accepts snapshot values and derived differences") {
  auto snap = testsupport::eastern_snapshot();
  auto response = auditor::parse_response_text(read_fixture("attribution_q2.txt"));
  CHECK(response.queried == "Q2");
  CHECK(auditor::check_data_provenance(response, snap).empty());

  auto tampered = auditor::parse_response_text(
      "queried: Q2\n\nResults: penetration reached 0.31 this quarter.\n");
  auto fabricated = auditor::check_data_provenance(tampered, snap);
  REQUIRE(fabricated.size() == 1);
  CHECK(fabricated[0].first == "0.31");

  // 12pp = target 1.0 minus aum_ratio 0.88 via the derivation table.
  auto gap = auditor::parse_response_text("queried: Q2\n\nResults: 12pp gap to target.\n");
  CHECK(auditor::check_data_provenance(gap, snap).empty());
}

TEST_CASE("property: provenance has no false negatives against the oracle" *
          doctest::timeout(30)) {
  std::mt19937 rng(900);
  auto snap = testsupport::eastern_snapshot();
  static const char* kTokens[] = {"0.88", "0.24",  "0.41", "88%", "67%", "12pp",
                                  "3",    "0.31",  "45",   "6",   "0.12", "99.5",
                                  "0.2",  "1,240", "7%",   "0.85"};
  for (int i = 0; i < 300; ++i) {
    std::string text = "queried: Q2\n\nResults: ";
    int n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int k = 0; k < n; ++k) {
      text += std::string("value ") +
              kTokens[std::uniform_int_distribution<int>(0, 15)(rng)] + " seen. ";
    }
    text += "\n";
    auto response = auditor::parse_response_text(text);
    auto fabricated = auditor::check_data_provenance(response, snap);
    std::vector<std::string> got;
    for (const auto& [token, location] : fabricated) {
      (void)location;
      got.push_back(token);
    }
    CHECK(got == fabrication_oracle(response, snap));
  }
}

TEST_CASE("auditing the tracer report on the Eastern snapshot is clean") {
  const AgentSpec& spec = testsupport::bank_spec();
  auto snap = testsupport::eastern_snapshot();
  auto report = tracer::trace(spec, "Q2", snap);
  auto findings = auditor::audit_report(spec, report, snap);
  CHECK(findings.complete);
  CHECK(findings.missing_dimensions.empty());
  CHECK(findings.boundary_violations.empty());
  CHECK(findings.fabricated_values.empty());
  CHECK(findings.metrics.dimensions_covered == 4);
  CHECK(auditor::exit_code(findings) == 0);
}

TEST_CASE("auditing the baseline response reproduces the contrast") {
  const AgentSpec& spec = testsupport::bank_spec();
  auto snap = testsupport::eastern_snapshot();
  auto response = auditor::parse_response_text(read_fixture("baseline_q2.txt"));
  CHECK(response.queried == "Q2");
  auto findings = auditor::audit_response(spec, response, snap);
  CHECK_FALSE(findings.complete);
  CHECK(findings.metrics.dimensions_covered == 1);
  CHECK(findings.metrics.actionable_recommendations == 0);
  CHECK(auditor::exit_code(findings) == 2);
}

TEST_CASE("auditing the attribution response text is clean and complete") {
  const AgentSpec& spec = testsupport::bank_spec();
  auto snap = testsupport::eastern_snapshot();
  auto response = auditor::parse_response_text(read_fixture("attribution_q2.txt"));
  auto findings = auditor::audit_response(spec, response, snap);
  CHECK(findings.complete);
  CHECK(findings.boundary_violations.empty());
  CHECK(findings.fabricated_values.empty());
  CHECK(findings.metrics.dimensions_covered == 4);
  CHECK(findings.metrics.actionable_recommendations == 2);
  CHECK(auditor::exit_code(findings) == 0);
}

TEST_CASE("injected violations flip the exit code") {
  const AgentSpec& spec = testsupport::bank_spec();
  auto snap = testsupport::eastern_snapshot();
  std::string text = read_fixture("attribution_q2.txt");
  text += "\nNote: definitely reassign staff.\n";
  auto findings = auditor::audit_response(spec, auditor::parse_response_text(text), snap);
  CHECK(findings.boundary_violations.size() == 2);
  CHECK(auditor::exit_code(findings) == 3);

  std::string fabricated = read_fixture("attribution_q2.txt");
  fabricated += "\nNote: churn reached 0.93 in the same window.\n";
  findings = auditor::audit_response(spec, auditor::parse_response_text(fabricated), snap);
  CHECK(findings.boundary_violations.empty());
  CHECK(findings.fabricated_values.size() == 1);
  CHECK(auditor::exit_code(findings) == 4);
}

TEST_CASE("property: tracer reports audit clean on schema-respecting snapshots" *
          doctest::timeout(30)) {
  const AgentSpec& spec = testsupport::bank_spec();
  std::mt19937 rng(112233);
  for (int i = 0; i < 250; ++i) {
    auto snap = testsupport::random_bank_snapshot(rng);
    for (const char* trigger : {"Q1", "Q2"}) {
      auto report = tracer::trace(spec, trigger, snap);
      auto findings = auditor::audit_report(spec, report, snap);
      CAPTURE(i);
      CAPTURE(trigger);
      CHECK(findings.complete);
      CHECK(findings.boundary_violations.empty());
      CHECK(findings.fabricated_values.empty());
    }
  }
}

TEST_CASE("audit serialization mirrors the findings") {
  const AgentSpec& spec = testsupport::bank_spec();
  auto snap = testsupport::eastern_snapshot();
  auto findings = auditor::audit_response(
      spec, auditor::parse_response_text(read_fixture("baseline_q2.txt")), snap);
  std::string json = auditor::audit_to_json(findings);
  CHECK(json.find("\"complete\":false") != std::string::npos);
  CHECK(json.find("\"dimensions_covered\":1") != std::string::npos);
  std::string text = auditor::render_audit_text(findings);
  CHECK(text.find("complete: no") != std::string::npos);
  CHECK(text.find("missing dimensions: Process Support Long-term") != std::string::npos);
}
