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

#include "validator.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "loader.hpp"
#include "test_support.hpp"

using namespace attrspec;
using validator::Finding;

namespace {

std::vector<std::string> codes_of(const std::vector<Finding>& findings) {
  std::vector<std::string> out;
  for (const Finding& f : findings) out.push_back(f.code);
  return out;
}

bool has_code(const std::vector<Finding>& findings, const std::string& code,
              const std::string& subject_part = "") {
  for (const Finding& f : findings) {
    if (f.code == code && f.subject.find(subject_part) != std::string::npos) return true;
  }
  return false;
}

// Oracle: a node lies on a cycle iff it can reach itself, decided by
// exhaustive reachability closure (no SCC machinery).
std::set<std::string> cycle_nodes_oracle(const AttributionGraph& graph) {
  std::set<std::pair<std::string, std::string>> reach(graph.edges.begin(), graph.edges.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : std::set<std::pair<std::string, std::string>>(reach)) {
      for (const auto& [c, d] : std::set<std::pair<std::string, std::string>>(reach)) {
        if (b == c && reach.insert({a, d}).second) changed = true;
      }
    }
  }
  std::set<std::string> on_cycle;
  for (const std::string& node : graph.nodes) {
    if (reach.count({node, node})) on_cycle.insert(node);
  }
  return on_cycle;
}

std::set<std::string> cycle_nodes_detected(const AttributionGraph& graph) {
  std::set<std::string> out;
  for (const Finding& f : validator::check_graph_acyclic(graph)) {
    std::size_t start = 0;
    while (start < f.subject.size()) {
      std::size_t comma = f.subject.find(',', start);
      if (comma == std::string::npos) comma = f.subject.size();
      out.insert(f.subject.substr(start, comma - start));
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("the bank fixture validates clean") {
  auto findings = validator::validate(testsupport::bank_spec());
  CHECK(findings.empty());
}

TEST_CASE("validator is deterministic") {
  AgentSpec broken = testsupport::bank_spec();
  broken.graph.edges.emplace_back("Q1", "Q8");
  broken.questions[0].policy->interpretation_enabled = true;
  auto first = validator::validate(broken);
  auto second = validator::validate(broken);
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("cycle detection: trivial cases") {
  AttributionGraph empty;
  empty.nodes = {"Q1", "Q2"};
  CHECK(validator::check_graph_acyclic(empty).empty());

  AttributionGraph two;
  two.nodes = {"Q1", "Q2"};
  two.edges = {{"Q1", "Q2"}, {"Q2", "Q1"}};
  auto findings = validator::check_graph_acyclic(two);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_CYCLE");
  CHECK(findings[0].subject == "Q1,Q2");

  AttributionGraph self;
  self.nodes = {"Q3"};
  self.edges = {{"Q3", "Q3"}};
  findings = validator::check_graph_acyclic(self);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].subject == "Q3");
}

TEST_CASE("a linear backward chain is acyclic") {
  AttributionGraph graph;
  graph.nodes = {"Q1", "Q4", "Q8", "Q10"};
  graph.edges = {{"Q4", "Q1"}, {"Q8", "Q4"}, {"Q10", "Q8"}};
  CHECK(validator::check_graph_acyclic(graph).empty());
}

TEST_CASE("injected cycle through the fixture graph is caught") {
  AgentSpec spec = testsupport::bank_spec();
  // Q7 -> Q4 exists from both primary paths; Q4 -> Q7 closes a two-cycle.
  spec.graph.edges.emplace_back("Q4", "Q7");
  auto findings = validator::validate(spec);
  CHECK(has_code(findings, "E_CYCLE", "Q4"));
  CHECK(codes_of(findings) == std::vector<std::string>{"E_CYCLE"});
}

TEST_CASE("property: cycle detector matches the reachability oracle" * doctest::timeout(30)) {
  std::mt19937 rng(515151);
  for (int iteration = 0; iteration < 1000; ++iteration) {
    AttributionGraph graph;
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    for (int i = 1; i <= n; ++i) graph.nodes.push_back("Q" + std::to_string(i));
    int edges = std::uniform_int_distribution<int>(0, n * 2)(rng);
    for (int e = 0; e < edges; ++e) {
      std::string from = graph.nodes[std::uniform_int_distribution<int>(0, n - 1)(rng)];
      std::string to = graph.nodes[std::uniform_int_distribution<int>(0, n - 1)(rng)];
      graph.edges.emplace_back(from, to);
    }
    CAPTURE(iteration);
    CHECK(cycle_nodes_detected(graph) == cycle_nodes_oracle(graph));
  }
}

TEST_CASE("dimension monotonicity over chains and edges") {
  const AgentSpec& spec = testsupport::bank_spec();
  CHECK(validator::check_dimension_monotonicity(spec).empty());

  // Support explaining Process is the causal direction; accepted.
  AgentSpec deeper = spec;
  deeper.graph.edges.emplace_back("Q8", "Q4");
  CHECK(validator::check_dimension_monotonicity(deeper).empty());

  // Results explaining Support runs the wrong way.
  AgentSpec forward = spec;
  forward.graph.edges.emplace_back("Q1", "Q8");
  auto findings = validator::check_dimension_monotonicity(forward);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_DEPTH");
  CHECK(findings[0].subject == "Q1->Q8");

  // A chain group at or above the trigger's depth is rejected.
  AgentSpec shallow = spec;
  AttributionChain chain;
  chain.trigger = "Q4";  // Process
  ChainGroup group;
  group.label = "results_context";
  group.dimension = Dimension::Results;
  group.members = {"Q1"};
  chain.groups.push_back(group);
  shallow.graph.chains.push_back(chain);
  findings = validator::check_dimension_monotonicity(shallow);
  CHECK(has_code(findings, "E_DEPTH", "trigger Q4"));
}

TEST_CASE("authority compliance follows the matrix") {
  const AgentSpec& fixture = testsupport::bank_spec();
  CHECK(validator::check_authority_compliance(fixture).empty());

  AgentSpec q1_interp = fixture;
  q1_interp.find_question("Q1");
  q1_interp.questions[0].policy->interpretation_enabled = true;
  auto findings = validator::check_authority_compliance(q1_interp);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_AUTHORITY");
  CHECK(findings[0].subject == "Q1");

  AgentSpec q10_rec = fixture;
  for (Question& q : q10_rec.questions) {
    if (q.id == "Q10") q.policy->recommendation_enabled = true;
  }
  findings = validator::check_authority_compliance(q10_rec);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_AUTHORITY");
  CHECK(findings[0].subject == "Q10");

  // Rule-based recommendations on Support exceed open-ended authority.
  AgentSpec q8_rules = fixture;
  for (Question& q : q8_rules.questions) {
    if (q.id == "Q8") {
      q.policy->recommendation_kind = RecommendationKind::RuleBased;
      q.policy->open_template.clear();
    }
  }
  findings = validator::check_authority_compliance(q8_rules);
  CHECK(has_code(findings, "E_AUTHORITY", "Q8"));

  // Process tracks silently disabled need a rationale.
  AgentSpec silent = fixture;
  for (Question& q : silent.questions) {
    if (q.id == "Q3") {
      q.policy->interpretation_enabled = false;
      q.policy->interpretation_rules.clear();
      q.policy->interpretation_rationale.clear();
    }
  }
  findings = validator::check_authority_compliance(silent);
  CHECK(has_code(findings, "E_SILENT_TRACK", "Q3"));
}

TEST_CASE("coverage checks") {
  const AgentSpec& fixture = testsupport::bank_spec();
  CHECK(validator::check_coverage(fixture).empty());

  AgentSpec unmapped = fixture;
  for (Question& q : unmapped.questions) {
    if (q.id == "Q9") q.mapping.reset();
  }
  auto findings = validator::check_coverage(unmapped);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_UNMAPPED");
  CHECK(findings[0].subject == "Q9");

  // Q3's branch_avg is only legal because it is a declared context
  // variable; without the declaration it is unbound.
  AgentSpec no_context = fixture;
  no_context.context_variables.clear();
  findings = validator::check_coverage(no_context);
  CHECK(has_code(findings, "E_UNBOUND_VAR", "Q3:branch_avg"));

  AgentSpec no_longterm = fixture;
  for (AttributionChain& chain : no_longterm.graph.chains) {
    if (chain.trigger == "Q2") {
      chain.groups.pop_back();  // longterm_context
    }
  }
  findings = validator::check_coverage(no_longterm);
  CHECK(has_code(findings, "E_INCOMPLETE_CHAIN", "trigger Q2"));

  AgentSpec bare = fixture;
  bare.boundaries.data_integrity.clear();
  bare.boundaries.scope_limits.clear();
  bare.boundaries.confidence_calibration.clear();
  bare.boundaries.attribution_discipline.clear();
  bare.boundaries.per_question.clear();
  findings = validator::check_coverage(bare);
  int warnings = 0;
  for (const Finding& f : findings) {
    if (f.code == "W_NO_BOUNDARY") ++warnings;
  }
  CHECK(warnings == 4);
}

TEST_CASE("freshness SLA pattern") {
  const AgentSpec& fixture = testsupport::bank_spec();
  CHECK(validator::check_mappings(fixture).empty());
  AgentSpec bad = fixture;
  bad.questions[0].mapping->freshness_sla = "T1";
  auto findings = validator::check_mappings(bad);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "E_FRESHNESS");
  bad.questions[0].mapping->freshness_sla = "X+1";
  CHECK(validator::check_mappings(bad).size() == 1);
  bad.questions[0].mapping->freshness_sla = "M+10";
  CHECK(validator::check_mappings(bad).empty());
}

TEST_CASE("adding an unrelated edge never removes findings") {
  AgentSpec broken = testsupport::bank_spec();
  for (Question& q : broken.questions) {
    if (q.id == "Q9") q.mapping.reset();
  }
  auto before = validator::validate(broken);
  AgentSpec more = broken;
  more.graph.edges.emplace_back("Q11", "Q3");  // legal deeper-to-shallower edge
  auto after = validator::validate(more);
  for (const Finding& f : before) {
    CHECK(std::find(after.begin(), after.end(), f) != after.end());
  }
}

TEST_CASE("zero-error specs satisfy the chain and track guarantees") {
  const AgentSpec& spec = testsupport::bank_spec();
  REQUIRE(validator::error_count(validator::validate(spec)) == 0);
  // Every chain reaches Long-term.
  for (const AttributionChain& chain : spec.graph.chains) {
    bool reaches = false;
    for (const ChainGroup& g : chain.groups) {
      if (g.dimension == Dimension::LongTerm && !g.members.empty()) reaches = true;
    }
    CHECK(reaches);
  }
  // Every Process question has both tracks enabled or a disable rationale.
  for (const Question& q : spec.questions) {
    if (q.dimension != Dimension::Process) continue;
    REQUIRE(q.policy);
    CHECK((q.policy->interpretation_enabled || !q.policy->interpretation_rationale.empty()));
    CHECK((q.policy->recommendation_enabled || !q.policy->recommendation_rationale.empty()));
  }
}
