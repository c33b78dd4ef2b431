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

#pragma once

#include <string>
#include <vector>

#include "model.hpp"

// Cross-layer rule checks over a loaded spec. Checks run in a fixed order
// and their findings are concatenated, so identical specs always produce
// identical finding lists. A spec with error findings must not be compiled
// or traced; warning-only specs may.
//
// Finding codes (closed set):
//   E_CYCLE            attribution graph has a cycle
//   E_DEPTH            edge or chain group violates causal depth ordering
//   E_AUTHORITY        dual-track policy exceeds the dimension's authority
//   E_SILENT_TRACK     Process track disabled without a rationale
//   E_UNMAPPED         referenced question lacks a data mapping
//   E_UNBOUND_VAR      rule condition references an unexported variable
//   E_INCOMPLETE_CHAIN chain skips a dimension on the backward path
//   E_FRESHNESS        freshness_sla does not match [TMQ]+<digits>
//   W_NO_BOUNDARY      dimension has no boundary coverage
namespace attrspec::validator {

struct Finding {
  enum class Severity { Error, Warning };
  std::string code;
  Severity severity = Severity::Error;
  std::string subject;  // question id, edge, or chain reference
  std::string message;

  bool operator==(const Finding&) const = default;
};

// Runs every check in order: graph acyclicity, dimension monotonicity,
// authority compliance, coverage, mapping hygiene. Empty result means valid.
std::vector<Finding> validate(const AgentSpec& spec);

// One E_CYCLE finding per strongly connected component of size > 1 or
// self-loop, listing member nodes.
std::vector<Finding> check_graph_acyclic(const AttributionGraph& graph);

// E_DEPTH for edges stored against causal direction and for chain groups
// that are not strictly deeper than their trigger or not depth-ordered.
std::vector<Finding> check_dimension_monotonicity(const AgentSpec& spec);

// E_AUTHORITY / E_SILENT_TRACK for dual-track policies that exceed or
// silently narrow the per-dimension authority matrix.
std::vector<Finding> check_authority_compliance(const AgentSpec& spec);

// E_UNMAPPED, E_UNBOUND_VAR, E_INCOMPLETE_CHAIN, W_NO_BOUNDARY.
std::vector<Finding> check_coverage(const AgentSpec& spec);

// E_FRESHNESS for malformed freshness SLA tokens.
std::vector<Finding> check_mappings(const AgentSpec& spec);

int error_count(const std::vector<Finding>& findings);
int warning_count(const std::vector<Finding>& findings);

std::string render_finding(const Finding& f);
std::string finding_to_json(const Finding& f);

}  // namespace attrspec::validator
