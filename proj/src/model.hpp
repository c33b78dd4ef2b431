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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condition.hpp"

// Domain model shared by every stage of the toolchain. All types are plain
// immutable-after-load values; nothing here touches the filesystem.
namespace attrspec {

// The four dimensions, ordered by causal depth. Results is the shallowest
// (fast-changing, observable), Long-term the deepest (slow, exogenous).
enum class Dimension { Results, Process, Support, LongTerm };

constexpr std::array<Dimension, 4> kAllDimensions = {
    Dimension::Results, Dimension::Process, Dimension::Support, Dimension::LongTerm};

// Backward-trace depth: Results 0, Process 1, Support 2, LongTerm 3.
int dimension_depth(Dimension d);

// "Results", "Process", "Support", "Long-term"
std::string_view dimension_label(Dimension d);

// Lowercase artifact keys: results / process / support / longterm.
std::string_view dimension_key(Dimension d);
std::optional<Dimension> dimension_from_key(std::string_view key);

enum class InterpretationAuthority { None, RuleBased };
enum class RecommendationAuthority { None, RuleBased, OpenEnded };

struct AuthorityProfile {
  InterpretationAuthority interpretation;
  RecommendationAuthority recommendation;
};

// The fixed per-dimension permission matrix. Process gets the full
// rule-based dual track, Support open-ended recommendations only, Results
// and Long-term display only. Specs may restrict further but never widen.
AuthorityProfile authority_for(Dimension d);

enum class SourceKind { Database, KnowledgeBase, AnalyticsApi };
enum class UpdateFrequency { Daily, Weekly, Monthly, Quarterly };

std::string_view source_kind_name(SourceKind k);
std::string_view update_frequency_name(UpdateFrequency f);
int update_frequency_days(UpdateFrequency f);

struct DataMapping {
  std::string name;                       // human name, also seeds tool names
  SourceKind kind = SourceKind::Database;
  std::string source_label;               // verbatim source_type token
  std::string connection;
  std::string locator;                    // query template, file pattern, or endpoint
  std::string parse_method;
  std::vector<std::string> parameters;    // declared placeholder names
  UpdateFrequency update_frequency = UpdateFrequency::Daily;
  std::string freshness_sla;              // e.g. "T+1"; pattern checked by the validator
  std::vector<std::string> exported_variables;
  std::string notes;
};

struct Rule {
  std::string condition_text;  // as written in the artifact (after aliasing)
  condition::Expr condition;
  std::string output;
};

enum class RecommendationKind { RuleBased, OpenEnded };

struct DualTrackPolicy {
  bool interpretation_enabled = false;
  std::string interpretation_rationale;
  std::vector<Rule> interpretation_rules;
  bool recommendation_enabled = false;
  std::string recommendation_rationale;
  RecommendationKind recommendation_kind = RecommendationKind::RuleBased;
  std::vector<Rule> recommendation_rules;
  std::string open_template;  // present iff kind is OpenEnded and enabled
  std::string display_note;
};

struct Question {
  std::string id;  // Q<digits>
  std::string text;
  std::string short_name;
  Dimension dimension = Dimension::Results;
  std::optional<DataMapping> mapping;
  std::optional<DualTrackPolicy> policy;
};

struct ChainGroup {
  std::string label;  // primary_path, secondary_path, support_factors, ...
  Dimension dimension = Dimension::Process;
  bool is_path = false;  // path groups render as arrow sequences
  std::vector<std::string> members;
};

struct AttributionChain {
  std::string trigger;
  std::string title;
  std::vector<ChainGroup> groups;  // traversal order, non-decreasing depth
};

// Edges are stored in causal direction: (from, to) means `to` causally
// depends on `from`, so depth(from) >= depth(to) except for within-dimension
// refinement. Backward tracing walks the chain groups, not the edges.
struct AttributionGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<AttributionChain> chains;
};

struct BoundarySet {
  // Global categories in their fixed order.
  std::vector<std::string> data_integrity;
  std::vector<std::string> scope_limits;
  std::vector<std::string> confidence_calibration;
  std::vector<std::string> attribution_discipline;

  std::vector<std::pair<std::string, std::vector<std::string>>> per_question;
  std::vector<std::pair<std::string, std::vector<std::string>>> interaction_rules;

  // Lexicons: built-in defaults merged with any Layer 5 additions.
  std::vector<std::string> prohibited_topics;
  std::vector<std::string> overconfident_terms;
  std::vector<std::string> hedging_terms;

  bool empty() const {
    return data_integrity.empty() && scope_limits.empty() && confidence_calibration.empty() &&
           attribution_discipline.empty() && per_question.empty() && interaction_rules.empty();
  }
  const std::vector<std::string>* statements_for(std::string_view question_id) const;
};

struct AgentSpec {
  std::string agent_name;
  std::vector<std::string> context_variables;  // snapshot-supplied comparison values
  std::vector<Question> questions;
  AttributionGraph graph;
  BoundarySet boundaries;
  std::vector<std::pair<int, std::string>> provenance;  // layer -> source path

  const Question* find_question(std::string_view id) const;
  std::vector<const Question*> questions_in(Dimension d) const;
};

// Numeric-suffix ordering for question ids: Q2 < Q10. Ids without a numeric
// suffix sort after numbered ones, lexicographically.
bool question_id_less(std::string_view a, std::string_view b);

}  // namespace attrspec
