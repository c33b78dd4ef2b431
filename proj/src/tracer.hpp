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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "snapshot.hpp"

// Backward attribution tracing: walks a trigger's chain groups in depth
// order against a data snapshot, fires dual-track rules along the way, and
// emits a structured report plus a Thought/Action/Observation step log.
namespace attrspec::tracer {

class TraceError : public std::runtime_error {
 public:
  explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

struct TraceStep {
  enum class Kind { Thought, Action, Observation };
  Kind kind = Kind::Thought;
  std::string text;
};

struct ReportFinding {
  std::string question;
  Dimension dimension = Dimension::Results;
  condition::Bindings values;  // raw snapshot values echoed verbatim
  std::vector<std::string> interpretations;    // fired rule outputs
  std::vector<std::string> recommendations;    // fired rule-based outputs
  std::string open_suggestions;                // Support template, if any
};

struct ReportMetrics {
  int dimensions_covered = 0;
  int causal_factors = 0;             // fired interpretations
  int actionable_recommendations = 0; // fired rule-based recommendations
};

struct AttributionReport {
  std::string trigger;
  Dimension queried_dimension = Dimension::Results;
  std::string snapshot_id;
  std::vector<ReportFinding> findings;  // non-decreasing dimension depth
  std::vector<Dimension> covered_dimensions;  // sorted by depth
  std::vector<std::string> caveats;
  std::vector<TraceStep> step_log;

  bool covers(Dimension d) const;
};

// Per-question rule firing. All matching rules fire in declaration order;
// rule evaluation failures are skipped with a caveat, never a hard error.
struct FireResult {
  std::vector<std::string> interpretations;
  std::vector<std::string> recommendations;  // rule-based
  std::string open_suggestions;              // open-ended template
  std::vector<std::string> caveats;
};
FireResult fire_rules(const AgentSpec& spec, const std::string& question_id,
                      const condition::Bindings& bindings);

// Throws TraceError for an unknown trigger, a trigger without a chain, or a
// snapshot that lacks trigger bindings. Missing data for chain members
// degrades into caveats. `evaluation_date` (ISO-8601) turns on staleness
// checks against each mapping's update frequency and freshness SLA.
AttributionReport trace(const AgentSpec& spec, const std::string& trigger,
                        const snapshot::DataSnapshot& snap,
                        const std::optional<std::string>& evaluation_date = std::nullopt);

// The report's step log after checking the alternation invariant.
const std::vector<TraceStep>& emit_react_log(const AttributionReport& report);

ReportMetrics compute_metrics(const AttributionReport& report);

// Human rendering in the headed report layout (Results / Process
// Attribution / Support Context / Long-term Context / Recommendations /
// Note). Numbers in the text are snapshot values only.
std::string render_report_text(const AttributionReport& report, const AgentSpec& spec);

// One-line machine form; report_from_json parses it back losslessly.
std::string report_to_json(const AttributionReport& report);
AttributionReport report_from_json(const std::string& text);

std::string render_react_text(const AttributionReport& report);

}  // namespace attrspec::tracer
