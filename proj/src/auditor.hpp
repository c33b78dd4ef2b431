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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "snapshot.hpp"
#include "tracer.hpp"

// Audits a tracer report or an externally produced structured response for
// attribution completeness, boundary compliance, language discipline, and
// numeric provenance. Linting is lexical; no semantic judgment.
namespace attrspec::auditor {

class AuditError : public std::runtime_error {
 public:
  explicit AuditError(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
  std::string category;  // prohibited_topic | overconfidence | unhedged_claim
  std::string term;      // lexicon term, or "" for unhedged sentences
  std::size_t offset = 0;
  std::string span;      // matched text
};

struct NumericClaim {
  std::string token;     // as written, e.g. "67%" or "0.24"
  Decimal value;         // normalized (percent and points become ratios)
  std::string location;  // section label
};

// Sectioned text response. Sections split on "## Label" headings or
// "Label:" lead-ins from the response-structure vocabulary; text before the
// first label counts as the Results section (the direct factual answer).
struct StructuredResponse {
  std::string queried;
  std::vector<std::pair<std::string, std::string>> sections;  // label -> text
  std::vector<NumericClaim> claims;
  std::string full_text;

  std::vector<Dimension> covered_dimensions() const;
};

StructuredResponse parse_response_text(const std::string& text);

struct AuditFindings {
  bool complete = false;
  std::vector<Dimension> missing_dimensions;
  std::vector<Violation> boundary_violations;      // every category
  std::vector<std::string> overconfident_terms;    // matched spans
  std::vector<std::string> unhedged_claims;        // offending sentences
  std::vector<std::pair<std::string, std::string>> fabricated_values;  // token, location
  tracer::ReportMetrics metrics;
};

// Required dimensions are those at or below the queried question's depth
// that appear as non-empty groups in its chains. Throws AuditError for an
// unknown question id.
std::pair<bool, std::vector<Dimension>> check_completeness(const AgentSpec& spec,
                                                           const std::string& queried,
                                                           const std::vector<Dimension>& covered);

// Lexicon linting over text: prohibited topics, overconfident phrasing, and
// unhedged sentences inside Interpretation-labeled sections. Matches are
// case-insensitive on word boundaries and reported with spans.
std::vector<Violation> lint_boundaries(const AgentSpec& spec, const std::string& text);

// Numeric claims with no matching snapshot binding (exact decimal equality
// after percent/points normalization) and no pairwise-difference
// derivation, e.g. a gap-to-target.
std::vector<std::pair<std::string, std::string>> check_data_provenance(
    const StructuredResponse& response, const snapshot::DataSnapshot& snap);

AuditFindings audit_report(const AgentSpec& spec, const tracer::AttributionReport& report,
                           const snapshot::DataSnapshot& snap);
AuditFindings audit_response(const AgentSpec& spec, const StructuredResponse& response,
                             const snapshot::DataSnapshot& snap);

// CLI exit mapping: 0 clean, 2 incomplete, 3 boundary violations,
// 4 fabricated values; checks apply in pipeline order.
int exit_code(const AuditFindings& findings);

std::string render_audit_text(const AuditFindings& findings);
std::string audit_to_json(const AuditFindings& findings);

// Numeric token extraction shared with the provenance oracle in tests.
std::vector<NumericClaim> extract_numeric_claims(const std::string& text,
                                                 const std::string& location);

}  // namespace attrspec::auditor
