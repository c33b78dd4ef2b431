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

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "json.hpp"
#include "lexicons.hpp"

namespace attrspec::auditor {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Case-insensitive whole-word occurrences of a (possibly multi-word) term.
std::vector<std::size_t> find_term(const std::string& haystack_lower, const std::string& term) {
  std::vector<std::size_t> hits;
  std::string needle = lower(term);
  std::size_t pos = 0;
  while ((pos = haystack_lower.find(needle, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !word_char(haystack_lower[pos - 1]);
    std::size_t end = pos + needle.size();
    bool right_ok = end >= haystack_lower.size() || !word_char(haystack_lower[end]);
    if (left_ok && right_ok) hits.push_back(pos);
    pos += 1;
  }
  return hits;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    current += c;
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n')) {
      out.push_back(current);
      current.clear();
    }
  }
  if (current.find_first_not_of(" \t\n") != std::string::npos) out.push_back(current);
  return out;
}

struct LabelInfo {
  const char* label;
  std::optional<Dimension> dimension;
};

// Response-structure vocabulary and its dimension mapping.
const std::vector<LabelInfo>& known_labels() {
  static const std::vector<LabelInfo> labels = {
      {"results", Dimension::Results},
      {"direct answer", Dimension::Results},
      {"process attribution", Dimension::Process},
      {"process", Dimension::Process},
      {"support context", Dimension::Support},
      {"support", Dimension::Support},
      {"long-term context", Dimension::LongTerm},
      {"longterm context", Dimension::LongTerm},
      {"long-term", Dimension::LongTerm},
      {"attribution trace", std::nullopt},
      {"interpretation", std::nullopt},
      {"interpretations", std::nullopt},
      {"recommendations", std::nullopt},
      {"recommendation", std::nullopt},
      {"caveats", std::nullopt},
      {"note", std::nullopt},
  };
  return labels;
}

const LabelInfo* match_label(const std::string& candidate) {
  std::string low = lower(candidate);
  for (const LabelInfo& info : known_labels()) {
    if (low == info.label) return &info;
  }
  return nullptr;
}

bool is_interpretation_label(const std::string& label) {
  std::string low = lower(label);
  return low == "interpretation" || low == "interpretations";
}

std::optional<Dimension> label_dimension(const std::string& label) {
  const LabelInfo* info = match_label(label);
  return info ? info->dimension : std::nullopt;
}

}  // namespace

std::vector<NumericClaim> extract_numeric_claims(const std::string& text,
                                                 const std::string& location) {
  std::vector<NumericClaim> out;
  std::size_t i = 0;
  auto at_line_start = [&](std::size_t pos) {
    while (pos > 0) {
      char c = text[pos - 1];
      if (c == '\n') return true;
      if (c != ' ' && c != '\t') return false;
      --pos;
    }
    return true;
  };
  while (i < text.size()) {
    char c = text[i];
    bool neg = false;
    std::size_t start = i;
    if (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
        (i == 0 || text[i - 1] == ' ' || text[i - 1] == '(')) {
      neg = true;
      ++i;
      c = text[i];
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (i > 0 && (word_char(text[i - 1]) || text[i - 1] == '.') && !neg) {
      // Tail of an identifier (Q4, eastern_2025) or of another number.
      while (i < text.size() && (word_char(text[i]) || text[i] == '.')) ++i;
      continue;
    }

    // ISO dates are provenance annotations, not claims.
    if (i + 10 <= text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
        std::isdigit(static_cast<unsigned char>(text[i + 2])) &&
        std::isdigit(static_cast<unsigned char>(text[i + 3])) && text[i + 4] == '-') {
      bool date = true;
      for (std::size_t k : {5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i + k]))) date = false;
      }
      if (text[i + 7] != '-') date = false;
      if (date) {
        i += 10;
        continue;
      }
    }

    std::string digits;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) ||
            (text[i] == ',' && i + 3 < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
             std::isdigit(static_cast<unsigned char>(text[i + 2])) &&
             std::isdigit(static_cast<unsigned char>(text[i + 3]))))) {
      if (text[i] != ',') digits += text[i];
      ++i;
    }
    if (i < text.size() && text[i] == '.' && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      digits += '.';
      ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits += text[i];
        ++i;
      }
    }

    bool percent = false;
    bool points = false;
    if (i < text.size() && text[i] == '%') {
      percent = true;
      ++i;
    } else if (i + 1 < text.size() && text[i] == 'p' && text[i + 1] == 'p' &&
               (i + 2 >= text.size() || !word_char(text[i + 2]))) {
      points = true;
      i += 2;
    } else if (i < text.size() && word_char(text[i])) {
      // Unit-suffixed tokens ($12M) are not comparable claims.
      while (i < text.size() && word_char(text[i])) ++i;
      continue;
    }

    // Ordinal list markers: "(1)" and a line-leading "1. ".
    if (!percent && !points) {
      bool paren = start > 0 && text[start - 1] == '(' && i < text.size() && text[i] == ')' &&
                   digits.size() <= 2 && digits.find('.') == std::string::npos;
      bool ordinal = at_line_start(start) && i + 1 < text.size() && text[i] == '.' &&
                     text[i + 1] == ' ' && digits.find('.') == std::string::npos;
      if (paren || ordinal) continue;
    }

    auto value = Decimal::parse(digits);
    if (!value) continue;
    Decimal v = *value;
    if (neg) v = -v;
    if (percent || points) v = v / Decimal::from_int(100);
    std::string token = text.substr(start, i - start);
    out.push_back({token, v, location});
  }
  return out;
}

StructuredResponse parse_response_text(const std::string& text) {
  StructuredResponse response;
  response.full_text = text;

  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }

  std::string current_label;
  std::string current_text;
  bool have_section = false;
  auto flush = [&]() {
    if (!have_section) return;
    response.sections.emplace_back(current_label, current_text);
    current_text.clear();
  };

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& line = lines[idx];
    if (!have_section && response.sections.empty() && current_text.empty()) {
      // Front matter: "queried: Qid".
      std::string low = lower(line);
      if (low.rfind("queried:", 0) == 0) {
        std::string id = line.substr(8);
        std::size_t b = id.find_first_not_of(" \t");
        if (b != std::string::npos) response.queried = id.substr(b);
        continue;
      }
    }

    std::string content = line;
    bool heading = false;
    if (content.rfind("## ", 0) == 0) {
      content = content.substr(3);
      heading = true;
    }
    std::size_t colon = content.find(':');
    std::string label_candidate =
        heading ? content : (colon == std::string::npos ? "" : content.substr(0, colon));
    // Section labels start at column zero; indented "Label:" lines are body
    // text (for example rule output echoes inside a report section).
    if (!label_candidate.empty() &&
        (label_candidate[0] == ' ' || label_candidate[0] == '\t')) {
      label_candidate.clear();
    }

    const LabelInfo* info = label_candidate.empty() ? nullptr : match_label(label_candidate);
    if (info || heading) {
      flush();
      have_section = true;
      current_label = info ? info->label : label_candidate;
      if (!heading && colon != std::string::npos) {
        std::string rest = content.substr(colon + 1);
        std::size_t b = rest.find_first_not_of(" \t");
        current_text = b == std::string::npos ? "" : rest.substr(b) + "\n";
      }
      continue;
    }

    if (!have_section) {
      // Leading unlabeled text reports the direct answer.
      if (!line.empty() || !current_text.empty()) current_text += line + "\n";
      if (!current_text.empty() && response.sections.empty() && current_label.empty()) {
        current_label = "results";
        have_section = true;
      }
    } else {
      current_text += line + "\n";
    }
  }
  flush();

  // Drop whitespace-only sections.
  std::vector<std::pair<std::string, std::string>> sections;
  for (auto& [label, body] : response.sections) {
    if (body.find_first_not_of(" \t\n") != std::string::npos) {
      sections.emplace_back(label, body);
    }
  }
  response.sections = std::move(sections);

  for (const auto& [label, body] : response.sections) {
    auto claims = extract_numeric_claims(body, label);
    response.claims.insert(response.claims.end(), claims.begin(), claims.end());
  }
  return response;
}

std::vector<Dimension> StructuredResponse::covered_dimensions() const {
  std::set<Dimension> covered;
  for (const auto& [label, body] : sections) {
    (void)body;
    if (auto dim = label_dimension(label)) covered.insert(*dim);
  }
  std::vector<Dimension> out;
  for (Dimension d : kAllDimensions) {
    if (covered.count(d)) out.push_back(d);
  }
  return out;
}

std::pair<bool, std::vector<Dimension>> check_completeness(const AgentSpec& spec,
                                                           const std::string& queried,
                                                           const std::vector<Dimension>& covered) {
  const Question* q = spec.find_question(queried);
  if (!q) throw AuditError("unknown question '" + queried + "'");
  int queried_depth = dimension_depth(q->dimension);

  std::set<Dimension> required;
  for (const AttributionChain& chain : spec.graph.chains) {
    if (chain.trigger != queried) continue;
    for (const ChainGroup& group : chain.groups) {
      if (!group.members.empty() && dimension_depth(group.dimension) >= queried_depth) {
        required.insert(group.dimension);
      }
    }
  }

  std::set<Dimension> have(covered.begin(), covered.end());
  std::vector<Dimension> missing;
  for (Dimension d : kAllDimensions) {
    if (required.count(d) && !have.count(d)) missing.push_back(d);
  }
  return {missing.empty(), missing};
}

std::vector<Violation> lint_boundaries(const AgentSpec& spec, const std::string& text) {
  std::vector<Violation> out;
  std::string text_lower = lower(text);

  for (const std::string& term : spec.boundaries.prohibited_topics) {
    for (std::size_t offset : find_term(text_lower, term)) {
      out.push_back({"prohibited_topic", term, offset, text.substr(offset, term.size())});
    }
  }
  for (const std::string& term : spec.boundaries.overconfident_terms) {
    for (std::size_t offset : find_term(text_lower, term)) {
      out.push_back({"overconfidence", term, offset, text.substr(offset, term.size())});
    }
  }

  // Hedging discipline applies to Interpretation-labeled sections only;
  // raw-value display is exempt.
  StructuredResponse parsed = parse_response_text(text);
  for (const auto& [label, body] : parsed.sections) {
    if (!is_interpretation_label(label)) continue;
    for (const std::string& sentence : split_sentences(body)) {
      std::string sentence_lower = lower(sentence);
      bool hedged = false;
      for (const std::string& term : spec.boundaries.hedging_terms) {
        if (!find_term(sentence_lower, term).empty()) {
          hedged = true;
          break;
        }
      }
      if (!hedged) {
        std::string span = sentence;
        std::size_t b = span.find_first_not_of(" \t\n-");
        if (b != std::string::npos) span = span.substr(b);
        while (!span.empty() && (span.back() == '\n' || span.back() == ' ')) span.pop_back();
        std::size_t offset = text.find(span);
        out.push_back({"unhedged_claim", "", offset == std::string::npos ? 0 : offset, span});
      }
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) { return a.offset < b.offset; });
  return out;
}

std::vector<std::pair<std::string, std::string>> check_data_provenance(
    const StructuredResponse& response, const snapshot::DataSnapshot& snap) {
  std::vector<Decimal> values;
  auto collect = [&](const condition::Bindings& bindings) {
    for (const auto& [name, value] : bindings) {
      (void)name;
      if (const auto* d = std::get_if<Decimal>(&value)) values.push_back(*d);
    }
  };
  collect(snap.context);
  for (const auto& [qid, bindings] : snap.per_question) {
    (void)qid;
    collect(bindings);
  }

  auto matches = [&](const Decimal& claim) {
    for (const Decimal& v : values) {
      if (v == claim) return true;
    }
    // Derivation table: pairwise differences cover gap-to-target echoes.
    for (const Decimal& a : values) {
      for (const Decimal& b : values) {
        try {
          if (a - b == claim) return true;
        } catch (const DecimalError&) {
        }
      }
    }
    return false;
  };

  std::vector<std::pair<std::string, std::string>> fabricated;
  for (const NumericClaim& claim : response.claims) {
    if (!matches(claim.value)) fabricated.emplace_back(claim.token, claim.location);
  }
  return fabricated;
}

namespace {

AuditFindings finish_audit(const AgentSpec& spec, const std::string& queried,
                           const std::vector<Dimension>& covered, const std::string& lint_text,
                           const StructuredResponse& provenance_view,
                           const snapshot::DataSnapshot& snap, tracer::ReportMetrics metrics) {
  AuditFindings findings;
  auto [complete, missing] = check_completeness(spec, queried, covered);
  findings.complete = complete;
  findings.missing_dimensions = std::move(missing);
  findings.boundary_violations = lint_boundaries(spec, lint_text);
  for (const Violation& v : findings.boundary_violations) {
    if (v.category == "overconfidence") findings.overconfident_terms.push_back(v.span);
    if (v.category == "unhedged_claim") findings.unhedged_claims.push_back(v.span);
  }
  findings.fabricated_values = check_data_provenance(provenance_view, snap);
  findings.metrics = metrics;
  return findings;
}

}  // namespace

AuditFindings audit_report(const AgentSpec& spec, const tracer::AttributionReport& report,
                           const snapshot::DataSnapshot& snap) {
  std::string text = tracer::render_report_text(report, spec);
  StructuredResponse view = parse_response_text(text);
  return finish_audit(spec, report.trigger, report.covered_dimensions, text, view, snap,
                      tracer::compute_metrics(report));
}

AuditFindings audit_response(const AgentSpec& spec, const StructuredResponse& response,
                             const snapshot::DataSnapshot& snap) {
  if (response.queried.empty()) {
    throw AuditError("response does not name the queried question (use 'queried: Q<n>')");
  }
  tracer::ReportMetrics metrics;
  std::vector<Dimension> covered = response.covered_dimensions();
  metrics.dimensions_covered = static_cast<int>(covered.size());

  // Causal factors in free text: hedged causal-verb sentences.
  static const char* kCausalVerbs[] = {"suggests",    "indicates", "caused",
                                       "may reflect", "driven by", "because"};
  for (const std::string& sentence : split_sentences(response.full_text)) {
    std::string s = lower(sentence);
    for (const char* verb : kCausalVerbs) {
      if (!find_term(s, verb).empty()) {
        ++metrics.causal_factors;
        break;
      }
    }
  }

  // Actionable recommendations: items in recommendation sections, minus
  // generic advice.
  for (const auto& [label, body] : response.sections) {
    std::string low = lower(label);
    if (low != "recommendations" && low != "recommendation") continue;
    std::vector<std::string> items;
    std::string body_lower = lower(body);
    // Enumerated "(1) ..." items, else bullet/sentence items.
    std::vector<std::size_t> marks;
    for (std::size_t i = 0; i + 2 < body.size(); ++i) {
      if (body[i] == '(' && std::isdigit(static_cast<unsigned char>(body[i + 1])) &&
          body[i + 2] == ')') {
        marks.push_back(i);
      }
    }
    if (!marks.empty()) {
      for (std::size_t k = 0; k < marks.size(); ++k) {
        std::size_t end = k + 1 < marks.size() ? marks[k + 1] : body.size();
        items.push_back(body.substr(marks[k], end - marks[k]));
      }
    } else {
      for (const std::string& sentence : split_sentences(body)) {
        if (sentence.find_first_not_of(" \t\n-") != std::string::npos) items.push_back(sentence);
      }
    }
    for (const std::string& item : items) {
      std::string item_lower = lower(item);
      bool generic = false;
      for (const std::string& phrase : lexicons::generic_advice()) {
        if (!find_term(item_lower, phrase).empty()) generic = true;
      }
      if (!generic) ++metrics.actionable_recommendations;
    }
  }

  return finish_audit(spec, response.queried, covered, response.full_text, response, snap,
                      metrics);
}

int exit_code(const AuditFindings& findings) {
  if (!findings.complete) return 2;
  if (!findings.boundary_violations.empty()) return 3;
  if (!findings.fabricated_values.empty()) return 4;
  return 0;
}

std::string render_audit_text(const AuditFindings& findings) {
  std::string s;
  s += std::string("complete: ") + (findings.complete ? "yes" : "no") + "\n";
  if (!findings.missing_dimensions.empty()) {
    s += "missing dimensions:";
    for (Dimension d : findings.missing_dimensions) s += " " + std::string(dimension_label(d));
    s += "\n";
  }
  s += "boundary violations: " + std::to_string(findings.boundary_violations.size()) + "\n";
  for (const Violation& v : findings.boundary_violations) {
    s += "  - [" + v.category + "] \"" + v.span + "\" at offset " + std::to_string(v.offset) + "\n";
  }
  s += "fabricated values: " + std::to_string(findings.fabricated_values.size()) + "\n";
  for (const auto& [token, location] : findings.fabricated_values) {
    s += "  - " + token + " (in " + location + ")\n";
  }
  s += "metrics: dimensions_covered=" + std::to_string(findings.metrics.dimensions_covered) +
       " causal_factors=" + std::to_string(findings.metrics.causal_factors) +
       " actionable_recommendations=" +
       std::to_string(findings.metrics.actionable_recommendations) + "\n";
  return s;
}

std::string audit_to_json(const AuditFindings& findings) {
  using json = nlohmann::ordered_json;
  json j;
  j["complete"] = findings.complete;
  json missing = json::array();
  for (Dimension d : findings.missing_dimensions) missing.push_back(std::string(dimension_label(d)));
  j["missing_dimensions"] = std::move(missing);
  json violations = json::array();
  for (const Violation& v : findings.boundary_violations) {
    violations.push_back(
        {{"category", v.category}, {"term", v.term}, {"offset", v.offset}, {"span", v.span}});
  }
  j["boundary_violations"] = std::move(violations);
  j["overconfident_terms"] = findings.overconfident_terms;
  j["unhedged_claims"] = findings.unhedged_claims;
  json fabricated = json::array();
  for (const auto& [token, location] : findings.fabricated_values) {
    fabricated.push_back({{"value", token}, {"location", location}});
  }
  j["fabricated_values"] = std::move(fabricated);
  j["metrics"] = {{"dimensions_covered", findings.metrics.dimensions_covered},
                  {"causal_factors", findings.metrics.causal_factors},
                  {"actionable_recommendations", findings.metrics.actionable_recommendations}};
  return j.dump();
}

}  // namespace attrspec::auditor
