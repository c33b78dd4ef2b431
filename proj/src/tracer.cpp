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

#include "tracer.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace attrspec::tracer {

namespace {

std::string value_text(const condition::Value& v) {
  if (const auto* d = std::get_if<Decimal>(&v)) return d->str();
  if (const auto* s = std::get_if<std::string>(&v)) return "'" + *s + "'";
  return std::get<bool>(v) ? "true" : "false";
}

condition::Value value_from_text(const std::string& text) {
  if (text.size() >= 2 && text.front() == '\'' && text.back() == '\'') {
    return text.substr(1, text.size() - 2);
  }
  if (text == "true") return true;
  if (text == "false") return false;
  if (auto d = Decimal::parse(text)) return *d;
  return text;
}

std::string values_line(const condition::Bindings& values) {
  std::string out;
  for (const auto& [name, value] : values) {
    if (!out.empty()) out += ", ";
    out += name + " = " + value_text(value);
  }
  return out;
}

std::string question_handle(const AgentSpec& spec, const std::string& id) {
  const Question* q = spec.find_question(id);
  if (!q) return id;
  if (!q->short_name.empty()) return id + " (" + q->short_name + ")";
  return id + " (" + q->text + ")";
}

int sla_grace_days(const std::string& sla) {
  if (sla.size() < 3 || sla[1] != '+') return 0;
  int days = 0;
  for (std::size_t i = 2; i < sla.size(); ++i) {
    if (sla[i] < '0' || sla[i] > '9') return 0;
    days = days * 10 + (sla[i] - '0');
  }
  return days;
}

struct Visit {
  std::string question;
  Dimension dimension = Dimension::Results;
};

}  // namespace

bool AttributionReport::covers(Dimension d) const {
  return std::find(covered_dimensions.begin(), covered_dimensions.end(), d) !=
         covered_dimensions.end();
}

FireResult fire_rules(const AgentSpec& spec, const std::string& question_id,
                      const condition::Bindings& bindings) {
  FireResult result;
  const Question* q = spec.find_question(question_id);
  if (!q || !q->policy) return result;
  const DualTrackPolicy& policy = *q->policy;
  AuthorityProfile profile = authority_for(q->dimension);

  auto run_rules = [&](const std::vector<Rule>& rules, const char* track,
                       std::vector<std::string>& out) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      try {
        if (condition::evaluate(rules[i].condition, bindings)) out.push_back(rules[i].output);
      } catch (const condition::EvalError& e) {
        // Caveat text stays digit-free so skipped rules never look like
        // fabricated values to the auditor.
        (void)i;
        result.caveats.push_back(question_id + " " + track + " rule skipped: " + e.what());
      }
    }
  };

  if (policy.interpretation_enabled &&
      profile.interpretation == InterpretationAuthority::RuleBased) {
    run_rules(policy.interpretation_rules, "interpretation", result.interpretations);
  }
  if (policy.recommendation_enabled) {
    if (policy.recommendation_kind == RecommendationKind::OpenEnded &&
        profile.recommendation == RecommendationAuthority::OpenEnded) {
      result.open_suggestions = policy.open_template;
    } else if (policy.recommendation_kind == RecommendationKind::RuleBased &&
               profile.recommendation == RecommendationAuthority::RuleBased) {
      run_rules(policy.recommendation_rules, "recommendation", result.recommendations);
    }
  }
  return result;
}

AttributionReport trace(const AgentSpec& spec, const std::string& trigger,
                        const snapshot::DataSnapshot& snap,
                        const std::optional<std::string>& evaluation_date) {
  const Question* trigger_q = spec.find_question(trigger);
  if (!trigger_q) throw TraceError("unknown trigger '" + trigger + "'");

  std::vector<const AttributionChain*> chains;
  for (const AttributionChain& chain : spec.graph.chains) {
    if (chain.trigger == trigger) chains.push_back(&chain);
  }
  if (chains.empty()) throw TraceError("trigger '" + trigger + "' has no attribution chain");

  const condition::Bindings* trigger_bindings = snap.bindings_for(trigger);
  if (!trigger_bindings) {
    throw TraceError("snapshot provides no bindings for trigger '" + trigger + "'");
  }

  std::optional<long> eval_days;
  if (evaluation_date) {
    eval_days = snapshot::parse_date_days(*evaluation_date);
    if (!eval_days) throw TraceError("evaluation date must be ISO-8601 (YYYY-MM-DD)");
  }

  // Merge every chain's groups in declaration order, first visit wins, then
  // order by depth; stable sort preserves group order within a dimension.
  std::vector<Visit> visits;
  std::set<std::string> seen = {trigger};
  visits.push_back({trigger, trigger_q->dimension});
  for (const AttributionChain* chain : chains) {
    for (const ChainGroup& group : chain->groups) {
      for (const std::string& id : group.members) {
        if (!seen.insert(id).second) continue;
        const Question* q = spec.find_question(id);
        if (q) visits.push_back({id, q->dimension});
      }
    }
  }
  std::stable_sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) {
    return dimension_depth(a.dimension) < dimension_depth(b.dimension);
  });

  AttributionReport report;
  report.trigger = trigger;
  report.queried_dimension = trigger_q->dimension;
  report.snapshot_id = snap.snapshot_id;

  // Opening thought announces the chain plan.
  std::vector<std::string> plan;
  for (const Visit& v : visits) {
    if (v.question == trigger) continue;
    std::string label(dimension_label(v.dimension));
    if (plan.empty() || plan.back() != label) plan.push_back(label);
  }
  std::string plan_text = "User asks about " + trigger_q->text + ". Per attribution model, trace " +
                          trigger;
  for (const std::string& label : plan) plan_text += " -> " + label;
  plan_text += ".";
  report.step_log.push_back({TraceStep::Kind::Thought, plan_text});

  std::set<Dimension> covered;
  Dimension previous = trigger_q->dimension;
  bool first = true;
  for (const Visit& visit : visits) {
    if (!first && visit.dimension != previous) {
      std::string label(dimension_label(visit.dimension));
      std::string text = visit.dimension == Dimension::Process
                             ? "Check Process factors per attribution chain."
                             : "Check " + label + " context.";
      report.step_log.push_back({TraceStep::Kind::Thought, text});
    }
    previous = visit.dimension;
    first = false;

    report.step_log.push_back(
        {TraceStep::Kind::Action, "Query " + question_handle(spec, visit.question) + "."});

    const condition::Bindings* bindings = snap.bindings_for(visit.question);
    if (!bindings) {
      report.step_log.push_back({TraceStep::Kind::Observation, "data unavailable"});
      report.caveats.push_back(question_handle(spec, visit.question) +
                               ": data unavailable in snapshot");
      continue;
    }

    report.step_log.push_back({TraceStep::Kind::Observation, values_line(*bindings)});
    covered.insert(visit.dimension);

    ReportFinding finding;
    finding.question = visit.question;
    finding.dimension = visit.dimension;
    finding.values = *bindings;

    condition::Bindings merged = snap.context;
    for (const auto& [name, value] : *bindings) merged[name] = value;
    FireResult fired = fire_rules(spec, visit.question, merged);
    finding.interpretations = std::move(fired.interpretations);
    finding.recommendations = std::move(fired.recommendations);
    finding.open_suggestions = std::move(fired.open_suggestions);
    for (std::string& caveat : fired.caveats) report.caveats.push_back(std::move(caveat));
    report.findings.push_back(std::move(finding));

    // Layer 5 data-integrity discipline: every displayed value carries its
    // as-of date; stale data earns an explicit caveat.
    auto as_of = snap.as_of.find(visit.question);
    if (as_of != snap.as_of.end()) {
      report.caveats.push_back(visit.question + ": as of " + as_of->second);
      const Question* q = spec.find_question(visit.question);
      if (eval_days && q && q->mapping) {
        auto data_days = snapshot::parse_date_days(as_of->second);
        if (data_days) {
          long age = *eval_days - *data_days;
          long allowed = update_frequency_days(q->mapping->update_frequency) +
                         sla_grace_days(q->mapping->freshness_sla);
          if (age > allowed) {
            report.caveats.push_back(visit.question + ": data may be stale (as of " +
                                     as_of->second + "; " +
                                     std::string(update_frequency_name(
                                         q->mapping->update_frequency)) +
                                     " source)");
          }
        }
      }
    }
  }

  covered.insert(trigger_q->dimension);
  for (Dimension d : kAllDimensions) {
    if (covered.count(d)) report.covered_dimensions.push_back(d);
  }

  bool beyond_process = false;
  for (const ReportFinding& finding : report.findings) {
    if (dimension_depth(finding.dimension) >= dimension_depth(Dimension::Support)) {
      beyond_process = true;
    }
  }
  if (beyond_process) {
    report.caveats.push_back("Strategic resource allocation decisions require management review.");
  }

  std::string summary = "Attribution trace complete. Dimensions covered:";
  for (std::size_t i = 0; i < report.covered_dimensions.size(); ++i) {
    summary += i ? ", " : " ";
    summary += dimension_label(report.covered_dimensions[i]);
  }
  summary += ".";
  report.step_log.push_back({TraceStep::Kind::Thought, summary});
  return report;
}

const std::vector<TraceStep>& emit_react_log(const AttributionReport& report) {
  const auto& steps = report.step_log;
  if (steps.empty() || steps.front().kind != TraceStep::Kind::Thought) {
    throw TraceError("step log must start with a Thought");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].kind == steps[i - 1].kind) {
      throw TraceError("step log kinds must alternate");
    }
    if (steps[i].kind == TraceStep::Kind::Observation &&
        steps[i - 1].kind != TraceStep::Kind::Action) {
      throw TraceError("observations must follow actions");
    }
  }
  auto last = steps.back().kind;
  if (last == TraceStep::Kind::Action) throw TraceError("step log cannot end on an Action");
  return steps;
}

ReportMetrics compute_metrics(const AttributionReport& report) {
  ReportMetrics m;
  m.dimensions_covered = static_cast<int>(report.covered_dimensions.size());
  for (const ReportFinding& finding : report.findings) {
    m.causal_factors += static_cast<int>(finding.interpretations.size());
    m.actionable_recommendations += static_cast<int>(finding.recommendations.size());
  }
  return m;
}

std::string render_report_text(const AttributionReport& report, const AgentSpec& spec) {
  const Question* trigger_q = spec.find_question(report.trigger);
  std::string s = "# Attribution Report: " + report.trigger;
  if (trigger_q) s += " (" + trigger_q->text + ")";
  s += "\n";
  if (!report.snapshot_id.empty()) s += "Snapshot: " + report.snapshot_id + "\n";
  s += "Queried dimension: " + std::string(dimension_label(report.queried_dimension)) + "\n";

  static const std::pair<Dimension, const char*> kHeadings[] = {
      {Dimension::Results, "Results"},
      {Dimension::Process, "Process Attribution"},
      {Dimension::Support, "Support Context"},
      {Dimension::LongTerm, "Long-term Context"},
  };
  for (const auto& [dim, heading] : kHeadings) {
    bool any = false;
    for (const ReportFinding& finding : report.findings) {
      if (finding.dimension != dim) continue;
      if (!any) {
        s += "\n## " + std::string(heading) + "\n";
        any = true;
      }
      const Question* q = spec.find_question(finding.question);
      s += "- " + finding.question;
      if (q && q->mapping && !q->mapping->name.empty()) {
        s += " (" + q->mapping->name + ")";
      } else if (q) {
        s += " (" + q->text + ")";
      }
      s += ": " + values_line(finding.values) + "\n";
      for (const std::string& text : finding.interpretations) {
        s += "  Interpretation: " + text + "\n";
      }
      for (const std::string& text : finding.recommendations) {
        s += "  Recommendation: " + text + "\n";
      }
      if (!finding.open_suggestions.empty()) {
        s += "  Suggestions:\n";
        std::string tmpl = finding.open_suggestions;
        std::size_t start = 0;
        while (start < tmpl.size()) {
          std::size_t end = tmpl.find('\n', start);
          if (end == std::string::npos) end = tmpl.size();
          std::string line = tmpl.substr(start, end - start);
          if (!line.empty()) s += "    " + line + "\n";
          start = end + 1;
        }
      }
    }
  }

  std::vector<std::string> recommendations;
  for (const ReportFinding& finding : report.findings) {
    for (const std::string& text : finding.recommendations) recommendations.push_back(text);
  }
  if (!recommendations.empty()) {
    s += "\n## Recommendations\n";
    for (std::size_t i = 0; i < recommendations.size(); ++i) {
      s += std::to_string(i + 1) + ". " + recommendations[i] + "\n";
    }
  }

  if (!report.caveats.empty()) {
    s += "\n## Note\n";
    for (const std::string& caveat : report.caveats) s += "- " + caveat + "\n";
  }
  return s;
}

std::string report_to_json(const AttributionReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["snapshot"] = report.snapshot_id;
  j["trigger"] = report.trigger;
  j["queried_dimension"] = std::string(dimension_label(report.queried_dimension));
  json covered = json::array();
  for (Dimension d : report.covered_dimensions) covered.push_back(std::string(dimension_label(d)));
  j["covered_dimensions"] = std::move(covered);
  json findings = json::array();
  for (const ReportFinding& finding : report.findings) {
    json fj;
    fj["question"] = finding.question;
    fj["dimension"] = std::string(dimension_label(finding.dimension));
    json values = json::object();
    for (const auto& [name, value] : finding.values) values[name] = value_text(value);
    fj["values"] = std::move(values);
    fj["interpretations"] = finding.interpretations;
    fj["recommendations"] = finding.recommendations;
    if (!finding.open_suggestions.empty()) fj["open_suggestions"] = finding.open_suggestions;
    findings.push_back(std::move(fj));
  }
  j["findings"] = std::move(findings);
  j["caveats"] = report.caveats;
  ReportMetrics m = compute_metrics(report);
  j["metrics"] = {{"dimensions_covered", m.dimensions_covered},
                  {"causal_factors", m.causal_factors},
                  {"actionable_recommendations", m.actionable_recommendations}};
  json steps = json::array();
  for (const TraceStep& step : report.step_log) {
    const char* kind = step.kind == TraceStep::Kind::Thought
                           ? "Thought"
                           : step.kind == TraceStep::Kind::Action ? "Action" : "Observation";
    steps.push_back({{"kind", kind}, {"text", step.text}});
  }
  j["steps"] = std::move(steps);
  return j.dump();
}

AttributionReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  AttributionReport report;
  report.snapshot_id = j.value("snapshot", "");
  report.trigger = j.value("trigger", "");
  auto dim_from_label = [](const std::string& label) -> Dimension {
    for (Dimension d : kAllDimensions) {
      if (label == dimension_label(d)) return d;
    }
    throw TraceError("unknown dimension label '" + label + "'");
  };
  report.queried_dimension = dim_from_label(j.value("queried_dimension", "Results"));
  for (const auto& label : j.value("covered_dimensions", nlohmann::json::array())) {
    report.covered_dimensions.push_back(dim_from_label(label.get<std::string>()));
  }
  for (const auto& fj : j.value("findings", nlohmann::json::array())) {
    ReportFinding finding;
    finding.question = fj.value("question", "");
    finding.dimension = dim_from_label(fj.value("dimension", "Results"));
    if (fj.contains("values")) {
      for (const auto& [name, value] : fj["values"].items()) {
        finding.values[name] = value_from_text(value.get<std::string>());
      }
    }
    for (const auto& t : fj.value("interpretations", nlohmann::json::array())) {
      finding.interpretations.push_back(t.get<std::string>());
    }
    for (const auto& t : fj.value("recommendations", nlohmann::json::array())) {
      finding.recommendations.push_back(t.get<std::string>());
    }
    finding.open_suggestions = fj.value("open_suggestions", "");
    report.findings.push_back(std::move(finding));
  }
  for (const auto& c : j.value("caveats", nlohmann::json::array())) {
    report.caveats.push_back(c.get<std::string>());
  }
  for (const auto& sj : j.value("steps", nlohmann::json::array())) {
    TraceStep step;
    std::string kind = sj.value("kind", "Thought");
    step.kind = kind == "Action" ? TraceStep::Kind::Action
                                 : kind == "Observation" ? TraceStep::Kind::Observation
                                                         : TraceStep::Kind::Thought;
    step.text = sj.value("text", "");
    report.step_log.push_back(std::move(step));
  }
  return report;
}

std::string render_react_text(const AttributionReport& report) {
  std::string out;
  for (const TraceStep& step : report.step_log) {
    const char* kind = step.kind == TraceStep::Kind::Thought
                           ? "Thought"
                           : step.kind == TraceStep::Kind::Action ? "Action" : "Observation";
    out += std::string(kind) + ": " + step.text + "\n";
  }
  return out;
}

}  // namespace attrspec::tracer
