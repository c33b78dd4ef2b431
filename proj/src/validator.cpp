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

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"

namespace attrspec::validator {

namespace {

using Severity = Finding::Severity;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Tarjan's strongly connected components; emitted in a deterministic order.
struct Tarjan {
  const std::map<std::string, std::vector<std::string>>& adj;
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  int counter = 0;
  std::vector<std::vector<std::string>> components;

  explicit Tarjan(const std::map<std::string, std::vector<std::string>>& a) : adj(a) {}

  void run() {
    for (const auto& [node, unused] : adj) {
      (void)unused;
      if (!index.count(node)) strongconnect(node);
    }
  }

  void strongconnect(const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    auto it = adj.find(v);
    if (it != adj.end()) {
      for (const std::string& w : it->second) {
        if (!index.count(w)) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.count(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> component;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
        if (w == v) break;
      }
      components.push_back(std::move(component));
    }
  }
};

bool valid_freshness_sla(const std::string& sla) {
  if (sla.size() < 3) return false;
  if (sla[0] != 'T' && sla[0] != 'M' && sla[0] != 'Q') return false;
  if (sla[1] != '+') return false;
  for (std::size_t i = 2; i < sla.size(); ++i) {
    if (sla[i] < '0' || sla[i] > '9') return false;
  }
  return true;
}

}  // namespace

std::vector<Finding> check_graph_acyclic(const AttributionGraph& graph) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const std::string& node : graph.nodes) adj[node];
  std::set<std::pair<std::string, std::string>> self_loops;
  for (const auto& [from, to] : graph.edges) {
    if (from == to) {
      self_loops.insert({from, to});
      continue;
    }
    adj[from].push_back(to);
  }
  for (auto& [node, targets] : adj) {
    (void)node;
    std::sort(targets.begin(), targets.end(), question_id_less);
  }

  Tarjan tarjan(adj);
  tarjan.run();

  std::vector<Finding> out;
  std::vector<std::vector<std::string>> cycles;
  for (auto& component : tarjan.components) {
    if (component.size() > 1) {
      std::sort(component.begin(), component.end(), question_id_less);
      cycles.push_back(std::move(component));
    }
  }
  for (const auto& [node, unused] : self_loops) {
    (void)unused;
    cycles.push_back({node});
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    return question_id_less(a.front(), b.front());
  });
  for (const auto& members : cycles) {
    Finding f;
    f.code = "E_CYCLE";
    f.severity = Severity::Error;
    f.subject = join(members, ",");
    f.message = members.size() == 1
                    ? "self-loop on " + members.front()
                    : "attribution graph contains a cycle through {" + join(members, ", ") + "}";
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> check_dimension_monotonicity(const AgentSpec& spec) {
  std::vector<Finding> out;
  auto depth_of = [&](const std::string& id) -> int {
    const Question* q = spec.find_question(id);
    return q ? dimension_depth(q->dimension) : 0;
  };

  // Stored edges run in causal direction, deeper (or equal) to shallower; a
  // shallower-to-deeper edge would let effects explain their own causes.
  for (const auto& [from, to] : spec.graph.edges) {
    const Question* qf = spec.find_question(from);
    const Question* qt = spec.find_question(to);
    if (!qf || !qt) continue;
    if (qf->dimension != qt->dimension && depth_of(from) < depth_of(to)) {
      Finding f;
      f.code = "E_DEPTH";
      f.severity = Severity::Error;
      f.subject = from + "->" + to;
      f.message = "edge " + from + " (" + std::string(dimension_label(qf->dimension)) + ") -> " +
                  to + " (" + std::string(dimension_label(qt->dimension)) +
                  ") runs from shallower to deeper dimension";
      out.push_back(std::move(f));
    }
  }

  for (std::size_t i = 0; i < spec.graph.chains.size(); ++i) {
    const AttributionChain& chain = spec.graph.chains[i];
    const Question* trigger = spec.find_question(chain.trigger);
    if (!trigger) continue;
    int trigger_depth = dimension_depth(trigger->dimension);
    std::string subject = "chain[" + std::to_string(i) + "] trigger " + chain.trigger;
    int prev_depth = -1;
    for (const ChainGroup& group : chain.groups) {
      int d = dimension_depth(group.dimension);
      if (d <= trigger_depth) {
        Finding f;
        f.code = "E_DEPTH";
        f.severity = Severity::Error;
        f.subject = subject;
        f.message = "group '" + group.label + "' (" +
                    std::string(dimension_label(group.dimension)) +
                    ") is not strictly deeper than trigger " + chain.trigger + " (" +
                    std::string(dimension_label(trigger->dimension)) + ")";
        out.push_back(std::move(f));
      }
      if (d < prev_depth) {
        Finding f;
        f.code = "E_DEPTH";
        f.severity = Severity::Error;
        f.subject = subject;
        f.message = "group '" + group.label + "' decreases in depth; traversal must be non-decreasing";
        out.push_back(std::move(f));
      }
      prev_depth = d;
    }
  }
  return out;
}

std::vector<Finding> check_authority_compliance(const AgentSpec& spec) {
  std::vector<Finding> out;
  for (const Question& q : spec.questions) {
    if (!q.policy) {
      if (q.dimension == Dimension::Process) {
        Finding f;
        f.code = "E_SILENT_TRACK";
        f.severity = Severity::Error;
        f.subject = q.id;
        f.message = q.id + " is a Process question with no dual-track policy; enable the "
                    "tracks or disable them with a rationale";
        out.push_back(std::move(f));
      }
      continue;
    }
    const DualTrackPolicy& p = *q.policy;
    AuthorityProfile profile = authority_for(q.dimension);
    std::string dim(dimension_label(q.dimension));

    if (p.interpretation_enabled && profile.interpretation == InterpretationAuthority::None) {
      Finding f;
      f.code = "E_AUTHORITY";
      f.severity = Severity::Error;
      f.subject = q.id;
      f.message = q.id + " (" + dim + ") enables interpretation, but " + dim +
                  " questions are display only";
      out.push_back(std::move(f));
    }

    if (p.recommendation_enabled) {
      if (profile.recommendation == RecommendationAuthority::None) {
        Finding f;
        f.code = "E_AUTHORITY";
        f.severity = Severity::Error;
        f.subject = q.id;
        f.message = q.id + " (" + dim + ") enables recommendation, but " + dim +
                    " questions are display only";
        out.push_back(std::move(f));
      } else if (profile.recommendation == RecommendationAuthority::OpenEnded &&
                 p.recommendation_kind != RecommendationKind::OpenEnded) {
        Finding f;
        f.code = "E_AUTHORITY";
        f.severity = Severity::Error;
        f.subject = q.id;
        f.message = q.id + " (" + dim + ") uses rule-based recommendations; " + dim +
                    " permits open-ended suggestions only";
        out.push_back(std::move(f));
      }
    }

    // The matrix only grants rule-based tracks to Process; a narrower track
    // on Process is legitimate but must say why.
    if (q.dimension == Dimension::Process) {
      if (!p.interpretation_enabled && p.interpretation_rationale.empty()) {
        Finding f;
        f.code = "E_SILENT_TRACK";
        f.severity = Severity::Error;
        f.subject = q.id;
        f.message = q.id + " disables interpretation without a rationale";
        out.push_back(std::move(f));
      }
      if (!p.recommendation_enabled && p.recommendation_rationale.empty()) {
        Finding f;
        f.code = "E_SILENT_TRACK";
        f.severity = Severity::Error;
        f.subject = q.id;
        f.message = q.id + " disables recommendation without a rationale";
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

std::vector<Finding> check_coverage(const AgentSpec& spec) {
  std::vector<Finding> out;

  // Questions referenced by any chain (trigger or member) or carrying rules
  // need a data source.
  std::vector<std::string> referenced;
  auto reference = [&](const std::string& id) {
    if (std::find(referenced.begin(), referenced.end(), id) == referenced.end()) {
      referenced.push_back(id);
    }
  };
  for (const AttributionChain& chain : spec.graph.chains) {
    reference(chain.trigger);
    for (const ChainGroup& group : chain.groups) {
      for (const std::string& id : group.members) reference(id);
    }
  }
  for (const Question& q : spec.questions) {
    if (q.policy && (!q.policy->interpretation_rules.empty() ||
                     !q.policy->recommendation_rules.empty())) {
      reference(q.id);
    }
  }
  std::sort(referenced.begin(), referenced.end(), question_id_less);
  for (const std::string& id : referenced) {
    const Question* q = spec.find_question(id);
    if (q && !q->mapping) {
      Finding f;
      f.code = "E_UNMAPPED";
      f.severity = Severity::Error;
      f.subject = id;
      f.message = id + " is referenced by a chain or rule but has no data mapping";
      out.push_back(std::move(f));
    }
  }

  // Every identifier inside a rule condition must be exported by the
  // question's mapping or declared as a spec-level context variable.
  std::set<std::string> context(spec.context_variables.begin(), spec.context_variables.end());
  for (const Question& q : spec.questions) {
    if (!q.policy) continue;
    std::set<std::string> exported;
    if (q.mapping) {
      exported.insert(q.mapping->exported_variables.begin(), q.mapping->exported_variables.end());
    }
    std::set<std::string> reported;
    auto check_rules = [&](const std::vector<Rule>& rules) {
      for (const Rule& rule : rules) {
        for (const std::string& var : condition::free_variables(rule.condition)) {
          if (exported.count(var) || context.count(var) || !reported.insert(var).second) continue;
          Finding f;
          f.code = "E_UNBOUND_VAR";
          f.severity = Severity::Error;
          f.subject = q.id + ":" + var;
          f.message = q.id + " rule references '" + var +
                      "', which is neither exported by its data mapping nor a context variable";
          out.push_back(std::move(f));
        }
      }
    };
    check_rules(q.policy->interpretation_rules);
    check_rules(q.policy->recommendation_rules);
  }

  // Chains must reach every dimension between trigger depth + 1 and
  // Long-term; skipping one breaks the backward causal path.
  for (std::size_t i = 0; i < spec.graph.chains.size(); ++i) {
    const AttributionChain& chain = spec.graph.chains[i];
    const Question* trigger = spec.find_question(chain.trigger);
    if (!trigger) continue;
    std::set<int> present;
    for (const ChainGroup& group : chain.groups) {
      if (!group.members.empty()) present.insert(dimension_depth(group.dimension));
    }
    std::vector<std::string> missing;
    for (int d = dimension_depth(trigger->dimension) + 1; d <= 3; ++d) {
      if (!present.count(d)) {
        for (Dimension dim : kAllDimensions) {
          if (dimension_depth(dim) == d) missing.emplace_back(dimension_label(dim));
        }
      }
    }
    if (!missing.empty()) {
      Finding f;
      f.code = "E_INCOMPLETE_CHAIN";
      f.severity = Severity::Error;
      f.subject = "chain[" + std::to_string(i) + "] trigger " + chain.trigger;
      f.message = "chain for " + chain.trigger + " has no " + join(missing, ", ") +
                  " group; the backward causal path is incomplete";
      out.push_back(std::move(f));
    }
  }

  // Boundary coverage: any global rule covers every dimension; otherwise a
  // dimension needs at least one per-question statement.
  bool has_global = !spec.boundaries.data_integrity.empty() ||
                    !spec.boundaries.scope_limits.empty() ||
                    !spec.boundaries.confidence_calibration.empty() ||
                    !spec.boundaries.attribution_discipline.empty();
  if (!has_global) {
    for (Dimension dim : kAllDimensions) {
      bool covered = false;
      for (const auto& [qid, statements] : spec.boundaries.per_question) {
        const Question* q = spec.find_question(qid);
        if (q && q->dimension == dim && !statements.empty()) covered = true;
      }
      if (!covered) {
        Finding f;
        f.code = "W_NO_BOUNDARY";
        f.severity = Severity::Warning;
        f.subject = std::string(dimension_label(dim));
        f.message = "no boundary statement covers the " + std::string(dimension_label(dim)) +
                    " dimension";
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

std::vector<Finding> check_mappings(const AgentSpec& spec) {
  std::vector<Finding> out;
  for (const Question& q : spec.questions) {
    if (!q.mapping) continue;
    if (!valid_freshness_sla(q.mapping->freshness_sla)) {
      Finding f;
      f.code = "E_FRESHNESS";
      f.severity = Severity::Error;
      f.subject = q.id;
      f.message = q.id + " freshness_sla '" + q.mapping->freshness_sla +
                  "' does not match [TMQ]+<digits>";
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Finding> validate(const AgentSpec& spec) {
  std::vector<Finding> out;
  auto append = [&](std::vector<Finding> findings) {
    out.insert(out.end(), std::make_move_iterator(findings.begin()),
               std::make_move_iterator(findings.end()));
  };
  append(check_graph_acyclic(spec.graph));
  append(check_dimension_monotonicity(spec));
  append(check_authority_compliance(spec));
  append(check_coverage(spec));
  append(check_mappings(spec));
  return out;
}

int error_count(const std::vector<Finding>& findings) {
  int n = 0;
  for (const Finding& f : findings) {
    if (f.severity == Severity::Error) ++n;
  }
  return n;
}

int warning_count(const std::vector<Finding>& findings) {
  int n = 0;
  for (const Finding& f : findings) {
    if (f.severity == Severity::Warning) ++n;
  }
  return n;
}

std::string render_finding(const Finding& f) {
  std::string out = f.severity == Severity::Error ? "error" : "warning";
  out += " " + f.code + " [" + f.subject + "]: " + f.message;
  return out;
}

std::string finding_to_json(const Finding& f) {
  nlohmann::ordered_json j;
  j["code"] = f.code;
  j["severity"] = f.severity == Severity::Error ? "error" : "warning";
  j["subject"] = f.subject;
  j["message"] = f.message;
  return j.dump();
}

}  // namespace attrspec::validator
