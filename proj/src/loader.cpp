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

#include "loader.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lexicons.hpp"

namespace attrspec::loader {

namespace {

namespace fs = std::filesystem;
using yamlite::Node;
using Severity = LoadDiagnostic::Severity;

const char* kLayerNames[5] = {"question_inventory", "attribution_model", "data_mapping",
                              "dual_track_logic", "boundary_constraints"};

bool valid_question_id(std::string_view id) {
  if (id.size() < 2 || id[0] != 'Q') return false;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return false;
  }
  return true;
}

bool valid_variable(std::string_view name) {
  if (name.empty()) return false;
  char c0 = name[0];
  bool alpha_start = (c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z');
  if (!alpha_start) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) {
      return false;
    }
  }
  return true;
}

struct Ctx {
  std::vector<LoadDiagnostic> diags;
  bool failed = false;

  void error(int layer, std::string path, std::string message) {
    diags.push_back({Severity::Error, layer, std::move(path), std::move(message)});
    failed = true;
  }
  void warn(int layer, std::string path, std::string message) {
    diags.push_back({Severity::Warning, layer, std::move(path), std::move(message)});
  }
};

std::string scalar_text(const Node& n) {
  if (n.is_string() || n.is_number()) return n.scalar;
  if (n.is_bool()) return n.boolean ? "true" : "false";
  return "";
}

const Node* require_map(Ctx& ctx, int layer, const Node& n, const std::string& path) {
  if (n.is_map()) return &n;
  ctx.error(layer, path, "expected a mapping");
  return nullptr;
}

// Flags keys outside the known set; unknown keys warn, never drop silently.
void check_keys(Ctx& ctx, int layer, const Node& map, const std::string& path,
                std::initializer_list<std::string_view> known) {
  if (!map.is_map()) return;
  for (const auto& [key, value] : map.map) {
    (void)value;
    bool found = false;
    for (auto k : known) {
      if (key == k) {
        found = true;
        break;
      }
    }
    if (!found) ctx.warn(layer, path + "." + key, "unknown key '" + key + "'");
  }
}

std::vector<std::string> string_list(Ctx& ctx, int layer, const Node& n, const std::string& path) {
  std::vector<std::string> out;
  if (n.is_null()) return out;
  if (!n.is_seq()) {
    ctx.error(layer, path, "expected a list");
    return out;
  }
  for (std::size_t i = 0; i < n.seq.size(); ++i) {
    const Node& item = n.seq[i];
    if (!item.is_scalar()) {
      ctx.error(layer, path + "[" + std::to_string(i) + "]", "expected a scalar");
      continue;
    }
    out.push_back(scalar_text(item));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layer 1: question inventory
// ---------------------------------------------------------------------------

void parse_layer1(Ctx& ctx, const Node& doc, AgentSpec& spec) {
  const int L = 1;
  if (doc.is_null()) {
    ctx.error(L, "", "layer 1 is empty; a question inventory is required");
    return;
  }
  if (!require_map(ctx, L, doc, "")) return;
  check_keys(ctx, L, doc, "layer1", {"agent_name", "context_variables", "question_inventory"});

  if (const Node* name = doc.get("agent_name")) spec.agent_name = scalar_text(*name);
  if (spec.agent_name.empty()) spec.agent_name = "Attribution Agent";

  if (const Node* cv = doc.get("context_variables")) {
    for (const std::string& v : string_list(ctx, L, *cv, "context_variables")) {
      if (!valid_variable(v)) {
        ctx.error(L, "context_variables", "invalid variable name '" + v + "'");
        continue;
      }
      spec.context_variables.push_back(v);
    }
  }

  const Node* inventory = doc.get("question_inventory");
  if (!inventory) {
    ctx.error(L, "question_inventory", "missing question_inventory");
    return;
  }
  if (!require_map(ctx, L, *inventory, "question_inventory")) return;

  std::set<std::string> seen;
  for (const auto& [dim_key, entries] : inventory->map) {
    std::string path = "question_inventory." + dim_key;
    auto dim = dimension_from_key(dim_key);
    if (!dim) {
      // The dimension set is closed; anything else is an error, not a warning.
      ctx.error(L, path, "unknown dimension '" + dim_key + "'");
      continue;
    }
    if (!entries.is_seq()) {
      ctx.error(L, path, "expected a list of questions");
      continue;
    }
    for (std::size_t i = 0; i < entries.seq.size(); ++i) {
      const Node& entry = entries.seq[i];
      std::string epath = path + "[" + std::to_string(i) + "]";
      if (!entry.is_map()) {
        ctx.error(L, epath, "expected a question entry mapping");
        continue;
      }
      check_keys(ctx, L, entry, epath,
                 {"id", "question", "short", "data_source", "interpretation", "recommendation",
                  "notes"});
      Question q;
      q.dimension = *dim;
      if (const Node* id = entry.get("id")) q.id = scalar_text(*id);
      if (!valid_question_id(q.id)) {
        ctx.error(L, epath + ".id", "question id must match Q<digits>, got '" + q.id + "'");
        continue;
      }
      if (!seen.insert(q.id).second) {
        ctx.error(L, epath + ".id", "duplicate question id '" + q.id + "'");
        continue;
      }
      if (const Node* text = entry.get("question")) q.text = scalar_text(*text);
      if (q.text.empty()) ctx.error(L, epath + ".question", "question text is required");
      if (const Node* s = entry.get("short")) q.short_name = scalar_text(*s);
      spec.questions.push_back(std::move(q));
    }
  }
  if (spec.questions.empty()) ctx.error(L, "question_inventory", "no questions declared");
}

// ---------------------------------------------------------------------------
// Layer 2: attribution model
// ---------------------------------------------------------------------------

// Splits an ordered path into maximal same-dimension runs so a single trace
// list may cross dimensions.
void append_path_groups(AttributionChain& chain, const std::string& label,
                        const std::vector<std::string>& members, const AgentSpec& spec) {
  ChainGroup current;
  current.label = label;
  current.is_path = true;
  for (const std::string& id : members) {
    const Question* q = spec.find_question(id);
    if (!q) continue;  // already diagnosed
    if (!current.members.empty() && current.dimension != q->dimension) {
      chain.groups.push_back(current);
      current.members.clear();
    }
    current.dimension = q->dimension;
    current.members.push_back(id);
  }
  if (!current.members.empty()) chain.groups.push_back(current);
}

void parse_chain(Ctx& ctx, const Node& node, const std::string& path, AgentSpec& spec) {
  const int L = 2;
  if (!node.is_map()) {
    ctx.error(L, path, "expected a chain mapping");
    return;
  }
  check_keys(ctx, L, node, path,
             {"trigger", "title", "trace", "primary_path", "secondary_path", "support_factors",
              "longterm_context"});
  AttributionChain chain;
  if (const Node* t = node.get("trigger")) chain.trigger = scalar_text(*t);
  const Question* trigger = spec.find_question(chain.trigger);
  if (!trigger) {
    ctx.error(L, path + ".trigger", "chain trigger '" + chain.trigger +
                                        "' does not reference a declared question");
    return;
  }
  if (const Node* t = node.get("title")) chain.title = scalar_text(*t);

  std::set<std::string> in_chain = {chain.trigger};
  auto members_of = [&](const Node& n, const std::string& gpath) {
    std::vector<std::string> ids = string_list(ctx, L, n, gpath);
    std::vector<std::string> out;
    for (const std::string& id : ids) {
      if (!spec.find_question(id)) {
        ctx.error(L, gpath, "chain member '" + id + "' does not reference a declared question");
        continue;
      }
      if (!in_chain.insert(id).second) {
        ctx.error(L, gpath, "question '" + id + "' appears twice in the chain");
        continue;
      }
      out.push_back(id);
    }
    return out;
  };

  static const char* kPathKeys[] = {"trace", "primary_path", "secondary_path"};
  for (const char* key : kPathKeys) {
    if (const Node* n = node.get(key)) {
      append_path_groups(chain, key, members_of(*n, path + "." + key), spec);
    }
  }
  static const char* kSetKeys[] = {"support_factors", "longterm_context"};
  for (const char* key : kSetKeys) {
    const Node* n = node.get(key);
    if (!n) continue;
    std::string gpath = path + "." + key;
    std::vector<std::string> ids = members_of(*n, gpath);
    if (ids.empty()) continue;
    ChainGroup group;
    group.label = key;
    group.is_path = false;
    group.dimension = spec.find_question(ids[0])->dimension;
    for (const std::string& id : ids) {
      if (spec.find_question(id)->dimension != group.dimension) {
        ctx.error(L, gpath, "group mixes dimensions ('" + id + "')");
        continue;
      }
      group.members.push_back(id);
    }
    chain.groups.push_back(std::move(group));
  }

  if (chain.groups.empty()) {
    ctx.error(L, path, "chain for '" + chain.trigger + "' declares no members");
    return;
  }
  spec.graph.chains.push_back(std::move(chain));
}

// Chains imply causal edges: within a path, each member is caused by its
// successor; factor-group members explain the trigger directly. A path that
// crossed dimensions was split into same-label runs, so consecutive groups
// sharing a label continue one sequence.
void derive_edges(AgentSpec& spec) {
  std::set<std::pair<std::string, std::string>> seen(spec.graph.edges.begin(),
                                                     spec.graph.edges.end());
  auto add = [&](std::string from, std::string to) {
    if (from == to) return;
    if (seen.insert({from, to}).second) spec.graph.edges.emplace_back(from, to);
  };
  for (const AttributionChain& chain : spec.graph.chains) {
    std::string last_path_label;
    std::string last_path_member;
    for (const ChainGroup& group : chain.groups) {
      if (group.is_path) {
        std::string prev =
            group.label == last_path_label && !last_path_member.empty() ? last_path_member
                                                                        : chain.trigger;
        for (const std::string& id : group.members) {
          add(id, prev);
          prev = id;
        }
        last_path_label = group.label;
        last_path_member = prev;
      } else {
        for (const std::string& id : group.members) add(id, chain.trigger);
      }
    }
  }
}

void parse_layer2(Ctx& ctx, const Node& doc, AgentSpec& spec) {
  const int L = 2;
  for (const Question& q : spec.questions) spec.graph.nodes.push_back(q.id);
  if (doc.is_null()) {
    ctx.error(L, "", "layer 2 is empty; an attribution model is required");
    return;
  }
  if (!require_map(ctx, L, doc, "")) return;
  check_keys(ctx, L, doc, "layer2", {"attribution_model"});
  const Node* model = doc.get("attribution_model");
  if (!model || !model->is_map()) {
    ctx.error(L, "attribution_model", "missing attribution_model mapping");
    return;
  }
  check_keys(ctx, L, *model, "attribution_model", {"chains", "dimension_mapping", "edges"});

  if (const Node* chains = model->get("chains")) {
    if (chains->is_seq()) {
      for (std::size_t i = 0; i < chains->seq.size(); ++i) {
        parse_chain(ctx, chains->seq[i], "attribution_model.chains[" + std::to_string(i) + "]",
                    spec);
      }
    } else {
      ctx.error(L, "attribution_model.chains", "expected a list of chains");
    }
  }

  if (const Node* mapping = model->get("dimension_mapping")) {
    if (mapping->is_map()) {
      for (const auto& [dim_key, ids] : mapping->map) {
        std::string path = "attribution_model.dimension_mapping." + dim_key;
        auto dim = dimension_from_key(dim_key);
        if (!dim) {
          ctx.error(L, path, "unknown dimension '" + dim_key + "'");
          continue;
        }
        for (const std::string& id : string_list(ctx, L, ids, path)) {
          const Question* q = spec.find_question(id);
          if (!q) {
            ctx.error(L, path, "'" + id + "' does not reference a declared question");
          } else if (q->dimension != *dim) {
            ctx.error(L, path,
                      "'" + id + "' is declared as " + std::string(dimension_label(q->dimension)) +
                          " in layer 1 but mapped to " + std::string(dimension_label(*dim)));
          }
        }
      }
    } else {
      ctx.error(L, "attribution_model.dimension_mapping", "expected a mapping");
    }
  }

  if (const Node* edges = model->get("edges")) {
    if (edges->is_seq()) {
      for (std::size_t i = 0; i < edges->seq.size(); ++i) {
        const Node& e = edges->seq[i];
        std::string path = "attribution_model.edges[" + std::to_string(i) + "]";
        if (!e.is_seq() || e.seq.size() != 2 || !e.seq[0].is_scalar() || !e.seq[1].is_scalar()) {
          ctx.error(L, path, "expected a [from, to] pair");
          continue;
        }
        std::string from = scalar_text(e.seq[0]);
        std::string to = scalar_text(e.seq[1]);
        bool ok = true;
        for (const std::string& id : {from, to}) {
          if (!spec.find_question(id)) {
            ctx.error(L, path, "edge endpoint '" + id + "' does not reference a declared question");
            ok = false;
          }
        }
        if (ok) spec.graph.edges.emplace_back(from, to);
      }
    } else {
      ctx.error(L, "attribution_model.edges", "expected a list of [from, to] pairs");
    }
  }

  derive_edges(spec);
}

// ---------------------------------------------------------------------------
// Layer 3: data mapping
// ---------------------------------------------------------------------------

std::optional<SourceKind> source_kind_from(std::string_view label) {
  if (label == "database" || label == "core_banking_system" || label == "crm_system") {
    return SourceKind::Database;
  }
  if (label == "knowledge_base") return SourceKind::KnowledgeBase;
  if (label == "analytics_api" || label == "analytics_platform") return SourceKind::AnalyticsApi;
  return std::nullopt;
}

std::optional<UpdateFrequency> frequency_from(std::string_view text) {
  if (text == "daily") return UpdateFrequency::Daily;
  if (text == "weekly") return UpdateFrequency::Weekly;
  if (text == "monthly") return UpdateFrequency::Monthly;
  if (text == "quarterly") return UpdateFrequency::Quarterly;
  return std::nullopt;
}

std::vector<std::string> locator_placeholders(const std::string& locator) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = locator.find('{', i)) != std::string::npos) {
    std::size_t end = locator.find('}', i);
    if (end == std::string::npos) break;
    std::string name = locator.substr(i + 1, end - i - 1);
    if (valid_variable(name) && std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(name);
    }
    i = end + 1;
  }
  return out;
}

void parse_layer3(Ctx& ctx, const Node& doc, AgentSpec& spec) {
  const int L = 3;
  if (doc.is_null()) {
    ctx.error(L, "", "layer 3 is empty; a data mapping is required");
    return;
  }
  if (!require_map(ctx, L, doc, "")) return;
  check_keys(ctx, L, doc, "layer3", {"data_mapping"});
  const Node* mappings = doc.get("data_mapping");
  if (!mappings || !mappings->is_map()) {
    ctx.error(L, "data_mapping", "missing data_mapping mapping");
    return;
  }
  for (const auto& [qid, entry] : mappings->map) {
    std::string path = "data_mapping." + qid;
    Question* q = nullptr;
    for (Question& candidate : spec.questions) {
      if (candidate.id == qid) q = &candidate;
    }
    if (!q) {
      ctx.error(L, path, "'" + qid + "' does not reference a declared question");
      continue;
    }
    if (!entry.is_map()) {
      ctx.error(L, path, "expected a mapping entry");
      continue;
    }
    check_keys(ctx, L, entry, path,
               {"name", "source_type", "connection", "query_template", "file_pattern", "endpoint",
                "parse_method", "parameters", "update_frequency", "freshness_sla",
                "exported_variables", "notes"});
    DataMapping m;
    if (const Node* n = entry.get("name")) m.name = scalar_text(*n);
    if (m.name.empty()) m.name = q->text;

    if (const Node* st = entry.get("source_type")) {
      m.source_label = scalar_text(*st);
      if (auto kind = source_kind_from(m.source_label)) {
        m.kind = *kind;
      } else {
        ctx.error(L, path + ".source_type", "unknown source_type '" + m.source_label + "'");
      }
    } else {
      ctx.error(L, path + ".source_type", "source_type is required");
    }

    if (const Node* c = entry.get("connection")) m.connection = scalar_text(*c);
    if (const Node* pm = entry.get("parse_method")) m.parse_method = scalar_text(*pm);
    if (const Node* n = entry.get("notes")) m.notes = scalar_text(*n);

    int locators = 0;
    for (const char* key : {"query_template", "file_pattern", "endpoint"}) {
      if (const Node* loc = entry.get(key)) {
        ++locators;
        m.locator = scalar_text(*loc);
      }
    }
    if (locators == 0) {
      ctx.error(L, path, "one of query_template, file_pattern, endpoint is required");
    } else if (locators > 1) {
      ctx.error(L, path, "only one of query_template, file_pattern, endpoint may be given");
    }

    if (const Node* params = entry.get("parameters")) {
      if (params->is_map()) {
        for (const auto& [name, unused] : params->map) {
          (void)unused;
          m.parameters.push_back(name);
        }
      } else if (params->is_seq()) {
        m.parameters = string_list(ctx, L, *params, path + ".parameters");
      } else {
        ctx.error(L, path + ".parameters", "expected a mapping or list of parameter names");
      }
    }
    for (const std::string& placeholder : locator_placeholders(m.locator)) {
      if (std::find(m.parameters.begin(), m.parameters.end(), placeholder) ==
          m.parameters.end()) {
        ctx.error(L, path, "locator placeholder '{" + placeholder + "}' is not declared under parameters");
      }
    }

    if (const Node* f = entry.get("update_frequency")) {
      if (auto freq = frequency_from(scalar_text(*f))) {
        m.update_frequency = *freq;
      } else {
        ctx.error(L, path + ".update_frequency",
                  "unknown update_frequency '" + scalar_text(*f) + "'");
      }
    } else {
      ctx.error(L, path + ".update_frequency", "update_frequency is required");
    }

    if (const Node* sla = entry.get("freshness_sla")) m.freshness_sla = scalar_text(*sla);

    if (const Node* ev = entry.get("exported_variables")) {
      for (const std::string& v : string_list(ctx, L, *ev, path + ".exported_variables")) {
        if (!valid_variable(v)) {
          ctx.error(L, path + ".exported_variables", "invalid variable name '" + v + "'");
          continue;
        }
        m.exported_variables.push_back(v);
      }
    }

    q->mapping = std::move(m);
  }
}

// ---------------------------------------------------------------------------
// Layer 4: dual-track logic
// ---------------------------------------------------------------------------

struct AliasTable {
  std::vector<std::pair<std::string, std::string>> entries;
};

AliasTable read_aliases(const Node& layer4_root) {
  AliasTable table;
  const Node* logic = layer4_root.get("dual_track_logic");
  if (!logic) return table;
  const Node* aliases = logic->get("aliases");
  if (!aliases || !aliases->is_map()) return table;
  for (const auto& [key, value] : aliases->map) {
    if (value.is_scalar()) table.entries.emplace_back(key, scalar_text(value));
  }
  return table;
}

// Replaces "identifier <alias>" phrases with the alias expansion in
// parentheses; returns whether anything changed.
bool apply_aliases(const AliasTable& table, std::string& text) {
  bool changed = false;
  for (const auto& [key, replacement] : table.entries) {
    std::regex pattern("\\b[a-z][a-z0-9_]*\\s+" + key + "\\b");
    std::string next = std::regex_replace(text, pattern, "(" + replacement + ")");
    if (next != text) {
      changed = true;
      text = std::move(next);
    }
  }
  return changed;
}

std::vector<ParsedCondition> parse_conditions_with(const Node& layer4_root,
                                                   const AliasTable& aliases) {
  std::vector<ParsedCondition> out;
  const Node* logic = layer4_root.get("dual_track_logic");
  if (!logic || !logic->is_map()) return out;
  for (const auto& [qid, entry] : logic->map) {
    if (qid == "aliases" || !entry.is_map()) continue;
    for (const char* track : {"interpretation", "recommendation"}) {
      const Node* track_node = entry.get(track);
      if (!track_node || !track_node->is_map()) continue;
      const Node* rules = track_node->get("rules");
      if (!rules || !rules->is_seq()) continue;
      for (std::size_t i = 0; i < rules->seq.size(); ++i) {
        const Node* cond = rules->seq[i].is_map() ? rules->seq[i].get("condition") : nullptr;
        ParsedCondition parsed;
        parsed.question = qid;
        parsed.track = track;
        parsed.index = static_cast<int>(i);
        std::string location = "dual_track_logic." + qid + "." + track + ".rules[" +
                               std::to_string(i) + "].condition";
        if (!cond || !cond->is_scalar()) {
          parsed.error = location + ": condition is required";
          out.push_back(std::move(parsed));
          continue;
        }
        parsed.text = scalar_text(*cond);
        parsed.aliased = apply_aliases(aliases, parsed.text);
        try {
          parsed.ast = condition::parse_condition(parsed.text);
        } catch (const condition::ParseError& e) {
          parsed.error = location + ": " + e.what();
        }
        out.push_back(std::move(parsed));
      }
    }
  }
  return out;
}

void parse_layer4(Ctx& ctx, const Node& doc, AgentSpec& spec) {
  const int L = 4;
  if (doc.is_null()) {
    ctx.warn(L, "", "no dual-track logic declared");
    return;
  }
  if (!require_map(ctx, L, doc, "")) return;
  check_keys(ctx, L, doc, "layer4", {"dual_track_logic"});
  const Node* logic = doc.get("dual_track_logic");
  if (!logic || !logic->is_map()) {
    ctx.warn(L, "dual_track_logic", "no dual-track logic declared");
    return;
  }

  AliasTable aliases = read_aliases(doc);
  std::vector<ParsedCondition> conditions = parse_conditions_with(doc, aliases);
  auto find_condition = [&](const std::string& qid, const char* track,
                            int index) -> const ParsedCondition* {
    for (const ParsedCondition& c : conditions) {
      if (c.question == qid && c.track == track && c.index == index) return &c;
    }
    return nullptr;
  };
  for (const ParsedCondition& c : conditions) {
    if (!c.error.empty()) {
      std::size_t sep = c.error.find(": ");
      if (sep == std::string::npos) {
        ctx.error(L, "", c.error);
      } else {
        ctx.error(L, c.error.substr(0, sep), c.error.substr(sep + 2));
      }
    }
    if (c.aliased && c.ast) {
      ctx.warn(L,
               "dual_track_logic." + c.question + "." + c.track + ".rules[" +
                   std::to_string(c.index) + "].condition",
               "informal condition normalized via alias table to \"" + c.text + "\"");
    }
  }

  for (const auto& [qid, entry] : logic->map) {
    if (qid == "aliases") continue;
    std::string path = "dual_track_logic." + qid;
    Question* q = nullptr;
    for (Question& candidate : spec.questions) {
      if (candidate.id == qid) q = &candidate;
    }
    if (!q) {
      ctx.error(L, path, "'" + qid + "' does not reference a declared question");
      continue;
    }
    if (!entry.is_map()) {
      ctx.error(L, path, "expected a policy mapping");
      continue;
    }
    check_keys(ctx, L, entry, path, {"interpretation", "recommendation", "display_note"});
    DualTrackPolicy policy;
    if (const Node* note = entry.get("display_note")) policy.display_note = scalar_text(*note);

    auto read_rules = [&](const Node& track_node, const char* track,
                          std::vector<Rule>& out) {
      const Node* rules = track_node.get("rules");
      if (!rules) return;
      if (!rules->is_seq()) {
        ctx.error(L, path + "." + track + ".rules", "expected a list of rules");
        return;
      }
      for (std::size_t i = 0; i < rules->seq.size(); ++i) {
        std::string rpath = path + "." + track + ".rules[" + std::to_string(i) + "]";
        const Node& rn = rules->seq[i];
        if (!rn.is_map()) {
          ctx.error(L, rpath, "expected a rule mapping");
          continue;
        }
        check_keys(ctx, L, rn, rpath, {"condition", "output"});
        Rule rule;
        const ParsedCondition* parsed = find_condition(qid, track, static_cast<int>(i));
        if (!parsed || !parsed->ast) continue;  // condition errors already reported
        rule.condition_text = parsed->text;
        rule.condition = *parsed->ast;
        if (const Node* output = rn.get("output")) rule.output = scalar_text(*output);
        if (rule.output.empty()) {
          ctx.error(L, rpath + ".output", "rule output must be non-empty");
          continue;
        }
        out.push_back(std::move(rule));
      }
    };

    if (const Node* interp = entry.get("interpretation")) {
      if (!interp->is_map()) {
        ctx.error(L, path + ".interpretation", "expected a mapping");
      } else {
        check_keys(ctx, L, *interp, path + ".interpretation", {"enabled", "rationale", "rules"});
        if (const Node* en = interp->get("enabled")) policy.interpretation_enabled = en->boolean;
        if (const Node* r = interp->get("rationale")) {
          policy.interpretation_rationale = scalar_text(*r);
        }
        read_rules(*interp, "interpretation", policy.interpretation_rules);
        if (!policy.interpretation_enabled && !policy.interpretation_rules.empty()) {
          ctx.error(L, path + ".interpretation", "rules declared but the track is disabled");
        }
      }
    }

    if (const Node* rec = entry.get("recommendation")) {
      if (!rec->is_map()) {
        ctx.error(L, path + ".recommendation", "expected a mapping");
      } else {
        check_keys(ctx, L, *rec, path + ".recommendation",
                   {"enabled", "rationale", "type", "rules", "template"});
        if (const Node* en = rec->get("enabled")) policy.recommendation_enabled = en->boolean;
        if (const Node* r = rec->get("rationale")) {
          policy.recommendation_rationale = scalar_text(*r);
        }
        std::string type = "rule_based";
        if (const Node* t = rec->get("type")) type = scalar_text(*t);
        if (type == "open_ended") {
          policy.recommendation_kind = RecommendationKind::OpenEnded;
        } else if (type == "rule_based") {
          policy.recommendation_kind = RecommendationKind::RuleBased;
        } else {
          ctx.error(L, path + ".recommendation.type", "unknown recommendation type '" + type + "'");
        }
        read_rules(*rec, "recommendation", policy.recommendation_rules);
        if (const Node* tmpl = rec->get("template")) policy.open_template = scalar_text(*tmpl);

        if (!policy.recommendation_enabled && !policy.recommendation_rules.empty()) {
          ctx.error(L, path + ".recommendation", "rules declared but the track is disabled");
        }
        bool open = policy.recommendation_kind == RecommendationKind::OpenEnded &&
                    policy.recommendation_enabled;
        if (open && policy.open_template.empty()) {
          ctx.error(L, path + ".recommendation", "open_ended recommendation requires a template");
        }
        if (!open && !policy.open_template.empty()) {
          ctx.error(L, path + ".recommendation",
                    "template is only valid for enabled open_ended recommendations");
        }
        if (policy.recommendation_kind == RecommendationKind::OpenEnded &&
            !policy.recommendation_rules.empty()) {
          ctx.error(L, path + ".recommendation", "open_ended recommendations cannot carry rules");
        }
      }
    }

    q->policy = std::move(policy);
  }
}

// ---------------------------------------------------------------------------
// Layer 5: boundary constraints
// ---------------------------------------------------------------------------

void merge_lexicon(std::vector<std::string>& into, const std::vector<std::string>& defaults,
                   const std::vector<std::string>& extra) {
  into = defaults;
  for (const std::string& term : extra) {
    if (std::find(into.begin(), into.end(), term) == into.end()) into.push_back(term);
  }
}

void parse_layer5(Ctx& ctx, const Node& doc, AgentSpec& spec) {
  const int L = 5;
  BoundarySet& b = spec.boundaries;
  merge_lexicon(b.prohibited_topics, lexicons::prohibited_topics(), {});
  merge_lexicon(b.overconfident_terms, lexicons::overconfident_terms(), {});
  merge_lexicon(b.hedging_terms, lexicons::hedging_terms(), {});

  const Node* constraints = doc.is_map() ? doc.get("boundary_constraints") : nullptr;
  if (doc.is_null() || !constraints) {
    ctx.warn(L, "", "no boundaries declared");
    return;
  }
  check_keys(ctx, L, doc, "layer5", {"boundary_constraints"});
  if (!constraints->is_map()) {
    ctx.error(L, "boundary_constraints", "expected a mapping");
    return;
  }
  check_keys(ctx, L, *constraints, "boundary_constraints",
             {"global", "per_question", "results_dimension", "process_dimension",
              "support_dimension", "longterm_dimension", "interaction_rules", "lexicons"});

  if (const Node* global = constraints->get("global")) {
    if (global->is_map()) {
      check_keys(ctx, L, *global, "boundary_constraints.global",
                 {"data_integrity", "scope_limits", "confidence_calibration",
                  "attribution_discipline"});
      auto read = [&](const char* key, std::vector<std::string>& out) {
        if (const Node* n = global->get(key)) {
          out = string_list(ctx, L, *n, std::string("boundary_constraints.global.") + key);
        }
      };
      read("data_integrity", b.data_integrity);
      read("scope_limits", b.scope_limits);
      read("confidence_calibration", b.confidence_calibration);
      read("attribution_discipline", b.attribution_discipline);
    } else {
      ctx.error(L, "boundary_constraints.global", "expected a mapping of categories");
    }
  }

  auto read_per_question = [&](const Node& section, const std::string& path,
                               std::optional<Dimension> expect_dim) {
    if (!section.is_map()) {
      ctx.error(L, path, "expected a mapping of question ids");
      return;
    }
    for (const auto& [qid, statements] : section.map) {
      std::string qpath = path + "." + qid;
      const Question* q = spec.find_question(qid);
      if (!q) {
        ctx.error(L, qpath, "'" + qid + "' does not reference a declared question");
        continue;
      }
      if (expect_dim && q->dimension != *expect_dim) {
        ctx.error(L, qpath,
                  "'" + qid + "' is a " + std::string(dimension_label(q->dimension)) +
                      " question, not " + std::string(dimension_label(*expect_dim)));
        continue;
      }
      std::vector<std::string> list = string_list(ctx, L, statements, qpath);
      for (auto& [id, existing] : b.per_question) {
        if (id == qid) {
          existing.insert(existing.end(), list.begin(), list.end());
          list.clear();
        }
      }
      if (!list.empty()) b.per_question.emplace_back(qid, std::move(list));
    }
  };

  static const std::pair<const char*, Dimension> kSections[] = {
      {"results_dimension", Dimension::Results},
      {"process_dimension", Dimension::Process},
      {"support_dimension", Dimension::Support},
      {"longterm_dimension", Dimension::LongTerm},
  };
  for (const auto& [key, dim] : kSections) {
    if (const Node* section = constraints->get(key)) {
      read_per_question(*section, std::string("boundary_constraints.") + key, dim);
    }
  }
  if (const Node* pq = constraints->get("per_question")) {
    read_per_question(*pq, "boundary_constraints.per_question", std::nullopt);
  }

  if (const Node* rules = constraints->get("interaction_rules")) {
    if (rules->is_map()) {
      for (const auto& [category, list] : rules->map) {
        b.interaction_rules.emplace_back(
            category,
            string_list(ctx, L, list, "boundary_constraints.interaction_rules." + category));
      }
    } else {
      ctx.error(L, "boundary_constraints.interaction_rules", "expected a mapping");
    }
  }

  if (const Node* lex = constraints->get("lexicons")) {
    if (lex->is_map()) {
      check_keys(ctx, L, *lex, "boundary_constraints.lexicons",
                 {"prohibited_topics", "overconfident_terms", "hedging_terms"});
      auto extend = [&](const char* key, const std::vector<std::string>& defaults,
                        std::vector<std::string>& out) {
        if (const Node* n = lex->get(key)) {
          merge_lexicon(out, defaults,
                        string_list(ctx, L, *n, std::string("boundary_constraints.lexicons.") + key));
        }
      };
      extend("prohibited_topics", lexicons::prohibited_topics(), b.prohibited_topics);
      extend("overconfident_terms", lexicons::overconfident_terms(), b.overconfident_terms);
      extend("hedging_terms", lexicons::hedging_terms(), b.hedging_terms);
    } else if (!lex->is_null()) {
      ctx.error(L, "boundary_constraints.lexicons", "expected a mapping");
    }
  }
}

// ---------------------------------------------------------------------------
// File handling
// ---------------------------------------------------------------------------

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int LoadResult::error_count() const {
  int n = 0;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) ++n;
  }
  return n;
}

int LoadResult::warning_count() const {
  int n = 0;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Warning) ++n;
  }
  return n;
}

std::vector<ParsedCondition> parse_condition_fields(const yamlite::Node& layer4) {
  return parse_conditions_with(layer4, read_aliases(layer4));
}

LoadResult assemble(const std::array<yamlite::Node, 5>& layers,
                    const std::array<std::string, 5>& source_paths) {
  Ctx ctx;
  AgentSpec spec;
  for (int i = 0; i < 5; ++i) spec.provenance.emplace_back(i + 1, source_paths[i]);

  parse_layer1(ctx, layers[0], spec);
  if (!spec.questions.empty()) {
    parse_layer2(ctx, layers[1], spec);
    parse_layer3(ctx, layers[2], spec);
    parse_layer4(ctx, layers[3], spec);
    parse_layer5(ctx, layers[4], spec);
  }

  LoadResult result;
  result.diagnostics = std::move(ctx.diags);
  if (!ctx.failed) result.spec = canonicalize(std::move(spec));
  return result;
}

LoadResult load_layers(const std::array<std::string, 5>& paths) {
  std::array<Node, 5> docs;
  Ctx ctx;
  for (int i = 0; i < 5; ++i) {
    auto text = read_file(paths[i]);
    if (!text) {
      ctx.error(i + 1, paths[i], std::string("cannot read layer ") + std::to_string(i + 1) +
                                     " (" + kLayerNames[i] + ") file");
      continue;
    }
    try {
      docs[i] = yamlite::parse(*text);
    } catch (const yamlite::ParseError& e) {
      ctx.error(i + 1, paths[i], e.what());
    }
  }
  if (ctx.failed) {
    LoadResult result;
    result.diagnostics = std::move(ctx.diags);
    return result;
  }
  LoadResult result = assemble(docs, paths);
  result.diagnostics.insert(result.diagnostics.begin(), ctx.diags.begin(), ctx.diags.end());
  return result;
}

LoadResult load_bundle(const std::string& path) {
  if (fs::is_directory(path)) {
    std::array<std::string, 5> paths;
    Ctx ctx;
    for (int i = 0; i < 5; ++i) {
      std::string prefix = "layer" + std::to_string(i + 1);
      std::vector<std::string> candidates;
      for (const auto& entry : fs::directory_iterator(path)) {
        std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0) candidates.push_back(entry.path().string());
      }
      std::sort(candidates.begin(), candidates.end());
      if (candidates.empty()) {
        ctx.error(i + 1, path, "no " + prefix + "* file in bundle directory");
      } else {
        paths[i] = candidates.front();
      }
    }
    if (ctx.failed) {
      LoadResult result;
      result.diagnostics = std::move(ctx.diags);
      return result;
    }
    return load_layers(paths);
  }

  LoadResult result;
  auto text = read_file(path);
  if (!text) {
    result.diagnostics.push_back({Severity::Error, 0, path, "cannot read bundle file"});
    return result;
  }
  Node root;
  try {
    root = yamlite::parse(*text);
  } catch (const yamlite::ParseError& e) {
    result.diagnostics.push_back({Severity::Error, 0, path, e.what()});
    return result;
  }
  if (!root.is_map()) {
    result.diagnostics.push_back({Severity::Error, 0, path, "bundle must be a mapping with layer1..layer5 keys"});
    return result;
  }
  std::array<Node, 5> docs;
  Ctx ctx;
  for (int i = 0; i < 5; ++i) {
    std::string key = "layer" + std::to_string(i + 1);
    if (const Node* layer = root.get(key)) {
      docs[i] = *layer;
    } else {
      ctx.error(i + 1, path, "bundle is missing '" + key + "'");
    }
  }
  if (ctx.failed) {
    result.diagnostics = std::move(ctx.diags);
    return result;
  }
  std::array<std::string, 5> sources;
  for (int i = 0; i < 5; ++i) sources[i] = path + "#layer" + std::to_string(i + 1);
  return assemble(docs, sources);
}

AgentSpec canonicalize(AgentSpec spec) {
  std::sort(spec.questions.begin(), spec.questions.end(),
            [](const Question& a, const Question& b) { return question_id_less(a.id, b.id); });
  std::sort(spec.context_variables.begin(), spec.context_variables.end());
  std::sort(spec.graph.nodes.begin(), spec.graph.nodes.end(), question_id_less);
  std::sort(spec.graph.edges.begin(), spec.graph.edges.end());
  spec.graph.edges.erase(std::unique(spec.graph.edges.begin(), spec.graph.edges.end()),
                         spec.graph.edges.end());
  std::stable_sort(spec.graph.chains.begin(), spec.graph.chains.end(),
                   [](const AttributionChain& a, const AttributionChain& b) {
                     return question_id_less(a.trigger, b.trigger);
                   });
  std::sort(spec.boundaries.per_question.begin(), spec.boundaries.per_question.end(),
            [](const auto& a, const auto& b) { return question_id_less(a.first, b.first); });
  std::sort(spec.boundaries.interaction_rules.begin(), spec.boundaries.interaction_rules.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(spec.provenance.begin(), spec.provenance.end());
  return spec;
}

std::string serialize_spec(const AgentSpec& spec) {
  using json = nlohmann::ordered_json;
  json j;
  j["agent_name"] = spec.agent_name;
  j["context_variables"] = spec.context_variables;
  json questions = json::array();
  for (const Question& q : spec.questions) {
    json qj;
    qj["id"] = q.id;
    qj["question"] = q.text;
    if (!q.short_name.empty()) qj["short"] = q.short_name;
    qj["dimension"] = std::string(dimension_key(q.dimension));
    if (q.mapping) {
      const DataMapping& m = *q.mapping;
      json mj;
      mj["name"] = m.name;
      mj["source_type"] = std::string(source_kind_name(m.kind));
      if (!m.source_label.empty()) mj["source_label"] = m.source_label;
      if (!m.connection.empty()) mj["connection"] = m.connection;
      mj["locator"] = m.locator;
      if (!m.parse_method.empty()) mj["parse_method"] = m.parse_method;
      mj["parameters"] = m.parameters;
      mj["update_frequency"] = std::string(update_frequency_name(m.update_frequency));
      mj["freshness_sla"] = m.freshness_sla;
      mj["exported_variables"] = m.exported_variables;
      if (!m.notes.empty()) mj["notes"] = m.notes;
      qj["data_mapping"] = std::move(mj);
    }
    if (q.policy) {
      const DualTrackPolicy& p = *q.policy;
      json pj;
      pj["interpretation"]["enabled"] = p.interpretation_enabled;
      if (!p.interpretation_rationale.empty()) {
        pj["interpretation"]["rationale"] = p.interpretation_rationale;
      }
      json irules = json::array();
      for (const Rule& r : p.interpretation_rules) {
        irules.push_back({{"condition", condition::render(r.condition)}, {"output", r.output}});
      }
      if (!irules.empty()) pj["interpretation"]["rules"] = std::move(irules);
      pj["recommendation"]["enabled"] = p.recommendation_enabled;
      if (!p.recommendation_rationale.empty()) {
        pj["recommendation"]["rationale"] = p.recommendation_rationale;
      }
      pj["recommendation"]["type"] =
          p.recommendation_kind == RecommendationKind::OpenEnded ? "open_ended" : "rule_based";
      json rrules = json::array();
      for (const Rule& r : p.recommendation_rules) {
        rrules.push_back({{"condition", condition::render(r.condition)}, {"output", r.output}});
      }
      if (!rrules.empty()) pj["recommendation"]["rules"] = std::move(rrules);
      if (!p.open_template.empty()) pj["recommendation"]["template"] = p.open_template;
      if (!p.display_note.empty()) pj["display_note"] = p.display_note;
      qj["dual_track"] = std::move(pj);
    }
    questions.push_back(std::move(qj));
  }
  j["questions"] = std::move(questions);

  json edges = json::array();
  for (const auto& [from, to] : spec.graph.edges) edges.push_back({from, to});
  j["graph"]["edges"] = std::move(edges);
  json chains = json::array();
  for (const AttributionChain& chain : spec.graph.chains) {
    json cj;
    cj["trigger"] = chain.trigger;
    if (!chain.title.empty()) cj["title"] = chain.title;
    json groups = json::array();
    for (const ChainGroup& g : chain.groups) {
      groups.push_back({{"label", g.label},
                        {"dimension", std::string(dimension_key(g.dimension))},
                        {"kind", g.is_path ? "path" : "set"},
                        {"members", g.members}});
    }
    cj["groups"] = std::move(groups);
    chains.push_back(std::move(cj));
  }
  j["graph"]["chains"] = std::move(chains);

  const BoundarySet& b = spec.boundaries;
  j["boundaries"]["data_integrity"] = b.data_integrity;
  j["boundaries"]["scope_limits"] = b.scope_limits;
  j["boundaries"]["confidence_calibration"] = b.confidence_calibration;
  j["boundaries"]["attribution_discipline"] = b.attribution_discipline;
  json per_question = json::object();
  for (const auto& [qid, statements] : b.per_question) per_question[qid] = statements;
  j["boundaries"]["per_question"] = std::move(per_question);
  json interaction = json::object();
  for (const auto& [category, statements] : b.interaction_rules) interaction[category] = statements;
  j["boundaries"]["interaction_rules"] = std::move(interaction);
  j["boundaries"]["lexicons"] = {{"prohibited_topics", b.prohibited_topics},
                                 {"overconfident_terms", b.overconfident_terms},
                                 {"hedging_terms", b.hedging_terms}};
  return j.dump(2) + "\n";
}

std::string render_diagnostic(const LoadDiagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  out += " [layer " + std::to_string(d.layer) + "]";
  if (!d.path.empty()) out += " " + d.path;
  out += ": " + d.message;
  return out;
}

std::string diagnostic_to_json(const LoadDiagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["layer"] = d.layer;
  j["path"] = d.path;
  j["message"] = d.message;
  return j.dump();
}

}  // namespace attrspec::loader
