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

#include "prompt.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sha256.hpp"
#include "validator.hpp"

namespace attrspec::prompt {

namespace {

constexpr std::size_t kMaxWidth = 100;

std::string wrap(const std::string& text, std::size_t width = kMaxWidth) {
  std::istringstream words(text);
  std::string word, line, out;
  while (words >> word) {
    if (line.empty()) {
      line = word;
    } else if (line.size() + 1 + word.size() <= width) {
      line += ' ';
      line += word;
    } else {
      out += line;
      out += '\n';
      line = word;
    }
  }
  if (!line.empty()) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string snake_case(const std::string& text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (pending && !out.empty()) out += '_';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      pending = false;
    } else {
      pending = true;
    }
  }
  return out;
}

// Source labels become group headings; short tokens that are acronyms in
// this domain stay uppercase.
std::string heading_case(const std::string& label) {
  static const std::set<std::string> kAcronyms = {"crm", "api", "roi", "clv", "aum",
                                                  "rm",  "cbs", "ml",  "bi"};
  std::string out;
  std::string word;
  auto flush = [&]() {
    if (word.empty()) return;
    if (!out.empty()) out += ' ';
    if (kAcronyms.count(word)) {
      for (char c : word) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else {
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      out += word.substr(1);
    }
    word.clear();
  };
  for (char c : label) {
    if (c == '_' || c == ' ' || c == '-') {
      flush();
    } else {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return out;
}

std::string authority_caption(Dimension d) {
  AuthorityProfile p = authority_for(d);
  if (p.interpretation == InterpretationAuthority::RuleBased &&
      p.recommendation == RecommendationAuthority::RuleBased) {
    return "Interpret + Recommend";
  }
  if (p.recommendation == RecommendationAuthority::OpenEnded) return "Display + Open Suggestions";
  return "Display Only";
}

std::string authority_summary(Dimension d) {
  AuthorityProfile p = authority_for(d);
  if (p.interpretation == InterpretationAuthority::RuleBased) {
    return "Rule-based interpretation and recommendations permitted.";
  }
  if (p.recommendation == RecommendationAuthority::OpenEnded) {
    return "Display plus open-ended considerations only.";
  }
  return "Display only. No interpretation. No recommendations.";
}

// "Q3-Q7" for a dimension's questions; single ids render alone.
std::string id_range(const std::vector<const Question*>& questions) {
  if (questions.empty()) return "";
  if (questions.size() == 1) return questions.front()->id;
  return questions.front()->id + "-" + questions.back()->id;
}

std::string display_name(const Question& q) {
  return q.mapping && !q.mapping->name.empty() ? q.mapping->name : q.text;
}

std::string section_identity(const AgentSpec& spec) {
  std::string s;
  s += "# " + spec.agent_name + " - System Prompt\n\n";
  s += "## Identity and Purpose\n";
  s += wrap("You are a " + spec.agent_name +
            ". Your purpose is to help decision-makers understand performance through "
            "systematic causal attribution, while respecting boundaries reserved for human "
            "judgment.");
  s += "\n";
  s += "## Core Principle: Attribution-Complete Responses\n";
  s += "When answering questions about performance, always trace causality through:\n";
  s += "1. Results -> What outcomes are we seeing?\n";
  s += "2. Process -> What activities are driving these outcomes?\n";
  s += "3. Support -> What resources are enabling/constraining activities?\n";
  s += "4. Long-term -> What strategic factors are shaping the environment?\n";
  s += "\n";
  s += "Never stop at \"what\" - always help users understand \"why\".\n";
  return s;
}

std::string section_perception(const AgentSpec& spec) {
  std::string s = "## PERCEPTION SCOPE: Questions You Monitor\n";
  for (Dimension dim : kAllDimensions) {
    auto questions = spec.questions_in(dim);
    if (questions.empty()) continue;
    s += "\n### " + std::string(dimension_label(dim)) + " Dimension (" +
         authority_caption(dim) + ")\n";
    for (const Question* q : questions) {
      s += "- " + q->id + ": " + q->text + "\n";
    }
  }
  return s;
}

std::string chain_member(const AgentSpec& spec, const std::string& id) {
  const Question* q = spec.find_question(id);
  if (q && !q->short_name.empty()) return id + " (" + q->short_name + ")";
  return id;
}

std::string section_reasoning(const AgentSpec& spec) {
  std::string s = "## REASONING FRAMEWORK: Attribution Chains\n";
  for (const AttributionChain& chain : spec.graph.chains) {
    const Question* trigger = spec.find_question(chain.trigger);
    std::string title = chain.title;
    if (title.empty() && trigger) title = trigger->text;
    s += "\n" + title + " (" + chain.trigger + "):\n";
    bool first_path = true;
    for (const ChainGroup& group : chain.groups) {
      if (group.is_path) {
        std::string line;
        for (const std::string& id : group.members) {
          line += " -> " + chain_member(spec, id);
        }
        if (first_path) {
          s += "  " + chain.trigger + line + "\n";
          first_path = false;
        } else {
          s += "      " + line.substr(1) + "\n";
        }
      } else {
        std::string line = "      -> " + std::string(dimension_label(group.dimension)) + ": ";
        for (std::size_t i = 0; i < group.members.size(); ++i) {
          if (i) line += ", ";
          line += group.members[i];
        }
        if (first_path) {
          // Chain with no path groups: put the trigger on its own line first.
          s += "  " + chain.trigger + "\n";
          first_path = false;
        }
        s += line + "\n";
      }
    }
  }
  return s;
}

std::string section_data_access(const AgentSpec& spec) {
  std::string s = "## DATA ACCESS: Tools and Sources\n";
  // Group by source label in first-appearance order over canonical ids.
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<const Question*>> groups;
  std::vector<const Question*> unmapped;
  for (const Question& q : spec.questions) {
    if (!q.mapping) {
      unmapped.push_back(&q);
      continue;
    }
    std::string label = q.mapping->source_label.empty()
                            ? std::string(source_kind_name(q.mapping->kind))
                            : q.mapping->source_label;
    if (!groups.count(label)) group_order.push_back(label);
    groups[label].push_back(&q);
  }
  for (const std::string& label : group_order) {
    s += "\n### " + heading_case(label) + "\n";
    for (const Question* q : groups[label]) {
      std::string params;
      for (std::size_t i = 0; i < q->mapping->parameters.size(); ++i) {
        if (i) params += ", ";
        params += q->mapping->parameters[i];
      }
      s += "- " + tool_name(*q, spec) + "(" + params + ") -> " + q->id + "\n";
    }
  }
  if (!unmapped.empty()) {
    s += "\n### Unmapped\n";
    for (const Question* q : unmapped) {
      s += "- " + q->id + ": no data source declared\n";
    }
  }
  return s;
}

void render_rule_lines(const std::vector<Rule>& rules, const char* verb, std::string& s) {
  for (const Rule& rule : rules) {
    std::string cond = "- IF " + condition::render(rule.condition);
    if (cond.size() <= kMaxWidth) {
      s += cond + "\n";
    } else {
      // Wrap over-long conditions at token boundaries with a continuation
      // indent; rule outputs always stay on one line so they remain
      // verbatim-searchable.
      std::istringstream words(cond);
      std::string word, line;
      while (words >> word) {
        if (line.empty()) {
          line = word;
        } else if (line.size() + 1 + word.size() <= kMaxWidth) {
          line += ' ' + word;
        } else {
          s += line + "\n";
          line = "      " + word;
        }
      }
      if (!line.empty()) s += line + "\n";
    }
    s += "  THEN " + std::string(verb) + ": \"" + rule.output + "\"\n";
  }
}

std::string section_rules(const AgentSpec& spec) {
  std::string s = "## INTERPRETATION & RECOMMENDATION RULES\n";

  auto process = spec.questions_in(Dimension::Process);
  if (!process.empty()) {
    s += "\n### Process Dimension (" + id_range(process) + "): Full Dual-Track\n";
    for (const Question* q : process) {
      if (!q->policy) continue;
      s += "\n**" + q->id + " - " + display_name(*q) + "**\n";
      render_rule_lines(q->policy->interpretation_rules, "interpret", s);
      render_rule_lines(q->policy->recommendation_rules, "recommend", s);
    }
  }

  auto support = spec.questions_in(Dimension::Support);
  bool any_open = false;
  for (const Question* q : support) {
    if (q->policy && q->policy->recommendation_enabled && !q->policy->open_template.empty()) {
      any_open = true;
    }
  }
  if (any_open) {
    s += "\n### Support Dimension (" + id_range(support) + "): Open-ended Only\n";
    for (const Question* q : support) {
      if (!q->policy || !q->policy->recommendation_enabled || q->policy->open_template.empty()) {
        continue;
      }
      s += "\n**" + q->id + " - " + display_name(*q) + "**\n";
      std::string tmpl = q->policy->open_template;
      if (!tmpl.empty() && tmpl.back() != '\n') tmpl += '\n';
      s += tmpl;
    }
  }

  s += "\n### Results & Long-term Dimensions: Display Only\n";
  s += "No interpretation. No recommendations. Data presentation only.\n";
  return s;
}

std::string section_boundaries(const AgentSpec& spec) {
  const BoundarySet& b = spec.boundaries;
  std::string s = "## BOUNDARIES: What You Must NOT Do\n";

  if (b.empty()) {
    s += "\n(none declared)\n";
  } else {
    static const std::pair<const char*, const std::vector<std::string> BoundarySet::*>
        kCategories[] = {
            {"Data Integrity", &BoundarySet::data_integrity},
            {"Scope Limits", &BoundarySet::scope_limits},
            {"Confidence Calibration", &BoundarySet::confidence_calibration},
            {"Attribution Discipline", &BoundarySet::attribution_discipline},
        };
    for (const auto& [title, member] : kCategories) {
      const std::vector<std::string>& entries = b.*member;
      if (entries.empty()) continue;
      s += "\n### " + std::string(title) + "\n";
      for (const std::string& entry : entries) s += "- " + entry + "\n";
    }

    s += "\n### Dimension-Specific Limits\n";
    for (Dimension dim : kAllDimensions) {
      auto questions = spec.questions_in(dim);
      if (questions.empty()) continue;
      s += std::string(dimension_label(dim)) + " (" + id_range(questions) + "): " +
           authority_summary(dim) + "\n";
      for (const Question* q : questions) {
        if (const auto* statements = b.statements_for(q->id)) {
          for (const std::string& statement : *statements) {
            s += "- " + q->id + ": " + statement + "\n";
          }
        }
      }
    }

    if (!b.interaction_rules.empty()) {
      s += "\n### Interaction Rules\n";
      for (const auto& [category, statements] : b.interaction_rules) {
        s += heading_case(category) + ":\n";
        for (const std::string& statement : statements) s += "- " + statement + "\n";
      }
    }
  }

  auto quote_first = [](const std::vector<std::string>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size() && i < 3; ++i) {
      if (i) out += ", ";
      out += "'" + terms[i] + "'";
    }
    return out;
  };
  s += "\n### Language Discipline\n";
  s += "- Use hedged language: " + quote_first(b.hedging_terms) + "\n";
  s += "- Avoid overconfident claims: " + quote_first(b.overconfident_terms) + "\n";
  s += "- Distinguish observation from inference; acknowledge alternative explanations\n";
  return s;
}

std::string section_response_structure() {
  std::string s = "## RESPONSE STRUCTURE\n";
  s += "1. Direct Answer: State the metric/status requested\n";
  s += "2. Attribution Trace: Walk through Results->Process->Support->Long-term\n";
  s += "3. Interpretation: For Process dimension, provide rule-based interpretation\n";
  s += "4. Recommendations: For Process dimension, provide actionable suggestions\n";
  s += "5. Caveats: Note data freshness, limitations, alternative explanations\n";
  return s;
}

}  // namespace

std::string tool_name(const Question& q, const AgentSpec& spec) {
  if (!q.mapping) return "";
  const char* prefix = q.mapping->kind == SourceKind::KnowledgeBase ? "read_" : "query_";
  std::string name = prefix + snake_case(q.mapping->name);
  // Disambiguate collisions with the question id.
  for (const Question& other : spec.questions) {
    if (other.id == q.id) break;
    if (other.mapping) {
      const char* other_prefix =
          other.mapping->kind == SourceKind::KnowledgeBase ? "read_" : "query_";
      if (other_prefix + snake_case(other.mapping->name) == name) {
        std::string suffix = q.id;
        for (char& c : suffix) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return name + "_" + suffix;
      }
    }
  }
  return name;
}

PromptDocument compile_prompt(const AgentSpec& spec) {
  std::vector<validator::Finding> findings = validator::validate(spec);
  for (const validator::Finding& f : findings) {
    if (f.severity == validator::Finding::Severity::Error) {
      throw CompileError("spec has validation errors; first: " + validator::render_finding(f));
    }
  }

  struct Piece {
    const char* id;
    const char* title;
    std::string text;
  };
  std::vector<Piece> pieces;
  pieces.push_back({"identity", "Identity and Purpose", section_identity(spec)});
  pieces.push_back({"perception", "Perception Scope", section_perception(spec)});
  pieces.push_back({"reasoning", "Reasoning Framework", section_reasoning(spec)});
  pieces.push_back({"data_access", "Data Access", section_data_access(spec)});
  pieces.push_back({"rules", "Interpretation & Recommendation Rules", section_rules(spec)});
  pieces.push_back({"boundaries", "Boundaries", section_boundaries(spec)});
  pieces.push_back({"response_structure", "Response Structure", section_response_structure()});

  PromptDocument doc;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string text = pieces[i].text;
    if (i + 1 < pieces.size()) text += "\n---\n\n";
    Section section;
    section.id = pieces[i].id;
    section.title = pieces[i].title;
    section.offset = doc.full_text.size();
    section.length = text.size();
    doc.sections.push_back(std::move(section));
    doc.full_text += text;
  }
  doc.checksum = sha256_hex(doc.full_text);
  return doc;
}

std::string render_section(const AgentSpec& spec, const std::string& section_id) {
  PromptDocument doc = compile_prompt(spec);
  for (const Section& section : doc.sections) {
    if (section.id == section_id) {
      return doc.full_text.substr(section.offset, section.length);
    }
  }
  throw CompileError("unknown section id '" + section_id + "'");
}

std::string index_records(const PromptDocument& doc) {
  std::string out;
  for (const Section& section : doc.sections) {
    nlohmann::ordered_json j;
    j["section"] = section.id;
    j["title"] = section.title;
    j["offset"] = section.offset;
    j["length"] = section.length;
    out += j.dump() + "\n";
  }
  nlohmann::ordered_json tail;
  tail["checksum"] = "sha256:" + doc.checksum;
  out += tail.dump() + "\n";
  return out;
}

}  // namespace attrspec::prompt
