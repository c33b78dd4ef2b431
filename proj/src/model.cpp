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

#include "model.hpp"

#include <cctype>

namespace attrspec {

int dimension_depth(Dimension d) {
  switch (d) {
    case Dimension::Results:
      return 0;
    case Dimension::Process:
      return 1;
    case Dimension::Support:
      return 2;
    case Dimension::LongTerm:
      return 3;
  }
  return 0;
}

std::string_view dimension_label(Dimension d) {
  switch (d) {
    case Dimension::Results:
      return "Results";
    case Dimension::Process:
      return "Process";
    case Dimension::Support:
      return "Support";
    case Dimension::LongTerm:
      return "Long-term";
  }
  return "";
}

std::string_view dimension_key(Dimension d) {
  switch (d) {
    case Dimension::Results:
      return "results";
    case Dimension::Process:
      return "process";
    case Dimension::Support:
      return "support";
    case Dimension::LongTerm:
      return "longterm";
  }
  return "";
}

std::optional<Dimension> dimension_from_key(std::string_view key) {
  if (key == "results") return Dimension::Results;
  if (key == "process") return Dimension::Process;
  if (key == "support") return Dimension::Support;
  if (key == "longterm" || key == "long_term" || key == "long-term") return Dimension::LongTerm;
  return std::nullopt;
}

AuthorityProfile authority_for(Dimension d) {
  switch (d) {
    case Dimension::Results:
      return {InterpretationAuthority::None, RecommendationAuthority::None};
    case Dimension::Process:
      return {InterpretationAuthority::RuleBased, RecommendationAuthority::RuleBased};
    case Dimension::Support:
      return {InterpretationAuthority::None, RecommendationAuthority::OpenEnded};
    case Dimension::LongTerm:
      return {InterpretationAuthority::None, RecommendationAuthority::None};
  }
  return {InterpretationAuthority::None, RecommendationAuthority::None};
}

std::string_view source_kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::Database:
      return "database";
    case SourceKind::KnowledgeBase:
      return "knowledge_base";
    case SourceKind::AnalyticsApi:
      return "analytics_api";
  }
  return "";
}

std::string_view update_frequency_name(UpdateFrequency f) {
  switch (f) {
    case UpdateFrequency::Daily:
      return "daily";
    case UpdateFrequency::Weekly:
      return "weekly";
    case UpdateFrequency::Monthly:
      return "monthly";
    case UpdateFrequency::Quarterly:
      return "quarterly";
  }
  return "";
}

int update_frequency_days(UpdateFrequency f) {
  switch (f) {
    case UpdateFrequency::Daily:
      return 1;
    case UpdateFrequency::Weekly:
      return 7;
    case UpdateFrequency::Monthly:
      return 31;
    case UpdateFrequency::Quarterly:
      return 92;
  }
  return 1;
}

const std::vector<std::string>* BoundarySet::statements_for(std::string_view question_id) const {
  for (const auto& [id, statements] : per_question) {
    if (id == question_id) return &statements;
  }
  return nullptr;
}

const Question* AgentSpec::find_question(std::string_view id) const {
  for (const Question& q : questions) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

std::vector<const Question*> AgentSpec::questions_in(Dimension d) const {
  std::vector<const Question*> out;
  for (const Question& q : questions) {
    if (q.dimension == d) out.push_back(&q);
  }
  return out;
}

bool question_id_less(std::string_view a, std::string_view b) {
  auto suffix = [](std::string_view id) -> long {
    std::size_t i = 0;
    while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
    if (i == id.size()) return -1;
    long v = 0;
    for (; i < id.size() && std::isdigit(static_cast<unsigned char>(id[i])); ++i) {
      v = v * 10 + (id[i] - '0');
    }
    return v;
  };
  long sa = suffix(a);
  long sb = suffix(b);
  if (sa >= 0 && sb >= 0 && sa != sb) return sa < sb;
  if ((sa >= 0) != (sb >= 0)) return sa >= 0;
  return a < b;
}

}  // namespace attrspec
