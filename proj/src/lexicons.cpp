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

#include "lexicons.hpp"

namespace attrspec::lexicons {

const std::vector<std::string>& prohibited_topics() {
  static const std::vector<std::string> terms = {
      // personnel actions
      "reassign",
      "reassigning",
      "reassignment",
      "fire",
      "fired",
      "firing",
      "hire",
      "hired",
      "hiring",
      "promote",
      "promoted",
      "promoting",
      "promotion",
      "demote",
      "demotion",
      "terminate",
      "termination",
      "compensation",
      "salary",
      "headcount",
      // unfounded blame
      "management failure",
      "leadership failure",
      "incompetence",
      "negligence",
  };
  return terms;
}

const std::vector<std::string>& overconfident_terms() {
  static const std::vector<std::string> terms = {
      "definitely",
      "will certainly",
      "guaranteed",
      "certainly will",
      "guarantee",
      "without doubt",
      "undoubtedly",
      "will always",
      "will never fail",
  };
  return terms;
}

const std::vector<std::string>& hedging_terms() {
  static const std::vector<std::string> terms = {
      "indicates", "suggests", "may reflect", "may indicate", "may suggest",
      "appears",   "likely",   "possibly",    "could reflect",
  };
  return terms;
}

const std::vector<std::string>& generic_advice() {
  static const std::vector<std::string> terms = {
      "improve these metrics", "improve metrics", "work to improve",
      "try harder",            "do better",       "work harder",
  };
  return terms;
}

}  // namespace attrspec::lexicons
