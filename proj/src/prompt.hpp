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
#include <vector>

#include "model.hpp"

// Deterministic compilation of a validated spec into a structured system
// prompt. Identical canonical specs produce byte-identical prompts, so the
// checksum doubles as a build fingerprint.
namespace attrspec::prompt {

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(const std::string& what) : std::runtime_error(what) {}
};

struct Section {
  std::string id;     // identity, perception, reasoning, data_access, rules,
                      // boundaries, response_structure
  std::string title;
  std::size_t offset = 0;  // byte range into full_text
  std::size_t length = 0;
};

struct PromptDocument {
  std::string full_text;  // UTF-8, LF line endings
  std::vector<Section> sections;  // byte ranges partition full_text
  std::string checksum;   // sha256 of full_text
};

// Refuses specs with error-severity findings, naming the first one.
PromptDocument compile_prompt(const AgentSpec& spec);

// Exact slice of the compiled document for one section id; throws
// CompileError for unknown ids.
std::string render_section(const AgentSpec& spec, const std::string& section_id);

// Sidecar index: one JSON record per section plus a checksum record.
std::string index_records(const PromptDocument& doc);

// Derived tool name for a data mapping: query_<snake> for database and
// analytics sources, read_<snake> for knowledge bases; collisions pick up
// the question id as a suffix.
std::string tool_name(const Question& q, const AgentSpec& spec);

}  // namespace attrspec::prompt
