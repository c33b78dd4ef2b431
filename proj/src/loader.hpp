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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "yamlite.hpp"

// Loads the five layer artifacts, assembles them into an AgentSpec, and
// canonicalizes ordering so downstream output is deterministic. Loading is
// total: every input yields either a spec or a non-empty diagnostic list.
namespace attrspec::loader {

struct LoadDiagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  int layer = 0;        // 1..5; 0 for file-level or cross-layer issues
  std::string path;     // document path, e.g. "data_mapping.Q9.freshness_sla"
  std::string message;
};

struct LoadResult {
  std::optional<AgentSpec> spec;  // engaged iff there are no error diagnostics
  std::vector<LoadDiagnostic> diagnostics;

  bool ok() const { return spec.has_value(); }
  int error_count() const;
  int warning_count() const;
};

// Single document with layer1..layer5 keys. A directory path is also
// accepted; it must contain one file per layer named layerN*.
LoadResult load_bundle(const std::string& path);

// Five separate artifact files, Layer 1 through Layer 5.
LoadResult load_layers(const std::array<std::string, 5>& paths);

// Assembly from already-parsed documents (used by the file entry points).
LoadResult assemble(const std::array<yamlite::Node, 5>& layers,
                    const std::array<std::string, 5>& source_paths);

// Sorts questions by numeric id suffix, edges lexicographically, boundary
// categories into their fixed order. Idempotent.
AgentSpec canonicalize(AgentSpec spec);

// Canonical JSON rendering of a spec; byte-stable for canonical specs.
// Provenance paths are excluded so output is location-independent.
std::string serialize_spec(const AgentSpec& spec);

// One rule condition from Layer 4, parsed. `aliased` marks conditions that
// went through the alias table before parsing.
struct ParsedCondition {
  std::string question;
  std::string track;  // "interpretation" | "recommendation"
  int index = 0;
  std::string text;   // text as parsed (after alias substitution)
  bool aliased = false;
  std::optional<condition::Expr> ast;  // empty on parse failure
  std::string error;
};

// Parses every rule condition in a Layer 4 document. Failures carry the
// exact rule location in `error`; nothing throws.
std::vector<ParsedCondition> parse_condition_fields(const yamlite::Node& layer4);

std::string render_diagnostic(const LoadDiagnostic& d);
std::string diagnostic_to_json(const LoadDiagnostic& d);

}  // namespace attrspec::loader
