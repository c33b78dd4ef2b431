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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condition.hpp"

// Data snapshots stand in for the Layer 3 live sources: per-question
// variable bindings with as-of dates, plus spec-level context values.
namespace attrspec::snapshot {

struct DataSnapshot {
  std::string snapshot_id;
  std::map<std::string, condition::Bindings> per_question;
  condition::Bindings context;
  std::map<std::string, std::string> as_of;  // question id -> ISO-8601 date

  const condition::Bindings* bindings_for(const std::string& question_id) const {
    auto it = per_question.find(question_id);
    return it == per_question.end() ? nullptr : &it->second;
  }
};

struct SnapshotError {
  std::string path;
  std::string message;
};

struct SnapshotResult {
  std::optional<DataSnapshot> snapshot;
  std::vector<SnapshotError> errors;
  bool ok() const { return snapshot.has_value(); }
};

SnapshotResult load_snapshot(const std::string& path);
SnapshotResult parse_snapshot(const std::string& text, const std::string& source);

// Days since the civil epoch for an ISO-8601 date; empty for bad input.
std::optional<long> parse_date_days(const std::string& iso_date);

}  // namespace attrspec::snapshot
