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

#include "snapshot.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "yamlite.hpp"

namespace attrspec::snapshot {

namespace {

using yamlite::Node;

bool valid_binding_name(const std::string& name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

void read_bindings(const Node& node, const std::string& path, condition::Bindings& out,
                   std::vector<SnapshotError>& errors) {
  if (!node.is_map()) {
    errors.push_back({path, "expected a mapping of variable bindings"});
    return;
  }
  for (const auto& [name, value] : node.map) {
    std::string vpath = path + "." + name;
    if (!valid_binding_name(name)) {
      errors.push_back({vpath, "binding names match [a-z][a-z0-9_]*"});
      continue;
    }
    if (value.is_number()) {
      out[name] = value.number;
    } else if (value.is_bool()) {
      out[name] = value.boolean;
    } else if (value.is_string()) {
      out[name] = value.scalar;
    } else {
      errors.push_back({vpath, "bindings must be numbers, strings, or booleans"});
    }
  }
}

}  // namespace

std::optional<long> parse_date_days(const std::string& iso_date) {
  if (iso_date.size() != 10 || iso_date[4] != '-' || iso_date[7] != '-') return std::nullopt;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(iso_date[i]))) return std::nullopt;
  }
  int y = std::stoi(iso_date.substr(0, 4));
  unsigned m = static_cast<unsigned>(std::stoi(iso_date.substr(5, 2)));
  unsigned d = static_cast<unsigned>(std::stoi(iso_date.substr(8, 2)));
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;

  // Howard Hinnant's days_from_civil.
  y -= m <= 2;
  long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

SnapshotResult parse_snapshot(const std::string& text, const std::string& source) {
  SnapshotResult result;
  Node root;
  try {
    root = yamlite::parse(text);
  } catch (const yamlite::ParseError& e) {
    result.errors.push_back({source, e.what()});
    return result;
  }
  if (!root.is_map()) {
    result.errors.push_back({source, "snapshot must be a mapping"});
    return result;
  }

  DataSnapshot snap;
  if (const Node* id = root.get("snapshot_id")) {
    snap.snapshot_id = id->is_scalar() ? id->scalar : "";
  }
  if (const Node* context = root.get("context")) {
    read_bindings(*context, "context", snap.context, result.errors);
  }
  if (const Node* as_of = root.get("as_of")) {
    if (as_of->is_map()) {
      for (const auto& [qid, date] : as_of->map) {
        std::string value = date.is_scalar() ? date.scalar : "";
        if (!parse_date_days(value)) {
          result.errors.push_back({"as_of." + qid, "expected an ISO-8601 date (YYYY-MM-DD)"});
          continue;
        }
        snap.as_of[qid] = value;
      }
    } else {
      result.errors.push_back({"as_of", "expected a mapping of question id to date"});
    }
  }
  if (const Node* bindings = root.get("bindings")) {
    if (bindings->is_map()) {
      for (const auto& [qid, values] : bindings->map) {
        condition::Bindings b;
        read_bindings(values, "bindings." + qid, b, result.errors);
        snap.per_question[qid] = std::move(b);
      }
    } else {
      result.errors.push_back({"bindings", "expected a mapping of question id to bindings"});
    }
  }

  if (result.errors.empty()) result.snapshot = std::move(snap);
  return result;
}

SnapshotResult load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    SnapshotResult result;
    result.errors.push_back({path, "cannot read snapshot file"});
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_snapshot(buffer.str(), path);
}

}  // namespace attrspec::snapshot
