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

#include <random>
#include <string>

#include "loader.hpp"
#include "snapshot.hpp"

namespace testsupport {

inline std::string fixtures_dir() { return ATTRSPEC_FIXTURES_DIR; }
inline std::string bank_dir() { return fixtures_dir() + "/bank"; }
inline std::string bank_bundle() { return bank_dir() + "/bundle.yaml"; }
inline std::string retail_bundle() { return fixtures_dir() + "/retail/bundle.yaml"; }

// Loads the bank fixture once per process; tests treat it as immutable.
inline const attrspec::AgentSpec& bank_spec() {
  static const attrspec::AgentSpec spec = [] {
    auto result = attrspec::loader::load_bundle(bank_bundle());
    if (!result.ok()) throw std::runtime_error("bank fixture failed to load");
    return *result.spec;
  }();
  return spec;
}

inline attrspec::snapshot::DataSnapshot eastern_snapshot() {
  auto result = attrspec::snapshot::load_snapshot(bank_dir() + "/eastern.snapshot.yaml");
  if (!result.ok()) throw std::runtime_error("eastern snapshot failed to load");
  return *result.snapshot;
}

// Random decimal with a bounded integer part and up to `frac` fractional
// digits; avoids zero when `nonzero` is set.
inline attrspec::Decimal random_decimal(std::mt19937& rng, int max_int = 9999, int frac = 3,
                                        bool nonzero = false) {
  std::uniform_int_distribution<int> int_part(-max_int, max_int);
  std::uniform_int_distribution<int> scale_dist(0, frac);
  while (true) {
    int scale = scale_dist(rng);
    long long mant = int_part(rng);
    for (int i = 0; i < scale; ++i) mant = mant * 10 + std::uniform_int_distribution<int>(0, 9)(rng);
    attrspec::Decimal d(mant, scale);
    if (!nonzero || !d.is_zero()) return d;
  }
}

// Schema-respecting full snapshot for the bank fixture: binds every
// exported variable of every question plus all context variables. String
// variables draw from a pool containing the rule thresholds' segment and
// channel literals so rules actually fire sometimes.
inline attrspec::snapshot::DataSnapshot random_bank_snapshot(std::mt19937& rng) {
  using attrspec::condition::Value;
  const attrspec::AgentSpec& spec = bank_spec();
  attrspec::snapshot::DataSnapshot snap;
  snap.snapshot_id = "random";
  static const char* kStrings[] = {"high_value", "referral", "digital", "retail", "standard"};
  auto random_value = [&](const std::string& name) -> Value {
    if (name == "segment" || name == "channel") {
      return std::string(kStrings[std::uniform_int_distribution<int>(0, 4)(rng)]);
    }
    return random_decimal(rng, 999, 3, /*nonzero=*/true);
  };
  for (const auto& q : spec.questions) {
    attrspec::condition::Bindings b;
    if (q.mapping) {
      for (const std::string& var : q.mapping->exported_variables) b[var] = random_value(var);
    }
    if (!b.empty()) snap.per_question[q.id] = std::move(b);
    snap.as_of[q.id] = "2025-09-30";
  }
  for (const std::string& var : spec.context_variables) {
    snap.context[var] = random_decimal(rng, 999, 3, /*nonzero=*/true);
  }
  return snap;
}

}  // namespace testsupport
