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

#include <string>
#include <vector>

// Built-in linter term lists. Layer 5 lexicon entries are merged on top of
// these; the defaults are mirrored under data/lexicons/ for reference.
namespace attrspec::lexicons {

// Prohibited topics: personnel actions plus unfounded-blame phrases.
const std::vector<std::string>& prohibited_topics();

// Overconfident phrasing that the confidence-calibration boundary forbids.
const std::vector<std::string>& overconfident_terms();

// Hedging vocabulary; interpretation sentences must carry at least one.
const std::vector<std::string>& hedging_terms();

// Generic-advice phrases excluded from the actionable-recommendation count.
const std::vector<std::string>& generic_advice();

}  // namespace attrspec::lexicons
