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

// Exercises the shared-library surface the CLI builds on: opaque handles,
// status codes, and string ownership.

#include "attrspec/attrspec.h"

#include <string>

#include "doctest.h"
#include "test_support.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  attrspec_string_free(s);
  return out;
}

struct SpecHandle {
  attrspec_spec* spec = nullptr;
  ~SpecHandle() { attrspec_spec_free(spec); }
};

struct SnapshotHandle {
  attrspec_snapshot* snapshot = nullptr;
  ~SnapshotHandle() { attrspec_snapshot_free(snapshot); }
};

}  // namespace

TEST_CASE("load, validate, compile through the C API") {
  SpecHandle spec;
  char* diagnostics = nullptr;
  attrspec_status status =
      attrspec_spec_load_bundle(testsupport::bank_bundle().c_str(), &spec.spec, &diagnostics);
  REQUIRE(status == ATTRSPEC_OK);
  std::string diag_text = take(diagnostics);
  CHECK(diag_text.find("alias") != std::string::npos);  // the two alias warnings

  int errors = -1;
  int warnings = -1;
  char* findings_text = nullptr;
  CHECK(attrspec_spec_validate(spec.spec, nullptr, &findings_text, &errors, &warnings) ==
        ATTRSPEC_OK);
  CHECK(take(findings_text).empty());
  CHECK(errors == 0);
  CHECK(warnings == 0);

  char* prompt = nullptr;
  char* index = nullptr;
  char* checksum = nullptr;
  char* error = nullptr;
  REQUIRE(attrspec_spec_compile(spec.spec, &prompt, &index, &checksum, &error) == ATTRSPEC_OK);
  std::string prompt_text = take(prompt);
  std::string checksum_hex = take(checksum);
  take(index);
  CHECK(prompt_text.find("## RESPONSE STRUCTURE") != std::string::npos);
  CHECK(checksum_hex.size() == 64);

  char* section = nullptr;
  REQUIRE(attrspec_spec_render_section(spec.spec, "perception", &section, &error) == ATTRSPEC_OK);
  CHECK(take(section).find("- Q3:") != std::string::npos);
  CHECK(attrspec_spec_render_section(spec.spec, "bogus", &section, &error) ==
        ATTRSPEC_ERR_ARGUMENT);
  take(error);

  char* serialized = nullptr;
  REQUIRE(attrspec_spec_serialize(spec.spec, &serialized) == ATTRSPEC_OK);
  CHECK(take(serialized).find("\"agent_name\"") != std::string::npos);
}

TEST_CASE("load failures report diagnostics and missing files") {
  attrspec_spec* spec = nullptr;
  char* diagnostics = nullptr;
  CHECK(attrspec_spec_load_bundle("/no/such/bundle.yaml", &spec, &diagnostics) ==
        ATTRSPEC_ERR_PARSE);
  CHECK(take(diagnostics).find("cannot read") != std::string::npos);
  CHECK(spec == nullptr);
  CHECK(attrspec_spec_load_bundle(nullptr, &spec, nullptr) == ATTRSPEC_ERR_ARGUMENT);
}

TEST_CASE("trace and audit through the C API") {
  SpecHandle spec;
  REQUIRE(attrspec_spec_load_bundle(testsupport::bank_bundle().c_str(), &spec.spec, nullptr) ==
          ATTRSPEC_OK);
  SnapshotHandle snapshot;
  char* error = nullptr;
  std::string snap_path = testsupport::bank_dir() + "/eastern.snapshot.yaml";
  REQUIRE(attrspec_snapshot_load(snap_path.c_str(), &snapshot.snapshot, &error) == ATTRSPEC_OK);

  attrspec_report* report = nullptr;
  REQUIRE(attrspec_trace(spec.spec, "Q2", snapshot.snapshot, nullptr, &report, &error) ==
          ATTRSPEC_OK);

  char* text = nullptr;
  CHECK(attrspec_report_text(report, &text) == ATTRSPEC_OK);
  std::string report_text = take(text);
  CHECK(report_text.find("## Process Attribution") != std::string::npos);
  CHECK(report_text.find("Low penetration in high-value segment") != std::string::npos);

  char* react = nullptr;
  CHECK(attrspec_report_react(report, &react) == ATTRSPEC_OK);
  CHECK(take(react).rfind("Thought:", 0) == 0);

  char* json = nullptr;
  CHECK(attrspec_report_json(report, &json) == ATTRSPEC_OK);
  std::string report_json = take(json);

  attrspec_audit* audit = nullptr;
  REQUIRE(attrspec_audit_report(spec.spec, report, snapshot.snapshot, &audit, &error) ==
          ATTRSPEC_OK);
  CHECK(attrspec_audit_exit_code(audit) == 0);
  char* audit_json = nullptr;
  CHECK(attrspec_audit_json(audit, &audit_json) == ATTRSPEC_OK);
  CHECK(take(audit_json).find("\"complete\":true") != std::string::npos);
  attrspec_audit_free(audit);

  // The JSON form audits identically.
  audit = nullptr;
  REQUIRE(attrspec_audit_report_json(spec.spec, report_json.c_str(), snapshot.snapshot, &audit,
                                     &error) == ATTRSPEC_OK);
  CHECK(attrspec_audit_exit_code(audit) == 0);
  attrspec_audit_free(audit);
  attrspec_report_free(report);

  // Unknown triggers map to the argument status.
  report = nullptr;
  CHECK(attrspec_trace(spec.spec, "Q99", snapshot.snapshot, nullptr, &report, &error) ==
        ATTRSPEC_ERR_ARGUMENT);
  CHECK(take(error).find("Q99") != std::string::npos);
}

TEST_CASE("response auditing through the C API") {
  SpecHandle spec;
  REQUIRE(attrspec_spec_load_bundle(testsupport::bank_bundle().c_str(), &spec.spec, nullptr) ==
          ATTRSPEC_OK);
  SnapshotHandle snapshot;
  char* error = nullptr;
  std::string snap_path = testsupport::bank_dir() + "/eastern.snapshot.yaml";
  REQUIRE(attrspec_snapshot_load(snap_path.c_str(), &snapshot.snapshot, &error) == ATTRSPEC_OK);

  const char* baseline =
      "queried: Q2\n\nEastern region's AUM growth is at 88% of target. Product "
      "penetration is 24%. The team should work to improve these metrics.\n";
  attrspec_audit* audit = nullptr;
  REQUIRE(attrspec_audit_response(spec.spec, baseline, nullptr, snapshot.snapshot, &audit,
                                  &error) == ATTRSPEC_OK);
  CHECK(attrspec_audit_exit_code(audit) == 2);
  attrspec_audit_free(audit);

  // The trigger override replaces missing front matter.
  const char* unlabeled = "Campaign coverage is 67%.\n";
  audit = nullptr;
  REQUIRE(attrspec_audit_response(spec.spec, unlabeled, "Q2", snapshot.snapshot, &audit,
                                  &error) == ATTRSPEC_OK);
  CHECK(attrspec_audit_exit_code(audit) == 2);
  attrspec_audit_free(audit);

  CHECK(std::string(attrspec_version()) == "0.1.0");
}
