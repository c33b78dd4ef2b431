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

#include "attrspec/attrspec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "auditor.hpp"
#include "loader.hpp"
#include "model.hpp"
#include "prompt.hpp"
#include "snapshot.hpp"
#include "tracer.hpp"
#include "validator.hpp"

// Opaque handle definitions. Each wraps an immutable core value.
struct attrspec_spec {
  attrspec::AgentSpec spec;
};
struct attrspec_snapshot {
  attrspec::snapshot::DataSnapshot snapshot;
};
struct attrspec_report {
  attrspec::tracer::AttributionReport report;
  std::string text;  // rendered at trace time while the spec is at hand
};
struct attrspec_audit {
  attrspec::auditor::AuditFindings findings;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& value) {
  if (slot) *slot = dup_string(value);
}

std::string diagnostics_json(const attrspec::loader::LoadResult& result) {
  std::string out;
  for (const auto& d : result.diagnostics) {
    out += attrspec::loader::diagnostic_to_json(d) + "\n";
  }
  return out;
}

attrspec_status finish_load(attrspec::loader::LoadResult result, attrspec_spec** out,
                            char** diagnostics) {
  set_out(diagnostics, diagnostics_json(result));
  if (!result.ok()) return ATTRSPEC_ERR_PARSE;
  if (!out) return ATTRSPEC_ERR_ARGUMENT;
  *out = new (std::nothrow) attrspec_spec{std::move(*result.spec)};
  return *out ? ATTRSPEC_OK : ATTRSPEC_ERR_INTERNAL;
}

template <typename Fn>
attrspec_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const attrspec::tracer::TraceError& e) {
    set_out(error, e.what());
    return ATTRSPEC_ERR_ARGUMENT;
  } catch (const attrspec::auditor::AuditError& e) {
    set_out(error, e.what());
    return ATTRSPEC_ERR_ARGUMENT;
  } catch (const attrspec::prompt::CompileError& e) {
    set_out(error, e.what());
    return ATTRSPEC_ERR_VALIDATION;
  } catch (const std::exception& e) {
    set_out(error, e.what());
    return ATTRSPEC_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* attrspec_version(void) { return "0.1.0"; }

void attrspec_string_free(char* s) { std::free(s); }

attrspec_status attrspec_spec_load_bundle(const char* path, attrspec_spec** out,
                                          char** diagnostics) {
  if (!path) return ATTRSPEC_ERR_ARGUMENT;
  return finish_load(attrspec::loader::load_bundle(path), out, diagnostics);
}

attrspec_status attrspec_spec_load_layers(const char* const paths[5], attrspec_spec** out,
                                          char** diagnostics) {
  if (!paths) return ATTRSPEC_ERR_ARGUMENT;
  std::array<std::string, 5> layer_paths;
  for (int i = 0; i < 5; ++i) {
    if (!paths[i]) return ATTRSPEC_ERR_ARGUMENT;
    layer_paths[i] = paths[i];
  }
  return finish_load(attrspec::loader::load_layers(layer_paths), out, diagnostics);
}

void attrspec_spec_free(attrspec_spec* spec) { delete spec; }

attrspec_status attrspec_spec_serialize(const attrspec_spec* spec, char** json) {
  if (!spec || !json) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    set_out(json, attrspec::loader::serialize_spec(spec->spec));
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_spec_validate(const attrspec_spec* spec, char** findings_json,
                                       char** findings_text, int* errors, int* warnings) {
  if (!spec) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(nullptr, [&] {
    auto findings = attrspec::validator::validate(spec->spec);
    if (findings_json) {
      std::string out;
      for (const auto& f : findings) out += attrspec::validator::finding_to_json(f) + "\n";
      set_out(findings_json, out);
    }
    if (findings_text) {
      std::string out;
      for (const auto& f : findings) out += attrspec::validator::render_finding(f) + "\n";
      set_out(findings_text, out);
    }
    if (errors) *errors = attrspec::validator::error_count(findings);
    if (warnings) *warnings = attrspec::validator::warning_count(findings);
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_spec_compile(const attrspec_spec* spec, char** prompt_text,
                                      char** index_records, char** checksum, char** error) {
  if (!spec) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(error, [&] {
    attrspec::prompt::PromptDocument doc = attrspec::prompt::compile_prompt(spec->spec);
    set_out(prompt_text, doc.full_text);
    set_out(index_records, attrspec::prompt::index_records(doc));
    set_out(checksum, doc.checksum);
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_spec_render_section(const attrspec_spec* spec, const char* section_id,
                                             char** text, char** error) {
  if (!spec || !section_id) return ATTRSPEC_ERR_ARGUMENT;
  static const char* kSections[] = {"identity",  "perception", "reasoning",         "data_access",
                                    "rules",     "boundaries", "response_structure"};
  bool known = false;
  for (const char* id : kSections) {
    if (std::string(section_id) == id) known = true;
  }
  if (!known) {
    set_out(error, "unknown section id '" + std::string(section_id) + "'");
    return ATTRSPEC_ERR_ARGUMENT;
  }
  return guarded(error, [&] {
    set_out(text, attrspec::prompt::render_section(spec->spec, section_id));
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_snapshot_load(const char* path, attrspec_snapshot** out, char** error) {
  if (!path || !out) return ATTRSPEC_ERR_ARGUMENT;
  auto result = attrspec::snapshot::load_snapshot(path);
  if (!result.ok()) {
    std::string message;
    for (const auto& e : result.errors) message += e.path + ": " + e.message + "\n";
    set_out(error, message);
    return ATTRSPEC_ERR_PARSE;
  }
  *out = new (std::nothrow) attrspec_snapshot{std::move(*result.snapshot)};
  return *out ? ATTRSPEC_OK : ATTRSPEC_ERR_INTERNAL;
}

void attrspec_snapshot_free(attrspec_snapshot* snapshot) { delete snapshot; }

attrspec_status attrspec_trace(const attrspec_spec* spec, const char* trigger,
                               const attrspec_snapshot* snapshot, const char* as_of_date,
                               attrspec_report** out, char** error) {
  if (!spec || !trigger || !snapshot || !out) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(error, [&] {
    std::optional<std::string> as_of;
    if (as_of_date) as_of = as_of_date;
    auto report = attrspec::tracer::trace(spec->spec, trigger, snapshot->snapshot, as_of);
    std::string text = attrspec::tracer::render_report_text(report, spec->spec);
    *out = new attrspec_report{std::move(report), std::move(text)};
    return ATTRSPEC_OK;
  });
}

void attrspec_report_free(attrspec_report* report) { delete report; }

attrspec_status attrspec_report_text(const attrspec_report* report, char** text) {
  if (!report || !text) return ATTRSPEC_ERR_ARGUMENT;
  set_out(text, report->text);
  return ATTRSPEC_OK;
}

attrspec_status attrspec_report_json(const attrspec_report* report, char** json) {
  if (!report || !json) return ATTRSPEC_ERR_ARGUMENT;
  set_out(json, attrspec::tracer::report_to_json(report->report));
  return ATTRSPEC_OK;
}

attrspec_status attrspec_report_react(const attrspec_report* report, char** text) {
  if (!report || !text) return ATTRSPEC_ERR_ARGUMENT;
  set_out(text, attrspec::tracer::render_react_text(report->report));
  return ATTRSPEC_OK;
}

attrspec_status attrspec_audit_report(const attrspec_spec* spec, const attrspec_report* report,
                                      const attrspec_snapshot* snapshot, attrspec_audit** out,
                                      char** error) {
  if (!spec || !report || !snapshot || !out) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto findings =
        attrspec::auditor::audit_report(spec->spec, report->report, snapshot->snapshot);
    *out = new attrspec_audit{std::move(findings)};
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_audit_response(const attrspec_spec* spec, const char* response_text,
                                        const char* queried, const attrspec_snapshot* snapshot,
                                        attrspec_audit** out, char** error) {
  if (!spec || !response_text || !snapshot || !out) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto response = attrspec::auditor::parse_response_text(response_text);
    if (queried && *queried) response.queried = queried;
    auto findings = attrspec::auditor::audit_response(spec->spec, response, snapshot->snapshot);
    *out = new attrspec_audit{std::move(findings)};
    return ATTRSPEC_OK;
  });
}

attrspec_status attrspec_audit_report_json(const attrspec_spec* spec, const char* report_json,
                                           const attrspec_snapshot* snapshot,
                                           attrspec_audit** out, char** error) {
  if (!spec || !report_json || !snapshot || !out) return ATTRSPEC_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto report = attrspec::tracer::report_from_json(report_json);
    auto findings = attrspec::auditor::audit_report(spec->spec, report, snapshot->snapshot);
    *out = new attrspec_audit{std::move(findings)};
    return ATTRSPEC_OK;
  });
}

void attrspec_audit_free(attrspec_audit* audit) { delete audit; }

attrspec_status attrspec_audit_text(const attrspec_audit* audit, char** text) {
  if (!audit || !text) return ATTRSPEC_ERR_ARGUMENT;
  set_out(text, attrspec::auditor::render_audit_text(audit->findings));
  return ATTRSPEC_OK;
}

attrspec_status attrspec_audit_json(const attrspec_audit* audit, char** json) {
  if (!audit || !json) return ATTRSPEC_ERR_ARGUMENT;
  set_out(json, attrspec::auditor::audit_to_json(audit->findings));
  return ATTRSPEC_OK;
}

int attrspec_audit_exit_code(const attrspec_audit* audit) {
  if (!audit) return 1;
  return attrspec::auditor::exit_code(audit->findings);
}

}  // extern "C"
