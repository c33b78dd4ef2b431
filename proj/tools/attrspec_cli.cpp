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

// Command-line front end wiring the toolchain into four subcommands:
//
//   attrspec validate   load the five layers and report findings
//   attrspec compile    emit the system prompt plus a section index
//   attrspec trace      run a backward attribution trace over a snapshot
//   attrspec audit      audit a report or response for completeness,
//                       boundaries, and provenance
//
// Exit codes are a stable contract: 0 ok, 1 I/O or parse failure,
// 2 validation/completeness, 3 boundary violation, 4 fabricated value.
// Built entirely on the public C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "attrspec/attrspec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

struct StringDeleter {
  void operator()(char* s) const { attrspec_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  if (!s) return "";
  OwnedString owned(s);
  return std::string(owned.get());
}

struct SpecOptions {
  std::string bundle;
  std::vector<std::string> layers;
  std::string format = "text";
  bool strict = false;
};

void add_spec_options(CLI::App* cmd, SpecOptions& opts) {
  cmd->add_option("--bundle", opts.bundle,
                  "bundle file (layer1..layer5 keys) or directory of layerN* files");
  cmd->add_option("--layers", opts.layers, "five layer files, layer 1 through layer 5")
      ->expected(5);
  cmd->add_option("--format", opts.format, "output format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_flag("--strict", opts.strict, "treat warnings as errors");
}

int count_warnings(const std::string& diagnostics_json) {
  int n = 0;
  std::size_t pos = 0;
  const std::string needle = "\"severity\":\"warning\"";
  while ((pos = diagnostics_json.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

// --bundle and --layers are mutually exclusive; with neither, fall back to
// the ATTRSPEC_FIXTURE_DIR environment variable.
int load_spec(const SpecOptions& opts, attrspec_spec** spec, bool print_diagnostics,
              const std::string& format, int* load_warnings = nullptr) {
  if (!opts.bundle.empty() && !opts.layers.empty()) {
    std::cerr << "error: --bundle and --layers are mutually exclusive\n";
    return kExitIo;
  }
  std::string bundle = opts.bundle;
  if (bundle.empty() && opts.layers.empty()) {
    const char* env = std::getenv("ATTRSPEC_FIXTURE_DIR");
    if (!env || !*env) {
      std::cerr << "error: provide --bundle or --layers (or set ATTRSPEC_FIXTURE_DIR)\n";
      return kExitIo;
    }
    bundle = env;
  }

  char* diagnostics = nullptr;
  attrspec_status status;
  if (!bundle.empty()) {
    status = attrspec_spec_load_bundle(bundle.c_str(), spec, &diagnostics);
  } else {
    const char* paths[5];
    for (int i = 0; i < 5; ++i) paths[i] = opts.layers[i].c_str();
    status = attrspec_spec_load_layers(paths, spec, &diagnostics);
  }
  std::string diag_text = take(diagnostics);
  if (load_warnings) *load_warnings = count_warnings(diag_text);
  if (status != ATTRSPEC_OK) {
    if (format == "machine") {
      std::cout << diag_text;
    } else {
      std::cerr << "load failed:\n" << diag_text;
    }
    return kExitIo;
  }
  if (print_diagnostics && !diag_text.empty() && format == "text") {
    std::cerr << diag_text;
  }
  return kExitOk;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int run_validate(const SpecOptions& opts, const std::string& out_path) {
  attrspec_spec* spec = nullptr;
  int load_warnings = 0;
  int rc = load_spec(opts, &spec, /*print_diagnostics=*/true, opts.format, &load_warnings);
  if (rc != kExitOk) return rc;
  std::unique_ptr<attrspec_spec, decltype(&attrspec_spec_free)> owned(spec, attrspec_spec_free);

  char* json = nullptr;
  char* text = nullptr;
  int errors = 0;
  int warnings = 0;
  attrspec_spec_validate(spec, &json, &text, &errors, &warnings);
  std::string output = opts.format == "machine" ? take(json) : take(text);
  if (opts.format == "machine") {
    take(text);
  } else {
    take(json);
  }

  if (!out_path.empty() && !write_file(out_path, output)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitIo;
  }
  if (output.empty() && opts.format == "text") output = "OK: no findings\n";
  std::cout << output;
  bool failed = errors > 0 || (opts.strict && (warnings > 0 || load_warnings > 0));
  if (opts.format == "text") {
    std::cout << (failed ? "INVALID" : "VALID") << " (" << errors << " error(s), " << warnings
              << " warning(s))\n";
  }
  return failed ? kExitValidation : kExitOk;
}

int run_compile(const SpecOptions& opts, const std::string& out_path,
                const std::string& index_path) {
  attrspec_spec* spec = nullptr;
  int load_warnings = 0;
  int rc = load_spec(opts, &spec, true, opts.format, &load_warnings);
  if (rc != kExitOk) return rc;
  std::unique_ptr<attrspec_spec, decltype(&attrspec_spec_free)> owned(spec, attrspec_spec_free);

  if (opts.strict) {
    int errors = 0;
    int warnings = 0;
    attrspec_spec_validate(spec, nullptr, nullptr, &errors, &warnings);
    if (warnings > 0 || load_warnings > 0) {
      std::cerr << "error: warnings present and --strict given; run validate for details\n";
      return kExitValidation;
    }
  }

  char* text = nullptr;
  char* index = nullptr;
  char* checksum = nullptr;
  char* error = nullptr;
  attrspec_status status = attrspec_spec_compile(spec, &text, &index, &checksum, &error);
  if (status != ATTRSPEC_OK) {
    std::cerr << "compile refused: " << take(error) << "\n";
    return kExitValidation;
  }
  std::string prompt = take(text);
  std::string index_records = take(index);
  std::string checksum_hex = take(checksum);

  if (!out_path.empty()) {
    if (!write_file(out_path, prompt)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitIo;
    }
    std::string sidecar = index_path.empty() ? out_path + ".index" : index_path;
    if (!write_file(sidecar, index_records)) {
      std::cerr << "error: cannot write " << sidecar << "\n";
      return kExitIo;
    }
  } else {
    std::cout << prompt;
  }
  std::cout << "sha256:" << checksum_hex << "\n";
  return kExitOk;
}

int run_trace(const SpecOptions& opts, const std::string& snapshot_path,
              const std::string& trigger, const std::string& out_path, bool react,
              const std::string& as_of) {
  attrspec_spec* spec = nullptr;
  int rc = load_spec(opts, &spec, true, opts.format);
  if (rc != kExitOk) return rc;
  std::unique_ptr<attrspec_spec, decltype(&attrspec_spec_free)> owned(spec, attrspec_spec_free);

  int errors = 0;
  attrspec_spec_validate(spec, nullptr, nullptr, &errors, nullptr);
  if (errors > 0) {
    std::cerr << "error: spec has validation errors; run validate for details\n";
    return kExitValidation;
  }

  char* error = nullptr;
  attrspec_snapshot* snapshot = nullptr;
  if (attrspec_snapshot_load(snapshot_path.c_str(), &snapshot, &error) != ATTRSPEC_OK) {
    std::cerr << "snapshot error: " << take(error);
    return kExitIo;
  }
  std::unique_ptr<attrspec_snapshot, decltype(&attrspec_snapshot_free)> owned_snapshot(
      snapshot, attrspec_snapshot_free);

  attrspec_report* report = nullptr;
  attrspec_status status = attrspec_trace(spec, trigger.c_str(), snapshot,
                                          as_of.empty() ? nullptr : as_of.c_str(), &report, &error);
  if (status != ATTRSPEC_OK) {
    std::cerr << "trace error: " << take(error) << "\n";
    return kExitValidation;
  }
  std::unique_ptr<attrspec_report, decltype(&attrspec_report_free)> owned_report(
      report, attrspec_report_free);

  char* body = nullptr;
  if (opts.format == "machine") {
    attrspec_report_json(report, &body);
  } else {
    attrspec_report_text(report, &body);
  }
  std::string output = take(body);

  if (react) {
    char* react_text = nullptr;
    attrspec_report_react(report, &react_text);
    output += opts.format == "machine" ? "" : "\n";
    output += take(react_text);
  }

  if (!out_path.empty()) {
    if (!write_file(out_path, output)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitIo;
    }
  } else {
    std::cout << output;
  }
  return kExitOk;
}

int run_audit(const SpecOptions& opts, const std::string& snapshot_path,
              const std::string& response_path, const std::string& trigger,
              const std::string& out_path) {
  attrspec_spec* spec = nullptr;
  int rc = load_spec(opts, &spec, true, opts.format);
  if (rc != kExitOk) return rc;
  std::unique_ptr<attrspec_spec, decltype(&attrspec_spec_free)> owned(spec, attrspec_spec_free);

  int errors = 0;
  attrspec_spec_validate(spec, nullptr, nullptr, &errors, nullptr);
  if (errors > 0) {
    std::cerr << "error: spec has validation errors; run validate for details\n";
    return kExitValidation;
  }

  char* error = nullptr;
  attrspec_snapshot* snapshot = nullptr;
  if (attrspec_snapshot_load(snapshot_path.c_str(), &snapshot, &error) != ATTRSPEC_OK) {
    std::cerr << "snapshot error: " << take(error);
    return kExitIo;
  }
  std::unique_ptr<attrspec_snapshot, decltype(&attrspec_snapshot_free)> owned_snapshot(
      snapshot, attrspec_snapshot_free);

  std::ifstream in(response_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read response file " << response_path << "\n";
    return kExitIo;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string response = buffer.str();

  attrspec_audit* audit = nullptr;
  attrspec_status status;
  std::size_t first = response.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && response[first] == '{') {
    status = attrspec_audit_report_json(spec, response.c_str(), snapshot, &audit, &error);
  } else {
    status = attrspec_audit_response(spec, response.c_str(),
                                     trigger.empty() ? nullptr : trigger.c_str(), snapshot,
                                     &audit, &error);
  }
  if (status != ATTRSPEC_OK) {
    std::cerr << "audit error: " << take(error) << "\n";
    return status == ATTRSPEC_ERR_ARGUMENT ? kExitValidation : kExitIo;
  }
  std::unique_ptr<attrspec_audit, decltype(&attrspec_audit_free)> owned_audit(audit,
                                                                              attrspec_audit_free);

  char* body = nullptr;
  if (opts.format == "machine") {
    attrspec_audit_json(audit, &body);
  } else {
    attrspec_audit_text(audit, &body);
  }
  std::string output = take(body);
  if (opts.format == "machine") output += "\n";
  if (!out_path.empty() && !write_file(out_path, output)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitIo;
  }
  std::cout << output;
  return attrspec_audit_exit_code(audit);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attribution-spec toolchain: validate, compile, trace, audit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("attrspec ") + attrspec_version());

  SpecOptions validate_opts;
  std::string validate_out;
  CLI::App* validate = app.add_subcommand("validate", "check a spec against the framework rules");
  add_spec_options(validate, validate_opts);
  validate->add_option("--out", validate_out, "write findings to a file as well");

  SpecOptions compile_opts;
  std::string compile_out;
  std::string compile_index;
  CLI::App* compile = app.add_subcommand("compile", "compile a validated spec to a system prompt");
  add_spec_options(compile, compile_opts);
  compile->add_option("--out", compile_out, "prompt output file (stdout when omitted)");
  compile->add_option("--index", compile_index, "sidecar index path (default: <out>.index)");

  SpecOptions trace_opts;
  std::string trace_snapshot;
  std::string trace_trigger;
  std::string trace_out;
  std::string trace_as_of;
  bool trace_react = false;
  CLI::App* trace = app.add_subcommand("trace", "run a backward attribution trace");
  add_spec_options(trace, trace_opts);
  trace->add_option("--snapshot", trace_snapshot, "data snapshot file")->required();
  trace->add_option("--trigger", trace_trigger, "trigger question id (e.g. Q2)")->required();
  trace->add_option("--out", trace_out, "write the report to a file");
  trace->add_option("--as-of", trace_as_of, "evaluation date (ISO-8601) for staleness checks");
  trace->add_flag("--react", trace_react, "append the Thought/Action/Observation log");

  SpecOptions audit_opts;
  std::string audit_snapshot;
  std::string audit_response;
  std::string audit_trigger;
  std::string audit_out;
  CLI::App* audit = app.add_subcommand("audit", "audit a report or response");
  add_spec_options(audit, audit_opts);
  audit->add_option("--snapshot", audit_snapshot, "data snapshot file")->required();
  audit->add_option("--response", audit_response, "report JSON or sectioned text file")
      ->required();
  audit->add_option("--trigger", audit_trigger, "queried question id override");
  audit->add_option("--out", audit_out, "write the audit record to a file");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return run_validate(validate_opts, validate_out);
  if (compile->parsed()) return run_compile(compile_opts, compile_out, compile_index);
  if (trace->parsed()) {
    return run_trace(trace_opts, trace_snapshot, trace_trigger, trace_out, trace_react,
                     trace_as_of);
  }
  if (audit->parsed()) {
    return run_audit(audit_opts, audit_snapshot, audit_response, audit_trigger, audit_out);
  }
  return kExitIo;
}
