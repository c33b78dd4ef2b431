/* Copyright 2026 The Attrspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the attribution-spec toolchain: load and validate layered
 * agent specifications, compile them to system prompts, run backward
 * attribution traces over data snapshots, and audit responses.
 *
 * Conventions:
 *   - Every function returns an attrspec_status; ATTRSPEC_OK is success.
 *   - Out-parameters are written only on success unless noted. Functions
 *     with a `char** error` out-parameter set it to a heap-allocated
 *     message on failure; pass NULL to ignore.
 *   - All returned strings are UTF-8, heap-allocated, and released with
 *     attrspec_string_free. Handles are released with their _free call.
 *   - Handles are immutable after creation and safe to share across
 *     threads for concurrent reads.
 */

#ifndef ATTRSPEC_H_
#define ATTRSPEC_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum attrspec_status {
  ATTRSPEC_OK = 0,
  ATTRSPEC_ERR_IO = 1,         /* unreadable file */
  ATTRSPEC_ERR_PARSE = 2,      /* malformed document or load diagnostics */
  ATTRSPEC_ERR_VALIDATION = 3, /* spec has error-severity findings */
  ATTRSPEC_ERR_ARGUMENT = 4,   /* unknown trigger, section, or bad argument */
  ATTRSPEC_ERR_INTERNAL = 5
} attrspec_status;

typedef struct attrspec_spec attrspec_spec;
typedef struct attrspec_snapshot attrspec_snapshot;
typedef struct attrspec_report attrspec_report;
typedef struct attrspec_audit attrspec_audit;

const char* attrspec_version(void);
void attrspec_string_free(char* s);

/* --- Loading -----------------------------------------------------------
 * Both loaders always write `diagnostics` (JSON lines, one record per
 * diagnostic, possibly empty) when it is non-NULL, on success and failure
 * alike. On any error-severity diagnostic the spec is not created and
 * ATTRSPEC_ERR_PARSE is returned. The spec is canonicalized on load. */
attrspec_status attrspec_spec_load_bundle(const char* path, attrspec_spec** out,
                                          char** diagnostics);
attrspec_status attrspec_spec_load_layers(const char* const paths[5], attrspec_spec** out,
                                          char** diagnostics);
void attrspec_spec_free(attrspec_spec* spec);

/* Canonical JSON rendering of the loaded spec (byte-stable). */
attrspec_status attrspec_spec_serialize(const attrspec_spec* spec, char** json);

/* --- Validation --------------------------------------------------------
 * findings_json: JSON lines, one record per finding; findings_text: one
 * human-readable line per finding. Both may be NULL. Always ATTRSPEC_OK
 * for a loaded spec; inspect the counts for the verdict. */
attrspec_status attrspec_spec_validate(const attrspec_spec* spec, char** findings_json,
                                       char** findings_text, int* errors, int* warnings);

/* --- Compilation -------------------------------------------------------
 * Fails with ATTRSPEC_ERR_VALIDATION (and an error message) if the spec
 * has error findings. checksum is the sha256 hex of the prompt text. */
attrspec_status attrspec_spec_compile(const attrspec_spec* spec, char** prompt_text,
                                      char** index_records, char** checksum, char** error);
attrspec_status attrspec_spec_render_section(const attrspec_spec* spec, const char* section_id,
                                             char** text, char** error);

/* --- Snapshots ---------------------------------------------------------*/
attrspec_status attrspec_snapshot_load(const char* path, attrspec_snapshot** out, char** error);
void attrspec_snapshot_free(attrspec_snapshot* snapshot);

/* --- Tracing -----------------------------------------------------------
 * as_of_date (ISO-8601) enables staleness caveats; pass NULL to skip. */
attrspec_status attrspec_trace(const attrspec_spec* spec, const char* trigger,
                               const attrspec_snapshot* snapshot, const char* as_of_date,
                               attrspec_report** out, char** error);
void attrspec_report_free(attrspec_report* report);

attrspec_status attrspec_report_text(const attrspec_report* report, char** text);
attrspec_status attrspec_report_json(const attrspec_report* report, char** json);
attrspec_status attrspec_report_react(const attrspec_report* report, char** text);

/* --- Auditing ----------------------------------------------------------
 * attrspec_audit_report audits a report produced by attrspec_trace.
 * attrspec_audit_response audits sectioned text; `queried` overrides the
 * response's own "queried:" front matter and may be NULL.
 * attrspec_audit_report_json audits a report serialized by
 * attrspec_report_json. */
attrspec_status attrspec_audit_report(const attrspec_spec* spec, const attrspec_report* report,
                                      const attrspec_snapshot* snapshot, attrspec_audit** out,
                                      char** error);
attrspec_status attrspec_audit_response(const attrspec_spec* spec, const char* response_text,
                                        const char* queried, const attrspec_snapshot* snapshot,
                                        attrspec_audit** out, char** error);
attrspec_status attrspec_audit_report_json(const attrspec_spec* spec, const char* report_json,
                                           const attrspec_snapshot* snapshot,
                                           attrspec_audit** out, char** error);
void attrspec_audit_free(attrspec_audit* audit);

attrspec_status attrspec_audit_text(const attrspec_audit* audit, char** text);
attrspec_status attrspec_audit_json(const attrspec_audit* audit, char** json);
/* Exit-code contract: 0 clean, 2 incomplete, 3 boundary violation,
 * 4 fabricated value. */
int attrspec_audit_exit_code(const attrspec_audit* audit);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ATTRSPEC_H_ */
