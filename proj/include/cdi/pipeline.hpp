// Glue between the corpus records and the per-module operations: checking a
// record end to end, scanning a source tree into records, and rendering
// reports. Shared by the command-line tool and the test suites.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cdi/checker.hpp"
#include "cdi/corpus.hpp"
#include "cdi/docstrings.hpp"
#include "cdi/extraction.hpp"

namespace cdi {

// Parse the record's constraint and code, build the path model, and pick
// the right check (usage predicate for fuzzy constraints, crisp or fuzzy
// membership otherwise). Anything unparseable yields Unresolved.
Verdict check_record(const CorpusRecord& record, const CheckConfig& cfg);

struct ReportEntry {
  CorpusRecord record;
  Verdict verdict;
};

// Machine-stable JSON (sorted keys, suspicious-first ordering).
std::string render_report_json(const std::vector<ReportEntry>& entries);

// Grouped by file and inconsistency kind, quoting doc text and evidence.
std::string render_report_markdown(const std::vector<ReportEntry>& entries);

// Run constraint extraction over scanned records: the doc_text of each
// record is re-parsed into parameter sections and sent through the client;
// one output record per extracted constraint. Records whose documentation
// yields nothing are kept with an explanatory note.
std::vector<CorpusRecord> extract_records(
    const std::vector<CorpusRecord>& records, LlmClient& client);

// Scan a source tree: one record per documented unit with at least one
// candidate parameter pair. doc_text is rendered in a NumPy-style section
// so it can be re-parsed downstream; code that does not parse under the
// subset is kept with an Unresolved-source note.
std::vector<CorpusRecord> scan_tree(const std::filesystem::path& root);

}  // namespace cdi
