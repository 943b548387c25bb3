// Dataset persistence (JSONL corpus records) and the mutation engine:
// eight closed mutation patterns over constraint/doc records, with
// satisfiability-based mutant validation.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdi/constraint.hpp"

namespace cdi {

struct CorpusRecord {
  std::string repo;
  std::string sha;
  std::string file_path;
  std::string owner;  // qualified function/class name
  std::string doc_text;
  std::string constraint_text;
  std::string code_source;

  enum class Label { Consistent, Inconsistent, Unknown };
  Label label = Label::Unknown;

  std::optional<std::string> mismatch_note;
  // set on mutants only
  std::optional<std::string> mutation_pattern;
  std::optional<uint64_t> mutation_seed;

  bool operator==(const CorpusRecord&) const = default;
};

enum class MutationPattern {
  ParamNameChange,
  ValueChange,
  LogicChange,
  RemoveParameter,
  AddConstraint,
  RemoveConstraint,
  MissingDocumentation,
  ModifyDescription,
};

constexpr size_t kMutationPatternCount = 8;

const char* pattern_text(MutationPattern p);
MutationPattern pattern_from_text(const std::string& text);

struct CorpusParseError : std::runtime_error {
  CorpusParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line(line) {}
  int line;
};

struct InapplicablePattern : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<CorpusRecord> read_records(const std::filesystem::path& path);
void write_records(const std::vector<CorpusRecord>& records,
                   const std::filesystem::path& path);

// Deterministic under (record, pattern, seed); the seed and pattern are
// stamped on the result.
CorpusRecord mutate(const CorpusRecord& record, MutationPattern pattern,
                    uint64_t seed);

enum class MutantRelation { Equivalent, Weaker, Stronger, Violates };

const char* relation_text(MutantRelation r);

// Equivalent: both implications hold. Weaker: original implies mutant only.
// Stronger: mutant implies original only. Violates: neither direction.
MutantRelation validate_mutant(const ConstraintPtr& original,
                               const ConstraintPtr& mutant);

}  // namespace cdi
