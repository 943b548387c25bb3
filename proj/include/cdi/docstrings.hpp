// Docstring harvesting: pulls class/function docstrings out of .py files,
// parses NumPy- and Google-style parameter sections into key-value pairs,
// and pairs up parameters whose descriptions mention each other.
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdi {

enum class DocSection { Parameters, Attributes, Args, Returns, Raises };
enum class DocStyle { NumPy, Google, Unknown };
enum class OwnerKind { Class, Function, Method };

struct ParamDoc {
  std::string name;
  std::string type_text;
  std::optional<std::string> default_text;
  std::string description;
  DocSection section = DocSection::Parameters;
};

struct DocUnit {
  OwnerKind owner_kind = OwnerKind::Function;
  std::string owner_name;  // qualified, dot separated
  DocStyle style = DocStyle::Unknown;
  std::vector<ParamDoc> params;  // names unique, first occurrence wins
  std::string file_path;
  int line_begin = 0;
  int line_end = 0;
};

struct CandidatePair {
  std::string param_a;  // the describing parameter
  std::string param_b;  // the mentioned parameter
  std::string evidence_sentence;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Style detection plus section parsing; Unknown style yields no params.
std::pair<DocStyle, std::vector<ParamDoc>> parse_param_sections(
    std::string_view docstring);

// Walk a source tree and collect one DocUnit per documented class, function
// or method. Files that do not scan are skipped.
std::vector<DocUnit> extract_docstrings(const std::filesystem::path& root);

// Ordered pairs (a, b) where b's name occurs as a whole word inside a's
// description, with the containing sentence. Returns/Raises entries never
// participate.
std::vector<CandidatePair> filter_candidates(const DocUnit& unit);

}  // namespace cdi
