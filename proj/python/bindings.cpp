// Python bindings for the documentation-consistency core. The surface is
// deliberately value-oriented: constraints travel as their canonical text,
// corpus records and verdicts as plain dicts, so the module composes with
// ordinary Python tooling (json, pandas, pytest) without wrapper classes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdi/checker.hpp"
#include "cdi/code_model.hpp"
#include "cdi/constraint.hpp"
#include "cdi/corpus.hpp"
#include "cdi/fcl.hpp"
#include "cdi/pipeline.hpp"
#include "cdi/sat.hpp"

namespace py = pybind11;
using namespace cdi;

namespace {

Operator operator_from_text(const std::string& text) {
  if (text == "<") return Operator::Lt;
  if (text == "<=") return Operator::Le;
  if (text == ">") return Operator::Gt;
  if (text == ">=") return Operator::Ge;
  if (text == "=" || text == "==") return Operator::Eq;
  if (text == "!=") return Operator::Ne;
  throw std::invalid_argument("unknown operator '" + text + "'");
}

const char* label_text(CorpusRecord::Label l) {
  switch (l) {
    case CorpusRecord::Label::Consistent: return "Consistent";
    case CorpusRecord::Label::Inconsistent: return "Inconsistent";
    default: return "Unknown";
  }
}

CorpusRecord::Label label_from_text(const std::string& text) {
  if (text == "Consistent") return CorpusRecord::Label::Consistent;
  if (text == "Inconsistent") return CorpusRecord::Label::Inconsistent;
  if (text == "Unknown") return CorpusRecord::Label::Unknown;
  throw std::invalid_argument("unknown label '" + text + "'");
}

py::dict record_to_dict(const CorpusRecord& r) {
  py::dict d;
  d["repo"] = r.repo;
  d["sha"] = r.sha;
  d["file_path"] = r.file_path;
  d["owner"] = r.owner;
  d["doc_text"] = r.doc_text;
  d["constraint_text"] = r.constraint_text;
  d["code_source"] = r.code_source;
  d["label"] = label_text(r.label);
  if (r.mismatch_note) d["mismatch_note"] = *r.mismatch_note;
  if (r.mutation_pattern) d["mutation_pattern"] = *r.mutation_pattern;
  if (r.mutation_seed) d["mutation_seed"] = *r.mutation_seed;
  return d;
}

CorpusRecord record_from_dict(const py::dict& d) {
  CorpusRecord r;
  auto str = [&](const char* key) {
    return d.contains(key) ? d[key].cast<std::string>() : std::string();
  };
  r.repo = str("repo");
  r.sha = str("sha");
  r.file_path = str("file_path");
  r.owner = str("owner");
  r.doc_text = str("doc_text");
  r.constraint_text = str("constraint_text");
  r.code_source = str("code_source");
  if (d.contains("label")) r.label = label_from_text(str("label"));
  if (d.contains("mismatch_note")) r.mismatch_note = str("mismatch_note");
  if (d.contains("mutation_pattern"))
    r.mutation_pattern = str("mutation_pattern");
  if (d.contains("mutation_seed"))
    r.mutation_seed = d["mutation_seed"].cast<uint64_t>();
  return r;
}

CheckConfig config_from_kwargs(double beta, double tau, bool fuzzy,
                               bool relevance, size_t max_paths) {
  CheckConfig cfg;
  cfg.fcl.beta = beta;
  cfg.fcl.tau = tau;
  cfg.fuzzy_enabled = fuzzy;
  cfg.relevance_filter = relevance;
  cfg.max_paths = max_paths;
  return cfg;
}

py::dict verdict_to_dict(const Verdict& v) {
  py::dict d;
  d["status"] = status_text(v.status);
  d["kind"] = v.kind ? py::cast(std::string(kind_text(*v.kind)))
                     : py::object(py::none());
  d["membership"] = v.membership ? py::cast(v.membership->value)
                                 : py::object(py::none());
  d["evidence"] = v.evidence;
  return d;
}

py::list paths_to_list(const EnumeratedPaths& ep) {
  py::list out;
  for (const auto& p : ep.paths) {
    py::dict d;
    d["terminal"] =
        p.terminal == TerminalKind::ErrorEnd ? "error_end" : "normal";
    py::list atoms;
    for (const auto& a : p.atoms)
      atoms.append(print_constraint(Constraint::atom(a)));
    d["atoms"] = atoms;
    out.append(d);
  }
  return out;
}

FunctionModel model_from_source(const std::string& source,
                                const std::vector<std::string>& nullable) {
  std::set<std::string> hints(nullable.begin(), nullable.end());
  return normalize_function(parse_function(source), hints);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Core operations for checking multi-parameter constraints stated in "
      "documentation against the code paths that enforce them.";

  // constraint text utilities -------------------------------------------
  m.def(
      "canonical",
      [](const std::string& text) {
        return print_constraint(parse_constraint(text));
      },
      py::arg("text"),
      "Parse a constraint and return its canonical fully-parenthesized "
      "form. Raises ValueError on malformed input.");
  m.def(
      "normalize",
      [](const std::string& text) {
        return print_constraint(normalize(parse_constraint(text)));
      },
      py::arg("text"),
      "Canonical negation-normal form with implications rewritten away.");
  m.def(
      "constraint_params",
      [](const std::string& text) {
        return constraint_params(parse_constraint(text));
      },
      py::arg("text"),
      "Parameter names mentioned in the constraint, first occurrence first.");

  // similarity math -------------------------------------------------------
  m.def("levenshtein", &levenshtein, py::arg("a"), py::arg("b"));
  m.def("nld", &nld, py::arg("a"), py::arg("b"),
        "Normalized Levenshtein similarity in [0, 1].");
  m.def(
      "op_similarity",
      [](const std::string& a, const std::string& b) {
        return op_similarity(operator_from_text(a), operator_from_text(b));
      },
      py::arg("a"), py::arg("b"),
      "Cosine similarity of two comparison operators given as text.");

  // satisfiability ---------------------------------------------------------
  m.def(
      "is_satisfiable",
      [](const std::string& text) {
        return check_sat_conjunction({parse_constraint(text)}).sat;
      },
      py::arg("text"),
      "Whether some assignment over the inferred finite domains satisfies "
      "the constraint.");
  m.def(
      "mutant_relation",
      [](const std::string& original, const std::string& mutant) {
        return std::string(relation_text(validate_mutant(
            parse_constraint(original), parse_constraint(mutant))));
      },
      py::arg("original"), py::arg("mutant"),
      "Logical relation between two constraints: Equivalent, Weaker, "
      "Stronger, or Violates.");

  // code model --------------------------------------------------------------
  m.def(
      "enumerate_paths",
      [](const std::string& source, const std::vector<std::string>& nullable,
         size_t max_paths) {
        return paths_to_list(
            enumerate_paths(model_from_source(source, nullable), max_paths));
      },
      py::arg("source"), py::arg("nullable") = std::vector<std::string>{},
      py::arg("max_paths") = size_t{256},
      "Feasible execution paths of a function in the supported subset, as "
      "dicts with 'terminal' and 'atoms'.");
  m.def(
      "dump_paths",
      [](const std::string& source, const std::vector<std::string>& nullable) {
        return dump_paths(
            enumerate_paths(model_from_source(source, nullable)));
      },
      py::arg("source"), py::arg("nullable") = std::vector<std::string>{},
      "One line per path: terminal kind and the conjunction of guards.");

  // record-level pipeline ---------------------------------------------------
  m.def(
      "check_record",
      [](const py::dict& record, double beta, double tau, bool fuzzy,
         bool relevance, size_t max_paths) {
        return verdict_to_dict(check_record(
            record_from_dict(record),
            config_from_kwargs(beta, tau, fuzzy, relevance, max_paths)));
      },
      py::arg("record"), py::kw_only(), py::arg("beta") = 1.0 / 3.0,
      py::arg("tau") = 0.5, py::arg("fuzzy") = true,
      py::arg("relevance") = true, py::arg("max_paths") = size_t{256},
      "Check one corpus record; returns a verdict dict with status, kind, "
      "membership, and evidence.");
  m.def(
      "read_records",
      [](const std::filesystem::path& path) {
        py::list out;
        for (const auto& r : read_records(path)) out.append(record_to_dict(r));
        return out;
      },
      py::arg("path"));
  m.def(
      "write_records",
      [](const py::list& records, const std::filesystem::path& path) {
        std::vector<CorpusRecord> rs;
        for (const auto& r : records)
          rs.push_back(record_from_dict(r.cast<py::dict>()));
        write_records(rs, path);
      },
      py::arg("records"), py::arg("path"));
  m.def(
      "mutate",
      [](const py::dict& record, const std::string& pattern, uint64_t seed) {
        return record_to_dict(
            mutate(record_from_dict(record), pattern_from_text(pattern), seed));
      },
      py::arg("record"), py::arg("pattern"), py::arg("seed"),
      "Deterministic mutant of a record under the named pattern.");
  m.def(
      "mutation_patterns",
      []() {
        std::vector<std::string> out;
        for (size_t i = 0; i < kMutationPatternCount; ++i)
          out.push_back(pattern_text(static_cast<MutationPattern>(i)));
        return out;
      },
      "Names of the supported mutation patterns.");
  m.def(
      "scan_tree",
      [](const std::filesystem::path& root) {
        py::list out;
        for (const auto& r : scan_tree(root)) out.append(record_to_dict(r));
        return out;
      },
      py::arg("root"),
      "One record per documented unit with candidate parameter pairs.");
  m.def(
      "extract_records",
      [](const py::list& records, const std::filesystem::path& replay) {
        std::vector<CorpusRecord> rs;
        for (const auto& r : records)
          rs.push_back(record_from_dict(r.cast<py::dict>()));
        ReplayClient client(replay);
        py::list out;
        for (const auto& r : extract_records(rs, client))
          out.append(record_to_dict(r));
        return out;
      },
      py::arg("records"), py::arg("replay"),
      "Run constraint extraction against a recorded replay file.");
  m.def(
      "report_json",
      [](const py::list& records, double beta, double tau, bool fuzzy,
         bool relevance, size_t max_paths) {
        CheckConfig cfg =
            config_from_kwargs(beta, tau, fuzzy, relevance, max_paths);
        std::vector<ReportEntry> entries;
        for (const auto& r : records) {
          CorpusRecord rec = record_from_dict(r.cast<py::dict>());
          entries.push_back({rec, check_record(rec, cfg)});
        }
        return render_report_json(entries);
      },
      py::arg("records"), py::kw_only(), py::arg("beta") = 1.0 / 3.0,
      py::arg("tau") = 0.5, py::arg("fuzzy") = true,
      py::arg("relevance") = true, py::arg("max_paths") = size_t{256},
      "Check every record and render the machine-stable JSON report.");

  // exception mapping ---------------------------------------------------
  py::register_exception<ParseError>(m, "ConstraintParseError",
                                     PyExc_ValueError);
  py::register_exception<UnsupportedSyntaxError>(m, "UnsupportedSyntaxError",
                                                 PyExc_ValueError);
  py::register_exception<CorpusParseError>(m, "CorpusParseError",
                                           PyExc_ValueError);
  py::register_exception<InapplicablePattern>(m, "InapplicablePattern",
                                              PyExc_ValueError);
  py::register_exception<SortError>(m, "SortError", PyExc_ValueError);
}
