#include "cdi/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cdi/sat.hpp"

namespace cdi {

namespace {

std::set<std::string> none_compared_params(const ConstraintPtr& c) {
  std::set<std::string> out;
  for (const Expression* e : atom_leaves(c))
    if (e->value.kind() == Value::Kind::None) out.insert(e->param);
  return out;
}

Verdict unresolved(const CorpusRecord& r, const std::string& why) {
  Verdict v;
  v.status = Verdict::Status::Unresolved;
  v.function = r.owner;
  v.evidence.push_back(why);
  return v;
}

}  // namespace

Verdict check_record(const CorpusRecord& record, const CheckConfig& cfg) {
  if (record.constraint_text.empty())
    return unresolved(record, "record has no constraint");

  ConstraintPtr c;
  try {
    c = parse_constraint(record.constraint_text);
  } catch (const ParseError& e) {
    return unresolved(record, std::string("constraint parse error: ") +
                                  e.what());
  }

  FunctionModel model;
  try {
    FunctionModel raw = parse_function(record.code_source);
    model = normalize_function(raw, none_compared_params(c));
  } catch (const UnsupportedSyntaxError& e) {
    Verdict v = unresolved(record, std::string("unsupported source: ") +
                                       e.what());
    v.constraint = c;
    return v;
  }

  Verdict v;
  try {
    if (has_fuzzy_pred(c)) {
      v = check_usage_predicate(c, model, cfg);
    } else {
      EnumeratedPaths ep = enumerate_paths(model, cfg.max_paths);
      v = cfg.fuzzy_enabled ? check_fuzzy(c, ep.paths, cfg)
                            : check_crisp(c, ep.paths, cfg);
      if (ep.truncated) v.evidence.push_back("path enumeration truncated");
    }
  } catch (const std::exception& e) {
    Verdict u = unresolved(record, std::string("check failed: ") + e.what());
    u.constraint = c;
    return u;
  }
  v.constraint = c;
  v.function = record.owner;
  return v;
}

namespace {

nlohmann::json entry_json(const ReportEntry& e) {
  nlohmann::json j;  // std::map-backed: keys come out sorted
  j["file_path"] = e.record.file_path;
  j["function"] = e.verdict.function.empty() ? e.record.owner
                                             : e.verdict.function;
  j["doc_text"] = e.record.doc_text;
  j["constraint"] = e.record.constraint_text;
  j["status"] = status_text(e.verdict.status);
  if (e.verdict.kind) j["kind"] = kind_text(*e.verdict.kind);
  if (e.verdict.membership) j["membership"] = e.verdict.membership->value;
  j["evidence"] = e.verdict.evidence;
  return j;
}

std::vector<size_t> report_order(const std::vector<ReportEntry>& entries) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(entries.size());
  for (const auto& e : entries) verdicts.push_back(e.verdict);
  return classify(verdicts).order;
}

}  // namespace

std::string render_report_json(const std::vector<ReportEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (size_t i : report_order(entries)) arr.push_back(entry_json(entries[i]));
  nlohmann::json root;
  std::vector<Verdict> verdicts;
  for (const auto& e : entries) verdicts.push_back(e.verdict);
  ReportSummary s = classify(verdicts);
  root["findings"] = arr;
  root["summary"] = {{"consistent", s.consistent},
                     {"inconsistent", s.inconsistent},
                     {"unresolved", s.unresolved},
                     {"incorrectness", s.incorrectness},
                     {"incompleteness", s.incompleteness}};
  return root.dump(2) + "\n";
}

std::string render_report_markdown(const std::vector<ReportEntry>& entries) {
  std::ostringstream os;
  os << "# Documentation consistency report\n\n";
  if (entries.empty()) {
    os << "No findings.\n";
    return os.str();
  }
  std::vector<Verdict> verdicts;
  for (const auto& e : entries) verdicts.push_back(e.verdict);
  ReportSummary s = classify(verdicts);
  os << "Checked " << entries.size() << " constraints: " << s.consistent
     << " consistent, " << s.inconsistent << " inconsistent ("
     << s.incorrectness << " incorrectness, " << s.incompleteness
     << " incompleteness), " << s.unresolved << " unresolved.\n";

  // group findings by file, then by kind, most suspicious first
  std::vector<size_t> order = report_order(entries);
  std::map<std::string, std::vector<size_t>> by_file;
  for (size_t i : order) by_file[entries[i].record.file_path].push_back(i);

  for (const auto& [file, idxs] : by_file) {
    os << "\n## " << (file.empty() ? "(no file)" : file) << "\n";
    for (size_t i : idxs) {
      const ReportEntry& e = entries[i];
      os << "\n### " << e.verdict.function << " — "
         << status_text(e.verdict.status);
      if (e.verdict.kind) os << " (" << kind_text(*e.verdict.kind) << ")";
      os << "\n\n";
      if (!e.record.doc_text.empty())
        os << "> " << e.record.doc_text << "\n\n";
      os << "Constraint: `" << e.record.constraint_text << "`\n";
      if (e.verdict.membership)
        os << "Membership: " << e.verdict.membership->value << "\n";
      for (const auto& ev : e.verdict.evidence)
        os << "- " << ev << "\n";
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

size_t indent_of(const std::string& s) {
  size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

// Source text of the block starting at def_line (1-based), ending before
// the first non-blank line at the same or lower indent.
std::string block_source(const std::vector<std::string>& lines,
                         size_t def_line) {
  if (def_line == 0 || def_line > lines.size()) return "";
  size_t start = def_line - 1;
  size_t base = indent_of(lines[start]);
  std::ostringstream os;
  os << lines[start] << "\n";
  for (size_t i = start + 1; i < lines.size(); ++i) {
    if (!blank(lines[i]) && indent_of(lines[i]) <= base) break;
    os << lines[i] << "\n";
  }
  return os.str();
}

// For a class docstring, the checkable code is its __init__, or failing
// that the first method.
size_t find_init(const std::vector<std::string>& lines, size_t class_line) {
  if (class_line == 0 || class_line > lines.size()) return 0;
  size_t base = indent_of(lines[class_line - 1]);
  size_t first_def = 0;
  for (size_t i = class_line; i < lines.size(); ++i) {
    if (!blank(lines[i]) && indent_of(lines[i]) <= base && i > class_line)
      break;
    size_t pos = lines[i].find("def ");
    if (pos == std::string::npos || pos <= base) continue;
    if (lines[i].find("def __init__") != std::string::npos) return i + 1;
    if (first_def == 0) first_def = i + 1;
  }
  return first_def;
}

std::string render_doc_text(const DocUnit& unit) {
  std::ostringstream os;
  os << "Parameters\n----------\n";
  for (const auto& p : unit.params) {
    if (p.section == DocSection::Returns || p.section == DocSection::Raises)
      continue;
    os << p.name;
    if (!p.type_text.empty()) os << " : " << p.type_text;
    os << "\n";
    if (!p.description.empty()) os << "    " << p.description << "\n";
  }
  return os.str();
}

}  // namespace

std::vector<CorpusRecord> extract_records(
    const std::vector<CorpusRecord>& records, LlmClient& client) {
  std::vector<CorpusRecord> out;
  for (const auto& r : records) {
    DocUnit unit;
    unit.owner_name = r.owner;
    unit.file_path = r.file_path;
    auto [style, params] = parse_param_sections(r.doc_text);
    unit.style = style;
    unit.params = std::move(params);
    if (unit.params.empty()) {
      CorpusRecord keep = r;
      keep.mismatch_note = "no parsable parameter documentation";
      out.push_back(std::move(keep));
      continue;
    }
    ExtractionResult result = extract_constraints(unit, client);
    if (result.constraints.empty()) {
      CorpusRecord keep = r;
      keep.mismatch_note = "no constraints extracted";
      out.push_back(std::move(keep));
      continue;
    }
    for (const auto& a : result.constraints) {
      CorpusRecord rec = r;
      rec.constraint_text = print_constraint(a.constraint);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<CorpusRecord> scan_tree(const std::filesystem::path& root) {
  std::vector<DocUnit> units = extract_docstrings(root);
  std::vector<CorpusRecord> out;
  std::map<std::string, std::vector<std::string>> file_cache;

  for (const auto& unit : units) {
    std::vector<CandidatePair> pairs = filter_candidates(unit);
    if (pairs.empty()) continue;

    auto it = file_cache.find(unit.file_path);
    if (it == file_cache.end())
      it = file_cache.emplace(unit.file_path, read_lines(unit.file_path))
               .first;
    const std::vector<std::string>& lines = it->second;

    size_t def_line = static_cast<size_t>(unit.line_begin);
    if (unit.owner_kind == OwnerKind::Class)
      def_line = find_init(lines, def_line);

    CorpusRecord r;
    r.file_path = unit.file_path;
    r.owner = unit.owner_name;
    r.doc_text = render_doc_text(unit);
    r.code_source = def_line ? block_source(lines, def_line) : "";
    r.label = CorpusRecord::Label::Unknown;
    if (!r.code_source.empty()) {
      try {
        parse_function(r.code_source);
      } catch (const UnsupportedSyntaxError& e) {
        r.mismatch_note = std::string("Unresolved-source: ") + e.what();
      }
    } else {
      r.mismatch_note = "Unresolved-source: no function body found";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cdi
