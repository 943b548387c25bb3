// cdicheck: scan source trees, extract doc constraints, check them against
// the code, mutate corpora, and render reports.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdi/corpus.hpp"
#include "cdi/extraction.hpp"
#include "cdi/pipeline.hpp"

namespace {

struct ToolConfig {
  double beta = 1.0 / 3.0;
  double tau = 0.5;
  bool fuzzy = true;
  bool relevance = true;
  size_t max_paths = 256;
  std::string format = "json";
  std::string client = "replay";  // live | replay | mock
  std::string replay_path;
  std::string endpoint = "https://api.openai.com";
  std::string model = "gpt-4";
  std::string mock_response;
  uint64_t seed = 0;
};

void load_config_file(const std::string& path, ToolConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string()
                                    : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "beta") cfg.beta = std::stod(value);
      else if (key == "tau") cfg.tau = std::stod(value);
      else if (key == "fuzzy") cfg.fuzzy = value == "true" || value == "1";
      else if (key == "relevance")
        cfg.relevance = value == "true" || value == "1";
      else if (key == "max_paths") cfg.max_paths = std::stoul(value);
      else if (key == "format") cfg.format = value;
      else if (key == "client") cfg.client = value;
      else if (key == "replay") cfg.replay_path = value;
      else if (key == "endpoint") cfg.endpoint = value;
      else if (key == "model") cfg.model = value;
      else if (key == "mock_response") cfg.mock_response = value;
      else if (key == "seed") cfg.seed = std::stoull(value);
      else
        throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": bad value for " + key);
    }
  }
}

void validate_config(const ToolConfig& cfg) {
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0))
    throw std::runtime_error("tau must be in (0, 1)");
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
    throw std::runtime_error("beta must be in [0, 1]");
  if (cfg.format != "json" && cfg.format != "markdown")
    throw std::runtime_error("format must be json or markdown");
  if (cfg.client != "live" && cfg.client != "replay" && cfg.client != "mock")
    throw std::runtime_error("client must be live, replay or mock");
  if (cfg.max_paths == 0)
    throw std::runtime_error("max-paths must be positive");
}

cdi::CheckConfig to_check_config(const ToolConfig& cfg) {
  cdi::CheckConfig out;
  out.fcl.beta = cfg.beta;
  out.fcl.tau = cfg.tau;
  out.fuzzy_enabled = cfg.fuzzy;
  out.relevance_filter = cfg.relevance;
  out.max_paths = cfg.max_paths;
  return out;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::unique_ptr<cdi::LlmClient> make_client(const ToolConfig& cfg) {
  if (cfg.client == "replay") {
    if (cfg.replay_path.empty())
      throw std::runtime_error("replay client requires --replay <path>");
    return std::make_unique<cdi::ReplayClient>(cfg.replay_path);
  }
  if (cfg.client == "mock")
    return std::make_unique<cdi::MockClient>(cfg.mock_response);
  return std::make_unique<cdi::HttpClient>(cfg.endpoint, cfg.model);
}

int cmd_scan(const std::string& tree, const std::string& out_path) {
  std::vector<cdi::CorpusRecord> records = cdi::scan_tree(tree);
  if (out_path.empty() || out_path == "-") {
    std::ostringstream os;
    for (const auto& r : records) {
      std::vector<cdi::CorpusRecord> one{r};
      // reuse the canonical field ordering
      auto tmp = std::filesystem::temp_directory_path() / "cdicheck_scan.tmp";
      cdi::write_records(one, tmp);
      std::ifstream in(tmp);
      os << in.rdbuf();
    }
    std::cout << os.str();
  } else {
    cdi::write_records(records, out_path);
  }
  return 0;
}

int cmd_extract(const std::string& corpus_path, const std::string& out_path,
                const ToolConfig& cfg) {
  std::vector<cdi::CorpusRecord> records = cdi::read_records(corpus_path);
  std::unique_ptr<cdi::LlmClient> client = make_client(cfg);
  std::vector<cdi::CorpusRecord> out = cdi::extract_records(records, *client);
  if (out_path.empty() || out_path == "-") {
    auto tmp = std::filesystem::temp_directory_path() / "cdicheck_extract.tmp";
    cdi::write_records(out, tmp);
    std::ifstream in(tmp);
    std::cout << in.rdbuf();
  } else {
    cdi::write_records(out, out_path);
  }
  return 0;
}

int cmd_check(const std::string& corpus_path, const std::string& out_path,
              const ToolConfig& cfg) {
  std::vector<cdi::CorpusRecord> records = cdi::read_records(corpus_path);
  cdi::CheckConfig check_cfg = to_check_config(cfg);

  std::vector<cdi::ReportEntry> entries;
  for (const auto& r : records)
    entries.push_back({r, cdi::check_record(r, check_cfg)});

  std::string report = cfg.format == "markdown"
                           ? cdi::render_report_markdown(entries)
                           : cdi::render_report_json(entries);
  write_text(out_path, report);

  for (const auto& e : entries)
    if (e.verdict.status == cdi::Verdict::Status::Inconsistent) return 1;
  return 0;
}

int cmd_mutate(const std::string& corpus_path, const std::string& out_path,
               const std::vector<std::string>& pattern_names, size_t count,
               const ToolConfig& cfg) {
  std::vector<cdi::CorpusRecord> records = cdi::read_records(corpus_path);

  std::vector<cdi::MutationPattern> patterns;
  if (pattern_names.empty()) {
    for (size_t i = 0; i < cdi::kMutationPatternCount; ++i)
      patterns.push_back(static_cast<cdi::MutationPattern>(i));
  } else {
    for (const auto& n : pattern_names)
      patterns.push_back(cdi::pattern_from_text(n));
  }

  cdi::CheckConfig check_cfg = to_check_config(cfg);
  std::vector<cdi::CorpusRecord> mutants;
  std::ostringstream manifest;
  size_t inapplicable = 0;

  for (size_t ri = 0; ri < records.size(); ++ri) {
    const cdi::CorpusRecord& r = records[ri];
    for (size_t k = 0; k < count; ++k) {
      uint64_t seed = cfg.seed * 1000003ULL + ri * 101ULL + k;
      bool produced = false;
      for (size_t offset = 0; offset < patterns.size(); ++offset) {
        cdi::MutationPattern p =
            patterns[(ri + k + offset) % patterns.size()];
        cdi::CorpusRecord m;
        try {
          m = cdi::mutate(r, p, seed);
        } catch (const cdi::InapplicablePattern&) {
          continue;
        }
        // a mutant equivalent to its source keeps the label; anything else
        // gets re-judged against the code
        if (!m.constraint_text.empty() && !r.constraint_text.empty()) {
          try {
            cdi::ConstraintPtr o = cdi::parse_constraint(r.constraint_text);
            cdi::ConstraintPtr mu = cdi::parse_constraint(m.constraint_text);
            if (!cdi::has_fuzzy_pred(o) && !cdi::has_fuzzy_pred(mu) &&
                cdi::validate_mutant(o, mu) ==
                    cdi::MutantRelation::Equivalent) {
              m.label = r.label;
            } else {
              cdi::Verdict v = cdi::check_record(m, check_cfg);
              switch (v.status) {
                case cdi::Verdict::Status::Consistent:
                  m.label = cdi::CorpusRecord::Label::Consistent;
                  break;
                case cdi::Verdict::Status::Inconsistent:
                  m.label = cdi::CorpusRecord::Label::Inconsistent;
                  break;
                case cdi::Verdict::Status::Unresolved:
                  m.label = cdi::CorpusRecord::Label::Unknown;
                  break;
              }
            }
          } catch (const std::exception&) {
            m.label = cdi::CorpusRecord::Label::Unknown;
          }
        }
        manifest << ri << " " << cdi::pattern_text(p) << " " << seed << "\n";
        mutants.push_back(std::move(m));
        produced = true;
        break;
      }
      if (!produced) ++inapplicable;
    }
  }

  if (mutants.empty() && !records.empty())
    std::cerr << "warning: every requested mutation was inapplicable\n";
  cdi::write_records(mutants, out_path);
  write_text(out_path + ".manifest", manifest.str());
  if (inapplicable > 0)
    std::cerr << "warning: " << inapplicable
              << " mutation slots had no applicable pattern\n";
  return 0;
}

int cmd_report(const std::string& report_path, const ToolConfig& cfg) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot read " + report_path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("findings"))
    throw std::runtime_error("not a report file: " + report_path);

  std::vector<cdi::ReportEntry> entries;
  for (const auto& f : j["findings"]) {
    cdi::ReportEntry e;
    e.record.file_path = f.value("file_path", "");
    e.record.owner = f.value("function", "");
    e.record.doc_text = f.value("doc_text", "");
    e.record.constraint_text = f.value("constraint", "");
    std::string status = f.value("status", "unresolved");
    e.verdict.function = e.record.owner;
    e.verdict.status = status == "consistent"
                           ? cdi::Verdict::Status::Consistent
                       : status == "inconsistent"
                           ? cdi::Verdict::Status::Inconsistent
                           : cdi::Verdict::Status::Unresolved;
    if (f.contains("kind"))
      e.verdict.kind = f["kind"] == "incompleteness"
                           ? cdi::Verdict::Kind::Incompleteness
                           : cdi::Verdict::Kind::Incorrectness;
    if (f.contains("membership")) {
      cdi::Membership m;
      m.value = f["membership"].get<double>();
      e.verdict.membership = m;
    }
    if (f.contains("evidence"))
      for (const auto& ev : f["evidence"])
        e.verdict.evidence.push_back(ev.get<std::string>());
    entries.push_back(std::move(e));
  }
  std::cout << (cfg.format == "markdown" ? cdi::render_report_markdown(entries)
                                         : cdi::render_report_json(entries));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect multi-parameter code-documentation inconsistencies"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  ToolConfig cfg;
  bool flag_fuzzy = true;
  app.add_option("--config", config_path, "key=value config file");
  auto* fuzzy_opt =
      app.add_flag("--fuzzy,!--no-fuzzy", flag_fuzzy, "fuzzy checking mode");
  auto* tau_opt = app.add_option("--tau", cfg.tau, "membership threshold");
  auto* beta_opt = app.add_option("--beta", cfg.beta, "operator weight");
  auto* mp_opt = app.add_option("--max-paths", cfg.max_paths,
                                "path enumeration cap");
  auto* fmt_opt =
      app.add_option("--format", cfg.format, "report format: json|markdown");
  auto* replay_opt =
      app.add_option("--replay", cfg.replay_path, "replay exchange file");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "mutation seed");

  std::string tree, corpus_path, out_path, report_path;
  std::vector<std::string> pattern_names;
  size_t mutate_count = 2;

  auto* scan = app.add_subcommand("scan", "scan a source tree into records");
  scan->add_option("tree", tree, "source tree or file")->required();
  scan->add_option("--out", out_path, "output JSONL path (default stdout)");

  auto* extract =
      app.add_subcommand("extract", "extract constraints for scanned records");
  extract->add_option("corpus", corpus_path, "scanned JSONL")->required();
  extract->add_option("--out", out_path, "output JSONL path (default stdout)");

  auto* check = app.add_subcommand("check", "check records against their code");
  check->add_option("corpus", corpus_path, "corpus JSONL")->required();
  check->add_option("--out", out_path, "report path (default stdout)");

  auto* mutate = app.add_subcommand("mutate", "mutate a corpus");
  mutate->add_option("corpus", corpus_path, "corpus JSONL")->required();
  mutate->add_option("--out", out_path, "mutated corpus path")->required();
  mutate->add_option("--patterns", pattern_names,
                     "restrict to these mutation patterns");
  mutate->add_option("--count", mutate_count, "mutations per record");

  auto* report = app.add_subcommand("report", "re-render a JSON report");
  report->add_option("report", report_path, "report JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    // precedence: defaults < config file < flags
    ToolConfig flags = cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (tau_opt->count()) cfg.tau = flags.tau;
    if (beta_opt->count()) cfg.beta = flags.beta;
    if (mp_opt->count()) cfg.max_paths = flags.max_paths;
    if (fmt_opt->count()) cfg.format = flags.format;
    if (replay_opt->count()) cfg.replay_path = flags.replay_path;
    if (seed_opt->count()) cfg.seed = flags.seed;
    if (fuzzy_opt->count()) cfg.fuzzy = flag_fuzzy;
    if (!cfg.replay_path.empty() && cfg.client == "live")
      cfg.client = "replay";
    validate_config(cfg);

    if (scan->parsed()) return cmd_scan(tree, out_path);
    if (extract->parsed()) return cmd_extract(corpus_path, out_path, cfg);
    if (check->parsed()) return cmd_check(corpus_path, out_path, cfg);
    if (mutate->parsed())
      return cmd_mutate(corpus_path, out_path, pattern_names, mutate_count,
                        cfg);
    if (report->parsed()) return cmd_report(report_path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
