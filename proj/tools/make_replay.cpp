// Regenerates the bundled replay fixture: scans the fixture source tree,
// answers each extraction prompt with a fixed completion, and records the
// exchanges so tests and demos can run the extraction pipeline offline.
//
// Usage: make_replay <fixture-src-tree> <out.jsonl>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "cdi/pipeline.hpp"

namespace {

// Answers by recognizing which documented unit the prompt describes. The
// probe words must not occur in the prompt boilerplate (symbol definitions
// and few-shot examples), so parameter names reused there are avoided.
class FixtureClient : public cdi::LlmClient {
 public:
  std::string send(const std::string& prompt) override {
    if (prompt.find("seasonal dummies") != std::string::npos)
      return "(deterministic != None) -> ((trend != \"n\") ^ (seasonal != "
             "False)) ;; A warning is raised if trend is not \"n\" and "
             "seasonal is not False. ;; high\n";
    if (prompt.find("sample_weight") != std::string::npos)
      return "(sample_weight != None) -> (strategy != \"uniform\") ;; "
             "sample_weight is rejected when strategy is \"uniform\". ;; "
             "high\n";
    if (prompt.find("kernel_params") != std::string::npos)
      return "(affinity = \"nearest_neighbors\") -> (ignore(gamma)) ;; "
             "Ignored for affinity=\"nearest_neighbors\". ;; high\n";
    if (prompt.find("max_iter") != std::string::npos)
      return "(X = None) -> (Gram != None) ;; Note that if X is None then "
             "the Gram matrix must be specified. ;; medium\n";
    return "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_replay <fixture-src-tree> <out.jsonl>\n";
    return 2;
  }
  try {
    std::filesystem::remove(argv[2]);
    FixtureClient fixture;
    cdi::RecordingClient recorder(fixture, argv[2]);
    std::vector<cdi::CorpusRecord> scanned = cdi::scan_tree(argv[1]);
    std::vector<cdi::CorpusRecord> extracted =
        cdi::extract_records(scanned, recorder);
    std::cout << "scanned " << scanned.size() << " units, extracted "
              << extracted.size() << " records, wrote " << argv[2] << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
