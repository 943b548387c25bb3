// Constraint extraction from documentation text through a pluggable
// chat-completion client: chunking, prompt assembly, output parsing, and the
// mock / replay / recording / live client implementations.
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdi/constraint.hpp"
#include "cdi/docstrings.hpp"

namespace cdi {

struct FewShot {
  std::string sentence;
  std::string constraint_text;
};

// The default regime: one conjunction, one implication, one
// ignore predicate, one specified predicate.
const std::vector<FewShot>& default_few_shots();

struct ExtractionRequest {
  std::vector<std::string> doc_chunks;  // each at most max_words words
  std::vector<std::string> param_names;
  std::vector<FewShot> few_shots = default_few_shots();
};

struct ExtractionResult {
  struct Accepted {
    ConstraintPtr constraint;
    std::string source_sentence;
    std::string confidence;  // raw text, not interpreted
  };
  struct Reject {
    std::string line;
    std::string reason;
  };
  std::vector<Accepted> constraints;
  std::vector<Reject> rejects;
};

struct ClientError : std::runtime_error {
  ClientError(std::string msg, int status, double retry_after = 0.0)
      : std::runtime_error(std::move(msg)),
        status(status),
        retry_after(retry_after) {}
  int status;
  double retry_after;
  ExtractionResult partial;  // results gathered before the failure
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string send(const std::string& prompt) = 0;
  // completion-window budget; prompts are split to fit (1 token ~ 0.75 words)
  virtual size_t max_tokens() const { return 8192; }
};

// Fixed canned response, for unit tests.
class MockClient : public LlmClient {
 public:
  explicit MockClient(std::string response) : response_(std::move(response)) {}
  std::string send(const std::string&) override { return response_; }

 private:
  std::string response_;
};

// Replays recorded exchanges from a JSONL file of
// {prompt_hash, prompt, completion} records, keyed by prompt hash.
class ReplayClient : public LlmClient {
 public:
  explicit ReplayClient(const std::filesystem::path& path);
  std::string send(const std::string& prompt) override;

 private:
  std::map<std::string, std::string> completions_;
};

// Wraps another client and appends each exchange to a replay file.
class RecordingClient : public LlmClient {
 public:
  RecordingClient(LlmClient& inner, std::filesystem::path path)
      : inner_(inner), path_(std::move(path)) {}
  std::string send(const std::string& prompt) override;

 private:
  LlmClient& inner_;
  std::filesystem::path path_;
};

// Live chat-completion adapter. The credential comes from the
// CDI_LLM_API_KEY environment variable.
class HttpClient : public LlmClient {
 public:
  HttpClient(std::string base_url, std::string model)
      : base_url_(std::move(base_url)), model_(std::move(model)) {}
  std::string send(const std::string& prompt) override;

 private:
  std::string base_url_;
  std::string model_;
};

// FNV-1a 64-bit hash, 16 hex digits; the replay-file key.
std::string prompt_hash(std::string_view text);

// Paragraph-preserving split; every chunk is at most max_words words.
std::vector<std::string> chunk_document(std::string_view doc,
                                        size_t max_words = 1500);

// Deterministic three-part prompt: symbol definitions, fuzzy-word retention
// instruction, few-shot examples, then the parameter list and the chunk.
std::string build_extraction_prompt(const ExtractionRequest& req,
                                    size_t chunk_index);

// One candidate constraint per nonempty line, optionally
// `expr ;; source sentence ;; confidence`. Parse failures become rejects.
ExtractionResult parse_llm_output(std::string_view completion);

// End to end for one documented unit: chunk, prompt, send, parse, merge,
// deduplicate. Constraints naming parameters outside the unit (other than
// call_* symbols) are downgraded to rejects.
ExtractionResult extract_constraints(const DocUnit& unit, LlmClient& client);

}  // namespace cdi
