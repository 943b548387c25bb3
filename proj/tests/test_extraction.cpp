#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cdi/extraction.hpp"

using namespace cdi;

namespace {

size_t word_count(const std::string& s) {
  std::istringstream is(s);
  std::string w;
  size_t n = 0;
  while (is >> w) ++n;
  return n;
}

DocUnit sample_unit() {
  DocUnit unit;
  unit.owner_name = "fit";
  unit.params = {
      {"strategy", "str", std::nullopt,
       "Strategy to use. sample_weight is rejected when strategy is "
       "\"uniform\".",
       DocSection::Parameters},
      {"sample_weight", "array-like", std::nullopt, "Sample weights.",
       DocSection::Parameters},
  };
  return unit;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("prompt hash is the 64-bit FNV-1a in 16 hex digits") {
  // reference values computed by hand from the FNV-1a definition
  CHECK(prompt_hash("") == "cbf29ce484222325");
  CHECK(prompt_hash("a") == "af63dc4c8601ec8c");
  CHECK(prompt_hash("foobar") == "85944171f73967e8");
  CHECK(prompt_hash("x") != prompt_hash("y"));
}

TEST_CASE("chunking keeps paragraphs together when they fit") {
  std::string doc = "one two three\n\nfour five\n\nsix";
  auto chunks = chunk_document(doc, 1500);
  REQUIRE(chunks.size() == 1);
  CHECK(word_count(chunks[0]) == 6);
}

TEST_CASE("chunking splits on paragraph boundaries at the word limit") {
  std::string doc = "a b c d e\n\nf g h i j\n\nk l m";
  auto chunks = chunk_document(doc, 10);
  REQUIRE(chunks.size() == 2);
  CHECK(word_count(chunks[0]) == 10);
  CHECK(word_count(chunks[1]) == 3);
  for (const auto& c : chunks) CHECK(word_count(c) <= 10);
}

TEST_CASE("an oversize paragraph is split by words") {
  std::ostringstream os;
  for (int i = 0; i < 35; ++i) os << "word" << i << ' ';
  auto chunks = chunk_document(os.str(), 10);
  CHECK(chunks.size() == 4);
  for (const auto& c : chunks) CHECK(word_count(c) <= 10);
}

TEST_CASE("the prompt carries symbols, retention words, examples, and params") {
  ExtractionRequest req;
  req.doc_chunks = {"sample_weight is rejected when strategy is uniform."};
  req.param_names = {"strategy", "sample_weight"};
  std::string prompt = build_extraction_prompt(req, 0);

  // part one: symbol definitions
  for (const char* sym : {"->", "^", "!", "ignore(", "specified("})
    CHECK(prompt.find(sym) != std::string::npos);
  // part two: words that must be kept verbatim
  CHECK(prompt.find("no effect") != std::string::npos);
  CHECK(prompt.find("specify") != std::string::npos);
  // part three: the default few-shot examples
  for (const auto& shot : default_few_shots()) {
    CHECK(prompt.find(shot.sentence) != std::string::npos);
    CHECK(prompt.find(shot.constraint_text) != std::string::npos);
  }
  CHECK(prompt.find("strategy") != std::string::npos);
  CHECK(prompt.find(req.doc_chunks[0]) != std::string::npos);

  // deterministic
  CHECK(prompt == build_extraction_prompt(req, 0));
}

TEST_CASE("the default few shots cover the four constraint shapes") {
  const auto& shots = default_few_shots();
  REQUIRE(shots.size() == 4);
  bool conj = false, impl = false, ign = false, spec = false;
  for (const auto& s : shots) {
    auto c = parse_constraint(s.constraint_text);  // all must parse
    (void)c;
    conj = conj || s.constraint_text.find('^') != std::string::npos;
    impl = impl || s.constraint_text.find("->") != std::string::npos;
    ign = ign || s.constraint_text.find("ignore(") != std::string::npos;
    spec = spec || s.constraint_text.find("specified(") != std::string::npos;
  }
  CHECK(conj);
  CHECK(impl);
  CHECK(ign);
  CHECK(spec);
}

TEST_CASE("completion lines parse into constraints with optional fields") {
  ExtractionResult r = parse_llm_output(
      "Constraint: (sample_weight != None) -> (strategy != \"uniform\") ;; "
      "sample_weight is rejected when strategy is uniform. ;; high\n"
      "(alpha > 0)\n"
      "\n"
      "not a constraint at all\n");
  REQUIRE(r.constraints.size() == 2);
  CHECK(r.constraints[0].source_sentence.find("rejected") !=
        std::string::npos);
  CHECK(r.constraints[0].confidence == "high");
  CHECK(r.constraints[1].source_sentence.empty());
  REQUIRE(r.rejects.size() == 1);
  CHECK(r.rejects[0].line == "not a constraint at all");
  CHECK_FALSE(r.rejects[0].reason.empty());
}

TEST_CASE("extraction end to end with a mock client") {
  MockClient mock(
      "(sample_weight != None) -> (strategy != \"uniform\")\n"
      "ignore(sample_weight)\n");
  ExtractionResult r = extract_constraints(sample_unit(), mock);
  REQUIRE(r.constraints.size() == 2);
  CHECK(print_constraint(r.constraints[0].constraint) ==
        "((sample_weight != None) -> (strategy != \"uniform\"))");
}

TEST_CASE("constraints over unknown parameters are downgraded to rejects") {
  MockClient mock(
      "(nonesuch = 1)\n"
      "(call_check_array != None)\n"  // call_ symbols are allowed
      "(strategy = \"mean\")\n");
  ExtractionResult r = extract_constraints(sample_unit(), mock);
  CHECK(r.constraints.size() == 2);
  REQUIRE(r.rejects.size() == 1);
  CHECK(r.rejects[0].line.find("nonesuch") != std::string::npos);
}

TEST_CASE("duplicate constraints are merged") {
  MockClient mock(
      "(strategy = \"mean\")\n"
      "(strategy = \"mean\") ;; some sentence ;; low\n");
  ExtractionResult r = extract_constraints(sample_unit(), mock);
  CHECK(r.constraints.size() == 1);
}

TEST_CASE("recording then replaying reproduces the completion") {
  TempFile tmp("cdi_test_replay.jsonl");
  std::string completion = "(strategy = \"mean\")\n";
  {
    MockClient mock(completion);
    RecordingClient rec(mock, tmp.path);
    ExtractionResult r = extract_constraints(sample_unit(), rec);
    REQUIRE(r.constraints.size() == 1);
  }
  ReplayClient replay(tmp.path);
  ExtractionResult r = extract_constraints(sample_unit(), replay);
  REQUIRE(r.constraints.size() == 1);
  CHECK(print_constraint(r.constraints[0].constraint) ==
        "(strategy = \"mean\")");
}

TEST_CASE("replay misses report a 404-style client error") {
  TempFile tmp("cdi_test_replay_empty.jsonl");
  std::ofstream(tmp.path) << "";  // valid but empty replay file
  ReplayClient replay(tmp.path);
  try {
    replay.send("a prompt nobody recorded");
    FAIL("expected throw");
  } catch (const ClientError& e) {
    CHECK(e.status == 404);
  }
}

TEST_CASE("client failure mid-extraction carries the partial result") {
  // client that answers the first chunk and fails on the second
  class FlakyClient : public LlmClient {
   public:
    std::string send(const std::string&) override {
      if (calls_++ == 0) return "(strategy = \"mean\")\n";
      throw ClientError("simulated overload", 429, 1.5);
    }
    size_t max_tokens() const override { return 8; }  // forces two chunks

   private:
    int calls_ = 0;
  };

  DocUnit unit = sample_unit();
  // long enough description to need more than one 6-word chunk
  unit.params[1].description =
      "Sample weights applied to individual samples.\n\n"
      "When strategy is uniform the sample_weight argument must not be "
      "given because every sample counts the same.";
  FlakyClient flaky;
  try {
    extract_constraints(unit, flaky);
    FAIL("expected throw");
  } catch (const ClientError& e) {
    CHECK(e.status == 429);
    CHECK(e.retry_after == doctest::Approx(1.5));
    CHECK(e.partial.constraints.size() == 1);
  }
}
