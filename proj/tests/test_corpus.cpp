#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "cdi/corpus.hpp"

using namespace cdi;

namespace {

const std::filesystem::path kFixtures = CDI_FIXTURES_DIR;

CorpusRecord sample_record() {
  CorpusRecord r;
  r.repo = "fixture/sample";
  r.sha = "abc1234";
  r.file_path = "pkg/mod.py";
  r.owner = "configure";
  r.doc_text = "If gram_matrix is given, solver_name must be \"lars\".";
  r.constraint_text = "(gram_matrix != None) -> (solver_name = \"lars\")";
  r.code_source =
      "def configure(solver_name, gram_matrix=None):\n"
      "    if gram_matrix is not None and solver_name != \"lars\":\n"
      "        raise ValueError(\"bad solver\")\n";
  r.label = CorpusRecord::Label::Consistent;
  return r;
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

TEST_CASE("round trip: write then read is identity") {
  TempFile tmp("cdi_corpus_roundtrip.jsonl");
  std::vector<CorpusRecord> records{sample_record()};
  records[0].mismatch_note = "a note";
  records.push_back(sample_record());
  records[1].label = CorpusRecord::Label::Unknown;
  records[1].mutation_pattern = "value_change";
  records[1].mutation_seed = 42;

  write_records(records, tmp.path);
  std::vector<CorpusRecord> back = read_records(tmp.path);
  CHECK(back == records);
}

TEST_CASE("file bytes are stable across rewrites") {
  TempFile a("cdi_corpus_a.jsonl"), b("cdi_corpus_b.jsonl");
  std::vector<CorpusRecord> records{sample_record()};
  write_records(records, a.path);
  write_records(read_records(a.path), b.path);
  std::ifstream fa(a.path), fb(b.path);
  std::string ca((std::istreambuf_iterator<char>(fa)), {});
  std::string cb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(ca == cb);
  CHECK(!ca.empty());
}

TEST_CASE("bad lines raise CorpusParseError with the line number") {
  TempFile tmp("cdi_corpus_bad.jsonl");
  std::ofstream(tmp.path) << R"({"repo": "x"})"
                          << "\n"
                          << "this is not json\n";
  try {
    read_records(tmp.path);
    FAIL("expected throw");
  } catch (const CorpusParseError& e) {
    CHECK(e.line >= 1);
  }
}

TEST_CASE("the shipped fixtures read back with the expected shape") {
  auto consistent = read_records(kFixtures / "corpus" / "consistent20.jsonl");
  CHECK(consistent.size() == 20);
  for (const auto& r : consistent) {
    CHECK(r.label == CorpusRecord::Label::Consistent);
    CHECK_NOTHROW(parse_constraint(r.constraint_text));
  }
  auto golden = read_records(kFixtures / "corpus" / "golden.jsonl");
  CHECK(golden.size() == 3);
  for (const auto& r : golden)
    CHECK(r.label == CorpusRecord::Label::Inconsistent);
}

TEST_CASE("pattern names round trip") {
  for (size_t i = 0; i < kMutationPatternCount; ++i) {
    auto p = static_cast<MutationPattern>(i);
    CHECK(pattern_from_text(pattern_text(p)) == p);
  }
  CHECK_THROWS_AS(pattern_from_text("nonesuch"), std::invalid_argument);
}

TEST_CASE("mutation is deterministic and stamps pattern and seed") {
  CorpusRecord r = sample_record();
  CorpusRecord m1 = mutate(r, MutationPattern::ValueChange, 7);
  CorpusRecord m2 = mutate(r, MutationPattern::ValueChange, 7);
  CHECK(m1 == m2);
  REQUIRE(m1.mutation_pattern.has_value());
  CHECK(*m1.mutation_pattern == pattern_text(MutationPattern::ValueChange));
  REQUIRE(m1.mutation_seed.has_value());
  CHECK(*m1.mutation_seed == 7);

  CorpusRecord m3 = mutate(r, MutationPattern::ValueChange, 8);
  // a different seed is allowed to pick a different change; at minimum the
  // stamp differs
  CHECK(*m3.mutation_seed == 8);
}

TEST_CASE("every pattern yields a parseable mutant or declares itself "
          "inapplicable") {
  CorpusRecord r = sample_record();
  for (size_t i = 0; i < kMutationPatternCount; ++i) {
    auto p = static_cast<MutationPattern>(i);
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      CorpusRecord m;
      try {
        m = mutate(r, p, seed);
      } catch (const InapplicablePattern&) {
        continue;
      }
      if (p == MutationPattern::MissingDocumentation) {
        CHECK(m.constraint_text.empty());
        continue;
      }
      CHECK_NOTHROW(parse_constraint(m.constraint_text));
    }
  }
}

TEST_CASE("param name change renames exactly one leaf name") {
  CorpusRecord r = sample_record();
  CorpusRecord m = mutate(r, MutationPattern::ParamNameChange, 3);
  CHECK(m.constraint_text != r.constraint_text);
  ConstraintPtr co = parse_constraint(r.constraint_text);
  ConstraintPtr cm = parse_constraint(m.constraint_text);
  auto orig = atom_leaves(co);
  auto got = atom_leaves(cm);
  REQUIRE(orig.size() == got.size());
  size_t changed = 0;
  for (size_t i = 0; i < orig.size(); ++i) {
    if (orig[i]->param != got[i]->param) ++changed;
    // operators and values stay untouched
    CHECK(orig[i]->op == got[i]->op);
    CHECK(orig[i]->value == got[i]->value);
  }
  CHECK(changed == 1);
}

TEST_CASE("value change moves a literal") {
  CorpusRecord r = sample_record();
  r.constraint_text = "(max_depth >= 3)";
  CorpusRecord m = mutate(r, MutationPattern::ValueChange, 5);
  auto c = parse_constraint(m.constraint_text);
  CHECK(c->expr().value.kind() == Value::Kind::Num);
  CHECK(c->expr().value.number() != 3.0);
}

TEST_CASE("logic change flips a connective or complements an operator") {
  CorpusRecord r = sample_record();
  r.constraint_text = "(a >= 1) ^ (b >= 2)";
  bool saw_connective = false, saw_operator = false;
  for (uint64_t seed = 0; seed < 12; ++seed) {
    CorpusRecord m = mutate(r, MutationPattern::LogicChange, seed);
    if (m.constraint_text.find(" v ") != std::string::npos)
      saw_connective = true;
    if (m.constraint_text.find('<') != std::string::npos) saw_operator = true;
    CHECK(m.constraint_text != r.constraint_text);
  }
  CHECK(saw_connective);
  CHECK(saw_operator);
}

TEST_CASE("remove parameter needs at least two leaves") {
  CorpusRecord r = sample_record();
  CorpusRecord m = mutate(r, MutationPattern::RemoveParameter, 1);
  auto got = atom_leaves(parse_constraint(m.constraint_text)).size();
  auto orig = atom_leaves(parse_constraint(r.constraint_text)).size();
  CHECK(got == orig - 1);

  r.constraint_text = "(x = 1)";
  CHECK_THROWS_AS(mutate(r, MutationPattern::RemoveParameter, 1),
                  InapplicablePattern);
}

TEST_CASE("add constraint conjoins a fresh atom") {
  CorpusRecord r = sample_record();
  CorpusRecord m = mutate(r, MutationPattern::AddConstraint, 9);
  auto got = atom_leaves(parse_constraint(m.constraint_text)).size();
  auto orig = atom_leaves(parse_constraint(r.constraint_text)).size();
  CHECK(got == orig + 1);
}

TEST_CASE("remove constraint needs a conjunction") {
  CorpusRecord r = sample_record();
  r.constraint_text = "(a >= 1) ^ (b >= 2)";
  CorpusRecord m = mutate(r, MutationPattern::RemoveConstraint, 2);
  auto c = parse_constraint(m.constraint_text);
  CHECK(c->kind() == Constraint::Kind::Atom);

  r.constraint_text = "(a >= 1)";
  CHECK_THROWS_AS(mutate(r, MutationPattern::RemoveConstraint, 2),
                  InapplicablePattern);
}

TEST_CASE("missing documentation deletes the constraint and resets the "
          "label") {
  CorpusRecord r = sample_record();
  CorpusRecord m = mutate(r, MutationPattern::MissingDocumentation, 1);
  CHECK(m.constraint_text.empty());
  CHECK(m.label == CorpusRecord::Label::Unknown);
  CHECK(m.doc_text == r.doc_text);
}

TEST_CASE("modify description perturbs the doc text only") {
  CorpusRecord r = sample_record();
  CorpusRecord m = mutate(r, MutationPattern::ModifyDescription, 4);
  CHECK(m.doc_text != r.doc_text);
  CHECK(m.doc_text.find("possibly") != std::string::npos);
  CHECK(m.constraint_text == r.constraint_text);
}

TEST_CASE("validate_mutant classifies the four relations") {
  auto C = [](const char* s) { return parse_constraint(s); };
  CHECK(validate_mutant(C("x >= 1"), C("! (x < 1)")) ==
        MutantRelation::Equivalent);
  CHECK(validate_mutant(C("(x >= 1) ^ (y >= 2)"), C("x >= 1")) ==
        MutantRelation::Weaker);
  CHECK(validate_mutant(C("x >= 1"), C("(x >= 1) ^ (y >= 2)")) ==
        MutantRelation::Stronger);
  CHECK(validate_mutant(C("x >= 1"), C("x < 1")) == MutantRelation::Violates);
  // And -> Or weakens
  CHECK(validate_mutant(C("(a = 1) ^ (b = 2)"), C("(a = 1) v (b = 2)")) ==
        MutantRelation::Weaker);
}

TEST_CASE("relation names are stable") {
  CHECK(std::string(relation_text(MutantRelation::Equivalent)) ==
        "Equivalent");
  CHECK(std::string(relation_text(MutantRelation::Violates)) == "Violates");
}
