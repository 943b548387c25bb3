#include "cdi/corpus.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cdi/sat.hpp"

namespace cdi {

const char* pattern_text(MutationPattern p) {
  switch (p) {
    case MutationPattern::ParamNameChange: return "ParamNameChange";
    case MutationPattern::ValueChange: return "ValueChange";
    case MutationPattern::LogicChange: return "LogicChange";
    case MutationPattern::RemoveParameter: return "RemoveParameter";
    case MutationPattern::AddConstraint: return "AddConstraint";
    case MutationPattern::RemoveConstraint: return "RemoveConstraint";
    case MutationPattern::MissingDocumentation: return "MissingDocumentation";
    case MutationPattern::ModifyDescription: return "ModifyDescription";
  }
  return "ParamNameChange";
}

MutationPattern pattern_from_text(const std::string& text) {
  for (size_t i = 0; i < kMutationPatternCount; ++i) {
    auto p = static_cast<MutationPattern>(i);
    if (text == pattern_text(p)) return p;
  }
  throw std::invalid_argument("unknown mutation pattern '" + text + "'");
}

const char* relation_text(MutantRelation r) {
  switch (r) {
    case MutantRelation::Equivalent: return "Equivalent";
    case MutantRelation::Weaker: return "Weaker";
    case MutantRelation::Stronger: return "Stronger";
    case MutantRelation::Violates: return "Violates";
  }
  return "Violates";
}

namespace {

const char* label_text(CorpusRecord::Label l) {
  switch (l) {
    case CorpusRecord::Label::Consistent: return "Consistent";
    case CorpusRecord::Label::Inconsistent: return "Inconsistent";
    case CorpusRecord::Label::Unknown: return "Unknown";
  }
  return "Unknown";
}

CorpusRecord::Label label_from_text(const std::string& s, int line) {
  if (s == "Consistent") return CorpusRecord::Label::Consistent;
  if (s == "Inconsistent") return CorpusRecord::Label::Inconsistent;
  if (s == "Unknown") return CorpusRecord::Label::Unknown;
  throw CorpusParseError(line, "unknown label '" + s + "'");
}

}  // namespace

std::vector<CorpusRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw CorpusParseError(0, "cannot open " + path.string());
  std::vector<CorpusRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw CorpusParseError(line_no, "invalid JSON");
    CorpusRecord r;
    try {
      r.repo = j.at("repo").get<std::string>();
      r.sha = j.at("sha").get<std::string>();
      r.file_path = j.at("file_path").get<std::string>();
      r.owner = j.at("owner").get<std::string>();
      r.doc_text = j.at("doc_text").get<std::string>();
      r.constraint_text = j.at("constraint_text").get<std::string>();
      r.code_source = j.at("code_source").get<std::string>();
      r.label = label_from_text(j.at("label").get<std::string>(), line_no);
      if (j.contains("mismatch_note"))
        r.mismatch_note = j["mismatch_note"].get<std::string>();
      if (j.contains("mutation_pattern"))
        r.mutation_pattern = j["mutation_pattern"].get<std::string>();
      if (j.contains("mutation_seed"))
        r.mutation_seed = j["mutation_seed"].get<uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw CorpusParseError(line_no, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_records(const std::vector<CorpusRecord>& records,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CorpusParseError(0, "cannot write " + path.string());
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["repo"] = r.repo;
    j["sha"] = r.sha;
    j["file_path"] = r.file_path;
    j["owner"] = r.owner;
    j["doc_text"] = r.doc_text;
    j["constraint_text"] = r.constraint_text;
    j["code_source"] = r.code_source;
    j["label"] = label_text(r.label);
    if (r.mismatch_note) j["mismatch_note"] = *r.mismatch_note;
    if (r.mutation_pattern) j["mutation_pattern"] = *r.mutation_pattern;
    if (r.mutation_seed) j["mutation_seed"] = *r.mutation_seed;
    out << j.dump() << "\n";
  }
}

namespace {

// Leaf-indexed rewriting over atoms and fuzzy predicates.
using LeafFn =
    std::function<ConstraintPtr(const ConstraintPtr& leaf, size_t index)>;

ConstraintPtr map_leaves(const ConstraintPtr& c, const LeafFn& fn,
                         size_t& counter) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return fn(c, counter++);
    case Constraint::Kind::Not:
      return Constraint::negation(map_leaves(c->child(), fn, counter));
    case Constraint::Kind::And:
      return Constraint::conj(map_leaves(c->lhs(), fn, counter),
                              map_leaves(c->rhs(), fn, counter));
    case Constraint::Kind::Or:
      return Constraint::disj(map_leaves(c->lhs(), fn, counter),
                              map_leaves(c->rhs(), fn, counter));
    case Constraint::Kind::Implies:
      return Constraint::implies(map_leaves(c->lhs(), fn, counter),
                                 map_leaves(c->rhs(), fn, counter));
  }
  return c;
}

size_t count_leaves(const ConstraintPtr& c) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return 1;
    case Constraint::Kind::Not:
      return count_leaves(c->child());
    default:
      return count_leaves(c->lhs()) + count_leaves(c->rhs());
  }
}

size_t count_connectives(const ConstraintPtr& c, bool and_only) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return 0;
    case Constraint::Kind::Not:
      return count_connectives(c->child(), and_only);
    case Constraint::Kind::And:
      return 1 + count_connectives(c->lhs(), and_only) +
             count_connectives(c->rhs(), and_only);
    case Constraint::Kind::Or:
      return (and_only ? 0 : 1) + count_connectives(c->lhs(), and_only) +
             count_connectives(c->rhs(), and_only);
    case Constraint::Kind::Implies:
      return count_connectives(c->lhs(), and_only) +
             count_connectives(c->rhs(), and_only);
  }
  return 0;
}

ConstraintPtr swap_connective(const ConstraintPtr& c, size_t target,
                              size_t& counter) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return c;
    case Constraint::Kind::Not:
      return Constraint::negation(swap_connective(c->child(), target, counter));
    case Constraint::Kind::And: {
      bool here = counter++ == target;
      ConstraintPtr l = swap_connective(c->lhs(), target, counter);
      ConstraintPtr r = swap_connective(c->rhs(), target, counter);
      return here ? Constraint::disj(l, r) : Constraint::conj(l, r);
    }
    case Constraint::Kind::Or: {
      bool here = counter++ == target;
      ConstraintPtr l = swap_connective(c->lhs(), target, counter);
      ConstraintPtr r = swap_connective(c->rhs(), target, counter);
      return here ? Constraint::conj(l, r) : Constraint::disj(l, r);
    }
    case Constraint::Kind::Implies:
      return Constraint::implies(swap_connective(c->lhs(), target, counter),
                                 swap_connective(c->rhs(), target, counter));
  }
  return c;
}

// Drop one And node, keeping the side picked by keep_rhs.
ConstraintPtr drop_conjunct(const ConstraintPtr& c, size_t target,
                            bool keep_rhs, size_t& counter) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return c;
    case Constraint::Kind::Not:
      return Constraint::negation(
          drop_conjunct(c->child(), target, keep_rhs, counter));
    case Constraint::Kind::And: {
      bool here = counter++ == target;
      if (here) return keep_rhs ? c->rhs() : c->lhs();
      return Constraint::conj(drop_conjunct(c->lhs(), target, keep_rhs, counter),
                              drop_conjunct(c->rhs(), target, keep_rhs, counter));
    }
    case Constraint::Kind::Or:
      return Constraint::disj(drop_conjunct(c->lhs(), target, keep_rhs, counter),
                              drop_conjunct(c->rhs(), target, keep_rhs, counter));
    case Constraint::Kind::Implies:
      return Constraint::implies(
          drop_conjunct(c->lhs(), target, keep_rhs, counter),
          drop_conjunct(c->rhs(), target, keep_rhs, counter));
  }
  return c;
}

// Delete one leaf and re-balance: a connective missing a side collapses to
// the other; a tree with nothing left is signalled by nullptr.
ConstraintPtr remove_leaf(const ConstraintPtr& c, size_t target,
                          size_t& counter) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
    case Constraint::Kind::Fuzzy:
      return counter++ == target ? nullptr : c;
    case Constraint::Kind::Not: {
      ConstraintPtr inner = remove_leaf(c->child(), target, counter);
      return inner ? Constraint::negation(inner) : nullptr;
    }
    default: {
      ConstraintPtr l = remove_leaf(c->lhs(), target, counter);
      ConstraintPtr r = remove_leaf(c->rhs(), target, counter);
      if (!l) return r;
      if (!r) return l;
      switch (c->kind()) {
        case Constraint::Kind::And: return Constraint::conj(l, r);
        case Constraint::Kind::Or: return Constraint::disj(l, r);
        default: return Constraint::implies(l, r);
      }
    }
  }
}

std::string leaf_param(const ConstraintPtr& leaf) {
  return leaf->kind() == Constraint::Kind::Fuzzy ? leaf->pred_param()
                                                 : leaf->expr().param;
}

ConstraintPtr rename_leaf(const ConstraintPtr& leaf, const std::string& name) {
  if (leaf->kind() == Constraint::Kind::Fuzzy)
    return Constraint::fuzzy(leaf->pred_kind(), name);
  Expression e = leaf->expr();
  e.param = name;
  return Constraint::atom(std::move(e));
}

}  // namespace

CorpusRecord mutate(const CorpusRecord& record, MutationPattern pattern,
                    uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };

  CorpusRecord out = record;
  out.mutation_pattern = pattern_text(pattern);
  out.mutation_seed = seed;

  if (pattern == MutationPattern::MissingDocumentation) {
    out.constraint_text.clear();
    out.label = CorpusRecord::Label::Unknown;
    return out;
  }
  if (pattern == MutationPattern::ModifyDescription) {
    std::vector<std::string> words;
    std::istringstream is(record.doc_text);
    std::string w;
    while (is >> w) words.push_back(w);
    size_t at = words.empty() ? 0 : pick(words.size() + 1);
    words.insert(words.begin() + static_cast<long>(at), "possibly");
    std::string rebuilt;
    for (const auto& word : words) {
      if (!rebuilt.empty()) rebuilt += " ";
      rebuilt += word;
    }
    out.doc_text = rebuilt;
    return out;
  }

  ConstraintPtr c;
  try {
    c = parse_constraint(record.constraint_text);
  } catch (const ParseError& e) {
    throw InapplicablePattern(std::string("constraint does not parse: ") +
                              e.what());
  }
  size_t leaves = count_leaves(c);
  ConstraintPtr mutated;

  switch (pattern) {
    case MutationPattern::ParamNameChange: {
      size_t target = pick(leaves);
      std::vector<std::string> params = constraint_params(c);
      size_t counter = 0;
      mutated = map_leaves(
          c,
          [&](const ConstraintPtr& leaf, size_t index) {
            if (index != target) return leaf;
            std::string cur = leaf_param(leaf);
            std::vector<std::string> others;
            for (const auto& p : params)
              if (p != cur) others.push_back(p);
            std::string next;
            if (!others.empty()) {
              next = others[pick(others.size())];
            } else if (cur.size() > 1 && pick(2) == 0) {
              next = cur.substr(0, cur.size() - 1);  // one-edit variant
            } else {
              next = cur + "x";
            }
            return rename_leaf(leaf, next);
          },
          counter);
      break;
    }
    case MutationPattern::ValueChange: {
      std::vector<size_t> atom_indices;
      {
        size_t counter = 0;
        map_leaves(
            c,
            [&](const ConstraintPtr& leaf, size_t index) {
              if (leaf->kind() == Constraint::Kind::Atom)
                atom_indices.push_back(index);
              return leaf;
            },
            counter);
      }
      if (atom_indices.empty())
        throw InapplicablePattern("no value-bearing leaf to change");
      size_t target = atom_indices[pick(atom_indices.size())];
      size_t counter = 0;
      mutated = map_leaves(
          c,
          [&](const ConstraintPtr& leaf, size_t index) {
            if (index != target || leaf->kind() != Constraint::Kind::Atom)
              return leaf;
            Expression e = leaf->expr();
            switch (e.value.kind()) {
              case Value::Kind::Num:
                e.value = Value::num(e.value.number() +
                                     (pick(2) == 0 ? 1.0 : -1.0));
                break;
              case Value::Kind::Str:
                e.value = Value::str(e.value.text() + "_alt");
                break;
              case Value::Kind::Bool:
                e.value = Value::boolean(!e.value.truth());
                break;
              case Value::Kind::None:
                e.value = Value::boolean(false);
                break;
            }
            return Constraint::atom(std::move(e));
          },
          counter);
      break;
    }
    case MutationPattern::LogicChange: {
      size_t connectives = count_connectives(c, false);
      bool swap_conn = connectives > 0 && pick(2) == 0;
      std::vector<size_t> atom_indices;
      {
        size_t counter = 0;
        map_leaves(
            c,
            [&](const ConstraintPtr& leaf, size_t index) {
              if (leaf->kind() == Constraint::Kind::Atom)
                atom_indices.push_back(index);
              return leaf;
            },
            counter);
      }
      if (!swap_conn && atom_indices.empty()) {
        if (connectives == 0)
          throw InapplicablePattern("nothing to change logically");
        swap_conn = true;
      }
      if (swap_conn) {
        size_t target = pick(connectives);
        size_t counter = 0;
        mutated = swap_connective(c, target, counter);
      } else {
        size_t target = atom_indices[pick(atom_indices.size())];
        size_t counter = 0;
        mutated = map_leaves(
            c,
            [&](const ConstraintPtr& leaf, size_t index) {
              if (index != target || leaf->kind() != Constraint::Kind::Atom)
                return leaf;
              Expression e = leaf->expr();
              e.op = complement_operator(e.op);
              return Constraint::atom(std::move(e));
            },
            counter);
      }
      break;
    }
    case MutationPattern::RemoveParameter: {
      if (leaves < 2)
        throw InapplicablePattern("single leaf, nothing left after removal");
      size_t target = pick(leaves);
      size_t counter = 0;
      mutated = remove_leaf(c, target, counter);
      if (!mutated)
        throw InapplicablePattern("removal would empty the constraint");
      break;
    }
    case MutationPattern::AddConstraint: {
      std::vector<std::string> params = constraint_params(c);
      if (params.empty())
        throw InapplicablePattern("no in-scope parameter to constrain");
      Expression e;
      e.param = params[pick(params.size())];
      e.op = Operator::Ne;
      e.value = Value::none();
      mutated = Constraint::conj(c, Constraint::atom(std::move(e)));
      break;
    }
    case MutationPattern::RemoveConstraint: {
      size_t ands = count_connectives(c, true);
      if (ands == 0)
        throw InapplicablePattern("no conjunct to drop");
      size_t target = pick(ands);
      bool keep_rhs = pick(2) == 1;
      size_t counter = 0;
      mutated = drop_conjunct(c, target, keep_rhs, counter);
      break;
    }
    default:
      throw InapplicablePattern("unhandled pattern");
  }

  out.constraint_text = print_constraint(mutated);
  return out;
}

MutantRelation validate_mutant(const ConstraintPtr& original,
                               const ConstraintPtr& mutant) {
  ConstraintPtr o = normalize(original);
  ConstraintPtr m = normalize(mutant);
  bool forward =
      !check_sat_conjunction({o, normalize(Constraint::negation(mutant))}).sat;
  bool backward =
      !check_sat_conjunction({m, normalize(Constraint::negation(original))})
           .sat;
  if (forward && backward) return MutantRelation::Equivalent;
  if (forward) return MutantRelation::Weaker;
  if (backward) return MutantRelation::Stronger;
  return MutantRelation::Violates;
}

}  // namespace cdi
