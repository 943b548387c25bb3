// Multi-parameter constraint language: AST, parser, printer, normalization,
// and the five-characteristic operator embeddings.
#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdi {

enum class Operator { Lt, Gt, Le, Ge, Eq, Ne };

// Fuzzy predicate kinds: non-existence words (ignore, no effect, unused,
// override) map to Ignored; existence words (specify, have an effect, exist,
// significant) map to Specified.
enum class PredKind { Ignored, Specified };

const char* operator_text(Operator op);
Operator complement_operator(Operator op);  // =/!=, </>=, >/<=

// Leaf value of an expression. Str keeps its surface spelling verbatim.
class Value {
 public:
  enum class Kind { Str, Num, Bool, None };

  static Value str(std::string text);
  static Value num(double v);
  static Value boolean(bool v);
  static Value none();

  Kind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  double number() const { return num_; }
  bool truth() const { return truth_; }

  // Constraint-language rendering ("x", 3, True, None). Strings are quoted.
  std::string print() const;
  // Text used for edit-distance comparison: strings unquoted, numbers in
  // shortest round-trip decimal form, None as "None".
  std::string similarity_text() const;

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }

 private:
  Kind kind_ = Kind::None;
  std::string text_;
  double num_ = 0.0;
  bool truth_ = false;
};

struct Expression {
  std::string param;
  Operator op = Operator::Eq;
  Value value;

  bool operator==(const Expression& other) const {
    return param == other.param && op == other.op && value == other.value;
  }
};

class Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

// Immutable constraint tree. Implies is surface syntax only and is removed
// by normalize().
class Constraint {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Fuzzy };

  static ConstraintPtr atom(Expression e);
  static ConstraintPtr negation(ConstraintPtr c);
  static ConstraintPtr conj(ConstraintPtr a, ConstraintPtr b);
  static ConstraintPtr disj(ConstraintPtr a, ConstraintPtr b);
  static ConstraintPtr implies(ConstraintPtr a, ConstraintPtr b);
  static ConstraintPtr fuzzy(PredKind kind, std::string param);

  Kind kind() const { return kind_; }
  const Expression& expr() const { return expr_; }
  const ConstraintPtr& child() const { return lhs_; }  // Not
  const ConstraintPtr& lhs() const { return lhs_; }
  const ConstraintPtr& rhs() const { return rhs_; }
  PredKind pred_kind() const { return pred_kind_; }
  const std::string& pred_param() const { return expr_.param; }

 private:
  Constraint() = default;
  Kind kind_ = Kind::Atom;
  Expression expr_;
  ConstraintPtr lhs_;
  ConstraintPtr rhs_;
  PredKind pred_kind_ = PredKind::Ignored;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, size_t offset)
      : std::runtime_error(std::move(msg)), offset(offset) {}
  size_t offset;  // byte offset into the source text
};

struct UnknownOperatorError : ParseError {
  using ParseError::ParseError;
};

// Grammar, loosest to tightest: `->` (right assoc), `v`, `^`, `!`, primary.
// `==` is accepted as an alias for `=`; canonical printing uses `=`.
ConstraintPtr parse_constraint(std::string_view text);

// Canonical fully-parenthesized form; parse(print(c)) == c structurally.
std::string print_constraint(const ConstraintPtr& c);

// Negation-normal form without Implies. Negation over an atom flips its
// operator; negation over a fuzzy predicate flips its kind.
ConstraintPtr normalize(const ConstraintPtr& c);

bool structurally_equal(const ConstraintPtr& a, const ConstraintPtr& b);

// Crisp evaluation. atom_eval decides each expression leaf; fuzzy leaves
// are rejected with std::invalid_argument.
bool eval_constraint(const ConstraintPtr& c,
                     const std::function<bool(const Expression&)>& atom_eval);

// Parameter names mentioned anywhere in the tree, in first-occurrence order.
std::vector<std::string> constraint_params(const ConstraintPtr& c);

std::vector<const Expression*> atom_leaves(const ConstraintPtr& c);
bool has_fuzzy_pred(const ConstraintPtr& c);

// Rebuild c, substituting each atom leaf via the map function.
ConstraintPtr map_atoms(
    const ConstraintPtr& c,
    const std::function<Expression(const Expression&)>& fn);

// A constraint that is satisfied by every assignment, used where a branch
// condition is unconditional.
ConstraintPtr always_true();
bool is_always_true(const ConstraintPtr& c);

// Operator embedding over (Comparison, Equation, Greater, Less, Negativity).
struct OperatorEmbedding {
  int c = 0, e = 0, g = 0, l = 0, n = 0;
  bool operator==(const OperatorEmbedding&) const = default;
};

OperatorEmbedding operator_embedding(Operator op);

}  // namespace cdi
