#include "cdi/constraint.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

namespace cdi {

const char* operator_text(Operator op) {
  switch (op) {
    case Operator::Lt: return "<";
    case Operator::Gt: return ">";
    case Operator::Le: return "<=";
    case Operator::Ge: return ">=";
    case Operator::Eq: return "=";
    case Operator::Ne: return "!=";
  }
  return "?";
}

Operator complement_operator(Operator op) {
  switch (op) {
    case Operator::Lt: return Operator::Ge;
    case Operator::Gt: return Operator::Le;
    case Operator::Le: return Operator::Gt;
    case Operator::Ge: return Operator::Lt;
    case Operator::Eq: return Operator::Ne;
    case Operator::Ne: return Operator::Eq;
  }
  return op;
}

Value Value::str(std::string text) {
  Value v;
  v.kind_ = Kind::Str;
  v.text_ = std::move(text);
  return v;
}

Value Value::num(double d) {
  Value v;
  v.kind_ = Kind::Num;
  v.num_ = d;
  return v;
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.truth_ = b;
  return v;
}

Value Value::none() { return Value{}; }

namespace {

std::string shortest_decimal(double d) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  (void)ec;
  return std::string(buf.data(), end);
}

}  // namespace

std::string Value::print() const {
  switch (kind_) {
    case Kind::Str: return "\"" + text_ + "\"";
    case Kind::Num: return shortest_decimal(num_);
    case Kind::Bool: return truth_ ? "True" : "False";
    case Kind::None: return "None";
  }
  return "None";
}

std::string Value::similarity_text() const {
  return kind_ == Kind::Str ? text_ : print();
}

bool Value::operator==(const Value& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Str: return text_ == other.text_;
    case Kind::Num: return num_ == other.num_;
    case Kind::Bool: return truth_ == other.truth_;
    case Kind::None: return true;
  }
  return false;
}

ConstraintPtr Constraint::atom(Expression e) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::Atom;
  c->expr_ = std::move(e);
  return c;
}

ConstraintPtr Constraint::negation(ConstraintPtr inner) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::Not;
  c->lhs_ = std::move(inner);
  return c;
}

ConstraintPtr Constraint::conj(ConstraintPtr a, ConstraintPtr b) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::And;
  c->lhs_ = std::move(a);
  c->rhs_ = std::move(b);
  return c;
}

ConstraintPtr Constraint::disj(ConstraintPtr a, ConstraintPtr b) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::Or;
  c->lhs_ = std::move(a);
  c->rhs_ = std::move(b);
  return c;
}

ConstraintPtr Constraint::implies(ConstraintPtr a, ConstraintPtr b) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::Implies;
  c->lhs_ = std::move(a);
  c->rhs_ = std::move(b);
  return c;
}

ConstraintPtr Constraint::fuzzy(PredKind kind, std::string param) {
  auto c = std::shared_ptr<Constraint>(new Constraint());
  c->kind_ = Kind::Fuzzy;
  c->pred_kind_ = kind;
  c->expr_.param = std::move(param);
  return c;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  End, LParen, RParen, Arrow, Caret, Bang, Op, Ident, Str, Num, KwTrue,
  KwFalse, KwNone
};

struct Token {
  Tok kind = Tok::End;
  size_t offset = 0;
  std::string text;   // ident / string contents
  double num = 0.0;
  Operator op = Operator::Eq;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    switch (c) {
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          tok_.kind = Tok::Arrow;
          pos_ += 2;
          return;
        }
        if (pos_ + 1 < src_.size() &&
            (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
             src_[pos_ + 1] == '.')) {
          lex_number();
          return;
        }
        throw ParseError("unexpected '-'", pos_);
      case '!':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          tok_.kind = Tok::Op;
          tok_.op = Operator::Ne;
          pos_ += 2;
          return;
        }
        tok_.kind = Tok::Bang;
        ++pos_;
        return;
      case '<':
      case '>': {
        tok_.kind = Tok::Op;
        bool eq = pos_ + 1 < src_.size() && src_[pos_ + 1] == '=';
        if (c == '<') tok_.op = eq ? Operator::Le : Operator::Lt;
        else tok_.op = eq ? Operator::Ge : Operator::Gt;
        pos_ += eq ? 2 : 1;
        return;
      }
      case '=':
        tok_.kind = Tok::Op;
        tok_.op = Operator::Eq;
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '=') ++pos_;  // `==` alias
        return;
      case '\'':
      case '"': {
        char quote = c;
        size_t start = ++pos_;
        while (pos_ < src_.size() && src_[pos_] != quote) ++pos_;
        if (pos_ >= src_.size())
          throw ParseError("unterminated string literal", tok_.offset);
        tok_.kind = Tok::Str;
        tok_.text = std::string(src_.substr(start, pos_ - start));
        ++pos_;
        return;
      }
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (ident_start(c)) {
      size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      if (tok_.text == "True") tok_.kind = Tok::KwTrue;
      else if (tok_.text == "False") tok_.kind = Tok::KwFalse;
      else if (tok_.text == "None") tok_.kind = Tok::KwNone;
      else tok_.kind = Tok::Ident;
      return;
    }
    throw UnknownOperatorError(
        std::string("unsupported operator or character '") + c + "'", pos_);
  }

  void lex_number() {
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double d = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    tok_.kind = Tok::Num;
    tok_.num = d;
    pos_ += static_cast<size_t>(end - begin);
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser

const std::map<std::string, PredKind, std::less<>>& fuzzy_words() {
  static const std::map<std::string, PredKind, std::less<>> words = {
      {"ignore", PredKind::Ignored},      {"ignored", PredKind::Ignored},
      {"no_effect", PredKind::Ignored},   {"unused", PredKind::Ignored},
      {"override", PredKind::Ignored},    {"overridden", PredKind::Ignored},
      {"specify", PredKind::Specified},   {"specified", PredKind::Specified},
      {"have_an_effect", PredKind::Specified},
      {"has_effect", PredKind::Specified},
      {"exist", PredKind::Specified},     {"exists", PredKind::Specified},
      {"significant", PredKind::Specified},
  };
  return words;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ConstraintPtr parse() {
    ConstraintPtr c = parse_implies();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("expected end of input, '->', '^' or 'v'",
                       lex_.peek().offset);
    return c;
  }

 private:
  ConstraintPtr parse_implies() {
    ConstraintPtr a = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Constraint::implies(std::move(a), parse_implies());
    }
    return a;
  }

  ConstraintPtr parse_or() {
    ConstraintPtr a = parse_and();
    while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "v") {
      lex_.take();
      a = Constraint::disj(std::move(a), parse_and());
    }
    return a;
  }

  ConstraintPtr parse_and() {
    ConstraintPtr a = parse_unary();
    while (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      a = Constraint::conj(std::move(a), parse_unary());
    }
    return a;
  }

  ConstraintPtr parse_unary() {
    if (lex_.peek().kind == Tok::Bang) {
      lex_.take();
      return Constraint::negation(parse_unary());
    }
    return parse_primary();
  }

  ConstraintPtr parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      ConstraintPtr inner = parse_implies();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) return parse_atom_or_pred();
    throw ParseError("expected '(', '!' or identifier", t.offset);
  }

  ConstraintPtr parse_atom_or_pred() {
    Token name = lex_.take();
    if (lex_.peek().kind == Tok::LParen) {
      auto it = fuzzy_words().find(name.text);
      if (it == fuzzy_words().end())
        throw UnknownOperatorError("unknown predicate '" + name.text + "'",
                                   name.offset);
      lex_.take();
      Token param = lex_.take();
      if (param.kind != Tok::Ident)
        throw ParseError("expected parameter name", param.offset);
      expect(Tok::RParen, "')'");
      return Constraint::fuzzy(it->second, param.text);
    }
    Token op = lex_.take();
    if (op.kind != Tok::Op)
      throw ParseError("expected comparison operator", op.offset);
    Expression e;
    e.param = name.text;
    e.op = op.op;
    e.value = parse_value();
    return Constraint::atom(std::move(e));
  }

  Value parse_value() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Str: return Value::str(t.text);
      case Tok::Num: return Value::num(t.num);
      case Tok::KwTrue: return Value::boolean(true);
      case Tok::KwFalse: return Value::boolean(false);
      case Tok::KwNone: return Value::none();
      // A bare identifier on the value side is treated as an unquoted string.
      case Tok::Ident: return Value::str(t.text);
      default:
        throw ParseError("expected value (string, number, bool or None)",
                         t.offset);
    }
  }

  void expect(Tok kind, const char* what) {
    Token t = lex_.take();
    if (t.kind != kind)
      throw ParseError(std::string("expected ") + what, t.offset);
  }

  Lexer lex_;
};

}  // namespace

ConstraintPtr parse_constraint(std::string_view text) {
  return Parser(text).parse();
}

std::string print_constraint(const ConstraintPtr& c) {
  switch (c->kind()) {
    case Constraint::Kind::Atom: {
      const Expression& e = c->expr();
      return "(" + e.param + " " + operator_text(e.op) + " " +
             e.value.print() + ")";
    }
    case Constraint::Kind::Not:
      return "(! " + print_constraint(c->child()) + ")";
    case Constraint::Kind::And:
      return "(" + print_constraint(c->lhs()) + " ^ " +
             print_constraint(c->rhs()) + ")";
    case Constraint::Kind::Or:
      return "(" + print_constraint(c->lhs()) + " v " +
             print_constraint(c->rhs()) + ")";
    case Constraint::Kind::Implies:
      return "(" + print_constraint(c->lhs()) + " -> " +
             print_constraint(c->rhs()) + ")";
    case Constraint::Kind::Fuzzy:
      return std::string("(") +
             (c->pred_kind() == PredKind::Ignored ? "ignore" : "specified") +
             "(" + c->pred_param() + "))";
  }
  return "";
}

namespace {

ConstraintPtr normalize_rec(const ConstraintPtr& c, bool negated) {
  switch (c->kind()) {
    case Constraint::Kind::Atom: {
      if (!negated) return Constraint::atom(c->expr());
      Expression e = c->expr();
      e.op = complement_operator(e.op);
      return Constraint::atom(std::move(e));
    }
    case Constraint::Kind::Fuzzy: {
      PredKind k = c->pred_kind();
      if (negated)
        k = k == PredKind::Ignored ? PredKind::Specified : PredKind::Ignored;
      return Constraint::fuzzy(k, c->pred_param());
    }
    case Constraint::Kind::Not:
      return normalize_rec(c->child(), !negated);
    case Constraint::Kind::And: {
      auto a = normalize_rec(c->lhs(), negated);
      auto b = normalize_rec(c->rhs(), negated);
      return negated ? Constraint::disj(a, b) : Constraint::conj(a, b);
    }
    case Constraint::Kind::Or: {
      auto a = normalize_rec(c->lhs(), negated);
      auto b = normalize_rec(c->rhs(), negated);
      return negated ? Constraint::conj(a, b) : Constraint::disj(a, b);
    }
    case Constraint::Kind::Implies: {
      // a -> b  ==  !a v b
      auto a = normalize_rec(c->lhs(), !negated);
      auto b = normalize_rec(c->rhs(), negated);
      return negated ? Constraint::conj(a, b) : Constraint::disj(a, b);
    }
  }
  return c;
}

}  // namespace

ConstraintPtr normalize(const ConstraintPtr& c) {
  return normalize_rec(c, false);
}

bool structurally_equal(const ConstraintPtr& a, const ConstraintPtr& b) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Constraint::Kind::Atom:
      return a->expr() == b->expr();
    case Constraint::Kind::Fuzzy:
      return a->pred_kind() == b->pred_kind() &&
             a->pred_param() == b->pred_param();
    case Constraint::Kind::Not:
      return structurally_equal(a->child(), b->child());
    default:
      return structurally_equal(a->lhs(), b->lhs()) &&
             structurally_equal(a->rhs(), b->rhs());
  }
}

bool eval_constraint(const ConstraintPtr& c,
                     const std::function<bool(const Expression&)>& atom_eval) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
      return atom_eval(c->expr());
    case Constraint::Kind::Fuzzy:
      throw std::invalid_argument(
          "cannot crisply evaluate a fuzzy predicate leaf");
    case Constraint::Kind::Not:
      return !eval_constraint(c->child(), atom_eval);
    case Constraint::Kind::And:
      return eval_constraint(c->lhs(), atom_eval) &&
             eval_constraint(c->rhs(), atom_eval);
    case Constraint::Kind::Or:
      return eval_constraint(c->lhs(), atom_eval) ||
             eval_constraint(c->rhs(), atom_eval);
    case Constraint::Kind::Implies:
      return !eval_constraint(c->lhs(), atom_eval) ||
             eval_constraint(c->rhs(), atom_eval);
  }
  return false;
}

namespace {

void walk(const ConstraintPtr& c,
          const std::function<void(const Constraint&)>& fn) {
  fn(*c);
  switch (c->kind()) {
    case Constraint::Kind::Not:
      walk(c->child(), fn);
      break;
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
    case Constraint::Kind::Implies:
      walk(c->lhs(), fn);
      walk(c->rhs(), fn);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<std::string> constraint_params(const ConstraintPtr& c) {
  std::vector<std::string> out;
  walk(c, [&](const Constraint& node) {
    std::string name;
    if (node.kind() == Constraint::Kind::Atom) name = node.expr().param;
    else if (node.kind() == Constraint::Kind::Fuzzy) name = node.pred_param();
    else return;
    if (name == "__always__") return;
    for (const auto& seen : out)
      if (seen == name) return;
    out.push_back(std::move(name));
  });
  return out;
}

std::vector<const Expression*> atom_leaves(const ConstraintPtr& c) {
  std::vector<const Expression*> out;
  walk(c, [&](const Constraint& node) {
    if (node.kind() == Constraint::Kind::Atom) out.push_back(&node.expr());
  });
  return out;
}

bool has_fuzzy_pred(const ConstraintPtr& c) {
  bool found = false;
  walk(c, [&](const Constraint& node) {
    if (node.kind() == Constraint::Kind::Fuzzy) found = true;
  });
  return found;
}

ConstraintPtr map_atoms(
    const ConstraintPtr& c,
    const std::function<Expression(const Expression&)>& fn) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
      return Constraint::atom(fn(c->expr()));
    case Constraint::Kind::Fuzzy:
      return c;
    case Constraint::Kind::Not:
      return Constraint::negation(map_atoms(c->child(), fn));
    case Constraint::Kind::And:
      return Constraint::conj(map_atoms(c->lhs(), fn), map_atoms(c->rhs(), fn));
    case Constraint::Kind::Or:
      return Constraint::disj(map_atoms(c->lhs(), fn), map_atoms(c->rhs(), fn));
    case Constraint::Kind::Implies:
      return Constraint::implies(map_atoms(c->lhs(), fn),
                                 map_atoms(c->rhs(), fn));
  }
  return c;
}

ConstraintPtr always_true() {
  Expression e;
  e.param = "__always__";
  e.op = Operator::Eq;
  e.value = Value::boolean(true);
  return Constraint::atom(std::move(e));
}

bool is_always_true(const ConstraintPtr& c) {
  return c->kind() == Constraint::Kind::Atom &&
         c->expr().param == "__always__" && c->expr().op == Operator::Eq;
}

OperatorEmbedding operator_embedding(Operator op) {
  // (Comparison, Equation, Greater, Less, Negativity)
  switch (op) {
    case Operator::Lt: return {1, 0, 0, 1, 0};
    case Operator::Gt: return {1, 0, 1, 0, 0};
    case Operator::Le: return {1, 1, 0, 1, 0};
    case Operator::Ge: return {1, 1, 1, 0, 0};
    case Operator::Eq: return {0, 1, 0, 0, 0};
    case Operator::Ne: return {0, 1, 0, 0, 1};
  }
  return {};
}

}  // namespace cdi
