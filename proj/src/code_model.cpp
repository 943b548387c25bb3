#include "cdi/code_model.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "cdi/sat.hpp"

namespace cdi {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer

enum class PTok { Name, Number, String, Newline, Indent, Dedent, Punct, End };

struct PToken {
  PTok kind = PTok::End;
  std::string text;
  double num = 0.0;
  int line = 0;
};

bool py_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool py_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class PyLexer {
 public:
  explicit PyLexer(std::string_view src) { tokenize(src); }
  std::vector<PToken> tokens;

 private:
  void tokenize(std::string_view src) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= src.size()) {
      size_t nl = src.find('\n', start);
      if (nl == std::string_view::npos) {
        lines.emplace_back(src.substr(start));
        break;
      }
      lines.emplace_back(src.substr(start, nl - start));
      start = nl + 1;
    }

    // Strip the common leading indent of the first code line (method bodies
    // arrive indented).
    size_t base_indent = std::string::npos;
    for (const auto& ln : lines) {
      size_t i = ln.find_first_not_of(" \t");
      if (i == std::string::npos || ln[i] == '#') continue;
      base_indent = i;
      break;
    }
    if (base_indent == std::string::npos) base_indent = 0;

    std::vector<size_t> indents{0};
    int bracket_depth = 0;
    bool in_triple = false;
    char triple_quote = '"';

    for (size_t li = 0; li < lines.size(); ++li) {
      int line_no = static_cast<int>(li) + 1;
      std::string ln = lines[li];
      if (!ln.empty() && ln.back() == '\r') ln.pop_back();

      size_t pos = 0;
      bool closed_triple = false;
      if (in_triple) {
        // consume until the closing triple quote
        std::string close(3, triple_quote);
        size_t end = ln.find(close);
        if (end == std::string::npos) continue;
        in_triple = false;
        closed_triple = true;  // the pending string statement ends here
        pos = end + 3;
      } else if (bracket_depth == 0) {
        size_t first = ln.find_first_not_of(" \t");
        if (first == std::string::npos || ln[first] == '#') continue;  // blank
        if (first < base_indent)
          throw UnsupportedSyntaxError(line_no, "unexpected dedent");
        size_t indent = first - base_indent;
        if (indent > indents.back()) {
          indents.push_back(indent);
          push(PTok::Indent, line_no);
        } else {
          while (indent < indents.back()) {
            indents.pop_back();
            push(PTok::Dedent, line_no);
          }
          if (indent != indents.back())
            throw UnsupportedSyntaxError(line_no, "inconsistent indentation");
        }
        pos = first;
      }

      bool emitted = lex_line(ln, pos, line_no, bracket_depth, in_triple,
                              triple_quote);
      if (bracket_depth == 0 && !in_triple && (emitted || closed_triple))
        push(PTok::Newline, line_no);
    }
    int last_line = static_cast<int>(lines.size());
    while (indents.size() > 1) {
      indents.pop_back();
      push(PTok::Dedent, last_line);
    }
    push(PTok::End, last_line);
  }

  // Returns true if any token was emitted from this line.
  bool lex_line(const std::string& ln, size_t pos, int line_no,
                int& bracket_depth, bool& in_triple, char& triple_quote) {
    bool emitted = false;
    while (pos < ln.size()) {
      char c = ln[pos];
      if (c == ' ' || c == '\t') {
        ++pos;
        continue;
      }
      if (c == '#') break;
      if (c == '"' || c == '\'') {
        if (pos + 2 < ln.size() && ln[pos + 1] == c && ln[pos + 2] == c) {
          std::string close(3, c);
          size_t end = ln.find(close, pos + 3);
          if (end == std::string::npos) {
            in_triple = true;
            triple_quote = c;
            PToken t{PTok::String, "", 0.0, line_no};
            tokens.push_back(t);
            return true;
          }
          PToken t{PTok::String, ln.substr(pos + 3, end - pos - 3), 0.0,
                   line_no};
          tokens.push_back(t);
          pos = end + 3;
          emitted = true;
          continue;
        }
        size_t end = pos + 1;
        while (end < ln.size() && ln[end] != c) {
          if (ln[end] == '\\') ++end;
          ++end;
        }
        if (end >= ln.size())
          throw UnsupportedSyntaxError(line_no, "unterminated string");
        PToken t{PTok::String, ln.substr(pos + 1, end - pos - 1), 0.0, line_no};
        tokens.push_back(t);
        pos = end + 1;
        emitted = true;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos + 1 < ln.size() &&
           std::isdigit(static_cast<unsigned char>(ln[pos + 1])))) {
        const char* begin = ln.c_str() + pos;
        char* end = nullptr;
        double d = std::strtod(begin, &end);
        PToken t{PTok::Number, "", d, line_no};
        tokens.push_back(t);
        pos += static_cast<size_t>(end - begin);
        emitted = true;
        continue;
      }
      if (py_ident_start(c)) {
        size_t end = pos;
        while (end < ln.size() && py_ident_char(ln[end])) ++end;
        PToken t{PTok::Name, ln.substr(pos, end - pos), 0.0, line_no};
        tokens.push_back(t);
        pos = end;
        emitted = true;
        continue;
      }
      // punctuation / operators
      static const char* two_char[] = {"==", "!=", "<=", ">=", "->", "**"};
      std::string two = ln.substr(pos, 2);
      bool matched = false;
      for (const char* op : two_char) {
        if (two == op) {
          tokens.push_back({PTok::Punct, two, 0.0, line_no});
          pos += 2;
          matched = true;
          break;
        }
      }
      if (matched) {
        emitted = true;
        continue;
      }
      std::string one(1, c);
      if (c == '(' || c == '[' || c == '{') ++bracket_depth;
      if (c == ')' || c == ']' || c == '}') --bracket_depth;
      tokens.push_back({PTok::Punct, one, 0.0, line_no});
      ++pos;
      emitted = true;
    }
    return emitted;
  }

  void push(PTok kind, int line) { tokens.push_back({kind, "", 0.0, line}); }
};

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> kws = {
      "for", "while", "with", "try", "except", "finally", "lambda",
      "yield", "global", "nonlocal", "class", "import", "from", "del",
      "assert", "async", "await"};
  return kws;
}

class PyParser {
 public:
  explicit PyParser(std::vector<PToken> tokens) : toks_(std::move(tokens)) {}

  FunctionModel parse() {
    FunctionModel m;
    skip_newlines();
    // tolerate decorators
    while (peek().kind == PTok::Punct && peek().text == "@") {
      while (peek().kind != PTok::Newline && peek().kind != PTok::End) take();
      skip_newlines();
    }
    expect_name("def");
    PToken name = take();
    if (name.kind != PTok::Name)
      throw UnsupportedSyntaxError(name.line, "missing function name");
    m.name = name.text;
    expect_punct("(");
    parse_params(m);
    expect_punct(")");
    expect_punct(":");
    m.body = parse_suite();
    skip_newlines();
    if (peek().kind != PTok::End)
      throw UnsupportedSyntaxError(peek().line,
                                   "trailing content after function body");
    return m;
  }

 private:
  const PToken& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  PToken take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  void expect_punct(const std::string& p) {
    PToken t = take();
    if (t.kind != PTok::Punct || t.text != p)
      throw UnsupportedSyntaxError(t.line, "expected '" + p + "'");
  }
  void expect_name(const std::string& n) {
    PToken t = take();
    if (t.kind != PTok::Name || t.text != n)
      throw UnsupportedSyntaxError(t.line, "expected '" + n + "'");
  }
  void skip_newlines() {
    while (peek().kind == PTok::Newline) take();
  }

  bool at_name(const std::string& n) const {
    return peek().kind == PTok::Name && peek().text == n;
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == PTok::Punct && peek().text == p;
  }

  void parse_params(FunctionModel& m) {
    while (!at_punct(")")) {
      PToken t = take();
      if (t.kind == PTok::Punct && (t.text == "*" || t.text == "**")) {
        // *args / **kwargs: tolerated and ignored
        if (peek().kind == PTok::Name) take();
      } else if (t.kind == PTok::Name) {
        std::string pname = t.text;
        if (at_punct("=")) {
          take();
          CodeExprPtr dflt = parse_expr();
          if (dflt->kind == CodeExpr::Kind::None)
            none_defaults_.insert(pname);
        }
        if (pname != "self") m.params.push_back(pname);
      } else {
        throw UnsupportedSyntaxError(t.line, "malformed parameter list");
      }
      if (at_punct(",")) take();
    }
    m.nullable_params = none_defaults_;
  }

  StmtList parse_suite() {
    skip_newlines();
    PToken t = take();
    if (t.kind != PTok::Indent)
      throw UnsupportedSyntaxError(t.line, "expected indented block");
    StmtList body;
    skip_newlines();
    while (peek().kind != PTok::Dedent && peek().kind != PTok::End) {
      body.push_back(parse_stmt());
      skip_newlines();
    }
    if (peek().kind == PTok::Dedent) take();
    return body;
  }

  CodeStmt parse_stmt() {
    const PToken& t = peek();
    if (t.kind == PTok::Name && unsupported_keywords().count(t.text))
      throw UnsupportedSyntaxError(t.line, "'" + t.text + "' statement");
    if (at_name("def"))
      throw UnsupportedSyntaxError(t.line, "nested function definition");
    if (at_name("if")) return parse_if();
    if (at_name("return")) {
      CodeStmt s;
      s.kind = CodeStmt::Kind::Return;
      s.line = take().line;
      if (peek().kind != PTok::Newline && peek().kind != PTok::End)
        s.value = parse_expr();
      end_stmt();
      return s;
    }
    if (at_name("raise")) {
      CodeStmt s;
      s.kind = CodeStmt::Kind::Raise;
      s.line = take().line;
      if (peek().kind != PTok::Newline && peek().kind != PTok::End)
        s.value = parse_expr();
      end_stmt();
      return s;
    }
    if (at_name("pass")) {
      CodeStmt s;
      s.kind = CodeStmt::Kind::Pass;
      s.line = take().line;
      end_stmt();
      return s;
    }
    // docstring or other bare string
    if (t.kind == PTok::String) {
      CodeStmt s;
      s.kind = CodeStmt::Kind::Pass;
      s.line = take().line;
      end_stmt();
      return s;
    }
    // expression or assignment
    CodeStmt s;
    s.line = t.line;
    CodeExprPtr lhs = parse_expr();
    if (at_punct("=")) {
      take();
      s.kind = CodeStmt::Kind::Assign;
      s.target = lhs;
      s.value = parse_expr();
      if (lhs->kind != CodeExpr::Kind::Name &&
          lhs->kind != CodeExpr::Kind::SelfAttr &&
          lhs->kind != CodeExpr::Kind::Subscript)
        throw UnsupportedSyntaxError(s.line, "unsupported assignment target");
    } else {
      s.kind = CodeStmt::Kind::ExprStmt;
      s.value = lhs;
    }
    end_stmt();
    return s;
  }

  void end_stmt() {
    const PToken& t = peek();
    if (t.kind == PTok::Newline) {
      take();
      return;
    }
    if (t.kind == PTok::Dedent || t.kind == PTok::End) return;
    throw UnsupportedSyntaxError(
        t.line, "unsupported token '" + (t.text.empty() ? "?" : t.text) +
                    "' in statement");
  }

  CodeStmt parse_if() {
    CodeStmt s;
    s.kind = CodeStmt::Kind::If;
    s.line = peek().line;
    take();  // if
    for (;;) {
      CodeBranch br;
      br.cond = parse_expr();
      expect_punct(":");
      br.body = parse_suite();
      s.branches.push_back(std::move(br));
      skip_newlines();
      if (at_name("elif")) {
        take();
        continue;
      }
      if (at_name("else")) {
        take();
        expect_punct(":");
        CodeBranch els;
        els.body = parse_suite();
        s.branches.push_back(std::move(els));
      }
      break;
    }
    return s;
  }

  // expression grammar -----------------------------------------------------

  CodeExprPtr parse_expr() { return parse_ternary(); }

  CodeExprPtr parse_ternary() {
    CodeExprPtr value = parse_or();
    if (at_name("if")) {
      int line = take().line;
      CodeExprPtr cond = parse_or();
      expect_name("else");
      CodeExprPtr other = parse_ternary();
      CodeExpr e;
      e.kind = CodeExpr::Kind::Ternary;
      e.line = line;
      e.children = {cond, value, other};
      return CodeExpr::make(std::move(e));
    }
    return value;
  }

  CodeExprPtr parse_or() {
    CodeExprPtr a = parse_and();
    while (at_name("or")) {
      int line = take().line;
      CodeExpr e;
      e.kind = CodeExpr::Kind::Or;
      e.line = line;
      e.children = {a, parse_and()};
      a = CodeExpr::make(std::move(e));
    }
    return a;
  }

  CodeExprPtr parse_and() {
    CodeExprPtr a = parse_not();
    while (at_name("and")) {
      int line = take().line;
      CodeExpr e;
      e.kind = CodeExpr::Kind::And;
      e.line = line;
      e.children = {a, parse_not()};
      a = CodeExpr::make(std::move(e));
    }
    return a;
  }

  CodeExprPtr parse_not() {
    if (at_name("not")) {
      int line = take().line;
      CodeExpr e;
      e.kind = CodeExpr::Kind::Not;
      e.line = line;
      e.children = {parse_not()};
      return CodeExpr::make(std::move(e));
    }
    return parse_comparison();
  }

  CodeExprPtr parse_comparison() {
    CodeExprPtr lhs = parse_unary();
    std::optional<Operator> op;
    int line = peek().line;
    if (peek().kind == PTok::Punct) {
      const std::string& p = peek().text;
      if (p == "==") op = Operator::Eq;
      else if (p == "!=") op = Operator::Ne;
      else if (p == "<") op = Operator::Lt;
      else if (p == ">") op = Operator::Gt;
      else if (p == "<=") op = Operator::Le;
      else if (p == ">=") op = Operator::Ge;
      if (op) take();
    } else if (at_name("is")) {
      take();
      bool neg = false;
      if (at_name("not")) {
        take();
        neg = true;
      }
      op = neg ? Operator::Ne : Operator::Eq;
    } else if (at_name("in")) {
      throw UnsupportedSyntaxError(peek().line, "'in' comparison");
    }
    if (!op) return lhs;
    CodeExprPtr rhs = parse_unary();
    CodeExpr e;
    e.kind = CodeExpr::Kind::Compare;
    e.cmp_op = *op;
    e.line = line;
    e.children = {lhs, rhs};
    return CodeExpr::make(std::move(e));
  }

  CodeExprPtr parse_unary() {
    if (at_punct("-")) {
      int line = take().line;
      CodeExprPtr operand = parse_postfix();
      if (operand->kind != CodeExpr::Kind::Num)
        throw UnsupportedSyntaxError(line, "arithmetic expression");
      CodeExpr e = *operand;
      e.num = -e.num;
      return CodeExpr::make(std::move(e));
    }
    return parse_postfix();
  }

  CodeExprPtr parse_postfix() {
    CodeExprPtr base = parse_atom();
    for (;;) {
      if (at_punct(".")) {
        int line = take().line;
        PToken attr = take();
        if (attr.kind != PTok::Name)
          throw UnsupportedSyntaxError(line, "malformed attribute access");
        CodeExpr e;
        e.line = line;
        if (base->kind == CodeExpr::Kind::Name && base->name == "self") {
          e.kind = CodeExpr::Kind::SelfAttr;
          e.name = attr.text;
        } else if (base->kind == CodeExpr::Kind::Name ||
                   base->kind == CodeExpr::Kind::SelfAttr) {
          // dotted name; resolved during normalization
          e.kind = CodeExpr::Kind::Name;
          e.name = (base->kind == CodeExpr::Kind::SelfAttr
                        ? "self." + base->name
                        : base->name) +
                   "." + attr.text;
        } else {
          throw UnsupportedSyntaxError(line, "attribute on complex expression");
        }
        base = CodeExpr::make(std::move(e));
        continue;
      }
      if (at_punct("(")) {
        int line = take().line;
        if (base->kind != CodeExpr::Kind::Name &&
            base->kind != CodeExpr::Kind::SelfAttr)
          throw UnsupportedSyntaxError(line, "call of complex expression");
        CodeExpr e;
        e.kind = CodeExpr::Kind::Call;
        e.line = line;
        e.name = base->kind == CodeExpr::Kind::SelfAttr ? "self." + base->name
                                                        : base->name;
        while (!at_punct(")")) {
          // keyword arguments: keep the value expression
          if (peek().kind == PTok::Name && peek(1).kind == PTok::Punct &&
              peek(1).text == "=") {
            take();
            take();
          }
          e.children.push_back(parse_expr());
          if (at_punct(",")) take();
        }
        take();  // )
        base = CodeExpr::make(std::move(e));
        continue;
      }
      if (at_punct("[")) {
        int line = take().line;
        if (base->kind != CodeExpr::Kind::Name &&
            base->kind != CodeExpr::Kind::SelfAttr)
          throw UnsupportedSyntaxError(line, "subscript of complex expression");
        CodeExpr e;
        e.kind = CodeExpr::Kind::Subscript;
        e.line = line;
        e.name = base->kind == CodeExpr::Kind::SelfAttr ? "self." + base->name
                                                        : base->name;
        e.children.push_back(parse_expr());
        expect_punct("]");
        base = CodeExpr::make(std::move(e));
        continue;
      }
      break;
    }
    return base;
  }

  CodeExprPtr parse_atom() {
    PToken t = take();
    CodeExpr e;
    e.line = t.line;
    switch (t.kind) {
      case PTok::Name:
        if (unsupported_keywords().count(t.text))
          throw UnsupportedSyntaxError(t.line, "'" + t.text + "' expression");
        if (t.text == "True" || t.text == "False") {
          e.kind = CodeExpr::Kind::Bool;
          e.truth = t.text == "True";
        } else if (t.text == "None") {
          e.kind = CodeExpr::Kind::None;
        } else {
          e.kind = CodeExpr::Kind::Name;
          e.name = t.text;
        }
        return CodeExpr::make(std::move(e));
      case PTok::Number:
        e.kind = CodeExpr::Kind::Num;
        e.num = t.num;
        return CodeExpr::make(std::move(e));
      case PTok::String:
        e.kind = CodeExpr::Kind::Str;
        e.text = t.text;
        return CodeExpr::make(std::move(e));
      case PTok::Punct:
        if (t.text == "(") {
          CodeExprPtr inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        if (t.text == "{" || t.text == "[")
          return parse_display(t.text == "{" ? "}" : "]", t.line);
        break;
      default:
        break;
    }
    throw UnsupportedSyntaxError(t.line, "unsupported expression");
  }

  // Dict/list displays: consumed as an opaque value; names inside are kept
  // as children so define-use analysis still sees them.
  CodeExprPtr parse_display(const std::string&, int line) {
    CodeExpr e;
    e.kind = CodeExpr::Kind::Opaque;
    e.line = line;
    int depth = 1;
    while (depth > 0) {
      PToken t = take();
      if (t.kind == PTok::End)
        throw UnsupportedSyntaxError(line, "unterminated display literal");
      if (t.kind == PTok::Punct) {
        if (t.text == "{" || t.text == "[" || t.text == "(") ++depth;
        if (t.text == "}" || t.text == "]" || t.text == ")") --depth;
      }
      if (t.kind == PTok::Name && !unsupported_keywords().count(t.text) &&
          t.text != "True" && t.text != "False" && t.text != "None" &&
          t.text != "self") {
        CodeExpr n;
        n.kind = CodeExpr::Kind::Name;
        n.name = t.text;
        n.line = t.line;
        e.children.push_back(CodeExpr::make(std::move(n)));
      }
    }
    return CodeExpr::make(std::move(e));
  }

  std::vector<PToken> toks_;
  size_t pos_ = 0;
  std::set<std::string> none_defaults_;
};

}  // namespace

FunctionModel parse_function(std::string_view source) {
  PyLexer lex(source);
  return PyParser(std::move(lex.tokens)).parse();
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::string sanitize_callee(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), '.', '_');
  return out;
}

class Normalizer {
 public:
  Normalizer(const FunctionModel& in, const std::set<std::string>& hints)
      : in_(in) {
    out_.name = in.name;
    out_.params = in.params;
    out_.nullable_params = in.nullable_params;
    for (const auto& h : hints) out_.nullable_params.insert(h);
    for (const auto& p : in.params) param_set_.insert(p);
  }

  FunctionModel run() {
    out_.body = rewrite_stmts(in_.body);
    CodeStmt fin;
    fin.kind = CodeStmt::Kind::Return;
    fin.synthetic = true;
    fin.payload = out_.params;
    out_.body.push_back(std::move(fin));
    out_.normalized = true;
    return std::move(out_);
  }

 private:
  void ensure_param(const std::string& name) {
    if (param_set_.insert(name).second) out_.params.push_back(name);
  }

  void intern(const std::string& text) {
    if (out_.string_table.count(text)) return;
    out_.string_table[text] =
        kStringInternBase + static_cast<long long>(out_.string_table.size());
  }

  // Collect parameter-relevant names from a subtree that is about to be
  // replaced by a symbolic input.
  void collect_names(const CodeExprPtr& e, std::vector<std::string>& out) {
    switch (e->kind) {
      case CodeExpr::Kind::Name:
        if (e->name.find('.') == std::string::npos && e->name != "self")
          out.push_back(e->name);
        break;
      case CodeExpr::Kind::SelfAttr:
        ensure_param(e->name);
        out.push_back(e->name);
        break;
      default:
        for (const auto& ch : e->children) collect_names(ch, out);
        break;
    }
  }

  CodeExprPtr rewrite_expr(const CodeExprPtr& e,
                           std::vector<std::string>& extra_uses) {
    switch (e->kind) {
      case CodeExpr::Kind::Name: {
        if (e->name.find('.') != std::string::npos) {
          // external dotted value -> symbolic input
          std::string sym = "call_" + sanitize_callee(e->name);
          ensure_param(sym);
          CodeExpr n;
          n.kind = CodeExpr::Kind::Name;
          n.name = sym;
          n.line = e->line;
          return CodeExpr::make(std::move(n));
        }
        return e;
      }
      case CodeExpr::Kind::SelfAttr: {
        ensure_param(e->name);
        CodeExpr n;
        n.kind = CodeExpr::Kind::Name;
        n.name = e->name;
        n.line = e->line;
        return CodeExpr::make(std::move(n));
      }
      case CodeExpr::Kind::Call: {
        for (const auto& arg : e->children) collect_names(arg, extra_uses);
        std::string sym = "call_" + sanitize_callee(e->name);
        ensure_param(sym);
        CodeExpr n;
        n.kind = CodeExpr::Kind::Name;
        n.name = sym;
        n.line = e->line;
        return CodeExpr::make(std::move(n));
      }
      case CodeExpr::Kind::Subscript: {
        extra_uses.push_back(e->name);
        for (const auto& ch : e->children) collect_names(ch, extra_uses);
        std::string sym = "call_subscript_" + sanitize_callee(e->name);
        ensure_param(sym);
        CodeExpr n;
        n.kind = CodeExpr::Kind::Name;
        n.name = sym;
        n.line = e->line;
        return CodeExpr::make(std::move(n));
      }
      case CodeExpr::Kind::Opaque: {
        for (const auto& ch : e->children) collect_names(ch, extra_uses);
        std::string sym = "call_literal_" + std::to_string(++literal_counter_);
        ensure_param(sym);
        CodeExpr n;
        n.kind = CodeExpr::Kind::Name;
        n.name = sym;
        n.line = e->line;
        return CodeExpr::make(std::move(n));
      }
      case CodeExpr::Kind::Str:
        intern(e->text);
        return e;
      case CodeExpr::Kind::Num:
      case CodeExpr::Kind::Bool:
      case CodeExpr::Kind::None:
        return e;
      default: {
        CodeExpr n = *e;
        n.children.clear();
        for (const auto& ch : e->children)
          n.children.push_back(rewrite_expr(ch, extra_uses));
        return CodeExpr::make(std::move(n));
      }
    }
  }

  void guard_names(const CodeExprPtr& cond, std::vector<std::string>& out) {
    if (cond->kind == CodeExpr::Kind::Name) {
      out.push_back(cond->name);
      return;
    }
    for (const auto& ch : cond->children) guard_names(ch, out);
  }

  StmtList rewrite_stmts(const StmtList& stmts) {
    StmtList out;
    for (const auto& s : stmts) rewrite_stmt(s, out);
    return out;
  }

  void rewrite_stmt(const CodeStmt& s, StmtList& out) {
    switch (s.kind) {
      case CodeStmt::Kind::Pass:
        out.push_back(s);
        return;
      case CodeStmt::Kind::Assign: {
        // ternary rhs -> if/else
        if (s.value->kind == CodeExpr::Kind::Ternary) {
          CodeStmt iff;
          iff.kind = CodeStmt::Kind::If;
          iff.line = s.line;
          CodeBranch then_br;
          then_br.cond = s.value->children[0];
          CodeStmt then_assign = s;
          then_assign.value = s.value->children[1];
          then_br.body.push_back(std::move(then_assign));
          CodeBranch else_br;
          CodeStmt else_assign = s;
          else_assign.value = s.value->children[2];
          else_br.body.push_back(std::move(else_assign));
          iff.branches.push_back(std::move(then_br));
          iff.branches.push_back(std::move(else_br));
          rewrite_stmt(iff, out);
          return;
        }
        CodeStmt n;
        n.kind = CodeStmt::Kind::Assign;
        n.line = s.line;
        if (s.target->kind == CodeExpr::Kind::Subscript) {
          n.opaque_store = true;
          CodeExpr base;
          base.kind = CodeExpr::Kind::Name;
          base.line = s.target->line;
          if (s.target->name.rfind("self.", 0) == 0) {
            base.name = s.target->name.substr(5);
            ensure_param(base.name);
          } else {
            base.name = s.target->name;
          }
          n.extra_uses.push_back(base.name);
          for (const auto& ch : s.target->children)
            collect_names(ch, n.extra_uses);
          n.target = CodeExpr::make(std::move(base));
        } else if (s.target->kind == CodeExpr::Kind::SelfAttr) {
          ensure_param(s.target->name);
          CodeExpr base;
          base.kind = CodeExpr::Kind::Name;
          base.name = s.target->name;
          base.line = s.target->line;
          n.target = CodeExpr::make(std::move(base));
        } else {
          n.target = s.target;
        }
        n.value = rewrite_expr(s.value, n.extra_uses);
        out.push_back(std::move(n));
        return;
      }
      case CodeStmt::Kind::If: {
        CodeStmt n;
        n.kind = CodeStmt::Kind::If;
        n.line = s.line;
        std::vector<std::string> chain_names;
        for (const auto& br : s.branches) {
          CodeBranch nb;
          if (br.cond) {
            std::vector<std::string> cond_uses;
            nb.cond = rewrite_expr(br.cond, cond_uses);
            // names replaced out of the condition still guard the branch
            for (const auto& u : cond_uses) chain_names.push_back(u);
            guard_names(nb.cond, chain_names);
          }
          size_t depth = guard_stack_.size();
          for (const auto& g : chain_names) guard_stack_.push_back(g);
          nb.body = rewrite_stmts(br.body);
          guard_stack_.resize(depth);
          n.branches.push_back(std::move(nb));
        }
        out.push_back(std::move(n));
        return;
      }
      case CodeStmt::Kind::Raise:
      case CodeStmt::Kind::Warn:
        out.push_back(make_error_return(s));
        return;
      case CodeStmt::Kind::Return: {
        CodeStmt n;
        n.kind = CodeStmt::Kind::Return;
        n.line = s.line;
        if (s.value) {
          std::vector<std::string> names;
          collect_names(s.value, names);
          for (const auto& nm : names)
            if (param_set_.count(nm) || is_local(nm)) n.payload.push_back(nm);
        }
        out.push_back(std::move(n));
        return;
      }
      case CodeStmt::Kind::ExprStmt: {
        if (s.value->kind == CodeExpr::Kind::Call) {
          const std::string& callee = s.value->name;
          bool is_warn = callee == "warn" ||
                         (callee.size() > 5 &&
                          callee.compare(callee.size() - 5, 5, ".warn") == 0);
          if (is_warn) {
            out.push_back(make_error_return(s));
            return;
          }
        }
        CodeStmt n;
        n.kind = CodeStmt::Kind::Pass;
        n.line = s.line;
        std::vector<std::string> uses;
        collect_names(s.value, uses);
        n.extra_uses = std::move(uses);
        out.push_back(std::move(n));
        return;
      }
    }
  }

  bool is_local(const std::string&) const { return true; }

  CodeStmt make_error_return(const CodeStmt& s) {
    CodeStmt n;
    n.kind = CodeStmt::Kind::Return;
    n.line = s.line;
    n.error_end = true;
    std::set<std::string> seen;
    for (const auto& g : guard_stack_) {
      if (!seen.insert(g).second) continue;
      n.payload.push_back(g);
    }
    return n;
  }

  const FunctionModel& in_;
  FunctionModel out_;
  std::set<std::string> param_set_;
  std::vector<std::string> guard_stack_;
  int literal_counter_ = 0;
};

}  // namespace

FunctionModel normalize_function(const FunctionModel& m,
                                 const std::set<std::string>& nullable_hints) {
  return Normalizer(m, nullable_hints).run();
}

// ---------------------------------------------------------------------------
// Guard conversion and path enumeration

namespace {

std::optional<Value> literal_value(const CodeExprPtr& e) {
  switch (e->kind) {
    case CodeExpr::Kind::Num: return Value::num(e->num);
    case CodeExpr::Kind::Str: return Value::str(e->text);
    case CodeExpr::Kind::Bool: return Value::boolean(e->truth);
    case CodeExpr::Kind::None: return Value::none();
    default: return std::nullopt;
  }
}

using Env = std::map<std::string, CodeExprPtr>;

CodeExprPtr resolve(const CodeExprPtr& e, const Env& env) {
  if (e->kind != CodeExpr::Kind::Name) return e;
  auto it = env.find(e->name);
  if (it == env.end()) return e;
  return it->second;
}

ConstraintPtr truthiness_atom(const std::string& name, const FunctionModel& m,
                              bool positive) {
  Expression a;
  a.param = name;
  a.op = positive ? Operator::Ne : Operator::Eq;
  a.value = m.nullable_params.count(name) ? Value::none()
                                          : Value::boolean(false);
  return Constraint::atom(std::move(a));
}

ConstraintPtr convert_cond(const CodeExprPtr& cond, const FunctionModel& m,
                           const Env& env) {
  switch (cond->kind) {
    case CodeExpr::Kind::And:
      return Constraint::conj(convert_cond(cond->children[0], m, env),
                              convert_cond(cond->children[1], m, env));
    case CodeExpr::Kind::Or:
      return Constraint::disj(convert_cond(cond->children[0], m, env),
                              convert_cond(cond->children[1], m, env));
    case CodeExpr::Kind::Not:
      return Constraint::negation(convert_cond(cond->children[0], m, env));
    case CodeExpr::Kind::Compare: {
      CodeExprPtr lhs = resolve(cond->children[0], env);
      CodeExprPtr rhs = resolve(cond->children[1], env);
      auto lv = literal_value(lhs);
      auto rv = literal_value(rhs);
      if (lv && rv) {
        // constant comparison
        bool truth = false;
        DomainValue dv;
        switch (lv->kind()) {
          case Value::Kind::Num: dv = DomainValue::number(lv->number()); break;
          case Value::Kind::Str: dv = DomainValue::string(lv->text()); break;
          case Value::Kind::Bool: dv = DomainValue::boolean(lv->truth()); break;
          case Value::Kind::None: dv = DomainValue::none(); break;
        }
        Expression probe;
        probe.param = "const";
        probe.op = cond->cmp_op;
        probe.value = *rv;
        truth = eval_atom(probe, dv);
        return truth ? always_true()
                     : Constraint::negation(always_true());
      }
      if (!lv && !rv) {
        if (lhs->kind == CodeExpr::Kind::Name &&
            rhs->kind == CodeExpr::Kind::Name)
          throw UnsupportedSyntaxError(cond->line,
                                       "comparison between two variables");
        throw UnsupportedSyntaxError(cond->line,
                                     "comparison with complex operand");
      }
      Expression a;
      if (rv) {
        if (lhs->kind != CodeExpr::Kind::Name)
          throw UnsupportedSyntaxError(cond->line, "complex comparison lhs");
        a.param = lhs->name;
        a.op = cond->cmp_op;
        a.value = *rv;
      } else {
        if (rhs->kind != CodeExpr::Kind::Name)
          throw UnsupportedSyntaxError(cond->line, "complex comparison rhs");
        a.param = rhs->name;
        // mirror: v < x  ==  x > v
        switch (cond->cmp_op) {
          case Operator::Lt: a.op = Operator::Gt; break;
          case Operator::Gt: a.op = Operator::Lt; break;
          case Operator::Le: a.op = Operator::Ge; break;
          case Operator::Ge: a.op = Operator::Le; break;
          default: a.op = cond->cmp_op; break;
        }
        a.value = *lv;
      }
      return Constraint::atom(std::move(a));
    }
    case CodeExpr::Kind::Name: {
      CodeExprPtr r = resolve(cond, env);
      if (auto v = literal_value(r)) {
        bool truth = false;
        switch (v->kind()) {
          case Value::Kind::Bool: truth = v->truth(); break;
          case Value::Kind::Num: truth = v->number() != 0; break;
          case Value::Kind::Str: truth = !v->text().empty(); break;
          case Value::Kind::None: truth = false; break;
        }
        return truth ? always_true() : Constraint::negation(always_true());
      }
      return truthiness_atom(r->name, m, true);
    }
    default:
      throw UnsupportedSyntaxError(cond->line, "unsupported condition");
  }
}

// Disjunctive normal form of a normalized (NNF) constraint, as lists of
// atoms. An empty disjunct list means `false`; an empty atom list in a
// disjunct means `true`.
std::vector<std::vector<Expression>> to_dnf(const ConstraintPtr& nnf) {
  switch (nnf->kind()) {
    case Constraint::Kind::Atom: {
      const Expression& e = nnf->expr();
      if (e.param == "__always__")
        return e.op == Operator::Eq
                   ? std::vector<std::vector<Expression>>{{}}
                   : std::vector<std::vector<Expression>>{};
      return {{e}};
    }
    case Constraint::Kind::Or: {
      auto l = to_dnf(nnf->lhs());
      auto r = to_dnf(nnf->rhs());
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case Constraint::Kind::And: {
      auto l = to_dnf(nnf->lhs());
      auto r = to_dnf(nnf->rhs());
      std::vector<std::vector<Expression>> out;
      for (const auto& a : l) {
        for (const auto& b : r) {
          std::vector<Expression> merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          out.push_back(std::move(merged));
        }
      }
      return out;
    }
    default:
      throw std::logic_error("to_dnf expects negation-normal form");
  }
}

bool atoms_satisfiable(const std::vector<Expression>& atoms) {
  std::vector<ConstraintPtr> parts;
  parts.reserve(atoms.size());
  for (const auto& a : atoms) parts.push_back(Constraint::atom(a));
  return check_sat_conjunction(parts).sat;
}

class PathEnumerator {
 public:
  PathEnumerator(const FunctionModel& m, size_t max_paths)
      : m_(m), max_paths_(max_paths) {}

  EnumeratedPaths run() {
    exec(&m_.body, 0, St{}, {});
    return std::move(result_);
  }

 private:
  struct St {
    std::vector<Expression> atoms;
    Env env;
    std::map<std::string, Value> bindings;
  };
  using Cont = std::vector<std::pair<const StmtList*, size_t>>;

  void exec(const StmtList* stmts, size_t i, St st, Cont cont) {
    if (result_.truncated) return;
    while (i >= stmts->size()) {
      if (cont.empty()) {
        emit(st, TerminalKind::Normal);
        return;
      }
      stmts = cont.back().first;
      i = cont.back().second;
      cont.pop_back();
    }
    const CodeStmt& s = (*stmts)[i];
    switch (s.kind) {
      case CodeStmt::Kind::Pass:
        exec(stmts, i + 1, std::move(st), std::move(cont));
        return;
      case CodeStmt::Kind::Assign: {
        const std::string& target = s.target->name;
        if (s.opaque_store) {
          st.env.erase(target);
          st.bindings.erase(target);
        } else {
          CodeExprPtr rhs = resolve(s.value, st.env);
          st.env[target] = rhs;
          if (auto v = literal_value(rhs)) st.bindings[target] = *v;
          else st.bindings.erase(target);
        }
        exec(stmts, i + 1, std::move(st), std::move(cont));
        return;
      }
      case CodeStmt::Kind::Return:
        emit(st, s.error_end ? TerminalKind::ErrorEnd : TerminalKind::Normal);
        return;
      case CodeStmt::Kind::If: {
        Cont remaining = cont;
        remaining.emplace_back(stmts, i + 1);
        std::vector<ConstraintPtr> negs;
        bool has_else = false;
        for (const auto& br : s.branches) {
          ConstraintPtr full;
          if (br.cond) {
            ConstraintPtr g = convert_cond(br.cond, m_, st.env);
            full = g;
            for (const auto& n : negs) full = Constraint::conj(n, full);
            negs.push_back(Constraint::negation(g));
          } else {
            has_else = true;
            full = negs.empty() ? always_true() : negs.front();
            for (size_t k = 1; k < negs.size(); ++k)
              full = Constraint::conj(full, negs[k]);
          }
          branch_into(full, br.body, st, remaining);
          if (result_.truncated) return;
        }
        if (!has_else) {
          ConstraintPtr fall = negs.empty() ? always_true() : negs.front();
          for (size_t k = 1; k < negs.size(); ++k)
            fall = Constraint::conj(fall, negs[k]);
          for (const auto& disjunct : to_dnf(normalize(fall))) {
            St next = st;
            next.atoms.insert(next.atoms.end(), disjunct.begin(),
                              disjunct.end());
            if (!atoms_satisfiable(next.atoms)) continue;
            exec(stmts, i + 1, std::move(next), cont);
            if (result_.truncated) return;
          }
        }
        return;
      }
      default:
        // raise/warn/expr statements are rewritten away by normalization
        exec(stmts, i + 1, std::move(st), std::move(cont));
        return;
    }
  }

  void branch_into(const ConstraintPtr& full, const StmtList& body, const St& st,
                   const Cont& cont) {
    for (const auto& disjunct : to_dnf(normalize(full))) {
      St next = st;
      next.atoms.insert(next.atoms.end(), disjunct.begin(), disjunct.end());
      if (!atoms_satisfiable(next.atoms)) continue;
      exec(&body, 0, std::move(next), cont);
      if (result_.truncated) return;
    }
  }

  void emit(const St& st, TerminalKind terminal) {
    if (result_.paths.size() >= max_paths_) {
      result_.truncated = true;
      return;
    }
    PathConstraint p;
    p.atoms = st.atoms;
    p.terminal = terminal;
    p.bindings = st.bindings;
    result_.paths.push_back(std::move(p));
  }

  const FunctionModel& m_;
  size_t max_paths_;
  EnumeratedPaths result_;
};

}  // namespace

ConstraintPtr guard_to_constraint(const CodeExprPtr& guard,
                                  const FunctionModel& m) {
  return convert_cond(guard, m, {});
}

EnumeratedPaths enumerate_paths(const FunctionModel& m, size_t max_paths) {
  if (!m.normalized)
    throw std::logic_error("enumerate_paths requires a normalized model");
  if (max_paths < 1) throw std::invalid_argument("max_paths must be >= 1");
  return PathEnumerator(m, max_paths).run();
}

// ---------------------------------------------------------------------------
// Define-use chains

namespace {

void expr_names(const CodeExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == CodeExpr::Kind::Name) {
    out.push_back(e->name);
    return;
  }
  for (const auto& ch : e->children) expr_names(ch, out);
}

class DuBuilder {
 public:
  explicit DuBuilder(const FunctionModel& m) : m_(m) {}

  DuChain run() {
    for (const auto& p : m_.params) chain_.vars[p].defs.push_back(-1);
    walk(m_.body);
    return std::move(chain_);
  }

 private:
  void use(const std::string& name, int id, UseSite::Kind kind) {
    chain_.vars[name].uses.push_back({id, kind});
  }

  void walk(const StmtList& stmts) {
    for (const auto& s : stmts) {
      int id = next_id_++;
      switch (s.kind) {
        case CodeStmt::Kind::Assign: {
          const std::string& target = s.target->name;
          bool copy = !s.opaque_store &&
                      s.value->kind == CodeExpr::Kind::Name;
          if (copy) {
            use(s.value->name, id, UseSite::Kind::CopySource);
            chain_.copies[s.value->name].insert(target);
          } else {
            std::vector<std::string> names;
            expr_names(s.value, names);
            for (const auto& n : names) use(n, id, UseSite::Kind::Direct);
          }
          for (const auto& n : s.extra_uses) use(n, id, UseSite::Kind::Direct);
          chain_.vars[target].defs.push_back(id);
          break;
        }
        case CodeStmt::Kind::If: {
          for (const auto& br : s.branches) {
            if (br.cond) {
              std::vector<std::string> names;
              expr_names(br.cond, names);
              for (const auto& n : names) use(n, id, UseSite::Kind::Direct);
            }
            walk(br.body);
          }
          break;
        }
        case CodeStmt::Kind::Return: {
          auto kind = s.synthetic ? UseSite::Kind::FinalReturn
                                  : UseSite::Kind::Direct;
          for (const auto& n : s.payload) use(n, id, kind);
          break;
        }
        default:
          for (const auto& n : s.extra_uses) use(n, id, UseSite::Kind::Direct);
          break;
      }
    }
  }

  const FunctionModel& m_;
  DuChain chain_;
  int next_id_ = 0;
};

}  // namespace

DuChain build_du_chains(const FunctionModel& m) {
  if (!m.normalized)
    throw std::logic_error("build_du_chains requires a normalized model");
  return DuBuilder(m).run();
}

bool is_used(const std::string& param, const FunctionModel& m,
             bool transitive) {
  DuChain du = build_du_chains(m);
  auto direct = [&](const std::string& name) {
    auto it = du.vars.find(name);
    if (it == du.vars.end()) return false;
    for (const auto& u : it->second.uses)
      if (u.kind == UseSite::Kind::Direct) return true;
    return false;
  };
  if (direct(param)) return true;
  if (!transitive) return false;
  std::set<std::string> visited{param};
  std::vector<std::string> frontier{param};
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    auto it = du.copies.find(cur);
    if (it == du.copies.end()) continue;
    for (const auto& next : it->second) {
      if (!visited.insert(next).second) continue;
      if (direct(next)) return true;
      frontier.push_back(next);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Conditional slicing

namespace {

bool cond_sat(const ConstraintPtr& a, const ConstraintPtr& b) {
  return check_sat_conjunction({normalize(a), normalize(b)}).sat;
}

class Slicer {
 public:
  Slicer(const FunctionModel& m, const ConstraintPtr& cond)
      : m_(m), cond_(cond) {}

  FunctionModel run() {
    FunctionModel out = m_;
    out.body = slice(m_.body);
    out.slice_trivial = false;
    if (!pruned_) {
      // no branch decision depended on cond: flag when cond's parameters
      // are never tested by any guard
      std::set<std::string> tested;
      collect_tested(m_.body, tested);
      bool any = false;
      for (const auto& p : constraint_params(cond_))
        any = any || tested.count(p);
      out.slice_trivial = !any;
    }
    return out;
  }

 private:
  void collect_tested(const StmtList& stmts, std::set<std::string>& out) {
    for (const auto& s : stmts) {
      if (s.kind != CodeStmt::Kind::If) continue;
      for (const auto& br : s.branches) {
        if (br.cond) {
          std::vector<std::string> names;
          expr_names(br.cond, names);
          for (const auto& n : names) out.insert(n);
        }
        collect_tested(br.body, out);
      }
    }
  }

  StmtList slice(const StmtList& stmts) {
    StmtList out;
    for (const auto& s : stmts) {
      if (s.kind != CodeStmt::Kind::If) {
        out.push_back(s);
        continue;
      }
      std::vector<ConstraintPtr> negs;
      CodeStmt rebuilt;
      rebuilt.kind = CodeStmt::Kind::If;
      rebuilt.line = s.line;
      bool inlined = false;
      for (const auto& br : s.branches) {
        ConstraintPtr g;
        bool convertible = true;
        if (br.cond) {
          try {
            g = guard_to_constraint(br.cond, m_);
          } catch (const UnsupportedSyntaxError&) {
            convertible = false;
          }
        }
        ConstraintPtr eff;
        if (convertible) {
          eff = br.cond ? g : nullptr;
          ConstraintPtr acc = eff;
          for (const auto& n : negs)
            acc = acc ? Constraint::conj(n, acc) : n;
          if (!acc) acc = always_true();
          if (!cond_sat(cond_, acc)) {
            pruned_ = true;  // branch unreachable under cond
            if (br.cond) negs.push_back(Constraint::negation(g));
            continue;
          }
          if (!cond_sat(cond_, Constraint::negation(acc))) {
            // branch forced under cond: inline and drop the rest
            pruned_ = true;
            StmtList body = slice(br.body);
            out.insert(out.end(), body.begin(), body.end());
            inlined = true;
            break;
          }
        }
        CodeBranch nb;
        nb.cond = br.cond;
        nb.body = slice(br.body);
        rebuilt.branches.push_back(std::move(nb));
        if (br.cond && convertible)
          negs.push_back(Constraint::negation(g));
      }
      if (!inlined && !rebuilt.branches.empty())
        out.push_back(std::move(rebuilt));
    }
    return out;
  }

  const FunctionModel& m_;
  ConstraintPtr cond_;
  bool pruned_ = false;
};

}  // namespace

FunctionModel slice_under_condition(const FunctionModel& m,
                                    const ConstraintPtr& cond) {
  if (!m.normalized)
    throw std::logic_error("slice_under_condition requires a normalized model");
  if (has_fuzzy_pred(cond))
    throw std::invalid_argument("slice condition must be crisp");
  return Slicer(m, cond).run();
}

std::vector<ConstraintPtr> branch_conditions(const FunctionModel& m) {
  if (!m.normalized)
    throw std::logic_error("branch_conditions requires a normalized model");
  std::vector<ConstraintPtr> out;
  for (const auto& s : m.body) {
    if (s.kind != CodeStmt::Kind::If) continue;
    std::vector<ConstraintPtr> guards;
    for (const auto& br : s.branches) {
      ConstraintPtr b;
      if (br.cond) {
        ConstraintPtr g;
        try {
          g = guard_to_constraint(br.cond, m);
        } catch (const UnsupportedSyntaxError&) {
          continue;
        }
        b = g;
        // prior branches that can overlap must be excluded explicitly
        for (const auto& prev : guards) {
          if (check_sat_conjunction({normalize(g), normalize(prev)}).sat)
            b = Constraint::conj(b, Constraint::negation(prev));
        }
        guards.push_back(g);
      } else {
        for (const auto& prev : guards) {
          ConstraintPtr n = Constraint::negation(prev);
          b = b ? Constraint::conj(b, n) : n;
        }
        if (!b) b = always_true();
      }
      out.push_back(normalize(b));
    }
  }
  return out;
}

std::vector<ConstraintPtr> ignored_conditions(const std::string& param,
                                              const FunctionModel& m) {
  bool param_known = false;
  for (const auto& p : m.params) param_known = param_known || p == param;
  if (!param_known)
    throw std::invalid_argument("unknown parameter '" + param + "'");

  if (!is_used(param, m, true)) return {always_true()};

  std::vector<ConstraintPtr> out;
  for (const auto& b : branch_conditions(m)) {
    FunctionModel sliced = slice_under_condition(m, b);
    if (!is_used(param, sliced, true)) out.push_back(b);
  }
  return out;
}

std::string dump_paths(const EnumeratedPaths& ep) {
  std::ostringstream os;
  for (const auto& p : ep.paths) {
    os << (p.terminal == TerminalKind::ErrorEnd ? "ERROR_END" : "NORMAL")
       << " |";
    for (size_t i = 0; i < p.atoms.size(); ++i) {
      os << (i == 0 ? " " : " ^ ")
         << print_constraint(Constraint::atom(p.atoms[i]));
    }
    os << "\n";
  }
  if (ep.truncated) os << "TRUNCATED\n";
  return os.str();
}

}  // namespace cdi
