// Normalized code model for a restricted Python-like subset: parsing,
// the equivalence-preserving rewrites that make functions statically
// enumerable (attribute flattening, call symbolization, raise/warn ->
// error returns, ternary expansion, string interning), feasible-path
// enumeration, define-use chains and conditional slicing.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdi/constraint.hpp"

namespace cdi {

struct UnsupportedSyntaxError : std::runtime_error {
  UnsupportedSyntaxError(int line, std::string construct)
      : std::runtime_error("line " + std::to_string(line) +
                           ": unsupported construct: " + construct),
        line(line),
        construct(std::move(construct)) {}
  int line;
  std::string construct;
};

class CodeExpr;
using CodeExprPtr = std::shared_ptr<const CodeExpr>;

class CodeExpr {
 public:
  enum class Kind {
    Name,      // identifier
    SelfAttr,  // self.<name>, removed by normalization
    Num,
    Str,
    Bool,
    None,
    Call,      // callee in name(), removed by normalization
    And,
    Or,
    Not,
    Compare,   // children[0] op children[1]
    Ternary,   // children = {cond, then, else}, removed by normalization
    Subscript, // children = {index}, base in name(); removed by normalization
    Opaque,    // dict/list display and friends; removed by normalization
  };

  Kind kind = Kind::None;
  std::string name;   // Name / SelfAttr / Call callee / Subscript base
  double num = 0.0;
  bool truth = false;
  std::string text;   // Str
  Operator cmp_op = Operator::Eq;
  std::vector<CodeExprPtr> children;
  int line = 0;

  static CodeExprPtr make(CodeExpr e) {
    return std::make_shared<const CodeExpr>(std::move(e));
  }
};

struct CodeStmt;
using StmtList = std::vector<CodeStmt>;

struct CodeBranch {
  CodeExprPtr cond;  // null for a trailing else
  StmtList body;
};

struct CodeStmt {
  enum class Kind { Assign, If, Return, Raise, Warn, ExprStmt, Pass };

  Kind kind = Kind::Pass;
  int line = 0;
  CodeExprPtr target;              // Assign (Name or Subscript)
  CodeExprPtr value;               // Assign rhs / Return / Raise / ExprStmt
  std::vector<CodeBranch> branches;  // If

  // Normalized-return bookkeeping.
  bool error_end = false;
  bool synthetic = false;               // the appended final return
  std::vector<std::string> payload;     // params tagged on the return
  bool opaque_store = false;            // came from `base[...] = value`
  std::vector<std::string> extra_uses;  // names from symbolized subtrees
};

constexpr long long kStringInternBase = 1'000'000;

struct FunctionModel {
  std::string name;
  std::vector<std::string> params;  // includes synthetic call_* after normalize
  StmtList body;
  std::map<std::string, long long> string_table;  // text -> id, injective
  std::set<std::string> nullable_params;  // truthiness lowers to != None
  bool normalized = false;
  bool slice_trivial = false;  // slice_under_condition could not prune
};

enum class TerminalKind { Normal, ErrorEnd };

struct PathConstraint {
  std::vector<Expression> atoms;  // mutually consistent conjunction
  TerminalKind terminal = TerminalKind::Normal;
  std::map<std::string, Value> bindings;  // concrete assignment snapshot
};

struct EnumeratedPaths {
  std::vector<PathConstraint> paths;
  bool truncated = false;
};

struct UseSite {
  enum class Kind { Direct, CopySource, FinalReturn };
  int stmt_id = 0;
  Kind kind = Kind::Direct;
};

struct DuChain {
  struct Entry {
    std::vector<int> defs;  // statement ids; -1 is the parameter entry
    std::vector<UseSite> uses;
  };
  std::map<std::string, Entry> vars;
  // copy edges source -> targets, from bare `y = x` assignments
  std::map<std::string, std::set<std::string>> copies;
};

// Parse one function definition written in the supported subset. A common
// leading indent (method bodies) is stripped first.
FunctionModel parse_function(std::string_view source);

// Apply the normalization rewrites. nullable_hints selects `!= None`
// truthiness lowering for the named parameters; everything else lowers to
// `!= False`.
FunctionModel normalize_function(const FunctionModel& m,
                                 const std::set<std::string>& nullable_hints = {});

EnumeratedPaths enumerate_paths(const FunctionModel& m, size_t max_paths = 256);

DuChain build_du_chains(const FunctionModel& m);

FunctionModel slice_under_condition(const FunctionModel& m,
                                    const ConstraintPtr& cond);

bool is_used(const std::string& param, const FunctionModel& m, bool transitive);

// Normalized conditions of every top-level branch, with overlapping earlier
// branches excluded, so each entry describes exactly when its branch runs.
std::vector<ConstraintPtr> branch_conditions(const FunctionModel& m);

// Top-level branch conditions under which `param` has no use in the
// conditional slice. A parameter with no use at all yields the single
// always-true condition.
std::vector<ConstraintPtr> ignored_conditions(const std::string& param,
                                              const FunctionModel& m);

// Debug dump, one line per path: `terminal | atom ^ atom ^ ...`.
std::string dump_paths(const EnumeratedPaths& ep);

// Convert a normalized guard expression to a constraint over parameters.
// Exposed for the checker's evidence rendering.
ConstraintPtr guard_to_constraint(const CodeExprPtr& guard,
                                  const FunctionModel& m);

}  // namespace cdi
