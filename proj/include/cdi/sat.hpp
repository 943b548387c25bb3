// Satisfiability of crisp constraints over typed parameters. The theory is
// quantifier-free comparisons of a variable against a literal (numbers with
// ordering, strings and booleans with equality, None as a distinguished
// domain element). Decided by finite-domain enumeration: string domains are
// the mentioned literals plus one fresh "other" value, numeric domains are
// region representatives around the mentioned literals.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdi/constraint.hpp"

namespace cdi {

enum class BaseSort { Num, Str, Bool };

struct Sort {
  BaseSort base = BaseSort::Str;
  bool maybe_none = false;
  bool operator==(const Sort&) const = default;
};

struct TypedVar {
  std::string name;
  Sort sort;
};

struct SatQuery {
  std::vector<TypedVar> vars;
  ConstraintPtr formula;  // crisp leaves only
};

// One element of a variable's finite domain; doubles as a witness value.
struct DomainValue {
  enum class Kind { None, Num, Str, OtherStr, Bool };
  Kind kind = Kind::None;
  double num = 0.0;
  std::string str;
  bool truth = false;

  static DomainValue none();
  static DomainValue number(double v);
  static DomainValue string(std::string s);
  static DomainValue other_string();
  static DomainValue boolean(bool b);

  std::string print() const;
};

struct SatResult {
  bool sat = false;
  std::map<std::string, DomainValue> model;  // witness when sat
};

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Derive typed variables from the atoms of one or more formulas. The same
// name compared against two incompatible literal kinds is a SortError.
std::vector<TypedVar> infer_vars(const std::vector<ConstraintPtr>& formulas);

SatResult check_sat(const SatQuery& q);

// Convenience: conjunction of parts, with sorts inferred from the parts.
SatResult check_sat_conjunction(const std::vector<ConstraintPtr>& parts);

// Evaluate one atom under a concrete value; shared with the brute-force
// interpreters in the test suite via this public entry point.
bool eval_atom(const Expression& e, const DomainValue& v);

}  // namespace cdi
