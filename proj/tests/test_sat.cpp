#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cdi/sat.hpp"

using namespace cdi;

namespace {

ConstraintPtr C(const char* s) { return parse_constraint(s); }

bool sat(const char* s) {
  SatQuery q;
  q.formula = C(s);
  q.vars = infer_vars({q.formula});
  return check_sat(q).sat;
}

}  // namespace

TEST_CASE("basic satisfiable and unsatisfiable formulas") {
  CHECK(sat("x = 1"));
  CHECK(sat("(x = 1) v (x = 2)"));
  CHECK_FALSE(sat("(x = 1) ^ (x = 2)"));
  CHECK_FALSE(sat("(x < 1) ^ (x > 1)"));
  CHECK(sat("(x <= 1) ^ (x >= 1)"));
  CHECK_FALSE(sat("(x <= 1) ^ (x > 1)"));
  CHECK_FALSE(sat("(x = \"a\") ^ (x = \"b\")"));
  CHECK(sat("(x != \"a\") ^ (x != \"b\")"));  // needs the fresh other-string
  CHECK_FALSE(sat("(flag = True) ^ (flag = False)"));
  CHECK_FALSE(sat("! (x = 1 v x != 1)"));
}

TEST_CASE("numeric regions: strict bounds need midpoints and outer points") {
  CHECK(sat("(x > 1) ^ (x < 2)"));       // midpoint 1.5
  CHECK_FALSE(sat("(x > 1) ^ (x < 1)"));
  CHECK(sat("(x < 1)"));                 // point below the smallest literal
  CHECK(sat("(x > 100)"));               // point above the largest literal
  CHECK(sat("(x > 1) ^ ((x < 3) ^ (x != 2))"));
  CHECK_FALSE(sat("(x >= 2) ^ ((x <= 2) ^ (x != 2))"));
}

TEST_CASE("None participates only when a variable may be None") {
  // Comparing against None puts None in the domain.
  CHECK(sat("x = None"));
  CHECK(sat("(x != None) ^ (x = \"a\")"));
  CHECK_FALSE(sat("(x = None) ^ (x = \"a\")"));
  // A None-only variable is treated as a nullable string.
  CHECK(sat("(x != None)"));
}

TEST_CASE("mixed literal kinds for one variable raise SortError") {
  CHECK_THROWS_AS(sat("(x = 1) ^ (x = \"a\")"), SortError);
  CHECK_THROWS_AS(sat("(x = True) ^ (x = 1)"), SortError);
  CHECK_THROWS_AS(sat("(x = \"a\") ^ (x = False)"), SortError);
}

TEST_CASE("order comparisons against unordered values never hold") {
  CHECK_FALSE(sat("x < \"a\""));
  CHECK_FALSE(sat("x >= True"));
  CHECK(sat("! (x < \"a\")"));
}

TEST_CASE("witness model satisfies the formula") {
  SatQuery q;
  q.formula = C("((x > 1) ^ (x < 4)) ^ (y = \"lars\")");
  q.vars = infer_vars({q.formula});
  SatResult r = check_sat(q);
  REQUIRE(r.sat);
  auto leaf = [&](const Expression& e) {
    return eval_atom(e, r.model.at(e.param));
  };
  CHECK(eval_constraint(q.formula, leaf));
}

TEST_CASE("check_sat_conjunction joins parts with shared variables") {
  CHECK(check_sat_conjunction({C("x > 1"), C("x < 3")}).sat);
  CHECK_FALSE(check_sat_conjunction({C("x > 1"), C("x < 0")}).sat);
  CHECK_FALSE(
      check_sat_conjunction({C("a = \"m\""), C("! (a = \"m\")")}).sat);
}

TEST_CASE("infer_vars merges sorts across formulas") {
  auto vars = infer_vars({C("x = 1"), C("(x != None) ^ (y = True)")});
  REQUIRE(vars.size() == 2);
  for (const auto& v : vars) {
    if (v.name == "x") {
      CHECK(v.sort.base == BaseSort::Num);
      CHECK(v.sort.maybe_none);
    } else {
      CHECK(v.name == "y");
      CHECK(v.sort.base == BaseSort::Bool);
      CHECK_FALSE(v.sort.maybe_none);
    }
  }
}

TEST_CASE("tautology atom is satisfiable and its negation is not") {
  CHECK(check_sat_conjunction({always_true()}).sat);
  CHECK_FALSE(
      check_sat_conjunction({Constraint::negation(always_true())}).sat);
}

namespace {

// Independent oracle: exhaustive truth search over an explicit universe
// dense enough for the literal set used by random_formula: every literal in
// {-1,0,1,2,3}, every midpoint of adjacent literals, and a point beyond each
// end. Str vars range over the literals plus one fresh value, Bool over
// {True,False}; None joins the universe only for nullable vars.
std::vector<DomainValue> oracle_universe(const Sort& s) {
  std::vector<DomainValue> out;
  if (s.base == BaseSort::Num)
    for (double v : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0})
      out.push_back(DomainValue::number(v));
  else if (s.base == BaseSort::Str)
    for (const char* v : {"a", "b", "z", "fresh"})
      out.push_back(DomainValue::string(v));
  else
    for (bool v : {false, true}) out.push_back(DomainValue::boolean(v));
  if (s.maybe_none) out.push_back(DomainValue::none());
  return out;
}

bool oracle_sat(const SatQuery& q) {
  std::vector<std::vector<DomainValue>> domains;
  for (const auto& v : q.vars) domains.push_back(oracle_universe(v.sort));
  std::vector<size_t> idx(q.vars.size(), 0);
  while (true) {
    std::map<std::string, DomainValue> env;
    for (size_t i = 0; i < q.vars.size(); ++i)
      env.emplace(q.vars[i].name, domains[i][idx[i]]);
    bool ok = eval_constraint(q.formula, [&](const Expression& e) {
      return eval_atom(e, env.at(e.param));
    });
    if (ok) return true;
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == domains[k].size()) idx[k++] = 0;
    if (k == idx.size()) return false;
  }
}

// Random formulas whose literals stay inside the oracle universe so the
// exhaustive search is a complete decision procedure for them.
ConstraintPtr random_formula(std::mt19937_64& rng,
                             const std::vector<TypedVar>& vars, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth == 0 || pick(3) == 0) {
    const TypedVar& v = vars[pick(static_cast<int>(vars.size()))];
    Expression e;
    e.param = v.name;
    if (v.sort.maybe_none && pick(4) == 0) {
      e.op = pick(2) ? Operator::Eq : Operator::Ne;
      e.value = Value::none();
    } else if (v.sort.base == BaseSort::Num) {
      static const Operator ops[] = {Operator::Lt, Operator::Gt, Operator::Le,
                                     Operator::Ge, Operator::Eq, Operator::Ne};
      e.op = ops[pick(6)];
      static const double lits[] = {-1, 0, 1, 2, 3};
      e.value = Value::num(lits[pick(5)]);
    } else if (v.sort.base == BaseSort::Str) {
      e.op = pick(2) ? Operator::Eq : Operator::Ne;
      static const char* lits[] = {"a", "b", "z"};
      e.value = Value::str(lits[pick(3)]);
    } else {
      e.op = pick(2) ? Operator::Eq : Operator::Ne;
      e.value = Value::boolean(pick(2) != 0);
    }
    return Constraint::atom(e);
  }
  switch (pick(4)) {
    case 0:
      return Constraint::negation(random_formula(rng, vars, depth - 1));
    case 1:
      return Constraint::conj(random_formula(rng, vars, depth - 1),
                              random_formula(rng, vars, depth - 1));
    case 2:
      return Constraint::disj(random_formula(rng, vars, depth - 1),
                              random_formula(rng, vars, depth - 1));
    default:
      return Constraint::implies(random_formula(rng, vars, depth - 1),
                                 random_formula(rng, vars, depth - 1));
  }
}

}  // namespace

TEST_CASE("solver agrees with exhaustive enumeration on random queries") {
  std::mt19937_64 rng(20260824);
  int disagreements = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<TypedVar> vars;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      Sort s;
      switch (rng() % 3) {
        case 0: s.base = BaseSort::Num; break;
        case 1: s.base = BaseSort::Str; break;
        default: s.base = BaseSort::Bool; break;
      }
      s.maybe_none = (rng() % 3) == 0;
      vars.push_back({std::string(1, static_cast<char>('p' + i)), s});
    }
    SatQuery q;
    q.vars = vars;
    q.formula = random_formula(rng, vars, 3);
    if (check_sat(q).sat != oracle_sat(q)) ++disagreements;
  }
  CHECK(disagreements == 0);
}
