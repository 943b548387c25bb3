#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cdi/checker.hpp"
#include "cdi/code_model.hpp"

using namespace cdi;

namespace {

const char* kGuardedPair =
    "def lars_path(X, y, Gram=None, max_iter=500):\n"
    "    if X is None and Gram is not None:\n"
    "        raise ValueError(\"X cannot be None if Gram is not None\")\n";

std::vector<PathConstraint> guarded_pair_paths() {
  FunctionModel m =
      normalize_function(parse_function(kGuardedPair), {"X", "Gram"});
  return enumerate_paths(m).paths;
}

Verdict crisp(const char* constraint,
              const std::vector<PathConstraint>& paths) {
  return check_crisp(parse_constraint(constraint), paths);
}

Verdict fuzzy(const char* constraint,
              const std::vector<PathConstraint>& paths) {
  return check_fuzzy(parse_constraint(constraint), paths);
}

}  // namespace

TEST_CASE("crisp: constraint matching the guard is consistent") {
  auto paths = guarded_pair_paths();
  Verdict v = crisp("(X = None) -> (Gram = None)", paths);
  CHECK(v.status == Verdict::Status::Consistent);
  CHECK_FALSE(v.kind.has_value());
}

TEST_CASE("crisp: constraint admitting an error path is incorrect") {
  auto paths = guarded_pair_paths();
  Verdict v = crisp("(X = None) -> (Gram != None)", paths);
  CHECK(v.status == Verdict::Status::Inconsistent);
  REQUIRE(v.kind.has_value());
  CHECK(*v.kind == Verdict::Kind::Incorrectness);
  CHECK_FALSE(v.evidence.empty());
  // the evidence names the admitted error path
  bool names_error = false;
  for (const auto& e : v.evidence)
    names_error = names_error || e.find("error end") != std::string::npos;
  CHECK(names_error);
}

TEST_CASE("crisp: no relevant paths yields unresolved") {
  auto paths = guarded_pair_paths();
  Verdict v = crisp("max_iter > 0", paths);
  CHECK(v.status == Verdict::Status::Unresolved);
}

TEST_CASE("crisp: relevance filter can be disabled") {
  auto paths = guarded_pair_paths();
  CheckConfig cfg;
  cfg.relevance_filter = false;
  Verdict v = check_crisp(parse_constraint("max_iter > 0"), paths, cfg);
  // with every path in scope the check can actually run
  CHECK(v.status != Verdict::Status::Unresolved);
}

TEST_CASE("crisp: full-binding normal paths are checked universally") {
  // two fully-binding normal branches; the doc only matches one of them
  const char* src =
      "def f(mode):\n"
      "    if mode == \"a\":\n"
      "        return 1\n"
      "    elif mode == \"b\":\n"
      "        return 2\n"
      "    else:\n"
      "        raise ValueError(\"bad mode\")\n";
  auto paths = enumerate_paths(normalize_function(parse_function(src))).paths;
  Verdict v = crisp("mode = \"a\"", paths);
  // the mode="b" normal path contradicts the constraint
  CHECK(v.status == Verdict::Status::Inconsistent);
  Verdict ok = crisp("(mode = \"a\") v (mode = \"b\")", paths);
  CHECK(ok.status == Verdict::Status::Consistent);
}

TEST_CASE("crisp rejects fuzzy predicates") {
  auto paths = guarded_pair_paths();
  CHECK_THROWS_AS(crisp("ignore(Gram)", paths), std::invalid_argument);
}

TEST_CASE("fuzzy: verbatim leaves fall back to the crisp rule") {
  auto paths = guarded_pair_paths();
  Verdict v = fuzzy("(X = None) -> (Gram = None)", paths);
  CHECK(v.status == Verdict::Status::Consistent);
  // crisp fallback carries no membership value
  CHECK_FALSE(v.membership.has_value());

  Verdict bad = fuzzy("(X = None) -> (Gram != None)", paths);
  CHECK(bad.status == Verdict::Status::Inconsistent);
  CHECK_FALSE(bad.membership.has_value());
}

TEST_CASE("fuzzy: a near-miss name is accepted by membership") {
  auto paths = guarded_pair_paths();
  Verdict v = fuzzy("(X = None) -> (Grom = None)", paths);
  CHECK(v.status == Verdict::Status::Consistent);
  REQUIRE(v.membership.has_value());
  CHECK(v.membership->value >= 0.5);
  CHECK(v.membership->value <= 1.0);
}

TEST_CASE("fuzzy: a contradicting constraint scores below the threshold") {
  const char* src =
      "def f(x):\n"
      "    if x < 3:\n"
      "        raise ValueError(\"too small\")\n"
      "    return x\n";
  auto paths = enumerate_paths(normalize_function(parse_function(src))).paths;
  // `x < 4` is not a verbatim leaf, so the membership route is taken; it
  // admits the raising region, which costs both paths
  Verdict v = fuzzy("x < 4", paths);
  CHECK(v.status == Verdict::Status::Inconsistent);
  REQUIRE(v.membership.has_value());
  CHECK(v.membership->value < 0.5);
  CHECK_FALSE(v.evidence.empty());
}

TEST_CASE("fuzzy: a constraint with no exactly-named parameter is unresolved") {
  const char* src =
      "def f(x):\n"
      "    if x < 3:\n"
      "        raise ValueError(\"too small\")\n"
      "    return x\n";
  auto paths = enumerate_paths(normalize_function(parse_function(src))).paths;
  Verdict v = fuzzy("xq < 3", paths);
  CHECK(v.status == Verdict::Status::Unresolved);
}

TEST_CASE("fuzzy: tau is configurable") {
  auto paths = guarded_pair_paths();
  CheckConfig strict;
  strict.fcl.tau = 0.999;
  Verdict v = check_fuzzy(parse_constraint("(X = None) -> (Grom = None)"),
                          paths, strict);
  CHECK(v.status == Verdict::Status::Inconsistent);
}

namespace {

const char* kDispatch =
    "def fit(self, X, y=None):\n"
    "    if self.affinity == \"nearest_neighbors\":\n"
    "        self.graph = kneighbors_graph(X, self.n_neighbors)\n"
    "    elif self.affinity == \"precomputed\":\n"
    "        self.graph = X\n"
    "    else:\n"
    "        self.graph = pairwise_kernels(X, self.gamma)\n"
    "    return self\n";

FunctionModel dispatch_model() {
  return normalize_function(parse_function(kDispatch));
}

}  // namespace

TEST_CASE("usage: documented ignore branch that omits other ignore branches") {
  FunctionModel m = dispatch_model();
  Verdict v = check_usage_predicate(
      parse_constraint("(affinity = \"nearest_neighbors\") -> (ignore(gamma))"),
      m);
  // gamma is indeed unused under the documented branch, but it is also
  // unused under precomputed, which the doc does not mention
  CHECK(v.status == Verdict::Status::Inconsistent);
  REQUIRE(v.kind.has_value());
  CHECK(*v.kind == Verdict::Kind::Incompleteness);
  CHECK_FALSE(v.evidence.empty());
}

TEST_CASE("usage: covering every ignoring branch is consistent") {
  FunctionModel m = dispatch_model();
  Verdict v = check_usage_predicate(
      parse_constraint("((affinity = \"nearest_neighbors\") v "
                       "(affinity = \"precomputed\")) -> (ignore(gamma))"),
      m);
  CHECK(v.status == Verdict::Status::Consistent);
}

TEST_CASE("usage: claiming ignored while the slice still uses it") {
  FunctionModel m = dispatch_model();
  Verdict v = check_usage_predicate(
      parse_constraint("(affinity = \"rbf\") -> (ignore(gamma))"), m);
  CHECK(v.status == Verdict::Status::Inconsistent);
  REQUIRE(v.kind.has_value());
  CHECK(*v.kind == Verdict::Kind::Incorrectness);
}

TEST_CASE("usage: bare specified predicate over an unused parameter") {
  FunctionModel m = normalize_function(parse_function(
      "def f(x, y):\n"
      "    return x\n"));
  Verdict used = check_usage_predicate(parse_constraint("specified(x)"), m);
  CHECK(used.status == Verdict::Status::Consistent);
  Verdict unused = check_usage_predicate(parse_constraint("specified(y)"), m);
  CHECK(unused.status == Verdict::Status::Inconsistent);
  CHECK(*unused.kind == Verdict::Kind::Incorrectness);
}

TEST_CASE("usage: unknown parameter is unresolved") {
  FunctionModel m = dispatch_model();
  Verdict v = check_usage_predicate(parse_constraint("ignore(nonesuch)"), m);
  CHECK(v.status == Verdict::Status::Unresolved);
}

TEST_CASE("usage: non-usage shapes are rejected") {
  FunctionModel m = dispatch_model();
  CHECK_THROWS_AS(
      check_usage_predicate(
          parse_constraint("(ignore(gamma)) ^ (ignore(degree))"), m),
      std::invalid_argument);
}

TEST_CASE("classify: totals and suspicious-first ordering") {
  auto make = [](Verdict::Status s, std::optional<double> mu,
                 std::optional<Verdict::Kind> k = std::nullopt) {
    Verdict v;
    v.status = s;
    v.kind = k;
    if (mu) {
      Membership m;
      m.value = *mu;
      v.membership = m;
    }
    return v;
  };
  std::vector<Verdict> verdicts{
      make(Verdict::Status::Consistent, 0.9),
      make(Verdict::Status::Inconsistent, 0.2, Verdict::Kind::Incorrectness),
      make(Verdict::Status::Unresolved, std::nullopt),
      make(Verdict::Status::Inconsistent, 0.4, Verdict::Kind::Incompleteness),
  };
  ReportSummary s = classify(verdicts);
  CHECK(s.consistent == 1);
  CHECK(s.inconsistent == 2);
  CHECK(s.unresolved == 1);
  CHECK(s.incorrectness == 1);
  CHECK(s.incompleteness == 1);
  REQUIRE(s.order.size() == 4);
  CHECK(s.order[0] == 1);  // mu = 0.2 first
  CHECK(s.order[1] == 3);  // mu = 0.4
  CHECK(s.order[2] == 0);  // mu = 0.9
  CHECK(s.order[3] == 2);  // no membership sorts last
}

TEST_CASE("classify on an empty list is all zeros") {
  ReportSummary s = classify({});
  CHECK(s.consistent == 0);
  CHECK(s.inconsistent == 0);
  CHECK(s.unresolved == 0);
  CHECK(s.order.empty());
}
