#include "cdi/checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "cdi/sat.hpp"

namespace cdi {

const char* status_text(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Consistent: return "consistent";
    case Verdict::Status::Inconsistent: return "inconsistent";
    case Verdict::Status::Unresolved: return "unresolved";
  }
  return "unresolved";
}

const char* kind_text(Verdict::Kind k) {
  return k == Verdict::Kind::Incorrectness ? "incorrectness" : "incompleteness";
}

namespace {

std::vector<size_t> relevant_indices(const ConstraintPtr& c,
                                     const std::vector<PathConstraint>& paths,
                                     const CheckConfig& cfg) {
  std::vector<size_t> out;
  if (!cfg.relevance_filter) {
    for (size_t i = 0; i < paths.size(); ++i) out.push_back(i);
    return out;
  }
  std::set<std::string> params;
  for (const auto& p : constraint_params(c)) params.insert(p);
  for (size_t i = 0; i < paths.size(); ++i) {
    bool hit = false;
    for (const auto& a : paths[i].atoms) hit = hit || params.count(a.param);
    if (hit) out.push_back(i);
  }
  return out;
}

std::string describe_path(size_t index, const PathConstraint& p) {
  std::ostringstream os;
  os << "path " << index << " ("
     << (p.terminal == TerminalKind::ErrorEnd ? "error end" : "normal") << ")";
  for (size_t i = 0; i < p.atoms.size(); ++i)
    os << (i == 0 ? ": " : " ^ ")
       << print_constraint(Constraint::atom(p.atoms[i]));
  return os.str();
}

bool joint_sat(const ConstraintPtr& c, const PathConstraint& p) {
  std::vector<ConstraintPtr> parts{c};
  for (const auto& a : p.atoms) parts.push_back(Constraint::atom(a));
  try {
    return check_sat_conjunction(parts).sat;
  } catch (const SortError&) {
    // value kinds clash between doc and code: nothing satisfies both
    return false;
  }
}

}  // namespace

Verdict check_crisp(const ConstraintPtr& c,
                    const std::vector<PathConstraint>& paths,
                    const CheckConfig& cfg) {
  if (has_fuzzy_pred(c))
    throw std::invalid_argument(
        "check_crisp requires a crisp constraint; use check_usage_predicate");
  ConstraintPtr n = normalize(c);
  Verdict v;
  v.constraint = c;

  std::vector<size_t> rel = relevant_indices(n, paths, cfg);
  if (rel.empty()) {
    v.status = Verdict::Status::Unresolved;
    v.evidence.push_back("no relevant paths");
    return v;
  }

  std::set<std::string> cparams;
  for (const auto& p : constraint_params(n)) cparams.insert(p);

  std::vector<std::string> violations;
  bool saw_full_normal = false;
  bool partial_normal_sat = false;
  bool saw_partial_normal = false;

  for (size_t i : rel) {
    const PathConstraint& p = paths[i];
    bool sat = joint_sat(n, p);
    if (p.terminal == TerminalKind::ErrorEnd) {
      // the doc constraint must rule out every failing execution
      if (sat) violations.push_back(describe_path(i, p));
      continue;
    }
    std::set<std::string> bound;
    for (const auto& a : p.atoms) bound.insert(a.param);
    bool full = std::all_of(cparams.begin(), cparams.end(),
                            [&](const std::string& q) { return bound.count(q); });
    if (full) {
      saw_full_normal = true;
      if (!sat) violations.push_back(describe_path(i, p));
    } else {
      saw_partial_normal = true;
      partial_normal_sat = partial_normal_sat || sat;
    }
  }
  if (!saw_full_normal && saw_partial_normal && !partial_normal_sat)
    violations.push_back("no surviving normal path admits the constraint");

  if (violations.empty()) {
    v.status = Verdict::Status::Consistent;
  } else {
    v.status = Verdict::Status::Inconsistent;
    v.kind = Verdict::Kind::Incorrectness;
    v.evidence = std::move(violations);
  }
  return v;
}

Verdict check_fuzzy(const ConstraintPtr& c,
                    const std::vector<PathConstraint>& paths,
                    const CheckConfig& cfg) {
  ConstraintPtr n = normalize(c);
  std::vector<size_t> rel = relevant_indices(n, paths, cfg);
  if (rel.empty()) {
    Verdict v;
    v.constraint = c;
    v.status = Verdict::Status::Unresolved;
    v.evidence.push_back("no relevant paths");
    return v;
  }
  std::vector<PathConstraint> rel_paths;
  rel_paths.reserve(rel.size());
  for (size_t i : rel) rel_paths.push_back(paths[i]);

  bool verbatim = !has_fuzzy_pred(n);
  if (verbatim) {
    for (const Expression* leaf : atom_leaves(n)) {
      if (leaf->param == "__always__") continue;
      bool found = false;
      for (const auto& p : rel_paths)
        for (const auto& a : p.atoms) found = found || a == *leaf;
      if (!found) {
        verbatim = false;
        break;
      }
    }
  }
  if (verbatim) {
    CheckConfig crisp_cfg = cfg;
    crisp_cfg.relevance_filter = false;  // already filtered
    Verdict v = check_crisp(n, rel_paths, crisp_cfg);
    v.constraint = c;
    return v;
  }

  Verdict v;
  v.constraint = c;
  Membership mu;
  try {
    mu = membership(n, rel_paths, cfg.fcl);
  } catch (const EmptyEnvironmentError&) {
    v.status = Verdict::Status::Unresolved;
    v.evidence.push_back("no path carries a constraint environment");
    return v;
  }
  v.membership = mu;
  if (mu.value >= cfg.fcl.tau) {
    v.status = Verdict::Status::Consistent;
  } else {
    v.status = Verdict::Status::Inconsistent;
    v.kind = Verdict::Kind::Incorrectness;
    for (const auto& ps : mu.per_path) {
      std::ostringstream os;
      size_t original = rel[ps.path_index];
      os << "path " << original << ": rho=" << ps.rho
         << " holds=" << (ps.p ? "yes" : "no") << " score=" << ps.score;
      v.evidence.push_back(os.str());
    }
  }
  return v;
}

namespace {

// Split a usage constraint into its crisp antecedent and fuzzy leaf.
// Accepted shapes: F, A -> F, and the normalized form (not A) v F.
bool split_usage(const ConstraintPtr& c, ConstraintPtr& antecedent,
                 ConstraintPtr& leaf) {
  if (c->kind() == Constraint::Kind::Fuzzy) {
    antecedent = always_true();
    leaf = c;
    return true;
  }
  if (c->kind() == Constraint::Kind::Implies &&
      c->rhs()->kind() == Constraint::Kind::Fuzzy &&
      !has_fuzzy_pred(c->lhs())) {
    antecedent = c->lhs();
    leaf = c->rhs();
    return true;
  }
  if (c->kind() == Constraint::Kind::Or) {
    const ConstraintPtr& l = c->lhs();
    const ConstraintPtr& r = c->rhs();
    if (r->kind() == Constraint::Kind::Fuzzy && !has_fuzzy_pred(l)) {
      antecedent = normalize(Constraint::negation(l));
      leaf = r;
      return true;
    }
    if (l->kind() == Constraint::Kind::Fuzzy && !has_fuzzy_pred(r)) {
      antecedent = normalize(Constraint::negation(r));
      leaf = l;
      return true;
    }
  }
  return false;
}

}  // namespace

Verdict check_usage_predicate(const ConstraintPtr& c, const FunctionModel& m,
                              const CheckConfig&) {
  Verdict v;
  v.constraint = c;
  v.function = m.name;

  ConstraintPtr antecedent, leaf;
  if (!split_usage(c, antecedent, leaf))
    throw std::invalid_argument(
        "usage check expects a single fuzzy-predicate consequent");
  const std::string& x = leaf->pred_param();
  PredKind kind = leaf->pred_kind();

  bool known = false;
  for (const auto& p : m.params) known = known || p == x;
  if (!known) {
    v.status = Verdict::Status::Unresolved;
    v.evidence.push_back("unknown parameter '" + x + "'");
    return v;
  }

  ConstraintPtr a_norm = normalize(antecedent);
  FunctionModel slice = slice_under_condition(m, a_norm);
  bool used_under_a = is_used(x, slice, true);
  bool incorrect =
      kind == PredKind::Ignored ? used_under_a : !used_under_a;
  if (incorrect) {
    v.status = Verdict::Status::Inconsistent;
    v.kind = Verdict::Kind::Incorrectness;
    v.evidence.push_back("parameter '" + x + "' is " +
                         (used_under_a ? "used" : "not used") + " under " +
                         print_constraint(a_norm));
    return v;
  }

  // conditions where the documented predicate also holds
  std::vector<ConstraintPtr> holds;
  if (kind == PredKind::Ignored) {
    holds = ignored_conditions(x, m);
  } else {
    std::vector<ConstraintPtr> branches = branch_conditions(m);
    if (branches.empty() && is_used(x, m, true)) {
      holds.push_back(always_true());
    } else {
      for (const auto& b : branches) {
        FunctionModel sliced = slice_under_condition(m, b);
        if (is_used(x, sliced, true)) holds.push_back(b);
      }
    }
  }

  ConstraintPtr not_a = normalize(Constraint::negation(antecedent));
  std::vector<std::string> uncovered;
  for (const auto& b : holds) {
    bool outside;
    try {
      outside = check_sat_conjunction({b, not_a}).sat;
    } catch (const SortError&) {
      outside = false;
    }
    if (outside) uncovered.push_back(print_constraint(b));
  }
  if (!uncovered.empty()) {
    v.status = Verdict::Status::Inconsistent;
    v.kind = Verdict::Kind::Incompleteness;
    v.evidence = std::move(uncovered);
    return v;
  }

  v.status = Verdict::Status::Consistent;
  return v;
}

ReportSummary classify(const std::vector<Verdict>& verdicts) {
  ReportSummary s;
  s.order.resize(verdicts.size());
  for (size_t i = 0; i < verdicts.size(); ++i) {
    s.order[i] = i;
    switch (verdicts[i].status) {
      case Verdict::Status::Consistent: ++s.consistent; break;
      case Verdict::Status::Unresolved: ++s.unresolved; break;
      case Verdict::Status::Inconsistent:
        ++s.inconsistent;
        if (verdicts[i].kind == Verdict::Kind::Incompleteness)
          ++s.incompleteness;
        else
          ++s.incorrectness;
        break;
    }
  }
  auto mu_of = [&](size_t i) {
    return verdicts[i].membership ? verdicts[i].membership->value
                                  : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](size_t a, size_t b) { return mu_of(a) < mu_of(b); });
  return s;
}

}  // namespace cdi
