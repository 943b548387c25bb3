#include "cdi/fcl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdi/sat.hpp"

namespace cdi {

size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t up = row[j];
      size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({row[j - 1] + 1, up + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

double nld(std::string_view a, std::string_view b) {
  size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) /
                   static_cast<double>(longest);
}

double op_similarity(Operator a, Operator b) {
  OperatorEmbedding ea = operator_embedding(a);
  OperatorEmbedding eb = operator_embedding(b);
  const double va[5] = {double(ea.c), double(ea.e), double(ea.g), double(ea.l),
                        double(ea.n)};
  const double vb[5] = {double(eb.c), double(eb.e), double(eb.g), double(eb.l),
                        double(eb.n)};
  double dot = 0, na = 0, nb = 0;
  for (int i = 0; i < 5; ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  // sqrt of the product keeps round-trip pairs exact (e.g. norms of 2 and 2
  // give sqrt(4) = 2, so opposite comparisons score exactly 0.5)
  return dot / std::sqrt(na * nb);
}

double expr_similarity(const Expression& a, const Expression& b,
                       const FclConfig& cfg) {
  double alpha = cfg.alpha();
  return alpha * nld(a.param, b.param) + cfg.beta * op_similarity(a.op, b.op) +
         alpha * nld(a.value.similarity_text(), b.value.similarity_text());
}

namespace {

double best_expr_similarity(const Expression& a,
                            const std::vector<Expression>& env,
                            const FclConfig& cfg) {
  double best = 0.0;
  for (const auto& e : env) best = std::max(best, expr_similarity(a, e, cfg));
  return best;
}

double best_name_similarity(const std::string& param,
                            const std::vector<Expression>& env) {
  double best = 0.0;
  for (const auto& e : env) best = std::max(best, nld(param, e.param));
  return best;
}

double rho(const ConstraintPtr& c, const std::vector<Expression>& env,
           const FclConfig& cfg) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
      if (c->expr().param == "__always__") return 1.0;
      return best_expr_similarity(c->expr(), env, cfg);
    case Constraint::Kind::Fuzzy:
      return best_name_similarity(c->pred_param(), env);
    case Constraint::Kind::Not:
      return 1.0 - rho(c->child(), env, cfg);
    case Constraint::Kind::And:
      return std::min(rho(c->lhs(), env, cfg), rho(c->rhs(), env, cfg));
    case Constraint::Kind::Or:
      return std::max(rho(c->lhs(), env, cfg), rho(c->rhs(), env, cfg));
    case Constraint::Kind::Implies:
      return std::max(1.0 - rho(c->lhs(), env, cfg), rho(c->rhs(), env, cfg));
  }
  return 0.0;
}

// Rewrite every leaf of c to its most similar path atom (first such atom on
// ties). The result ranges over the path's own vocabulary, so conjoining it
// with the path constraint is a well-sorted query.
ConstraintPtr align_to_env(const ConstraintPtr& c,
                           const std::vector<Expression>& env,
                           const FclConfig& cfg) {
  switch (c->kind()) {
    case Constraint::Kind::Atom: {
      if (c->expr().param == "__always__") return c;
      size_t best = 0;
      double best_sim = -1.0;
      for (size_t i = 0; i < env.size(); ++i) {
        double s = expr_similarity(c->expr(), env[i], cfg);
        if (s > best_sim) {
          best_sim = s;
          best = i;
        }
      }
      Expression e = c->expr();
      e.param = env[best].param;
      // keep the asserted operator and value; only the name is aligned
      return Constraint::atom(std::move(e));
    }
    case Constraint::Kind::Fuzzy: {
      size_t best = 0;
      double best_sim = -1.0;
      for (size_t i = 0; i < env.size(); ++i) {
        double s = nld(c->pred_param(), env[i].param);
        if (s > best_sim) {
          best_sim = s;
          best = i;
        }
      }
      // a fuzzy leaf contributes no crisp content; stand in with the
      // closest atom so satisfiability stays defined
      return Constraint::atom(env[best]);
    }
    case Constraint::Kind::Not:
      return Constraint::negation(align_to_env(c->child(), env, cfg));
    case Constraint::Kind::And:
      return Constraint::conj(align_to_env(c->lhs(), env, cfg),
                              align_to_env(c->rhs(), env, cfg));
    case Constraint::Kind::Or:
      return Constraint::disj(align_to_env(c->lhs(), env, cfg),
                              align_to_env(c->rhs(), env, cfg));
    case Constraint::Kind::Implies:
      return Constraint::implies(align_to_env(c->lhs(), env, cfg),
                                 align_to_env(c->rhs(), env, cfg));
  }
  return c;
}

}  // namespace

double constraint_similarity(const ConstraintPtr& c,
                             const std::vector<Expression>& env,
                             const FclConfig& cfg) {
  if (env.empty())
    throw EmptyEnvironmentError("constraint similarity needs a non-empty "
                                "expression environment");
  return rho(c, env, cfg);
}

Membership membership(const ConstraintPtr& c,
                      const std::vector<PathConstraint>& paths,
                      const FclConfig& cfg) {
  Membership m;
  double total = 0.0;
  for (size_t i = 0; i < paths.size(); ++i) {
    const PathConstraint& path = paths[i];
    if (path.atoms.empty()) continue;

    PathScore ps;
    ps.path_index = i;
    ps.rho = rho(c, path.atoms, cfg);

    ConstraintPtr aligned = align_to_env(c, path.atoms, cfg);
    std::vector<ConstraintPtr> parts{aligned};
    for (const auto& a : path.atoms) parts.push_back(Constraint::atom(a));
    bool sat;
    try {
      sat = check_sat_conjunction(parts).sat;
    } catch (const SortError&) {
      // aligned constraint clashes with the path's sorts: treat as
      // unsatisfiable together
      sat = false;
    }
    ps.p = path.terminal == TerminalKind::ErrorEnd ? !sat : sat;
    ps.score = ps.p ? ps.rho : 1.0 - ps.rho;
    total += ps.score;
    m.per_path.push_back(std::move(ps));
  }
  if (m.per_path.empty())
    throw EmptyEnvironmentError(
        "membership needs at least one path with a non-empty constraint");
  m.value = total / static_cast<double>(m.per_path.size());
  return m;
}

}  // namespace cdi
