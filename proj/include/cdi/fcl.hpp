// Fuzzy constraint logic: normalized Levenshtein similarity, operator
// cosine similarity, expression and constraint similarity, and the
// path-averaged membership function.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdi/code_model.hpp"
#include "cdi/constraint.hpp"

namespace cdi {

struct FclConfig {
  double beta = 1.0 / 3.0;  // operator weight; alpha = (1 - beta) / 2
  double tau = 0.5;         // membership decision threshold

  double alpha() const { return (1.0 - beta) / 2.0; }
};

struct EmptyEnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

size_t levenshtein(std::string_view a, std::string_view b);

// 1 - LD/max(len); both empty strings are maximally similar.
double nld(std::string_view a, std::string_view b);

// Cosine similarity of the five-characteristic operator embeddings.
double op_similarity(Operator a, Operator b);

double expr_similarity(const Expression& a, const Expression& b,
                       const FclConfig& cfg);

// Recursive similarity of a normalized constraint against a path's
// expression set: argmax over atoms for leaves, min for conjunction, max
// for disjunction, complement for negation. A fuzzy-predicate leaf scores
// the name similarity of its parameter against the closest environment
// parameter.
double constraint_similarity(const ConstraintPtr& c,
                             const std::vector<Expression>& env,
                             const FclConfig& cfg);

struct PathScore {
  size_t path_index = 0;
  double rho = 0.0;
  bool p = false;       // satisfiability predicate, flipped on error paths
  double score = 0.0;   // rho if p, else 1 - rho
};

struct Membership {
  double value = 0.0;
  std::vector<PathScore> per_path;
};

// Mean over paths of the per-path score (rho when the aligned constraint is
// jointly satisfiable with the path, 1 - rho otherwise). Paths with no atoms
// carry no environment and are skipped; if every path is empty this is an
// EmptyEnvironmentError.
Membership membership(const ConstraintPtr& c,
                      const std::vector<PathConstraint>& paths,
                      const FclConfig& cfg);

}  // namespace cdi
