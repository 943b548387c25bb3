// Consistency checking: crisp and fuzzy verdicts over enumerated paths,
// usage-predicate checks against the code model, and report summarization.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdi/code_model.hpp"
#include "cdi/constraint.hpp"
#include "cdi/fcl.hpp"

namespace cdi {

struct Verdict {
  enum class Status { Consistent, Inconsistent, Unresolved };
  enum class Kind { Incorrectness, Incompleteness };

  Status status = Status::Unresolved;
  std::optional<Kind> kind;            // set when Inconsistent
  std::optional<Membership> membership;
  std::vector<std::string> evidence;   // path indices / branch conditions
  ConstraintPtr constraint;
  std::string function;
};

const char* status_text(Verdict::Status s);
const char* kind_text(Verdict::Kind k);

struct CheckConfig {
  FclConfig fcl;
  bool fuzzy_enabled = true;
  bool relevance_filter = true;
  size_t max_paths = 256;
};

// Crisp rule: every relevant Normal path must be jointly satisfiable with c
// and every relevant ErrorEnd path must be jointly unsatisfiable. Normal
// paths that constrain only a subset of c's parameters weaken the Normal
// side to an existential check when no fully-binding path exists. With no
// relevant paths the constraint is Unresolved.
Verdict check_crisp(const ConstraintPtr& c,
                    const std::vector<PathConstraint>& paths,
                    const CheckConfig& cfg = {});

// Membership-based rule: Consistent iff mu >= tau. Falls back to the crisp
// rule exactly when every leaf of c matches some relevant path atom
// verbatim.
Verdict check_fuzzy(const ConstraintPtr& c,
                    const std::vector<PathConstraint>& paths,
                    const CheckConfig& cfg = {});

// For constraints of the form A -> ignore(x) / A -> specified(x), or a bare
// fuzzy predicate (A defaults to the always-true condition). Incorrectness
// when the predicate fails inside the A-slice; Incompleteness when it also
// holds under branch conditions A does not cover.
Verdict check_usage_predicate(const ConstraintPtr& c, const FunctionModel& m,
                              const CheckConfig& cfg = {});

struct ReportSummary {
  size_t consistent = 0;
  size_t inconsistent = 0;
  size_t unresolved = 0;
  size_t incorrectness = 0;
  size_t incompleteness = 0;
  // indices into the input, membership ascending (most suspicious first);
  // verdicts without a membership value sort last
  std::vector<size_t> order;
};

ReportSummary classify(const std::vector<Verdict>& verdicts);

}  // namespace cdi
