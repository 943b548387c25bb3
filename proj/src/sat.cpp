#include "cdi/sat.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace cdi {

DomainValue DomainValue::none() { return {}; }

DomainValue DomainValue::number(double v) {
  DomainValue d;
  d.kind = Kind::Num;
  d.num = v;
  return d;
}

DomainValue DomainValue::string(std::string s) {
  DomainValue d;
  d.kind = Kind::Str;
  d.str = std::move(s);
  return d;
}

DomainValue DomainValue::other_string() {
  DomainValue d;
  d.kind = Kind::OtherStr;
  return d;
}

DomainValue DomainValue::boolean(bool b) {
  DomainValue d;
  d.kind = Kind::Bool;
  d.truth = b;
  return d;
}

std::string DomainValue::print() const {
  switch (kind) {
    case Kind::None: return "None";
    case Kind::Num: return Value::num(num).print();
    case Kind::Str: return "\"" + str + "\"";
    case Kind::OtherStr: return "<other>";
    case Kind::Bool: return truth ? "True" : "False";
  }
  return "None";
}

bool eval_atom(const Expression& e, const DomainValue& v) {
  const Value& lit = e.value;
  bool eq = false;
  bool ordered = false;  // whether < / <= style comparison is meaningful
  bool lt = false;
  switch (v.kind) {
    case DomainValue::Kind::None:
      eq = lit.kind() == Value::Kind::None;
      break;
    case DomainValue::Kind::Num:
      if (lit.kind() == Value::Kind::Num) {
        eq = v.num == lit.number();
        ordered = true;
        lt = v.num < lit.number();
      }
      break;
    case DomainValue::Kind::Str:
      eq = lit.kind() == Value::Kind::Str && v.str == lit.text();
      break;
    case DomainValue::Kind::OtherStr:
      eq = false;  // distinct from every literal and from None
      break;
    case DomainValue::Kind::Bool:
      eq = lit.kind() == Value::Kind::Bool && v.truth == lit.truth();
      break;
  }
  switch (e.op) {
    case Operator::Eq: return eq;
    case Operator::Ne: return !eq;
    case Operator::Lt: return ordered && lt;
    case Operator::Le: return ordered && (lt || eq);
    case Operator::Gt: return ordered && !lt && !eq;
    case Operator::Ge: return ordered && !lt;
  }
  return false;
}

namespace {

bool is_always_atom(const Expression& e) { return e.param == "__always__"; }

void collect_atoms(const ConstraintPtr& c, std::vector<const Expression*>& out) {
  switch (c->kind()) {
    case Constraint::Kind::Atom:
      out.push_back(&c->expr());
      break;
    case Constraint::Kind::Fuzzy:
      throw std::invalid_argument("sat query contains a fuzzy predicate");
    case Constraint::Kind::Not:
      collect_atoms(c->child(), out);
      break;
    default:
      collect_atoms(c->lhs(), out);
      collect_atoms(c->rhs(), out);
      break;
  }
}

std::vector<DomainValue> build_domain(const std::string& name, const Sort& sort,
                                      const std::vector<const Expression*>& atoms) {
  std::vector<DomainValue> domain;
  switch (sort.base) {
    case BaseSort::Bool:
      domain.push_back(DomainValue::boolean(false));
      domain.push_back(DomainValue::boolean(true));
      break;
    case BaseSort::Str: {
      std::set<std::string> lits;
      for (const Expression* e : atoms)
        if (e->param == name && e->value.kind() == Value::Kind::Str)
          lits.insert(e->value.text());
      for (const auto& s : lits) domain.push_back(DomainValue::string(s));
      domain.push_back(DomainValue::other_string());
      break;
    }
    case BaseSort::Num: {
      std::set<double> lits;
      for (const Expression* e : atoms)
        if (e->param == name && e->value.kind() == Value::Kind::Num)
          lits.insert(e->value.number());
      if (lits.empty()) {
        domain.push_back(DomainValue::number(0));
      } else {
        std::vector<double> sorted(lits.begin(), lits.end());
        domain.push_back(DomainValue::number(sorted.front() - 1));
        for (size_t i = 0; i < sorted.size(); ++i) {
          domain.push_back(DomainValue::number(sorted[i]));
          if (i + 1 < sorted.size())
            domain.push_back(
                DomainValue::number((sorted[i] + sorted[i + 1]) / 2));
        }
        domain.push_back(DomainValue::number(sorted.back() + 1));
      }
      break;
    }
  }
  if (sort.maybe_none) domain.push_back(DomainValue::none());
  return domain;
}

}  // namespace

std::vector<TypedVar> infer_vars(const std::vector<ConstraintPtr>& formulas) {
  std::vector<const Expression*> atoms;
  for (const auto& f : formulas) collect_atoms(f, atoms);

  struct Pending {
    std::string name;
    std::optional<BaseSort> base;  // unset while only compared against None
    bool maybe_none = false;
  };
  std::vector<Pending> pending;
  auto find = [&](const std::string& name) -> Pending* {
    for (auto& p : pending)
      if (p.name == name) return &p;
    return nullptr;
  };

  for (const Expression* e : atoms) {
    if (is_always_atom(*e)) continue;
    std::optional<BaseSort> base;
    switch (e->value.kind()) {
      case Value::Kind::Num: base = BaseSort::Num; break;
      case Value::Kind::Str: base = BaseSort::Str; break;
      case Value::Kind::Bool: base = BaseSort::Bool; break;
      case Value::Kind::None: break;
    }
    Pending* p = find(e->param);
    if (!p) {
      pending.push_back({e->param, std::nullopt, false});
      p = &pending.back();
    }
    if (!base) {
      p->maybe_none = true;
    } else if (!p->base) {
      p->base = base;
    } else if (*p->base != *base) {
      throw SortError("parameter '" + e->param +
                      "' compared against two incompatible value kinds");
    }
  }

  std::vector<TypedVar> vars;
  vars.reserve(pending.size());
  for (auto& p : pending) {
    TypedVar v;
    v.name = std::move(p.name);
    // A var only ever compared against None gets a nullable string sort.
    v.sort.base = p.base.value_or(BaseSort::Str);
    v.sort.maybe_none = p.maybe_none;
    vars.push_back(std::move(v));
  }
  return vars;
}

SatResult check_sat(const SatQuery& q) {
  std::vector<const Expression*> atoms;
  collect_atoms(q.formula, atoms);
  for (const Expression* e : atoms) {
    if (is_always_atom(*e)) continue;
    bool known = false;
    for (const auto& v : q.vars) known = known || v.name == e->param;
    if (!known)
      throw SortError("parameter '" + e->param + "' missing from sat query");
  }

  std::vector<std::vector<DomainValue>> domains;
  domains.reserve(q.vars.size());
  size_t combos = 1;
  for (const auto& v : q.vars) {
    domains.push_back(build_domain(v.name, v.sort, atoms));
    combos *= domains.back().size();
    if (combos > 50'000'000)
      throw SortError("sat query domain too large to enumerate");
  }

  std::vector<size_t> idx(q.vars.size(), 0);
  std::map<std::string, const DomainValue*> assignment;
  for (;;) {
    assignment.clear();
    for (size_t i = 0; i < q.vars.size(); ++i)
      assignment[q.vars[i].name] = &domains[i][idx[i]];
    bool ok = eval_constraint(q.formula, [&](const Expression& e) {
      if (is_always_atom(e))
        return e.op == Operator::Eq;  // canonical tautology atom
      return eval_atom(e, *assignment.at(e.param));
    });
    if (ok) {
      SatResult r;
      r.sat = true;
      for (const auto& [name, val] : assignment) r.model[name] = *val;
      return r;
    }
    // odometer step
    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < domains[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
    if (idx.empty()) break;
  }
  return SatResult{};
}

SatResult check_sat_conjunction(const std::vector<ConstraintPtr>& parts) {
  if (parts.empty()) {
    SatResult r;
    r.sat = true;
    return r;
  }
  ConstraintPtr formula = parts.front();
  for (size_t i = 1; i < parts.size(); ++i)
    formula = Constraint::conj(formula, parts[i]);
  SatQuery q;
  q.vars = infer_vars(parts);
  q.formula = std::move(formula);
  return check_sat(q);
}

}  // namespace cdi
