#include "fpl/fixpoint.hpp"

#include <algorithm>
#include <set>

#include "fpl/engine.hpp"

namespace fpl {

AtomId GroundProgram::intern(const TermPtr& atom, const BorelSet& fallback) {
  std::string key = to_string(atom);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const AtomId id = atoms_.size();
  atoms_.push_back(atom);
  names_.push_back(key);
  defaults_.push_back(fallback);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<AtomId> GroundProgram::find(const TermPtr& atom) const {
  auto it = index_.find(to_string(atom));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GroundProgram::add_fact(AtomId head, BorelSet truth) {
  facts_.push_back(GroundFact{head, std::move(truth)});
}

void GroundProgram::add_clause(AtomId head, AggregatorPtr agg, std::vector<AtomId> body) {
  clauses_.push_back(GroundClause{head, std::move(agg), std::move(body)});
}

Interpretation::Interpretation(const GroundProgram& gp) : gp_(&gp), values_(gp.size()) {}

const BorelSet& Interpretation::value(AtomId id) const {
  return values_[id] ? *values_[id] : gp_->default_of(id);
}

void Interpretation::set(AtomId id, BorelSet v) {
  if (v.empty()) {
    values_[id].reset();
  } else {
    values_[id] = std::move(v);
  }
}

std::size_t Interpretation::explicit_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

bool operator==(const Interpretation& a, const Interpretation& b) {
  if (a.values_.size() != b.values_.size()) return false;
  for (std::size_t k = 0; k < a.values_.size(); ++k) {
    if (a.values_[k].has_value() != b.values_[k].has_value()) return false;
    if (a.values_[k] && !(*a.values_[k] == *b.values_[k])) return false;
  }
  return true;
}

namespace {

BorelSet support(const GroundClause& c, const Interpretation& i) {
  std::vector<BorelSet> args;
  args.reserve(c.body.size());
  for (AtomId b : c.body) args.push_back(i.value(b));
  return union_aggregate(*c.agg, args);
}

}  // namespace

Interpretation tp_step(const GroundProgram& gp, const Interpretation& i) {
  std::vector<std::optional<BorelSet>> acc(gp.size());
  auto add = [&](AtomId head, const BorelSet& v) {
    if (v.empty()) return;
    acc[head] = acc[head] ? unite(*acc[head], v) : v;
  };
  for (const GroundFact& f : gp.facts()) add(f.head, f.truth);
  for (const GroundClause& c : gp.clauses()) add(c.head, support(c, i));
  Interpretation out(gp);
  for (AtomId a = 0; a < gp.size(); ++a) {
    if (acc[a]) out.set(a, std::move(*acc[a]));
  }
  return out;
}

LfpResult lfp(const GroundProgram& gp, double eps, std::size_t max_iters) {
  if (!(eps > 0.0)) throw DomainError("lfp: eps must be positive");
  Interpretation prev(gp);
  for (std::size_t n = 1; n <= max_iters; ++n) {
    Interpretation cur = tp_step(gp, prev);
    bool same = true;
    double worst = 0.0;
    for (AtomId a = 0; a < gp.size(); ++a) {
      if (cur.is_explicit(a) != prev.is_explicit(a)) {
        same = false;
        worst = std::max(worst, hausdorff(cur.value(a), prev.value(a)));
        continue;
      }
      if (!cur.is_explicit(a)) continue;
      const double d = hausdorff(cur.value(a), prev.value(a));
      worst = std::max(worst, d);
      if (d > eps) same = false;
    }
    if (same || n == max_iters) {
      LfpResult r{cur, prev, same, n, worst};
      return r;
    }
    prev = std::move(cur);
  }
  return LfpResult{prev, prev, false, 0, 0.0};
}

bool is_model(const GroundProgram& gp, const Interpretation& i) {
  for (const GroundFact& f : gp.facts()) {
    if (!i.is_explicit(f.head) || !borel_included(f.truth, i.value(f.head))) return false;
  }
  for (const GroundClause& c : gp.clauses()) {
    if (!i.is_explicit(c.head) || !borel_included(support(c, i), i.value(c.head))) return false;
  }
  return true;
}

Interpretation meet(const Interpretation& a, const Interpretation& b) {
  const GroundProgram& gp = a.program();
  Interpretation out(gp);
  for (AtomId k = 0; k < gp.size(); ++k) {
    if (a.is_explicit(k) && b.is_explicit(k)) out.set(k, intersect(a.value(k), b.value(k)));
  }
  return out;
}

bool interp_included(const Interpretation& a, const Interpretation& b) {
  const GroundProgram& gp = a.program();
  for (AtomId k = 0; k < gp.size(); ++k) {
    if (!a.is_explicit(k)) continue;
    if (!b.is_explicit(k) || !borel_included(a.value(k), b.value(k))) return false;
  }
  return true;
}

namespace {

class Grounder {
 public:
  Grounder(const Program& program, std::size_t max_instances)
      : program_(program), max_instances_(max_instances) {}

  GroundProgram run() {
    for (const PredicateKey& key : program_.predicates()) {
      for (const Clause& c : program_.clauses(key)) scan(c);
    }
    for (const PredicateKey& key : program_.predicates()) {
      for (const Clause& c : program_.clauses(key)) {
        if (!is_crisp(c)) instantiate(c);
      }
    }
    return std::move(gp_);
  }

 private:
  void add_constant(const TermPtr& t) {
    if (t->is_atomic() && seen_.insert(to_string(t)).second) universe_.push_back(t);
  }

  void check_flat(const TermPtr& atom, const Clause& c) {
    for (const TermPtr& a : atom->args()) {
      if (a->is_compound()) {
        throw GroundingError("compound argument " + to_string(a) + " in fuzzy clause for " +
                             key_of(head_of(c)).str() + " at " + pos_of(c).str());
      }
    }
  }

  void scan(const Clause& c) {
    std::vector<TermPtr> atoms{head_of(c)};
    if (const auto* fc = std::get_if<FuzzyClause>(&c)) {
      atoms.insert(atoms.end(), fc->body.begin(), fc->body.end());
    } else if (const auto* cc = std::get_if<CrispClause>(&c)) {
      atoms.insert(atoms.end(), cc->body.begin(), cc->body.end());
    }
    for (const TermPtr& a : atoms) {
      if (!is_crisp(c)) check_flat(a, c);
      for (const TermPtr& arg : a->args()) add_constant(arg);
    }
  }

  void instantiate(const Clause& c) {
    std::vector<TermPtr> atoms{head_of(c)};
    if (const auto* fc = std::get_if<FuzzyClause>(&c)) {
      atoms.insert(atoms.end(), fc->body.begin(), fc->body.end());
    }
    std::vector<TermPtr> vars;
    for (const TermPtr& a : atoms) collect_variables(a, vars);
    if (!vars.empty() && universe_.empty()) return;

    std::size_t total = 1;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      total *= universe_.size();
      if (total > max_instances_) {
        throw GroundingError("grounding " + key_of(head_of(c)).str() + " exceeds " +
                             std::to_string(max_instances_) + " instances");
      }
    }
    instances_ += total;
    if (instances_ > max_instances_) {
      throw GroundingError("grounding exceeds " + std::to_string(max_instances_) + " instances");
    }

    std::vector<std::size_t> odo(vars.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      Substitution s;
      for (std::size_t k = 0; k < vars.size(); ++k) s.bind(vars[k], universe_[odo[k]]);
      emit(c, s);
      for (std::size_t k = vars.size(); k-- > 0;) {
        if (++odo[k] < universe_.size()) break;
        odo[k] = 0;
      }
    }
  }

  void emit(const Clause& c, const Substitution& s) {
    const TermPtr head = s.apply(head_of(c));
    const AtomId h = gp_.intern(head, program_.default_for(key_of(head)));
    if (const auto* f = std::get_if<FuzzyFact>(&c)) {
      gp_.add_fact(h, f->truth);
      return;
    }
    const auto& fc = std::get<FuzzyClause>(c);
    std::vector<AtomId> body;
    for (const TermPtr& b : fc.body) body.push_back(body_atom(s.apply(b)));
    gp_.add_clause(h, program_.registry()->resolve(fc.aggregator), std::move(body));
  }

  bool provable(const TermPtr& atom) {
    try {
      return !solve_crisp(program_, atom).empty();
    } catch (const TypeError&) {
      return false;
    } catch (const InstantiationError&) {
      return false;
    }
  }

  AtomId body_atom(const TermPtr& atom) {
    const PredicateKey key = key_of(atom);
    const PredicateKind kind = program_.kind(key);
    const bool crisp = kind == PredicateKind::Crisp || kind == PredicateKind::Builtin;
    const AtomId id =
        gp_.intern(atom, crisp ? BorelSet::point(0.0) : program_.default_for(key));
    if (!evaluated_.insert(id).second) return id;
    switch (kind) {
      case PredicateKind::Crisp:
      case PredicateKind::Builtin:
        if (provable(atom)) gp_.add_fact(id, BorelSet::point(1.0));
        break;
      case PredicateKind::Fuzzified: {
        const PredicateKey target = *program_.fuzzify_target(key);
        if (program_.kind(target) == PredicateKind::Unknown) break;
        std::vector<TermPtr> args(atom->args().begin(), atom->args().end());
        if (provable(Term::compound(target.name, std::move(args)))) {
          gp_.add_fact(id, BorelSet::point(1.0));
        }
        break;
      }
      case PredicateKind::Piecewise:
        if (atom->arg(0)->is_number()) {
          gp_.add_fact(id, BorelSet::point(eval_piecewise(*program_.piecewise(key.name),
                                                          atom->arg(0)->value())));
        }
        break;
      case PredicateKind::Fuzzy:
      case PredicateKind::Unknown:
        break;
    }
    return id;
  }

  const Program& program_;
  std::size_t max_instances_;
  std::size_t instances_ = 0;
  std::vector<TermPtr> universe_;
  std::set<std::string> seen_;
  std::set<AtomId> evaluated_;
  GroundProgram gp_;
};

}  // namespace

GroundProgram ground(const Program& program, std::size_t max_instances) {
  return Grounder(program, max_instances).run();
}

std::vector<std::string> render_interpretation(const Interpretation& i) {
  const GroundProgram& gp = i.program();
  std::vector<std::string> out;
  for (AtomId a = 0; a < gp.size(); ++a) {
    if (i.is_explicit(a)) out.push_back(gp.name(a) + " = " + to_string(i.value(a)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fpl
