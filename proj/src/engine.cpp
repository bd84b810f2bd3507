#include "fpl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <ostream>
#include <variant>

#include "fpl/syntax.hpp"

namespace fpl {

namespace {

// slot < 0: crisp goal, solved by SLD resolution.
struct CallGoal {
  TermPtr atom;
  int slot = -1;
};

// Settles once every input slot has a truth value.
struct AggregateGoal {
  AggregatorPtr agg;
  std::vector<int> inputs;
  int output = -1;
  TermPtr atom;
  Substitution delta;
};

using Goal = std::variant<CallGoal, AggregateGoal>;

struct State {
  std::deque<Goal> goals;  // front is leftmost
  std::vector<TermPtr> answer;
  std::map<int, BorelSet> truths;
  int next_slot = 0;
  std::size_t depth = 0;

  void apply(const Substitution& theta) {
    if (theta.empty()) return;
    for (Goal& g : goals) {
      if (auto* c = std::get_if<CallGoal>(&g)) {
        c->atom = theta.apply(c->atom);
      } else {
        auto& a = std::get<AggregateGoal>(g);
        a.atom = theta.apply(a.atom);
      }
    }
    for (TermPtr& t : answer) t = theta.apply(t);
  }
};

struct Reduction {
  Substitution theta;  // idempotent
  std::vector<Goal> body;
  int slot = -1;
  std::optional<BorelSet> truth;
  int slots_used = 0;
  std::string trace;
};

double eval_arith(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Number:
      return t->value();
    case Term::Kind::Variable:
      throw InstantiationError("arithmetic: unbound variable " + to_string(t));
    case Term::Kind::Atom:
      if (t->name() == "pi") return M_PI;
      if (t->name() == "e") return M_E;
      throw TypeError("arithmetic: evaluable expected, found " + to_string(t));
    case Term::Kind::Compound:
      break;
  }
  const std::string& f = t->name();
  if (t->arity() == 1) {
    const double x = eval_arith(t->arg(0));
    if (f == "-") return -x;
    if (f == "+") return x;
    if (f == "abs") return std::abs(x);
    if (f == "sqrt") return std::sqrt(x);
    if (f == "floor") return std::floor(x);
    if (f == "ceiling") return std::ceil(x);
    if (f == "round") return std::round(x);
  } else if (t->arity() == 2) {
    const double x = eval_arith(t->arg(0));
    const double y = eval_arith(t->arg(1));
    if (f == "+") return x + y;
    if (f == "-") return x - y;
    if (f == "*") return x * y;
    if (f == "min") return std::min(x, y);
    if (f == "max") return std::max(x, y);
    if (f == "/" || f == "//" || f == "mod") {
      if (y == 0.0) throw Error("arithmetic: division by zero in " + to_string(t));
      if (f == "/") return x / y;
      if (f == "//") return std::trunc(x / y);
      return x - std::floor(x / y) * y;
    }
  }
  throw TypeError("arithmetic: unknown evaluable " + f + "/" + std::to_string(t->arity()));
}

// nullopt: the builtin fails.
std::optional<Substitution> eval_builtin(const TermPtr& atom) {
  const std::string& n = atom->name();
  if (atom->arity() == 0) {
    if (n == "true") return Substitution{};
    return std::nullopt;  // fail
  }
  const TermPtr& a = atom->arg(0);
  const TermPtr& b = atom->arg(1);
  if (n == "=") return mgu(a, b);
  if (n == "\\=") {
    if (mgu(a, b)) return std::nullopt;
    return Substitution{};
  }
  if (n == "==") return equal(a, b) ? std::optional(Substitution{}) : std::nullopt;
  if (n == "\\==") return equal(a, b) ? std::nullopt : std::optional(Substitution{});
  if (n == "is") return mgu(a, Term::number(eval_arith(b)));
  const double x = eval_arith(a);
  const double y = eval_arith(b);
  bool ok = false;
  if (n == "<") ok = x < y;
  else if (n == ">") ok = x > y;
  else if (n == "=<") ok = x <= y;
  else if (n == ">=") ok = x >= y;
  else if (n == "=:=") ok = x == y;
  else if (n == "=\\=") ok = x != y;
  return ok ? std::optional(Substitution{}) : std::nullopt;
}

std::string delta_string(const Substitution& theta, const TermPtr& atom) {
  return to_string(theta.restricted(variables_of(atom)));
}

class Core {
 public:
  Core(const Program& program, EngineOptions options)
      : program_(program), options_(options) {}

  const EngineOptions& options() const { return options_; }

  std::vector<Reduction> reduce(const State& s, const CallGoal& g) {
    const TermPtr& atom = g.atom;
    if (atom->is_variable()) throw InstantiationError("goal is an unbound variable");
    if (atom->is_number()) throw TypeError("callable expected, found " + to_string(atom));
    return g.slot < 0 ? reduce_crisp(atom) : reduce_fuzzy(s, atom, g.slot);
  }

  // Rewrites s into its successors; leftmost goal under depth-first search,
  // every order-independent goal at once under breadth-first search.
  void successors(const State& s, std::vector<State>& out) {
    std::vector<std::size_t> picks;
    if (options_.strategy == Strategy::DepthFirst) {
      picks.push_back(0);
    } else {
      for (std::size_t i = s.goals.size(); i-- > 0;) {
        const auto* c = std::get_if<CallGoal>(&s.goals[i]);
        if (c && (i == 0 || is_ground(c->atom))) picks.push_back(i);
      }
    }
    std::vector<State> partial{s};
    for (std::size_t i : picks) {
      std::vector<State> next;
      for (const State& p : partial) {
        const auto& goal = std::get<CallGoal>(p.goals[i]);
        for (Reduction& r : reduce(p, goal)) {
          State q = p;
          q.goals.erase(q.goals.begin() + static_cast<std::ptrdiff_t>(i));
          // An empty mid-deque range insert self-move-assigns elements.
          if (!r.body.empty()) {
            q.goals.insert(q.goals.begin() + static_cast<std::ptrdiff_t>(i), r.body.begin(),
                           r.body.end());
          }
          q.apply(r.theta);
          q.next_slot += r.slots_used;
          if (++q.depth > options_.depth_limit) {
            throw ResourceError("depth limit of " + std::to_string(options_.depth_limit) +
                                " transitions exceeded");
          }
          if (options_.trace && !r.trace.empty()) *options_.trace << r.trace << '\n';
          if (r.truth) {
            if (r.truth->empty()) continue;
            q.truths[r.slot] = *r.truth;
          }
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    for (State& q : partial) {
      if (settle(q)) out.push_back(std::move(q));
    }
  }

  // Resolves every aggregate whose inputs are known. False when one is empty.
  bool settle(State& s) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto it = s.goals.begin(); it != s.goals.end(); ++it) {
        auto* a = std::get_if<AggregateGoal>(&*it);
        if (!a) continue;
        std::vector<BorelSet> args;
        bool ready = true;
        for (int in : a->inputs) {
          auto t = s.truths.find(in);
          if (t == s.truths.end()) {
            ready = false;
            break;
          }
          args.push_back(t->second);
        }
        if (!ready) continue;
        BorelSet v = union_aggregate(*a->agg, args);
        if (options_.trace) {
          *options_.trace << "rule2 " << to_string(a->atom) << ' ' << to_string(a->delta) << ' '
                          << to_string(v) << '\n';
        }
        if (v.empty()) return false;
        for (int in : a->inputs) s.truths.erase(in);
        s.truths[a->output] = std::move(v);
        s.goals.erase(it);
        progress = true;
        break;
      }
    }
    return true;
  }

  // Every SLD answer for a crisp atom, restricted to its variables.
  std::vector<Substitution> crisp_solutions(const TermPtr& atom, std::size_t depth) {
    const std::vector<TermPtr> vars = variables_of(atom);
    State root;
    root.goals.push_back(CallGoal{atom, -1});
    root.answer = vars;
    root.depth = depth;
    std::vector<Substitution> out;
    std::vector<State> stack{std::move(root)};
    const Strategy saved = options_.strategy;
    options_.strategy = Strategy::DepthFirst;
    std::ostream* saved_trace = options_.trace;
    options_.trace = nullptr;
    try {
      while (!stack.empty()) {
        State s = std::move(stack.back());
        stack.pop_back();
        if (s.goals.empty()) {
          Substitution sol;
          for (std::size_t i = 0; i < vars.size(); ++i) {
            if (!equal(vars[i], s.answer[i])) sol.bind(vars[i], s.answer[i]);
          }
          out.push_back(std::move(sol));
          continue;
        }
        std::vector<State> next;
        successors(s, next);
        for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
      }
    } catch (...) {
      options_.strategy = saved;
      options_.trace = saved_trace;
      throw;
    }
    options_.strategy = saved;
    options_.trace = saved_trace;
    return out;
  }

  VarSource& vars() { return vars_; }

 private:
  std::vector<Reduction> reduce_crisp(const TermPtr& atom) {
    const PredicateKey key = key_of(atom);
    std::vector<Reduction> out;
    switch (program_.kind(key)) {
      case PredicateKind::Builtin:
        if (auto theta = eval_builtin(atom)) {
          Reduction r;
          r.theta = std::move(*theta);
          if (options_.trace) r.trace = "sld " + to_string(atom) + " " + delta_string(r.theta, atom);
          out.push_back(std::move(r));
        }
        return out;
      case PredicateKind::Crisp:
        break;
      case PredicateKind::Unknown:
        if (key.arity > 0 && program_.is_fuzzy_kind({key.name, key.arity - 1})) {
          throw TypeError("fuzzy predicate " + PredicateKey{key.name, key.arity - 1}.str() +
                          " called in a crisp context");
        }
        throw ExistenceError("unknown procedure " + key.str());
      default:
        throw TypeError("fuzzy predicate " + key.str() + " called in a crisp context");
    }
    for (const Clause& c : program_.clauses(key)) {
      const auto& cc = std::get<CrispClause>(c);
      std::map<VarId, TermPtr> mapping;
      TermPtr head = vars_.rename(cc.head, mapping);
      Substitution theta;
      if (!unify(head, atom, theta)) continue;
      Reduction r;
      r.theta = theta.resolved();
      for (const TermPtr& b : cc.body) r.body.push_back(CallGoal{vars_.rename(b, mapping), -1});
      if (options_.trace) r.trace = "sld " + to_string(atom) + " " + delta_string(r.theta, atom);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Reduction> crisp_as_fuzzy(const State& s, const TermPtr& atom,
                                        const TermPtr& crisp_atom, int slot,
                                        const BorelSet& fallback) {
    std::vector<Reduction> out;
    for (Substitution& sol : crisp_solutions(crisp_atom, s.depth)) {
      Reduction r;
      r.theta = std::move(sol);
      r.slot = slot;
      r.truth = BorelSet::point(1.0);
      if (options_.trace) {
        r.trace = "rule1 " + to_string(atom) + " " + delta_string(r.theta, atom) + " 1";
      }
      out.push_back(std::move(r));
    }
    if (out.empty()) {
      Reduction r;
      r.slot = slot;
      r.truth = fallback;
      if (options_.trace) r.trace = "rule3 " + to_string(atom) + " {} " + to_string(fallback);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Reduction> reduce_fuzzy(const State& s, const TermPtr& atom, int slot) {
    const PredicateKey key = key_of(atom);
    switch (program_.kind(key)) {
      case PredicateKind::Builtin:
      case PredicateKind::Crisp:
        return crisp_as_fuzzy(s, atom, atom, slot, BorelSet::point(0.0));
      case PredicateKind::Fuzzified: {
        const PredicateKey target = *program_.fuzzify_target(key);
        std::vector<TermPtr> args(atom->args().begin(), atom->args().end());
        const TermPtr crisp = Term::compound(target.name, std::move(args));
        if (program_.kind(target) == PredicateKind::Unknown) {
          return crisp_as_fuzzy(s, atom, Term::atom("fail"), slot, program_.default_for(key));
        }
        return crisp_as_fuzzy(s, atom, crisp, slot, program_.default_for(key));
      }
      case PredicateKind::Piecewise: {
        Reduction r;
        r.slot = slot;
        const double mu = eval_piecewise(*program_.piecewise(key.name), atom->arg(0));
        r.truth = BorelSet::point(mu);
        if (options_.trace) r.trace = "rule1 " + to_string(atom) + " {} " + to_string(*r.truth);
        return {std::move(r)};
      }
      case PredicateKind::Fuzzy:
      case PredicateKind::Unknown:
        break;
    }
    std::vector<Reduction> out;
    for (const Clause& c : program_.clauses(key)) {
      std::map<VarId, TermPtr> mapping;
      TermPtr head = vars_.rename(head_of(c), mapping);
      Substitution theta;
      if (!unify(head, atom, theta)) continue;
      Reduction r;
      r.theta = theta.resolved();
      r.slot = slot;
      if (const auto* f = std::get_if<FuzzyFact>(&c)) {
        r.truth = f->truth;
        if (options_.trace) {
          r.trace = "rule1 " + to_string(r.theta.apply(atom)) + " " +
                    delta_string(r.theta, atom) + " " + to_string(f->truth);
        }
      } else {
        const auto& fc = std::get<FuzzyClause>(c);
        AggregateGoal agg;
        agg.agg = program_.registry()->resolve(fc.aggregator);
        agg.output = slot;
        agg.atom = atom;
        agg.delta = r.theta.restricted(variables_of(atom));
        for (const TermPtr& b : fc.body) {
          const int in = s.next_slot + r.slots_used++;
          agg.inputs.push_back(in);
          r.body.push_back(CallGoal{vars_.rename(b, mapping), in});
        }
        r.body.push_back(std::move(agg));
      }
      out.push_back(std::move(r));
    }
    if (out.empty()) {
      Reduction r;
      r.slot = slot;
      r.truth = program_.default_for(key);
      if (options_.trace) r.trace = "rule3 " + to_string(atom) + " {} " + to_string(*r.truth);
      out.push_back(std::move(r));
    }
    return out;
  }

  const Program& program_;
  EngineOptions options_;
  VarSource vars_;
};

enum class BoundOp { Lt, Le, Gt, Ge, Eq };

struct Bound {
  int slot;
  BoundOp op;
  double value;
};

std::optional<BoundOp> bound_op(const std::string& name) {
  if (name == ".<.") return BoundOp::Lt;
  if (name == ".=<." || name == ".<=.") return BoundOp::Le;
  if (name == ".>.") return BoundOp::Gt;
  if (name == ".>=.") return BoundOp::Ge;
  if (name == ".=.") return BoundOp::Eq;
  return std::nullopt;
}

BoundOp flip(BoundOp op) {
  switch (op) {
    case BoundOp::Lt: return BoundOp::Gt;
    case BoundOp::Le: return BoundOp::Ge;
    case BoundOp::Gt: return BoundOp::Lt;
    case BoundOp::Ge: return BoundOp::Le;
    case BoundOp::Eq: return BoundOp::Eq;
  }
  return op;
}

// Components of v with a point strictly beyond the bound.
template <typename Pred>
BorelSet strict_part(const BorelSet& v, Pred keep) {
  std::vector<Interval> parts;
  for (const Interval& i : v.intervals()) {
    if (keep(i)) parts.push_back(i);
  }
  return BorelSet::canonicalize(std::move(parts));
}

// Empty when the bound is not met.
BorelSet restrict(const BorelSet& v, const Bound& b, double eps) {
  const double c = std::clamp(b.value, 0.0, 1.0);
  switch (b.op) {
    case BoundOp::Lt:
      if (b.value <= 0.0) return {};
      return strict_part(intersect(v, BorelSet::interval(0.0, c)), [&](const Interval& i) {
        return i.lo < b.value - eps;
      });
    case BoundOp::Le:
      if (b.value < 0.0) return {};
      return intersect(v, BorelSet::interval(0.0, c));
    case BoundOp::Gt:
      if (b.value >= 1.0) return {};
      return strict_part(intersect(v, BorelSet::interval(c, 1.0)), [&](const Interval& i) {
        return i.hi > b.value + eps;
      });
    case BoundOp::Ge:
      if (b.value > 1.0) return {};
      return intersect(v, BorelSet::interval(c, 1.0));
    case BoundOp::Eq:
      if (b.value < 0.0 || b.value > 1.0) return {};
      for (const Interval& i : v.intervals()) {
        if (b.value >= i.lo - eps && b.value <= i.hi + eps) return BorelSet::point(c);
      }
      return {};
  }
  return {};
}

struct QueryPlan {
  std::vector<TermPtr> answer_vars;
  std::vector<std::string> truth_names;  // per fuzzy goal slot
  std::vector<Bound> bounds;
  State root;
  bool fuzzy = false;
};

bool reported(const std::string& name) { return !name.empty() && name[0] != '_'; }

QueryPlan plan_query(const Program& program, const TermPtr& query) {
  QueryPlan plan;
  std::vector<TermPtr> goals = conjuncts(query);
  std::map<std::string, int> truth_slot;
  std::vector<std::pair<TermPtr, TermPtr>> bound_goals;  // (bound atom, unused)
  std::vector<TermPtr> atoms;

  for (const TermPtr& g : goals) {
    if (g->is_compound() && g->arity() == 2 && bound_op(g->name())) {
      bound_goals.push_back({g, nullptr});
      continue;
    }
    if (g->is_variable()) throw InstantiationError("query goal is an unbound variable");
    if (!g->is_callable()) throw TypeError("callable expected, found " + to_string(g));
    const PredicateKey key = key_of(g);
    const bool fuzzy = key.arity > 0 && program.is_fuzzy_kind({key.name, key.arity - 1}) &&
                       !(program.kind(key) == PredicateKind::Crisp);
    if (!fuzzy) {
      const PredicateKind k = program.kind(key);
      if (k == PredicateKind::Unknown) throw ExistenceError("unknown procedure " + key.str());
      if (k != PredicateKind::Crisp && k != PredicateKind::Builtin) {
        throw TypeError("fuzzy predicate " + key.str() + " needs a truth argument");
      }
      plan.root.goals.push_back(CallGoal{g, -1});
      atoms.push_back(g);
      continue;
    }
    plan.fuzzy = true;
    std::vector<TermPtr> args(g->args().begin(), g->args().end() - 1);
    const TermPtr truth = g->args().back();
    const TermPtr stripped = Term::compound(g->name(), std::move(args));
    const int slot = plan.root.next_slot++;
    plan.root.goals.push_back(CallGoal{stripped, slot});
    atoms.push_back(stripped);
    std::string name;
    if (truth->is_variable()) {
      if (reported(truth->name())) {
        name = truth->name();
        if (truth_slot.count(name)) {
          throw TypeError("truth variable " + name + " used by more than one goal");
        }
        truth_slot[name] = slot;
      }
    } else if (truth->is_number()) {
      plan.bounds.push_back(Bound{slot, BoundOp::Eq, truth->value()});
    } else {
      throw TypeError("truth argument must be a variable or a number, found " +
                      to_string(truth));
    }
    plan.truth_names.push_back(name);
  }

  for (const auto& [g, unused] : bound_goals) {
    TermPtr var = g->arg(0);
    TermPtr num = g->arg(1);
    BoundOp op = *bound_op(g->name());
    if (!var->is_variable()) {
      std::swap(var, num);
      op = flip(op);
    }
    if (!var->is_variable() || !num->is_number()) {
      throw TypeError("truth bound needs a truth variable and a number: " + to_string(g));
    }
    auto it = truth_slot.find(var->name());
    if (it == truth_slot.end()) {
      throw TypeError(var->name() + " is not the truth variable of a fuzzy goal");
    }
    plan.bounds.push_back(Bound{it->second, op, num->value()});
  }

  std::vector<TermPtr> vars;
  for (const TermPtr& a : atoms) collect_variables(a, vars);
  for (const TermPtr& v : vars) {
    if (truth_slot.count(v->name())) {
      throw TypeError("truth variable " + v->name() + " also used as a term");
    }
    if (reported(v->name())) plan.answer_vars.push_back(v);
  }
  plan.root.answer = plan.answer_vars;
  return plan;
}

}  // namespace

const BorelSet& Answer::truth() const {
  if (truths.empty()) throw Error("crisp answer has no truth value");
  return truths.front().second;
}

const TermPtr* Answer::binding(const std::string& name) const {
  for (const auto& [n, t] : bindings) {
    if (n == name) return &t;
  }
  return nullptr;
}

std::string render_answer(const Answer& a) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += ", ";
    out += s;
  };
  for (const auto& [n, t] : a.bindings) {
    if (t->is_variable() && t->name() == n) continue;  // still unbound
    add(n + " = " + to_string(t, 699));
  }
  for (const auto& [n, v] : a.truths) {
    if (!n.empty()) add(n + " = " + to_string(v));
  }
  return out.empty() ? "yes" : out;
}

struct AnswerStream::Impl {
  Impl(const Program& program, const TermPtr& goal, EngineOptions options)
      : core(program, options), plan(plan_query(program, goal)) {
    if (core.settle(plan.root)) frontier.push_back(plan.root);
  }

  std::optional<Answer> next() {
    const bool df = core.options().strategy == Strategy::DepthFirst;
    while (!frontier.empty()) {
      State s;
      if (df) {
        s = std::move(frontier.back());
        frontier.pop_back();
      } else {
        s = std::move(frontier.front());
        frontier.pop_front();
      }
      if (s.goals.empty()) {
        if (auto a = build(s)) return a;
        continue;
      }
      std::vector<State> next;
      core.successors(s, next);
      if (df) {
        for (auto it = next.rbegin(); it != next.rend(); ++it) frontier.push_back(std::move(*it));
      } else {
        for (State& q : next) frontier.push_back(std::move(q));
      }
    }
    return std::nullopt;
  }

  std::optional<Answer> build(const State& s) const {
    Answer a;
    a.fuzzy = plan.fuzzy;
    for (std::size_t i = 0; i < plan.answer_vars.size(); ++i) {
      a.bindings.emplace_back(plan.answer_vars[i]->name(), s.answer[i]);
    }
    std::vector<BorelSet> values;
    for (std::size_t slot = 0; slot < plan.truth_names.size(); ++slot) {
      values.push_back(s.truths.at(static_cast<int>(slot)));
    }
    for (const Bound& b : plan.bounds) {
      BorelSet& v = values[static_cast<std::size_t>(b.slot)];
      v = restrict(v, b, core.options().eps);
      if (v.empty()) return std::nullopt;
    }
    for (std::size_t slot = 0; slot < values.size(); ++slot) {
      a.truths.emplace_back(plan.truth_names[slot], values[slot]);
    }
    return a;
  }

  Core core;
  QueryPlan plan;
  std::deque<State> frontier;
};

AnswerStream::AnswerStream(const Program& program, const TermPtr& goal, EngineOptions options)
    : impl_(std::make_unique<Impl>(program, goal, options)) {}
AnswerStream::AnswerStream(AnswerStream&&) noexcept = default;
AnswerStream& AnswerStream::operator=(AnswerStream&&) noexcept = default;
AnswerStream::~AnswerStream() = default;

std::optional<Answer> AnswerStream::next() { return impl_->next(); }

AnswerStream solve(const Program& program, const TermPtr& goal, EngineOptions options) {
  return AnswerStream(program, goal, options);
}

namespace {

// Bindings rendered with unbound variables renamed by first occurrence.
std::string group_key(const Answer& a) {
  std::vector<TermPtr> vars;
  for (const auto& [n, t] : a.bindings) collect_variables(t, vars);
  Substitution canon;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    // Ids from the top of the range never clash with program or fresh variables.
    const VarId id = std::numeric_limits<VarId>::max() - i;
    canon.bind(vars[i], Term::variable(id, "_" + std::to_string(i + 1)));
  }
  std::string key;
  for (const auto& [n, t] : a.bindings) key += n + "=" + to_string(canon.apply(t)) + ";";
  return key;
}

}  // namespace

std::vector<Answer> success_set(const Program& program, const TermPtr& goal,
                                EngineOptions options) {
  std::vector<Answer> out;
  std::map<std::string, std::size_t> index;
  AnswerStream stream(program, goal, options);
  while (auto a = stream.next()) {
    const std::string key = group_key(*a);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      out.push_back(std::move(*a));
      continue;
    }
    Answer& g = out[it->second];
    for (std::size_t i = 0; i < g.truths.size(); ++i) {
      g.truths[i].second = unite(g.truths[i].second, a->truths[i].second);
    }
  }
  return out;
}

std::vector<Substitution> solve_crisp(const Program& program, const TermPtr& goal,
                                      EngineOptions options) {
  Core core(program, options);
  std::vector<Substitution> out;
  const std::vector<TermPtr> vars = variables_of(goal);
  State root;
  root.answer = vars;
  for (const TermPtr& g : conjuncts(goal)) root.goals.push_back(CallGoal{g, -1});
  std::vector<State> stack{std::move(root)};
  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    if (s.goals.empty()) {
      Substitution sol;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!equal(vars[i], s.answer[i])) sol.bind(vars[i], s.answer[i]);
      }
      out.push_back(std::move(sol));
      continue;
    }
    std::vector<State> next;
    core.successors(s, next);
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return out;
}

double eval_piecewise(const PiecewiseDecl& decl, double x) {
  const auto& pts = decl.points;
  if (pts.empty()) throw DomainError("membership function " + decl.name + " has no points");
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  auto hi = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double eval_piecewise(const PiecewiseDecl& decl, const TermPtr& x) {
  if (x->is_variable()) {
    throw InstantiationError("membership function " + decl.name + " called with unbound " +
                             to_string(x));
  }
  if (!x->is_number()) {
    throw TypeError("membership function " + decl.name + " expects a number, found " +
                    to_string(x));
  }
  return eval_piecewise(decl, x->value());
}

}  // namespace fpl
