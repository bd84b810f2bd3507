#ifndef FPL_FIXPOINT_HPP
#define FPL_FIXPOINT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpl/program.hpp"

namespace fpl {

using AtomId = std::size_t;

struct GroundFact {
  AtomId head;
  BorelSet truth;
};

struct GroundClause {
  AtomId head;
  AggregatorPtr agg;
  std::vector<AtomId> body;
};

/// Ground facts and clauses over an interned atom table. Atoms are fuzzy
/// atoms without their truth argument; each carries its predicate default.
class GroundProgram {
 public:
  /// Interns a ground atom; `fallback` is its default if it is new.
  AtomId intern(const TermPtr& atom, const BorelSet& fallback);
  std::optional<AtomId> find(const TermPtr& atom) const;

  void add_fact(AtomId head, BorelSet truth);
  void add_clause(AtomId head, AggregatorPtr agg, std::vector<AtomId> body);

  std::size_t size() const { return atoms_.size(); }
  const TermPtr& atom(AtomId id) const { return atoms_[id]; }
  const std::string& name(AtomId id) const { return names_[id]; }
  const BorelSet& default_of(AtomId id) const { return defaults_[id]; }
  void set_default(AtomId id, BorelSet value) { defaults_[id] = std::move(value); }

  const std::vector<GroundFact>& facts() const { return facts_; }
  const std::vector<GroundClause>& clauses() const { return clauses_; }

 private:
  std::vector<TermPtr> atoms_;
  std::vector<std::string> names_;
  std::vector<BorelSet> defaults_;
  std::map<std::string, AtomId> index_;
  std::vector<GroundFact> facts_;
  std::vector<GroundClause> clauses_;
};

/// Explicit atoms with their values; every other atom reads as its default.
/// Bound to one GroundProgram, which must outlive it.
class Interpretation {
 public:
  /// Bottom: no explicit atoms.
  explicit Interpretation(const GroundProgram& gp);

  const GroundProgram& program() const { return *gp_; }
  bool is_explicit(AtomId id) const { return values_[id].has_value(); }
  /// Value with default fallback.
  const BorelSet& value(AtomId id) const;
  /// Stored values are non-empty; setting an empty one makes the atom implicit.
  void set(AtomId id, BorelSet v);
  void erase(AtomId id) { values_[id].reset(); }
  std::size_t explicit_count() const;

  /// Same explicit set and structurally equal values.
  friend bool operator==(const Interpretation& a, const Interpretation& b);

 private:
  const GroundProgram* gp_;
  std::vector<std::optional<BorelSet>> values_;
};

/// One application of the immediate consequence operator, from scratch.
Interpretation tp_step(const GroundProgram& gp, const Interpretation& i);

struct LfpResult {
  Interpretation value;
  Interpretation previous;
  bool converged = false;
  std::size_t iterations = 0;
  /// Largest per-atom Hausdorff distance between the last two iterates.
  double discrepancy = 0.0;
};

/// Iterates tp_step from bottom until two consecutive iterates have the same
/// explicit set and every value within eps (Hausdorff), or max_iters.
LfpResult lfp(const GroundProgram& gp, double eps = 1e-9, std::size_t max_iters = 1000);

bool is_model(const GroundProgram& gp, const Interpretation& i);

/// Pointwise intersection; atoms with an empty intersection fall back to
/// their default.
Interpretation meet(const Interpretation& a, const Interpretation& b);

/// a ⊑ b: explicit(a) ⊆ explicit(b) and values Borel-included.
bool interp_included(const Interpretation& a, const Interpretation& b);

/// Instantiates every fuzzy fact and clause over the atomic constants of the
/// program. Crisp and fuzzified body atoms become facts with truth 1 when
/// provable; piecewise atoms become facts at numeric arguments. Throws
/// GroundingError on compound arguments in fuzzy clauses or when the number
/// of instances exceeds max_instances.
GroundProgram ground(const Program& program, std::size_t max_instances = 1'000'000);

/// "atom = truth" lines for the explicit atoms, sorted.
std::vector<std::string> render_interpretation(const Interpretation& i);

}  // namespace fpl

#endif  // FPL_FIXPOINT_HPP
