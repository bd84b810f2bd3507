#ifndef FPL_PROGRAM_HPP
#define FPL_PROGRAM_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpl/aggregators.hpp"
#include "fpl/error.hpp"
#include "fpl/term.hpp"
#include "fpl/truth.hpp"

namespace fpl {

/// name/arity. For fuzzy predicates the arity counts source arguments only;
/// queries carry one extra argument for the truth value.
struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  std::string str() const { return name + "/" + std::to_string(arity); }
  auto operator<=>(const PredicateKey&) const = default;
};

PredicateKey key_of(const TermPtr& atom);

/// head :~ truth.
struct FuzzyFact {
  TermPtr head;
  BorelSet truth;
  SourcePos pos;
};

/// head :~ aggregator b1, ..., bn.
struct FuzzyClause {
  TermPtr head;
  std::string aggregator;
  std::vector<TermPtr> body;
  SourcePos pos;
};

/// head :- b1, ..., bn.   (empty body for facts)
struct CrispClause {
  TermPtr head;
  std::vector<TermPtr> body;
  SourcePos pos;
};

using Clause = std::variant<FuzzyFact, FuzzyClause, CrispClause>;

const TermPtr& head_of(const Clause& c);
SourcePos pos_of(const Clause& c);
bool is_crisp(const Clause& c);

/// name :# fuzzy_predicate([(x1,mu1), ...]).  Linear between points,
/// clamped outside them.
struct PiecewiseDecl {
  std::string name;
  std::vector<std::pair<double, double>> points;
  SourcePos pos;
};

/// :- default(name/arity, truth).  `declared` is the key as written.
struct DefaultDecl {
  PredicateKey declared;
  BorelSet value;
  SourcePos pos;
};

/// Fuzzy wrapper over a crisp predicate: truth 1 per crisp solution,
/// the wrapper's default (0 unless declared) when there is none.
struct FuzzifyDecl {
  PredicateKey wrapper;
  PredicateKey crisp;
  SourcePos pos;
};

enum class PredicateKind { Unknown, Builtin, Crisp, Fuzzy, Piecewise, Fuzzified };

bool is_builtin(const PredicateKey& key);

class Program {
 public:
  explicit Program(std::shared_ptr<const AggregatorRegistry> registry = default_registry());

  void add_clause(Clause clause);
  void add_piecewise(PiecewiseDecl decl);
  void add_default(DefaultDecl decl);
  void add_fuzzify(FuzzifyDecl decl);

  /// Declares f_<name>/arity as the fuzzy wrapper of crisp name/arity and
  /// returns the wrapper key. Throws Error when `crisp` names a fuzzy predicate.
  PredicateKey fuzzify(const PredicateKey& crisp);

  /// Clauses of a predicate in source order (empty when undefined).
  const std::vector<Clause>& clauses(const PredicateKey& key) const;
  /// Predicates with clauses, in order of first appearance.
  const std::vector<PredicateKey>& predicates() const { return order_; }
  const PiecewiseDecl* piecewise(const std::string& name) const;
  const std::map<std::string, PiecewiseDecl>& piecewise_decls() const { return piecewise_; }
  const std::vector<DefaultDecl>& default_decls() const { return default_decls_; }
  const std::map<PredicateKey, FuzzifyDecl>& fuzzify_decls() const { return fuzzified_; }

  PredicateKind kind(const PredicateKey& key) const;
  bool is_fuzzy_kind(const PredicateKey& key) const;

  /// Crisp predicate wrapped by `wrapper`, either declared or implied by the
  /// f_<name> naming convention.
  std::optional<PredicateKey> fuzzify_target(const PredicateKey& wrapper) const;

  /// Fuzzy predicate (source arity) a default declaration applies to.
  PredicateKey default_target(const DefaultDecl& decl) const;

  /// Default truth of a fuzzy predicate given by source arity.
  BorelSet default_for(const PredicateKey& key) const;
  const BorelSet& global_default() const { return global_default_; }
  void set_global_default(BorelSet value) { global_default_ = std::move(value); }

  const std::shared_ptr<const AggregatorRegistry>& registry() const { return registry_; }

  bool empty() const;

 private:
  bool defines_fuzzy(const PredicateKey& key) const;

  std::shared_ptr<const AggregatorRegistry> registry_;
  std::map<PredicateKey, std::vector<Clause>> clauses_;
  std::vector<PredicateKey> order_;
  std::map<std::string, PiecewiseDecl> piecewise_;
  std::vector<DefaultDecl> default_decls_;
  std::map<PredicateKey, FuzzifyDecl> fuzzified_;
  BorelSet global_default_ = BorelSet::unit();
};

}  // namespace fpl

#endif  // FPL_PROGRAM_HPP
