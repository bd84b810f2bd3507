#ifndef FPL_UNIFY_HPP
#define FPL_UNIFY_HPP

#include <map>
#include <optional>
#include <string>

#include "fpl/term.hpp"

namespace fpl {

/// Variable bindings. Bindings may be triangular while a unifier is being
/// built; mgu() always hands out the idempotent (fully resolved) form.
class Substitution {
 public:
  struct Binding {
    TermPtr var;
    TermPtr value;
  };

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<VarId, Binding>& bindings() const { return bindings_; }

  /// nullptr when unbound.
  TermPtr lookup(VarId id) const;
  void bind(const TermPtr& var, TermPtr value) {
    bindings_[var->id()] = Binding{var, std::move(value)};
  }

  /// Follows variable-to-variable chains one level at a time.
  TermPtr walk(TermPtr t) const;

  /// Fully applies the substitution; shares unchanged subterms.
  TermPtr apply(const TermPtr& t) const;

  /// Every binding applied to itself, so apply() becomes idempotent.
  Substitution resolved() const;

  /// Restriction to the given variables.
  Substitution restricted(std::span<const TermPtr> vars) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  std::map<VarId, Binding> bindings_;
};

/// "{X=john, Z=g(Y)}" using the variables' source names.
std::string to_string(const Substitution& s);

/// Extends s to unify a and b (with occurs check). On failure s may hold
/// partial bindings; callers that need rollback should work on a copy.
bool unify(const TermPtr& a, const TermPtr& b, Substitution& s);

/// Most general unifier in idempotent form, or nullopt if none exists.
std::optional<Substitution> mgu(const TermPtr& a, const TermPtr& b);

/// Fresh variable numbering for standardising clauses apart.
class VarSource {
 public:
  explicit VarSource(VarId start = 1'000'000) : next_(start) {}
  VarId next() { return next_++; }
  /// Copy of t with every variable replaced by a fresh one.
  TermPtr rename(const TermPtr& t, std::map<VarId, TermPtr>& mapping);

 private:
  VarId next_;
};

}  // namespace fpl

#endif  // FPL_UNIFY_HPP
