#ifndef FPL_TERM_HPP
#define FPL_TERM_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fpl {

using VarId = std::uint64_t;

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable Prolog term. Lists use the classic '.'/2 cells ending in '[]'.
class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Number, Atom, Compound };

  static TermPtr variable(VarId id, std::string name);
  static TermPtr number(double value);
  static TermPtr atom(std::string name);
  static TermPtr compound(std::string functor, std::vector<TermPtr> args);
  static TermPtr nil();
  static TermPtr cons(TermPtr head, TermPtr tail);
  static TermPtr list(const std::vector<TermPtr>& items, TermPtr tail = nullptr);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_atom() const { return kind_ == Kind::Atom; }
  bool is_compound() const { return kind_ == Kind::Compound; }
  bool is_callable() const { return is_atom() || is_compound(); }
  bool is_atomic() const { return is_atom() || is_number(); }
  bool is_nil() const { return is_atom() && name_ == "[]"; }
  bool is_cons() const { return is_compound() && name_ == "." && args_.size() == 2; }

  /// Functor, atom, or variable name.
  const std::string& name() const { return name_; }
  double value() const { return value_; }
  VarId id() const { return id_; }
  std::span<const TermPtr> args() const { return args_; }
  const TermPtr& arg(std::size_t i) const { return args_[i]; }
  std::size_t arity() const { return args_.size(); }

 private:
  Term() = default;

  Kind kind_ = Kind::Atom;
  double value_ = 0.0;
  VarId id_ = 0;
  std::string name_;
  std::vector<TermPtr> args_;
};

/// Identical terms; variables compare by id.
bool equal(const TermPtr& a, const TermPtr& b);

/// Standard order of terms: Var < Number < Atom < Compound.
int compare(const TermPtr& a, const TermPtr& b);

bool is_ground(const TermPtr& t);

/// Distinct variables of t in first-occurrence order.
std::vector<TermPtr> variables_of(const TermPtr& t);
void collect_variables(const TermPtr& t, std::vector<TermPtr>& out);

/// Number rendering used for terms: integers without a fraction, otherwise
/// the shortest round-tripping decimal.
std::string format_number(double x);

/// Prolog surface syntax, with standard operators and list sugar.
std::string to_string(const TermPtr& t);
/// As above, parenthesising operators above max_prec (999 for arguments).
std::string to_string(const TermPtr& t, int max_prec);

/// Quotes an atom name when it is not a plain identifier or symbol atom.
std::string quote_atom(const std::string& name);

/// Conjunction ','(A, ','(B, C)) flattened into [A, B, C].
std::vector<TermPtr> conjuncts(const TermPtr& t);

}  // namespace fpl

#endif  // FPL_TERM_HPP
