#ifndef FPL_ENGINE_HPP
#define FPL_ENGINE_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpl/program.hpp"
#include "fpl/unify.hpp"

namespace fpl {

enum class Strategy { DepthFirst, BreadthFirst };

struct EngineOptions {
  Strategy strategy = Strategy::DepthFirst;
  /// Maximum transitions along a single derivation.
  std::size_t depth_limit = 100'000;
  /// Margin for strict truth bounds (.<. and .>.) in queries.
  double eps = 1e-9;
  /// When set, one line per transition: "rule{1|2|3} atom σ-delta truth"
  /// (crisp resolution steps print as "sld atom σ-delta").
  std::ostream* trace = nullptr;
};

/// One successful derivation (or, from success_set, the union over all
/// derivations with the same bindings).
struct Answer {
  /// Named query variables other than truth variables, in query order.
  std::vector<std::pair<std::string, TermPtr>> bindings;
  /// Truth of each fuzzy goal whose truth argument is a named variable.
  std::vector<std::pair<std::string, BorelSet>> truths;
  /// Query had at least one fuzzy goal.
  bool fuzzy = false;

  /// Truth of the first fuzzy goal; throws Error for crisp answers.
  const BorelSet& truth() const;
  const TermPtr* binding(const std::string& name) const;
};

/// "X = john, V = [0,1]"; "yes" when there is nothing to show.
std::string render_answer(const Answer& a);

/// Lazy enumeration of answers, one per successful derivation, in clause
/// order under depth-first search.
class AnswerStream {
 public:
  AnswerStream(const Program& program, const TermPtr& goal, EngineOptions options);
  AnswerStream(AnswerStream&&) noexcept;
  AnswerStream& operator=(AnswerStream&&) noexcept;
  ~AnswerStream();

  /// Next answer, or nullopt when the search space is exhausted. Throws
  /// ExistenceError, ResourceError, TypeError, InstantiationError.
  std::optional<Answer> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

AnswerStream solve(const Program& program, const TermPtr& goal, EngineOptions options = {});

/// All answers grouped by (variable-normalised) bindings; each group's truth
/// is the union of its derivations' truth sets. Groups keep first-seen order.
std::vector<Answer> success_set(const Program& program, const TermPtr& goal,
                                EngineOptions options = {});

/// Plain SLD resolution of a crisp goal; every element is the answer
/// substitution restricted to the goal's variables.
std::vector<Substitution> solve_crisp(const Program& program, const TermPtr& goal,
                                      EngineOptions options = {});

/// Linear interpolation between the declared points, clamped outside them.
double eval_piecewise(const PiecewiseDecl& decl, double x);
/// Throws InstantiationError for variables and TypeError for non-numbers.
double eval_piecewise(const PiecewiseDecl& decl, const TermPtr& x);

}  // namespace fpl

#endif  // FPL_ENGINE_HPP
