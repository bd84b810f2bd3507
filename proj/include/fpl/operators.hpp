#ifndef FPL_OPERATORS_HPP
#define FPL_OPERATORS_HPP

#include <optional>
#include <string>

namespace fpl {

enum class OpType { XFX, XFY, YFX, FY, FX };

struct OpDef {
  int priority;
  OpType type;
};

/// Fixed operator table: clause neck, conjunction, comparison and arithmetic,
/// plus the `.op.` truth comparisons accepted in queries.
std::optional<OpDef> infix_op(const std::string& name);
std::optional<OpDef> prefix_op(const std::string& name);

}  // namespace fpl

#endif  // FPL_OPERATORS_HPP
