#ifndef FPL_SYNTAX_HPP
#define FPL_SYNTAX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fpl/program.hpp"

namespace fpl {

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;
  SourcePos pos;

  bool is_error() const { return severity == Severity::Error; }
  /// "3:1: error: p/1 both crisp and fuzzy"
  std::string str() const;
};

struct LoadResult {
  Program program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
};

/// Parses and validates a `.fpl` source. Clause order is preserved and every
/// truth literal is canonicalised. Diagnostics are collected per statement;
/// a statement with a syntax error is skipped.
LoadResult parse_program(std::string_view source,
                         std::shared_ptr<const AggregatorRegistry> registry = default_registry());

/// Goal text with optional leading `?-` and trailing `.`. Throws ParseError.
TermPtr parse_query(std::string_view source);

/// A single term, e.g. for tests. Throws ParseError.
TermPtr parse_term(std::string_view source);

/// Program invariants: crisp/fuzzy separation, aggregator names, piecewise
/// shape, default declarations. Warnings for fuzzy predicates without a
/// default declaration.
std::vector<Diagnostic> validate(const Program& program);

/// Truth literal term (number, [lo,hi], or `v`-joined union) as a BorelSet.
/// Throws DomainError or TypeError.
BorelSet truth_from_term(const TermPtr& t);

/// Source text that parses back to the same program.
std::string render_program(const Program& program);

}  // namespace fpl

#endif  // FPL_SYNTAX_HPP
