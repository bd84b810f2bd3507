#include <set>

#include "fpl/syntax.hpp"

namespace fpl {

namespace {

Diagnostic error(std::string msg, SourcePos pos) {
  return Diagnostic{Diagnostic::Severity::Error, std::move(msg), pos};
}

Diagnostic warning(std::string msg, SourcePos pos) {
  return Diagnostic{Diagnostic::Severity::Warning, std::move(msg), pos};
}

}  // namespace

std::vector<Diagnostic> validate(const Program& program) {
  std::vector<Diagnostic> out;

  for (const PredicateKey& key : program.predicates()) {
    const auto& clauses = program.clauses(key);
    const bool crisp_first = is_crisp(clauses.front());
    for (const Clause& c : clauses) {
      if (is_crisp(c) != crisp_first) {
        out.push_back(error(key.str() + " both crisp and fuzzy", pos_of(c)));
        break;
      }
    }
    for (const Clause& c : clauses) {
      if (const auto* fc = std::get_if<FuzzyClause>(&c)) {
        if (!program.registry()->contains(fc->aggregator)) {
          out.push_back(error("unknown aggregator '" + fc->aggregator + "' in clause for " +
                                  key.str(),
                              fc->pos));
        }
      } else if (const auto* ff = std::get_if<FuzzyFact>(&c)) {
        if (ff->truth.empty()) out.push_back(error("empty truth value for " + key.str(), ff->pos));
      }
    }
    if (key.arity == 1 && program.piecewise(key.name) && !crisp_first) {
      out.push_back(error(key.str() + " has both clauses and a membership function",
                          pos_of(clauses.front())));
    }
  }

  for (const auto& [wrapper, decl] : program.fuzzify_decls()) {
    if (!program.clauses(wrapper).empty()) {
      out.push_back(error(wrapper.str() + " is a fuzzified wrapper and also has clauses", decl.pos));
    }
    const PredicateKind k = program.kind(decl.crisp);
    if (k == PredicateKind::Fuzzy || k == PredicateKind::Piecewise ||
        k == PredicateKind::Fuzzified) {
      out.push_back(error("cannot fuzzify fuzzy predicate " + decl.crisp.str(), decl.pos));
    }
  }

  for (const auto& [name, decl] : program.piecewise_decls()) {
    if (decl.points.size() < 2) {
      out.push_back(error("membership function " + name + " needs at least 2 points", decl.pos));
    }
    for (std::size_t i = 0; i < decl.points.size(); ++i) {
      const auto [x, mu] = decl.points[i];
      if (mu < 0.0 || mu > 1.0) {
        out.push_back(error("membership function " + name + ": mu " + format_real(mu) +
                                " outside [0,1]",
                            decl.pos));
      }
      if (i > 0 && !(x > decl.points[i - 1].first)) {
        out.push_back(error("membership function " + name + ": x not strictly increasing at " +
                                format_number(x),
                            decl.pos));
      }
    }
  }

  std::set<PredicateKey> declared;
  for (const DefaultDecl& d : program.default_decls()) {
    const PredicateKey target = program.default_target(d);
    if (!declared.insert(target).second) {
      out.push_back(error("duplicate default for " + d.declared.str(), d.pos));
    }
    if (program.kind(target) == PredicateKind::Crisp ||
        program.kind(target) == PredicateKind::Builtin) {
      out.push_back(error("default declared for crisp predicate " + d.declared.str(), d.pos));
    }
    if (d.value.empty()) out.push_back(error("empty default for " + d.declared.str(), d.pos));
  }

  for (const PredicateKey& key : program.predicates()) {
    const auto& clauses = program.clauses(key);
    if (is_crisp(clauses.front()) || declared.count(key)) continue;
    out.push_back(warning("fuzzy predicate " + key.str() +
                              " has no default declaration; using " +
                              to_string(program.global_default()),
                          pos_of(clauses.front())));
  }
  return out;
}

}  // namespace fpl
