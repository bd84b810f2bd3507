#include "fpl/syntax.hpp"

namespace fpl {

namespace {

std::string goals(const std::vector<TermPtr>& body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(body[i], 999);
  }
  return out;
}

std::string render_clause(const Clause& c) {
  if (const auto* f = std::get_if<FuzzyFact>(&c)) {
    return to_string(f->head) + " :~ " + to_string(f->truth) + ".";
  }
  if (const auto* r = std::get_if<FuzzyClause>(&c)) {
    return to_string(r->head) + " :~ " + r->aggregator + " " + goals(r->body) + ".";
  }
  const auto& k = std::get<CrispClause>(c);
  if (k.body.empty()) return to_string(k.head) + ".";
  return to_string(k.head) + " :- " + goals(k.body) + ".";
}

}  // namespace

std::string render_program(const Program& program) {
  std::string out;
  for (const DefaultDecl& d : program.default_decls()) {
    out += ":- default(" + quote_atom(d.declared.name) + "/" + std::to_string(d.declared.arity) +
           ", " + to_string(d.value) + ").\n";
  }
  for (const auto& [name, decl] : program.piecewise_decls()) {
    out += quote_atom(name) + " :# fuzzy_predicate([";
    for (std::size_t i = 0; i < decl.points.size(); ++i) {
      if (i) out += ",";
      out += "(" + format_number(decl.points[i].first) + "," +
             format_number(decl.points[i].second) + ")";
    }
    out += "]).\n";
  }
  for (const auto& [wrapper, decl] : program.fuzzify_decls()) {
    std::vector<TermPtr> args;
    for (std::size_t i = 0; i < decl.crisp.arity; ++i) {
      args.push_back(Term::variable(i + 1, "X" + std::to_string(i + 1)));
    }
    TermPtr crisp = Term::compound(decl.crisp.name, args);
    args.push_back(Term::number(1));
    out += to_string(Term::compound(wrapper.name, args)) + " :- " + to_string(crisp) + ".\n";
  }
  for (const PredicateKey& key : program.predicates()) {
    for (const Clause& c : program.clauses(key)) out += render_clause(c) + "\n";
  }
  return out;
}

}  // namespace fpl
