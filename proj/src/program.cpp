#include "fpl/program.hpp"

#include <algorithm>
#include <set>

namespace fpl {

PredicateKey key_of(const TermPtr& atom) {
  return PredicateKey{atom->name(), atom->arity()};
}

const TermPtr& head_of(const Clause& c) {
  return std::visit([](const auto& x) -> const TermPtr& { return x.head; }, c);
}

SourcePos pos_of(const Clause& c) {
  return std::visit([](const auto& x) { return x.pos; }, c);
}

bool is_crisp(const Clause& c) { return std::holds_alternative<CrispClause>(c); }

bool is_builtin(const PredicateKey& key) {
  static const std::set<std::string> binary = {
      "=", "\\=", "==", "\\==", "is", "<", ">", "=<", ">=", "=:=", "=\\="};
  if (key.arity == 2) return binary.count(key.name) != 0;
  if (key.arity == 0) return key.name == "true" || key.name == "fail";
  return false;
}

Program::Program(std::shared_ptr<const AggregatorRegistry> registry)
    : registry_(std::move(registry)) {}

void Program::add_clause(Clause clause) {
  const PredicateKey key = key_of(head_of(clause));
  auto [it, inserted] = clauses_.try_emplace(key);
  if (inserted) order_.push_back(key);
  it->second.push_back(std::move(clause));
}

void Program::add_piecewise(PiecewiseDecl decl) {
  auto name = decl.name;
  piecewise_.insert_or_assign(std::move(name), std::move(decl));
}

void Program::add_default(DefaultDecl decl) { default_decls_.push_back(std::move(decl)); }

void Program::add_fuzzify(FuzzifyDecl decl) {
  auto key = decl.wrapper;
  fuzzified_.insert_or_assign(std::move(key), std::move(decl));
}

PredicateKey Program::fuzzify(const PredicateKey& crisp) {
  const PredicateKind k = kind(crisp);
  if (k == PredicateKind::Fuzzy || k == PredicateKind::Piecewise ||
      k == PredicateKind::Fuzzified) {
    throw Error("cannot fuzzify " + crisp.str() + ": it is a fuzzy predicate");
  }
  PredicateKey wrapper{"f_" + crisp.name, crisp.arity};
  add_fuzzify(FuzzifyDecl{wrapper, crisp, SourcePos{}});
  return wrapper;
}

const std::vector<Clause>& Program::clauses(const PredicateKey& key) const {
  static const std::vector<Clause> none;
  auto it = clauses_.find(key);
  return it == clauses_.end() ? none : it->second;
}

const PiecewiseDecl* Program::piecewise(const std::string& name) const {
  auto it = piecewise_.find(name);
  return it == piecewise_.end() ? nullptr : &it->second;
}

std::optional<PredicateKey> Program::fuzzify_target(const PredicateKey& wrapper) const {
  if (auto it = fuzzified_.find(wrapper); it != fuzzified_.end()) return it->second.crisp;
  if (wrapper.name.size() > 2 && wrapper.name.starts_with("f_") && !clauses_.count(wrapper)) {
    PredicateKey base{wrapper.name.substr(2), wrapper.arity};
    auto it = clauses_.find(base);
    if ((it != clauses_.end() && is_crisp(it->second.front())) || is_builtin(base)) return base;
  }
  return std::nullopt;
}

bool Program::defines_fuzzy(const PredicateKey& key) const {
  if (auto it = clauses_.find(key); it != clauses_.end() && !is_crisp(it->second.front())) {
    return true;
  }
  if (key.arity == 1 && piecewise_.count(key.name)) return true;
  return fuzzify_target(key).has_value();
}

PredicateKey Program::default_target(const DefaultDecl& decl) const {
  if (decl.declared.arity > 0) {
    PredicateKey shifted{decl.declared.name, decl.declared.arity - 1};
    if (defines_fuzzy(shifted)) return shifted;
  }
  return decl.declared;
}

PredicateKind Program::kind(const PredicateKey& key) const {
  if (is_builtin(key)) return PredicateKind::Builtin;
  if (auto it = clauses_.find(key); it != clauses_.end()) {
    return is_crisp(it->second.front()) ? PredicateKind::Crisp : PredicateKind::Fuzzy;
  }
  if (key.arity == 1 && piecewise_.count(key.name)) return PredicateKind::Piecewise;
  if (fuzzify_target(key)) return PredicateKind::Fuzzified;
  for (const DefaultDecl& d : default_decls_) {
    if (default_target(d) == key) return PredicateKind::Fuzzy;
  }
  return PredicateKind::Unknown;
}

bool Program::is_fuzzy_kind(const PredicateKey& key) const {
  const PredicateKind k = kind(key);
  return k == PredicateKind::Fuzzy || k == PredicateKind::Piecewise ||
         k == PredicateKind::Fuzzified;
}

BorelSet Program::default_for(const PredicateKey& key) const {
  for (const DefaultDecl& d : default_decls_) {
    if (default_target(d) == key) return d.value;
  }
  if (fuzzify_target(key)) return BorelSet::point(0.0);
  return global_default_;
}

bool Program::empty() const {
  return clauses_.empty() && piecewise_.empty() && default_decls_.empty() &&
         fuzzified_.empty();
}

}  // namespace fpl
