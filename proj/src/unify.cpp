#include "fpl/unify.hpp"

namespace fpl {

TermPtr Substitution::lookup(VarId id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : it->second.value;
}

TermPtr Substitution::walk(TermPtr t) const {
  while (t->is_variable()) {
    TermPtr next = lookup(t->id());
    if (!next) break;
    t = std::move(next);
  }
  return t;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  if (bindings_.empty()) return t;
  if (t->is_variable()) {
    TermPtr v = walk(t);
    return v->is_variable() ? v : apply(v);
  }
  if (!t->is_compound()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->arity());
  bool changed = false;
  for (const auto& a : t->args()) {
    args.push_back(apply(a));
    changed = changed || args.back() != a;
  }
  return changed ? Term::compound(t->name(), std::move(args)) : t;
}

Substitution Substitution::resolved() const {
  Substitution out;
  for (const auto& [id, b] : bindings_) out.bindings_[id] = Binding{b.var, apply(b.value)};
  return out;
}

Substitution Substitution::restricted(std::span<const TermPtr> vars) const {
  Substitution out;
  for (const auto& v : vars) {
    if (TermPtr value = lookup(v->id())) out.bindings_[v->id()] = Binding{v, apply(value)};
  }
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
  if (a.bindings_.size() != b.bindings_.size()) return false;
  for (const auto& [id, binding] : a.bindings_) {
    TermPtr other = b.lookup(id);
    if (!other || !equal(binding.value, other)) return false;
  }
  return true;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [id, b] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(b.var) + "=" + to_string(b.value);
  }
  return out + "}";
}

namespace {

bool occurs(VarId id, const TermPtr& t, const Substitution& s) {
  TermPtr u = s.walk(t);
  if (u->is_variable()) return u->id() == id;
  for (const auto& a : u->args()) {
    if (occurs(id, a, s)) return true;
  }
  return false;
}

}  // namespace

bool unify(const TermPtr& a, const TermPtr& b, Substitution& s) {
  TermPtr x = s.walk(a);
  TermPtr y = s.walk(b);
  if (x->is_variable() && y->is_variable() && x->id() == y->id()) return true;
  if (x->is_variable()) {
    if (occurs(x->id(), y, s)) return false;
    s.bind(x, y);
    return true;
  }
  if (y->is_variable()) {
    if (occurs(y->id(), x, s)) return false;
    s.bind(y, x);
    return true;
  }
  if (x->kind() != y->kind()) return false;
  switch (x->kind()) {
    case Term::Kind::Number:
      return x->value() == y->value();
    case Term::Kind::Atom:
      return x->name() == y->name();
    case Term::Kind::Compound:
      if (x->name() != y->name() || x->arity() != y->arity()) return false;
      for (std::size_t i = 0; i < x->arity(); ++i) {
        if (!unify(x->arg(i), y->arg(i), s)) return false;
      }
      return true;
    case Term::Kind::Variable:
      break;
  }
  return false;
}

std::optional<Substitution> mgu(const TermPtr& a, const TermPtr& b) {
  Substitution s;
  if (!unify(a, b, s)) return std::nullopt;
  return s.resolved();
}

TermPtr VarSource::rename(const TermPtr& t, std::map<VarId, TermPtr>& mapping) {
  if (t->is_variable()) {
    auto it = mapping.find(t->id());
    if (it != mapping.end()) return it->second;
    const VarId id = next();
    TermPtr fresh = Term::variable(id, "_G" + std::to_string(id));
    mapping.emplace(t->id(), fresh);
    return fresh;
  }
  if (!t->is_compound()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->arity());
  for (const auto& a : t->args()) args.push_back(rename(a, mapping));
  return Term::compound(t->name(), std::move(args));
}

}  // namespace fpl
