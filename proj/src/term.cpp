#include "fpl/term.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "fpl/operators.hpp"

namespace fpl {

TermPtr Term::variable(VarId id, std::string name) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Variable;
  t->id_ = id;
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::number(double value) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Number;
  t->value_ = value;
  return t;
}

TermPtr Term::atom(std::string name) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Atom;
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::compound(std::string functor, std::vector<TermPtr> args) {
  if (args.empty()) return atom(std::move(functor));
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Compound;
  t->name_ = std::move(functor);
  t->args_ = std::move(args);
  return t;
}

TermPtr Term::nil() {
  static const TermPtr empty = atom("[]");
  return empty;
}

TermPtr Term::cons(TermPtr head, TermPtr tail) {
  return compound(".", {std::move(head), std::move(tail)});
}

TermPtr Term::list(const std::vector<TermPtr>& items, TermPtr tail) {
  TermPtr out = tail ? std::move(tail) : nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Term::Kind::Variable:
      return a->id() == b->id();
    case Term::Kind::Number:
      return a->value() == b->value();
    case Term::Kind::Atom:
      return a->name() == b->name();
    case Term::Kind::Compound:
      if (a->name() != b->name() || a->arity() != b->arity()) return false;
      for (std::size_t i = 0; i < a->arity(); ++i) {
        if (!equal(a->arg(i), b->arg(i))) return false;
      }
      return true;
  }
  return false;
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  auto rank = [](const Term& t) { return static_cast<int>(t.kind()); };
  if (rank(*a) != rank(*b)) return rank(*a) < rank(*b) ? -1 : 1;
  switch (a->kind()) {
    case Term::Kind::Variable:
      return a->id() == b->id() ? 0 : (a->id() < b->id() ? -1 : 1);
    case Term::Kind::Number:
      return a->value() == b->value() ? 0 : (a->value() < b->value() ? -1 : 1);
    case Term::Kind::Atom:
      return a->name().compare(b->name()) < 0 ? -1 : (a->name() == b->name() ? 0 : 1);
    case Term::Kind::Compound: {
      if (a->arity() != b->arity()) return a->arity() < b->arity() ? -1 : 1;
      if (int c = a->name().compare(b->name()); c != 0) return c < 0 ? -1 : 1;
      for (std::size_t i = 0; i < a->arity(); ++i) {
        if (int c = compare(a->arg(i), b->arg(i)); c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

bool is_ground(const TermPtr& t) {
  if (t->is_variable()) return false;
  for (const auto& a : t->args()) {
    if (!is_ground(a)) return false;
  }
  return true;
}

void collect_variables(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->is_variable()) {
    for (const auto& v : out) {
      if (v->id() == t->id()) return;
    }
    out.push_back(t);
    return;
  }
  for (const auto& a : t->args()) collect_variables(a, out);
}

std::vector<TermPtr> variables_of(const TermPtr& t) {
  std::vector<TermPtr> out;
  collect_variables(t, out);
  return out;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::nearbyint(x) == x && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  // Prolog floats need a digit before any exponent: 1e-07 -> 1.0e-07.
  if (s.find('.') == std::string::npos) {
    auto e = s.find('e');
    if (e != std::string::npos) s.insert(e, ".0");
  }
  return s;
}

namespace {

bool is_symbol_char(char c) {
  static const std::string symbols = "+-*/\\^<>=~:.?@#&$";
  return symbols.find(c) != std::string::npos;
}

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool needs_spaces(const std::string& op) {
  return op != ",";
}

void render(const TermPtr& t, int max_prec, std::string& out);

void render_args(const TermPtr& t, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < t->arity(); ++i) {
    if (i) out += ',';
    render(t->arg(i), 999, out);
  }
  out += ')';
}

void render_list(const TermPtr& t, std::string& out) {
  out += '[';
  TermPtr cur = t;
  bool first = true;
  while (cur->is_cons()) {
    if (!first) out += ',';
    render(cur->arg(0), 999, out);
    first = false;
    cur = cur->arg(1);
  }
  if (!cur->is_nil()) {
    out += '|';
    render(cur, 999, out);
  }
  out += ']';
}

void render(const TermPtr& t, int max_prec, std::string& out) {
  switch (t->kind()) {
    case Term::Kind::Variable:
      out += t->name().empty() ? "_G" + std::to_string(t->id()) : t->name();
      return;
    case Term::Kind::Number: {
      std::string s = format_number(t->value());
      if (t->value() < 0 && max_prec < 200) {
        out += "(" + s + ")";
      } else {
        out += s;
      }
      return;
    }
    case Term::Kind::Atom: {
      const bool is_op = infix_op(t->name()) || prefix_op(t->name());
      if (is_op && max_prec < 1200 && t->name() != "[]") {
        out += "(" + quote_atom(t->name()) + ")";
      } else {
        out += quote_atom(t->name());
      }
      return;
    }
    case Term::Kind::Compound:
      break;
  }
  if (t->is_cons()) {
    render_list(t, out);
    return;
  }
  if (t->arity() == 2) {
    if (auto op = infix_op(t->name())) {
      const int p = op->priority;
      const int left = op->type == OpType::YFX ? p : p - 1;
      const int right = op->type == OpType::XFY ? p : p - 1;
      std::string s;
      render(t->arg(0), left, s);
      s += needs_spaces(t->name()) ? " " + quote_atom(t->name()) + " " : ",";
      render(t->arg(1), right, s);
      out += p > max_prec ? "(" + s + ")" : s;
      return;
    }
  }
  if (t->arity() == 1) {
    if (auto op = prefix_op(t->name()); op && !t->arg(0)->is_number()) {
      const int p = op->priority;
      const int inner = op->type == OpType::FY ? p : p - 1;
      std::string s = quote_atom(t->name());
      const bool alpha = is_alnum(t->name().back());
      std::string arg;
      render(t->arg(0), inner, arg);
      if (alpha || is_symbol_char(arg.front()) || arg.front() == '(') s += ' ';
      s += arg;
      out += p > max_prec ? "(" + s + ")" : s;
      return;
    }
  }
  out += quote_atom(t->name());
  render_args(t, out);
}

}  // namespace

std::string quote_atom(const std::string& name) {
  if (name.empty()) return "''";
  if (name == "[]" || name == "!" || name == ";" || name == "{}") return name;
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    bool plain = true;
    for (char c : name) plain = plain && is_alnum(c);
    if (plain) return name;
  }
  bool symbolic = true;
  for (char c : name) symbolic = symbolic && is_symbol_char(c);
  if (symbolic) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::string to_string(const TermPtr& t) { return to_string(t, 1200); }

std::string to_string(const TermPtr& t, int max_prec) {
  std::string out;
  render(t, max_prec, out);
  return out;
}

std::vector<TermPtr> conjuncts(const TermPtr& t) {
  std::vector<TermPtr> out;
  TermPtr cur = t;
  while (cur->is_compound() && cur->name() == "," && cur->arity() == 2) {
    out.push_back(cur->arg(0));
    cur = cur->arg(1);
  }
  out.push_back(cur);
  return out;
}

}  // namespace fpl
