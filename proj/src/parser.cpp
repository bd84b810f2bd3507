#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>

#include "fpl/operators.hpp"
#include "fpl/syntax.hpp"

namespace fpl {

namespace {

enum class Tok { Name, Var, Number, Punct, End, Eof, Bad };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  double number = 0.0;
  SourcePos pos;
  bool functional = false;  // name immediately followed by '('
  bool layout_before = false;
};

const std::string kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol(char c) { return kSymbolChars.find(c) != std::string::npos; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_layout(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      bool layout = skip_layout();
      Token t = next();
      t.layout_before = layout;
      const bool stop = t.kind == Tok::Eof;
      out.push_back(std::move(t));
      if (stop) break;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  bool at_end(std::size_t ahead = 0) const { return i_ + ahead >= src_.size(); }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  bool skip_layout() {
    bool any = false;
    while (!at_end()) {
      if (is_layout(peek())) {
        advance();
        any = true;
      } else if (peek() == '%') {
        while (!at_end() && peek() != '\n') advance();
        any = true;
      } else if (peek() == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (!at_end()) {
          advance();
          advance();
        }
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  // '.' that terminates a clause: followed by layout, '%' or end of input.
  bool end_dot_here() const {
    return peek() == '.' && (at_end(1) || is_layout(peek(1)) || peek(1) == '%');
  }

  Token next() {
    Token t;
    t.pos = SourcePos{line_, col_};
    if (at_end()) {
      t.kind = Tok::Eof;
      return t;
    }
    const char c = peek();
    if (end_dot_here()) {
      advance();
      t.kind = Tok::End;
      t.text = ".";
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
    if (c == '_' || std::isupper(static_cast<unsigned char>(c))) {
      t.kind = Tok::Var;
      while (!at_end() && is_alnum(peek())) {
        t.text += peek();
        advance();
      }
      return t;
    }
    if (c == 'v' && std::isdigit(static_cast<unsigned char>(peek(1))) && i_ > 0 &&
        (src_[i_ - 1] == ']' || std::isdigit(static_cast<unsigned char>(src_[i_ - 1])))) {
      // Union joiner glued to a point: "[0.2,0.5]v1".
      t.kind = Tok::Name;
      t.text = "v";
      advance();
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      while (!at_end() && is_alnum(peek())) {
        t.text += peek();
        advance();
      }
      t.functional = peek() == '(';
      return t;
    }
    if (c == '\'') return quoted(t);
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|' ||
        c == '{' || c == '}') {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    if (c == '!' || c == ';') {
      t.kind = Tok::Name;
      t.text = std::string(1, c);
      advance();
      t.functional = peek() == '(';
      return t;
    }
    if (is_symbol(c)) {
      t.kind = Tok::Name;
      // A symbol sequence is maximal; only a lone '.' ends a clause.
      while (!at_end() && is_symbol(peek())) {
        t.text += peek();
        advance();
      }
      if (t.text.empty()) {  // a lone end dot was handled above
        t.kind = Tok::Bad;
        t.text = "unexpected '.'";
        advance();
        return t;
      }
      t.functional = peek() == '(';
      return t;
    }
    t.kind = Tok::Bad;
    t.text = std::string("unexpected character '") + c + "'";
    advance();
    return t;
  }

  Token number(Token& t) {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      digits += peek();
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      digits += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        digits += peek();
        advance();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
    }
    t.kind = Tok::Number;
    t.text = digits;
    t.number = std::strtod(digits.c_str(), nullptr);
    return t;
  }

  Token quoted(Token& t) {
    advance();
    while (true) {
      if (at_end()) {
        t.kind = Tok::Bad;
        t.text = "unterminated quoted atom";
        return t;
      }
      char c = peek();
      advance();
      if (c == '\'') {
        if (peek() == '\'') {
          t.text += '\'';
          advance();
          continue;
        }
        break;
      }
      if (c == '\\' && !at_end()) {
        char e = peek();
        advance();
        switch (e) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          default: t.text += e; break;
        }
        continue;
      }
      t.text += c;
    }
    t.kind = Tok::Name;
    t.functional = peek() == '(';
    return t;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool truth_shaped(const TermPtr& t) {
  if (t->is_number() || t->is_cons()) return true;
  return t->is_compound() && t->name() == "v" && t->arity() == 2;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool at_eof() const { return peek().kind == Tok::Eof; }
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    if (at.kind == Tok::Bad) throw ParseError(at.text, at.pos);
    throw ParseError(msg, at.pos);
  }

  bool is_name(const Token& t, const char* text) const {
    return t.kind == Tok::Name && t.text == text;
  }
  bool is_punct(const Token& t, const char* text) const {
    return t.kind == Tok::Punct && t.text == text;
  }

  void expect_punct(const char* text) {
    if (!is_punct(peek(), text)) {
      fail(std::string("expected '") + text + "' but found " + describe(peek()), peek());
    }
    take();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("expected '.' but found " + describe(peek()), peek());
    take();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of clause";
      case Tok::Eof: return "end of input";
      case Tok::Bad: return t.text;
      default: return "'" + t.text + "'";
    }
  }

  // Skips to just past the next end token.
  void recover() {
    while (peek().kind != Tok::End && peek().kind != Tok::Eof) take();
    if (peek().kind == Tok::End) take();
  }

  void begin_clause() {
    vars_.clear();
    var_count_.clear();
    next_var_ = 1;
  }
  std::size_t occurrences(VarId id) const {
    auto it = var_count_.find(id);
    return it == var_count_.end() ? 0 : it->second;
  }

  // Operator precedence parser. Returns the term and its priority.
  std::pair<TermPtr, int> parse(int max_prec) {
    auto [left, left_prec] = parse_primary(max_prec);
    while (true) {
      const Token& t = peek();
      std::string name;
      if (t.kind == Tok::Name) {
        name = t.text;
      } else if (is_punct(t, ",")) {
        name = ",";
      } else {
        break;
      }
      if (name == "v" && truth_shaped(left) &&
          (peek(1).kind == Tok::Number || is_punct(peek(1), "["))) {
        if (200 > max_prec) break;
        take();
        auto [right, rp] = parse(200);
        (void)rp;
        left = Term::compound("v", {left, right});
        left_prec = 200;
        continue;
      }
      auto op = infix_op(name);
      if (!op || op->priority > max_prec) break;
      if (name == ":~" || name == ":#") break;  // clause-level separators
      const int p = op->priority;
      const int left_max = op->type == OpType::YFX ? p : p - 1;
      const int right_max = op->type == OpType::XFY ? p : p - 1;
      if (left_prec > left_max) break;
      take();
      auto [right, rp] = parse(right_max);
      (void)rp;
      left = Term::compound(name, {left, right});
      left_prec = p;
    }
    return {left, left_prec};
  }

  bool starts_term(const Token& t) const {
    switch (t.kind) {
      case Tok::Number:
      case Tok::Var:
        return true;
      case Tok::Name:
        return !infix_op(t.text).has_value() || t.functional;
      case Tok::Punct:
        return t.text == "(" || t.text == "[";
      default:
        return false;
    }
  }

  TermPtr variable(const Token& t) {
    if (t.text == "_") {
      const VarId id = next_var_++;
      var_count_[id] = 1;
      return Term::variable(id, "_");
    }
    auto it = vars_.find(t.text);
    if (it == vars_.end()) {
      it = vars_.emplace(t.text, Term::variable(next_var_++, t.text)).first;
    }
    ++var_count_[it->second->id()];
    return it->second;
  }

  std::pair<TermPtr, int> parse_primary(int max_prec) {
    const Token t = take();
    switch (t.kind) {
      case Tok::Number:
        return {Term::number(t.number), 0};
      case Tok::Var:
        return {variable(t), 0};
      case Tok::Punct:
        if (t.text == "(") {
          auto [inner, p] = parse(1200);
          (void)p;
          expect_punct(")");
          return {inner, 0};
        }
        if (t.text == "[") return {parse_list(), 0};
        fail("unexpected " + describe(t), t);
      case Tok::Name:
        break;
      default:
        fail("unexpected " + describe(t), t);
    }
    if (t.functional) {
      take();  // '('
      std::vector<TermPtr> args;
      while (true) {
        args.push_back(parse(999).first);
        if (is_punct(peek(), ",")) {
          take();
          continue;
        }
        expect_punct(")");
        break;
      }
      return {Term::compound(t.text, std::move(args)), 0};
    }
    if (t.text == "-" && peek().kind == Tok::Number && !peek().layout_before) {
      return {Term::number(-take().number), 0};
    }
    if (auto op = prefix_op(t.text); op && starts_term(peek())) {
      int p = op->priority;
      int arg_max = op->type == OpType::FY ? p : p - 1;
      if (p > max_prec) {
        p = 999;
        arg_max = 999;
      }
      auto [arg, ap] = parse(arg_max);
      (void)ap;
      return {Term::compound(t.text, {arg}), p};
    }
    return {Term::atom(t.text), 0};
  }

  TermPtr parse_list() {
    if (is_punct(peek(), "]")) {
      take();
      return Term::nil();
    }
    std::vector<TermPtr> items;
    TermPtr tail;
    while (true) {
      items.push_back(parse(999).first);
      if (is_punct(peek(), ",")) {
        take();
        continue;
      }
      if (is_punct(peek(), "|")) {
        take();
        tail = parse(999).first;
      }
      expect_punct("]");
      break;
    }
    return Term::list(items, tail);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, TermPtr> vars_;
  std::map<VarId, std::size_t> var_count_;
  VarId next_var_ = 1;
};

std::vector<TermPtr> body_goals(const TermPtr& body, const Token& at) {
  std::vector<TermPtr> goals = conjuncts(body);
  for (const auto& g : goals) {
    if (!g->is_callable()) {
      throw ParseError("body goal " + to_string(g) + " is not callable", at.pos);
    }
  }
  return goals;
}

class ProgramReader {
 public:
  ProgramReader(Parser& p, LoadResult& out) : p_(p), out_(out) {}

  void run() {
    while (!p_.at_eof()) {
      const Token start = p_.peek();
      try {
        statement();
      } catch (const ParseError& e) {
        out_.diagnostics.push_back({Diagnostic::Severity::Error, e.message(), e.pos()});
        p_.recover();
      } catch (const Error& e) {
        out_.diagnostics.push_back({Diagnostic::Severity::Error, e.what(), start.pos});
        p_.recover();
      }
    }
  }

 private:
  void statement() {
    p_.begin_clause();
    const Token start = p_.peek();
    if (p_.is_name(start, ":-") && !start.functional) {
      p_.take();
      TermPtr d = p_.parse(1199).first;
      p_.expect_end();
      directive(d, start);
      return;
    }
    if (p_.is_name(start, "?-")) {
      throw ParseError("queries are not allowed in program text", start.pos);
    }
    TermPtr head = p_.parse(1199).first;
    const Token neck = p_.peek();
    if (neck.kind == Tok::End) {
      p_.take();
      check_head(head, start);
      out_.program.add_clause(CrispClause{head, {}, start.pos});
      return;
    }
    if (p_.is_name(neck, ":-")) {
      p_.take();
      TermPtr body = p_.parse(1199).first;
      p_.expect_end();
      check_head(head, start);
      crisp_rule(head, body_goals(body, neck), start);
      return;
    }
    if (p_.is_name(neck, ":~")) {
      p_.take();
      check_head(head, start);
      fuzzy(head, start);
      return;
    }
    if (p_.is_name(neck, ":#")) {
      p_.take();
      TermPtr rhs = p_.parse(1199).first;
      p_.expect_end();
      piecewise(head, rhs, start);
      return;
    }
    p_.fail("expected '.', ':-', ':~' or ':#' but found " + Parser::describe(neck), neck);
  }

  void check_head(const TermPtr& head, const Token& at) {
    if (!head->is_callable()) {
      throw ParseError("clause head " + to_string(head) + " is not callable", at.pos);
    }
    if (is_builtin(key_of(head))) {
      throw ParseError("cannot redefine built-in " + key_of(head).str(), at.pos);
    }
  }

  // f_p(X1..Xn, 1) :- p(X1..Xn).
  static bool fuzzify_idiom(const TermPtr& head, const std::vector<TermPtr>& body) {
    if (body.size() != 1) return false;
    const TermPtr& b = body.front();
    if (head->name() != "f_" + b->name() || head->arity() != b->arity() + 1) return false;
    const TermPtr& truth = head->arg(head->arity() - 1);
    if (!truth->is_number() || truth->value() != 1.0) return false;
    for (std::size_t i = 0; i < b->arity(); ++i) {
      if (!head->arg(i)->is_variable() || !equal(head->arg(i), b->arg(i))) return false;
      for (std::size_t j = 0; j < i; ++j) {
        if (equal(head->arg(i), head->arg(j))) return false;
      }
    }
    return true;
  }

  void crisp_rule(const TermPtr& head, std::vector<TermPtr> body, const Token& at) {
    if (fuzzify_idiom(head, body)) {
      PredicateKey crisp = key_of(body.front());
      out_.program.add_fuzzify(
          FuzzifyDecl{PredicateKey{head->name(), crisp.arity}, crisp, at.pos});
      return;
    }
    out_.program.add_clause(CrispClause{head, std::move(body), at.pos});
  }

  static TermPtr strip_last(const TermPtr& t) {
    std::vector<TermPtr> args(t->args().begin(), t->args().end() - 1);
    return Term::compound(t->name(), std::move(args));
  }

  // Last argument is a named variable used nowhere else in the clause.
  bool singleton_truth_var(const TermPtr& atom) const {
    if (!atom->is_compound()) return false;
    const TermPtr& last = atom->arg(atom->arity() - 1);
    return last->is_variable() && last->name() != "_" && p_.occurrences(last->id()) == 1;
  }

  void fuzzy(const TermPtr& head, const Token& start) {
    const Token first = p_.peek();
    if (first.kind == Tok::End) {
      // h(Args.., Truth) :~ .
      p_.take();
      if (!head->is_compound() || !truth_shaped(head->arg(head->arity() - 1))) {
        throw ParseError("fact with empty body needs a truth value as last argument",
                         start.pos);
      }
      out_.program.add_clause(FuzzyFact{strip_last(head),
                                        truth_from_term(head->arg(head->arity() - 1)),
                                        start.pos});
      return;
    }
    std::string aggregator;
    if (first.kind == Tok::Name && !first.functional && !infix_op(first.text) &&
        !prefix_op(first.text) && p_.starts_term(p_.peek(1)) &&
        p_.peek(1).kind != Tok::Punct) {
      aggregator = p_.take().text;
    } else if (first.kind == Tok::Name && !first.functional && p_.is_punct(p_.peek(1), "(")) {
      aggregator = p_.take().text;
    }
    const Token body_start = p_.peek();
    TermPtr rhs = p_.parse(1199).first;
    p_.expect_end();
    if (aggregator.empty() && truth_shaped(rhs)) {
      out_.program.add_clause(FuzzyFact{head, truth_from_term(rhs), start.pos});
      return;
    }
    std::vector<TermPtr> body = body_goals(rhs, body_start);
    TermPtr h = head;
    if (singleton_truth_var(head)) {
      // Explicit truth-argument form: drop the truth slots.
      h = strip_last(head);
      for (TermPtr& b : body) {
        if (singleton_truth_var(b)) b = strip_last(b);
      }
    }
    if (aggregator.empty()) aggregator = "min";
    out_.program.add_clause(FuzzyClause{h, aggregator, std::move(body), start.pos});
  }

  void piecewise(const TermPtr& head, const TermPtr& rhs, const Token& at) {
    if (!head->is_atom()) {
      throw ParseError("membership declaration needs a bare predicate name", at.pos);
    }
    if (!(rhs->is_compound() && rhs->name() == "fuzzy_predicate" && rhs->arity() == 1)) {
      throw ParseError("expected fuzzy_predicate([(x,mu),...]) after ':#'", at.pos);
    }
    PiecewiseDecl decl{head->name(), {}, at.pos};
    TermPtr cur = rhs->arg(0);
    while (cur->is_cons()) {
      const TermPtr& pt = cur->arg(0);
      if (!(pt->is_compound() && pt->name() == "," && pt->arity() == 2 &&
            pt->arg(0)->is_number() && pt->arg(1)->is_number())) {
        throw ParseError("membership point " + to_string(pt) + " is not a (number,number) pair",
                         at.pos);
      }
      decl.points.emplace_back(pt->arg(0)->value(), pt->arg(1)->value());
      cur = cur->arg(1);
    }
    if (!cur->is_nil()) throw ParseError("membership points must form a proper list", at.pos);
    out_.program.add_piecewise(std::move(decl));
  }

  void directive(const TermPtr& d, const Token& at) {
    if (d->is_compound() && d->name() == "default" && d->arity() == 2) {
      const TermPtr& spec = d->arg(0);
      if (!(spec->is_compound() && spec->name() == "/" && spec->arity() == 2 &&
            spec->arg(0)->is_atom() && spec->arg(1)->is_number() &&
            spec->arg(1)->value() >= 0 &&
            spec->arg(1)->value() == static_cast<double>(static_cast<std::size_t>(spec->arg(1)->value())))) {
        throw ParseError("default/2 expects name/arity, got " + to_string(spec), at.pos);
      }
      PredicateKey key{spec->arg(0)->name(), static_cast<std::size_t>(spec->arg(1)->value())};
      out_.program.add_default(DefaultDecl{key, truth_from_term(d->arg(1)), at.pos});
      return;
    }
    throw ParseError("unknown directive " + to_string(d), at.pos);
  }

  Parser& p_;
  LoadResult& out_;
};

}  // namespace

BorelSet truth_from_term(const TermPtr& t) {
  std::vector<Interval> parts;
  std::vector<TermPtr> pending{t};
  while (!pending.empty()) {
    TermPtr cur = pending.back();
    pending.pop_back();
    if (cur->is_compound() && cur->name() == "v" && cur->arity() == 2) {
      pending.push_back(cur->arg(1));
      pending.push_back(cur->arg(0));
    } else if (cur->is_number()) {
      parts.push_back(Interval::make(cur->value(), cur->value()));
    } else if (cur->is_cons() && cur->arg(0)->is_number() && cur->arg(1)->is_cons() &&
               cur->arg(1)->arg(0)->is_number() && cur->arg(1)->arg(1)->is_nil()) {
      parts.push_back(Interval::make(cur->arg(0)->value(), cur->arg(1)->arg(0)->value()));
    } else {
      throw TypeError("not a truth value: " + to_string(cur));
    }
  }
  return BorelSet::canonicalize(std::move(parts));
}

std::string Diagnostic::str() const {
  return pos.str() + ": " + (is_error() ? "error: " : "warning: ") + message;
}

bool LoadResult::ok() const {
  for (const auto& d : diagnostics) {
    if (d.is_error()) return false;
  }
  return true;
}

LoadResult parse_program(std::string_view source,
                         std::shared_ptr<const AggregatorRegistry> registry) {
  LoadResult out{Program(std::move(registry)), {}};
  Parser parser(Lexer(source).run());
  ProgramReader(parser, out).run();
  auto more = validate(out.program);
  out.diagnostics.insert(out.diagnostics.end(), more.begin(), more.end());
  return out;
}

namespace {

TermPtr parse_single(std::string_view source, bool query) {
  Parser p(Lexer(source).run());
  p.begin_clause();
  if (query && p.is_name(p.peek(), "?-")) p.take();
  if (p.peek().kind == Tok::Eof || p.peek().kind == Tok::End) {
    p.fail("empty input", p.peek());
  }
  TermPtr t = p.parse(1200).first;
  if (p.peek().kind == Tok::End) p.take();
  if (!p.at_eof()) p.fail("unexpected " + Parser::describe(p.peek()) + " after term", p.peek());
  return t;
}

}  // namespace

TermPtr parse_query(std::string_view source) {
  TermPtr q = parse_single(source, true);
  for (const auto& g : conjuncts(q)) {
    if (!g->is_callable()) throw ParseError("goal " + to_string(g) + " is not callable", {1, 1});
  }
  return q;
}

TermPtr parse_term(std::string_view source) { return parse_single(source, false); }

}  // namespace fpl
