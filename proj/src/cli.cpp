#include "fpl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "fpl/error.hpp"
#include "fpl/syntax.hpp"
#include "fpl/unify.hpp"

namespace fpl {

void check_config(const SessionConfig& config) {
  if (!(config.eps > 0.0)) throw DomainError("eps must be positive");
  if (config.depth_limit == 0) throw DomainError("depth limit must be positive");
}

Session::Session(SessionConfig config, std::ostream& out, std::ostream& err)
    : config_(config), out_(out), err_(err) {
  check_config(config_);
}

Session::~Session() = default;

bool Session::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    err_ << path << ": cannot open file\n";
    return false;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return load_source(ss.str(), path);
}

bool Session::load_source(const std::string& source, const std::string& origin) {
  LoadResult r = parse_program(source);
  bool ok = true;
  for (const Diagnostic& d : r.diagnostics) {
    err_ << origin << ":" << d.str() << "\n";
    ok = ok && !d.is_error();
  }
  if (!ok) return false;
  program_ = std::move(r.program);
  ground_.reset();
  lfp_.reset();
  return true;
}

const LfpResult& Session::fixpoint() {
  if (!ground_) {
    ground_ = std::make_unique<GroundProgram>(ground(program_));
    lfp_.reset();
  }
  if (!lfp_) lfp_ = lfp(*ground_, config_.eps);
  if (!lfp_->converged) {
    std::ostringstream msg;
    msg << "fixpoint did not converge after " << lfp_->iterations
        << " iterations (discrepancy " << format_real(lfp_->discrepancy) << ")";
    throw Error(msg.str());
  }
  return *lfp_;
}

std::vector<std::string> Session::model() { return render_interpretation(fixpoint().value); }

namespace {

class StreamCursor : public Session::Cursor {
 public:
  explicit StreamCursor(AnswerStream s) : stream_(std::move(s)) {}
  std::optional<std::string> next() override {
    auto a = stream_.next();
    if (!a) return std::nullopt;
    return render_answer(*a);
  }

 private:
  AnswerStream stream_;
};

class ListCursor : public Session::Cursor {
 public:
  explicit ListCursor(std::vector<std::string> lines) : lines_(std::move(lines)) {}
  std::optional<std::string> next() override {
    if (pos_ == lines_.size()) return std::nullopt;
    return lines_[pos_++];
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

// Source atom of a fuzzy goal: the goal without its truth argument.
TermPtr strip_truth(const TermPtr& goal) {
  std::vector<TermPtr> args(goal->args().begin(), goal->args().end() - 1);
  return args.empty() ? Term::atom(goal->name()) : Term::compound(goal->name(), std::move(args));
}

Answer make_answer(const TermPtr& goal, const Substitution& s, const BorelSet& truth) {
  Answer a;
  a.fuzzy = true;
  const TermPtr& slot = goal->arg(goal->arity() - 1);
  std::vector<TermPtr> vars;
  collect_variables(goal, vars);
  for (const TermPtr& v : vars) {
    if (v->name().empty() || v->name()[0] == '_') continue;
    if (slot->is_variable() && v->id() == slot->id()) continue;
    a.bindings.emplace_back(v->name(), s.apply(v));
  }
  a.truths.emplace_back(slot->is_variable() ? slot->name() : std::string(), truth);
  return a;
}

}  // namespace

std::unique_ptr<Session::Cursor> Session::query(const std::string& text) {
  const TermPtr goal = parse_query(text);
  const bool single_fuzzy = goal->is_compound() || goal->is_atom();
  const bool use_fixpoint =
      config_.engine == EngineKind::Fixpoint && single_fuzzy && goal->arity() > 0 &&
      program_.kind({goal->name(), goal->arity() - 1}) == PredicateKind::Fuzzy;
  if (!use_fixpoint) {
    EngineOptions o;
    o.strategy = config_.strategy;
    o.depth_limit = config_.depth_limit;
    o.eps = config_.eps;
    o.trace = config_.trace ? &out_ : nullptr;
    return std::make_unique<StreamCursor>(solve(program_, goal, o));
  }

  const LfpResult& fix = fixpoint();
  const TermPtr atom = strip_truth(goal);
  const TermPtr& slot = goal->arg(goal->arity() - 1);
  if (!slot->is_variable() && !slot->is_number()) {
    throw TypeError("truth argument must be a variable or a number: " + to_string(slot));
  }
  auto keep = [&](const BorelSet& v) {
    return slot->is_variable() || !intersect(v, BorelSet::point(slot->value())).empty();
  };
  std::vector<std::string> lines;
  bool matched = false;
  for (AtomId id = 0; id < ground_->size(); ++id) {
    Substitution s;
    if (!unify(atom, ground_->atom(id), s)) continue;
    matched = true;
    const BorelSet& v = fix.value.value(id);
    if (keep(v)) lines.push_back(render_answer(make_answer(goal, s.resolved(), v)));
  }
  if (!matched) {
    const BorelSet v = program_.default_for(key_of(atom));
    if (keep(v)) lines.push_back(render_answer(make_answer(goal, Substitution(), v)));
  }
  return std::make_unique<ListCursor>(std::move(lines));
}

int run_file(const std::string& path, const std::optional<std::string>& query,
             const SessionConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Session session(config, out, err);
    if (!session.load_file(path)) return 1;
    if (query) {
      auto cursor = session.query(*query);
      bool any = false;
      while (auto line = cursor->next()) {
        out << *line << "\n";
        any = true;
      }
      if (!any) out << "no\n";
    } else if (config.engine == EngineKind::Fixpoint) {
      for (const std::string& line : session.model()) out << line << "\n";
    }
    return 0;
  } catch (const ParseError& e) {
    err << "query:" << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits ":cmd arg" into command and argument.
std::pair<std::string, std::string> split_meta(const std::string& line) {
  const auto sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {line, ""};
  return {line.substr(0, sp), trim(line.substr(sp))};
}

}  // namespace

int run_repl(const std::optional<std::string>& path, const SessionConfig& config,
             std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
  Session session(config, out, err);
  if (path && !session.load_file(*path)) return 1;

  std::string pending;
  bool have_pending = false;
  while (true) {
    std::string line;
    if (have_pending) {
      line = pending;
      have_pending = false;
    } else {
      if (prompt) out << "?- " << std::flush;
      if (!std::getline(in, line)) break;
    }
    line = trim(line);
    if (line.empty() || line[0] == '%') continue;

    if (line[0] == ':') {
      auto [cmd, arg] = split_meta(line);
      if (cmd == ":quit" || cmd == ":q") break;
      if (cmd == ":load") {
        if (arg.empty()) {
          err << "usage: :load <path>\n";
        } else if (session.load_file(arg)) {
          out << "loaded " << arg << "\n";
        }
      } else if (cmd == ":engine") {
        if (arg == "topdown") {
          session.config().engine = EngineKind::TopDown;
        } else if (arg == "fixpoint") {
          session.config().engine = EngineKind::Fixpoint;
        } else {
          err << "usage: :engine topdown|fixpoint\n";
        }
      } else if (cmd == ":strategy") {
        if (arg == "df") {
          session.config().strategy = Strategy::DepthFirst;
        } else if (arg == "bf") {
          session.config().strategy = Strategy::BreadthFirst;
        } else {
          err << "usage: :strategy df|bf\n";
        }
      } else if (cmd == ":trace") {
        if (arg.empty()) {
          session.config().trace = !session.config().trace;
        } else if (arg == "on" || arg == "off") {
          session.config().trace = arg == "on";
        } else {
          err << "usage: :trace [on|off]\n";
        }
        out << "trace " << (session.config().trace ? "on" : "off") << "\n";
      } else {
        err << "unknown command " << cmd << "\n";
      }
      continue;
    }

    try {
      auto cursor = session.query(line);
      auto current = cursor->next();
      if (!current) {
        out << "no\n";
        continue;
      }
      // One answer of lookahead so `;` is only awaited when more exist.
      while (current) {
        auto following = cursor->next();
        out << *current << (following ? " ;" : "") << "\n" << std::flush;
        if (!following) break;
        std::string reply;
        if (!std::getline(in, reply)) break;
        if (trim(reply) != ";") {
          pending = reply;
          have_pending = !trim(reply).empty();
          break;
        }
        current = std::move(following);
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace fpl
