#ifndef FPL_CLI_HPP
#define FPL_CLI_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "fpl/engine.hpp"
#include "fpl/fixpoint.hpp"

namespace fpl {

enum class EngineKind { TopDown, Fixpoint };

struct SessionConfig {
  EngineKind engine = EngineKind::TopDown;
  Strategy strategy = Strategy::DepthFirst;
  std::size_t depth_limit = 100'000;
  /// Strict-bound margin for queries and convergence tolerance for lfp.
  double eps = 1e-9;
  bool trace = false;
};

/// Throws DomainError unless eps > 0 and depth_limit > 0.
void check_config(const SessionConfig& config);

/// Loaded program plus the settings queries run under.
class Session {
 public:
  explicit Session(SessionConfig config, std::ostream& out, std::ostream& err);
  ~Session();

  SessionConfig& config() { return config_; }

  /// Replaces the program. Diagnostics go to err; returns false if any is an
  /// error (the previous program is kept then).
  bool load_file(const std::string& path);
  bool load_source(const std::string& source, const std::string& origin);

  /// Lazy answers to one query; rendered lines, "yes" for a crisp success.
  class Cursor {
   public:
    virtual ~Cursor() = default;
    virtual std::optional<std::string> next() = 0;
  };
  /// Throws the engine's errors (and Error when lfp does not converge).
  std::unique_ptr<Cursor> query(const std::string& text);

  /// Least fixpoint of the grounded program as sorted "atom = truth" lines.
  /// Throws Error when iteration does not converge.
  std::vector<std::string> model();

 private:
  const LfpResult& fixpoint();

  SessionConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  Program program_;
  std::unique_ptr<GroundProgram> ground_;
  std::optional<LfpResult> lfp_;
};

/// Loads path and runs query (if any), printing one answer per line or "no".
/// With the fixpoint engine and no query, prints the least model.
/// Returns 0 on success, 1 on diagnostics, 2 on runtime errors.
int run_file(const std::string& path, const std::optional<std::string>& query,
             const SessionConfig& config, std::ostream& out, std::ostream& err);

/// Interactive loop over `in`. Lines are goals (optional `?-`, trailing `.`)
/// or meta-commands `:load <path>`, `:engine topdown|fixpoint`,
/// `:strategy df|bf`, `:trace [on|off]`, `:quit`. After an answer with more
/// to come, a line `;` asks for the next one; anything else accepts.
/// Returns 0, or 1 when the initial load failed.
int run_repl(const std::optional<std::string>& path, const SessionConfig& config,
             std::istream& in, std::ostream& out, std::ostream& err, bool prompt);

}  // namespace fpl

#endif  // FPL_CLI_HPP
