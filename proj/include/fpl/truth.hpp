#ifndef FPL_TRUTH_HPP
#define FPL_TRUTH_HPP

#include <span>
#include <string>
#include <vector>

namespace fpl {

/// Merge and comparison tolerance for interval endpoints.
inline constexpr double kTolerance = 1e-9;

/// Closed subinterval [lo, hi] of [0,1].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  /// Validating constructor; throws DomainError unless 0 <= lo <= hi <= 1
  /// (endpoints within kTolerance of the bounds are clamped).
  static Interval make(double lo, double hi);

  bool is_point() const { return hi - lo <= kTolerance; }
  bool contains(double x) const {
    return x >= lo - kTolerance && x <= hi + kTolerance;
  }
};

/// lo/hi agree within kTolerance.
bool approx_equal(const Interval& a, const Interval& b);

/// a is nested in b: b.lo <= a.lo and a.hi <= b.hi.
bool interval_included(const Interval& a, const Interval& b);

std::string to_string(const Interval& i);

/// A truth value: finite union of closed subintervals of [0,1], kept in
/// canonical form (sorted, disjoint, non-touching). The empty set stands for
/// an unsolvable truth constraint, i.e. a failed derivation.
class BorelSet {
 public:
  BorelSet() = default;

  /// Sorts and coalesces overlapping or touching intervals.
  static BorelSet canonicalize(std::vector<Interval> raw);

  static BorelSet point(double x);
  static BorelSet interval(double lo, double hi);
  /// The whole unit interval [0,1] (open-world "unknown").
  static BorelSet unit() { return interval(0.0, 1.0); }

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;

  double min() const { return intervals_.front().lo; }
  double max() const { return intervals_.back().hi; }

  /// Structural equality of canonical forms within kTolerance.
  friend bool operator==(const BorelSet& a, const BorelSet& b);

 private:
  std::vector<Interval> intervals_;
};

BorelSet unite(const BorelSet& a, const BorelSet& b);
BorelSet intersect(const BorelSet& a, const BorelSet& b);

/// Borel inclusion. On canonical operands every interval of u must sit
/// inside a single interval of v.
bool borel_included(const BorelSet& u, const BorelSet& v);

/// Hausdorff distance between two non-empty sets; 1 if exactly one is empty.
double hausdorff(const BorelSet& a, const BorelSet& b);

/// "0.7", "[0.2,0.5]", "[0.2,0.5]v[0.8,1]", or "empty".
std::string to_string(const BorelSet& s);

/// Shortest decimal form of a truth endpoint, rounded to 12 significant digits.
std::string format_real(double x);

}  // namespace fpl

#endif  // FPL_TRUTH_HPP
