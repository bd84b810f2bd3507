#ifndef FPL_AGGREGATORS_HPP
#define FPL_AGGREGATORS_HPP

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fpl/truth.hpp"

namespace fpl {

/// Pointwise aggregation f: [0,1]^n -> [0,1], defined for every n >= 1.
using PointFunction = std::function<double(std::span<const double>)>;

/// A named aggregation operator. Must satisfy f(0..0) = 0, f(1..1) = 1 and
/// be monotone in every argument; AggregatorRegistry checks this on entry.
class Aggregator {
 public:
  Aggregator(std::string name, PointFunction fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  /// n-ary aggregator defined by a left fold of a binary operator.
  static Aggregator fold(std::string name, std::function<double(double, double)> op);

  const std::string& name() const { return name_; }
  double operator()(std::span<const double> xs) const { return fn_(xs); }
  double operator()(std::initializer_list<double> xs) const {
    return fn_(std::span<const double>(xs.begin(), xs.size()));
  }

 private:
  std::string name_;
  PointFunction fn_;
};

using AggregatorPtr = std::shared_ptr<const Aggregator>;

class AggregatorRegistry {
 public:
  /// Empty registry; see with_builtins().
  AggregatorRegistry() = default;

  /// Registry holding min, max, prod, luka and mean.
  static AggregatorRegistry with_builtins();

  /// Throws RegistrationError on a duplicate name and AxiomError (with the
  /// offending tuple) when the boundary or monotonicity spot checks fail.
  void add(Aggregator agg);

  /// Throws ResolutionError for unknown names.
  AggregatorPtr resolve(const std::string& name) const;
  bool contains(const std::string& name) const { return table_.count(name) != 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, AggregatorPtr> table_;
};

/// Shared registry with the built-ins, used when a caller supplies none.
std::shared_ptr<const AggregatorRegistry> default_registry();

/// [f(lo_1..lo_n), f(hi_1..hi_n)]
Interval interval_aggregate(const Aggregator& agg, std::span<const Interval> args);

/// Union of interval_aggregate over the Cartesian product of the argument
/// components. Any empty argument yields the empty set.
BorelSet union_aggregate(const Aggregator& agg, std::span<const BorelSet> args);

}  // namespace fpl

#endif  // FPL_AGGREGATORS_HPP
