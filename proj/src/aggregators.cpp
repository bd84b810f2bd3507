#include "fpl/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fpl/error.hpp"

namespace fpl {

namespace {

constexpr double kAxiomTolerance = 1e-12;
constexpr int kMonotonicitySamples = 200;

std::string tuple_str(std::span<const double> xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_real(xs[i]);
  }
  return out + ")";
}

void check_axioms(const Aggregator& agg) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<double> zeros(n, 0.0), ones(n, 1.0);
    if (std::abs(agg(zeros)) > kAxiomTolerance) {
      throw AxiomError("aggregator '" + agg.name() + "': f" + tuple_str(zeros) +
                       " = " + format_real(agg(zeros)) + ", expected 0");
    }
    if (std::abs(agg(ones) - 1.0) > kAxiomTolerance) {
      throw AxiomError("aggregator '" + agg.name() + "': f" + tuple_str(ones) +
                       " = " + format_real(agg(ones)) + ", expected 1");
    }
    std::vector<double> xs(n);
    for (int s = 0; s < kMonotonicitySamples; ++s) {
      for (double& x : xs) x = unit(rng);
      const double base = agg(xs);
      if (base < -kAxiomTolerance || base > 1.0 + kAxiomTolerance) {
        throw AxiomError("aggregator '" + agg.name() + "': f" + tuple_str(xs) +
                         " = " + format_real(base) + " lies outside [0,1]");
      }
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> up = xs;
        up[k] = xs[k] + (1.0 - xs[k]) * unit(rng);
        const double raised = agg(up);
        if (raised < base - kAxiomTolerance) {
          throw AxiomError("aggregator '" + agg.name() + "' is not monotone: f" +
                           tuple_str(xs) + " = " + format_real(base) + " > f" +
                           tuple_str(up) + " = " + format_real(raised));
        }
      }
    }
  }
}

}  // namespace

Aggregator Aggregator::fold(std::string name, std::function<double(double, double)> op) {
  return Aggregator(std::move(name), [op = std::move(op)](std::span<const double> xs) {
    double acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) acc = op(acc, xs[i]);
    return acc;
  });
}

AggregatorRegistry AggregatorRegistry::with_builtins() {
  AggregatorRegistry r;
  r.add(Aggregator::fold("min", [](double a, double b) { return std::min(a, b); }));
  r.add(Aggregator::fold("max", [](double a, double b) { return std::max(a, b); }));
  r.add(Aggregator::fold("prod", [](double a, double b) { return a * b; }));
  // Lukasiewicz t-norm; the fold of max(0, a+b-1) is max(0, sum - (n-1)).
  r.add(Aggregator::fold("luka", [](double a, double b) { return std::max(0.0, a + b - 1.0); }));
  r.add(Aggregator("mean", [](std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  }));
  return r;
}

void AggregatorRegistry::add(Aggregator agg) {
  if (table_.count(agg.name())) {
    throw RegistrationError("aggregator '" + agg.name() + "' is already registered");
  }
  check_axioms(agg);
  auto name = agg.name();
  table_.emplace(std::move(name), std::make_shared<const Aggregator>(std::move(agg)));
}

AggregatorPtr AggregatorRegistry::resolve(const std::string& name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw ResolutionError("unknown aggregator '" + name + "'");
  return it->second;
}

std::vector<std::string> AggregatorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : table_) out.push_back(name);
  return out;
}

std::shared_ptr<const AggregatorRegistry> default_registry() {
  static const auto registry =
      std::make_shared<const AggregatorRegistry>(AggregatorRegistry::with_builtins());
  return registry;
}

Interval interval_aggregate(const Aggregator& agg, std::span<const Interval> args) {
  std::vector<double> lows, highs;
  lows.reserve(args.size());
  highs.reserve(args.size());
  for (const Interval& i : args) {
    lows.push_back(i.lo);
    highs.push_back(i.hi);
  }
  return Interval::make(agg(lows), agg(highs));
}

BorelSet union_aggregate(const Aggregator& agg, std::span<const BorelSet> args) {
  if (args.empty()) return BorelSet();
  for (const BorelSet& a : args) {
    if (a.empty()) return BorelSet();
  }
  // Odometer over the Cartesian product of components.
  std::vector<std::size_t> index(args.size(), 0);
  std::vector<Interval> pick(args.size());
  std::vector<Interval> images;
  while (true) {
    for (std::size_t k = 0; k < args.size(); ++k) pick[k] = args[k].intervals()[index[k]];
    images.push_back(interval_aggregate(agg, pick));
    std::size_t k = 0;
    while (k < args.size() && ++index[k] == args[k].size()) index[k++] = 0;
    if (k == args.size()) break;
  }
  return BorelSet::canonicalize(std::move(images));
}

}  // namespace fpl
