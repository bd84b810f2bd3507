#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fpl/aggregators.hpp"
#include "fpl/error.hpp"
#include "support.hpp"

namespace fpl {
namespace {

const AggregatorRegistry& registry() {
  static const AggregatorRegistry r = AggregatorRegistry::with_builtins();
  return r;
}

double luka_oracle(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return std::max(0.0, sum - static_cast<double>(xs.size() - 1));
}

TEST(Registry, Builtins) {
  for (const char* name : {"min", "max", "prod", "luka", "mean"}) {
    EXPECT_TRUE(registry().contains(name)) << name;
  }
  EXPECT_EQ(registry().resolve("min")->name(), "min");
  EXPECT_THROW(registry().resolve("median"), ResolutionError);
}

TEST(Registry, RejectsBoundaryViolation) {
  AggregatorRegistry r;
  EXPECT_THROW(r.add(Aggregator("shrink", [](std::span<const double> xs) {
                 double p = 0.9;
                 for (double x : xs) p = std::min(p, x);
                 return p;
               })),
               AxiomError);
}

TEST(Registry, RejectsNonMonotone) {
  AggregatorRegistry r;
  EXPECT_THROW(r.add(Aggregator("bump", [](std::span<const double> xs) {
                 double m = 0.0;
                 for (double x : xs) m += x;
                 m /= static_cast<double>(xs.size());
                 return m == 0.0 || m == 1.0 ? m : 1.0 - m;
               })),
               AxiomError);
}

TEST(Registry, DuplicateAndUserMean) {
  AggregatorRegistry r;
  r.add(Aggregator("avg", [](std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  }));
  EXPECT_NEAR((*r.resolve("avg"))({0.4, 1.0}), 0.7, 1e-12);
  EXPECT_THROW(r.add(Aggregator("avg", [](std::span<const double> xs) { return xs[0]; })),
               RegistrationError);
  EXPECT_NEAR((*registry().resolve("mean"))({0.4, 1.0}), 0.7, 1e-12);
}

TEST(IntervalAggregate, Examples) {
  auto agg = [](const char* n) { return registry().resolve(n); };
  const Interval a[] = {Interval::make(0.7, 0.7), Interval::make(0.6, 0.8)};
  Interval r = interval_aggregate(*agg("min"), a);
  EXPECT_NEAR(r.lo, 0.6, 1e-12);
  EXPECT_NEAR(r.hi, 0.7, 1e-12);
  const Interval b[] = {Interval::make(1, 1), Interval::make(0.35, 0.55)};
  r = interval_aggregate(*agg("prod"), b);
  EXPECT_NEAR(r.lo, 0.35, 1e-12);
  EXPECT_NEAR(r.hi, 0.55, 1e-12);
  const Interval c[] = {Interval::make(0.7, 0.7), Interval::make(0.6, 0.6)};
  const double xs[] = {0.7, 0.6};
  r = interval_aggregate(*agg("luka"), c);
  EXPECT_NEAR(r.lo, luka_oracle(xs), 1e-12);
  EXPECT_NEAR(r.hi, 0.3, 1e-12);
}

TEST(UnionAggregate, Examples) {
  auto min = registry().resolve("min");
  const BorelSet youth =
      BorelSet::canonicalize({Interval::make(0.2, 0.5), Interval::make(0.8, 1)});
  const BorelSet args[] = {youth, BorelSet::interval(0.4, 0.9)};
  EXPECT_EQ(to_string(union_aggregate(*min, args)), "[0.2,0.9]");

  const BorelSet one[] = {BorelSet::interval(0.3, 0.6)};
  for (const char* n : {"min", "max", "prod", "luka", "mean"}) {
    EXPECT_EQ(union_aggregate(*registry().resolve(n), one), one[0]) << n;
  }

  const BorelSet p[] = {BorelSet::interval(0.5, 0.6), BorelSet::point(0.5)};
  EXPECT_EQ(union_aggregate(*registry().resolve("prod"), p), BorelSet::interval(0.25, 0.3));

  const BorelSet with_empty[] = {BorelSet::point(0.5), BorelSet()};
  EXPECT_TRUE(union_aggregate(*min, with_empty).empty());
}

class AggregatorProperties : public ::testing::TestWithParam<const char*> {
 protected:
  AggregatorPtr agg = registry().resolve(GetParam());
  std::mt19937 rng{7};
  std::uniform_real_distribution<double> unit{0.0, 1.0};
};

TEST_P(AggregatorProperties, IntervalMatchesBoxSampling) {
  for (int n = 0; n < 200; ++n) {
    const std::size_t arity = 1 + n % 3;
    std::vector<Interval> box;
    for (std::size_t k = 0; k < arity; ++k) {
      double a = unit(rng), b = unit(rng);
      box.push_back(Interval::make(std::min(a, b), std::max(a, b)));
    }
    const Interval r = interval_aggregate(*agg, box);
    // Dense sampling of the box; grid of 9 points per side.
    std::vector<int> idx(arity, 0);
    double lo = 2.0, hi = -1.0;
    while (true) {
      std::vector<double> xs;
      for (std::size_t k = 0; k < arity; ++k) {
        xs.push_back(box[k].lo + (box[k].hi - box[k].lo) * idx[k] / 8.0);
      }
      const double v = (*agg)(xs);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      std::size_t k = 0;
      while (k < arity && ++idx[k] > 8) idx[k++] = 0;
      if (k == arity) break;
    }
    ASSERT_GE(lo, r.lo - 1e-12);
    ASSERT_LE(hi, r.hi + 1e-12);
    ASSERT_NEAR(lo, r.lo, 1e-12);
    ASSERT_NEAR(hi, r.hi, 1e-12);
  }
}

TEST_P(AggregatorProperties, UnionMatchesProductSampling) {
  const auto g = testing::grid();
  for (int n = 0; n < 100; ++n) {
    std::vector<BorelSet> args{testing::random_set(rng, 2), testing::random_set(rng, 2)};
    if (args[0].empty() || args[1].empty()) continue;
    const BorelSet r = union_aggregate(*agg, args);
    ASSERT_GE(r.min(), 0.0);
    ASSERT_LE(r.max(), 1.0);
    // Every product box maps into r.
    for (const Interval& a : args[0].intervals()) {
      for (const Interval& b : args[1].intervals()) {
        for (int i = 0; i <= 4; ++i) {
          for (int j = 0; j <= 4; ++j) {
            const double xs[] = {a.lo + (a.hi - a.lo) * i / 4, b.lo + (b.hi - b.lo) * j / 4};
            ASSERT_TRUE(r.contains((*agg)(xs)));
          }
        }
      }
    }
  }
}

TEST_P(AggregatorProperties, PointDegeneracy) {
  for (int n = 0; n < 200; ++n) {
    const double xs[] = {unit(rng), unit(rng), unit(rng)};
    const BorelSet args[] = {BorelSet::point(xs[0]), BorelSet::point(xs[1]),
                             BorelSet::point(xs[2])};
    ASSERT_EQ(union_aggregate(*agg, args), BorelSet::point((*agg)(xs)));
  }
}

TEST_P(AggregatorProperties, MonotoneUnderInclusion) {
  for (int n = 0; n < 300; ++n) {
    std::vector<BorelSet> small, big;
    for (int k = 0; k < 2; ++k) {
      BorelSet b = testing::random_set(rng, 2);
      if (b.empty()) b = BorelSet::unit();
      BorelSet s = intersect(b, testing::random_set(rng, 2));
      if (s.empty()) s = BorelSet::point(b.min());
      small.push_back(s);
      big.push_back(b);
    }
    ASSERT_TRUE(borel_included(union_aggregate(*agg, small), union_aggregate(*agg, big)));
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, AggregatorProperties,
                         ::testing::Values("min", "max", "prod", "luka", "mean"));

TEST(TNorms, Laws) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const char* n : {"min", "prod", "luka"}) {
    const Aggregator& f = *registry().resolve(n);
    for (int k = 0; k < 1000; ++k) {
      const double a = unit(rng), b = unit(rng), c = unit(rng);
      ASSERT_NEAR(f({a, b}), f({b, a}), 1e-12) << n;
      ASSERT_NEAR(f({f({a, b}), c}), f({a, f({b, c})}), 1e-12) << n;
      ASSERT_NEAR(f({a, b, c}), f({f({a, b}), c}), 1e-12) << n;
      ASSERT_NEAR(f({a, 1.0}), a, 1e-12) << n;
    }
  }
  const Aggregator& mx = *registry().resolve("max");
  for (int k = 0; k < 1000; ++k) {
    const double a = unit(rng);
    ASSERT_NEAR(mx({a, 0.0}), a, 1e-12);
  }
  const Aggregator& luka = *registry().resolve("luka");
  for (int k = 0; k < 1000; ++k) {
    const double xs[] = {unit(rng), unit(rng), unit(rng)};
    ASSERT_NEAR(luka(xs), luka_oracle(xs), 1e-12);
  }
}

}  // namespace
}  // namespace fpl
