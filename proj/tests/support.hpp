#ifndef FPL_TESTS_SUPPORT_HPP
#define FPL_TESTS_SUPPORT_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fpl/truth.hpp"

namespace fpl::testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(FPL_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Endpoints on a 0.01 grid so a 0.001 sampling grid sees every difference.
inline std::vector<Interval> random_raw(std::mt19937& rng, int max_parts = 3) {
  std::uniform_int_distribution<int> parts(0, max_parts);
  std::uniform_int_distribution<int> tick(0, 100);
  std::vector<Interval> out;
  const int n = parts(rng);
  for (int k = 0; k < n; ++k) {
    int a = tick(rng);
    int b = tick(rng);
    if (a > b) std::swap(a, b);
    out.push_back(Interval::make(a / 100.0, b / 100.0));
  }
  return out;
}

inline BorelSet random_set(std::mt19937& rng, int max_parts = 3) {
  return BorelSet::canonicalize(random_raw(rng, max_parts));
}

inline bool raw_contains(const std::vector<Interval>& raw, double x) {
  for (const Interval& i : raw) {
    if (x >= i.lo - 1e-12 && x <= i.hi + 1e-12) return true;
  }
  return false;
}

// Grid points 0, 0.001, ..., 1.
inline std::vector<double> grid() {
  std::vector<double> g;
  for (int k = 0; k <= 1000; ++k) g.push_back(k / 1000.0);
  return g;
}

}  // namespace fpl::testing

#endif  // FPL_TESTS_SUPPORT_HPP
