#include "fpl/truth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fpl/error.hpp"

namespace fpl {

namespace {

double clamp_unit(double x) {
  if (x < 0.0 && x >= -kTolerance) return 0.0;
  if (x > 1.0 && x <= 1.0 + kTolerance) return 1.0;
  return x;
}

// Distance from x to the nearest point of s (s non-empty).
double distance_to(double x, const BorelSet& s) {
  double best = 2.0;
  for (const Interval& i : s.intervals()) {
    if (x < i.lo) {
      best = std::min(best, i.lo - x);
    } else if (x > i.hi) {
      best = std::min(best, x - i.hi);
    } else {
      return 0.0;
    }
  }
  return best;
}

// sup over points of a of the distance to b.
double directed_hausdorff(const BorelSet& a, const BorelSet& b) {
  double worst = 0.0;
  const auto gaps = b.intervals();
  for (const Interval& i : a.intervals()) {
    worst = std::max(worst, distance_to(i.lo, b));
    worst = std::max(worst, distance_to(i.hi, b));
    for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
      const double mid = 0.5 * (gaps[k].hi + gaps[k + 1].lo);
      if (i.contains(mid)) worst = std::max(worst, distance_to(mid, b));
    }
  }
  return worst;
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw DomainError("truth interval has a NaN endpoint");
  }
  lo = clamp_unit(lo);
  hi = clamp_unit(hi);
  if (lo > hi && lo - hi <= kTolerance) hi = lo;
  if (lo < 0.0 || hi > 1.0 || lo > hi) {
    throw DomainError("interval [" + format_real(lo) + "," + format_real(hi) +
                      "] is not a subinterval of [0,1]");
  }
  return Interval{lo, hi};
}

bool approx_equal(const Interval& a, const Interval& b) {
  return std::abs(a.lo - b.lo) <= kTolerance &&
         std::abs(a.hi - b.hi) <= kTolerance;
}

bool interval_included(const Interval& a, const Interval& b) {
  return b.lo <= a.lo + kTolerance && a.hi <= b.hi + kTolerance;
}

std::string to_string(const Interval& i) {
  if (i.is_point()) return format_real(i.lo);
  return "[" + format_real(i.lo) + "," + format_real(i.hi) + "]";
}

BorelSet BorelSet::canonicalize(std::vector<Interval> raw) {
  for (Interval& i : raw) i = Interval::make(i.lo, i.hi);
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  BorelSet out;
  for (const Interval& i : raw) {
    if (!out.intervals_.empty() && i.lo <= out.intervals_.back().hi + kTolerance) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, i.hi);
    } else {
      out.intervals_.push_back(i);
    }
  }
  return out;
}

BorelSet BorelSet::point(double x) { return canonicalize({Interval{x, x}}); }

BorelSet BorelSet::interval(double lo, double hi) {
  return canonicalize({Interval{lo, hi}});
}

bool BorelSet::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& i) { return i.contains(x); });
}

bool operator==(const BorelSet& a, const BorelSet& b) {
  return std::equal(a.intervals_.begin(), a.intervals_.end(),
                    b.intervals_.begin(), b.intervals_.end(), approx_equal);
}

BorelSet unite(const BorelSet& a, const BorelSet& b) {
  std::vector<Interval> all(a.intervals().begin(), a.intervals().end());
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return BorelSet::canonicalize(std::move(all));
}

BorelSet intersect(const BorelSet& a, const BorelSet& b) {
  std::vector<Interval> out;
  const auto xs = a.intervals();
  const auto ys = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double lo = std::max(xs[i].lo, ys[j].lo);
    const double hi = std::min(xs[i].hi, ys[j].hi);
    if (lo <= hi + kTolerance) out.push_back(Interval{lo, std::max(lo, hi)});
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return BorelSet::canonicalize(std::move(out));
}

bool borel_included(const BorelSet& u, const BorelSet& v) {
  // Both canonical and sorted: a single forward sweep over v suffices.
  const auto targets = v.intervals();
  std::size_t k = 0;
  for (const Interval& i : u.intervals()) {
    while (k < targets.size() && targets[k].hi + kTolerance < i.hi) ++k;
    if (k == targets.size() || !interval_included(i, targets[k])) return false;
  }
  return true;
}

double hausdorff(const BorelSet& a, const BorelSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::string to_string(const BorelSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  for (const Interval& i : s.intervals()) {
    if (!out.empty()) out += 'v';
    out += to_string(i);
  }
  return out;
}

std::string format_real(double x) {
  if (std::abs(x) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace fpl
