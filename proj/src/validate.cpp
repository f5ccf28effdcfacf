#include <algorithm>
#include <string>

#include "orbitrep/markov_map.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

namespace {

std::string interval_name(std::size_t i) { return "I_" + std::to_string(i + 1); }

void check_full_image(const MarkovMap& map, PropertyCheck& p1) {
  const Interval ambient = map.ambient();
  std::vector<Interval> images;
  for (std::size_t i = 0; i < map.size(); ++i) {
    Interval img = map.image(i);
    if (img.lo < ambient.lo || img.hi > ambient.hi) {
      p1.fail("f(" + interval_name(i) + ") = " + to_string(img) + " leaves " + to_string(ambient));
    }
    images.push_back(std::move(img));
  }
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  if (images.front().lo > ambient.lo) {
    p1.fail("im(f) misses " + to_string(Interval{ambient.lo, images.front().lo}, true) + " and its left end");
  }
  Rational reach = images.front().hi;
  for (std::size_t k = 1; k < images.size(); ++k) {
    if (images[k].lo > reach) p1.fail("im(f) misses " + to_string(Interval{reach, images[k].lo}, true));
    reach = max(reach, images[k].hi);
  }
  if (reach < ambient.hi) {
    p1.fail("im(f) misses " + to_string(Interval{reach, ambient.hi}, true) + " and its right end");
  }
}

// f(I_i) intersected with the domain must be exactly a nonempty union of
// whole partition intervals. Touch points are fine only when they already
// belong to one of the fully covered intervals.
void check_markov_property(const MarkovMap& map, PropertyCheck& p2) {
  const std::size_t n = map.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Interval img = map.image(i);
    std::vector<std::size_t> whole;
    for (std::size_t j = 0; j < n; ++j) {
      const Interval& iv = map.interval(j);
      if (img.lo <= iv.lo && iv.hi <= img.hi) whole.push_back(j);
    }
    if (whole.empty()) {
      p2.fail("f(" + interval_name(i) + ") = " + to_string(img) + " contains no whole Markov interval");
      continue;
    }
    auto covered = [&](const Rational& x) {
      return std::any_of(whole.begin(), whole.end(), [&](std::size_t j) { return map.interval(j).contains(x); });
    };
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(whole.begin(), whole.end(), j) != whole.end()) continue;
      const Interval& iv = map.interval(j);
      const Rational lo = max(img.lo, iv.lo);
      const Rational hi = min(img.hi, iv.hi);
      if (lo > hi) continue;
      if (lo == hi && covered(lo)) continue;
      p2.fail("f(" + interval_name(i) + ") = " + to_string(img) + " meets " + interval_name(j) + " = " +
              to_string(iv) + " in " + to_string(Interval{lo, hi}) + ", which is not a union of partition intervals");
    }
  }
}

}  // namespace

bool ValidationReport::escape_coverage_ok() const {
  return std::all_of(escape_coverage.begin(), escape_coverage.end(), [](const EscapeCoverage& c) { return c.ok(); });
}

ValidationReport validate(const MarkovMap& map) {
  ValidationReport report;

  check_full_image(map, report.p1);
  check_markov_property(map, report.p2);

  Rational min_slope = abs(map.branch(0).slope);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Rational s = abs(map.branch(i).slope);
    min_slope = min(min_slope, s);
    if (s <= Rational(1)) {
      report.non_expanding.push_back(i);
      report.p3.fail("|slope| = " + s.str() + " on " + interval_name(i) + " = " + to_string(map.interval(i)) +
                     " is not > 1");
    }
  }
  if (report.p3.ok) report.expansion_bound = (Rational(1) + min_slope) / Rational(2);

  const Primitivity prim = is_primitive(markov_matrix(map));
  if (prim.primitive) {
    report.aperiodicity_exponent = prim.exponent;
  } else {
    std::string msg = "A_f is not primitive: A_f^" + std::to_string(prim.bound) + " is not positive";
    if (prim.zero_entry) {
      msg += " (zero at " + std::to_string(prim.zero_entry->first + 1) + "," +
             std::to_string(prim.zero_entry->second + 1) + ")";
    }
    report.p4.fail(std::move(msg));
  }

  for (std::size_t i = 0; i < map.size(); ++i) {
    const Interval img = map.image(i);
    for (const auto& g : map.escape_gaps()) {
      EscapeCoverage c{i, g.gap};
      c.meets = max(img.lo, g.bounds.lo) < min(img.hi, g.bounds.hi);
      c.covered = img.lo <= g.bounds.lo && g.bounds.hi <= img.hi;
      report.escape_coverage.push_back(c);
    }
  }
  return report;
}

}  // namespace orbitrep
