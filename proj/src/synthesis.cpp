#include "orbitrep/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "orbitrep/errors.hpp"

namespace orbitrep {

namespace {

constexpr double kPowerTolerance = 1e-12;
constexpr std::size_t kPowerIterationCap = 1'000'000;
constexpr int kSnapRetries = 3;

// Row r of [A | B] laid out in interleaved symbol order.
std::vector<int> interleaved_row(const SynthesisSpec& spec, const std::vector<Symbol>& order, std::size_t r) {
  std::vector<int> row;
  for (const auto& s : order) {
    if (s.is_markov()) {
      row.push_back(spec.A(r, s.index) ? 1 : 0);
    } else {
      const auto col = std::find(spec.escape_gaps.begin(), spec.escape_gaps.end(), s.index) - spec.escape_gaps.begin();
      row.push_back(spec.B(r, static_cast<std::size_t>(col)) ? 1 : 0);
    }
  }
  return row;
}

std::string row_text(const std::vector<Symbol>& order, const RowSegment& seg) {
  std::string out;
  for (std::size_t p = seg.first; p <= seg.last; ++p) {
    if (p != seg.first) out += ' ';
    out += order[p].label();
  }
  return out;
}

}  // namespace

CoverageMode parse_coverage_mode(const std::string& text) {
  if (text == "strict") return CoverageMode::strict;
  if (text == "partial") return CoverageMode::partial;
  throw ParseError("unknown coverage mode \"" + text + "\" (expected strict or partial)");
}

std::string to_string(CoverageMode mode) { return mode == CoverageMode::strict ? "strict" : "partial"; }

FeasibilityReport feasibility_check(const SynthesisSpec& spec) {
  FeasibilityReport report;
  auto fail = [&](std::string why) {
    report.feasible = false;
    report.reasons.push_back(std::move(why));
  };

  const std::size_t n = spec.A.rows();
  if (!spec.A.square() || n == 0) {
    fail("A must be a nonempty square matrix");
    return report;
  }
  if (spec.B.rows() != n || spec.B.cols() != spec.escape_gaps.size()) {
    fail("B must be " + std::to_string(n) + "x" + std::to_string(spec.escape_gaps.size()) +
         " (one column per escape symbol)");
    return report;
  }
  for (std::size_t c = 0; c < spec.escape_gaps.size(); ++c) {
    if (spec.escape_gaps[c] + 1 >= n) {
      fail("escape symbol " + Symbol::escape(spec.escape_gaps[c]).label() + " has no Markov symbol on its right");
      return report;
    }
    if (c > 0 && spec.escape_gaps[c] <= spec.escape_gaps[c - 1]) {
      fail("escape symbols must be listed in increasing order without repeats");
      return report;
    }
  }
  if (n == 1) fail("a single Markov interval cannot carry an expanding branch with full image");
  if (const auto prim = is_primitive(spec.A); !prim.primitive) fail("A is not primitive");
  for (std::size_t c = 0; c < spec.B.cols(); ++c) {
    if (spec.B.col_count(c) == 0) {
      fail("escape symbol " + Symbol::escape(spec.escape_gaps[c]).label() + " is never reached (zero column of B)");
    }
  }

  const auto order = interleaved_order(n, spec.escape_gaps);
  std::vector<bool> covered_inside(order.size(), false);
  std::vector<bool> reached_from_left(order.size(), false);
  std::vector<bool> reached_from_right(order.size(), false);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = interleaved_row(spec, order, r);
    const auto first = std::find(row.begin(), row.end(), 1);
    if (first == row.end()) {
      fail("row " + std::to_string(r + 1) + " has no targets");
      continue;
    }
    const auto last = std::find(row.rbegin(), row.rend(), 1);
    RowSegment seg{r, static_cast<std::size_t>(first - row.begin()),
                   row.size() - 1 - static_cast<std::size_t>(last - row.rbegin())};
    report.segments.push_back(seg);
    const std::string where = "row " + std::to_string(r + 1) + " (segment \"" + row_text(order, seg) + "\")";
    if (std::find(row.begin() + static_cast<std::ptrdiff_t>(seg.first), row.begin() + static_cast<std::ptrdiff_t>(seg.last) + 1, 0) !=
        row.begin() + static_cast<std::ptrdiff_t>(seg.last) + 1) {
      fail(where + ": targets are not contiguous in symbol order, but an affine image is an interval");
      continue;
    }
    const bool starts_escape = !order[seg.first].is_markov();
    const bool ends_escape = !order[seg.last].is_markov();
    if (spec.mode == CoverageMode::strict && (starts_escape || ends_escape)) {
      fail(where + ": starts or ends with an escape symbol; full coverage would leave a touch point outside the "
                   "partition");
      continue;
    }
    if (seg.first == seg.last && starts_escape) {
      fail(where + ": contains no Markov symbol");
      continue;
    }
    for (std::size_t p = seg.first; p <= seg.last; ++p) {
      if (order[p].is_markov()) continue;
      if (p != seg.first && p != seg.last) covered_inside[p] = true;
    }
    if (ends_escape) reached_from_left[seg.last] = true;
    if (starts_escape) reached_from_right[seg.first] = true;
  }
  if (report.feasible) {
    for (std::size_t p = 0; p < order.size(); ++p) {
      if (order[p].is_markov()) continue;
      if (!covered_inside[p] && !(reached_from_left[p] && reached_from_right[p])) {
        fail("escape interval of " + order[p].label() + " is only partly covered by the branch images");
      }
    }
  }
  return report;
}

WidthAllocation perron_widths(const SynthesisSpec& spec) {
  const FeasibilityReport feas = feasibility_check(spec);
  if (!feas.feasible) {
    std::string why;
    for (const auto& r : feas.reasons) why += (why.empty() ? "" : "; ") + r;
    throw InfeasibleError(why);
  }
  const std::size_t n = spec.A.rows();
  const std::size_t m = spec.escape_gaps.size();

  WidthAllocation out;
  std::vector<double> v(n, 1.0);
  for (std::size_t it = 1; it <= kPowerIterationCap; ++it) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (spec.A(i, j)) w[i] += v[j];
    const double scale = *std::max_element(w.begin(), w.end());
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= scale;
      change = std::max(change, std::abs(w[i] - v[i]));
    }
    v = std::move(w);
    out.iterations = it;
    if (change < kPowerTolerance) break;
  }
  double lo = INFINITY;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double av = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (spec.A(i, j)) av += v[j];
    lo = std::min(lo, av / v[i]);
    hi = std::max(hi, av / v[i]);
  }
  out.perron_estimate = 0.5 * (lo + hi);
  out.perron_error = 0.5 * (hi - lo);

  const auto order = interleaved_order(n, spec.escape_gaps);
  mpz_class denominator = 1'000'000;
  for (int attempt = 0; attempt <= kSnapRetries; ++attempt, denominator *= denominator) {
    std::vector<Rational> w(n);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = Rational::round_to(v[i], denominator);
      positive = positive && w[i].sign() > 0;
    }
    if (!positive) continue;
    const Rational escape_width = *std::min_element(w.begin(), w.end()) / Rational(4);
    std::vector<Rational> g(m, escape_width);
    Rational total;
    for (const auto& x : w) total += x;
    for (const auto& x : g) total += x;
    for (auto& x : w) x /= total;
    for (auto& x : g) x /= total;

    auto width_at = [&](std::size_t p) {
      const Symbol& s = order[p];
      if (s.is_markov()) return w[s.index];
      const auto col = std::find(spec.escape_gaps.begin(), spec.escape_gaps.end(), s.index) - spec.escape_gaps.begin();
      return g[static_cast<std::size_t>(col)];
    };
    bool expanding = true;
    for (const auto& seg : feas.segments) {
      Rational span;
      for (std::size_t p = seg.first; p <= seg.last; ++p) {
        const bool end = p == seg.first || p == seg.last;
        span += (!order[p].is_markov() && end) ? width_at(p) / Rational(2) : width_at(p);
      }
      expanding = expanding && span > w[seg.row];
    }
    if (!expanding) continue;
    out.markov_widths = std::move(w);
    out.escape_widths = std::move(g);
    out.snap_denominator = denominator.get_str();
    return out;
  }
  throw SnapFailureError("no rational snap of the Perron vector (estimate " + std::to_string(out.perron_estimate) +
                         " +- " + std::to_string(out.perron_error) + ") passes the exact expansion check");
}

MarkovMap synthesize(const SynthesisSpec& spec) {
  const WidthAllocation widths = perron_widths(spec);
  const FeasibilityReport feas = feasibility_check(spec);
  const std::size_t n = spec.A.rows();
  const auto order = interleaved_order(n, spec.escape_gaps);

  // Left end and width of every symbol's interval on [0, 1].
  std::vector<Rational> start(order.size());
  std::vector<Rational> width(order.size());
  Rational pos;
  std::size_t escape_col = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    start[p] = pos;
    width[p] = order[p].is_markov() ? widths.markov_widths[order[p].index] : widths.escape_widths[escape_col++];
    pos += width[p];
  }
  if (pos != Rational(1)) throw std::logic_error("synthesized widths do not add up to 1");

  std::vector<Interval> intervals(n);
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (order[p].is_markov()) intervals[order[p].index] = {start[p], start[p] + width[p]};
  }
  std::vector<AffineBranch> branches(n);
  for (const auto& seg : feas.segments) {
    const Rational left = order[seg.first].is_markov() ? start[seg.first] : start[seg.first] + width[seg.first] / Rational(2);
    const Rational right = order[seg.last].is_markov() ? start[seg.last] + width[seg.last]
                                                       : start[seg.last] + width[seg.last] / Rational(2);
    const Interval& dom = intervals[seg.row];
    const Rational slope = (right - left) / dom.length();
    branches[seg.row] = {slope, left - slope * dom.lo};
  }
  MarkovMap map(std::move(intervals), std::move(branches));

  const ValidationReport report = validate(map);
  if (!report.valid()) throw std::logic_error("synthesized map fails validation");
  const TransitionData td = transition_data(map);
  if (td.A != spec.A || td.B != spec.B || td.escape_gaps != spec.escape_gaps) {
    throw std::logic_error("synthesized map does not reproduce the requested matrices");
  }
  return map;
}

Rational escape_point(const MarkovMap& map, std::size_t gap) {
  const auto g = map.gap(gap);
  if (!g) throw std::invalid_argument("escape interval " + std::to_string(gap + 1) + " is empty");
  return (g->lo + g->hi) / Rational(2);
}

}  // namespace orbitrep
