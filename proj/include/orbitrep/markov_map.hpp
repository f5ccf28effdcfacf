#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitrep/rational.hpp"

namespace orbitrep {

/// Closed interval [lo, hi] with exact endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_open(const Rational& x) const { return lo < x && x < hi; }
  Rational length() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Renders "[lo, hi]" (or "]lo, hi[" when open is set).
std::string to_string(const Interval& iv, bool open = false);

/// x -> slope * x + intercept.
struct AffineBranch {
  Rational slope;
  Rational intercept;

  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  Rational solve(const Rational& y) const { return (y - intercept) / slope; }

  friend bool operator==(const AffineBranch&, const AffineBranch&) = default;
};

/// A nonempty open escape interval between Markov intervals `gap` and
/// `gap + 1` (0-based), i.e. the gap with symbol (gap+1)^.
struct EscapeGap {
  std::size_t gap;
  Interval bounds;  // read as the open interval ]lo, hi[
};

// Results of locate().
struct MarkovInterior {
  std::size_t interval;
};
struct EscapeInterior {
  std::size_t gap;
};
struct PartitionPoint {
  std::vector<std::size_t> intervals;  // Markov intervals containing the point
};
struct OutsideAmbient {};
using Location = std::variant<MarkovInterior, EscapeInterior, PartitionPoint, OutsideAmbient>;

// Results of evaluate().
struct Evaluation {
  Rational value;
  std::size_t branch;
  /// Set when the point is shared by two intervals whose branches disagree;
  /// the left branch value is returned.
  bool side_ambiguous = false;
};
struct NotInDomain {
  std::size_t gap;
};
using EvalResult = std::variant<Evaluation, NotInDomain>;

/// Piecewise-affine interval map f on [c_0, c_n] with Markov intervals
/// I_1..I_n (0-based here) and the escape gaps between them.
///
/// Construction only checks structure: endpoints ordered as
/// c_0 < c_1^- <= c_1^+ < ... < c_n and nonzero slopes. The Markov
/// conditions themselves are checked by validate().
class MarkovMap {
 public:
  MarkovMap(std::vector<Interval> intervals, std::vector<AffineBranch> branches);

  std::size_t size() const { return intervals_.size(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<AffineBranch>& branches() const { return branches_; }
  const Interval& interval(std::size_t i) const { return intervals_.at(i); }
  const AffineBranch& branch(std::size_t i) const { return branches_.at(i); }
  Interval ambient() const { return {intervals_.front().lo, intervals_.back().hi}; }

  /// Sorted, deduplicated partition points.
  std::vector<Rational> partition_points() const;
  bool is_partition_point(const Rational& x) const;

  /// Nonempty escape gaps in left-to-right order.
  std::vector<EscapeGap> escape_gaps() const;
  /// Bounds of gap k if it is nonempty.
  std::optional<Interval> gap(std::size_t k) const;

  /// Exact image f(I_i).
  Interval image(std::size_t i) const;

  Location locate(const Rational& x) const;
  /// Throws OutsideAmbientError for x outside [c_0, c_n].
  EvalResult evaluate(const Rational& x) const;
  /// The unique z in I_i with f_i(z) = y, or nullopt when y is not in f(I_i).
  std::optional<Rational> branch_inverse(std::size_t i, const Rational& y) const;

  /// Canonical textual identity, used to detect mixing data from different maps.
  const std::string& key() const { return key_; }

  friend bool operator==(const MarkovMap& a, const MarkovMap& b) { return a.key_ == b.key_; }

 private:
  std::vector<Interval> intervals_;
  std::vector<AffineBranch> branches_;
  std::string key_;
};

struct PropertyCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;

  void fail(std::string message) {
    ok = false;
    diagnostics.push_back(std::move(message));
  }
};

/// Whether f(I_i) meets E_k and, if so, whether it covers all of E_k.
struct EscapeCoverage {
  std::size_t interval;
  std::size_t gap;
  bool meets = false;
  bool covered = false;

  bool ok() const { return !meets || covered; }
};

struct ValidationReport {
  PropertyCheck p1;  // partition, domain and full image
  PropertyCheck p2;  // Markov property
  PropertyCheck p3;  // expansion
  PropertyCheck p4;  // aperiodicity (A_f primitive)

  /// Expansion witness b with 1 < b <= min |slope|, when P3 holds.
  std::optional<Rational> expansion_bound;
  /// Intervals whose branch fails |slope| > 1.
  std::vector<std::size_t> non_expanding;
  /// Smallest q with A_f^q entrywise positive, when P4 holds.
  std::optional<std::size_t> aperiodicity_exponent;

  /// Escape-coverage diagnostic; not part of validity.
  std::vector<EscapeCoverage> escape_coverage;

  bool valid() const { return p1.ok && p2.ok && p3.ok && p4.ok; }
  bool escape_coverage_ok() const;
};

ValidationReport validate(const MarkovMap& map);

}  // namespace orbitrep
