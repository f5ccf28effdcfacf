#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orbitrep/bool_matrix.hpp"
#include "orbitrep/markov_map.hpp"
#include "orbitrep/rational.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

enum class CoverageMode {
  /// Every escape interval that a branch image meets is covered entirely.
  strict,
  /// An escape symbol may sit at either end of a row's segment; the branch
  /// image then stops at the midpoint of that escape interval.
  partial,
};

CoverageMode parse_coverage_mode(const std::string& text);
std::string to_string(CoverageMode mode);

/// Target escape data: B has one column per entry of escape_gaps (strictly
/// increasing gap indices, gap k lying between Markov symbols k and k+1).
struct SynthesisSpec {
  BoolMatrix A;
  BoolMatrix B;
  std::vector<std::size_t> escape_gaps;
  CoverageMode mode = CoverageMode::strict;
};

/// Contiguous run of unit entries of one row in interleaved symbol order.
struct RowSegment {
  std::size_t row = 0;
  std::size_t first = 0;  // positions in the interleaved order
  std::size_t last = 0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> reasons;
  std::vector<RowSegment> segments;
};

FeasibilityReport feasibility_check(const SynthesisSpec& spec);

struct WidthAllocation {
  std::vector<Rational> markov_widths;
  std::vector<Rational> escape_widths;
  /// Perron root estimate and a Collatz-Wielandt error bound.
  double perron_estimate = 0.0;
  double perron_error = 0.0;
  std::size_t iterations = 0;
  /// Denominator used when snapping the eigenvector to rationals.
  std::string snap_denominator;
};

/// Throws InfeasibleError if the spec is infeasible, SnapFailureError if no
/// snapped allocation passes the exact expansion check.
WidthAllocation perron_widths(const SynthesisSpec& spec);

/// Lays out [0, 1] in symbol order and maps every Markov interval onto the
/// hull of its target segment with an increasing affine branch. The result
/// is validated and its matrices are checked against the spec before return.
MarkovMap synthesize(const SynthesisSpec& spec);

/// Midpoint of the escape interval of `gap`; its escape incidence is the
/// full B column in both modes.
Rational escape_point(const MarkovMap& map, std::size_t gap);

}  // namespace orbitrep
