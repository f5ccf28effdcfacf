#pragma once

#include <string>

#include "orbitrep/io.hpp"
#include "orbitrep/synthesis.hpp"

namespace fixtures {

inline std::string map_path(const std::string& name) { return std::string(ORBITREP_MAPS_DIR) + "/" + name; }

inline orbitrep::MarkovMap load(const std::string& name) {
  return orbitrep::parse_map_document(orbitrep::read_json_file(map_path(name))).map;
}

inline orbitrep::MarkovMap verbatim() { return load("escape_example.json"); }
inline orbitrep::MarkovMap corrected() { return load("escape_example_corrected.json"); }
inline orbitrep::MarkovMap doubling() { return load("full_two_branch.json"); }

inline orbitrep::BoolMatrix example_A() {
  return orbitrep::BoolMatrix::from_rows({{0, 1, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {0, 0, 1, 0}});
}

inline orbitrep::BoolMatrix reference_A_hat() {
  return orbitrep::BoolMatrix::from_rows(
      {{0, 1, 1, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {0, 0, 1, 1, 0}});
}

/// Partial-coverage realization of the reference escape matrix.
inline orbitrep::MarkovMap synthesized_partial() {
  orbitrep::SynthesisSpec spec{example_A(), orbitrep::BoolMatrix::from_rows({{1}, {0}, {0}, {1}}), {1},
                               orbitrep::CoverageMode::partial};
  return orbitrep::synthesize(spec);
}

inline orbitrep::Rational q(long p, long d = 1) { return orbitrep::Rational(p, d); }

}  // namespace fixtures
