#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "orbitrep/bool_matrix.hpp"
#include "orbitrep/equivalence.hpp"
#include "orbitrep/markov_map.hpp"
#include "orbitrep/operators.hpp"
#include "orbitrep/orbits.hpp"
#include "orbitrep/synthesis.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

using json = nlohmann::ordered_json;

/// A map-spec file: the map plus optional reference matrices to compare
/// against (A in Markov order, A_hat in interleaved symbol order).
struct MapDocument {
  MarkovMap map;
  std::string name;
  std::optional<BoolMatrix> expected_A;
  std::optional<BoolMatrix> expected_A_hat;
};

/// Parses a rational given as a JSON string "p/q" or "p".
Rational rational_from_json(const json& value, const std::string& what);
/// Throws ParseError for anything other than a rectangular array of 0/1 integers.
BoolMatrix matrix_from_json(const json& value, const std::string& what);
json to_json(const BoolMatrix& m);

/// Throws ParseError on malformed documents and InvalidMapError on
/// structurally inconsistent maps.
MapDocument parse_map_document(const json& doc);
json to_json(const MarkovMap& map, const std::string& name = "");

/// Reads a file and parses it as JSON (ParseError on I/O or syntax errors).
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// B documents carry "B" and "escape_symbols" (e.g. ["2^"]) and optionally
/// "mode"; A documents carry "A". Bare arrays are accepted for either.
SynthesisSpec parse_synthesis_spec(const json& a_doc, const json& b_doc, std::optional<CoverageMode> mode);

json validation_json(const ValidationReport& report);
json matrices_json(const TransitionData& td, const EscapeMatrix& em, const std::vector<MatrixDiscrepancy>& notes);
json point_class_json(const MarkovMap& map, const Rational& x, const PointClass& pc, const Itinerary& it);
json tree_json(const OrbitTree& tree);
std::string tree_dot(const OrbitTree& tree);
json relation_report_json(const RelationReport& report, const Representation& rep);
json lemma_json(const LemmaCheck& check);
json certificate_json(const Certificate& cert, const Representation& rep);
json classification_json(const Classification& c);
json verdict_json(const EquivalenceVerdict& verdict);
json intertwiner_json(const std::variant<Intertwiner, NoLabelRespectingIso>& result, const OrbitTree& x,
                      const OrbitTree& y);

}  // namespace orbitrep
