#include "orbitrep/io.hpp"

#include <fstream>
#include <sstream>

#include "orbitrep/errors.hpp"

namespace orbitrep {

namespace {

json labels(const std::vector<Symbol>& symbols) {
  json out = json::array();
  for (const auto& s : symbols) out.push_back(s.label());
  return out;
}

json one_based(const std::vector<std::size_t>& indices) {
  json out = json::array();
  for (auto i : indices) out.push_back(i + 1);
  return out;
}

json points(const OrbitTree& tree, const std::vector<std::size_t>& nodes) {
  json out = json::array();
  for (auto y : nodes) out.push_back(tree.node(y).point.str());
  return out;
}

const char* kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::range_projection:
      return "range_projection";
    case RelationKind::source_bound:
      return "source_bound";
    case RelationKind::summation:
      return "summation";
    case RelationKind::orthogonality:
      return "orthogonality";
  }
  return "";
}

const json& require(const json& doc, const char* key, const std::string& what) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(what + ": missing \"" + key + "\"");
  return doc.at(key);
}

}  // namespace

Rational rational_from_json(const json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + ": rationals must be strings like \"7/2\"");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

BoolMatrix matrix_from_json(const json& value, const std::string& what) {
  if (!value.is_array() || value.empty()) throw ParseError(what + ": expected a nonempty array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& row : value) {
    if (!row.is_array()) throw ParseError(what + ": every row must be an array");
    std::vector<int> r;
    for (const auto& entry : row) {
      if (!entry.is_number_integer()) throw ParseError(what + ": entries must be the integers 0 or 1");
      r.push_back(entry.get<int>());
    }
    rows.push_back(std::move(r));
  }
  try {
    return BoolMatrix::from_rows(rows);
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

json to_json(const BoolMatrix& m) {
  json out = json::array();
  for (const auto& row : m.to_rows()) out.push_back(row);
  return out;
}

MapDocument parse_map_document(const json& doc) {
  const json& ivs = require(doc, "markov_intervals", "map spec");
  const json& brs = require(doc, "branches", "map spec");
  if (!ivs.is_array() || !brs.is_array()) throw ParseError("map spec: markov_intervals and branches must be arrays");
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const std::string what = "markov_intervals[" + std::to_string(i) + "]";
    if (!ivs[i].is_array() || ivs[i].size() != 2) throw ParseError(what + ": expected [lo, hi]");
    intervals.push_back({rational_from_json(ivs[i][0], what), rational_from_json(ivs[i][1], what)});
  }
  std::vector<AffineBranch> branches;
  for (std::size_t i = 0; i < brs.size(); ++i) {
    const std::string what = "branches[" + std::to_string(i) + "]";
    branches.push_back({rational_from_json(require(brs[i], "slope", what), what),
                        rational_from_json(require(brs[i], "intercept", what), what)});
  }
  MapDocument out{MarkovMap(std::move(intervals), std::move(branches)), "", std::nullopt, std::nullopt};
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("map spec: name must be a string");
    out.name = doc["name"].get<std::string>();
  }
  if (doc.contains("expected")) {
    const json& exp = doc["expected"];
    if (!exp.is_object()) throw ParseError("map spec: expected must be an object");
    if (exp.contains("A")) out.expected_A = matrix_from_json(exp["A"], "expected.A");
    if (exp.contains("A_hat")) out.expected_A_hat = matrix_from_json(exp["A_hat"], "expected.A_hat");
  }
  return out;
}

json to_json(const MarkovMap& map, const std::string& name) {
  json out = json::object();
  if (!name.empty()) out["name"] = name;
  out["markov_intervals"] = json::array();
  for (const auto& iv : map.intervals()) out["markov_intervals"].push_back({iv.lo.str(), iv.hi.str()});
  out["branches"] = json::array();
  for (const auto& b : map.branches()) {
    out["branches"].push_back({{"slope", b.slope.str()}, {"intercept", b.intercept.str()}});
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

SynthesisSpec parse_synthesis_spec(const json& a_doc, const json& b_doc, std::optional<CoverageMode> mode) {
  SynthesisSpec spec;
  spec.A = matrix_from_json(a_doc.is_object() ? require(a_doc, "A", "A document") : a_doc, "A");
  const std::size_t n = spec.A.rows();
  json symbols = json::array();
  if (b_doc.is_object()) {
    const json& b = require(b_doc, "B", "B document");
    if (b.is_array() && !b.empty() && b[0].is_array() && !b[0].empty()) {
      spec.B = matrix_from_json(b, "B");
      symbols = require(b_doc, "escape_symbols", "B document");
    } else {
      spec.B = BoolMatrix(n, 0);
    }
    if (b_doc.contains("mode")) {
      if (!b_doc["mode"].is_string()) throw ParseError("B document: mode must be a string");
      spec.mode = parse_coverage_mode(b_doc["mode"].get<std::string>());
    }
  } else if (b_doc.is_array() && !b_doc.empty()) {
    throw ParseError("B document: a bare array needs escape_symbols; use {\"B\": ..., \"escape_symbols\": [...]}");
  } else {
    spec.B = BoolMatrix(n, 0);
  }
  if (!symbols.is_array()) throw ParseError("escape_symbols must be an array");
  for (const auto& s : symbols) {
    if (!s.is_string()) throw ParseError("escape_symbols entries must be strings like \"2^\"");
    const Symbol sym = Symbol::parse(s.get<std::string>());
    if (sym.is_markov()) throw ParseError("escape_symbols: \"" + s.get<std::string>() + "\" is a Markov symbol");
    spec.escape_gaps.push_back(sym.index);
  }
  if (mode) spec.mode = *mode;
  return spec;
}

json validation_json(const ValidationReport& report) {
  auto prop = [](const PropertyCheck& p) { return json{{"ok", p.ok}, {"diagnostics", p.diagnostics}}; };
  json out = {{"valid", report.valid()}, {"P1", prop(report.p1)}, {"P2", prop(report.p2)},
              {"P3", prop(report.p3)},   {"P4", prop(report.p4)}};
  out["expansion_bound"] = report.expansion_bound ? json(report.expansion_bound->str()) : json(nullptr);
  out["aperiodicity_exponent"] = report.aperiodicity_exponent ? json(*report.aperiodicity_exponent) : json(nullptr);
  json cov = json::array();
  for (const auto& c : report.escape_coverage) {
    if (!c.meets) continue;
    cov.push_back({{"interval", c.interval + 1}, {"escape", Symbol::escape(c.gap).label()}, {"covered", c.covered}});
  }
  out["escape_coverage"] = {{"ok", report.escape_coverage_ok()}, {"meets", cov}};
  return out;
}

json matrices_json(const TransitionData& td, const EscapeMatrix& em, const std::vector<MatrixDiscrepancy>& notes) {
  std::vector<Symbol> escapes;
  for (auto k : td.escape_gaps) escapes.push_back(Symbol::escape(k));
  json out = {{"A", to_json(td.A)},
              {"B", to_json(td.B)},
              {"escape_symbols", labels(escapes)},
              {"symbol_order", labels(em.symbol_order)},
              {"A_hat", to_json(em.full)}};
  json errata = json::array();
  for (const auto& d : notes) {
    errata.push_back({{"row", d.row.label()},
                      {"col", d.col.label()},
                      {"computed", d.computed ? 1 : 0},
                      {"expected", d.expected ? 1 : 0},
                      {"explanation", d.explanation}});
  }
  out["errata"] = errata;
  return out;
}

json point_class_json(const MarkovMap& map, const Rational& x, const PointClass& pc, const Itinerary& it) {
  json out = {{"x", x.str()}};
  if (const auto* e = std::get_if<Escaped>(&pc)) {
    out["class"] = "escape";
    out["escape_time"] = e->escape_time;
    out["final_point"] = e->final_point.str();
    out["escape_symbol"] = Symbol::escape(e->escape_gap).label();
    out["escape_interval"] = to_string(*map.gap(e->escape_gap), true);
    out["incidence"] = e->incidence;
  } else if (const auto* b = std::get_if<BoundaryOrbit>(&pc)) {
    out["class"] = "boundary_orbit";
    out["hit_step"] = b->hit_step;
    out["hit_point"] = b->hit_point.str();
  } else {
    const auto& r = std::get<UndeterminedRegular>(pc);
    out["class"] = "undetermined_regular";
    out["checked_depth"] = r.checked_depth;
    out["period"] = r.period ? json(*r.period) : json(nullptr);
  }
  out["itinerary"] = it.str();
  return out;
}

json tree_json(const OrbitTree& tree) {
  json out = {{"base_point", tree.base_point().str()},
              {"root_kind", tree.is_escape_tree() ? "escape" : "regular"},
              {"horizon", tree.horizon()},
              {"depth", tree.max_depth()}};
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    nodes.push_back({{"point", n.point.str()},
                     {"depth", n.depth},
                     {"branch", n.branch ? json(*n.branch + 1) : json(nullptr)},
                     {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                     {"interior", n.interior}});
  }
  out["nodes"] = nodes;
  return out;
}

std::string tree_dot(const OrbitTree& tree) {
  std::ostringstream out;
  out << "digraph orbit_tree {\n  rankdir=BT;\n";
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    out << "  n" << id << " [label=\"" << n.point << "\"" << (id == OrbitTree::root() ? ", shape=box" : "")
        << (n.interior ? "" : ", style=dashed") << "];\n";
  }
  for (std::size_t id = 0; id < tree.size(); ++id) {
    for (const auto& [branch, child] : tree.node(id).children) {
      out << "  n" << child << " -> n" << id << " [label=\"f_" << branch + 1 << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

json relation_report_json(const RelationReport& report, const Representation& rep) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry = {{"relation", c.relation}, {"kind", kind_name(c.kind)}, {"passed", c.passed}};
    if (c.edge) entry["edge"] = {c.edge->source + 1, c.edge->range + 1};
    if (c.vertex) entry["vertex"] = *c.vertex + 1;
    entry["witnesses"] = points(rep.tree, c.witnesses);
    checks.push_back(entry);
  }
  json gaps = json::object();
  for (std::size_t i = 0; i < rep.vertices(); ++i) {
    gaps[std::to_string(i + 1)] = points(rep.tree, gap_projection(rep, i).domain());
  }
  return {{"V", one_based(report.V.vertices())},
          {"passed", report.passed()},
          {"interior_size", rep.interior().size()},
          {"basis_size", rep.basis_size()},
          {"incidence", rep.incidence},
          {"checks", checks},
          {"gap_projections", gaps}};
}

json lemma_json(const LemmaCheck& check) { return {{"passed", check.passed}, {"failures", check.failures}}; }

json certificate_json(const Certificate& cert, const Representation& rep) {
  return {{"certificate", cert.faithful ? "faithful" : "uncertified"},
          {"admissible", true},
          {"incidence", rep.incidence},
          {"incidence_condition", cert.incidence_condition},
          {"vanishing_vertex_projections", one_based(cert.vanishing_vertex_projections)},
          {"vanishing_gaps", one_based(cert.vanishing_gaps)},
          {"vanishing_range_sums", one_based(cert.vanishing_range_sums)},
          {"reasons", cert.reasons}};
}

json classification_json(const Classification& c) {
  json classes = json::array();
  for (const auto& cls : c.classes) {
    json pts = json::array();
    for (const auto& p : cls.points) pts.push_back(p.str());
    classes.push_back({{"points", pts}, {"incidence", cls.incidence}, {"refinement_class", cls.refinement_class}});
  }
  return {{"classes", classes}, {"ahu_depth", c.ahu_depth}, {"ahu_cross_check", c.ahu_cross_check}};
}

json verdict_json(const EquivalenceVerdict& verdict) {
  if (const auto* e = std::get_if<Equivalent>(&verdict)) {
    return {{"verdict", "equivalent"},
            {"witness", e->witness == Equivalent::Witness::bisimulation ? "bisimulation" : "label_respecting_iso"},
            {"final_class", e->final_class},
            {"rounds", e->rounds}};
  }
  if (const auto* d = std::get_if<Distinct>(&verdict)) {
    return {{"verdict", "distinct"},
            {"separating_round", d->separating_round ? json(*d->separating_round) : json(nullptr)},
            {"signature_x", d->signature_x},
            {"signature_y", d->signature_y}};
  }
  return {{"verdict", "escape_vs_regular"}};
}

json intertwiner_json(const std::variant<Intertwiner, NoLabelRespectingIso>& result, const OrbitTree& x,
                      const OrbitTree& y) {
  if (const auto* u = std::get_if<Intertwiner>(&result)) {
    json pairs = json::array();
    for (const auto& [a, b] : u->pairs) pairs.push_back({x.node(a).point.str(), y.node(b).point.str()});
    return {{"intertwiner", "label_respecting"}, {"verified", u->verified}, {"pairs", pairs}, {"failures", u->failures}};
  }
  const auto& none = std::get<NoLabelRespectingIso>(result);
  return {{"intertwiner", "none"}, {"unlabeled_iso_exists", none.unlabeled_iso_exists}, {"reason", none.reason}};
}

}  // namespace orbitrep
