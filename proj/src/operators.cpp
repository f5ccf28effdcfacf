#include "orbitrep/operators.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "orbitrep/errors.hpp"

namespace orbitrep {

namespace {

std::string label(std::size_t v) { return std::to_string(v + 1); }

bool fixes(const PartialBasisMap& m, std::size_t v) {
  const auto w = m.apply(v);
  return w && *w == v;
}

}  // namespace

std::optional<std::size_t> Representation::escape_node() const {
  if (tree.is_escape_tree()) return OrbitTree::root();
  return std::nullopt;
}

Representation realize(const OrbitTree& tree, const TransitionData& td) {
  if (tree.map().key() != td.map_key) {
    throw InconsistentInputsError("orbit tree and transition data were derived from different maps");
  }
  const MarkovMap& map = tree.map();
  const std::size_t size = tree.size();
  const std::size_t n = td.n;

  Representation rep{tree, td, build_graph(td.A), {}, {}, {}, {}, std::vector<int>(n, 0)};
  if (const auto* e = std::get_if<Escaped>(&tree.base_class())) rep.incidence = e->incidence;

  rep.T.assign(n, PartialBasisMap(size));
  rep.P.assign(n, PartialBasisMap(size));
  rep.Q.assign(n, PartialBasisMap(size));
  for (const auto& e : rep.graph.edges) rep.S.emplace(e, PartialBasisMap(size));

  for (std::size_t y = 0; y < size; ++y) {
    const Rational& point = tree.node(y).point;
    for (std::size_t i = 0; i < n; ++i) {
      if (map.interval(i).contains(point)) rep.P[i].set(y, y);
      if (!map.image(i).contains(point)) continue;
      rep.Q[i].set(y, y);
      const auto z = tree.find(map.branch(i).solve(point));
      if (!z) continue;
      rep.T[i].set(y, *z);
      for (std::size_t j = 0; j < n; ++j) {
        if (td.A(i, j) && map.interval(j).contains(point)) rep.S.at(Edge{i, j}).set(y, *z);
      }
    }
  }
  return rep;
}

bool RelationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.passed; });
}

std::string RelationReport::summary(const OrbitTree& tree) const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.relation << ": " << (c.passed ? "pass" : "FAIL");
    for (auto w : c.witnesses) out << " " << tree.node(w).point;
    out << "\n";
  }
  return out.str();
}

RelationReport check_relations(const Representation& rep, const VertexSubset& V) {
  RelationReport report{V, {}};
  const auto interior = rep.interior();
  const std::size_t n = rep.vertices();

  for (const auto& [edge, s] : rep.S) {
    const std::string name = "s_" + label(edge.source) + label(edge.range);
    const PartialBasisMap adj = s.adjoint();
    const PartialBasisMap source_proj = compose(adj, s);
    const PartialBasisMap range_proj = compose(s, adj);

    RelationCheck a{RelationKind::range_projection, name + "^* " + name + " = p_" + label(edge.range), edge, {}, true, {}};
    RelationCheck b{RelationKind::source_bound, name + " " + name + "^* <= p_" + label(edge.source), edge, {}, true, {}};
    for (auto y : interior) {
      if (source_proj.apply(y) != rep.P[edge.range].apply(y)) a.witnesses.push_back(y);
      if (range_proj.apply(y) && !fixes(rep.P[edge.source], y)) b.witnesses.push_back(y);
    }
    a.passed = a.witnesses.empty();
    b.passed = b.witnesses.empty();
    report.checks.push_back(std::move(a));
    report.checks.push_back(std::move(b));
  }

  RelationCheck ortho{RelationKind::orthogonality, "p_i p_j = 0 (i != j)", {}, {}, true, {}};
  for (auto y : interior) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += fixes(rep.P[i], y) ? 1 : 0;
    if (hits > 1) ortho.witnesses.push_back(y);
  }
  ortho.passed = ortho.witnesses.empty();
  report.checks.push_back(std::move(ortho));

  for (auto v : V.vertices()) {
    if (v >= n) throw std::out_of_range("vertex " + label(v) + " is not in the graph");
    const auto out_edges = rep.graph.out_edges(v);
    if (out_edges.empty()) continue;
    std::vector<PartialBasisMap> ranges;
    for (const auto& e : out_edges) {
      const auto& s = rep.S.at(e);
      ranges.push_back(compose(s, s.adjoint()));
    }
    RelationCheck c{RelationKind::summation, "p_" + label(v) + " = sum_{s(e)=" + label(v) + "} s_e s_e^*", {}, v, true, {}};
    for (auto y : interior) {
      std::size_t sum = 0;
      for (const auto& r : ranges) sum += fixes(r, y) ? 1 : 0;
      if (sum != (fixes(rep.P[v], y) ? 1u : 0u)) c.witnesses.push_back(y);
    }
    c.passed = c.witnesses.empty();
    report.checks.push_back(std::move(c));
  }
  return report;
}

PartialBasisMap gap_projection(const Representation& rep, std::size_t i) {
  std::vector<PartialBasisMap> ranges;
  for (const auto& e : rep.graph.out_edges(i)) {
    const auto& s = rep.S.at(e);
    ranges.push_back(compose(s, s.adjoint()));
  }
  std::vector<std::size_t> support;
  for (auto y : rep.interior()) {
    if (!fixes(rep.P.at(i), y)) continue;
    const bool covered = std::any_of(ranges.begin(), ranges.end(), [&](const PartialBasisMap& r) { return fixes(r, y); });
    if (!covered) support.push_back(y);
  }
  return PartialBasisMap::diagonal(rep.basis_size(), support);
}

LemmaCheck lemma_identity_check(const Representation& rep) {
  LemmaCheck out;
  const auto interior = rep.interior();
  const auto escape = rep.escape_node();
  const std::size_t n = rep.vertices();
  const auto& A = rep.transitions.A;
  auto point = [&](std::size_t y) { return rep.tree.node(y).point.str(); };

  for (std::size_t i = 0; i < n; ++i) {
    const PartialBasisMap TsT = compose(rep.T[i].adjoint(), rep.T[i]);
    const PartialBasisMap TTs = compose(rep.T[i], rep.T[i].adjoint());
    for (auto y : interior) {
      std::size_t rhs = 0;
      for (std::size_t j = 0; j < n; ++j) rhs += (A(i, j) && fixes(rep.P[j], y)) ? 1 : 0;
      if (escape && y == *escape && rep.incidence[i] == 1) ++rhs;
      const std::size_t lhs = fixes(rep.Q[i], y) ? 1 : 0;
      if (lhs != rhs) {
        out.failures.push_back("Q_" + label(i) + " != sum_j a_ij P_j + c_i P_e at " + point(y));
      }
      if (TsT.apply(y) != rep.Q[i].apply(y)) out.failures.push_back("T_" + label(i) + "^* T_" + label(i) + " != Q_" + label(i) + " at " + point(y));
      if (TTs.apply(y) != rep.P[i].apply(y)) out.failures.push_back("T_" + label(i) + " T_" + label(i) + "^* != P_" + label(i) + " at " + point(y));
    }
  }
  out.passed = out.failures.empty();
  return out;
}

bool admissible(const PointClass& pc, const VertexSubset& V) {
  const auto* e = std::get_if<Escaped>(&pc);
  if (e == nullptr) throw NotAnEscapePointError("admissibility is defined for escape points only");
  return std::none_of(V.vertices().begin(), V.vertices().end(), [&](std::size_t v) { return e->incidence.at(v) == 1; });
}

bool admissible(const Representation& rep, const VertexSubset& V) {
  return std::none_of(V.vertices().begin(), V.vertices().end(), [&](std::size_t v) { return rep.incidence.at(v) == 1; });
}

Certificate faithfulness_certificate(const Representation& rep, const VertexSubset& V) {
  if (!admissible(rep, V)) {
    throw NotAdmissibleError("the escape incidence is nonzero on " + V.str() +
                             ", so the operators do not satisfy the relations for this V");
  }
  Certificate cert;
  const std::size_t n = rep.vertices();
  const auto interior = rep.interior();

  cert.incidence_condition = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (!V.contains(k) && rep.incidence[k] == 0) {
      cert.incidence_condition = false;
      cert.reasons.push_back("vertex " + label(k) + " is outside V but the escape incidence is 0 there");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.P[i].empty()) {
      cert.vanishing_vertex_projections.push_back(i);
      cert.reasons.push_back("P_" + label(i) + " vanishes on the window (try a larger depth)");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (V.contains(k)) continue;
    if (gap_projection(rep, k).empty()) {
      cert.vanishing_gaps.push_back(k);
      cert.reasons.push_back("gap projection at vertex " + label(k) + " vanishes");
    }
    bool range_sum_nonzero = false;
    for (const auto& e : rep.graph.out_edges(k)) {
      const auto& s = rep.S.at(e);
      const PartialBasisMap r = compose(s, s.adjoint());
      range_sum_nonzero = range_sum_nonzero ||
                          std::any_of(interior.begin(), interior.end(), [&](std::size_t y) { return fixes(r, y); });
    }
    if (!range_sum_nonzero) {
      cert.vanishing_range_sums.push_back(k);
      cert.reasons.push_back("sum of range projections at vertex " + label(k) + " vanishes on the interior");
    }
  }
  cert.faithful = cert.incidence_condition && cert.vanishing_vertex_projections.empty() &&
                  cert.vanishing_gaps.empty() && cert.vanishing_range_sums.empty();
  return cert;
}

std::vector<std::size_t> quotient_nonfaithfulness_demo(const Representation& rep, const VertexSubset& V1,
                                                       const VertexSubset& V2) {
  if (!V1.subset_of(V2)) throw std::invalid_argument(V1.str() + " is not a subset of " + V2.str());
  if (!admissible(rep, V2)) throw NotAdmissibleError("representation is not admissible for " + V2.str());
  std::vector<std::size_t> witnesses;
  for (auto v : V2.vertices()) {
    if (V1.contains(v)) continue;
    if (gap_projection(rep, v).empty()) witnesses.push_back(v);
  }
  return witnesses;
}

std::vector<std::size_t> incidence_divergence(const Representation& rep) {
  std::vector<std::size_t> out;
  const auto* e = std::get_if<Escaped>(&rep.tree.base_class());
  if (e == nullptr) return out;
  const auto column = rep.transitions.escape_column(e->escape_gap);
  for (std::size_t i = 0; i < rep.vertices(); ++i) {
    const int matrix_entry = column && rep.transitions.B(i, *column) ? 1 : 0;
    if (matrix_entry != rep.incidence[i]) out.push_back(i);
  }
  return out;
}

}  // namespace orbitrep
