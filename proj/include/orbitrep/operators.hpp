#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitrep/orbits.hpp"
#include "orbitrep/partial_map.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

/// The operators T_i, S_ij, P_i, Q_i on the orbit window of one point.
///
/// Basis vectors are the tree nodes. On a basis vector |y>:
///   T_i  |y> = |f_i^{-1}(y)>  if y in f(I_i)
///   S_ij |y> = |f_i^{-1}(y)>  if y in I_j        (only for a_ij = 1)
///   P_i  |y> = |y>            if y in I_i
///   Q_i  |y> = |y>            if y in f(I_i)
/// and 0 otherwise. Preimages that fall outside the window are dropped, so
/// identities are only meaningful on the interior nodes.
struct Representation {
  OrbitTree tree;
  TransitionData transitions;
  GraphSpec graph;
  std::vector<PartialBasisMap> T;
  std::map<Edge, PartialBasisMap> S;
  std::vector<PartialBasisMap> P;
  std::vector<PartialBasisMap> Q;
  /// Escape incidence of the root; all zero for a regular window.
  std::vector<int> incidence;

  std::size_t basis_size() const { return tree.size(); }
  std::size_t vertices() const { return transitions.n; }
  std::vector<std::size_t> interior() const { return tree.interior(); }
  /// The root when it is an escape point.
  std::optional<std::size_t> escape_node() const;
  const PartialBasisMap& s(std::size_t i, std::size_t j) const { return S.at(Edge{i, j}); }
};

/// Throws InconsistentInputsError if the tree and the transition data come
/// from different maps.
Representation realize(const OrbitTree& tree, const TransitionData& td);

enum class RelationKind {
  range_projection,  // s_e^* s_e = p_{r(e)}
  source_bound,      // s_e s_e^* <= p_{s(e)}
  summation,         // p_v = sum_{s(e)=v} s_e s_e^*
  orthogonality,     // p_1..p_n mutually orthogonal
};

struct RelationCheck {
  RelationKind kind;
  std::string relation;
  std::optional<Edge> edge;
  std::optional<std::size_t> vertex;
  bool passed = true;
  std::vector<std::size_t> witnesses;  // basis indices where the identity fails
};

struct RelationReport {
  VertexSubset V;
  std::vector<RelationCheck> checks;

  bool passed() const;
  /// Canonical one-line-per-check rendering with witness points, used to
  /// compare reports across truncation depths.
  std::string summary(const OrbitTree& tree) const;
};

/// Checks the relations of C*(G, V) on the interior sub-basis.
RelationReport check_relations(const Representation& rep, const VertexSubset& V);

/// P_i - sum_{j: a_ij = 1} S_ij S_ij^*, restricted to the interior.
PartialBasisMap gap_projection(const Representation& rep, std::size_t i);

struct LemmaCheck {
  bool passed = true;
  std::vector<std::string> failures;
};

/// On the interior, for every i:
///   Q_i = sum_j a_ij P_j + c_i P_{e(x)},  T_i^* T_i = Q_i,  T_i T_i^* = P_i.
LemmaCheck lemma_identity_check(const Representation& rep);

/// True iff incidence[i] = 0 for every i in V. Throws
/// NotAnEscapePointError unless the class is Escaped.
bool admissible(const PointClass& pc, const VertexSubset& V);
/// Same test on the representation's root incidence (all zero for regular windows).
bool admissible(const Representation& rep, const VertexSubset& V);

struct Certificate {
  bool faithful = false;
  /// incidence[k] = 1 for every k outside V.
  bool incidence_condition = false;
  std::vector<std::size_t> vanishing_vertex_projections;
  std::vector<std::size_t> vanishing_gaps;
  std::vector<std::size_t> vanishing_range_sums;
  std::vector<std::string> reasons;
};

/// Checks the finite conditions that certify faithfulness: the incidence
/// condition, P_i != 0 for all i, and for k outside V a nonzero gap
/// projection and a nonzero sum of range projections. Throws
/// NotAdmissibleError when the representation does not satisfy the V
/// relations to begin with.
Certificate faithfulness_certificate(const Representation& rep, const VertexSubset& V);

/// Vertices v in V2 \ V1 whose gap projection vanishes in this
/// representation: each one shows that the representation, read as a
/// representation of C*(G, V1), kills a nonzero element. Requires V1 subset
/// of V2 (std::invalid_argument) and admissibility for V2
/// (NotAdmissibleError).
std::vector<std::size_t> quotient_nonfaithfulness_demo(const Representation& rep, const VertexSubset& V1,
                                                       const VertexSubset& V2);

/// Rows i where the pointwise incidence differs from the escape matrix column
/// of the root's escape symbol (possible only without full escape coverage).
std::vector<std::size_t> incidence_divergence(const Representation& rep);

}  // namespace orbitrep
