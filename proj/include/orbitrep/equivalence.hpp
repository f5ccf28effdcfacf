#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitrep/bool_matrix.hpp"
#include "orbitrep/orbits.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

/// Plain rooted tree (root 0) given by child lists. Child lists may point to
/// earlier nodes; canonical forms always read the depth-bounded unrolling.
struct ShapeTree {
  std::vector<std::vector<std::size_t>> children;
};

/// Label-free AHU encoding of a tree truncated at `depth`.
struct CanonicalForm {
  std::size_t depth = 0;
  std::string encoding;

  std::uint64_t hash() const;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm ahu_canonical(const ShapeTree& tree, std::size_t depth);
/// Throws DepthExceedsTreeError if depth > tree.max_depth().
CanonicalForm ahu_canonical(const OrbitTree& tree, std::size_t depth);

ShapeTree shape_of(const OrbitTree& tree);

/// Depth-bounded unrolling of the pointed child graph: a node of state j has
/// one child of state i for every a_ij = 1, the root has one child of state i
/// for every root_incidence[i] = 1.
ShapeTree unroll(const BoolMatrix& A, const std::vector<int>& root_incidence, std::size_t depth);

/// Colour refinement on the child graph of A with extra root states.
/// States 0..n-1 are Markov states, n + r is the r-th root. rounds[k][s] is
/// the class of state s after round k; round 0 separates by out-degree.
struct Refinement {
  std::size_t markov_states = 0;
  std::vector<std::vector<std::size_t>> rounds;

  const std::vector<std::size_t>& final_classes() const { return rounds.back(); }
  /// Markov-state partition after round k, as sorted lists of 0-based states.
  std::vector<std::vector<std::size_t>> markov_partition(std::size_t round) const;
};

Refinement refine(const BoolMatrix& A, const std::vector<std::vector<int>>& root_incidences);

struct Equivalent {
  enum class Witness { bisimulation, label_respecting_iso };
  Witness witness = Witness::bisimulation;
  std::size_t final_class = 0;
  std::size_t rounds = 0;
};

struct Distinct {
  /// First refinement round that separates the roots.
  std::optional<std::size_t> separating_round;
  /// Class signatures (sorted child classes) of both roots at that round.
  std::string signature_x;
  std::string signature_y;
};

struct EscapeVsRegular {};

using EquivalenceVerdict = std::variant<Equivalent, Distinct, EscapeVsRegular>;

/// Exact decision: the infinite orbit trees of two escape points of one map
/// are isomorphic iff their roots end in the same refinement class.
EquivalenceVerdict bisim_equivalent(const TransitionData& td, const std::vector<int>& incidence_x,
                                    const std::vector<int>& incidence_y);

/// Classifies both points and compares them; an escape point against a
/// non-escape point is EscapeVsRegular. Throws BoundaryOrbitError if an
/// orbit hits a partition point.
EquivalenceVerdict classify_pair(const MarkovMap& map, const Rational& x, const Rational& y,
                                 std::size_t max_iter = kDefaultMaxIter);

struct EquivalenceClass {
  std::vector<Rational> points;
  std::vector<int> incidence;
  std::size_t refinement_class = 0;
};

struct Classification {
  std::vector<EquivalenceClass> classes;
  /// Pairwise AHU forms at the check depth agree with the class partition.
  bool ahu_cross_check = true;
  std::size_t ahu_depth = 0;
};

/// Throws NotAnEscapePointError if some point does not escape.
Classification classify_corpus(const MarkovMap& map, const std::vector<Rational>& points, std::size_t ahu_depth = 8,
                               std::size_t max_iter = kDefaultMaxIter);

struct Intertwiner {
  /// (node in tree x, node in tree y) for every node up to the depth.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool verified = false;
  std::vector<std::string> failures;
};

struct NoLabelRespectingIso {
  bool unlabeled_iso_exists = false;
  std::string reason;
};

/// Matches nodes by branch label from the roots down and verifies
/// U S^x_e = S^y_e U and U P^x_i = P^y_i U on the interior of tree x.
std::variant<Intertwiner, NoLabelRespectingIso> build_intertwiner(const OrbitTree& x, const OrbitTree& y,
                                                                  const TransitionData& td, std::size_t depth);

}  // namespace orbitrep
