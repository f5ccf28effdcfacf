#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitrep/markov_map.hpp"
#include "orbitrep/rational.hpp"
#include "orbitrep/transitions.hpp"

namespace orbitrep {

inline constexpr std::size_t kDefaultMaxIter = 4096;
inline constexpr std::size_t kDefaultTreeDepth = 6;

/// f^tau(x) = e lands in the open escape interval of `escape_gap`; every
/// earlier iterate stays in dom(f).
struct Escaped {
  std::size_t escape_time = 0;
  Rational final_point;
  std::size_t escape_gap = 0;
  /// incidence[i] = 1 iff e lies in f(I_i).
  std::vector<int> incidence;
};

/// The orbit hits a partition point at step hit_step.
struct BoundaryOrbit {
  std::size_t hit_step = 0;
  Rational hit_point;
};

/// No escape and no partition hit within checked_depth steps. When the orbit
/// is found to be exactly periodic, `period` is set and the verdict holds at
/// any budget.
struct UndeterminedRegular {
  std::size_t checked_depth = 0;
  std::optional<std::size_t> period;
};

using PointClass = std::variant<Escaped, BoundaryOrbit, UndeterminedRegular>;

/// Throws OutsideAmbientError for x outside the ambient interval.
PointClass classify_point(const MarkovMap& map, const Rational& x, std::size_t max_iter = kDefaultMaxIter);

/// Pointwise escape incidence of an escape point e (throws
/// NotAnEscapePointError unless e lies in an open escape interval).
std::vector<int> escape_incidence(const MarkovMap& map, const Rational& e);

struct OrbitNode {
  Rational point;
  std::size_t depth = 0;
  std::optional<std::size_t> parent;
  /// Branch i with point = f_i^{-1}(parent point).
  std::optional<std::size_t> branch;
  /// (branch, node) for every preimage present in the tree, ordered by branch.
  /// In a periodic window a child can be a node discovered earlier.
  std::vector<std::pair<std::size_t, std::size_t>> children;
  /// Depth < max depth and the forward image (if defined) is in the tree, so
  /// every operator identity can be checked at this node without truncation
  /// artefacts.
  bool interior = false;
};

/// Finite window of the generalized orbit: the root and all its backward
/// preimages up to max_depth, one node per distinct point, ordered by
/// (depth, point).
class OrbitTree {
 public:
  OrbitTree(MarkovMap map, Rational base_point, PointClass base_class, std::size_t horizon, std::size_t max_depth,
            std::vector<OrbitNode> nodes);

  const MarkovMap& map() const { return map_; }
  const Rational& base_point() const { return base_point_; }
  const PointClass& base_class() const { return base_class_; }
  bool is_escape_tree() const { return std::holds_alternative<Escaped>(base_class_); }
  /// Forward horizon T used to pick the root of a regular window (0 for escape trees).
  std::size_t horizon() const { return horizon_; }
  std::size_t max_depth() const { return max_depth_; }

  std::size_t size() const { return nodes_.size(); }
  static constexpr std::size_t root() { return 0; }
  const OrbitNode& node(std::size_t id) const { return nodes_.at(id); }
  const std::vector<OrbitNode>& nodes() const { return nodes_; }
  std::optional<std::size_t> find(const Rational& point) const;
  std::vector<std::size_t> interior() const;
  /// True if some node is a partition point (the operator formulas then
  /// double count that vector).
  bool meets_partition_points() const;

 private:
  MarkovMap map_;
  Rational base_point_;
  PointClass base_class_;
  std::size_t horizon_;
  std::size_t max_depth_;
  std::vector<OrbitNode> nodes_;
  std::map<Rational, std::size_t> index_;
};

struct TreeOptions {
  std::size_t max_iter = kDefaultMaxIter;
  /// Regular points only: the window is rooted at f^horizon(x).
  std::size_t horizon = 0;
};

/// Escape points are rooted at e(x); regular (undetermined) points at
/// f^horizon(x). Throws BoundaryOrbitError if the orbit hits a partition
/// point, including before the horizon is reached.
OrbitTree build_orbit_tree(const MarkovMap& map, const Rational& x, std::size_t depth, TreeOptions options = {});

struct Itinerary {
  std::vector<Symbol> symbols;
  /// The orbit hit a partition point; coding continued with the left interval.
  bool ambiguous_at_boundary = false;
  std::optional<std::size_t> boundary_step;

  /// Space-separated labels, e.g. "1 2^".
  std::string str() const;
};

Itinerary itinerary(const MarkovMap& map, const Rational& x, std::size_t max_iter = kDefaultMaxIter);

}  // namespace orbitrep
