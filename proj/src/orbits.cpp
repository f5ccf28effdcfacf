#include "orbitrep/orbits.hpp"

#include <algorithm>
#include <set>

#include "orbitrep/errors.hpp"

namespace orbitrep {

PointClass classify_point(const MarkovMap& map, const Rational& x, std::size_t max_iter) {
  if (std::holds_alternative<OutsideAmbient>(map.locate(x))) {
    throw OutsideAmbientError("point " + x.str() + " lies outside " + to_string(map.ambient()));
  }
  std::map<Rational, std::size_t> seen;
  Rational y = x;
  for (std::size_t step = 0; step < max_iter; ++step) {
    const Location loc = map.locate(y);
    if (const auto* e = std::get_if<EscapeInterior>(&loc)) {
      return Escaped{step, y, e->gap, escape_incidence(map, y)};
    }
    if (std::holds_alternative<PartitionPoint>(loc)) return BoundaryOrbit{step, y};
    if (std::holds_alternative<OutsideAmbient>(loc)) {
      throw OutsideAmbientError("iterate " + y.str() + " of " + x.str() + " leaves the ambient interval");
    }
    if (auto [it, inserted] = seen.emplace(y, step); !inserted) {
      return UndeterminedRegular{step, step - it->second};
    }
    y = map.branch(std::get<MarkovInterior>(loc).interval)(y);
  }
  return UndeterminedRegular{max_iter, std::nullopt};
}

std::vector<int> escape_incidence(const MarkovMap& map, const Rational& e) {
  if (!std::holds_alternative<EscapeInterior>(map.locate(e))) {
    throw NotAnEscapePointError("point " + e.str() + " is not inside an escape interval");
  }
  std::vector<int> c(map.size(), 0);
  for (std::size_t i = 0; i < map.size(); ++i) c[i] = map.image(i).contains(e) ? 1 : 0;
  return c;
}

OrbitTree::OrbitTree(MarkovMap map, Rational base_point, PointClass base_class, std::size_t horizon,
                     std::size_t max_depth, std::vector<OrbitNode> nodes)
    : map_(std::move(map)),
      base_point_(std::move(base_point)),
      base_class_(std::move(base_class)),
      horizon_(horizon),
      max_depth_(max_depth),
      nodes_(std::move(nodes)) {
  for (std::size_t id = 0; id < nodes_.size(); ++id) index_.emplace(nodes_[id].point, id);
}

std::optional<std::size_t> OrbitTree::find(const Rational& point) const {
  if (auto it = index_.find(point); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::size_t> OrbitTree::interior() const {
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < nodes_.size(); ++id)
    if (nodes_[id].interior) out.push_back(id);
  return out;
}

bool OrbitTree::meets_partition_points() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const OrbitNode& n) { return map_.is_partition_point(n.point); });
}

OrbitTree build_orbit_tree(const MarkovMap& map, const Rational& x, std::size_t depth, TreeOptions options) {
  PointClass pc = classify_point(map, x, options.max_iter);
  if (const auto* b = std::get_if<BoundaryOrbit>(&pc)) {
    throw BoundaryOrbitError("orbit of " + x.str() + " hits partition point " + b->hit_point.str() + " at step " +
                             std::to_string(b->hit_step));
  }

  Rational root;
  std::size_t horizon = 0;
  if (const auto* e = std::get_if<Escaped>(&pc)) {
    root = e->final_point;
  } else {
    horizon = options.horizon;
    root = x;
    for (std::size_t step = 0; step < horizon; ++step) {
      const Location loc = map.locate(root);
      const auto* m = std::get_if<MarkovInterior>(&loc);
      if (m == nullptr) {
        throw BoundaryOrbitError("orbit of " + x.str() + " leaves the Markov interiors at step " +
                                 std::to_string(step) + ", before the horizon " + std::to_string(horizon));
      }
      root = map.branch(m->interval)(root);
    }
  }

  std::vector<OrbitNode> nodes;
  std::map<Rational, std::size_t> index;
  nodes.push_back(OrbitNode{root, 0, std::nullopt, std::nullopt, {}, false});
  index.emplace(root, 0);

  std::vector<std::size_t> level{0};
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    struct Candidate {
      Rational point;
      std::size_t parent;
      std::size_t branch;
    };
    std::vector<Candidate> fresh;
    for (std::size_t id : level) {
      for (std::size_t i = 0; i < map.size(); ++i) {
        auto z = map.branch_inverse(i, nodes[id].point);
        if (!z) continue;
        if (auto it = index.find(*z); it != index.end()) {
          nodes[id].children.emplace_back(i, it->second);
        } else {
          fresh.push_back({std::move(*z), id, i});
        }
      }
    }
    std::sort(fresh.begin(), fresh.end(), [](const Candidate& a, const Candidate& b) { return a.point < b.point; });
    level.clear();
    for (auto& c : fresh) {
      // Two parents at the same level never share a preimage (f is a function),
      // but a point can be reached twice from one parent only if two branches
      // agree on it, which happens at partition points.
      if (auto it = index.find(c.point); it != index.end()) {
        nodes[c.parent].children.emplace_back(c.branch, it->second);
        continue;
      }
      const std::size_t id = nodes.size();
      nodes.push_back(OrbitNode{c.point, d + 1, c.parent, c.branch, {}, false});
      index.emplace(c.point, id);
      nodes[c.parent].children.emplace_back(c.branch, id);
      level.push_back(id);
    }
  }
  for (auto& n : nodes) std::sort(n.children.begin(), n.children.end());

  const bool escape_root = std::holds_alternative<Escaped>(pc);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    auto& n = nodes[id];
    if (n.depth >= depth) continue;
    if (id == 0 && escape_root) {
      n.interior = true;
      continue;
    }
    const EvalResult fwd = map.evaluate(n.point);
    const auto* ev = std::get_if<Evaluation>(&fwd);
    n.interior = ev != nullptr && index.count(ev->value) > 0;
  }
  return OrbitTree(map, x, std::move(pc), horizon, depth, std::move(nodes));
}

std::string Itinerary::str() const {
  std::string out;
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (k) out += ' ';
    out += symbols[k].label();
  }
  return out;
}

Itinerary itinerary(const MarkovMap& map, const Rational& x, std::size_t max_iter) {
  if (std::holds_alternative<OutsideAmbient>(map.locate(x))) {
    throw OutsideAmbientError("point " + x.str() + " lies outside " + to_string(map.ambient()));
  }
  Itinerary out;
  Rational y = x;
  for (std::size_t step = 0; step < max_iter; ++step) {
    const EvalResult r = map.evaluate(y);
    if (const auto* nd = std::get_if<NotInDomain>(&r)) {
      out.symbols.push_back(Symbol::escape(nd->gap));
      break;
    }
    const auto& ev = std::get<Evaluation>(r);
    if (map.is_partition_point(y) && !out.ambiguous_at_boundary) {
      out.ambiguous_at_boundary = true;
      out.boundary_step = step;
    }
    out.symbols.push_back(Symbol::markov(ev.branch));
    y = ev.value;
    if (std::holds_alternative<OutsideAmbient>(map.locate(y))) break;
  }
  return out;
}

}  // namespace orbitrep
