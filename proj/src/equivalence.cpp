#include "orbitrep/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "orbitrep/errors.hpp"
#include "orbitrep/operators.hpp"

namespace orbitrep {

namespace {

class AhuEncoder {
 public:
  explicit AhuEncoder(const ShapeTree& tree) : tree_(tree) {}

  const std::string& encode(std::size_t node, std::size_t depth) {
    const auto key = std::make_pair(node, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::string out = "(";
    if (depth > 0) {
      std::vector<std::string> parts;
      for (auto c : tree_.children.at(node)) parts.push_back(encode(c, depth - 1));
      std::sort(parts.begin(), parts.end());
      for (auto& p : parts) out += p;
    }
    out += ")";
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const ShapeTree& tree_;
  std::map<std::pair<std::size_t, std::size_t>, std::string> memo_;
};

std::string join_classes(std::vector<std::size_t> classes) {
  std::sort(classes.begin(), classes.end());
  std::string out = "{";
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k) out += ",";
    out += "c" + std::to_string(classes[k]);
  }
  return out + "}";
}

}  // namespace

std::uint64_t CanonicalForm::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : encoding) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

CanonicalForm ahu_canonical(const ShapeTree& tree, std::size_t depth) {
  AhuEncoder enc(tree);
  return CanonicalForm{depth, enc.encode(0, depth)};
}

ShapeTree shape_of(const OrbitTree& tree) {
  ShapeTree shape;
  shape.children.resize(tree.size());
  for (std::size_t id = 0; id < tree.size(); ++id)
    for (const auto& [branch, child] : tree.node(id).children) shape.children[id].push_back(child);
  return shape;
}

CanonicalForm ahu_canonical(const OrbitTree& tree, std::size_t depth) {
  if (depth > tree.max_depth()) {
    throw DepthExceedsTreeError("depth " + std::to_string(depth) + " exceeds the tree depth " +
                                std::to_string(tree.max_depth()));
  }
  return ahu_canonical(shape_of(tree), depth);
}

ShapeTree unroll(const BoolMatrix& A, const std::vector<int>& root_incidence, std::size_t depth) {
  ShapeTree t;
  struct Item {
    std::size_t node;
    std::size_t state;
    std::size_t depth;
  };
  t.children.emplace_back();
  std::deque<Item> queue;
  auto add_children = [&](std::size_t node, std::size_t d, auto&& has_child) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (!has_child(i)) continue;
      const std::size_t id = t.children.size();
      t.children.emplace_back();
      t.children[node].push_back(id);
      queue.push_back({id, i, d + 1});
    }
  };
  if (depth > 0) add_children(0, 0, [&](std::size_t i) { return root_incidence.at(i) == 1; });
  while (!queue.empty()) {
    const Item it = queue.front();
    queue.pop_front();
    if (it.depth >= depth) continue;
    add_children(it.node, it.depth, [&](std::size_t i) { return A(i, it.state); });
  }
  return t;
}

std::vector<std::vector<std::size_t>> Refinement::markov_partition(std::size_t round) const {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t s = 0; s < markov_states; ++s) groups[rounds.at(round)[s]].push_back(s);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [cls, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

Refinement refine(const BoolMatrix& A, const std::vector<std::vector<int>>& root_incidences) {
  const std::size_t n = A.rows();
  const std::size_t states = n + root_incidences.size();
  std::vector<std::vector<std::size_t>> children(states);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i)
      if (A(i, s)) children[s].push_back(i);
  for (std::size_t r = 0; r < root_incidences.size(); ++r)
    for (std::size_t i = 0; i < n; ++i)
      if (root_incidences[r].at(i) == 1) children[n + r].push_back(i);

  Refinement out;
  out.markov_states = n;
  std::vector<std::size_t> colour(states, 0);
  std::size_t classes = 1;
  for (std::size_t round = 0; round <= states + 1; ++round) {
    using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
    std::vector<Signature> sig(states);
    for (std::size_t s = 0; s < states; ++s) {
      std::vector<std::size_t> cs;
      for (auto c : children[s]) cs.push_back(colour[c]);
      std::sort(cs.begin(), cs.end());
      sig[s] = {colour[s], std::move(cs)};
    }
    // Ids follow the sorted order of signatures, independent of state order.
    std::map<Signature, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (std::size_t s = 0; s < states; ++s) colour[s] = ids.at(sig[s]);
    out.rounds.push_back(colour);
    if (round > 0 && ids.size() == classes) break;
    classes = ids.size();
  }
  return out;
}

EquivalenceVerdict bisim_equivalent(const TransitionData& td, const std::vector<int>& incidence_x,
                                    const std::vector<int>& incidence_y) {
  const Refinement ref = refine(td.A, {incidence_x, incidence_y});
  const std::size_t rx = td.n;
  const std::size_t ry = td.n + 1;
  for (std::size_t k = 0; k < ref.rounds.size(); ++k) {
    if (ref.rounds[k][rx] == ref.rounds[k][ry]) continue;
    Distinct d{k, {}, {}};
    if (k == 0) {
      d.signature_x = "out-degree " + std::to_string(std::count(incidence_x.begin(), incidence_x.end(), 1));
      d.signature_y = "out-degree " + std::to_string(std::count(incidence_y.begin(), incidence_y.end(), 1));
    } else {
      auto sig = [&](const std::vector<int>& inc) {
        std::vector<std::size_t> cs;
        for (std::size_t i = 0; i < inc.size(); ++i)
          if (inc[i] == 1) cs.push_back(ref.rounds[k - 1][i]);
        return "children " + join_classes(cs);
      };
      d.signature_x = sig(incidence_x);
      d.signature_y = sig(incidence_y);
    }
    return d;
  }
  return Equivalent{Equivalent::Witness::bisimulation, ref.final_classes()[rx], ref.rounds.size()};
}

EquivalenceVerdict classify_pair(const MarkovMap& map, const Rational& x, const Rational& y, std::size_t max_iter) {
  const PointClass px = classify_point(map, x, max_iter);
  const PointClass py = classify_point(map, y, max_iter);
  for (const auto* pc : {&px, &py}) {
    if (const auto* b = std::get_if<BoundaryOrbit>(pc)) {
      throw BoundaryOrbitError("orbit hits partition point " + b->hit_point.str());
    }
  }
  const auto* ex = std::get_if<Escaped>(&px);
  const auto* ey = std::get_if<Escaped>(&py);
  if (ex && ey) return bisim_equivalent(transition_data(map), ex->incidence, ey->incidence);
  if (ex || ey) return EscapeVsRegular{};
  throw NotAnEscapePointError("neither " + x.str() + " nor " + y.str() + " is an escape point");
}

Classification classify_corpus(const MarkovMap& map, const std::vector<Rational>& points, std::size_t ahu_depth,
                               std::size_t max_iter) {
  const TransitionData td = transition_data(map);
  std::vector<std::vector<int>> incidences;
  for (const auto& p : points) {
    const PointClass pc = classify_point(map, p, max_iter);
    const auto* e = std::get_if<Escaped>(&pc);
    if (e == nullptr) throw NotAnEscapePointError("point " + p.str() + " does not escape");
    incidences.push_back(e->incidence);
  }
  const Refinement ref = refine(td.A, incidences);

  Classification out;
  out.ahu_depth = ahu_depth;
  std::map<std::size_t, std::size_t> class_slot;
  std::vector<std::size_t> slot_of(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::size_t cls = ref.final_classes()[td.n + k];
    auto [it, inserted] = class_slot.emplace(cls, out.classes.size());
    if (inserted) out.classes.push_back({{}, incidences[k], cls});
    out.classes[it->second].points.push_back(points[k]);
    slot_of[k] = it->second;
  }

  std::vector<CanonicalForm> forms;
  for (const auto& p : points) forms.push_back(ahu_canonical(build_orbit_tree(map, p, ahu_depth, {max_iter, 0}), ahu_depth));
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if ((forms[a] == forms[b]) != (slot_of[a] == slot_of[b])) out.ahu_cross_check = false;
  return out;
}

std::variant<Intertwiner, NoLabelRespectingIso> build_intertwiner(const OrbitTree& x, const OrbitTree& y,
                                                                  const TransitionData& td, std::size_t depth) {
  if (depth > x.max_depth() || depth > y.max_depth()) {
    throw DepthExceedsTreeError("depth " + std::to_string(depth) + " exceeds one of the trees");
  }
  if (x.is_escape_tree() != y.is_escape_tree()) {
    return NoLabelRespectingIso{false, "one window is rooted at an escape point, the other is not"};
  }
  auto unlabeled = [&] { return ahu_canonical(x, depth) == ahu_canonical(y, depth); };

  std::vector<std::optional<std::size_t>> fwd(x.size());
  std::vector<std::optional<std::size_t>> bwd(y.size());
  std::deque<std::pair<std::size_t, std::size_t>> queue{{OrbitTree::root(), OrbitTree::root()}};
  fwd[0] = 0;
  bwd[0] = 0;
  Intertwiner u;
  u.pairs.emplace_back(0, 0);
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    if (x.node(a).depth >= depth) continue;
    const auto& ca = x.node(a).children;
    const auto& cb = y.node(b).children;
    std::vector<std::size_t> la;
    std::vector<std::size_t> lb;
    for (const auto& c : ca) la.push_back(c.first);
    for (const auto& c : cb) lb.push_back(c.first);
    if (la != lb) {
      return NoLabelRespectingIso{unlabeled(), "branch labels differ below " + x.node(a).point.str() + " and " +
                                                   y.node(b).point.str()};
    }
    for (std::size_t k = 0; k < ca.size(); ++k) {
      const std::size_t ax = ca[k].second;
      const std::size_t by = cb[k].second;
      if (fwd[ax] || bwd[by]) {
        if (fwd[ax] != by || bwd[by] != ax) {
          return NoLabelRespectingIso{unlabeled(), "label matching is inconsistent at " + x.node(ax).point.str()};
        }
        continue;
      }
      fwd[ax] = by;
      bwd[by] = ax;
      u.pairs.emplace_back(ax, by);
      queue.emplace_back(ax, by);
    }
  }

  const Representation rx = realize(x, td);
  const Representation ry = realize(y, td);
  auto map_u = [&](std::optional<std::size_t> v) -> std::optional<std::size_t> {
    if (!v) return std::nullopt;
    return fwd[*v];
  };
  for (auto v : x.interior()) {
    if (x.node(v).depth >= depth || !fwd[v]) continue;
    for (const auto& [edge, sx] : rx.S) {
      const auto lhs = map_u(sx.apply(v));
      const auto rhs = ry.S.at(edge).apply(*fwd[v]);
      if (lhs != rhs) {
        u.failures.push_back("U S_" + std::to_string(edge.source + 1) + std::to_string(edge.range + 1) + " != S U at " +
                             x.node(v).point.str());
      }
    }
    for (std::size_t i = 0; i < td.n; ++i) {
      if (map_u(rx.P[i].apply(v)) != ry.P[i].apply(*fwd[v])) {
        u.failures.push_back("U P_" + std::to_string(i + 1) + " != P U at " + x.node(v).point.str());
      }
    }
  }
  u.verified = u.failures.empty();
  return u;
}

}  // namespace orbitrep
