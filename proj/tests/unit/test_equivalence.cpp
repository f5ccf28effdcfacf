#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "fixtures.hpp"
#include "orbitrep/equivalence.hpp"
#include "orbitrep/errors.hpp"

using namespace orbitrep;
using fixtures::q;

namespace {

// Brute-force isomorphism of depth-bounded unrollings: tries every bijection
// between child lists.
class TreeIsoOracle {
 public:
  TreeIsoOracle(const BoolMatrix& A, std::vector<int> cx, std::vector<int> cy) : A_(A) {
    roots_ = {std::move(cx), std::move(cy)};
  }

  bool roots_isomorphic(std::size_t depth) { return iso(root_x(), root_y(), depth); }

 private:
  std::size_t n() const { return A_.rows(); }
  std::size_t root_x() const { return n(); }
  std::size_t root_y() const { return n() + 1; }

  std::vector<std::size_t> children(std::size_t s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n(); ++i) {
      const bool edge = s < n() ? A_(i, s) : roots_[s - n()][i] == 1;
      if (edge) out.push_back(i);
    }
    return out;
  }

  bool iso(std::size_t a, std::size_t b, std::size_t depth) {
    if (depth == 0) return true;
    const auto key = std::make_tuple(a, b, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto ca = children(a);
    auto cb = children(b);
    bool found = false;
    if (ca.size() == cb.size()) {
      std::sort(cb.begin(), cb.end());
      do {
        bool all = true;
        for (std::size_t k = 0; k < ca.size() && all; ++k) all = iso(ca[k], cb[k], depth - 1);
        found = all;
      } while (!found && std::next_permutation(cb.begin(), cb.end()));
    }
    memo_[key] = found;
    return found;
  }

  const BoolMatrix& A_;
  std::vector<std::vector<int>> roots_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo_;
};

ShapeTree shape(std::vector<std::vector<std::size_t>> children) { return ShapeTree{std::move(children)}; }

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("AHU encodings") {
    const ShapeTree a = shape({{1, 2}, {3}, {}, {}});
    const ShapeTree b = shape({{1, 2}, {}, {3}, {}});
    const ShapeTree c = shape({{1, 2}, {}, {}, {}});
    CHECK(ahu_canonical(a, 3) == ahu_canonical(b, 3));
    CHECK_FALSE(ahu_canonical(a, 3) == ahu_canonical(c, 3));
    CHECK(ahu_canonical(a, 1) == ahu_canonical(c, 1));
    CHECK(ahu_canonical(a, 2).encoding == "((())())");
    CHECK(ahu_canonical(a, 3).hash() == ahu_canonical(b, 3).hash());
  }

  TEST_CASE("orbit trees unroll the pointed child graph") {
    const OrbitTree t = build_orbit_tree(fixtures::verbatim(), q(1, 2), 6);
    CHECK(ahu_canonical(t, 6) == ahu_canonical(unroll(fixtures::example_A(), {1, 0, 0, 0}, 6), 6));
    const OrbitTree u = build_orbit_tree(fixtures::corrected(), q(13, 20), 5);
    CHECK(ahu_canonical(u, 5) == ahu_canonical(unroll(fixtures::example_A(), {1, 0, 0, 1}, 5), 5));
    CHECK_THROWS_AS(ahu_canonical(t, 7), DepthExceedsTreeError);
  }

  TEST_CASE("colour refinement on the example graph") {
    const Refinement r = refine(fixtures::example_A(), {});
    using P = std::vector<std::vector<std::size_t>>;
    CHECK(r.markov_partition(0) == P{{0, 3}, {1, 2}});
    CHECK(r.markov_partition(1) == P{{0, 3}, {1}, {2}});
    CHECK(r.markov_partition(2) == P{{0}, {1}, {2}, {3}});
  }

  TEST_CASE("bisimulation verdicts") {
    const TransitionData td = transition_data(fixtures::verbatim());
    const auto same = bisim_equivalent(td, {1, 0, 0, 0}, {1, 0, 0, 0});
    CHECK(std::holds_alternative<Equivalent>(same));
    const auto split = std::get<Distinct>(bisim_equivalent(td, {1, 0, 0, 0}, {1, 0, 0, 1}));
    CHECK(split.separating_round == 0u);
    const auto later = std::get<Distinct>(bisim_equivalent(td, {1, 0, 0, 0}, {0, 0, 0, 1}));
    CHECK(later.separating_round == 3u);
  }

  TEST_CASE("pairs of points") {
    CHECK(std::holds_alternative<Equivalent>(classify_pair(fixtures::verbatim(), q(1, 2), q(9, 20))));
    CHECK(std::get<Distinct>(classify_pair(fixtures::corrected(), q(1, 2), q(13, 20))).separating_round == 0u);
    CHECK(std::holds_alternative<EscapeVsRegular>(classify_pair(fixtures::verbatim(), q(1, 2), q(5, 27))));
    CHECK_THROWS_AS(classify_pair(fixtures::verbatim(), q(5, 27), q(5, 27)), NotAnEscapePointError);
    CHECK_THROWS_AS(classify_pair(fixtures::verbatim(), q(1, 2), q(0)), BoundaryOrbitError);
  }

  TEST_CASE("corpus classification") {
    const Classification c = classify_corpus(fixtures::verbatim(), {q(1, 2), q(9, 20), q(1, 3)});
    REQUIRE(c.classes.size() == 1);
    CHECK(c.classes[0].points.size() == 3);
    CHECK(c.ahu_cross_check);
    const Classification d = classify_corpus(fixtures::corrected(), {q(1, 2), q(13, 20), q(9, 20)});
    CHECK(d.classes.size() == 2);
    CHECK(d.ahu_cross_check);
    CHECK_THROWS_AS(classify_corpus(fixtures::verbatim(), {q(5, 27)}), NotAnEscapePointError);
  }

  TEST_CASE("label-respecting intertwiner") {
    const MarkovMap f = fixtures::verbatim();
    const auto result = build_intertwiner(build_orbit_tree(f, q(1, 2), 6), build_orbit_tree(f, q(9, 20), 6),
                                          transition_data(f), 6);
    const auto& u = std::get<Intertwiner>(result);
    CHECK(u.verified);
    CHECK(u.failures.empty());
    CHECK(u.pairs.size() == build_orbit_tree(f, q(1, 2), 6).size());

    const MarkovMap g = fixtures::corrected();
    const auto none = build_intertwiner(build_orbit_tree(g, q(1, 2), 4), build_orbit_tree(g, q(13, 20), 4),
                                        transition_data(g), 4);
    CHECK_FALSE(std::get<NoLabelRespectingIso>(none).unlabeled_iso_exists);
  }

  TEST_CASE("verdicts agree with brute-force tree isomorphism") {
    std::mt19937_64 rng(31337);
    std::size_t equivalent = 0;
    for (int k = 0; k < 150; ++k) {
      const std::size_t n = 1 + static_cast<std::size_t>(k) % 5;
      std::bernoulli_distribution coin(0.45);
      BoolMatrix A(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A.set(i, j, coin(rng));
      std::vector<int> cx(n);
      std::vector<int> cy(n);
      for (auto& v : cx) v = coin(rng) ? 1 : 0;
      for (auto& v : cy) v = coin(rng) ? 1 : 0;
      TransitionData td;
      td.n = n;
      td.A = A;
      const bool verdict = std::holds_alternative<Equivalent>(bisim_equivalent(td, cx, cy));
      TreeIsoOracle oracle(A, cx, cy);
      CAPTURE(A.str());
      CHECK(verdict == oracle.roots_isomorphic(6));
      CHECK(verdict == (ahu_canonical(unroll(A, cx, 6), 6) == ahu_canonical(unroll(A, cy, 6), 6)));
      equivalent += verdict ? 1 : 0;
    }
    CHECK(equivalent > 0);
  }
}
