#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "orbitrep/errors.hpp"
#include "orbitrep/markov_map.hpp"

using namespace orbitrep;
using fixtures::q;

namespace {

MarkovMap make(std::vector<std::pair<Rational, Rational>> ivs, std::vector<std::pair<Rational, Rational>> brs) {
  std::vector<Interval> intervals;
  for (auto& [lo, hi] : ivs) intervals.push_back({lo, hi});
  std::vector<AffineBranch> branches;
  for (auto& [s, c] : brs) branches.push_back({s, c});
  return MarkovMap(intervals, branches);
}

bool gamma_invariant(const MarkovMap& map) {
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (const auto& end : {map.interval(i).lo, map.interval(i).hi}) {
      if (!map.is_partition_point(map.branch(i)(end))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("markov_map") {
  TEST_CASE("images of the example branches") {
    const MarkovMap f = fixtures::verbatim();
    CHECK(f.image(0) == Interval{q(1, 5), q(9, 10)});
    CHECK(f.image(1) == Interval{q(9, 10), q(1)});
    CHECK(f.image(2) == Interval{q(0), q(1, 4)});
    CHECK(f.image(3) == Interval{q(7, 10), q(9, 10)});
    CHECK(fixtures::corrected().image(3) == Interval{q(3, 5), q(9, 10)});
    CHECK(f.ambient() == Interval{q(0), q(1)});
  }

  TEST_CASE("partition points and escape gaps") {
    const MarkovMap f = fixtures::verbatim();
    const std::vector<Rational> gamma{q(0), q(1, 5), q(1, 4), q(7, 10), q(9, 10), q(1)};
    CHECK(f.partition_points() == gamma);
    const auto gaps = f.escape_gaps();
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].gap == 1);
    CHECK(to_string(gaps[0].bounds, true) == "]1/4, 7/10[");
    CHECK(f.gap(0) == std::nullopt);
    CHECK(fixtures::doubling().escape_gaps().empty());
  }

  TEST_CASE("locate") {
    const MarkovMap f = fixtures::verbatim();
    CHECK(std::get<MarkovInterior>(f.locate(q(1, 10))).interval == 0);
    CHECK(std::get<EscapeInterior>(f.locate(q(1, 2))).gap == 1);
    CHECK(std::get<PartitionPoint>(f.locate(q(1, 5))).intervals == std::vector<std::size_t>{0, 1});
    CHECK(std::get<PartitionPoint>(f.locate(q(1, 4))).intervals == std::vector<std::size_t>{1});
    CHECK(std::holds_alternative<OutsideAmbient>(f.locate(q(3, 2))));
    CHECK(std::holds_alternative<OutsideAmbient>(f.locate(q(-1, 100))));
  }

  TEST_CASE("evaluate") {
    const MarkovMap f = fixtures::verbatim();
    const auto at = std::get<Evaluation>(f.evaluate(q(1, 10)));
    CHECK(at.value == q(11, 20));
    CHECK(at.branch == 0);
    CHECK_FALSE(at.side_ambiguous);

    const auto left = std::get<Evaluation>(f.evaluate(q(9, 10)));
    CHECK(left.value == q(1, 4));
    CHECK(left.branch == 2);
    CHECK(left.side_ambiguous);
    CHECK(f.branch(3)(q(9, 10)) == q(7, 10));

    CHECK(std::get<NotInDomain>(f.evaluate(q(1, 2))).gap == 1);
    CHECK_THROWS_AS(f.evaluate(q(2)), OutsideAmbientError);
  }

  TEST_CASE("branch inverses") {
    const MarkovMap f = fixtures::verbatim();
    CHECK(f.branch_inverse(0, q(1, 2)) == q(3, 35));
    CHECK(f.branch_inverse(2, q(3, 35)) == q(269, 350));
    CHECK(f.branch_inverse(0, q(269, 350)) == q(199, 1225));
    CHECK(f.branch_inverse(3, q(269, 350)) == q(327, 350));
    CHECK(f.branch_inverse(1, q(1, 2)) == std::nullopt);
  }

  TEST_CASE("structurally invalid maps are rejected") {
    CHECK_THROWS_AS(make({}, {}), InvalidMapError);
    CHECK_THROWS_AS(make({{q(0), q(1)}}, {}), InvalidMapError);
    CHECK_THROWS_AS(make({{q(0), q(0)}}, {{q(2), q(0)}}), InvalidMapError);
    CHECK_THROWS_AS(make({{q(0), q(1, 2)}, {q(1, 3), q(1)}}, {{q(2), q(0)}, {q(2), q(-1)}}), InvalidMapError);
    CHECK_THROWS_AS(make({{q(1, 2), q(1)}, {q(0), q(1, 2)}}, {{q(2), q(-1)}, {q(2), q(0)}}), InvalidMapError);
    CHECK_THROWS_AS(make({{q(0), q(1)}}, {{q(0), q(1, 2)}}), InvalidMapError);
  }

  TEST_CASE("validate accepts the corpus maps") {
    const ValidationReport r = validate(fixtures::verbatim());
    CHECK(r.valid());
    CHECK(r.expansion_bound == q(9, 8));
    CHECK(r.aperiodicity_exponent == 5u);
    CHECK(r.escape_coverage_ok());

    const ValidationReport c = validate(fixtures::corrected());
    CHECK(c.valid());
    CHECK_FALSE(c.escape_coverage_ok());
    bool flagged = false;
    for (const auto& e : c.escape_coverage) flagged = flagged || (e.interval == 3 && e.gap == 1 && e.meets && !e.covered);
    CHECK(flagged);

    const ValidationReport d = validate(fixtures::doubling());
    CHECK(d.valid());
    CHECK(d.aperiodicity_exponent == 1u);
  }

  TEST_CASE("validate reports each failing property") {
    SUBCASE("no expansion") {
      const auto f = make({{q(0), q(1, 2)}, {q(1, 2), q(1)}}, {{q(1), q(1, 2)}, {q(-1), q(1)}});
      const auto r = validate(f);
      CHECK_FALSE(r.p3.ok);
      CHECK(r.non_expanding == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("image ends inside a Markov interval") {
      const auto f = make({{q(0), q(1, 2)}, {q(1, 2), q(1)}}, {{q(3, 2), q(0)}, {q(2), q(-1)}});
      const auto r = validate(f);
      CHECK_FALSE(r.p2.ok);
    }
    SUBCASE("images leave the ambient interval") {
      const auto f = make({{q(0), q(1, 2)}, {q(1, 2), q(1)}}, {{q(3), q(0)}, {q(2), q(-1)}});
      CHECK_FALSE(validate(f).p1.ok);
    }
    SUBCASE("bipartite transitions are not aperiodic") {
      const auto f = make({{q(0), q(1, 4)}, {q(1, 4), q(1, 2)}, {q(1, 2), q(3, 4)}, {q(3, 4), q(1)}},
                          {{q(2), q(1, 2)}, {q(2), q(0)}, {q(2), q(-1)}, {q(2), q(-3, 2)}});
      const auto r = validate(f);
      CHECK(r.p1.ok);
      CHECK(r.p2.ok);
      CHECK(r.p3.ok);
      CHECK_FALSE(r.p4.ok);
      CHECK_FALSE(r.valid());
    }
  }

  TEST_CASE("partition points map into the partition under full escape coverage") {
    CHECK(gamma_invariant(fixtures::verbatim()));
    CHECK(gamma_invariant(fixtures::doubling()));
    // With a partially covered escape interval an endpoint can land inside it.
    CHECK_FALSE(gamma_invariant(fixtures::corrected()));
    CHECK(fixtures::corrected().branch(3)(q(9, 10)) == q(3, 5));
  }

  TEST_CASE("branch inverse undoes evaluation at random points") {
    const MarkovMap f = fixtures::verbatim();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(1, 9999);
    for (int k = 0; k < 500; ++k) {
      const Rational x(num(rng), 10000);
      const auto ev = f.evaluate(x);
      if (const auto* e = std::get_if<Evaluation>(&ev)) {
        CHECK(f.branch_inverse(e->branch, e->value) == x);
        CHECK(f.image(e->branch).contains(e->value));
      } else {
        CHECK(f.gap(std::get<NotInDomain>(ev).gap)->contains_open(x));
      }
    }
  }
}
