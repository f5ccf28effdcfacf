#include <doctest.h>

#include "fixtures.hpp"
#include "orbitrep/errors.hpp"
#include "orbitrep/operators.hpp"

using namespace orbitrep;
using fixtures::q;

namespace {

Representation rep_at(const MarkovMap& f, const Rational& x, std::size_t depth, std::size_t horizon = 0) {
  return realize(build_orbit_tree(f, x, depth, TreeOptions{kDefaultMaxIter, horizon}), transition_data(f));
}

std::vector<std::string> support_points(const Representation& rep, const PartialBasisMap& p) {
  std::vector<std::string> out;
  for (auto y : p.domain()) out.push_back(rep.tree.node(y).point.str());
  return out;
}

const RelationCheck* find_summation(const RelationReport& r, std::size_t v) {
  for (const auto& c : r.checks)
    if (c.kind == RelationKind::summation && c.vertex == v) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("partial basis maps") {
    PartialBasisMap m(4);
    m.set(0, 1);
    m.set(2, 3);
    CHECK_THROWS_AS(m.set(1, 1), std::logic_error);
    CHECK_THROWS_AS(m.set(0, 2), std::logic_error);
    CHECK(m.apply(0) == 1u);
    CHECK(m.apply(1) == std::nullopt);
    CHECK(m.adjoint().apply(3) == 2u);
    CHECK(m.rank() == 2);
    const PartialBasisMap p = compose(m.adjoint(), m);
    CHECK(p.is_diagonal());
    CHECK(p == PartialBasisMap::diagonal(4, {0, 2}));
    CHECK(compose(m, m.adjoint()) == PartialBasisMap::diagonal(4, {1, 3}));
    CHECK(m.restrict_domain({2}).domain() == std::vector<std::size_t>{2});
    CHECK_THROWS_AS(compose(m, PartialBasisMap(3)), BasisMismatchError);
  }

  TEST_CASE("Toeplitz relations hold for V empty") {
    const Representation rep = rep_at(fixtures::verbatim(), q(1, 2), 4);
    const RelationReport r = check_relations(rep, VertexSubset{});
    CHECK(r.passed());
    CHECK(r.checks.size() == 2 * 6 + 1);
  }

  TEST_CASE("summation fails exactly where the escape incidence is 1") {
    const Representation rep = rep_at(fixtures::verbatim(), q(1, 2), 4);
    const RelationReport r = check_relations(rep, VertexSubset::all(4));
    CHECK_FALSE(r.passed());
    const RelationCheck* c1 = find_summation(r, 0);
    REQUIRE(c1 != nullptr);
    CHECK_FALSE(c1->passed);
    REQUIRE(c1->witnesses.size() == 1);
    CHECK(rep.tree.node(c1->witnesses[0]).point == q(3, 35));
    for (std::size_t v = 1; v < 4; ++v) CHECK(find_summation(r, v)->passed);
    CHECK(check_relations(rep, VertexSubset::parse("2,3,4", 4)).passed());
  }

  TEST_CASE("gap projections") {
    const Representation rep = rep_at(fixtures::corrected(), q(13, 20), 4);
    CHECK(rep.incidence == std::vector<int>{1, 0, 0, 1});
    CHECK(support_points(rep, gap_projection(rep, 0)) == std::vector<std::string>{"9/70"});
    CHECK(support_points(rep, gap_projection(rep, 3)) == std::vector<std::string>{"11/12"});
    CHECK(gap_projection(rep, 1).empty());
    CHECK(gap_projection(rep, 2).empty());
  }

  TEST_CASE("lemma identities hold at every depth") {
    for (std::size_t d = 1; d <= 6; ++d) {
      CAPTURE(d);
      CHECK(lemma_identity_check(rep_at(fixtures::verbatim(), q(1, 2), d)).passed);
      CHECK(lemma_identity_check(rep_at(fixtures::corrected(), q(13, 20), d)).passed);
      CHECK(lemma_identity_check(rep_at(fixtures::corrected(), q(9, 20), d)).passed);
    }
  }

  TEST_CASE("faithfulness certificate on the example map") {
    const Representation shallow = rep_at(fixtures::verbatim(), q(1, 2), 3);
    const Certificate c3 = faithfulness_certificate(shallow, VertexSubset::parse("2,3,4", 4));
    CHECK_FALSE(c3.faithful);
    CHECK(c3.vanishing_vertex_projections == std::vector<std::size_t>{1});

    const Representation rep = rep_at(fixtures::verbatim(), q(1, 2), 4);
    const Certificate c = faithfulness_certificate(rep, VertexSubset::parse("2,3,4", 4));
    CHECK(c.faithful);
    CHECK(c.incidence_condition);
    CHECK(c.reasons.empty());

    const Certificate smaller = faithfulness_certificate(rep, VertexSubset::parse("2,3", 4));
    CHECK_FALSE(smaller.faithful);
    CHECK_FALSE(smaller.incidence_condition);

    CHECK_FALSE(admissible(rep, VertexSubset::parse("1", 4)));
    CHECK_THROWS_AS(faithfulness_certificate(rep, VertexSubset::parse("1,2", 4)), NotAdmissibleError);
  }

  TEST_CASE("faithfulness certificate on the corrected map") {
    const Representation rep = rep_at(fixtures::corrected(), q(13, 20), 4);
    CHECK(faithfulness_certificate(rep, VertexSubset::parse("2,3", 4)).faithful);
    const Certificate only2 = faithfulness_certificate(rep, VertexSubset::parse("2", 4));
    CHECK_FALSE(only2.faithful);
    CHECK(only2.vanishing_gaps == std::vector<std::size_t>{2});
    CHECK(quotient_nonfaithfulness_demo(rep, VertexSubset::parse("2", 4), VertexSubset::parse("2,3", 4)) ==
          std::vector<std::size_t>{2});
    CHECK_THROWS_AS(quotient_nonfaithfulness_demo(rep, VertexSubset::parse("2,3", 4), VertexSubset::parse("2", 4)),
                    std::invalid_argument);
  }

  TEST_CASE("admissibility from a point class") {
    const PointClass pc = classify_point(fixtures::corrected(), q(13, 20));
    CHECK(admissible(pc, VertexSubset::parse("2,3", 4)));
    CHECK_FALSE(admissible(pc, VertexSubset::parse("4", 4)));
    CHECK_THROWS_AS(admissible(classify_point(fixtures::verbatim(), q(5, 27)), VertexSubset{}),
                    NotAnEscapePointError);
  }

  TEST_CASE("pointwise incidence can differ from the escape matrix column") {
    CHECK(incidence_divergence(rep_at(fixtures::corrected(), q(9, 20), 3)) == std::vector<std::size_t>{3});
    CHECK(incidence_divergence(rep_at(fixtures::corrected(), q(13, 20), 3)).empty());
    CHECK(incidence_divergence(rep_at(fixtures::verbatim(), q(13, 20), 3)).empty());
  }

  TEST_CASE("regular windows satisfy the Cuntz-Krieger relations") {
    const Representation rep = rep_at(fixtures::verbatim(), q(5, 27), 5, 4);
    CHECK(rep.incidence == std::vector<int>{0, 0, 0, 0});
    CHECK(check_relations(rep, VertexSubset::all(4)).passed());
    CHECK(lemma_identity_check(rep).passed);
    for (auto y : rep.interior()) {
      std::size_t hits = 0;
      for (const auto& p : rep.P) hits += p.apply(y) ? 1 : 0;
      CHECK(hits == 1);
    }
    const Representation doubling = rep_at(fixtures::doubling(), q(1, 3), 5, 2);
    CHECK(check_relations(doubling, VertexSubset::all(2)).passed());
    CHECK(faithfulness_certificate(doubling, VertexSubset::all(2)).faithful);
  }

  TEST_CASE("inputs from different maps are rejected") {
    const OrbitTree t = build_orbit_tree(fixtures::verbatim(), q(1, 2), 2);
    CHECK_THROWS_AS(realize(t, transition_data(fixtures::corrected())), InconsistentInputsError);
  }

  TEST_CASE("operator actions on basis vectors") {
    const Representation rep = rep_at(fixtures::verbatim(), q(1, 2), 3);
    const auto half = *rep.tree.find(q(1, 2));
    const auto a = *rep.tree.find(q(3, 35));
    const auto b = *rep.tree.find(q(269, 350));
    CHECK(rep.T[0].apply(half) == a);
    CHECK(rep.T[2].apply(a) == b);
    CHECK(rep.s(2, 0).apply(a) == b);
    CHECK(rep.P[0].apply(a) == a);
    CHECK(rep.Q[0].apply(half) == half);
    CHECK(rep.Q[1].apply(half) == std::nullopt);
  }
}
