#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "exst/model.hpp"

using namespace exst;

namespace {

const FiniteAbelianGroup Z2({2});
const FiniteAbelianGroup Z2Z2({2, 2});

// Exhaustive oracle: all inclusion-minimal operator sets (size >= 2) with
// empty common support, by brute-force subset enumeration.
std::set<std::vector<int>> brute_minimal_empty_sets(const ExcitationModel& m) {
    int n = m.op_count();
    REQUIRE(n <= 14);
    std::vector<int> empty_masks;
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        std::vector<int> inter;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1 << i))) continue;
            const auto& s = m.op(i).support;
            if (first) {
                inter = s;
                first = false;
            } else {
                std::vector<int> next;
                std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(),
                                      std::back_inserter(next));
                inter = next;
            }
        }
        if (inter.empty()) empty_masks.push_back(mask);
    }
    std::set<std::vector<int>> out;
    for (int mask : empty_masks) {
        bool minimal = true;
        for (int sub : empty_masks)
            if (sub != mask && (sub & mask) == sub) minimal = false;
        if (!minimal) continue;
        std::vector<int> ids;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) ids.push_back(i);
        out.insert(ids);
    }
    return out;
}

std::set<std::vector<int>> as_canonical_set(std::vector<std::vector<int>> sets) {
    std::set<std::vector<int>> out;
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        out.insert(s);
    }
    return out;
}

}  // namespace

TEST_CASE("from_simplicial builds the documented models") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    CHECK(tri.op_count() == 3);
    CHECK(tri.config_count() == 4);
    CHECK(tri.point_count() == 3);
    CHECK(tri.config_rep(0).is_zero());

    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    CHECK(ct.op_count() == 6);
    CHECK(ct.config_count() == 8);

    ExcitationModel p2 = builtin_model("points:2", Z2);
    CHECK(p2.op_count() == 2);
    CHECK(p2.config_count() == 2);
    CHECK(p2.op(0).boundary == p2.op(1).boundary);
    CHECK(p2.op(0).support == std::vector<int>{0});

    // V_x structure of the triangle: each vertex belongs to two edges
    for (const auto& vx : tri.max_support_sets()) CHECK(vx.size() == 2);
}

TEST_CASE("operator labels and aliases") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    CHECK(tri.op_by_label("U[0,1]") == 0);
    CHECK(tri.op_by_label("U[0,1;0]") == 0);  // explicit generator index accepted
    CHECK(tri.op_by_label("U1") == 0);
    CHECK(tri.op_by_label("U3") == tri.op_by_label("U[1,2]"));
    CHECK_THROWS_AS(tri.op_by_label("U9"), ParseError);

    ExcitationModel tri2 = builtin_model("triangle", Z2Z2);
    CHECK(tri2.op_count() == 6);
    CHECK(tri2.op_by_label("U[0,1;0]") == 0);
    CHECK(tri2.op_by_label("U[0,1;1]") == 1);
    CHECK(tri2.op_by_label("U1a") == 0);
    CHECK(tri2.op_by_label("U1b") == 1);
    CHECK(tri2.op_by_label("U3b") == tri2.op_by_label("U[1,2;1]"));
}

TEST_CASE("configuration arithmetic follows operator boundaries") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    int c1 = tri.config_apply(0, 0, +1);
    CHECK(c1 != 0);
    CHECK(tri.config_rep(c1) == tri.op(0).boundary);
    CHECK(tri.config_apply(c1, 0, -1) == 0);  // Z2: inverse returns to zero
    int c12 = tri.config_apply(c1, 1, +1);
    CHECK(tri.config_rep(c12) ==
          tri.ambient().add(tri.op(0).boundary, tri.op(1).boundary));
}

TEST_CASE("from_explicit covers abstract models") {
    // the two-point model: two operators moving the same Z2 charge
    std::vector<ExcitationModel::ExplicitOp> ops = {
        {"s1", Z2.reduce({1}), {0}},
        {"s2", Z2.reduce({1}), {1}},
    };
    ExcitationModel m = ExcitationModel::from_explicit(Z2, ops, 2);
    CHECK(m.op_count() == 2);
    CHECK(m.config_count() == 2);
    CHECK(m.op_by_label("s1") == 0);
    CHECK(m.op_by_label("U2") == 1);  // positional alias
    CHECK(minimal_empty_sets(m) == std::vector<std::vector<int>>{{0, 1}});

    ExcitationModel one = ExcitationModel::from_explicit(Z2, {ops[0]}, 1);
    CHECK(minimal_empty_sets(one).empty());

    CHECK_THROWS_AS(
        ExcitationModel::from_explicit(Z2, {{"bad", Z2.reduce({1}), {}}}, 1),
        DomainError);
    CHECK_THROWS_AS(
        ExcitationModel::from_explicit(Z2, {{"bad", Z2.reduce({1}), {5}}}, 2),
        DomainError);
}

TEST_CASE("relative_model quotients by the subcomplex boundaries") {
    SimplicialComplex c = builtin_complex("centered-triangle").complex;
    SimplicialComplex outer =
        SimplicialComplex::from_maximal(4, {{1, 2}, {1, 3}, {2, 3}});

    ExcitationModel rel = ExcitationModel::relative_model(c, outer, 0, Z2);
    CHECK(rel.op_count() == 3);  // only the three spokes survive
    for (const auto& op : rel.operators()) CHECK(op.support.front() == 0);
    CHECK(rel.config_count() == 2);  // 8 configurations / 4 outer boundaries

    // empty subcomplex reproduces from_simplicial
    SimplicialComplex none = SimplicialComplex::from_maximal(4, {});
    ExcitationModel full = ExcitationModel::relative_model(c, none, 0, Z2);
    CHECK(full.op_count() == 6);
    CHECK(full.config_count() == 8);

    // C_sub = C leaves no operators
    ExcitationModel trivial = ExcitationModel::relative_model(c, c, 0, Z2);
    CHECK(trivial.op_count() == 0);
    CHECK(trivial.config_count() == 1);

    SimplicialComplex other = SimplicialComplex::from_maximal(5, {{0, 4}});
    CHECK_THROWS_AS(ExcitationModel::relative_model(c, other, 0, Z2), DomainError);
}

TEST_CASE("quotient_model merges configurations along dropped boundaries") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);

    std::vector<int> all(ct.op_count());
    for (int i = 0; i < ct.op_count(); ++i) all[i] = i;
    MappedModel same = quotient_model(ct, all);
    CHECK(same.model.config_count() == ct.config_count());
    CHECK(same.model.op_count() == ct.op_count());

    MappedModel none = quotient_model(ct, {});
    CHECK(none.model.config_count() == 1);
    CHECK(none.model.op_count() == 0);

    // V_x for the vertex shared by edges 01, 12, 13: dropping the other
    // boundaries merges the configurations ∂U[1,2] and ∂U[1,3]
    int v = 1;
    MappedModel q = quotient_model(ct, ct.max_support_sets()[v]);
    int c12 = ct.config_apply(0, ct.op_by_label("U[1,2]"), +1);
    int c13 = ct.config_apply(0, ct.op_by_label("U[1,3]"), +1);
    CHECK(c12 != c13);
    CHECK(q.config_map[c12] == q.config_map[c13]);
    CHECK(q.op_map[ct.op_by_label("U[0,2]")] == -1);
    CHECK(q.op_map[ct.op_by_label("U[0,1]")] >= 0);
}

TEST_CASE("sub_model regenerates the configuration group") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    // keep only the three spokes (edges through vertex 0): the star graph
    std::vector<int> spokes = ct.max_support_sets()[0];
    REQUIRE(spokes.size() == 3);
    ExcitationModel star = sub_model(ct, spokes);
    CHECK(star.op_count() == 3);
    CHECK(star.config_count() == 8);  // spoke boundaries still generate A
    CHECK(minimal_empty_sets(star).empty());  // all spokes share vertex 0

    ExcitationModel empty = sub_model(ct, {});
    CHECK(empty.op_count() == 0);
    CHECK(empty.config_count() == 1);
}

TEST_CASE("minimal_empty_sets matches the exhaustive oracle") {
    for (const char* name : {"triangle", "centered-triangle", "boundary-simplex:3",
                             "double-arc-chain", "double-y-graph", "k33"}) {
        ExcitationModel m = builtin_model(name, Z2);
        CHECK(as_canonical_set(minimal_empty_sets(m)) == brute_minimal_empty_sets(m));
    }
    // multi-generator expansion too
    ExcitationModel ct2 = builtin_model("centered-triangle", Z2Z2);
    CHECK(as_canonical_set(minimal_empty_sets(ct2)) == brute_minimal_empty_sets(ct2));
}

TEST_CASE("minimal_empty_sets documented counts") {
    CHECK(minimal_empty_sets(builtin_model("triangle", Z2)).size() == 1);
    // 3 disjoint-edge pairs + 4 triangle triples
    CHECK(minimal_empty_sets(builtin_model("centered-triangle", Z2)).size() == 7);
    // all four faces of the tetrahedron boundary (any three share a vertex)
    auto bs3 = minimal_empty_sets(builtin_model("boundary-simplex:3", Z2));
    REQUIRE(bs3.size() == 1);
    CHECK(bs3[0] == std::vector<int>{0, 1, 2, 3});
    // bipartite graph: only disjoint edge pairs
    CHECK(minimal_empty_sets(builtin_model("k33", Z2)).size() == 18);
    CHECK(minimal_empty_sets(builtin_model("double-arc-chain", Z2)).size() == 2);
}

TEST_CASE("minimal empty sets vs the support structure") {
    ExcitationModel m = builtin_model("centered-triangle", Z2);
    auto sets = minimal_empty_sets(m);
    for (const auto& s : sets) {
        // not inside any V_x
        for (const auto& vx : m.max_support_sets())
            CHECK(!std::includes(vx.begin(), vx.end(), s.begin(), s.end()));
        // every proper subset (drop one) is inside some V_x
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) sub.push_back(s[i]);
            bool inside = false;
            for (const auto& vx : m.max_support_sets())
                inside |= std::includes(vx.begin(), vx.end(), sub.begin(), sub.end());
            CHECK(inside);
        }
    }
}

TEST_CASE("fig-8 builtin models carry crossing-point supports") {
    ExcitationModel dac = builtin_model("double-arc-chain", Z2);
    CHECK(dac.op_count() == 4);
    CHECK(dac.point_count() == 6);
    CHECK(dac.config_count() == 4);
    CHECK(dac.op(0).support == std::vector<int>{0, 2, 4});
    CHECK(dac.op_by_label("U[0,2]u") == 0);
    CHECK(dac.op_by_label("U[1,3]d") == 3);

    ExcitationModel dyg = builtin_model("double-y-graph", Z2);
    CHECK(dyg.op_count() == 6);
    CHECK(dyg.point_count() == 8);
    CHECK(dyg.op_by_label("U[0,3]") >= 0);
    // the two Y-legs that cross share exactly one (crossing) point
    const auto& a1c = dyg.op(dyg.op_by_label("U[0,3]")).support;
    const auto& bd1 = dyg.op(dyg.op_by_label("U[2,4]")).support;
    std::vector<int> inter;
    std::set_intersection(a1c.begin(), a1c.end(), bd1.begin(), bd1.end(),
                          std::back_inserter(inter));
    CHECK(inter == std::vector<int>{6});
}

TEST_CASE("generating set validation") {
    FiniteAbelianGroup z4({4});
    // {2} does not generate Z4
    CHECK_THROWS_AS(
        builtin_model("triangle", z4, 0, std::vector<GroupElement>{z4.reduce({2})}),
        DomainError);
    // {3} does
    ExcitationModel m =
        builtin_model("triangle", z4, 0, std::vector<GroupElement>{z4.reduce({3})});
    CHECK(m.op_count() == 3);
    CHECK(m.config_count() == 16);
}
