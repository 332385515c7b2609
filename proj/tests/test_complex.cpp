#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "exst/complex.hpp"

using namespace exst;

namespace {

// Every edge of a closed surface triangulation lies in exactly two
// triangles; returns false otherwise.
bool closed_surface(const SimplicialComplex& c) {
    std::map<Simplex, int> edge_count;
    for (const auto& t : c.simplices(2))
        for (int i = 0; i < 3; ++i) ++edge_count[t.face(i)];
    if (edge_count.size() != static_cast<std::size_t>(c.count(1))) return false;
    for (const auto& [e, n] : edge_count)
        if (n != 2) return false;
    return true;
}

// Greedy orientation propagation across shared edges; a consistent global
// orientation exists iff the surface is orientable.
bool orientable(const SimplicialComplex& c) {
    int nt = c.count(2);
    std::vector<int> sign(nt, 0);
    std::map<Simplex, std::vector<std::pair<int, int>>> edge_tris;  // (tri, parity)
    for (int t = 0; t < nt; ++t)
        for (int i = 0; i < 3; ++i)
            edge_tris[c.simplices(2)[t].face(i)].push_back({t, i % 2});
    for (int start = 0; start < nt; ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int i = 0; i < 3; ++i) {
                for (auto [u, pu] : edge_tris[c.simplices(2)[t].face(i)]) {
                    if (u == t) continue;
                    // induced orientations on a shared edge must oppose
                    int want = (pu == i % 2) ? -sign[t] : sign[t];
                    if (sign[u] == 0) {
                        sign[u] = want;
                        stack.push_back(u);
                    } else if (sign[u] != want) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("from_maximal computes face closure in lexicographic order") {
    SimplicialComplex c = SimplicialComplex::from_maximal(3, {{0, 1, 2}});
    CHECK(c.count(0) == 3);
    CHECK(c.count(1) == 3);
    CHECK(c.count(2) == 1);
    CHECK(c.simplices(1)[0].vertices == std::vector<int>{0, 1});
    CHECK(c.simplices(1)[1].vertices == std::vector<int>{0, 2});
    CHECK(c.simplices(1)[2].vertices == std::vector<int>{1, 2});
    CHECK(c.index_of(Simplex{{0, 2}}) == 1);
    CHECK(c.index_of(Simplex{{0, 3}}) == -1);

    SimplicialComplex square =
        SimplicialComplex::from_maximal(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(square.count(1) == 4);
    CHECK(square.count(2) == 0);

    SimplicialComplex bs3 = SimplicialComplex::from_maximal(
        4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(bs3.count(0) == 4);
    CHECK(bs3.count(1) == 6);
    CHECK(bs3.count(2) == 4);

    CHECK_THROWS_AS(SimplicialComplex::from_maximal(3, {{0, 0, 1}}), DomainError);
    CHECK_THROWS_AS(SimplicialComplex::from_maximal(3, {{0, 5}}), DomainError);
}

TEST_CASE("boundary_chain uses the standard alternating signs") {
    SimplicialComplex c = SimplicialComplex::from_maximal(3, {{0, 1, 2}});
    FiniteAbelianGroup z4({4});
    GroupElement g = z4.reduce({1});

    // ∂([0,1,2], g) = +g·[1,2] − g·[0,2] + g·[0,1]; edges in lex order
    GroupElement b = boundary_chain(c, Simplex{{0, 1, 2}}, g, z4);
    CHECK(b.residues == std::vector<int>{1, 3, 1});

    GroupElement be = boundary_chain(c, Simplex{{0, 1}}, g, z4);
    CHECK(be.residues == std::vector<int>{3, 1, 0});  // +g·[1] − g·[0]

    // over Z2 signs vanish
    FiniteAbelianGroup z2({2});
    GroupElement b2 = boundary_chain(c, Simplex{{0, 1, 2}}, z2.reduce({1}), z2);
    CHECK(b2.residues == std::vector<int>{1, 1, 1});

    CHECK_THROWS_AS(boundary_chain(c, Simplex{{0}}, g, z4), DomainError);
}

TEST_CASE("boundary of boundary vanishes") {
    FiniteAbelianGroup z6({6});
    GroupElement g = z6.reduce({1});
    for (const char* name :
         {"boundary-simplex:3", "centered-tetrahedron-2skel", "torus-7", "klein-bottle"}) {
        SimplicialComplex c = builtin_complex(name).complex;
        for (int dim = 2; dim <= c.max_dimension(); ++dim) {
            FiniteAbelianGroup lower = chain_group(c, dim - 2, z6);
            for (const auto& s : c.simplices(dim)) {
                GroupElement b = boundary_chain(c, s, g, z6);
                // push the chain one dimension further down
                GroupElement total = lower.zero();
                for (int i = 0; i < c.count(dim - 1); ++i) {
                    GroupElement coeff = z6.reduce({b.residues[i]});
                    if (coeff.is_zero()) continue;
                    GroupElement bb =
                        boundary_chain(c, c.simplices(dim - 1)[i], coeff, z6);
                    total = lower.add(total, bb);
                }
                CHECK(total.is_zero());
            }
        }
    }
}

TEST_CASE("builtin complexes have the documented shapes") {
    BuiltinComplex ct = builtin_complex("centered-triangle");
    CHECK(ct.complex.vertex_count() == 4);
    CHECK(ct.complex.count(1) == 6);
    CHECK(ct.canonical_p == 0);

    CHECK(builtin_complex("triangle").complex.count(1) == 3);
    CHECK(builtin_complex("polygon:4").complex.count(1) == 4);
    CHECK(builtin_complex("k5").complex.count(1) == 10);

    BuiltinComplex k33 = builtin_complex("k33");
    CHECK(k33.complex.vertex_count() == 6);
    CHECK(k33.complex.count(1) == 9);
    CHECK(k33.complex.count(2) == 0);

    BuiltinComplex t2 = builtin_complex("centered-tetrahedron-2skel");
    CHECK(t2.complex.vertex_count() == 5);
    CHECK(t2.complex.count(1) == 10);
    CHECK(t2.complex.count(2) == 10);
    CHECK(t2.canonical_p == 1);

    BuiltinComplex bs4 = builtin_complex("boundary-simplex:4");
    CHECK(bs4.complex.count(3) == 5);
    CHECK(bs4.complex.count(4) == 0);
    CHECK(bs4.canonical_p == 2);

    BuiltinComplex pts = builtin_complex("points:3");
    CHECK(pts.complex.count(0) == 3);
    CHECK(pts.complex.max_dimension() == 0);
    CHECK(pts.canonical_p == -1);

    CHECK(builtin_complex("double-arc-chain").complex.count(1) == 8);
    CHECK(builtin_complex("double-y-graph").complex.count(1) == 10);

    CHECK_THROWS_AS(builtin_complex("nonesuch"), ParseError);
    CHECK_THROWS_AS(builtin_complex("polygon:2"), ParseError);
    CHECK_THROWS_AS(builtin_complex("polygon:x"), ParseError);
}

TEST_CASE("torus-7 is a closed orientable surface with chi = 0") {
    BuiltinComplex t = builtin_complex("torus-7");
    CHECK(t.beyond_desk_scale);
    const SimplicialComplex& c = t.complex;
    CHECK(c.count(0) == 7);
    CHECK(c.count(1) == 21);
    CHECK(c.count(2) == 14);
    CHECK(c.count(0) - c.count(1) + c.count(2) == 0);
    CHECK(closed_surface(c));
    CHECK(orientable(c));
}

TEST_CASE("klein-bottle is a closed non-orientable surface with chi = 0") {
    BuiltinComplex k = builtin_complex("klein-bottle");
    CHECK(k.beyond_desk_scale);
    const SimplicialComplex& c = k.complex;
    CHECK(c.count(0) - c.count(1) + c.count(2) == 0);
    CHECK(closed_surface(c));
    CHECK(!orientable(c));
}
