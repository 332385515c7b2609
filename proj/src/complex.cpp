#include "exst/complex.hpp"

#include <algorithm>
#include <set>

namespace exst {

SimplicialComplex SimplicialComplex::from_maximal(
    int vertex_count, const std::vector<std::vector<int>>& maximal) {
    std::set<Simplex> all;
    for (int v = 0; v < vertex_count; ++v) all.insert(Simplex{{v}});
    for (const auto& m : maximal) {
        Simplex s{m};
        std::sort(s.vertices.begin(), s.vertices.end());
        if (std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
            throw DomainError("simplex has duplicate vertices");
        if (!s.vertices.empty() &&
            (s.vertices.front() < 0 || s.vertices.back() >= vertex_count))
            throw DomainError("simplex vertex out of range");
        // enumerate all nonempty faces via subset masks
        int n = static_cast<int>(s.vertices.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            Simplex f;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) f.vertices.push_back(s.vertices[i]);
            all.insert(std::move(f));
        }
    }
    SimplicialComplex c;
    c.vertex_count_ = vertex_count;
    for (const auto& s : all) {
        int d = s.dimension();
        if (d >= static_cast<int>(c.by_dim_.size())) c.by_dim_.resize(d + 1);
        c.by_dim_[d].push_back(s);
    }
    // std::set iterates lexicographically within fixed length already, but
    // sort per dimension to make the ordering contract explicit
    for (auto& lst : c.by_dim_) std::sort(lst.begin(), lst.end());
    for (auto& lst : c.by_dim_)
        for (std::size_t i = 0; i < lst.size(); ++i)
            c.index_.emplace(lst[i], static_cast<int>(i));
    return c;
}

FiniteAbelianGroup chain_group(const SimplicialComplex& c, int dim,
                               const FiniteAbelianGroup& g) {
    std::vector<FiniteAbelianGroup> factors(c.count(dim), g);
    return product_group(factors);
}

GroupElement boundary_chain(const SimplicialComplex& c, const Simplex& s,
                            const GroupElement& g, const FiniteAbelianGroup& coeff_group) {
    int d = s.dimension();
    if (d < 1) throw DomainError("boundary_chain needs dimension >= 1");
    if (c.index_of(s) < 0) throw DomainError("simplex not in complex");
    FiniteAbelianGroup target = chain_group(c, d - 1, coeff_group);
    GroupElement out = target.zero();
    int r = coeff_group.rank();
    for (int i = 0; i <= d; ++i) {
        int fi = c.index_of(s.face(i));
        if (fi < 0) throw DomainError("complex not closed under faces");
        GroupElement coeff = (i % 2 == 0) ? g : coeff_group.neg(g);
        for (int k = 0; k < r; ++k) out.residues[fi * r + k] = coeff.residues[k];
    }
    return target.reduce(out.residues);
}

namespace {

std::vector<std::vector<int>> complete_graph_edges(int n) {
    std::vector<std::vector<int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return e;
}

BuiltinComplex make(int vertices, const std::vector<std::vector<int>>& maximal, int p,
                    bool heavy = false) {
    return {SimplicialComplex::from_maximal(vertices, maximal), p, heavy};
}

// 7-vertex triangulation of the torus: triangles {i,i+1,i+3} and
// {i,i+2,i+3} mod 7 (each edge lies in exactly two triangles).
BuiltinComplex make_torus7() {
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return make(7, tris, 1, true);
}

// Klein bottle from a 4x4 grid: rows wrap with a column flip (the
// orientation-reversing identification), columns wrap directly.
BuiltinComplex make_klein_bottle() {
    const int m = 4, n = 4;
    auto vid = [&](int i, int j) {
        if (i >= m) {
            i -= m;
            j = (n - j % n) % n;
        }
        return i * n + (j % n);
    };
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i, j + 1), d = vid(i + 1, j + 1);
            tris.push_back({a, b, d});
            tris.push_back({a, c, d});
        }
    return make(m * n, tris, 1, true);
}

}  // namespace

BuiltinComplex builtin_complex(const std::string& name) {
    std::string base = name;
    int param = -1;
    if (auto pos = name.find(':'); pos != std::string::npos) {
        base = name.substr(0, pos);
        try {
            param = std::stoi(name.substr(pos + 1));
        } catch (const std::exception&) {
            throw ParseError("bad builtin parameter in '" + name + "'");
        }
    }

    if (base == "triangle") return make(3, {{0, 1}, {0, 2}, {1, 2}}, 0);
    if (base == "polygon") {
        if (param < 3) throw ParseError("polygon needs k >= 3 (polygon:k)");
        std::vector<std::vector<int>> edges;
        for (int i = 0; i < param; ++i) edges.push_back({i, (i + 1) % param});
        return make(param, edges, 0);
    }
    if (base == "centered-triangle") return make(4, complete_graph_edges(4), 0);
    if (base == "k5") return make(5, complete_graph_edges(5), 0);
    if (base == "k33") {
        std::vector<std::vector<int>> edges;
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j) edges.push_back({i, j});
        return make(6, edges, 0);
    }
    if (base == "centered-tetrahedron-1skel") return make(5, complete_graph_edges(5), 0);
    if (base == "centered-tetrahedron-2skel") {
        // outer tetrahedron 0..3, center 4: the 4 outer faces plus the 6
        // triangles through the center
        std::vector<std::vector<int>> tris = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) tris.push_back({i, j, 4});
        return make(5, tris, 1);
    }
    if (base == "boundary-simplex") {
        if (param < 1) throw ParseError("boundary-simplex needs d >= 1 (boundary-simplex:d)");
        // all facets ((d-1)-faces) of the d-simplex on vertices 0..d
        std::vector<std::vector<int>> facets;
        for (int skip = 0; skip <= param; ++skip) {
            std::vector<int> f;
            for (int v = 0; v <= param; ++v)
                if (v != skip) f.push_back(v);
            facets.push_back(std::move(f));
        }
        return make(param + 1, facets, param - 2);
    }
    if (base == "points") {
        if (param < 1) throw ParseError("points needs n >= 1 (points:n)");
        return make(param, {}, -1);
    }
    if (base == "double-arc-chain") {
        // two upper arcs 0-2 / 1-3 crossing at 4, two lower arcs crossing
        // at 5; the complex stores the planar subdivision (the model module
        // keeps whole arcs as single operators)
        return make(6, {{0, 4}, {2, 4}, {1, 4}, {3, 4}, {0, 5}, {2, 5}, {1, 5}, {3, 5}}, 0);
    }
    if (base == "double-y-graph") {
        // vertices: A1=0 A2=1 B=2 C=3 D1=4 D2=5, crossings X1=6 (A1C x BD1),
        // X2=7 (A2C x BD2); same subdivision convention as double-arc-chain
        return make(8, {{0, 6}, {3, 6}, {2, 6}, {4, 6},
                        {1, 7}, {3, 7}, {2, 7}, {5, 7},
                        {0, 1}, {4, 5}},
                    0);
    }
    if (base == "torus-7") return make_torus7();
    if (base == "klein-bottle") return make_klein_bottle();

    throw ParseError("unknown builtin complex '" + name + "'");
}

}  // namespace exst
