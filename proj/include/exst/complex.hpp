#pragma once

#include <map>
#include <string>
#include <vector>

#include "exst/abelian.hpp"
#include "exst/errors.hpp"

namespace exst {

/// Oriented by increasing vertex order; vertices strictly increasing.
struct Simplex {
    std::vector<int> vertices;

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }
    auto operator<=>(const Simplex&) const = default;

    /// Face obtained by deleting the i-th vertex.
    Simplex face(int i) const {
        Simplex f = *this;
        f.vertices.erase(f.vertices.begin() + i);
        return f;
    }
};

class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Face closure of the given maximal simplices; within each dimension
    /// simplices are ordered lexicographically.
    static SimplicialComplex from_maximal(int vertex_count,
                                          const std::vector<std::vector<int>>& maximal);

    int vertex_count() const { return vertex_count_; }
    int max_dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    const std::vector<Simplex>& simplices(int dim) const {
        static const std::vector<Simplex> none;
        if (dim < 0 || dim > max_dimension()) return none;
        return by_dim_[dim];
    }

    int count(int dim) const { return static_cast<int>(simplices(dim).size()); }

    /// Position of s within its dimension's ordered list; -1 if absent.
    int index_of(const Simplex& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

  private:
    int vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::map<Simplex, int> index_;
};

/// Chain group C_dim(C; G) = G^(#dim-simplices), coefficients blocked per
/// simplex in complex order.
FiniteAbelianGroup chain_group(const SimplicialComplex& c, int dim,
                               const FiniteAbelianGroup& g);

/// ∂(s, g) = Σ_i (−1)^i · g on the i-th face, as an element of the
/// (dim−1)-chain group.
GroupElement boundary_chain(const SimplicialComplex& c, const Simplex& s,
                            const GroupElement& g, const FiniteAbelianGroup& coeff_group);

/// A named example complex with its canonical excitation dimension.
struct BuiltinComplex {
    SimplicialComplex complex;
    int canonical_p = 0;
    /// Full p=1 statistics on these manifolds is far beyond desk scale.
    bool beyond_desk_scale = false;
};

/// Names: triangle, polygon:k, centered-triangle, k5, k33,
/// centered-tetrahedron-1skel, centered-tetrahedron-2skel,
/// boundary-simplex:d, points:n, double-arc-chain, double-y-graph,
/// torus-7, klein-bottle.
BuiltinComplex builtin_complex(const std::string& name);

}  // namespace exst
