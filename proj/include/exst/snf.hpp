#pragma once

#include <optional>
#include <vector>

#include "exst/errors.hpp"
#include "exst/sparse.hpp"

namespace exst {

/// Which transform matrices to accumulate. Skipping unused ones saves a lot
/// of memory on large inputs (U and V are dense-ish even when M is sparse).
struct SnfOptions {
    bool want_u = false;
    bool want_uinv = false;
    bool want_v = false;
    bool want_vinv = false;
    const ResourceLimits* limits = nullptr;  // nullptr -> default_limits()
};

/// Smith decomposition D = U * M * V.
/// diag has length min(rows, cols); entries are >= 0 and each nonzero entry
/// divides the next. rank = number of nonzero diagonal entries.
/// Requested transforms are unimodular; the others are left empty.
struct SnfResult {
    std::vector<BigInt> diag;
    int rank = 0;
    SparseIntMatrix U, Uinv, V, Vinv;
};

SnfResult snf(const SparseIntMatrix& m, const SnfOptions& opts = {});

/// Dense, single-threaded reference implementation. Same deterministic pivot
/// rule; used by the tests and the benchmark to cross-check the sparse path.
SnfResult snf_reference(const SparseIntMatrix& m, const SnfOptions& opts = {});

/// Solve M*x = b over the integers. Returns none when no integer solution
/// exists. b is indexed by row; the result is indexed by column.
std::optional<std::vector<BigInt>> solve_integer(const SparseIntMatrix& m,
                                                 const std::vector<BigInt>& b);

/// Basis of the integer kernel lattice {x : M*x = 0}, one basis vector per
/// column (the non-pivot columns of V).
SparseIntMatrix kernel_basis(const SparseIntMatrix& m);

/// Kernel basis plus a coordinate map: coords(x) recovers, for x already in
/// the kernel, its (unique) coefficients with respect to the returned basis.
/// Throws DomainError if x is not in the column span of the basis.
struct KernelWithCoords {
    SparseIntMatrix basis;                       // cols(m) x kernel_rank
    std::vector<BigInt> coords(const SparseVec& x) const;

    // internals: Vinv rows and the pivot/non-pivot column split of V
    SparseIntMatrix vinv;
    std::vector<int> pivot_cols, free_cols;
};
KernelWithCoords kernel_with_coords(const SparseIntMatrix& m);

/// Column basis of the lattice spanned by the columns of m: same integer
/// column span, at most rows(m) columns. Incremental integer column echelon
/// with gcd steps; used to shrink very wide generator matrices (many columns
/// are combinations of earlier ones) before running a full SNF on them.
SparseIntMatrix lattice_column_reduce(const SparseIntMatrix& m,
                                      const ResourceLimits& limits = default_limits());

/// Invariant factors of Z^ambient_dim / (column span of gens): the SNF
/// diagonal padded with one 0 per ambient dimension beyond the rank.
std::vector<BigInt> quotient_invariants(const SparseIntMatrix& gens, int ambient_dim);

}  // namespace exst
