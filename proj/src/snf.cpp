#include "exst/snf.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exst {

namespace {

// Elimination engine. The working matrix keeps its rows and columns in
// physical order and permutes them logically (rowAt/colAt), so swaps are
// O(1) even when rows are wide. The transform accumulators are stored in
// the orientation that makes each update a single sparse axpy:
//   U, Vinv row-major; Uinv, V column-major.
class Engine {
  public:
    Engine(const SparseIntMatrix& m, const SnfOptions& opts)
        : nrows_(m.rows()),
          ncols_(m.cols()),
          opts_(opts),
          limits_(opts.limits ? *opts.limits : default_limits()) {
        if (static_cast<std::size_t>(ncols_) > limits_.max_matrix_cols ||
            static_cast<std::size_t>(nrows_) > limits_.max_matrix_cols)
            throw ResourceError("matrix dimension exceeds configured cap");
        a_.resize(nrows_);
        for (int i = 0; i < nrows_; ++i) a_[i] = m.row(i);
        row_at_.resize(nrows_);
        row_pos_.resize(nrows_);
        col_at_.resize(ncols_);
        col_pos_.resize(ncols_);
        for (int i = 0; i < nrows_; ++i) row_at_[i] = row_pos_[i] = i;
        for (int j = 0; j < ncols_; ++j) col_at_[j] = col_pos_[j] = j;
        if (opts_.want_u) init_identity(u_, nrows_);
        if (opts_.want_uinv) init_identity(uinv_, nrows_);
        if (opts_.want_v) init_identity(v_, ncols_);
        if (opts_.want_vinv) init_identity(vinv_, ncols_);
        rebuild_occ();
    }

    SnfResult run() {
        int kmax = std::min(nrows_, ncols_);
        int rank = 0;
        for (int k = 0; k < kmax; ++k) {
            if (!select_pivot(k)) break;
            reduce_pivot(k);
            ++rank;
            check_entry_cap();
        }
        enforce_divisibility(rank);

        SnfResult res;
        res.rank = rank;
        res.diag.resize(kmax);
        for (int k = 0; k < kmax; ++k) res.diag[k] = value_at(k, k);
        if (opts_.want_u) res.U = rows_to_matrix(u_, nrows_);
        if (opts_.want_uinv) res.Uinv = cols_to_matrix(uinv_, nrows_);
        if (opts_.want_v) res.V = cols_to_matrix(v_, ncols_);
        if (opts_.want_vinv) res.Vinv = rows_to_matrix(vinv_, ncols_);
        return res;
    }

  private:
    static void init_identity(std::vector<SparseVec>& t, int n) {
        t.resize(n);
        for (int i = 0; i < n; ++i) t[i].set(i, 1);
    }

    static SparseIntMatrix rows_to_matrix(const std::vector<SparseVec>& rows, int n) {
        SparseIntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row_mut(i) = rows[i];
        return m;
    }

    static SparseIntMatrix cols_to_matrix(const std::vector<SparseVec>& cols, int n) {
        SparseIntMatrix m(n, n);
        for (int j = 0; j < n; ++j)
            for (const auto& [i, val] : cols[j].entries()) m.set(i, j, val);
        return m;
    }

    BigInt value_at(int r, int c) const {
        const BigInt* p = a_[row_at_[r]].get(col_at_[c]);
        return p ? *p : BigInt(0);
    }

    // ---- elementary operations (logical indices) ----

    void swap_rows(int r, int s) {
        if (r == s) return;
        std::swap(row_pos_[row_at_[r]], row_pos_[row_at_[s]]);
        std::swap(row_at_[r], row_at_[s]);
        if (opts_.want_u) std::swap(u_[r], u_[s]);
        if (opts_.want_uinv) std::swap(uinv_[r], uinv_[s]);
    }

    void swap_cols(int r, int s) {
        if (r == s) return;
        std::swap(col_pos_[col_at_[r]], col_pos_[col_at_[s]]);
        std::swap(col_at_[r], col_at_[s]);
        if (opts_.want_v) std::swap(v_[r], v_[s]);
        if (opts_.want_vinv) std::swap(vinv_[r], vinv_[s]);
    }

    // row r -= q * row k
    void row_op(int r, int k, const BigInt& q) {
        int i = row_at_[r], ip = row_at_[k];
        a_[i].axpy(-q, a_[ip]);
        register_fill(i, a_[ip]);
        if (opts_.want_u) u_[r].axpy(-q, u_[k]);
        if (opts_.want_uinv) uinv_[k].axpy(q, uinv_[r]);
    }

    // col j -= q * col k
    void col_op(int j, int k, const BigInt& q) {
        int cj = col_at_[j], ck = col_at_[k];
        for (int i : live_rows(ck)) {
            const BigInt* v = a_[i].get(ck);
            a_[i].add(cj, -q * *v);
            col_occ_[cj].push_back(i);
            occ_size_ += 1;
        }
        if (opts_.want_v) v_[j].axpy(-q, v_[k]);
        if (opts_.want_vinv) vinv_[k].axpy(q, vinv_[j]);
    }

    void negate_row(int r) {
        a_[row_at_[r]].negate();
        if (opts_.want_u) u_[r].negate();
        if (opts_.want_uinv) uinv_[r].negate();
    }

    // ---- column occupancy (which physical rows may touch a physical col) ----

    void rebuild_occ() {
        col_occ_.assign(ncols_, {});
        occ_size_ = 0;
        for (int i = 0; i < nrows_; ++i)
            for (const auto& [j, v] : a_[i].entries()) {
                col_occ_[j].push_back(i);
                ++occ_size_;
            }
    }

    void register_fill(int i, const SparseVec& cols_from) {
        for (const auto& [j, v] : cols_from.entries()) {
            col_occ_[j].push_back(i);
            ++occ_size_;
        }
        if (occ_size_ > 4 * total_nnz() + static_cast<std::size_t>(nrows_) + 64) rebuild_occ();
    }

    std::size_t total_nnz() const {
        std::size_t n = 0;
        for (const auto& r : a_) n += r.nnz();
        return n;
    }

    void check_entry_cap() const {
        // the transforms are where the memory actually goes on large inputs
        // (U and V fill in even when the working matrix stays sparse)
        std::size_t n = total_nnz();
        for (const auto* t : {&u_, &uinv_, &v_, &vinv_})
            for (const auto& r : *t) n += r.nnz();
        if (n > limits_.max_matrix_entries)
            throw ResourceError("matrix nonzero count exceeds configured cap");
    }

    // Deduplicated physical rows with a live entry in physical column c.
    std::vector<int> live_rows(int c) {
        auto& occ = col_occ_[c];
        std::sort(occ.begin(), occ.end());
        occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
        std::vector<int> live;
        live.reserve(occ.size());
        for (int i : occ)
            if (a_[i].get(c)) live.push_back(i);
        occ = live;
        return live;
    }

    // ---- pivot selection and reduction ----

    // Minimal |entry| in the active submatrix (logical rows/cols >= k);
    // ties broken by lowest logical row, then lowest logical column.
    bool select_pivot(int k) {
        bool found = false;
        BigInt best;
        int best_r = -1, best_c = -1;
        for (int r = k; r < nrows_; ++r) {
            int i = row_at_[r];
            for (const auto& [j, val] : a_[i].entries()) {
                int c = col_pos_[j];
                if (c < k) continue;
                BigInt av = abs(val);
                if (!found || av < best || (av == best && r == best_r && c < best_c)) {
                    found = true;
                    best = av;
                    best_r = r;
                    best_c = c;
                }
            }
            if (found && best == 1) break;  // nothing can beat a unit pivot
        }
        if (!found) return false;
        swap_rows(k, best_r);
        swap_cols(k, best_c);
        return true;
    }

    // Reduce until logical row k and column k contain only the pivot.
    void reduce_pivot(int k) {
        for (;;) {
            int ip = row_at_[k], jp = col_at_[k];
            BigInt p = *a_[ip].get(jp);

            // Clear the pivot column. Updates of distinct target rows are
            // independent, so the heavy sparse merges run in parallel.
            std::vector<std::pair<int, BigInt>> targets;  // (physical row, q)
            for (int i : live_rows(jp)) {
                if (i == ip) continue;
                BigInt q = div_round(*a_[i].get(jp), p);
                if (q != 0) targets.emplace_back(i, std::move(q));
            }
            if (!targets.empty()) {
                const SparseVec& prow = a_[ip];
                std::int64_t nt = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic) if (nt > 16)
                for (std::int64_t t = 0; t < nt; ++t)
                    a_[targets[t].first].axpy(-targets[t].second, prow);
                for (const auto& [i, q] : targets) {
                    register_fill(i, prow);
                    if (opts_.want_u) u_[row_pos_[i]].axpy(-q, u_[k]);
                    if (opts_.want_uinv) uinv_[k].axpy(q, uinv_[row_pos_[i]]);
                }
            }

            // Any remainder smaller than the pivot becomes the new pivot.
            int next_r = -1;
            BigInt next_abs;
            for (int i : live_rows(jp)) {
                if (i == ip) continue;
                BigInt av = abs(*a_[i].get(jp));
                if (next_r < 0 || av < next_abs ||
                    (av == next_abs && row_pos_[i] < row_pos_[next_r])) {
                    next_r = i;
                    next_abs = av;
                }
            }
            if (next_r >= 0) {
                swap_rows(k, row_pos_[next_r]);
                continue;
            }

            // Column is clean: clear the pivot row. Since column k holds only
            // the pivot, each column op touches row k alone.
            std::vector<std::pair<int, BigInt>> row_targets;  // (logical col, q)
            for (const auto& [j, val] : a_[ip].entries()) {
                if (j == jp) continue;
                assert(col_pos_[j] > k);
                BigInt q = div_round(val, p);
                if (q != 0) row_targets.emplace_back(col_pos_[j], std::move(q));
            }
            for (const auto& [c, q] : row_targets) col_op(c, k, q);

            int next_c = -1;
            BigInt next_cabs;
            for (const auto& [j, val] : a_[ip].entries()) {
                if (j == jp) continue;
                BigInt av = abs(val);
                if (next_c < 0 || av < next_cabs ||
                    (av == next_cabs && col_pos_[j] < next_c)) {
                    next_c = col_pos_[j];
                    next_cabs = av;
                }
            }
            if (next_c >= 0) {
                swap_cols(k, next_c);
                continue;
            }
            break;
        }
        if (value_at(k, k) < 0) negate_row(k);
    }

    // Final pass: make each diagonal entry divide the later ones via 2x2
    // fixes (a,b) -> (gcd, lcm). The matrix is diagonal throughout, so each
    // fix only ever touches rows/cols i and j.
    void enforce_divisibility(int rank) {
        for (int i = 0; i < rank; ++i) {
            for (int j = i + 1; j < rank; ++j) {
                if (divides(value_at(i, i), value_at(j, j))) continue;
                col_op(i, j, BigInt(-1));  // col i += col j: puts d_j below d_i
                two_position_eliminate(i, j);
                if (value_at(i, i) < 0) negate_row(i);
                if (value_at(j, j) < 0) negate_row(j);
            }
        }
    }

    void two_position_eliminate(int i, int j) {
        for (;;) {
            BigInt p = value_at(i, i);
            BigInt below = value_at(j, i);
            if (below != 0) {
                BigInt q = div_round(below, p);
                if (q != 0) row_op(j, i, q);
                if (value_at(j, i) != 0) {
                    swap_rows(i, j);
                    continue;
                }
            }
            BigInt right = value_at(i, j);
            if (right != 0) {
                BigInt q = div_round(right, p);
                if (q != 0) col_op(j, i, q);
                if (value_at(i, j) != 0) {
                    swap_cols(i, j);
                    continue;
                }
            }
            if (value_at(j, i) == 0 && value_at(i, j) == 0) break;
        }
    }

    int nrows_, ncols_;
    SnfOptions opts_;
    ResourceLimits limits_;
    std::vector<SparseVec> a_;
    std::vector<int> row_at_, row_pos_, col_at_, col_pos_;
    std::vector<std::vector<int>> col_occ_;
    std::size_t occ_size_ = 0;
    std::vector<SparseVec> u_, uinv_, v_, vinv_;
};

}  // namespace

SnfResult snf(const SparseIntMatrix& m, const SnfOptions& opts) {
    return Engine(m, opts).run();
}

SnfResult snf_reference(const SparseIntMatrix& m, const SnfOptions&) {
    // Dense textbook elimination with the same pivot rule. Produces the
    // diagonal only; used to cross-check the sparse engine.
    int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<BigInt>> a(nr, std::vector<BigInt>(nc, 0));
    for (int i = 0; i < nr; ++i)
        for (const auto& [j, v] : m.row(i).entries()) a[i][j] = v;

    int kmax = std::min(nr, nc);
    int rank = 0;
    for (int k = 0; k < kmax; ++k) {
        // pivot: min |entry|, lowest row then column
        int pr = -1, pc = -1;
        BigInt best;
        for (int r = k; r < nr && !(pr >= 0 && best == 1); ++r)
            for (int c = k; c < nc; ++c) {
                if (a[r][c] == 0) continue;
                BigInt av = abs(a[r][c]);
                if (pr < 0 || av < best) {
                    pr = r;
                    pc = c;
                    best = av;
                }
            }
        if (pr < 0) break;
        std::swap(a[k], a[pr]);
        for (int r = 0; r < nr; ++r) std::swap(a[r][k], a[r][pc]);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int r = k + 1; r < nr; ++r) {
                if (a[r][k] == 0) continue;
                BigInt q = div_round(a[r][k], a[k][k]);
                for (int c = k; c < nc; ++c) a[r][c] -= q * a[k][c];
                if (a[r][k] != 0) {
                    std::swap(a[k], a[r]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (int c = k + 1; c < nc; ++c) {
                if (a[k][c] == 0) continue;
                BigInt q = div_round(a[k][c], a[k][k]);
                for (int r = k; r < nr; ++r) a[r][c] -= q * a[r][k];
                if (a[k][c] != 0) {
                    for (int r = 0; r < nr; ++r) std::swap(a[r][k], a[r][c]);
                    dirty = true;
                }
            }
        }
        if (a[k][k] < 0)
            for (int c = k; c < nc; ++c) a[k][c] = -a[k][c];
        ++rank;
    }
    // divisibility chain on the diagonal: gcd/lcm fixes preserve the
    // elementary-divisor structure of a diagonal matrix
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            if (!divides(a[i][i], a[j][j])) {
                BigInt g = big_gcd(a[i][i], a[j][j]);
                BigInt l = div_exact(a[i][i] * a[j][j], g);
                a[i][i] = g;
                a[j][j] = l;
            }

    SnfResult res;
    res.rank = rank;
    res.diag.resize(kmax);
    for (int k = 0; k < kmax; ++k) res.diag[k] = a[k][k];
    return res;
}

std::optional<std::vector<BigInt>> solve_integer(const SparseIntMatrix& m,
                                                 const std::vector<BigInt>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw DomainError("solve_integer: dimension mismatch");
    SnfOptions opts;
    opts.want_u = opts.want_v = true;
    SnfResult r = snf(m, opts);

    // c = U * b
    std::vector<BigInt> c(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : r.U.row(i).entries()) c[i] += v * b[j];

    SparseVec y;
    for (int i = 0; i < m.rows(); ++i) {
        if (i < r.rank) {
            if (!divides(r.diag[i], c[i])) return std::nullopt;
            y.set(i, div_exact(c[i], r.diag[i]));
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    // x = V * y
    std::vector<BigInt> x(m.cols(), 0);
    for (const auto& [j, yj] : y.entries())
        for (int i = 0; i < m.cols(); ++i) {
            const BigInt* v = r.V.row(i).get(j);
            if (v) x[i] += *v * yj;
        }
    return x;
}

SparseIntMatrix kernel_basis(const SparseIntMatrix& m) {
    SnfOptions opts;
    opts.want_v = true;
    SnfResult r = snf(m, opts);
    int n = m.cols(), kr = n - r.rank;
    SparseIntMatrix basis(n, kr);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : r.V.row(i).entries())
            if (j >= r.rank) basis.set(i, j - r.rank, v);
    return basis;
}

KernelWithCoords kernel_with_coords(const SparseIntMatrix& m) {
    SnfOptions opts;
    opts.want_v = opts.want_vinv = true;
    SnfResult r = snf(m, opts);
    int n = m.cols();
    KernelWithCoords out;
    out.vinv = std::move(r.Vinv);
    for (int j = 0; j < n; ++j)
        (j < r.rank ? out.pivot_cols : out.free_cols).push_back(j);
    out.basis = SparseIntMatrix(n, n - r.rank);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : r.V.row(i).entries())
            if (j >= r.rank) out.basis.set(i, j - r.rank, v);
    return out;
}

std::vector<BigInt> KernelWithCoords::coords(const SparseVec& x) const {
    // z = Vinv * x; pivot coordinates must vanish for kernel members
    for (int j : pivot_cols)
        if (vinv.row(j).dot(x) != 0)
            throw DomainError("vector is not in the kernel lattice");
    std::vector<BigInt> z;
    z.reserve(free_cols.size());
    for (int j : free_cols) z.push_back(vinv.row(j).dot(x));
    return z;
}

namespace {

// Incremental column-echelon basis of an integer column span: one pivot
// column per topmost nonzero row, positive leading entry. Pivot columns are
// kept mutually reduced (entries at other pivot rows reduced modulo that
// pivot's lead), which keeps them sparse and makes the reduction of each
// incoming column touch only a handful of pivots.
class ColumnReducer {
  public:
    explicit ColumnReducer(const ResourceLimits& limits) : limits_(limits) {}

    void insert(SparseVec c) {
        while (!c.empty()) {
            int r = c.entries().front().first;
            auto it = piv_.find(r);
            if (it == piv_.end()) {
                if (c.entries().front().second < 0) c.negate();
                place(r, std::move(c));
                return;
            }
            SparseVec& p = it->second;
            BigInt a = p.entries().front().second;  // > 0 by construction
            BigInt b = c.entries().front().second;
            if (divides(a, b)) {
                c.axpy(-div_exact(b, a), p);
            } else {
                // unimodular two-column step: det [[u,-b/g],[v,a/g]] = 1,
                // so span{p', c'} = span{p, c}
                BigInt g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
                           b.get_mpz_t());
                SparseVec np = p;
                np.scale(u);
                np.axpy(v, c);
                c.scale(div_exact(a, g));
                c.axpy(-div_exact(b, g), p);
                place(r, std::move(np));
            }
        }
    }

    SparseIntMatrix basis(int rows) const {
        SparseIntMatrix out(rows, static_cast<int>(piv_.size()));
        int j = 0;
        for (const auto& [r, col] : piv_) {
            for (const auto& [i, val] : col.entries()) out.set(i, j, val);
            ++j;
        }
        return out;
    }

  private:
    // Install (or replace) the pivot at row r, re-normalize it against the
    // pivots below, and reduce the pivots that have an entry at row r.
    void place(int r, SparseVec col) {
        auto old = piv_.find(r);
        if (old != piv_.end()) {
            stored_ -= old->second.nnz();
            unregister_rows(r);
        }
        piv_[r] = std::move(col);
        normalize(r);
        register_rows(r);

        auto occ = occ_.find(r);
        if (occ == occ_.end()) return;
        std::vector<int> holders(occ->second.begin(), occ->second.end());
        const BigInt& lead = piv_[r].entries().front().second;
        for (int h : holders) {
            auto it = piv_.find(h);
            if (it == piv_.end()) continue;
            const BigInt* val = it->second.get(r);
            if (!val) continue;
            BigInt q = div_round(*val, lead);
            if (q == 0) continue;
            stored_ -= it->second.nnz();
            unregister_rows(h);
            it->second.axpy(-q, piv_[r]);
            normalize(h);
            register_rows(h);
        }
    }

    // Reduce the entries of pivot r that sit at other pivot rows. Pure
    // column mutation; occupancy is registered by the caller afterwards.
    void normalize(int r) {
        SparseVec& p = piv_[r];
        for (std::size_t k = 1; k < p.entries().size();) {
            int row = p.entries()[k].first;
            auto it = piv_.find(row);
            if (it == piv_.end()) {
                ++k;
                continue;
            }
            BigInt q = div_round(p.entries()[k].second, it->second.entries().front().second);
            if (q == 0) {
                ++k;
                continue;
            }
            p.axpy(-q, it->second);  // only touches rows >= row
        }
    }

    void register_rows(int r) {
        const SparseVec& p = piv_[r];
        stored_ += p.nnz();
        if (stored_ > limits_.max_matrix_entries)
            throw ResourceError("matrix nonzero count exceeds configured cap");
        for (const auto& [row, val] : p.entries())
            if (row != r) occ_[row].insert(r);
    }

    void unregister_rows(int r) {
        for (const auto& [row, val] : piv_[r].entries()) {
            if (row == r) continue;
            auto it = occ_.find(row);
            if (it != occ_.end()) it->second.erase(r);
        }
    }

    const ResourceLimits& limits_;
    std::map<int, SparseVec> piv_;
    std::unordered_map<int, std::unordered_set<int>> occ_;  // row -> pivots with an entry there
    std::size_t stored_ = 0;
};

}  // namespace

SparseIntMatrix lattice_column_reduce(const SparseIntMatrix& m, const ResourceLimits& limits) {
    ColumnReducer red(limits);
    for (int j = 0; j < m.cols(); ++j) red.insert(m.column(j));
    return red.basis(m.rows());
}

std::vector<BigInt> quotient_invariants(const SparseIntMatrix& gens, int ambient_dim) {
    if (gens.rows() != ambient_dim)
        throw DomainError("quotient_invariants: generator rows must match ambient dimension");
    SnfResult r = snf(gens);
    std::vector<BigInt> factors;
    factors.reserve(ambient_dim);
    for (int i = 0; i < r.rank; ++i) factors.push_back(r.diag[i]);
    while (static_cast<int>(factors.size()) < ambient_dim) factors.emplace_back(0);
    return factors;
}

}  // namespace exst
