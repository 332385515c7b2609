#include "exst/statistics.hpp"

#include <algorithm>
#include <set>

namespace exst {

namespace {

// sign-canonical serialization for column deduplication
std::vector<std::pair<int, BigInt>> canonical_entries(const SparseVec& v) {
    std::vector<std::pair<int, BigInt>> ents(v.entries().begin(), v.entries().end());
    if (!ents.empty() && ents.front().second < 0)
        for (auto& [i, c] : ents) c = -c;
    return ents;
}

std::vector<int> inter_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Inclusion-minimal sets D of candidate operators with supp(D) ∩ k = ∅
// (each operator contributes supp(d) ∩ k). Computed over distinct traces
// with a strict-shrink DFS — skipping a trace that does not strictly shrink
// the running intersection loses nothing, because such a member could be
// dropped from the set without changing the intersection — then expanded
// over the operators carrying each trace.
std::vector<std::vector<int>> minimal_blocking_sets(const ExcitationModel& m,
                                                    const std::vector<int>& k,
                                                    const std::vector<int>& candidates,
                                                    const ResourceLimits& limits,
                                                    std::size_t& budget) {
    std::vector<std::vector<int>> out;
    if (k.empty()) {
        out.push_back({});
        return out;
    }
    std::vector<std::vector<int>> traces;
    std::vector<std::vector<int>> carriers;
    {
        std::map<std::vector<int>, std::vector<int>> by_trace;
        for (int c : candidates)
            by_trace[inter_sorted(m.op(c).support, k)].push_back(c);
        for (auto& [t, ops] : by_trace) {
            traces.push_back(t);
            carriers.push_back(std::move(ops));
        }
    }
    int n = static_cast<int>(traces.size());

    std::vector<int> chosen;
    auto emit = [&]() {
        // full minimality: every chosen trace must be necessary
        for (std::size_t drop = 0; drop < chosen.size(); ++drop) {
            std::vector<int> rest = k;
            for (std::size_t t = 0; t < chosen.size(); ++t)
                if (t != drop) rest = inter_sorted(rest, traces[chosen[t]]);
            if (rest.empty()) return;
        }
        // one carrier operator per chosen trace, all combinations
        std::vector<int> pick(chosen.size(), 0);
        for (;;) {
            std::vector<int> set;
            for (std::size_t t = 0; t < chosen.size(); ++t)
                set.push_back(carriers[chosen[t]][pick[t]]);
            std::sort(set.begin(), set.end());
            out.push_back(std::move(set));
            if (++budget > limits.max_minimal_sets)
                throw ResourceError("identity-generator set count exceeds configured cap");
            std::size_t t = 0;
            while (t < pick.size() &&
                   ++pick[t] == static_cast<int>(carriers[chosen[t]].size()))
                pick[t++] = 0;
            if (t == pick.size()) break;
        }
    };
    auto dfs = [&](auto&& self, const std::vector<int>& inter, int next) -> void {
        if (inter.empty()) {
            emit();
            return;
        }
        for (int j = next; j < n; ++j) {
            std::vector<int> ni = inter_sorted(inter, traces[j]);
            if (ni.size() < inter.size()) {
                chosen.push_back(j);
                self(self, ni, j + 1);
                chosen.pop_back();
            }
        }
    };
    dfs(dfs, k, 0);
    return out;
}

ProcessWord nested_commutator(const std::vector<int>& ordered_ops) {
    ProcessWord w;
    w.letters.push_back({ordered_ops[0], +1});
    for (std::size_t i = 1; i < ordered_ops.size(); ++i) {
        ProcessWord outer;
        outer.letters.push_back({ordered_ops[i], +1});
        ProcessWord next = outer.inverse();
        next *= w.inverse();
        next *= outer;
        next *= w;
        w = std::move(next);
    }
    return w;
}

}  // namespace

StatisticsEngine::StatisticsEngine(const ExcitationModel& m, std::vector<ProcessWord> imposed,
                                   const ResourceLimits& limits)
    : m_(m), imposed_(std::move(imposed)), limits_(limits) {}

void StatisticsEngine::build_identities() {
    if (ids_built_) return;
    int na = m_.config_count();

    std::set<std::vector<std::pair<int, BigInt>>> seen;
    auto push_column = [&](const SparseVec& v) {
        if (v.empty()) return;
        auto key = canonical_entries(v);
        if (!seen.insert(std::move(key)).second) return;
        columns_.push_back(v);
        if (columns_.size() > limits_.max_identity_generators)
            throw ResourceError("identity generator count exceeds configured cap");
    };

    // Reduced generators: for each operator pair {si,sj}, each minimal set D
    // of further operators whose supports cut the shared support of the pair
    // down to nothing, each a — the alternating sum over subsets of D of the
    // 4-term commutator expression. Identities from larger cutting sets are
    // alternating combinations of translates of these, so this spans the
    // same lattice as the nested commutators over all orderings of all
    // empty-support sets (see naive_identity_generators and the
    // lattice-equality tests).
    std::size_t budget = 0;
    int ns = m_.op_count();
    for (int si = 0; si < ns; ++si) {
        for (int sj = si + 1; sj < ns; ++sj) {
            std::vector<int> shared = inter_sorted(m_.op(si).support, m_.op(sj).support);
            std::vector<int> candidates;
            for (int t = 0; t < ns; ++t)
                if (t != si && t != sj) candidates.push_back(t);
            for (const auto& others :
                 minimal_blocking_sets(m_, shared, candidates, limits_, budget)) {
                int nsub = 1 << others.size();
                for (int a = 0; a < na; ++a) {
                    SparseVec col;
                    for (int mask = 0; mask < nsub; ++mask) {
                        int b = a;
                        for (std::size_t t = 0; t < others.size(); ++t)
                            if (mask & (1 << t)) b = m_.config_apply(b, others[t], +1);
                        BigInt sign = (__builtin_popcount(mask) % 2) ? -1 : 1;
                        // θ([sj,si],b) = θ(si,b)+θ(sj,b+∂si)−θ(si,b+∂sj)−θ(sj,b)
                        col.add(theta_index(m_, si, b), sign);
                        col.add(theta_index(m_, sj, m_.config_apply(b, si, +1)), sign);
                        col.add(theta_index(m_, si, m_.config_apply(b, sj, +1)), -sign);
                        col.add(theta_index(m_, sj, b), -sign);
                    }
                    push_column(col);
                }
            }
        }
    }
    base_count_ = static_cast<int>(columns_.size());

    for (const auto& g : imposed_)
        for (int a = 0; a < na; ++a)
            push_column(to_vector(m_, expand_theta(m_, g, a).expression));

    SparseIntMatrix mat(static_cast<int>(m_.dim_e()), static_cast<int>(columns_.size()));
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (const auto& [i, c] : columns_[j].entries()) mat.set(i, static_cast<int>(j), c);
    matrix_ = std::move(mat);
    ids_built_ = true;
}

const SparseIntMatrix& StatisticsEngine::identity_matrix() {
    build_identities();
    return *matrix_;
}

const std::vector<SparseVec>& StatisticsEngine::identity_columns() {
    build_identities();
    return columns_;
}

int StatisticsEngine::base_identity_count() {
    build_identities();
    return base_count_;
}

void StatisticsEngine::build_constraints() {
    if (quotients_built_) return;
    // distinct maximal V_x: restriction through a smaller V factors through
    // any larger one (q_V = induced ∘ q_{V'} when V ⊆ V'), so the maximal
    // sets give all E_inv constraints
    std::vector<std::vector<int>> vs = m_.max_support_sets();
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].empty()) continue;
        bool maximal = true;
        for (std::size_t j = 0; j < vs.size() && maximal; ++j)
            if (i != j && vs[i] != vs[j] &&
                std::includes(vs[j].begin(), vs[j].end(), vs[i].begin(), vs[i].end()))
                maximal = false;
        if (maximal) maximal_quotients_.push_back(quotient_model(m_, vs[i]));
    }
    quotients_built_ = true;
}

const KernelWithCoords& StatisticsEngine::einv_kernel() {
    if (einv_) return *einv_;
    build_constraints();
    int na = m_.config_count(), ns = m_.op_count();
    int dim_e = ns * na;

    int rows = na;
    std::vector<int> offsets;
    for (const auto& q : maximal_quotients_) {
        offsets.push_back(rows);
        rows += q.model.op_count() * q.model.config_count();
    }

    SparseIntMatrix c(rows, dim_e);
    for (int s = 0; s < ns; ++s)
        for (int a = 0; a < na; ++a) {
            int col = theta_index(m_, s, a);
            c.add(m_.config_apply(a, s, +1), col, 1);
            c.add(a, col, -1);
            for (std::size_t v = 0; v < maximal_quotients_.size(); ++v) {
                const MappedModel& q = maximal_quotients_[v];
                int sq = q.op_map[s];
                if (sq < 0) continue;
                int row = offsets[v] + sq * q.model.config_count() + q.config_map[a];
                c.add(row, col, 1);
            }
        }
    einv_ = kernel_with_coords(c);
    return *einv_;
}

int StatisticsEngine::dim_einv() { return einv_kernel().basis.cols(); }

Expression StatisticsEngine::einv_basis_vector(int j) {
    return from_vector(m_, einv_kernel().basis.column(j));
}

bool StatisticsEngine::in_einv(const Expression& e) {
    if (!boundary_0chain(m_, e).empty()) return false;
    build_constraints();
    for (const auto& q : maximal_quotients_)
        if (!restrict_expression(q, e).is_zero()) return false;
    return true;
}

// Both SNFs of the identity lattice run on a column-reduced basis: the raw
// matrix has one column per (pair, cutting set, configuration) and is much
// wider than its rank. Orders, torsion factors, and membership tests only
// depend on the column span, so the reduction is transparent to callers.
const SnfResult& StatisticsEngine::snf_plain() {
    if (!snf_plain_) {
        SnfOptions opts;
        opts.limits = &limits_;
        snf_plain_ = snf(lattice_column_reduce(identity_matrix(), limits_), opts);
    }
    return *snf_plain_;
}

const SnfResult& StatisticsEngine::snf_with_u() {
    if (!snf_u_) {
        SnfOptions opts;
        opts.want_u = opts.want_uinv = true;
        opts.limits = &limits_;
        snf_u_ = snf(lattice_column_reduce(identity_matrix(), limits_), opts);
    }
    return *snf_u_;
}

TfResult StatisticsEngine::compute_Tf(bool want_generators) {
    const SnfResult& r = want_generators ? snf_with_u() : snf_plain();
    TfResult out;
    for (int i = 0; i < r.rank; ++i)
        if (r.diag[i] > 1) {
            out.factors.push_back(r.diag[i]);
            if (want_generators) out.generators.push_back(from_vector(m_, r.Uinv.column(i)));
        }
    return out;
}

StatisticsResult StatisticsEngine::compute_T(bool want_generators) {
    const KernelWithCoords& kc = einv_kernel();
    const SparseIntMatrix& mat = identity_matrix();
    int k = kc.basis.cols();
    int dim_e = static_cast<int>(m_.dim_e());

    // X holds the relation lattice of the kernel basis: T = Z^k / X.
    SparseIntMatrix x(k, 0);
    if (imposed_.empty()) {
        // Coordinates of every identity column in the kernel basis at once:
        // Z = Vinv * M, accumulated row-by-row against M's rows. Pivot rows
        // of Z must vanish — that is exactly the statement E_id ⊆ E_inv.
        x = SparseIntMatrix(k, mat.cols());
        std::vector<int> free_pos(dim_e, -1);
        for (std::size_t t = 0; t < kc.free_cols.size(); ++t)
            free_pos[kc.free_cols[t]] = static_cast<int>(t);
        std::vector<bool> pivot(dim_e, false);
        for (int p : kc.pivot_cols) pivot[p] = true;
        for (int i = 0; i < dim_e; ++i) {
            SparseVec zrow;
            for (const auto& [t, v] : kc.vinv.row(i).entries()) zrow.axpy(v, mat.row(t));
            if (pivot[i]) {
                if (!zrow.empty())
                    throw DomainError(
                        "identity generator outside E_inv (E_id in E_inv violated)");
            } else if (free_pos[i] >= 0) {
                x.row_mut(free_pos[i]) = std::move(zrow);
            }
        }
    } else {
        // Imposed columns need not lie in E_inv, so present
        // E_inv / (E_inv ∩ lattice): relations are the basis coordinates of
        // the kernel of [basis | lattice].
        SparseIntMatrix stacked(dim_e, k + mat.cols());
        for (int i = 0; i < dim_e; ++i) {
            SparseVec& row = stacked.row_mut(i);
            row = kc.basis.row(i);
            for (const auto& [j, c] : mat.row(i).entries()) row.set(k + j, c);
        }
        SparseIntMatrix ker = kernel_basis(stacked);
        x = SparseIntMatrix(k, ker.cols());
        for (int i = 0; i < k; ++i) x.row_mut(i) = ker.row(i);
    }

    SnfOptions opts;
    opts.want_uinv = want_generators;
    opts.limits = &limits_;
    SnfResult rx = snf(x, opts);

    StatisticsResult res;
    res.dim_e = m_.dim_e();
    res.identity_generator_count = mat.cols();
    res.dim_einv = k;
    res.free_factor_count = k - rx.rank;
    for (int i = 0; i < rx.rank; ++i)
        if (rx.diag[i] > 1) res.invariant_factors.push_back(rx.diag[i]);

    res.t_f_factors = compute_Tf(false).factors;
    if (imposed_.empty() && res.t_f_factors != res.invariant_factors)
        throw DomainError("internal inconsistency: T and T_f factors differ");

    if (want_generators) {
        for (int i = 0; i < rx.rank; ++i) {
            if (rx.diag[i] <= 1) continue;
            SparseVec coords = rx.Uinv.column(i);
            SparseVec vec;  // basis * coords
            for (const auto& [j, cj] : coords.entries()) vec.axpy(cj, kc.basis.column(j));
            res.generators.push_back(from_vector(m_, vec));
        }
    }
    return res;
}

BigInt StatisticsEngine::order_of_expression(const Expression& e) {
    if (!in_einv(e)) return 0;
    const SnfResult& r = snf_with_u();
    SparseVec v = to_vector(m_, e);
    int dim_e = static_cast<int>(m_.dim_e());
    BigInt order = 1;
    for (int i = 0; i < dim_e; ++i) {
        BigInt ci = r.U.row(i).dot(v);
        if (i < r.rank) {
            order = big_lcm(order, div_exact(r.diag[i], big_gcd(r.diag[i], ci)));
        } else if (ci != 0) {
            throw DomainError(
                "E_inv element with a nonzero free coordinate: order would be infinite, "
                "which is impossible for finite A");
        }
    }
    return order;
}

Expression StatisticsEngine::eliminate_operator(const Expression& e, int t) {
    build_identities();
    int na = m_.config_count();
    int lo = theta_index(m_, t, 0), hi = lo + na;

    SparseIntMatrix mt(na, static_cast<int>(columns_.size()));
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (const auto& [i, c] : columns_[j].entries())
            if (i >= lo && i < hi) mt.set(i - lo, static_cast<int>(j), c);

    std::vector<BigInt> b(na, 0);
    for (const auto& [k, c] : e.coeffs)
        if (k.first == t) b[k.second] = c;

    auto x = solve_integer(mt, b);
    if (!x)
        throw DomainError("no representative avoiding operator '" + m_.op(t).label + "'");

    SparseVec v = to_vector(m_, e);
    for (std::size_t j = 0; j < x->size(); ++j)
        if ((*x)[j] != 0) v.axpy(-(*x)[j], columns_[j]);
    return from_vector(m_, v);
}

SparseIntMatrix naive_identity_generators(const ExcitationModel& m, int max_operators,
                                          const ResourceLimits& limits) {
    int ns = m.op_count(), na = m.config_count();
    std::vector<SparseVec> cols;

    std::vector<int> subset;
    auto emit = [&]() {
        std::vector<int> perm = subset;
        std::sort(perm.begin(), perm.end());
        do {
            ProcessWord w = nested_commutator(perm);
            for (int a = 0; a < na; ++a) {
                SparseVec v = to_vector(m, expand_theta(m, w, a).expression);
                if (!v.empty()) cols.push_back(std::move(v));
                if (cols.size() > limits.max_identity_generators)
                    throw ResourceError("naive identity generator count exceeds cap");
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    auto intersect = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(out));
        return out;
    };
    auto dfs = [&](auto&& self, const std::vector<int>& inter, int next) -> void {
        if (static_cast<int>(subset.size()) >= 2 && inter.empty()) emit();
        if (static_cast<int>(subset.size()) == max_operators) return;
        for (int j = next; j < ns; ++j) {
            subset.push_back(j);
            self(self, subset.size() == 1 ? m.op(j).support
                                          : intersect(inter, m.op(j).support),
                 j + 1);
            subset.pop_back();
        }
    };
    dfs(dfs, {}, 0);

    SparseIntMatrix mat(static_cast<int>(m.dim_e()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, c] : cols[j].entries()) mat.set(i, static_cast<int>(j), c);
    return mat;
}

bool lattice_equal(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.rows() != b.rows()) return false;
    auto contains_all = [](const SparseIntMatrix& lattice, const SparseIntMatrix& vecs) {
        SnfOptions opts;
        opts.want_u = true;
        SnfResult r = snf(lattice, opts);
        for (int j = 0; j < vecs.cols(); ++j) {
            SparseVec col = vecs.column(j);
            for (int i = 0; i < lattice.rows(); ++i) {
                BigInt ci = r.U.row(i).dot(col);
                if (i < r.rank ? !divides(r.diag[i], ci) : ci != 0) return false;
            }
        }
        return true;
    };
    return contains_all(a, b) && contains_all(b, a);
}

}  // namespace exst
