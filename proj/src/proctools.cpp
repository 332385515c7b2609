#include "exst/proctools.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace exst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

BigInt vec_norm1(const SparseVec& v) {
    BigInt n = 0;
    for (const auto& [i, c] : v.entries()) n += abs(c);
    return n;
}

// shortest paths in the configuration graph (every operator, both signs;
// lower operator ids explored first, so ties are deterministic)
struct BfsTree {
    std::vector<int> parent, dist;
    std::vector<std::pair<int, int>> letter;  // move applied at the parent
};

BfsTree bfs_tree(const ExcitationModel& m, int root) {
    int na = m.config_count();
    BfsTree t;
    t.parent.assign(na, -1);
    t.dist.assign(na, -1);
    t.letter.assign(na, {0, 0});
    std::queue<int> q;
    t.dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        for (int s = 0; s < m.op_count(); ++s)
            for (int sign : {+1, -1}) {
                int nxt = m.config_apply(cur, s, sign);
                if (t.dist[nxt] >= 0) continue;
                t.dist[nxt] = t.dist[cur] + 1;
                t.parent[nxt] = cur;
                t.letter[nxt] = {s, sign};
                q.push(nxt);
            }
    }
    return t;
}

// letters in execution order (first applied first) from root to cfg
std::vector<std::pair<int, int>> exec_path(const BfsTree& t, int root, int cfg) {
    std::vector<std::pair<int, int>> out;
    for (int c = cfg; c != root; c = t.parent[c]) out.push_back(t.letter[c]);
    std::reverse(out.begin(), out.end());
    return out;
}

// a written word lists letters with the rightmost acting first
ProcessWord written(std::vector<std::pair<int, int>> exec) {
    std::reverse(exec.begin(), exec.end());
    ProcessWord w;
    w.letters = std::move(exec);
    return w;
}

}  // namespace

Expression simplify_randomly(StatisticsEngine& eng, const Expression& e,
                             const SimplifyOptions& opts) {
    const std::vector<SparseVec>& cols = eng.identity_columns();
    const ExcitationModel& m = eng.model();
    SparseVec start = to_vector(m, e);
    if (cols.empty()) return e;

    SparseVec best = start;
    BigInt best_norm = vec_norm1(best);
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(splitmix64(opts.seed + 0x9e3779b97f4a7c15ULL * (r + 1)));
        std::uniform_int_distribution<std::size_t> pick(0, cols.size() - 1);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        SparseVec cur = start;
        BigInt cur_norm = best_norm;
        for (long long t = 0; t < opts.tries; ++t) {
            SparseVec cand = cur;
            cand.axpy(BigInt(coin(rng) ? 1 : -1), cols[pick(rng)]);
            BigInt n = vec_norm1(cand);
            bool accept = n < cur_norm;
            if (!accept && opts.plateau_probability > 0 && n == cur_norm)
                accept = unit(rng) < opts.plateau_probability;
            if (accept) {
                cur = std::move(cand);
                cur_norm = std::move(n);
            }
        }
        if (cur_norm < best_norm) {
            best = std::move(cur);
            best_norm = std::move(cur_norm);
        }
    }
    return from_vector(m, best);
}

ProcessWord reconstruct_process(const ExcitationModel& m, const Expression& e, int base) {
    if (!boundary_0chain(m, e).empty())
        throw DomainError("expression is not closed; no process reconstruction exists");

    using Letter = std::pair<int, int>;
    // directed multigraph: coefficient c > 0 on (s,a) gives c copies of the
    // edge a -> a+∂s traversed as s; c < 0 gives |c| copies of a+∂s -> a
    // traversed as s^-1
    std::map<int, std::vector<std::pair<int, Letter>>> adj;
    std::size_t edge_count = 0;
    for (const auto& [k, c] : e.coeffs) {
        auto [s, a] = k;
        int b = m.config_apply(a, s, +1);
        if (!c.fits_slong_p())
            throw ResourceError("coefficient too large for process reconstruction");
        long cnt = std::labs(c.get_si());
        if ((edge_count += cnt) > (1u << 20))
            throw ResourceError("edge count too large for process reconstruction");
        for (long i = 0; i < cnt; ++i) {
            if (c > 0)
                adj[a].push_back({b, {s, +1}});
            else
                adj[b].push_back({a, {s, -1}});
        }
    }
    if (adj.empty()) return {};
    for (auto& [cfg, lst] : adj) std::sort(lst.begin(), lst.end());

    // weakly-connected components of the nonzero-edge subgraph; closedness
    // balances in/out degree at every node, so each component is Eulerian
    std::map<int, std::set<int>> und;
    for (const auto& [from, lst] : adj)
        for (const auto& [to, l] : lst) {
            und[from].insert(to);
            und[to].insert(from);
        }
    std::map<int, int> comp;
    int ncomp = 0;
    for (const auto& [start, nb] : und) {
        if (comp.count(start)) continue;
        std::queue<int> q;
        q.push(start);
        comp[start] = ncomp;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : und[u])
                if (!comp.count(w)) {
                    comp[w] = ncomp;
                    q.push(w);
                }
        }
        ++ncomp;
    }

    BfsTree tree = bfs_tree(m, base);
    // entry node per component: nearest to base, ties to the lowest index
    std::vector<int> entry(ncomp, -1);
    for (const auto& [node, c] : comp) {
        if (tree.dist[node] < 0)
            throw DomainError("component configuration unreachable from the base");
        if (entry[c] < 0 || tree.dist[node] < tree.dist[entry[c]] ||
            (tree.dist[node] == tree.dist[entry[c]] && node < entry[c]))
            entry[c] = node;
    }
    std::vector<int> order(ncomp);
    for (int c = 0; c < ncomp; ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(tree.dist[entry[a]], entry[a]) <
               std::pair(tree.dist[entry[b]], entry[b]);
    });

    std::map<int, std::size_t> cursor;
    auto euler_from = [&](int v) {
        // Hierholzer: walk until stuck, splice detours while unwinding
        std::vector<std::pair<int, Letter>> st{{v, {0, 0}}};
        std::vector<Letter> circuit;
        while (!st.empty()) {
            auto [u, lu] = st.back();
            std::size_t& cu = cursor[u];
            if (cu < adj[u].size()) {
                const auto& [to, l] = adj[u][cu++];
                st.push_back({to, l});
            } else {
                st.pop_back();
                if (!st.empty()) circuit.push_back(lu);
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        return circuit;
    };

    std::vector<Letter> exec;
    for (int c : order) {
        std::vector<Letter> path = exec_path(tree, base, entry[c]);
        exec.insert(exec.end(), path.begin(), path.end());
        std::vector<Letter> circuit = euler_from(entry[c]);
        exec.insert(exec.end(), circuit.begin(), circuit.end());
        // walk the connector back; its θ-contributions cancel exactly
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            exec.push_back({it->first, -it->second});
    }

    ProcessWord w = written(std::move(exec));
    ThetaExpansion check = expand_theta(m, w, base);
    if (!(check.expression == e) || check.final_config != base)
        throw DomainError("process reconstruction self-check failed");
    return w;
}

std::string emit_dot(const ExcitationModel& m, const Expression& e) {
    std::ostringstream out;
    out << "digraph statistics {\n";
    std::set<int> nodes;
    for (const auto& [k, c] : e.coeffs) {
        nodes.insert(k.second);
        nodes.insert(m.config_apply(k.second, k.first, +1));
    }
    if (!nodes.empty()) {
        BfsTree tree = bfs_tree(m, 0);
        for (int n : nodes) {
            ProcessWord w = written(exec_path(tree, 0, n));
            out << "  c" << n << " [label=\""
                << (w.letters.empty() ? "1" : process_text(m, w)) << "\"];\n";
        }
        for (const auto& [k, c] : e.coeffs) {
            int to = m.config_apply(k.second, k.first, +1);
            out << "  c" << k.second << " -> c" << to << " [label=\"" << c << "×"
                << m.op(k.first).label << "\", color=" << (c > 0 ? "red" : "blue")
                << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace exst
