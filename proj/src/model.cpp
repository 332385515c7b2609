#include "exst/model.hpp"

#include <algorithm>
#include <map>

namespace exst {

namespace {

std::vector<GroupElement> standard_basis(const FiniteAbelianGroup& g) {
    std::vector<GroupElement> basis;
    for (int k = 0; k < g.rank(); ++k) {
        GroupElement e = g.zero();
        e.residues[k] = 1;
        basis.push_back(std::move(e));
    }
    return basis;
}

std::vector<GroupElement> checked_generating_set(
    const FiniteAbelianGroup& g, const std::optional<std::vector<GroupElement>>& given) {
    std::vector<GroupElement> g0 = given ? *given : standard_basis(g);
    for (const auto& e : g0)
        if (!g.contains(e)) throw DomainError("generating set element outside G");
    if (closure(g, g0).elements.size() != g.order())
        throw DomainError("generating set does not generate G");
    return g0;
}

std::string simplex_label(const Simplex& s, int k, int gen_count) {
    std::string lbl = "U[";
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (i) lbl += ',';
        lbl += std::to_string(s.vertices[i]);
    }
    if (gen_count > 1) lbl += ';' + std::to_string(k);
    return lbl + "]";
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

void ExcitationModel::register_label(const std::string& name, int id) {
    label_index_.emplace(name, id);  // first registration wins
}

void ExcitationModel::finalize(const ResourceLimits& limits) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        Operator& op = ops_[i];
        op.id = static_cast<int>(i);
        if (op.support.empty()) throw DomainError("operator has empty support");
        std::sort(op.support.begin(), op.support.end());
        op.support.erase(std::unique(op.support.begin(), op.support.end()), op.support.end());
        if (op.support.front() < 0 || op.support.back() >= point_count_)
            throw DomainError("operator support point out of range");
        if (!ambient_.contains(op.boundary))
            throw DomainError("operator boundary outside ambient chain group");
    }

    std::vector<GroupElement> gens;
    for (const auto& op : ops_) gens.push_back(op.boundary);
    gens.insert(gens.end(), quotient_gens_.begin(), quotient_gens_.end());
    elements_ = closure(ambient_, gens, limits);

    CosetPartition part = coset_partition(ambient_, elements_, quotient_gens_);
    class_of_ = part.class_of;
    config_count_ = part.class_count;
    class_rep_.assign(config_count_, -1);
    for (int i = 0; i < elements_.size(); ++i)
        if (class_rep_[class_of_[i]] < 0) class_rep_[class_of_[i]] = i;

    v_sets_.assign(point_count_, {});
    for (const auto& op : ops_)
        for (int x : op.support) v_sets_[x].push_back(op.id);

    for (const auto& op : ops_) register_label(op.label, op.id);
}

int ExcitationModel::op_by_label(const std::string& name) const {
    auto it = label_index_.find(name);
    if (it == label_index_.end()) throw ParseError("unknown operator label '" + name + "'");
    return it->second;
}

int ExcitationModel::config_add(int cfg, const GroupElement& delta) const {
    const GroupElement& rep = config_rep(cfg);
    return class_of_[elements_.index_of(ambient_.add(rep, delta))];
}

int ExcitationModel::config_apply(int cfg, int op_id, int sign) const {
    const GroupElement& b = op(op_id).boundary;
    return config_add(cfg, sign >= 0 ? b : ambient_.neg(b));
}

ExcitationModel ExcitationModel::from_simplicial(
    const SimplicialComplex& c, int p, const FiniteAbelianGroup& g,
    const std::optional<std::vector<GroupElement>>& generating_set,
    const ResourceLimits& limits) {
    if (p < -1) throw DomainError("excitation dimension must be >= -1");
    std::vector<GroupElement> g0 = checked_generating_set(g, generating_set);
    int kcount = static_cast<int>(g0.size());

    ExcitationModel m;
    m.point_count_ = c.vertex_count();
    m.ambient_ = (p >= 0) ? chain_group(c, p, g) : g;

    const auto& movers = c.simplices(p + 1);  // vertices when p = -1
    for (std::size_t t = 0; t < movers.size(); ++t) {
        for (int k = 0; k < kcount; ++k) {
            Operator op;
            op.label = simplex_label(movers[t], k, kcount);
            op.boundary = (p >= 0) ? boundary_chain(c, movers[t], g0[k], g) : g0[k];
            op.support = movers[t].vertices;
            m.ops_.push_back(std::move(op));
        }
    }
    m.finalize(limits);

    // aliases: U<t+1> for single-generator groups, U<t+1><a+k> otherwise;
    // the bracket-free single-generator canonical form is also accepted
    for (std::size_t t = 0; t < movers.size(); ++t)
        for (int k = 0; k < kcount; ++k) {
            int id = static_cast<int>(t) * kcount + k;
            std::string alias = "U" + std::to_string(t + 1);
            if (kcount > 1) alias += static_cast<char>('a' + k);
            m.register_label(alias, id);
            if (kcount == 1) m.register_label(simplex_label(movers[t], 0, 2), id);
        }
    return m;
}

ExcitationModel ExcitationModel::from_explicit(const FiniteAbelianGroup& ambient,
                                               const std::vector<ExplicitOp>& ops,
                                               int point_count, const ResourceLimits& limits) {
    ExcitationModel m;
    m.ambient_ = ambient;
    m.point_count_ = point_count;
    for (const auto& e : ops) {
        Operator op;
        op.label = e.label;
        op.boundary = e.boundary;
        op.support = e.support;
        m.ops_.push_back(std::move(op));
    }
    m.finalize(limits);
    for (int i = 0; i < m.op_count(); ++i) m.register_label("U" + std::to_string(i + 1), i);
    return m;
}

ExcitationModel ExcitationModel::relative_model(
    const SimplicialComplex& c, const SimplicialComplex& c_sub, int p,
    const FiniteAbelianGroup& g, const std::optional<std::vector<GroupElement>>& generating_set,
    const ResourceLimits& limits) {
    if (p < 0) throw DomainError("relative_model needs p >= 0");
    for (int d = 0; d <= c_sub.max_dimension(); ++d)
        for (const auto& s : c_sub.simplices(d))
            if (c.index_of(s) < 0) throw DomainError("c_sub is not a subcomplex of c");

    std::vector<GroupElement> g0 = checked_generating_set(g, generating_set);
    int kcount = static_cast<int>(g0.size());

    ExcitationModel m;
    m.point_count_ = c.vertex_count();
    m.ambient_ = chain_group(c, p, g);

    std::vector<Simplex> kept;
    for (const auto& s : c.simplices(p + 1)) {
        if (c_sub.index_of(s) >= 0) {
            for (const auto& h : g0)
                m.quotient_gens_.push_back(boundary_chain(c, s, h, g));
        } else {
            kept.push_back(s);
        }
    }
    for (std::size_t t = 0; t < kept.size(); ++t)
        for (int k = 0; k < kcount; ++k) {
            Operator op;
            op.label = simplex_label(kept[t], k, kcount);
            op.boundary = boundary_chain(c, kept[t], g0[k], g);
            op.support = kept[t].vertices;
            m.ops_.push_back(std::move(op));
        }
    m.finalize(limits);
    for (std::size_t t = 0; t < kept.size(); ++t)
        for (int k = 0; k < kcount; ++k) {
            int id = static_cast<int>(t) * kcount + k;
            std::string alias = "U" + std::to_string(t + 1);
            if (kcount > 1) alias += static_cast<char>('a' + k);
            m.register_label(alias, id);
            if (kcount == 1) m.register_label(simplex_label(kept[t], 0, 2), id);
        }
    return m;
}

MappedModel quotient_model(const ExcitationModel& m, const std::vector<int>& keep_ops) {
    std::vector<bool> keep(m.op_count(), false);
    for (int id : keep_ops) keep.at(id) = true;

    ExcitationModel q;
    q.ambient_ = m.ambient();
    q.point_count_ = m.point_count();
    q.quotient_gens_ = m.quotient_generators();

    std::vector<int> op_map(m.op_count(), -1);
    for (int id = 0; id < m.op_count(); ++id) {
        if (keep[id]) {
            op_map[id] = static_cast<int>(q.ops_.size());
            q.ops_.push_back(m.op(id));
        } else {
            q.quotient_gens_.push_back(m.op(id).boundary);
        }
    }
    q.finalize(default_limits());

    std::vector<int> config_map(m.config_count());
    for (int cfg = 0; cfg < m.config_count(); ++cfg)
        config_map[cfg] = q.config_of_element(m.config_rep(cfg));

    return {std::move(q), std::move(op_map), std::move(config_map)};
}

ExcitationModel sub_model(const ExcitationModel& m, const std::vector<int>& keep_ops,
                          const ResourceLimits& limits) {
    ExcitationModel s;
    s.ambient_ = m.ambient();
    s.point_count_ = m.point_count();
    s.quotient_gens_ = m.quotient_generators();
    for (int id : keep_ops) s.ops_.push_back(m.op(id));
    std::sort(s.ops_.begin(), s.ops_.end(),
              [](const Operator& a, const Operator& b) { return a.id < b.id; });
    s.finalize(limits);
    return s;
}

std::vector<std::vector<int>> minimal_empty_sets(const ExcitationModel& m,
                                                 const ResourceLimits& limits) {
    // group operators by distinct support set
    std::map<std::vector<int>, std::vector<int>> by_support;
    for (const auto& op : m.operators()) by_support[op.support].push_back(op.id);
    std::vector<std::vector<int>> sup, carriers;
    for (auto& [s, ids] : by_support) {
        sup.push_back(s);
        carriers.push_back(ids);
    }
    int n = static_cast<int>(sup.size());

    // DFS over support indices in increasing order. Adding a support that
    // does not strictly shrink the running intersection can never lead to a
    // minimal set: if ∩P ⊆ sup[d] then ∩(D∖{d}) = ∩D for any superset D.
    std::vector<std::vector<int>> support_sets;
    std::vector<int> path;
    auto minimal = [&](const std::vector<int>& set) {
        for (std::size_t drop = 0; drop < set.size(); ++drop) {
            std::vector<int> inter;
            bool first = true;
            for (std::size_t i = 0; i < set.size(); ++i) {
                if (i == drop) continue;
                inter = first ? sup[set[i]] : sorted_intersection(inter, sup[set[i]]);
                first = false;
            }
            if (inter.empty()) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, const std::vector<int>& inter, int next) -> void {
        for (int j = next; j < n; ++j) {
            std::vector<int> ni = sorted_intersection(inter, sup[j]);
            if (ni.size() >= inter.size()) continue;  // no strict shrink
            path.push_back(j);
            if (ni.empty()) {
                if (path.size() >= 2 && minimal(path)) support_sets.push_back(path);
            } else {
                self(self, ni, j + 1);
            }
            path.pop_back();
        }
        if (support_sets.size() > limits.max_minimal_sets)
            throw ResourceError("minimal empty-set count exceeds configured cap");
    };
    for (int i = 0; i < n; ++i) {
        path.push_back(i);
        dfs(dfs, sup[i], i + 1);
        path.pop_back();
    }

    // expand each support-level set over the operators carrying each support
    std::vector<std::vector<int>> out;
    for (const auto& set : support_sets) {
        std::vector<std::size_t> choice(set.size(), 0);
        for (;;) {
            std::vector<int> ops;
            for (std::size_t i = 0; i < set.size(); ++i)
                ops.push_back(carriers[set[i]][choice[i]]);
            out.push_back(std::move(ops));
            if (out.size() > limits.max_minimal_sets)
                throw ResourceError("minimal empty-set count exceeds configured cap");
            std::size_t d = 0;
            while (d < set.size() && choice[d] + 1 == carriers[set[d]].size()) choice[d++] = 0;
            if (d == set.size()) break;
            ++choice[d];
        }
    }
    return out;
}

namespace {

// Crossing-curve models: operators are whole planar curves; each curve's support
// includes the crossing points it passes through, so curves that cross
// share support even though they share no endpoint.
ExcitationModel make_double_arc_chain(const FiniteAbelianGroup& g,
                                      const std::optional<std::vector<GroupElement>>& gen_set,
                                      const ResourceLimits& limits) {
    std::vector<GroupElement> g0 = checked_generating_set(g, gen_set);
    int kcount = static_cast<int>(g0.size());
    // charge endpoints 0..3; crossing points: 4 (both upper arcs), 5 (lower)
    FiniteAbelianGroup ambient = product_group({g, g, g, g});
    int r = g.rank();
    auto edge_boundary = [&](int u, int w, const GroupElement& h) {
        GroupElement b = ambient.zero();
        GroupElement nh = g.neg(h);
        for (int k = 0; k < r; ++k) {
            b.residues[u * r + k] = nh.residues[k];
            b.residues[w * r + k] = h.residues[k];
        }
        return b;
    };
    struct Arc {
        int u, w, cross;
        const char* tag;
    };
    const Arc arcs[] = {{0, 2, 4, "u"}, {0, 2, 5, "d"}, {1, 3, 4, "u"}, {1, 3, 5, "d"}};
    std::vector<ExcitationModel::ExplicitOp> ops;
    for (const auto& a : arcs)
        for (int k = 0; k < kcount; ++k) {
            ExcitationModel::ExplicitOp op;
            op.label = "U[" + std::to_string(a.u) + "," + std::to_string(a.w) +
                       (kcount > 1 ? ";" + std::to_string(k) : "") + "]" + a.tag;
            op.boundary = edge_boundary(a.u, a.w, g0[k]);
            op.support = {a.u, a.w, a.cross};
            ops.push_back(std::move(op));
        }
    return ExcitationModel::from_explicit(ambient, ops, 6, limits);
}

ExcitationModel make_double_y_graph(const FiniteAbelianGroup& g,
                                    const std::optional<std::vector<GroupElement>>& gen_set,
                                    const ResourceLimits& limits) {
    std::vector<GroupElement> g0 = checked_generating_set(g, gen_set);
    int kcount = static_cast<int>(g0.size());
    // vertices: A1=0 A2=1 B=2 C=3 D1=4 D2=5; crossings X1=6 (A1C x BD1),
    // X2=7 (A2C x BD2)
    FiniteAbelianGroup ambient = product_group({g, g, g, g, g, g});
    int r = g.rank();
    auto edge_boundary = [&](int u, int w, const GroupElement& h) {
        GroupElement b = ambient.zero();
        GroupElement nh = g.neg(h);
        for (int k = 0; k < r; ++k) {
            b.residues[u * r + k] = nh.residues[k];
            b.residues[w * r + k] = h.residues[k];
        }
        return b;
    };
    struct Edge {
        int u, w;
        std::vector<int> extra;
    };
    const std::vector<Edge> edges = {{0, 1, {}},  {0, 3, {6}}, {1, 3, {7}},
                                     {2, 4, {6}}, {2, 5, {7}}, {4, 5, {}}};
    std::vector<ExcitationModel::ExplicitOp> ops;
    for (const auto& e : edges)
        for (int k = 0; k < kcount; ++k) {
            ExcitationModel::ExplicitOp op;
            op.label = "U[" + std::to_string(e.u) + "," + std::to_string(e.w) +
                       (kcount > 1 ? ";" + std::to_string(k) : "") + "]";
            op.boundary = edge_boundary(e.u, e.w, g0[k]);
            op.support = {e.u, e.w};
            op.support.insert(op.support.end(), e.extra.begin(), e.extra.end());
            ops.push_back(std::move(op));
        }
    return ExcitationModel::from_explicit(ambient, ops, 8, limits);
}

}  // namespace

ExcitationModel builtin_model(const std::string& name, const FiniteAbelianGroup& g,
                              std::optional<int> p,
                              const std::optional<std::vector<GroupElement>>& generating_set,
                              const ResourceLimits& limits) {
    if (name == "double-arc-chain") return make_double_arc_chain(g, generating_set, limits);
    if (name == "double-y-graph") return make_double_y_graph(g, generating_set, limits);
    BuiltinComplex bc = builtin_complex(name);
    return ExcitationModel::from_simplicial(bc.complex, p.value_or(bc.canonical_p), g,
                                            generating_set, limits);
}

}  // namespace exst
