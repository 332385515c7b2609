#include "exst/abelian.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace exst {

FiniteAbelianGroup parse_group_literal(const std::string& text) {
    std::vector<int> orders;
    std::size_t i = 0;
    auto fail = [&] { throw ParseError("bad group literal: '" + text + "'"); };
    if (text.empty()) fail();
    while (i < text.size()) {
        if (std::tolower(static_cast<unsigned char>(text[i])) != 'z') fail();
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail();
        int n = 0;
        try {
            n = std::stoi(text.substr(start, i - start));
        } catch (const std::exception&) {
            fail();
        }
        if (n < 2) fail();
        orders.push_back(n);
        if (i < text.size()) {
            if (std::tolower(static_cast<unsigned char>(text[i])) != 'x') fail();
            ++i;
            if (i == text.size()) fail();
        }
    }
    return FiniteAbelianGroup(orders);
}

std::string group_literal(const FiniteAbelianGroup& g) {
    std::string s;
    for (int n : g.invariant_orders()) {
        if (!s.empty()) s += 'x';
        s += 'Z' + std::to_string(n);
    }
    return s.empty() ? "Z1" : s;
}

std::string element_text(const GroupElement& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.residues.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e.residues[i]);
    }
    return s + ")";
}

GroupElement parse_element_text(const FiniteAbelianGroup& g, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ParseError("bad group element: '" + text + "'");
    std::vector<int> raw;
    std::string body = t.substr(1, t.size() - 2);
    if (!body.empty()) {
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                raw.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw ParseError("bad group element: '" + text + "'");
            }
        }
        if (!body.empty() && body.back() == ',') throw ParseError("bad group element: '" + text + "'");
    }
    if (static_cast<int>(raw.size()) != g.rank())
        throw ParseError("group element rank mismatch: '" + text + "'");
    return g.reduce(raw);
}

FiniteAbelianGroup product_group(const std::vector<FiniteAbelianGroup>& factors) {
    std::vector<int> orders;
    for (const auto& f : factors)
        orders.insert(orders.end(), f.invariant_orders().begin(), f.invariant_orders().end());
    return FiniteAbelianGroup(orders);
}

IndexedElements closure(const FiniteAbelianGroup& ambient,
                        const std::vector<GroupElement>& generators,
                        const ResourceLimits& limits) {
    for (const auto& g : generators)
        if (!ambient.contains(g)) throw DomainError("closure generator outside ambient group");
    IndexedElements out;
    out.elements.push_back(ambient.zero());
    out.index.emplace(ambient.zero(), 0);
    for (std::size_t head = 0; head < out.elements.size(); ++head) {
        GroupElement cur = out.elements[head];  // copy: vector may reallocate
        for (const auto& g : generators) {
            GroupElement next = ambient.add(cur, g);
            if (out.index.emplace(next, static_cast<int>(out.elements.size())).second) {
                out.elements.push_back(std::move(next));
                if (out.elements.size() > limits.max_closure)
                    throw ResourceError("subgroup closure exceeds configured cap");
            }
        }
    }
    return out;
}

CosetPartition coset_partition(const FiniteAbelianGroup& ambient,
                               const IndexedElements& elements,
                               const std::vector<GroupElement>& subgroup_generators) {
    int n = elements.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (const auto& h : subgroup_generators) {
            GroupElement shifted = ambient.add(elements.elements[i], h);
            auto it = elements.index.find(shifted);
            if (it == elements.index.end())
                throw DomainError("element set is not closed under the subgroup");
            int a = find(i), b = find(it->second);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    CosetPartition part;
    part.class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (part.class_of[root] < 0) part.class_of[root] = part.class_count++;
        part.class_of[i] = part.class_of[root];
    }
    return part;
}

}  // namespace exst
