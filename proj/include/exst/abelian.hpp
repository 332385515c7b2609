#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "exst/errors.hpp"

namespace exst {

/// Element of a finite abelian group, in canonical form: residue i lies in
/// [0, N_i). Equality and hashing are component-wise.
struct GroupElement {
    std::vector<int> residues;

    bool operator==(const GroupElement&) const = default;
    bool is_zero() const {
        for (int r : residues)
            if (r) return false;
        return true;
    }
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& e) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (int r : e.residues) h = (h ^ static_cast<std::size_t>(r)) * 0x100000001b3ull;
        return h;
    }
};

/// G = ⊕_i Z_{N_i}, each N_i >= 2. The trivial group has rank 0.
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<int> invariant_orders)
        : orders_(std::move(invariant_orders)) {
        for (int n : orders_)
            if (n < 2) throw DomainError("group invariant orders must be >= 2");
    }

    const std::vector<int>& invariant_orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }

    std::uint64_t order() const {
        std::uint64_t n = 1;
        for (int k : orders_) n *= static_cast<std::uint64_t>(k);
        return n;
    }

    GroupElement zero() const { return {std::vector<int>(orders_.size(), 0)}; }

    bool contains(const GroupElement& e) const {
        if (e.residues.size() != orders_.size()) return false;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            if (e.residues[i] < 0 || e.residues[i] >= orders_[i]) return false;
        return true;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        GroupElement r = a;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            r.residues[i] = (r.residues[i] + b.residues[i]) % orders_[i];
        return r;
    }

    GroupElement neg(const GroupElement& a) const {
        GroupElement r = a;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            r.residues[i] = (orders_[i] - r.residues[i]) % orders_[i];
        return r;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const {
        return add(a, neg(b));
    }

    GroupElement scale(int k, const GroupElement& a) const {
        GroupElement r = a;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            int m = orders_[i];
            r.residues[i] = static_cast<int>(((static_cast<long long>(k) * r.residues[i]) % m + m) % m);
        }
        return r;
    }

    /// Canonicalize arbitrary integer residues into this group.
    GroupElement reduce(const std::vector<int>& raw) const {
        if (raw.size() != orders_.size()) throw DomainError("element rank mismatch");
        GroupElement r;
        r.residues.resize(raw.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            int m = orders_[i];
            r.residues[i] = (raw[i] % m + m) % m;
        }
        return r;
    }

    bool operator==(const FiniteAbelianGroup&) const = default;

  private:
    std::vector<int> orders_;
};

/// "Z2", "Z2xZ2", "Z4xZ3" — case-insensitive, 'x' separator.
FiniteAbelianGroup parse_group_literal(const std::string& text);
std::string group_literal(const FiniteAbelianGroup& g);

/// "(r1,r2,...)"; rank-0 elements print as "()".
std::string element_text(const GroupElement& e);
GroupElement parse_element_text(const FiniteAbelianGroup& g, const std::string& text);

FiniteAbelianGroup product_group(const std::vector<FiniteAbelianGroup>& factors);

/// Elements of a subgroup in a fixed enumeration order, with O(1) lookup.
struct IndexedElements {
    std::vector<GroupElement> elements;
    std::unordered_map<GroupElement, int, GroupElementHash> index;

    int size() const { return static_cast<int>(elements.size()); }

    int index_of(const GroupElement& e) const {
        auto it = index.find(e);
        if (it == index.end()) throw DomainError("element not in the enumerated set");
        return it->second;
    }

    bool contains(const GroupElement& e) const { return index.count(e) != 0; }
};

/// Breadth-first closure of {0} under addition of the generators; element 0
/// always sits at index 0 and discovery order is stable.
IndexedElements closure(const FiniteAbelianGroup& ambient,
                        const std::vector<GroupElement>& generators,
                        const ResourceLimits& limits = default_limits());

/// Partition of an enumerated set into cosets of the subgroup spanned by the
/// given generators. class_of maps element index to a dense class index;
/// classes are numbered by first occurrence.
struct CosetPartition {
    std::vector<int> class_of;
    int class_count = 0;
};

CosetPartition coset_partition(const FiniteAbelianGroup& ambient,
                               const IndexedElements& elements,
                               const std::vector<GroupElement>& subgroup_generators);

}  // namespace exst
