#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "exst/bigint.hpp"
#include "exst/errors.hpp"

namespace exst {

/// Sorted sparse vector of (index, value) with no stored zeros.
class SparseVec {
  public:
    using Entry = std::pair<int, BigInt>;

    SparseVec() = default;

    const std::vector<Entry>& entries() const { return ents_; }
    bool empty() const { return ents_.empty(); }
    std::size_t nnz() const { return ents_.size(); }
    void clear() { ents_.clear(); }

    const BigInt* get(int idx) const {
        auto it = std::lower_bound(ents_.begin(), ents_.end(), idx, cmp_);
        if (it != ents_.end() && it->first == idx) return &it->second;
        return nullptr;
    }

    void set(int idx, BigInt v) {
        auto it = std::lower_bound(ents_.begin(), ents_.end(), idx, cmp_);
        if (it != ents_.end() && it->first == idx) {
            if (v == 0)
                ents_.erase(it);
            else
                it->second = std::move(v);
        } else if (v != 0) {
            ents_.insert(it, {idx, std::move(v)});
        }
    }

    void add(int idx, const BigInt& v) {
        if (v == 0) return;
        auto it = std::lower_bound(ents_.begin(), ents_.end(), idx, cmp_);
        if (it != ents_.end() && it->first == idx) {
            it->second += v;
            if (it->second == 0) ents_.erase(it);
        } else {
            ents_.insert(it, {idx, v});
        }
    }

    /// this += c * other (merge of two sorted runs).
    void axpy(const BigInt& c, const SparseVec& other) {
        if (c == 0 || other.empty()) return;
        std::vector<Entry> out;
        out.reserve(ents_.size() + other.ents_.size());
        auto a = ents_.begin(), ae = ents_.end();
        auto b = other.ents_.begin(), be = other.ents_.end();
        BigInt tmp;
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                out.push_back(std::move(*a));
                ++a;
            } else if (a == ae || b->first < a->first) {
                tmp = c * b->second;
                out.emplace_back(b->first, std::move(tmp));
                ++b;
            } else {
                tmp = a->second + c * b->second;
                if (tmp != 0) out.emplace_back(a->first, std::move(tmp));
                ++a;
                ++b;
            }
        }
        ents_ = std::move(out);
    }

    void scale(const BigInt& c) {
        if (c == 1) return;
        if (c == 0) {
            ents_.clear();
            return;
        }
        for (auto& e : ents_) e.second *= c;
    }

    void negate() {
        for (auto& e : ents_) e.second = -e.second;
    }

    /// Dot product with another sparse vector.
    BigInt dot(const SparseVec& other) const {
        BigInt acc = 0;
        auto a = ents_.begin(), ae = ents_.end();
        auto b = other.ents_.begin(), be = other.ents_.end();
        while (a != ae && b != be) {
            if (a->first < b->first)
                ++a;
            else if (b->first < a->first)
                ++b;
            else {
                acc += a->second * b->second;
                ++a;
                ++b;
            }
        }
        return acc;
    }

    bool operator==(const SparseVec& other) const { return ents_ == other.ents_; }

  private:
    static bool cmp_(const Entry& e, int idx) { return e.first < idx; }
    std::vector<Entry> ents_;
};

/// Sparse integer matrix, row-major. Indices are checked on insertion;
/// zero values are never stored.
class SparseIntMatrix {
  public:
    SparseIntMatrix() : rows_(0), cols_(0) {}
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SparseVec& row(int i) const { return row_data_[i]; }
    SparseVec& row_mut(int i) { return row_data_[i]; }

    BigInt at(int i, int j) const {
        check(i, j);
        const BigInt* p = row_data_[i].get(j);
        return p ? *p : BigInt(0);
    }

    void set(int i, int j, BigInt v) {
        check(i, j);
        row_data_[i].set(j, std::move(v));
    }

    void add(int i, int j, const BigInt& v) {
        check(i, j);
        row_data_[i].add(j, v);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : row_data_) n += r.nnz();
        return n;
    }

    static SparseIntMatrix identity(int n) {
        SparseIntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    /// Column j as a sparse vector (O(rows) scan).
    SparseVec column(int j) const {
        SparseVec c;
        for (int i = 0; i < rows_; ++i) {
            const BigInt* p = row_data_[i].get(j);
            if (p) c.set(i, *p);
        }
        return c;
    }

    /// Matrix-vector product M*x, x given as sparse vector over columns.
    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (int i = 0; i < rows_; ++i) {
            BigInt v = row_data_[i].dot(x);
            if (v != 0) y.set(i, std::move(v));
        }
        return y;
    }

    bool operator==(const SparseIntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && row_data_ == other.row_data_;
    }

  private:
    void check(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw DomainError("matrix index out of bounds");
    }
    int rows_, cols_;
    std::vector<SparseVec> row_data_;
};

}  // namespace exst
