#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace boolperc {

// Disjoint sets with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), count_(static_cast<std::int32_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::int32_t find(std::int32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void merge(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --count_;
    }

    bool connected(std::int32_t a, std::int32_t b) { return find(a) == find(b); }
    std::int32_t count() const { return count_; }

private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> size_;
    std::int32_t count_;
};

} // namespace boolperc
