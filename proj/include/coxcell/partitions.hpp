#ifndef COXCELL_PARTITIONS_HPP
#define COXCELL_PARTITIONS_HPP

#include "coxcell/complexes.hpp"

namespace coxcell {

// Permutations of {0..n-1} in one-line notation: p[i] = image of i. These are
// small and few, so everything here is plain containers and brute force.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}
inline Perm perm_mul(const Perm& a, const Perm& b) { // (a*b)(i) = a(b(i))
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[size_t(b[i])];
    return c;
}
inline Perm perm_inv(const Perm& a) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[size_t(a[i])] = int(i);
    return c;
}
inline std::vector<Perm> all_perms(int n) {
    Perm p = perm_identity(n);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// An ordered partition of {0..n-1}: disjoint nonempty blocks covering it.
struct OrderedPartition {
    std::vector<std::vector<int>> blocks; // each block sorted ascending

    int n() const {
        int t = 0;
        for (const auto& b : blocks) t += int(b.size());
        return t;
    }
    friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
    friend auto operator<=>(const OrderedPartition&, const OrderedPartition&) = default;
};

inline std::vector<OrderedPartition> all_ordered_partitions(int n) {
    // distribute 0..n-1 into ordered blocks, recursively
    std::vector<OrderedPartition> out;
    struct Rec {
        int n;
        std::vector<OrderedPartition>& out;
        void go(int i, OrderedPartition& cur) {
            if (i == n) {
                out.push_back(cur);
                return;
            }
            for (auto& b : cur.blocks) {
                b.push_back(i);
                go(i + 1, cur);
                b.pop_back();
            }
            cur.blocks.push_back({i});
            go(i + 1, cur);
            cur.blocks.pop_back();
        }
    } rec{n, out};
    OrderedPartition cur;
    rec.go(0, cur);
    for (auto& p : out)
        for (auto& b : p.blocks) std::sort(b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

// The block construction from the coset u W_X, where X is a set of adjacent
// transposition indices (0-based: s_i swaps i, i+1): cut {0..n-1} after every
// index not in X and push each range through u.
inline OrderedPartition partition_of_coset(const Perm& u, const std::vector<int>& X, int n) {
    std::vector<bool> in_x(size_t(n), false);
    for (int s : X) in_x[size_t(s)] = true;
    OrderedPartition p;
    std::vector<int> block;
    for (int i = 0; i < n; ++i) {
        block.push_back(u[size_t(i)]);
        if (i + 1 == n || !in_x[size_t(i)]) {
            std::sort(block.begin(), block.end());
            p.blocks.push_back(block);
            block.clear();
        }
    }
    return p;
}

inline bool is_refinement(const OrderedPartition& p, const OrderedPartition& q) {
    size_t i = 0;
    for (const auto& qb : q.blocks) {
        std::vector<int> merged;
        while (merged.size() < qb.size()) {
            if (i >= p.blocks.size()) return false;
            merged.insert(merged.end(), p.blocks[i].begin(), p.blocks[i].end());
            ++i;
        }
        std::sort(merged.begin(), merged.end());
        if (merged != qb) return false;
    }
    return i == p.blocks.size();
}

// All permutations fixing every block setwise.
inline std::vector<Perm> stabilizer(const OrderedPartition& p) {
    std::vector<Perm> out;
    for (const Perm& w : all_perms(p.n())) {
        bool ok = true;
        for (const auto& b : p.blocks) {
            for (int x : b)
                if (!std::binary_search(b.begin(), b.end(), w[size_t(x)])) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) out.push_back(w);
    }
    return out;
}

// Unordered equality of blocks.
inline bool blocks_equivalent(const OrderedPartition& p, const OrderedPartition& q) {
    auto a = p.blocks, b = q.blocks;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

struct DecoratedFace {
    OrderedPartition partition;
    Perm w;
};

// (P, w) ~ (Q, w'): equal blocks up to order, and the relative order of w and
// w' agrees on every block.
inline bool pair_equivalent(const DecoratedFace& a, const DecoratedFace& b) {
    if (!blocks_equivalent(a.partition, b.partition)) return false;
    for (const auto& blk : a.partition.blocks)
        for (size_t i = 0; i < blk.size(); ++i)
            for (size_t j = i + 1; j < blk.size(); ++j) {
                bool lhs = a.w[size_t(blk[i])] < a.w[size_t(blk[j])];
                bool rhs = b.w[size_t(blk[i])] < b.w[size_t(blk[j])];
                if (lhs != rhs) return false;
            }
    return true;
}

// Canonical class representative: blocks sorted by least element, and the
// permutation replaced by the within-block order pattern (each block mapped
// onto itself preserving the relative order of w).
inline DecoratedFace canonical_rep(const DecoratedFace& f) {
    DecoratedFace out;
    out.partition.blocks = f.partition.blocks;
    std::sort(out.partition.blocks.begin(), out.partition.blocks.end());
    out.w = perm_identity(f.partition.n());
    for (const auto& blk : out.partition.blocks) {
        // rank of w within the block decides which member each position gets
        std::vector<std::pair<int, int>> order; // (w-value, position)
        for (int x : blk) order.push_back({f.w[size_t(x)], x});
        std::sort(order.begin(), order.end());
        for (size_t r = 0; r < order.size(); ++r) out.w[size_t(order[r].second)] = blk[r];
    }
    return out;
}

} // namespace coxcell

#endif
