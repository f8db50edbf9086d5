#ifndef COXCELL_AP_HPP
#define COXCELL_AP_HPP

#include <map>

#include "coxcell/pairs.hpp"

namespace coxcell {

// A set of roots that is linearly independent and pairwise carried onto
// simple roots by group elements, together with the induced Coxeter matrix of
// its reflection subgroup and one witness per pair.
struct APSet {
    std::vector<size_t> roots; // sorted root ids
    std::vector<std::vector<int>> induced_matrix;
    TypeKind type = TypeKind::Other;
    std::vector<PairWitness> witnesses; // per unordered pair, (i<j) row-major

    size_t rank() const { return roots.size(); }
};

enum class APVerdict { Yes, No, Unknown };

struct APCheck {
    APVerdict verdict;
    std::string reason; // set when verdict != Yes
    APSet set;          // populated when verdict == Yes
};

namespace detail {

// Order of the product r_a r_b by iterating the matrix product; a cap keeps
// the loop total in truncated settings.
template <class S>
int product_order(const RootTable<S>& roots, size_t a, size_t b, int cap = 1000) {
    Mat<S> prod = roots.reflection_matrix(a) * roots.reflection_matrix(b);
    Mat<S> acc = prod;
    for (int k = 1; k <= cap; ++k) {
        if (acc.is_identity()) return k;
        acc = acc * prod;
    }
    return kInfiniteLabel;
}

} // namespace detail

template <class S>
APCheck is_ap(const PairTable<S>& pairs, std::vector<size_t> ids) {
    const RootTable<S>& roots = pairs.roots();
    std::sort(ids.begin(), ids.end());
    APCheck out;
    out.verdict = APVerdict::Yes;
    size_t k = ids.size();
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        out.verdict = APVerdict::No;
        out.reason = "AP1: repeated root";
        return out;
    }
    // AP1: linear independence of the coordinate vectors.
    size_t n = roots.geometry().rank();
    Mat<S> m(k, n);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = roots.coeffs(ids[i])[j];
    if (matrix_rank(m) != k) {
        out.verdict = APVerdict::No;
        out.reason = "AP1: roots are linearly dependent";
        return out;
    }
    // AP2: one witness per unordered pair.
    bool unknown = false;
    for (size_t i = 0; i < k && out.verdict == APVerdict::Yes; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            int ok = pairs.pair_witnessed(ids[i], ids[j]);
            if (ok == 0) {
                out.verdict = APVerdict::No;
                out.reason = "AP2: no simple-system witness for a pair";
                return out;
            }
            if (ok < 0) unknown = true;
        }
    if (unknown) {
        out.verdict = APVerdict::Unknown;
        out.reason = "AP2: witness search truncated";
        return out;
    }
    APSet set;
    set.roots = ids;
    set.induced_matrix.assign(k, std::vector<int>(k, 1));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            int ord = detail::product_order(roots, ids[i], ids[j]);
            set.induced_matrix[i][j] = set.induced_matrix[j][i] = ord;
            set.witnesses.push_back(pairs.witness(ids[i], ids[j]));
        }
    if (k == 0) {
        set.type = TypeKind::Spherical;
    } else {
        std::vector<std::string> names;
        for (size_t i = 0; i < k; ++i) names.push_back("r" + std::to_string(ids[i]));
        CoxeterGraph induced(names, set.induced_matrix);
        set.type = classify<S>(induced).kind;
    }
    out.set = std::move(set);
    return out;
}

struct APEnumeration {
    std::vector<std::vector<APSet>> by_rank; // by_rank[k], each level sorted by root ids
    bool truncated = false;                  // some candidate was undecidable

    size_t count(size_t k) const { return k < by_rank.size() ? by_rank[k].size() : 0; }

    // Index of a sorted root-id set, or npos.
    size_t find(const std::vector<size_t>& ids) const {
        if (ids.size() >= by_rank.size()) return npos;
        const auto& level = by_rank[ids.size()];
        auto it = std::lower_bound(level.begin(), level.end(), ids,
                                   [](const APSet& a, const std::vector<size_t>& b) {
                                       return a.roots < b;
                                   });
        if (it == level.end() || it->roots != ids) return npos;
        return size_t(it - level.begin());
    }

    static constexpr size_t npos = std::numeric_limits<size_t>::max();
};

// All spherical-type AP subsets, grown rank by rank: every subset of such a
// set is again one, so extending fully verified sets by one root finds
// everything. Verification per candidate runs in parallel; output order is
// canonical by sorted root ids.
template <class S>
APEnumeration enumerate_ap_spherical(const PairTable<S>& pairs,
                                     std::optional<size_t> max_rank = {},
                                     bool parallel = true) {
    const RootTable<S>& roots = pairs.roots();
    APEnumeration out;
    APSet empty;
    empty.type = TypeKind::Spherical;
    out.by_rank.push_back({empty});
    size_t ambient_rank = roots.geometry().rank();
    size_t cap = max_rank ? std::min(*max_rank, ambient_rank) : ambient_rank;
    bool any_unknown = false;
    while (out.by_rank.size() <= cap) {
        const auto& prev = out.by_rank.back();
        if (prev.empty()) break;
        std::vector<std::vector<size_t>> cands;
        for (const auto& set : prev) {
            size_t lo = set.roots.empty() ? 0 : set.roots.back() + 1;
            for (size_t r = lo; r < roots.size(); ++r) {
                std::vector<size_t> ids = set.roots;
                ids.push_back(r);
                cands.push_back(std::move(ids));
            }
        }
        std::vector<APCheck> checks(cands.size());
        auto work = [&](size_t i) { checks[i] = is_ap(pairs, cands[i]); };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (long long i = 0; i < (long long)cands.size(); ++i) work(size_t(i));
        } else {
            for (size_t i = 0; i < cands.size(); ++i) work(i);
        }
        std::vector<APSet> level;
        for (size_t i = 0; i < cands.size(); ++i) {
            if (checks[i].verdict == APVerdict::Unknown) any_unknown = true;
            if (checks[i].verdict == APVerdict::Yes && checks[i].set.type == TypeKind::Spherical)
                level.push_back(std::move(checks[i].set));
        }
        std::sort(level.begin(), level.end(),
                  [](const APSet& a, const APSet& b) { return a.roots < b.roots; });
        level.erase(std::unique(level.begin(), level.end(),
                                [](const APSet& a, const APSet& b) { return a.roots == b.roots; }),
                    level.end());
        out.by_rank.push_back(std::move(level));
    }
    out.truncated = any_unknown || !pairs.exhaustive();
    return out;
}

template <class S>
APEnumeration enumerate_ap_spherical_serial(const PairTable<S>& pairs,
                                            std::optional<size_t> max_rank = {}) {
    return enumerate_ap_spherical(pairs, max_rank, false);
}

} // namespace coxcell

#endif
