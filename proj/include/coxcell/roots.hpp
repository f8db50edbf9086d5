#ifndef COXCELL_ROOTS_HPP
#define COXCELL_ROOTS_HPP

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxcell/group.hpp"

namespace coxcell {

// The orbit of the simple roots under the generator reflections, enumerated
// breadth first with deterministic ids: simple roots first in generator
// order, then layer by layer with a lexicographic tie-break on coefficient
// vectors. Every root stores one (w, s) witness with root = w(alpha_s).
template <class S>
class RootTable {
  public:
    static constexpr size_t npos = std::numeric_limits<size_t>::max();

    struct Root {
        Vec<S> coeffs;
        bool positive;
        size_t layer;
        std::vector<int> witness_word; // w as a reduced word
        int witness_gen;               // s with w(alpha_s) = root
    };

    RootTable(const Geometry<S>& geo, std::optional<size_t> depth_bound = {}) : geo_(&geo) {
        if (!depth_bound && classify<S>(geo.graph).kind != TypeKind::Spherical)
            throw BoundRequired("infinite root system; pass a depth bound");
        size_t n = geo.rank();
        for (size_t s = 0; s < n; ++s) {
            Vec<S> c(n, S(0));
            c[s] = S(1);
            push_root(std::move(c), 0, {}, int(s));
        }
        size_t frontier_begin = 0, frontier_end = roots_.size(), depth = 0;
        complete_ = true;
        while (frontier_begin < frontier_end) {
            if (depth_bound && depth >= *depth_bound) {
                complete_ = false;
                break;
            }
            ++depth;
            // Collect the next layer, then order it canonically.
            std::vector<Root> layer;
            for (size_t r = frontier_begin; r < frontier_end; ++r)
                for (size_t g = 0; g < n; ++g) {
                    Vec<S> img = geo.gen[g].apply(roots_[r].coeffs);
                    if (index_.count(vec_key(img))) continue;
                    bool seen = false;
                    for (const auto& cand : layer)
                        if (vec_eq(cand.coeffs, img)) { seen = true; break; }
                    if (seen) continue;
                    Root nr;
                    nr.coeffs = std::move(img);
                    nr.layer = depth;
                    nr.witness_word.push_back(int(g));
                    nr.witness_word.insert(nr.witness_word.end(),
                                           roots_[r].witness_word.begin(),
                                           roots_[r].witness_word.end());
                    nr.witness_gen = roots_[r].witness_gen;
                    layer.push_back(std::move(nr));
                }
            std::sort(layer.begin(), layer.end(),
                      [](const Root& a, const Root& b) { return vec_lex_less(a.coeffs, b.coeffs); });
            for (auto& nr : layer)
                push_root(std::move(nr.coeffs), depth, std::move(nr.witness_word), nr.witness_gen);
            frontier_begin = frontier_end;
            frontier_end = roots_.size();
        }
        // Generator action as id permutations; entries outside a truncated
        // table stay npos.
        perms_.assign(n, std::vector<size_t>(roots_.size(), npos));
        for (size_t g = 0; g < n; ++g)
            for (size_t r = 0; r < roots_.size(); ++r)
                perms_[g][r] = find(geo.gen[g].apply(roots_[r].coeffs));
        negation_.assign(roots_.size(), npos);
        for (size_t r = 0; r < roots_.size(); ++r) negation_[r] = find(negate(roots_[r].coeffs));
    }

    const Geometry<S>& geometry() const { return *geo_; }
    size_t size() const { return roots_.size(); }
    bool complete() const { return complete_; }
    const Root& root(size_t id) const { return roots_[id]; }
    const Vec<S>& coeffs(size_t id) const { return roots_[id].coeffs; }
    bool positive(size_t id) const { return roots_[id].positive; }
    size_t negation(size_t id) const { return negation_[id]; }
    size_t simple_root(size_t s) const { return s; }

    size_t find(const Vec<S>& coeffs) const {
        auto it = index_.find(vec_key(coeffs));
        return it == index_.end() ? npos : it->second;
    }

    // Image of a root under one generator reflection.
    size_t reflect_by_generator(size_t g, size_t id) const {
        return id == npos ? npos : perms_[g][id];
    }

    // w(root) for w given as a word; falls back to coordinates when a
    // truncated walk steps outside the table.
    size_t act_word(const std::vector<int>& word, size_t id) const {
        size_t cur = id;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            cur = reflect_by_generator(size_t(*it), cur);
            if (cur == npos) break;
        }
        if (cur != npos) return cur;
        Vec<S> v = roots_[id].coeffs;
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = geo_->gen[size_t(*it)].apply(v);
        return find(v);
    }

    // r_root(v) = v - 2 <v, root> root.
    Vec<S> reflect_vector(size_t id, const Vec<S>& v) const {
        const Vec<S>& b = roots_[id].coeffs;
        S c = S(2) * geo_->pair(v, b);
        Vec<S> r = v;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
        return r;
    }

    Mat<S> reflection_matrix(size_t id) const { return geo_->reflection_matrix(roots_[id].coeffs); }

    // The reflection w s w^-1 from the recorded enumeration witness.
    Element<S> reflection_element(size_t id) const {
        const Root& r = roots_[id];
        std::vector<int> word = r.witness_word;
        word.push_back(r.witness_gen);
        word.insert(word.end(), r.witness_word.rbegin(), r.witness_word.rend());
        return Element<S>::from_word(*geo_, word);
    }

  private:
    const Geometry<S>* geo_;
    std::vector<Root> roots_;
    std::vector<std::vector<size_t>> perms_;
    std::vector<size_t> negation_;
    std::unordered_map<std::string, size_t> index_;
    bool complete_ = false;

    void push_root(Vec<S> coeffs, size_t layer, std::vector<int> wword, int wgen) {
        Root r;
        bool pos = coeffs_all_nonnegative(coeffs);
        bool neg = coeffs_all_nonpositive(coeffs);
        if (pos == neg)
            throw InternalInvariantViolation("root with mixed coefficient signs");
        r.positive = pos;
        r.layer = layer;
        r.witness_word = std::move(wword);
        r.witness_gen = wgen;
        r.coeffs = std::move(coeffs);
        index_.emplace(vec_key(r.coeffs), roots_.size());
        roots_.push_back(std::move(r));
    }
};

} // namespace coxcell

#endif
