#ifndef COXCELL_GROUP_HPP
#define COXCELL_GROUP_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxcell/element.hpp"

namespace coxcell {

// Breadth-first enumeration of the group generated by a list of involutions,
// with ShortLex words over the generator alphabet, the right Cayley steps and
// matrix lookup. For a reflection subgroup the word length is the induced
// length of its own Coxeter system.
template <class S>
class GroupTable {
  public:
    static constexpr size_t npos = std::numeric_limits<size_t>::max();

    struct Options {
        std::optional<size_t> max_length; // required when the group is infinite
        size_t size_cap = 4000000;
    };

    GroupTable(const Geometry<S>& geo, std::vector<Mat<S>> gens, Options opt = {})
        : geo_(&geo), gens_(std::move(gens)) {
        size_t ngen = gens_.size();
        mats_.push_back(Mat<S>::identity(geo.rank()));
        words_.push_back({});
        index_.emplace(mats_[0].key(), 0);
        size_t layer_begin = 0, layer_end = 1, length = 0;
        while (layer_begin < layer_end) {
            if (opt.max_length && length >= *opt.max_length) {
                truncated_ = true;
                break;
            }
            for (size_t e = layer_begin; e < layer_end; ++e)
                for (size_t g = 0; g < ngen; ++g) {
                    Mat<S> m = mats_[e] * gens_[g];
                    auto [it, fresh] = index_.emplace(m.key(), mats_.size());
                    if (fresh) {
                        if (mats_.size() >= opt.size_cap)
                            throw BoundRequired("group enumeration exceeded " +
                                                std::to_string(opt.size_cap) + " elements");
                        std::vector<int> w = words_[e];
                        w.push_back(int(g));
                        mats_.push_back(std::move(m));
                        words_.push_back(std::move(w));
                    }
                }
            layer_begin = layer_end;
            layer_end = mats_.size();
            ++length;
        }
        steps_.assign(size() * ngen, npos);
        for (size_t e = 0; e < size(); ++e)
            for (size_t g = 0; g < ngen; ++g) {
                auto it = index_.find((mats_[e] * gens_[g]).key());
                if (it != index_.end()) steps_[e * ngen + g] = it->second;
            }
    }

    size_t size() const { return mats_.size(); }
    size_t num_generators() const { return gens_.size(); }
    bool truncated() const { return truncated_; }
    const Geometry<S>& geometry() const { return *geo_; }

    const Mat<S>& matrix(size_t id) const { return mats_[id]; }
    const Mat<S>& generator_matrix(size_t g) const { return gens_[g]; }
    const std::vector<int>& word(size_t id) const { return words_[id]; }
    size_t length(size_t id) const { return words_[id].size(); }

    size_t find(const Mat<S>& m) const {
        auto it = index_.find(m.key());
        return it == index_.end() ? npos : it->second;
    }

    size_t step(size_t id, size_t g) const {
        return id == npos ? npos : steps_[id * gens_.size() + g];
    }

    // a * b. Walks b's reduced word through the Cayley steps; a truncated walk
    // that leaves the table falls back to the matrix product lookup.
    size_t mult(size_t a, size_t b) const {
        size_t cur = a;
        for (int g : words_[b]) {
            cur = step(cur, size_t(g));
            if (cur == npos) break;
        }
        if (cur != npos) return cur;
        return find(mats_[a] * mats_[b]);
    }

    size_t mult_matrix(size_t a, const Mat<S>& m) const { return find(mats_[a] * m); }

    // Reduced words of inverses never exceed the length bound, so this always
    // resolves in a consistent table.
    size_t inv(size_t a) const {
        size_t cur = 0;
        const auto& w = words_[a];
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            cur = step(cur, size_t(*it));
            if (cur == npos) return npos;
        }
        return cur;
    }

    bool right_ascent(size_t id, size_t g) const {
        size_t t = step(id, g);
        if (t == npos) return true; // leaving a truncated table means longer
        return length(t) > length(id);
    }

    Element<S> element(size_t id) const { return Element<S>::from_matrix(*geo_, mats_[id]); }

  private:
    const Geometry<S>* geo_;
    std::vector<Mat<S>> gens_;
    std::vector<Mat<S>> mats_;
    std::vector<std::vector<int>> words_;
    std::vector<size_t> steps_;
    std::unordered_map<std::string, size_t> index_;
    bool truncated_ = false;
};

// The full Coxeter group over its simple reflections. A length bound is
// mandatory unless the graph is spherical.
template <class S>
GroupTable<S> enumerate_group(const Geometry<S>& geo, std::optional<size_t> max_length = {}) {
    if (!max_length) {
        if (classify<S>(geo.graph).kind != TypeKind::Spherical)
            throw BoundRequired("infinite Coxeter group; pass a word-length bound");
    }
    typename GroupTable<S>::Options opt;
    opt.max_length = max_length;
    return GroupTable<S>(geo, geo.gen, opt);
}

} // namespace coxcell

#endif
