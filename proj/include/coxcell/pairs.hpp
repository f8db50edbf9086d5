#ifndef COXCELL_PAIRS_HPP
#define COXCELL_PAIRS_HPP

#include <omp.h>

#include "coxcell/roots.hpp"

namespace coxcell {

struct PairWitness {
    size_t w = std::numeric_limits<size_t>::max(); // ambient group element id
    int s = -1, t = -1; // generators with w(alpha_s), w(alpha_t) the pair

    bool found() const { return s >= 0; }
};

enum class PairLabelKind { Finite, Infinite, Unknown };

struct PairLabel {
    PairLabelKind kind = PairLabelKind::Unknown;
    int m = 0;             // valid when kind == Finite
    PairWitness witness;   // witness with finite label when kind == Finite
};

// For every group element w the tuple of root ids (w(alpha_s))_s, i.e. the
// image of the simple system. All pairwise witness questions reduce to scans
// of this table. Computing the rows is the data-parallel kernel; the fold
// into per-pair records is a cheap deterministic pass in element order.
template <class S>
class PairTable {
  public:
    static constexpr size_t npos = std::numeric_limits<size_t>::max();

    PairTable(const RootTable<S>& roots, const GroupTable<S>& group, bool parallel = true)
        : roots_(&roots), group_(&group) {
        size_t n = roots.geometry().rank();
        size_t nw = group.size();
        exhaustive_ = !group.truncated() && roots.complete();
        images_.assign(nw * n, npos);
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
            for (long long w = 0; w < (long long)nw; ++w) fill_row(size_t(w));
        } else {
            for (size_t w = 0; w < nw; ++w) fill_row(w);
        }
        size_t nr = roots.size();
        any_witness_.assign(nr * nr, PairWitness{});
        finite_label_.assign(nr * nr, 0);
        finite_witness_.assign(nr * nr, PairWitness{});
        for (size_t w = 0; w < nw; ++w)
            for (size_t s = 0; s < n; ++s) {
                size_t a = images_[w * n + s];
                if (a == npos) continue;
                for (size_t t = 0; t < n; ++t) {
                    if (s == t) continue;
                    size_t b = images_[w * n + t];
                    if (b == npos) continue;
                    size_t key = a * nr + b;
                    if (!any_witness_[key].found())
                        any_witness_[key] = PairWitness{w, int(s), int(t)};
                    int m = roots.geometry().graph.label(s, t);
                    if (m != kInfiniteLabel && finite_label_[key] == 0) {
                        finite_label_[key] = m;
                        finite_witness_[key] = PairWitness{w, int(s), int(t)};
                    }
                }
            }
    }

    bool exhaustive() const { return exhaustive_; }
    const RootTable<S>& roots() const { return *roots_; }
    const GroupTable<S>& group() const { return *group_; }

    // Image of the full simple system under element w, as root ids.
    std::vector<size_t> simple_system_image(size_t w) const {
        size_t n = roots_->geometry().rank();
        return {images_.begin() + w * n, images_.begin() + (w + 1) * n};
    }

    // Whether some w carries the pair of simple roots onto (a, b); this is the
    // pairwise almost-parabolic condition, with no finiteness requirement.
    PairWitness witness(size_t a, size_t b) const {
        if (a == b) {
            const auto& r = roots_->root(a);
            Element<S> w = Element<S>::from_word(roots_->geometry(), r.witness_word);
            size_t id = group_->find(w.matrix());
            return PairWitness{id, r.witness_gen, r.witness_gen};
        }
        return any_witness_[a * roots_->size() + b];
    }

    // The Coxeter label attached to a root pair: m(s,t) of any witness with a
    // finite label, infinity when provably none exists, Unknown under
    // truncation. Symmetric in its arguments.
    PairLabel label(size_t a, size_t b) const {
        PairLabel out;
        if (a == b) {
            out.kind = PairLabelKind::Finite;
            out.m = 1;
            out.witness = witness(a, a);
            return out;
        }
        if (roots_->negation(a) == b) {
            out.kind = PairLabelKind::Infinite; // dependent pair, no witness possible
            return out;
        }
        size_t key = a * roots_->size() + b;
        if (finite_label_[key] != 0) {
            out.kind = PairLabelKind::Finite;
            out.m = finite_label_[key];
            out.witness = finite_witness_[key];
            return out;
        }
        out.kind = exhaustive_ ? PairLabelKind::Infinite : PairLabelKind::Unknown;
        return out;
    }

    // Three-valued pairwise check: 1 = witnessed, 0 = provably none, -1 = unknown.
    int pair_witnessed(size_t a, size_t b) const {
        if (a == b || witness(a, b).found()) return 1;
        return exhaustive_ ? 0 : -1;
    }

  private:
    const RootTable<S>* roots_;
    const GroupTable<S>* group_;
    std::vector<size_t> images_;
    std::vector<PairWitness> any_witness_;
    std::vector<int> finite_label_;
    std::vector<PairWitness> finite_witness_;
    bool exhaustive_;

    void fill_row(size_t w) {
        size_t n = roots_->geometry().rank();
        const auto& word = group_->word(w);
        for (size_t s = 0; s < n; ++s) images_[w * n + s] = roots_->act_word(word, s);
    }
};

template <class S>
PairTable<S> make_pair_table_serial(const RootTable<S>& roots, const GroupTable<S>& group) {
    return PairTable<S>(roots, group, false);
}

// Roots traversed along the first half of the rank-2 cell perimeter:
// entry 1 is b, entry k applies k-1 alternating reflections (starting with
// r_b for even k, with r_g for odd k) to g resp. b.
template <class S>
std::vector<size_t> pair_root_sequence(const RootTable<S>& roots, size_t b, size_t g, int m) {
    std::vector<size_t> seq{b};
    for (int k = 2; k <= m; ++k) {
        size_t cur = (k % 2 == 0) ? g : b;
        size_t first = (k % 2 == 0) ? b : g;
        for (int i = 0; i < k - 1; ++i) {
            size_t mirror = (i % 2 == 0) ? first : (first == b ? g : b);
            Vec<S> v = roots.reflect_vector(mirror, roots.coeffs(cur));
            cur = roots.find(v);
            if (cur == RootTable<S>::npos)
                throw NoWitness("pair sequence leaves the truncated root table");
        }
        seq.push_back(cur);
    }
    return seq;
}

// The word of generators zeta_{b_m} ... zeta_{b_2} zeta_{b_1} as root ids in
// application order (last entry acts first when read as a product).
template <class S>
std::vector<size_t> pair_relation_word(const RootTable<S>& roots, size_t b, size_t g, int m) {
    std::vector<size_t> seq = pair_root_sequence(roots, b, g, m);
    return {seq.rbegin(), seq.rend()};
}

// Left prefix products of the reflections along the sequence:
// r_{b_1} r_{b_2} ... r_{b_{k-1}} must equal the alternating product of r_b
// and r_g of length k-1 that ends on the correct side. Raises if the library
// identity fails.
template <class S>
Element<S> prefix_product_check(const RootTable<S>& roots, size_t b, size_t g, int k, int m) {
    if (k < 2 || k > m) throw Error("prefix index out of range");
    const Geometry<S>& geo = roots.geometry();
    std::vector<size_t> seq = pair_root_sequence(roots, b, g, m);
    Mat<S> prod = Mat<S>::identity(geo.rank());
    for (int i = 0; i < k - 1; ++i) prod = prod * roots.reflection_matrix(seq[size_t(i)]);
    // Prod_L(x, y; k-1): alternating product of length k-1 starting with x.
    size_t x = (k % 2 == 0) ? b : g;
    size_t y = (x == b) ? g : b;
    Mat<S> expect = Mat<S>::identity(geo.rank());
    for (int i = 0; i < k - 1; ++i)
        expect = expect * roots.reflection_matrix(i % 2 == 0 ? x : y);
    if (!(prod == expect))
        throw InternalInvariantViolation("prefix product mismatch on a determined pair");
    return Element<S>::from_matrix(geo, prod);
}

} // namespace coxcell

#endif
