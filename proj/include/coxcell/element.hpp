#ifndef COXCELL_ELEMENT_HPP
#define COXCELL_ELEMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "coxcell/graph.hpp"
#include "coxcell/linalg.hpp"

namespace coxcell {

// Fixed geometric data of one Coxeter system: the form and the generator
// reflection matrices acting on V in the basis of simple roots.
template <class S>
struct Geometry {
    CoxeterGraph graph;
    Mat<S> form;
    std::vector<Mat<S>> gen;

    explicit Geometry(CoxeterGraph g) : graph(std::move(g)), form(gram_form<S>(graph)) {
        size_t n = graph.rank();
        for (size_t s = 0; s < n; ++s) {
            Mat<S> m = Mat<S>::identity(n);
            // s(alpha_t) = alpha_t - 2 <alpha_s, alpha_t> alpha_s
            for (size_t t = 0; t < n; ++t) m(s, t) -= S(2) * form(s, t);
            gen.push_back(std::move(m));
        }
    }

    size_t rank() const { return graph.rank(); }

    S pair(const Vec<S>& u, const Vec<S>& v) const {
        S acc(0);
        for (size_t i = 0; i < rank(); ++i) {
            if (u[i].is_zero()) continue;
            for (size_t j = 0; j < rank(); ++j)
                if (!v[j].is_zero()) acc += u[i] * form(i, j) * v[j];
        }
        return acc;
    }

    // Matrix of the reflection along a unit root given by its coordinates.
    Mat<S> reflection_matrix(const Vec<S>& root) const {
        size_t n = rank();
        Vec<S> broot = form.apply(root);
        Mat<S> m = Mat<S>::identity(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) -= S(2) * root[i] * broot[j];
        return m;
    }
};

template <class S>
bool coeffs_all_nonpositive(const Vec<S>& v) {
    for (const auto& x : v)
        if (x.sign() > 0) return false;
    return true;
}
template <class S>
bool coeffs_all_nonnegative(const Vec<S>& v) {
    for (const auto& x : v)
        if (x.sign() < 0) return false;
    return true;
}

// A Coxeter group element: action matrix plus its ShortLex reduced word.
// Equality is equality of matrices; words are derived data.
template <class S>
class Element {
  public:
    Element() = default;

    static Element identity(const Geometry<S>& geo) {
        Element e;
        e.mat_ = Mat<S>::identity(geo.rank());
        return e;
    }

    static Element generator(const Geometry<S>& geo, size_t s) {
        Element e;
        e.mat_ = geo.gen[s];
        e.word_ = {int(s)};
        return e;
    }

    // Canonicalizes an arbitrary product-of-generators matrix by greedy left
    // descent stripping; terminates because the length drops at each step.
    static Element from_matrix(const Geometry<S>& geo, Mat<S> m) {
        Element e;
        e.mat_ = m;
        Mat<S> inv = solve(m, Mat<S>::identity(geo.rank()));
        std::vector<int> word;
        while (!m.is_identity()) {
            size_t s = geo.rank();
            for (size_t c = 0; c < geo.rank(); ++c)
                if (coeffs_all_nonpositive(inv.column(c))) { s = c; break; }
            if (s == geo.rank())
                throw InternalInvariantViolation("non-identity matrix without left descent");
            word.push_back(int(s));
            m = geo.gen[s] * m;
            inv = inv * geo.gen[s];
        }
        e.word_ = std::move(word);
        return e;
    }

    static Element from_word(const Geometry<S>& geo, const std::vector<int>& word) {
        Mat<S> m = Mat<S>::identity(geo.rank());
        for (int s : word) m = m * geo.gen[size_t(s)];
        return from_matrix(geo, std::move(m));
    }

    const Mat<S>& matrix() const { return mat_; }
    const std::vector<int>& word() const { return word_; }
    size_t length() const { return word_.size(); }
    bool is_identity() const { return word_.empty(); }

    Vec<S> act(const Vec<S>& v) const { return mat_.apply(v); }

    // l(w s) > l(w) iff w(alpha_s) is a positive root.
    bool right_ascent(size_t s) const { return coeffs_all_nonnegative(mat_.column(s)); }

    friend bool operator==(const Element& a, const Element& b) { return a.mat_ == b.mat_; }
    std::string key() const { return mat_.key(); }

  private:
    Mat<S> mat_;
    std::vector<int> word_;
};

template <class S>
Element<S> multiply(const Geometry<S>& geo, const Element<S>& a, const Element<S>& b) {
    return Element<S>::from_matrix(geo, a.matrix() * b.matrix());
}

template <class S>
Element<S> inverse(const Geometry<S>& geo, const Element<S>& a) {
    std::vector<int> rev(a.word().rbegin(), a.word().rend());
    return Element<S>::from_word(geo, rev);
}

// The unique shortest element of w W_X, found by stripping right descents
// within X.
template <class S>
Element<S> min_coset_rep(const Geometry<S>& geo, Element<S> w, const std::vector<size_t>& X) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t s : X)
            if (!w.right_ascent(s)) {
                w = Element<S>::from_matrix(geo, w.matrix() * geo.gen[s]);
                changed = true;
            }
    }
    return w;
}

// The unique shortest element of W_Y w W_X, by alternating left and right
// descent stripping until a fixed point.
template <class S>
Element<S> min_double_coset_rep(const Geometry<S>& geo, Element<S> w,
                                const std::vector<size_t>& Y, const std::vector<size_t>& X) {
    bool changed = true;
    while (changed) {
        changed = false;
        w = min_coset_rep(geo, std::move(w), X);
        Element<S> winv = inverse(geo, w);
        for (size_t s : Y)
            if (!winv.right_ascent(s)) {
                w = Element<S>::from_matrix(geo, geo.gen[s] * w.matrix());
                changed = true;
                break;
            }
    }
    return w;
}

} // namespace coxcell

#endif
