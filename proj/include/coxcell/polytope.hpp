#ifndef COXCELL_POLYTOPE_HPP
#define COXCELL_POLYTOPE_HPP

#include "coxcell/ap.hpp"
#include "coxcell/group.hpp"

namespace coxcell {

// The convex cell attached to a spherical AP root set X: the orbit of the
// dual-basis sum under the reflection subgroup generated by X, together with
// its coset face poset. Vertices are indexed by subgroup element ids; a face
// is a pair (u, Y) with Y a subset mask of X and u the shortest coset
// representative. Edges carry the orientation u -> u r_beta.
template <class S>
class CoxPolytope {
  public:
    struct Face {
        uint32_t mask; // subset Y of the base (bit i <-> base[i])
        size_t u;      // subgroup element id, (empty, R_Y)-minimal
        int dim;       // popcount(mask)
    };

    CoxPolytope(const RootTable<S>& roots, const APSet& set)
        : roots_(&roots),
          base_(set.roots),
          subgroup_(make_subgroup(roots, set)) {
        if (set.type != TypeKind::Spherical)
            throw NotSpherical("polytopes exist only for spherical AP sets");
        size_t k = base_.size();
        size_t n = roots.geometry().rank();
        base_point_.assign(n, S(0));
        if (k > 0) {
            // Dual basis: solve the Gram system on the span of the base.
            Mat<S> gram(k, k);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j)
                    gram(i, j) = roots.geometry().pair(roots.coeffs(base_[i]),
                                                       roots.coeffs(base_[j]));
            Mat<S> duals = solve(gram, Mat<S>::identity(k));
            dual_coords_ = duals;
            for (size_t i = 0; i < k; ++i) {
                Vec<S> d = dual_in_ambient(i);
                for (size_t t = 0; t < k; ++t) {
                    S expect = (t == i) ? S(1) : S(0);
                    if (!(roots.geometry().pair(d, roots.coeffs(base_[t])) == expect))
                        throw InternalInvariantViolation("dual basis pairing is not Kronecker");
                }
                for (size_t c = 0; c < n; ++c) base_point_[c] += d[c];
            }
        }
        for (size_t z = 0; z < subgroup_.size(); ++z)
            vertices_.push_back(subgroup_.matrix(z).apply(base_point_));
        // Proper faces (u, Y), Y strictly below the full mask.
        uint32_t full = k == 0 ? 0 : ((1u << k) - 1);
        submembers_.assign(full + 1, {});
        for (uint32_t mask = 0; mask <= full; ++mask) submembers_[mask] = span_members(mask);
        for (uint32_t mask = 0; mask < full || (full == 0 && mask == 0); ++mask) {
            for (size_t u = 0; u < subgroup_.size(); ++u)
                if (is_min_rep(u, mask)) faces_.push_back({mask, u, popcount(mask)});
            if (full == 0) break;
        }
        std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
            if (a.dim != b.dim) return a.dim < b.dim;
            if (a.mask != b.mask) return a.mask < b.mask;
            return a.u < b.u;
        });
    }

    const std::vector<size_t>& base() const { return base_; }
    size_t rank() const { return base_.size(); }
    const GroupTable<S>& subgroup() const { return subgroup_; }
    const Vec<S>& base_point() const { return base_point_; }
    const Vec<S>& vertex(size_t z) const { return vertices_[z]; }
    size_t num_vertices() const { return vertices_.size(); }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<size_t>& members(uint32_t mask) const { return submembers_[mask]; }

    Vec<S> dual_in_ambient(size_t i) const {
        size_t n = roots_->geometry().rank();
        Vec<S> d(n, S(0));
        for (size_t j = 0; j < base_.size(); ++j) {
            const S& c = dual_coords_(j, i);
            if (c.is_zero()) continue;
            const Vec<S>& bj = roots_->coeffs(base_[j]);
            for (size_t t = 0; t < n; ++t) d[t] += c * bj[t];
        }
        return d;
    }

    // u is the shortest representative of u W_Y, i.e. every Y-generator is a
    // right ascent.
    bool is_min_rep(size_t u, uint32_t mask) const {
        for (size_t g = 0; g < base_.size(); ++g)
            if ((mask >> g) & 1u)
                if (!subgroup_.right_ascent(u, g)) return false;
        return true;
    }

    size_t min_rep_of(size_t u, uint32_t mask) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t g = 0; g < base_.size(); ++g)
                if ((mask >> g) & 1u && !subgroup_.right_ascent(u, g)) {
                    u = subgroup_.step(u, g);
                    changed = true;
                }
        }
        return u;
    }

    bool member_of(size_t u, uint32_t mask) const {
        const auto& mem = submembers_[mask];
        return std::binary_search(mem.begin(), mem.end(), u);
    }

    // Edge (u, g): oriented from u(o) to u r_g(o).
    struct Edge {
        size_t u;
        size_t g;
        size_t source, target; // vertex ids
    };
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const Face& f : faces_)
            if (f.dim == 1) {
                size_t g = size_t(lowest_bit(f.mask));
                out.push_back({f.u, g, f.u, subgroup_.step(f.u, g)});
            }
        return out;
    }

    // Ambient root moved by the subgroup element u.
    size_t act_on_root(size_t u, size_t root_id) const {
        Vec<S> v = subgroup_.matrix(u).apply(roots_->coeffs(root_id));
        return roots_->find(v);
    }

    // The set image u(Y) as sorted ambient root ids; npos entries when the
    // root table is truncated.
    std::vector<size_t> act_on_subset(size_t u, uint32_t mask) const {
        std::vector<size_t> out;
        for (size_t g = 0; g < base_.size(); ++g)
            if ((mask >> g) & 1u) out.push_back(act_on_root(u, base_[g]));
        std::sort(out.begin(), out.end());
        return out;
    }

    // Longest element of the subgroup spanned by mask; unique for spherical
    // subgroups.
    size_t longest_member(uint32_t mask) const {
        const auto& mem = submembers_[mask];
        size_t best = 0, best_len = 0, ties = 1;
        for (size_t m : mem) {
            size_t l = subgroup_.length(m);
            if (l > best_len) {
                best = m;
                best_len = l;
                ties = 1;
            } else if (l == best_len && m != best) {
                ++ties;
            }
        }
        if (ties != 1 && best_len > 0)
            throw InternalInvariantViolation("longest element is not unique");
        return best;
    }

  private:
    const RootTable<S>* roots_;
    std::vector<size_t> base_;
    GroupTable<S> subgroup_;
    Mat<S> dual_coords_; // column i = dual vector of base_[i] in base coords
    Vec<S> base_point_;
    std::vector<Vec<S>> vertices_;
    std::vector<Face> faces_;
    std::vector<std::vector<size_t>> submembers_;

    static GroupTable<S> make_subgroup(const RootTable<S>& roots, const APSet& set) {
        std::vector<Mat<S>> gens;
        for (size_t r : set.roots) gens.push_back(roots.reflection_matrix(r));
        return GroupTable<S>(roots.geometry(), std::move(gens));
    }

    static int popcount(uint32_t m) { return __builtin_popcount(m); }
    static int lowest_bit(uint32_t m) { return __builtin_ctz(m); }

    std::vector<size_t> span_members(uint32_t mask) const {
        std::vector<size_t> mem{0};
        std::vector<size_t> stack{0};
        std::vector<bool> seen(subgroup_.size(), false);
        seen[0] = true;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (size_t g = 0; g < base_.size(); ++g)
                if ((mask >> g) & 1u) {
                    size_t w = subgroup_.step(v, g);
                    if (!seen[w]) {
                        seen[w] = true;
                        mem.push_back(w);
                        stack.push_back(w);
                    }
                }
        }
        std::sort(mem.begin(), mem.end());
        return mem;
    }
};

struct ReversedEdgeReport {
    std::vector<int> u_word; // induced word of the edge coset rep in W_X
    size_t root;             // ambient root id labelling the edge
};

struct SignFlipCertificate {
    bool pass = false;
    std::string detail;
    std::vector<size_t> flipped;  // T: roots of X whose sign differs in X'
    std::vector<size_t> common;   // V: shared roots
    std::vector<ReversedEdgeReport> reversed_edges;
    size_t kept_edges = 0;
};

// Checks that two AP spherical sets with the same reflections span the same
// polytope: equal vertex sets, orthogonality of flipped against kept roots,
// the product decomposition, and the edge orientation report (edges along
// flipped roots reverse, edges along kept roots do not).
template <class S>
SignFlipCertificate sign_flip_polytope_check(const PairTable<S>& pairs, const APSet& x,
                                             const APSet& xp) {
    const RootTable<S>& roots = pairs.roots();
    auto fail = [](std::string why) {
        SignFlipCertificate c;
        c.detail = std::move(why);
        return c;
    };
    if (x.roots == xp.roots) {
        SignFlipCertificate c;
        c.pass = true;
        c.detail = "identical sets; nothing to flip";
        c.common = x.roots;
        return c;
    }
    auto refl_set = [&](const APSet& s) {
        std::vector<size_t> r;
        for (size_t id : s.roots) r.push_back(std::min(id, roots.negation(id)));
        std::sort(r.begin(), r.end());
        return r;
    };
    if (refl_set(x) != refl_set(xp))
        throw PremiseViolated("the two sets generate different reflection sets");
    if (x.type != TypeKind::Spherical || xp.type != TypeKind::Spherical)
        throw NotSpherical("sign-flip comparison needs spherical sets");

    SignFlipCertificate cert;
    for (size_t id : x.roots) {
        if (std::binary_search(xp.roots.begin(), xp.roots.end(), id))
            cert.common.push_back(id);
        else
            cert.flipped.push_back(id);
    }
    for (size_t id : cert.flipped)
        if (!std::binary_search(xp.roots.begin(), xp.roots.end(), roots.negation(id)))
            return fail("flipped root whose negation is missing from the second set");
    // Orthogonality of flipped against common roots.
    for (size_t t : cert.flipped)
        for (size_t v : cert.common)
            if (!pairs.roots().geometry().pair(roots.coeffs(t), roots.coeffs(v)).is_zero())
                return fail("flipped and kept roots are not orthogonal");

    CoxPolytope<S> cx(roots, x);
    CoxPolytope<S> cxp(roots, xp);
    auto vertex_keys = [](const CoxPolytope<S>& p) {
        std::vector<std::string> keys;
        for (size_t i = 0; i < p.num_vertices(); ++i) keys.push_back(vec_key(p.vertex(i)));
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    if (vertex_keys(cx) != vertex_keys(cxp)) return fail("vertex sets differ");

    // w_T, the longest element on the flipped part, carries o_X to o_X'.
    uint32_t tmask = 0;
    for (size_t g = 0; g < x.roots.size(); ++g)
        if (!std::binary_search(cert.common.begin(), cert.common.end(), x.roots[g]))
            tmask |= (1u << g);
    size_t wt = cx.longest_member(tmask);
    if (!vec_eq(cx.subgroup().matrix(wt).apply(cx.base_point()), cxp.base_point()))
        return fail("longest flip element does not carry the base point across");

    // Product decomposition: every vertex splits as t(o_T) + v(o_V).
    {
        APCheck tset = is_ap(pairs, cert.flipped);
        APCheck vset = is_ap(pairs, cert.common);
        if (tset.verdict != APVerdict::Yes || vset.verdict != APVerdict::Yes)
            return fail("flip or kept part is not AP on its own");
        CoxPolytope<S> ct(roots, tset.set);
        CoxPolytope<S> cv(roots, vset.set);
        std::vector<std::string> prod;
        for (size_t i = 0; i < ct.num_vertices(); ++i)
            for (size_t j = 0; j < cv.num_vertices(); ++j)
                prod.push_back(vec_key(ct.vertex(i) + cv.vertex(j)));
        std::sort(prod.begin(), prod.end());
        if (prod != vertex_keys(cx)) return fail("polytope is not the expected product");
    }

    // Edge orientation transfer: flipped-root edges reverse, kept-root edges
    // keep their orientation.
    const Mat<S>& wtm = cx.subgroup().matrix(wt);
    for (const auto& e : cx.edges()) {
        size_t root = x.roots[e.g];
        bool in_t = (tmask >> e.g) & 1u;
        Vec<S> src = cx.vertex(e.source);
        Vec<S> tgt = cx.vertex(e.target);
        // Locate the same geometric segment among the edges of C[X'].
        bool matched = false;
        for (const auto& ep : cxp.edges()) {
            Vec<S> srcp = cxp.vertex(ep.source);
            Vec<S> tgtp = cxp.vertex(ep.target);
            bool same = vec_eq(src, srcp) && vec_eq(tgt, tgtp);
            bool swapped = vec_eq(src, tgtp) && vec_eq(tgt, srcp);
            if (!same && !swapped) continue;
            matched = true;
            if (in_t != swapped) return fail("edge orientation does not match the flip rule");
            if (in_t) {
                // The partner coset rep is u w_T r_beta.
                size_t expect = cxp.subgroup().find(
                    cx.subgroup().matrix(e.u) * wtm * roots.reflection_matrix(root));
                size_t got = ep.u;
                size_t partner_root = xp.roots[ep.g];
                if (partner_root != roots.negation(root) || expect != got)
                    return fail("flipped edge does not map to (u w_T r, -beta)");
                ReversedEdgeReport rep;
                rep.root = root;
                rep.u_word.assign(cx.subgroup().word(e.u).begin(), cx.subgroup().word(e.u).end());
                cert.reversed_edges.push_back(std::move(rep));
            } else {
                size_t expect = cxp.subgroup().find(cx.subgroup().matrix(e.u) * wtm);
                if (xp.roots[ep.g] != root || expect != ep.u)
                    return fail("kept edge does not map to (u w_T, beta)");
                ++cert.kept_edges;
            }
            break;
        }
        if (!matched) return fail("edge of C[X] missing from C[X']");
    }
    cert.pass = true;
    cert.detail = "vertex sets equal; orthogonal decomposition and orientations verified";
    return cert;
}

struct TransportCertificate {
    bool pass = false;
    std::string detail;
    size_t vertices = 0;
    size_t compared_pairs = 0;
};

// Builds the polytope of the abstract Coxeter system carried by the induced
// matrix alone and checks that mapping abstract simple roots onto the actual
// roots matches vertices bijectively and preserves all pairwise inner
// products.
template <class S>
TransportCertificate abstract_polytope_transport_check(const RootTable<S>& roots,
                                                       const APSet& set) {
    TransportCertificate cert;
    if (set.type != TypeKind::Spherical)
        throw NotSpherical("transport check needs a spherical set");
    size_t k = set.rank();
    std::vector<std::string> names;
    for (size_t i = 0; i < k; ++i) names.push_back("q" + std::to_string(i));
    CoxeterGraph abstract_graph(names, set.induced_matrix);
    Geometry<S> abstract_geo(abstract_graph);
    GroupTable<S> abstract_group = enumerate_group<S>(abstract_geo);

    CoxPolytope<S> embedded(roots, set);
    if (abstract_group.size() != embedded.num_vertices()) {
        cert.detail = "vertex counts differ";
        return cert;
    }
    // Abstract side: o = sum of duals for the abstract simple basis.
    Mat<S> gram = gram_form<S>(abstract_graph);
    Mat<S> duals = solve(gram, Mat<S>::identity(k));
    Vec<S> o(k, S(0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) o[j] += duals(j, i);
    std::vector<Vec<S>> abstract_vertices;
    for (size_t z = 0; z < abstract_group.size(); ++z)
        abstract_vertices.push_back(abstract_group.matrix(z).apply(o));

    // The bijection pairs the abstract element with the embedded element that
    // has the same word over matched generators.
    const Geometry<S>& geo = roots.geometry();
    std::vector<size_t> match(abstract_group.size());
    std::vector<bool> hit(abstract_group.size(), false);
    for (size_t z = 0; z < abstract_group.size(); ++z) {
        Mat<S> m = Mat<S>::identity(geo.rank());
        for (int g : abstract_group.word(z)) m = m * roots.reflection_matrix(set.roots[size_t(g)]);
        size_t id = embedded.subgroup().find(m);
        if (id == GroupTable<S>::npos || hit[id]) {
            cert.detail = "vertex correspondence is not a bijection";
            return cert;
        }
        hit[id] = true;
        match[z] = id;
    }
    // Inner products on both sides, all pairs.
    auto abs_pair = [&](const Vec<S>& a, const Vec<S>& b) {
        S acc(0);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (!a[i].is_zero() && !b[j].is_zero()) acc += a[i] * gram(i, j) * b[j];
        return acc;
    };
    for (size_t z1 = 0; z1 < abstract_group.size(); ++z1)
        for (size_t z2 = z1; z2 < abstract_group.size(); ++z2) {
            S lhs = abs_pair(abstract_vertices[z1], abstract_vertices[z2]);
            S rhs = geo.pair(embedded.vertex(match[z1]), embedded.vertex(match[z2]));
            if (!(lhs == rhs)) {
                cert.detail = "inner products disagree";
                return cert;
            }
            ++cert.compared_pairs;
        }
    cert.vertices = embedded.num_vertices();
    cert.pass = true;
    cert.detail = "isometric vertex bijection verified";
    return cert;
}

} // namespace coxcell

#endif
