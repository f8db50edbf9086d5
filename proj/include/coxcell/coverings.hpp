#ifndef COXCELL_COVERINGS_HPP
#define COXCELL_COVERINGS_HPP

#include <omp.h>

#include "coxcell/complexes.hpp"

namespace coxcell {

struct IsoCertificate {
    bool pass = true;
    size_t checked = 0;
    std::vector<std::string> failures; // first few mismatches, for the report
};

namespace detail {

inline void iso_fail(IsoCertificate& cert, std::string msg) {
    cert.pass = false;
    if (cert.failures.size() < 16) cert.failures.push_back(std::move(msg));
}

template <class S>
std::string cell_name(const Session<S>& session, const CellComplex& cx, int dim,
                      const Cell& c) {
    std::string s = "dim" + std::to_string(dim) + "(ap";
    s += std::to_string(c.ap);
    s += ",z";
    s += std::to_string(c.z);
    s += ")";
    (void)session;
    (void)cx;
    return s;
}

} // namespace detail

// The cellular isomorphism between the two coverings: (X, z) on the Salvetti
// side maps to (z(X), z^-1) on the BEER side. Verifies bijectivity on every
// dimension, 1-cell endpoints, oriented 2-cell boundary words and the full
// face correspondence (u, Y) <-> (z u z^-1, z(Y)) with minimality preserved.
template <class S>
IsoCertificate verify_covering_isomorphism(const Session<S>& session, const CellComplex& ts,
                                           const CellComplex& tb, bool parallel = true) {
    IsoCertificate cert;
    if (ts.kind != ComplexKind::ThetaSigma || tb.kind != ComplexKind::ThetaBeer) {
        detail::iso_fail(cert, "expects the two covering complexes");
        return cert;
    }
    const GroupTable<S>& group = session.group();
    const RootTable<S>& roots = session.roots();

    // Per-deck-coordinate root action and inverses, computed once.
    std::vector<size_t> zinvs(group.size());
    std::vector<std::vector<size_t>> zperm(group.size());
    for (size_t z = 0; z < group.size(); ++z) {
        zinvs[z] = group.inv(z);
        zperm[z].resize(roots.size());
        for (size_t r = 0; r < roots.size(); ++r)
            zperm[z][r] = roots.act_word(group.word(z), r);
    }

    // g on labels: (X, z) -> (z(X), z^-1); rank-1 labels are root ids.
    auto map_onecell = [&](const Cell& c) -> CellRef {
        size_t zinv = zinvs[c.z];
        size_t rimg = zperm[c.z][c.ap];
        if (zinv == GroupTable<S>::npos || rimg == RootTable<S>::npos) return {};
        return tb.find_cell(1, rimg, zinv);
    };
    auto map_cell = [&](int dim, const Cell& c) -> CellRef {
        if (dim == 0) return tb.find_cell(0, 0, zinvs[c.z]);
        if (dim == 1) return map_onecell(c);
        size_t zinv = zinvs[c.z];
        std::vector<size_t> img;
        for (size_t r : session.ap_set(dim, c.ap).roots) {
            size_t ri = zperm[c.z][r];
            if (ri == RootTable<S>::npos) return {};
            img.push_back(ri);
        }
        std::sort(img.begin(), img.end());
        size_t ap = session.ap_index(img);
        if (ap == APEnumeration::npos || zinv == GroupTable<S>::npos) return {};
        return tb.find_cell(dim, ap, zinv);
    };

    // Bijectivity per dimension.
    for (size_t dim = 0; dim < ts.cells.size(); ++dim) {
        size_t nts = 0, ntb = 0;
        for (const Cell& c : ts.cells[dim]) nts += c.valid;
        if (dim < tb.cells.size())
            for (const Cell& c : tb.cells[dim]) ntb += c.valid;
        if (nts != ntb) {
            detail::iso_fail(cert, "cell counts differ in dimension " + std::to_string(dim));
            return cert;
        }
        std::vector<bool> hit(dim < tb.cells.size() ? tb.cells[dim].size() : 0, false);
        for (const Cell& c : ts.cells[dim]) {
            if (!c.valid) continue;
            CellRef ref = map_cell(int(dim), c);
            if (!ref.valid() || hit[ref.idx]) {
                detail::iso_fail(cert, "label map is not a bijection in dimension " +
                                           std::to_string(dim));
                return cert;
            }
            hit[ref.idx] = true;
        }
    }

    // Step 1: endpoints of 1-cells. The target must satisfy
    // z^-1 r_{z(beta)} = r_beta z^-1.
    std::vector<std::string> fails1(ts.cells.size() > 1 ? ts.cells[1].size() : 0);
    auto work1 = [&](size_t i) {
        const Cell& c = ts.cells[1][i];
        if (!c.valid) return;
        CellRef img = map_onecell(c);
        const Cell& ic = tb.cell(img);
        size_t zinv = group.inv(c.z);
        size_t src_img = tb.edge_source[img.idx];
        size_t tgt_img = tb.edge_target[img.idx];
        if (src_img != zinv) {
            fails1[i] = "source mismatch on a 1-cell";
            return;
        }
        // z^-1 r_{z(beta)} must equal r_beta z^-1
        size_t want = group.find(roots.reflection_matrix(c.ap) * group.matrix(zinv));
        if (want == GroupTable<S>::npos || tgt_img != want)
            fails1[i] = "target of image 1-cell is not r_beta z^-1";
        (void)ic;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < (long long)fails1.size(); ++i) work1(size_t(i));
    } else {
        for (size_t i = 0; i < fails1.size(); ++i) work1(i);
    }
    for (auto& f : fails1)
        if (!f.empty()) detail::iso_fail(cert, f);
    cert.checked += ts.cells.size() > 1 ? ts.cells[1].size() : 0;
    cert.checked += ts.cells[0].size();
    if (!cert.pass) return cert;

    // Step 2: oriented boundary words of 2-cells match letterwise once the
    // image traversal starts along z(first edge root).
    if (ts.cells.size() > 2) {
        std::vector<std::string> fails2(ts.cells[2].size());
        auto work2 = [&](size_t i) {
            const Cell& c = ts.cells[2][i];
            if (!c.valid) return;
            CellRef img = map_cell(2, c);
            const Cell& ic = tb.cell(img);
            // image of the Sigma-side word letter by letter
            std::vector<SignedLetter> mapped;
            for (const SignedLetter& l : c.word) {
                CellRef li = map_onecell(ts.cells[1][l.cell]);
                if (!li.valid()) {
                    fails2[i] = "boundary letter has no image";
                    return;
                }
                mapped.push_back({li.idx, l.forward});
            }
            // fresh traversal of the image cell starting along z(base[0])
            const APSet& x = session.ap_set(2, c.ap);
            size_t first_root = zperm[c.z][x.roots[0]];
            const CoxPolytope<S>& ipoly = session.polytope(2, ic.ap);
            size_t start_gen = ipoly.base()[0] == first_root ? 0 : 1;
            auto plan = detail::boundary_plan(session, tb.kind, ipoly, 2, ic.ap, start_gen);
            std::vector<SignedLetter> image_word;
            if (!detail::word_from_plan(session, tb, plan, ic.z, image_word)) {
                fails2[i] = "image boundary word unresolved";
                return;
            }
            if (!(mapped == image_word)) fails2[i] = "2-cell boundary words differ";
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 32)
            for (long long i = 0; i < (long long)fails2.size(); ++i) work2(size_t(i));
        } else {
            for (size_t i = 0; i < fails2.size(); ++i) work2(i);
        }
        for (auto& f : fails2)
            if (!f.empty()) detail::iso_fail(cert, f);
        cert.checked += ts.cells[2].size();
        if (!cert.pass) return cert;
    }

    // Step 3: faces (u, Y) of (X, z) correspond to (z u z^-1, z(Y)) on the
    // image, minimality preserved, with matching targets under g.
    for (size_t k = 2; k < ts.cells.size(); ++k) {
        std::vector<std::string> fails3(ts.cells[k].size());
        auto work3 = [&](size_t i) {
            const Cell& c = ts.cells[k][i];
            if (!c.valid) return;
            CellRef img = map_cell(int(k), c);
            const Cell& ic = tb.cell(img);
            const CoxPolytope<S>& poly = session.polytope(int(k), c.ap);
            const CoxPolytope<S>& ipoly = session.polytope(int(k), ic.ap);
            const auto& amb = session.ambient_ids(int(k), c.ap);
            const auto& iamb = session.ambient_ids(int(k), ic.ap);
            std::map<std::pair<uint32_t, size_t>, CellRef> irecs;
            for (const auto& r : ic.attach) irecs[{r.face_mask, r.face_u}] = r.target;
            size_t zinv = zinvs[c.z];
            for (const auto& rec : c.attach) {
                // u' = z u z^-1 inside the image subgroup
                size_t up_amb = group.mult(group.mult(c.z, amb.id[rec.face_u]), zinv);
                auto up_it = up_amb == GroupTable<S>::npos ? iamb.member_of.end()
                                                           : iamb.member_of.find(up_amb);
                size_t up_id =
                    up_it == iamb.member_of.end() ? GroupTable<S>::npos : up_it->second;
                std::vector<size_t> yimg;
                bool bad = false;
                for (size_t r : detail::subset_ids(poly, rec.face_mask)) {
                    size_t ri = zperm[c.z][r];
                    if (ri == RootTable<S>::npos) bad = true;
                    yimg.push_back(ri);
                }
                std::sort(yimg.begin(), yimg.end());
                uint32_t imask = bad ? uint32_t(-1) : detail::mask_in_base(ipoly, yimg);
                if (up_id == GroupTable<S>::npos || imask == uint32_t(-1)) {
                    fails3[i] = "face correspondence leaves the tables";
                    return;
                }
                if (!ipoly.is_min_rep(up_id, imask)) {
                    fails3[i] = "conjugated representative is not minimal";
                    return;
                }
                auto it = irecs.find({imask, up_id});
                if (it == irecs.end()) {
                    fails3[i] = "image face record missing";
                    return;
                }
                const Cell& tcell = ts.cell(rec.target);
                CellRef gtarget = map_cell(rec.target.dim, tcell);
                if (!gtarget.valid() || !(gtarget == it->second)) {
                    fails3[i] = "face targets differ under the isomorphism";
                    return;
                }
            }
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (long long i = 0; i < (long long)fails3.size(); ++i) work3(size_t(i));
        } else {
            for (size_t i = 0; i < fails3.size(); ++i) work3(i);
        }
        for (auto& f : fails3)
            if (!f.empty()) detail::iso_fail(cert, f);
        cert.checked += k == 2 ? 0 : ts.cells[k].size(); // 2-cells counted in step 2
        if (!cert.pass) return cert;
    }
    return cert;
}

template <class S>
IsoCertificate verify_covering_isomorphism_serial(const Session<S>& session,
                                                  const CellComplex& ts,
                                                  const CellComplex& tb) {
    return verify_covering_isomorphism(session, ts, tb, false);
}

struct QuotientCertificate {
    bool pass = true;
    std::string detail;
    std::vector<size_t> orbit_counts;
    std::vector<size_t> base_counts;
};

// The deck action (X, z) * z' = (X, z z') must be free on cells and its orbit
// counts per dimension must equal the base complex's cell counts.
template <class S>
QuotientCertificate deck_quotient_check(const Session<S>& session, const CellComplex& theta,
                                        const CellComplex& base) {
    QuotientCertificate cert;
    const GroupTable<S>& group = session.group();
    bool sides_match = (theta.kind == ComplexKind::ThetaSigma && base.kind == ComplexKind::Sigma) ||
                       (theta.kind == ComplexKind::ThetaBeer && base.kind == ComplexKind::Beer);
    if (!sides_match) {
        cert.pass = false;
        cert.detail = "covering and base complexes are of different sides";
        return cert;
    }
    cert.base_counts = base.f_vector();
    for (size_t dim = 0; dim < theta.cells.size(); ++dim) {
        std::vector<size_t> aps;
        for (const Cell& c : theta.cells[dim]) {
            if (!c.valid) continue;
            aps.push_back(c.ap);
            // freeness and closure of the right action
            for (size_t zp = 0; zp < group.size() && !theta.truncated; ++zp) {
                size_t zz = group.mult(c.z, zp);
                if (zz == GroupTable<S>::npos ||
                    !theta.find_cell(int(dim), c.ap, zz).valid()) {
                    cert.pass = false;
                    cert.detail = "deck action does not stay on cells";
                    return cert;
                }
                if (zp != 0 && zz == c.z) {
                    cert.pass = false;
                    cert.detail = "deck action has a fixed cell";
                    return cert;
                }
            }
        }
        std::sort(aps.begin(), aps.end());
        aps.erase(std::unique(aps.begin(), aps.end()), aps.end());
        cert.orbit_counts.push_back(aps.size());
    }
    while (!cert.orbit_counts.empty() && cert.orbit_counts.back() == 0)
        cert.orbit_counts.pop_back();
    if (!theta.truncated && cert.orbit_counts != cert.base_counts) {
        cert.pass = false;
        cert.detail = "orbit counts differ from the base f-vector";
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Fundamental group presentations
// ---------------------------------------------------------------------------

struct Presentation {
    std::vector<std::string> generators;
    // Words over signed 1-based generator indices: +g forward, -g inverse.
    std::vector<std::vector<long>> relations;
};

// Lexicographically least representative among all rotations of the word and
// of its inverse; relation sets are compared after this normalization.
inline std::vector<long> normalize_cyclic_word(const std::vector<long>& w) {
    if (w.empty()) return w;
    std::vector<long> best;
    auto consider = [&](std::vector<long> v) {
        for (size_t r = 0; r < v.size(); ++r) {
            std::rotate(v.begin(), v.begin() + 1, v.end());
            if (best.empty() || v < best) best = v;
        }
    };
    consider(w);
    std::vector<long> inv;
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(-*it);
    consider(inv);
    return best;
}

inline std::vector<long> free_cyclic_reduce(std::vector<long> w) {
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        std::vector<long> out;
        for (long x : w) {
            if (!out.empty() && out.back() == -x) {
                out.pop_back();
                changed = true;
            } else {
                out.push_back(x);
            }
        }
        while (out.size() >= 2 && out.front() == -out.back()) {
            out.erase(out.begin());
            out.pop_back();
            changed = true;
        }
        w = std::move(out);
    }
    return w;
}

template <class S>
std::string edge_label(const Session<S>& session, const CellComplex& cx, size_t e) {
    const Cell& c = cx.cells[1][e];
    std::string root = "b" + std::to_string(c.ap);
    if (cx.kind == ComplexKind::Sigma) return "d[" + root + "]";
    if (cx.kind == ComplexKind::Beer || cx.kind == ComplexKind::OmegaN) return "z[" + root + "]";
    std::string w = "e[" + root + ";w";
    w += std::to_string(c.z);
    w += "]";
    (void)session;
    return w;
}

// Presentation of the fundamental group read off the 2-skeleton: one
// generator per 1-cell outside a spanning tree, one relation per 2-cell.
// Base complexes have a single vertex and an empty tree; coverings get a
// breadth-first tree rooted at the identity vertex with edges scanned in
// (root id, deck length, deck word) order, which is their build order.
template <class S>
Presentation pi1_presentation(const Session<S>& session, const CellComplex& cx) {
    Presentation pres;
    size_t nedges = cx.cells.size() > 1 ? cx.cells[1].size() : 0;
    std::vector<bool> in_tree(nedges, false);
    if (cx.num_vertices > 1) {
        // incident edge lists in canonical order
        std::vector<std::vector<size_t>> incident(cx.num_vertices);
        for (size_t e = 0; e < nedges; ++e) {
            if (!cx.cells[1][e].valid) continue;
            incident[cx.edge_source[e]].push_back(e);
            incident[cx.edge_target[e]].push_back(e);
        }
        std::vector<bool> seen(cx.num_vertices, false);
        std::vector<size_t> queue{0};
        seen[0] = true;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            size_t v = queue[qi];
            for (size_t e : incident[v]) {
                size_t other = cx.edge_source[e] == v ? cx.edge_target[e] : cx.edge_source[e];
                if (seen[other]) continue;
                seen[other] = true;
                in_tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    std::vector<long> gen_of_edge(nedges, 0);
    for (size_t e = 0; e < nedges; ++e) {
        if (!cx.cells[1][e].valid || in_tree[e]) continue;
        gen_of_edge[e] = long(pres.generators.size()) + 1;
        pres.generators.push_back(edge_label(session, cx, e));
    }
    if (cx.cells.size() > 2)
        for (const Cell& c : cx.cells[2]) {
            if (!c.valid) continue;
            std::vector<long> word;
            for (const SignedLetter& l : c.word) {
                long g = gen_of_edge[l.cell];
                if (g == 0) continue; // tree edge
                word.push_back(l.forward ? g : -g);
            }
            pres.relations.push_back(free_cyclic_reduce(std::move(word)));
        }
    return pres;
}

} // namespace coxcell

#endif
