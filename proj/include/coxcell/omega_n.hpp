#ifndef COXCELL_OMEGA_N_HPP
#define COXCELL_OMEGA_N_HPP

#include "coxcell/coverings.hpp"
#include "coxcell/partitions.hpp"

namespace coxcell {

// The quotient of (permutohedron x symmetric group) by the block-order and
// relative-order identification, carried purely combinatorially: one cell per
// equivalence class of decorated faces.
struct OmegaN {
    int n = 0;
    CellComplex cx; // kind OmegaN; attach records unused, words on 2-cells
    std::vector<std::vector<DecoratedFace>> reps; // canonical class reps per dim
    std::vector<std::pair<int, int>> edge_names;  // dim-1 class names (i, j)
    // distinct (dim-1)-faces of every cell of dim >= 3, for structure matching
    std::vector<std::vector<std::vector<CellRef>>> facets_by_dim;
};

namespace detail {

inline std::string face_key(const DecoratedFace& f) {
    std::string k;
    for (const auto& b : f.partition.blocks) {
        for (int x : b) k += std::to_string(x) + ",";
        k += "|";
    }
    k += ";";
    for (int x : f.w) k += std::to_string(x) + ",";
    return k;
}

// Reconstruct the canonical coset (u, X) of a decorated face: u lists the
// blocks in order, X holds the in-block adjacent positions.
inline std::pair<Perm, std::vector<int>> coset_of(const DecoratedFace& f) {
    Perm u;
    std::vector<int> X;
    int pos = 0;
    for (const auto& b : f.partition.blocks) {
        for (size_t i = 0; i < b.size(); ++i) {
            if (i + 1 < b.size()) X.push_back(pos + int(i));
            u.push_back(b[i]);
        }
        pos += int(b.size());
    }
    return {u, X};
}

// Edge class name: the members of the pair block ordered by the permutation.
inline std::pair<int, int> edge_name(const DecoratedFace& f) {
    for (const auto& b : f.partition.blocks)
        if (b.size() == 2) {
            int x = b[0], y = b[1];
            if (f.w[size_t(x)] < f.w[size_t(y)]) return {x, y};
            return {y, x};
        }
    throw Error("not an edge class");
}

} // namespace detail

inline OmegaN build_omega_n(int n) {
    if (n < 2) throw Error("ordered-partition model needs n >= 2");
    OmegaN om;
    om.n = n;
    om.cx.kind = ComplexKind::OmegaN;
    om.cx.num_vertices = 1;
    om.cx.cells.resize(size_t(n));
    om.reps.resize(size_t(n));
    om.facets_by_dim.resize(size_t(n));

    std::map<std::string, CellRef> classes;
    auto class_of = [&](const DecoratedFace& f) {
        DecoratedFace rep = canonical_rep(f);
        auto it = classes.find(detail::face_key(rep));
        if (it == classes.end()) return CellRef{};
        return it->second;
    };

    // Enumerate classes dimension by dimension, in canonical representative
    // order.
    auto parts = all_ordered_partitions(n);
    auto perms = all_perms(n);
    for (int dim = 0; dim < n; ++dim) {
        std::vector<DecoratedFace> level;
        std::map<std::string, size_t> seen;
        for (const auto& p : parts) {
            if (int(p.blocks.size()) != n - dim) continue;
            for (const auto& w : perms) {
                DecoratedFace rep = canonical_rep({p, w});
                std::string key = detail::face_key(rep);
                if (seen.emplace(key, 0).second) level.push_back(rep);
            }
        }
        std::sort(level.begin(), level.end(), [](const DecoratedFace& a, const DecoratedFace& b) {
            if (a.partition != b.partition) return a.partition < b.partition;
            return a.w < b.w;
        });
        for (size_t i = 0; i < level.size(); ++i) {
            classes[detail::face_key(level[i])] = CellRef{dim, i};
            Cell c;
            c.ap = i;
            om.cx.cells[size_t(dim)].push_back(std::move(c));
        }
        om.reps[size_t(dim)] = std::move(level);
    }
    om.edge_names.reserve(om.reps[1].size());
    for (const auto& rep : om.reps[1]) om.edge_names.push_back(detail::edge_name(rep));
    for (size_t e = 0; e < om.reps[1].size(); ++e) {
        om.cx.edge_source.push_back(0);
        om.cx.edge_target.push_back(0);
    }

    // Boundary words of the 2-cells by walking the polygon perimeter in the
    // permutohedron model.
    for (size_t i = 0; i < om.reps[2].size(); ++i) {
        const DecoratedFace& rep = om.reps[2][i];
        auto [u, X] = detail::coset_of(rep);
        if (X.size() != 2) throw InternalInvariantViolation("2-face with wrong cut count");
        int a = std::min(X[0], X[1]), b = std::max(X[0], X[1]);
        int m = (b - a == 1) ? 3 : 2;
        Cell& cell = om.cx.cells[2][i];
        cell.polygon_m = m;
        Perm cur = u;
        for (int step = 0; step < 2 * m; ++step) {
            int g = (step % 2 == 0) ? a : b;
            int x = cur[size_t(g)], y = cur[size_t(g + 1)];
            // the edge class of the pair block {x, y} under the class pattern
            OrderedPartition pe;
            pe.blocks.push_back({std::min(x, y), std::max(x, y)});
            for (int v = 0; v < n; ++v)
                if (v != x && v != y) pe.blocks.push_back({v});
            CellRef eref = class_of({pe, rep.w});
            if (!eref.valid()) throw InternalInvariantViolation("edge class not found");
            bool forward = rep.w[size_t(x)] < rep.w[size_t(y)];
            cell.word.push_back({eref.idx, forward});
            std::swap(cur[size_t(g)], cur[size_t(g + 1)]);
        }
    }

    // Distinct facet classes of higher cells.
    for (int dim = 3; dim < n; ++dim) {
        om.facets_by_dim[size_t(dim)].resize(om.reps[size_t(dim)].size());
        for (size_t i = 0; i < om.reps[size_t(dim)].size(); ++i) {
            const DecoratedFace& rep = om.reps[size_t(dim)][i];
            auto [u, X] = detail::coset_of(rep);
            std::vector<Perm> members = detail::subgroup_of(X, n);
            std::vector<CellRef> facets;
            for (const auto& g : members) {
                Perm ug = perm_mul(u, g);
                // all facet cosets: drop one cut index from X
                for (size_t drop = 0; drop < X.size(); ++drop) {
                    std::vector<int> Y;
                    for (size_t t = 0; t < X.size(); ++t)
                        if (t != drop) Y.push_back(X[t]);
                    OrderedPartition pf = partition_of_coset(ug, Y, n);
                    CellRef ref = class_of({pf, rep.w});
                    if (!ref.valid())
                        throw InternalInvariantViolation("facet class not found");
                    if (std::find(facets.begin(), facets.end(), ref) == facets.end())
                        facets.push_back(ref);
                }
            }
            std::sort(facets.begin(), facets.end());
            om.facets_by_dim[size_t(dim)][i] = std::move(facets);
        }
    }
    return om;
}

struct CrossCheckCertificate {
    bool pass = true;
    std::string detail;
    size_t matched = 0;
};

// Dimension-preserving, boundary-word-preserving bijection between the
// ordered-partition model and the general builder on the matching graph. The
// rank-1 dictionary sends the root in direction e_i - e_j to the edge (i, j);
// rank 2 matches oriented boundary words; higher ranks match facet sets.
template <class S>
CrossCheckCertificate crosscheck_with_general(const Session<S>& session,
                                              const CellComplex& beer, const OmegaN& om) {
    CrossCheckCertificate cert;
    auto fail = [&](std::string why) {
        cert.pass = false;
        cert.detail = std::move(why);
        return cert;
    };
    int n = om.n;
    if (int(session.geometry().rank()) != n - 1) return fail("rank does not match n - 1");
    auto fv1 = beer.f_vector(), fv2 = om.cx.f_vector();
    if (fv1 != fv2) return fail("f-vectors differ");

    // Dictionary: root id -> (i, j).
    const RootTable<S>& roots = session.roots();
    std::vector<size_t> root_to_edge(roots.size(), size_t(-1));
    for (size_t r = 0; r < roots.size(); ++r) {
        const Vec<S>& c = roots.coeffs(r);
        std::vector<long> e(size_t(n), 0);
        for (int k = 0; k < n - 1; ++k) {
            if (!c[size_t(k)].is_rational())
                return fail("root coefficients are not integers");
            long lam = long(c[size_t(k)].rational_part().template convert_to<long long>());
            e[size_t(k)] += lam;
            e[size_t(k) + 1] -= lam;
        }
        int i = -1, j = -1;
        for (int k = 0; k < n; ++k) {
            if (e[size_t(k)] == 1) i = k;
            if (e[size_t(k)] == -1) j = k;
        }
        if (i < 0 || j < 0) return fail("root is not of the form e_i - e_j");
        auto it = std::find(om.edge_names.begin(), om.edge_names.end(), std::make_pair(i, j));
        if (it == om.edge_names.end()) return fail("edge name missing in the partition model");
        root_to_edge[r] = size_t(it - om.edge_names.begin());
    }
    {
        std::vector<size_t> sorted = root_to_edge;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.size() != roots.size()) return fail("edge dictionary is not injective");
    }
    cert.matched = 1 + roots.size();

    // Rank 2: match by normalized boundary words.
    std::vector<size_t> cell2_map(beer.cells.size() > 2 ? beer.cells[2].size() : 0, size_t(-1));
    if (beer.cells.size() > 2) {
        auto norm = [](const std::vector<SignedLetter>& w) {
            std::vector<long> v;
            for (const auto& l : w) v.push_back(l.forward ? long(l.cell) + 1 : -long(l.cell) - 1);
            return normalize_cyclic_word(v);
        };
        std::map<std::vector<long>, size_t> om_words;
        for (size_t i = 0; i < om.cx.cells[2].size(); ++i) {
            auto key = norm(om.cx.cells[2][i].word);
            if (!om_words.emplace(key, i).second)
                return fail("duplicate 2-cell boundary word in the partition model");
        }
        for (size_t i = 0; i < beer.cells[2].size(); ++i) {
            std::vector<SignedLetter> translated;
            for (const auto& l : beer.cells[2][i].word)
                translated.push_back({root_to_edge[l.cell], l.forward});
            auto it = om_words.find(norm(translated));
            if (it == om_words.end()) return fail("2-cell boundary word has no partner");
            cell2_map[i] = it->second;
            ++cert.matched;
        }
        std::vector<size_t> sorted = cell2_map;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return fail("2-cell matching is not injective");
    }

    // Higher ranks: match by the set of facet partners, dimension by
    // dimension.
    std::vector<size_t> prev_map = cell2_map;
    for (int dim = 3; dim < int(beer.cells.size()); ++dim) {
        if (size_t(dim) >= om.cx.cells.size() ||
            beer.cells[size_t(dim)].size() != om.cx.cells[size_t(dim)].size())
            return fail("cell counts differ in dimension " + std::to_string(dim));
        std::map<std::vector<CellRef>, size_t> om_fps;
        for (size_t i = 0; i < om.facets_by_dim[size_t(dim)].size(); ++i) {
            if (!om_fps.emplace(om.facets_by_dim[size_t(dim)][i], i).second)
                return fail("facet fingerprints not unique in the partition model");
        }
        std::vector<size_t> this_map(beer.cells[size_t(dim)].size(), size_t(-1));
        for (size_t i = 0; i < beer.cells[size_t(dim)].size(); ++i) {
            std::vector<CellRef> fp;
            for (const auto& rec : beer.cells[size_t(dim)][i].attach) {
                if (rec.target.dim != dim - 1) continue;
                CellRef mapped{dim - 1, prev_map[rec.target.idx]};
                if (std::find(fp.begin(), fp.end(), mapped) == fp.end()) fp.push_back(mapped);
            }
            std::sort(fp.begin(), fp.end());
            auto it = om_fps.find(fp);
            if (it == om_fps.end()) return fail("facet fingerprint has no partner");
            this_map[i] = it->second;
            ++cert.matched;
        }
        std::vector<size_t> sorted = this_map;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return fail("matching is not injective in dimension " + std::to_string(dim));
        prev_map = this_map;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Brute-force checks of the coset model on the permutohedron.
// ---------------------------------------------------------------------------

struct PartitionLemmaReport {
    bool pass = true;
    std::string detail;
    size_t checked = 0;
};

namespace detail {

inline std::vector<Perm> subgroup_of(const std::vector<int>& X, int n) {
    std::vector<Perm> members{perm_identity(n)};
    size_t done = 0;
    while (done < members.size()) {
        Perm g = members[done++];
        for (int s : X) {
            Perm h = g;
            std::swap(h[size_t(s)], h[size_t(s + 1)]);
            if (std::find(members.begin(), members.end(), h) == members.end())
                members.push_back(h);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline std::vector<Perm> coset(const Perm& u, const std::vector<Perm>& wx) {
    std::vector<Perm> out;
    for (const auto& g : wx) out.push_back(perm_mul(u, g));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<int>> all_subsets(int k) {
    std::vector<std::vector<int>> out;
    for (uint32_t m = 0; m < (1u << k); ++m) {
        std::vector<int> s;
        for (int i = 0; i < k; ++i)
            if ((m >> i) & 1u) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

} // namespace detail

// Stab(P(u,X)) = u W_X u^-1; P(u,X) = P(v,Y) iff the cosets agree; refinement
// order iff coset containment.
inline PartitionLemmaReport check_stabilizers_and_cosets(int n) {
    PartitionLemmaReport rep;
    auto perms = all_perms(n);
    auto subsets = detail::all_subsets(n - 1);
    std::vector<std::vector<Perm>> wx;
    for (const auto& X : subsets) wx.push_back(detail::subgroup_of(X, n));
    for (const auto& u : perms)
        for (size_t xi = 0; xi < subsets.size(); ++xi) {
            OrderedPartition p = partition_of_coset(u, subsets[xi], n);
            std::vector<Perm> conj;
            Perm uinv = perm_inv(u);
            for (const auto& g : wx[xi]) conj.push_back(perm_mul(perm_mul(u, g), uinv));
            std::sort(conj.begin(), conj.end());
            if (stabilizer(p) != conj) {
                rep.pass = false;
                rep.detail = "stabilizer is not the conjugated parabolic";
                return rep;
            }
            ++rep.checked;
            for (const auto& v : perms)
                for (size_t yi = 0; yi < subsets.size(); ++yi) {
                    OrderedPartition q = partition_of_coset(v, subsets[yi], n);
                    auto cu = detail::coset(u, wx[xi]);
                    auto cv = detail::coset(v, wx[yi]);
                    bool eq_part = (p == q);
                    bool eq_coset = (cu == cv);
                    if (eq_part != eq_coset) {
                        rep.pass = false;
                        rep.detail = "partition equality disagrees with coset equality";
                        return rep;
                    }
                    bool refines = is_refinement(p, q);
                    bool contained = std::includes(cv.begin(), cv.end(), cu.begin(), cu.end());
                    if (refines != contained) {
                        rep.pass = false;
                        rep.detail = "refinement disagrees with coset containment";
                        return rep;
                    }
                    ++rep.checked;
                }
        }
    return rep;
}

// Equivalence of decorated faces is preserved by matching refinements.
inline PartitionLemmaReport check_refinement_compatibility(int n) {
    PartitionLemmaReport rep;
    auto parts = all_ordered_partitions(n);
    auto perms = all_perms(n);
    for (const auto& p : parts)
        for (const auto& q : parts) {
            if (!blocks_equivalent(p, q)) continue;
            // refinement pairs (P', Q') with matching blocks, fixed per (P, Q)
            std::vector<std::pair<const OrderedPartition*, const OrderedPartition*>> ref_pairs;
            for (const auto& pr : parts) {
                if (!is_refinement(pr, p)) continue;
                for (const auto& qr : parts)
                    if (blocks_equivalent(pr, qr) && is_refinement(qr, q))
                        ref_pairs.push_back({&pr, &qr});
            }
            for (const auto& w : perms)
                for (const auto& wp : perms) {
                    if (!pair_equivalent({p, w}, {q, wp})) continue;
                    for (const auto& [pr, qr] : ref_pairs) {
                        if (!pair_equivalent({*pr, w}, {*qr, wp})) {
                            rep.pass = false;
                            rep.detail = "refined pairs are not equivalent";
                            return rep;
                        }
                        ++rep.checked;
                    }
                }
        }
    return rep;
}

namespace detail {

// Scaled permutohedron base point: coordinates (n-1, n-3, ..., 1-n).
inline std::vector<long> omega_base_point(int n) {
    std::vector<long> o(size_t(n));
    for (int j = 0; j < n; ++j) o[size_t(j)] = n - 1 - 2 * j;
    return o;
}

inline std::vector<long> apply_perm(const Perm& w, const std::vector<long>& x) {
    std::vector<long> y(x.size());
    for (size_t j = 0; j < x.size(); ++j) y[size_t(w[j])] = x[j];
    return y;
}

inline bool minimal_rep(const Perm& u, const std::vector<int>& X) {
    for (int s : X)
        if (u[size_t(s)] > u[size_t(s + 1)]) return false;
    return true;
}

} // namespace detail

namespace detail {

struct MinimalFace {
    Perm u;
    std::vector<int> X;
    std::vector<Perm> wx;   // W_X members
    std::vector<Perm> stab; // u W_X u^-1, sorted
};

inline std::vector<MinimalFace> minimal_faces(int n) {
    std::vector<MinimalFace> out;
    auto perms = all_perms(n);
    for (const auto& X : all_subsets(n - 1)) {
        auto wx = subgroup_of(X, n);
        for (const auto& u : perms) {
            if (!minimal_rep(u, X)) continue;
            MinimalFace f;
            f.u = u;
            f.X = X;
            f.wx = wx;
            Perm ui = perm_inv(u);
            for (const auto& g : wx) f.stab.push_back(perm_mul(perm_mul(u, g), ui));
            std::sort(f.stab.begin(), f.stab.end());
            out.push_back(std::move(f));
        }
    }
    return out;
}

} // namespace detail

// For equivalent faces, the translation by v(o) - u(o) carries the vertex set
// of F(u, X, S) onto that of F(v, Y, S); exact integer coordinates.
inline PartitionLemmaReport check_translation_transport(int n) {
    PartitionLemmaReport rep;
    auto faces = detail::minimal_faces(n);
    auto o = detail::omega_base_point(n);
    for (const auto& fu : faces)
        for (const auto& fv : faces) {
            if (fu.stab != fv.stab) continue; // not equivalent faces
            auto uo = detail::apply_perm(fu.u, o);
            auto vo = detail::apply_perm(fv.u, o);
            std::vector<std::vector<long>> lhs, rhs;
            for (const auto& g : fu.wx) {
                auto x = detail::apply_perm(perm_mul(fu.u, g), o);
                for (size_t j = 0; j < x.size(); ++j) x[j] += vo[j] - uo[j];
                lhs.push_back(x);
            }
            for (const auto& h : fv.wx) rhs.push_back(detail::apply_perm(perm_mul(fv.u, h), o));
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) {
                rep.pass = false;
                rep.detail = "translation does not carry the vertex set across";
                return rep;
            }
            ++rep.checked;
        }
    return rep;
}

// u(Pi_X) = v(Pi_Y) for equivalent minimal cosets, on the root model
// e_i - e_{i+1}.
inline PartitionLemmaReport check_minimal_coset_root_images(int n) {
    PartitionLemmaReport rep;
    auto faces = detail::minimal_faces(n);
    auto root_img = [&](const Perm& u, const std::vector<int>& X) {
        std::vector<std::pair<int, int>> out;
        for (int s : X) out.push_back({u[size_t(s)], u[size_t(s + 1)]});
        std::sort(out.begin(), out.end());
        return out;
    };
    for (const auto& fu : faces)
        for (const auto& fv : faces) {
            if (fu.stab != fv.stab) continue;
            if (root_img(fu.u, fu.X) != root_img(fv.u, fv.X)) {
                rep.pass = false;
                rep.detail = "simple-root images differ on an equivalent coset pair";
                return rep;
            }
            ++rep.checked;
        }
    return rep;
}

} // namespace coxcell

#endif
