#ifndef COXCELL_COMPLEXES_HPP
#define COXCELL_COMPLEXES_HPP

#include <map>
#include <tuple>
#include <unordered_map>

#include "coxcell/session.hpp"

namespace coxcell {

enum class ComplexKind { Sigma, Beer, ThetaSigma, ThetaBeer, OmegaN };

inline std::string complex_kind_name(ComplexKind k) {
    switch (k) {
        case ComplexKind::Sigma: return "sigma";
        case ComplexKind::Beer: return "beer";
        case ComplexKind::ThetaSigma: return "theta-sigma";
        case ComplexKind::ThetaBeer: return "theta-omega";
        default: return "omega-n";
    }
}

struct CellRef {
    int dim = -1;
    size_t idx = std::numeric_limits<size_t>::max();
    bool valid() const { return dim >= 0; }
    friend bool operator==(const CellRef&, const CellRef&) = default;
    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

// One face (u, Y) of a cell's model polytope together with the cell the
// transport rule glues it to.
struct AttachRecord {
    uint32_t face_mask = 0;
    size_t face_u = 0;
    CellRef target;
};

struct SignedLetter {
    size_t cell = 0; // index into cells[1]
    bool forward = true;
    friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

inline constexpr size_t kNoDeck = std::numeric_limits<size_t>::max();

struct Cell {
    size_t ap = 0;      // AP index within its rank
    size_t z = kNoDeck; // deck coordinate (coverings only)
    bool valid = true;  // false: placeholder for a cell dropped by truncation
    std::vector<AttachRecord> attach;
    std::vector<SignedLetter> word; // oriented boundary, dim 2 only
    int polygon_m = 0;              // dihedral label of the model polygon, dim 2 only

    const AttachRecord* record(uint32_t mask, size_t u) const {
        for (const auto& r : attach)
            if (r.face_mask == mask && r.face_u == u) return &r;
        return nullptr;
    }
};

class CellComplex {
  public:
    ComplexKind kind = ComplexKind::Sigma;
    std::vector<std::vector<Cell>> cells; // graded by dimension
    bool truncated = false;
    size_t dropped = 0;      // cells omitted because their data left the tables
    size_t num_vertices = 1; // 1 for base complexes, |W| for coverings
    std::vector<size_t> edge_source, edge_target; // per 1-cell, vertex ids

    int dimension() const { return int(cells.size()) - 1; }

    std::vector<size_t> f_vector() const {
        std::vector<size_t> f;
        for (const auto& level : cells) {
            size_t n = 0;
            for (const auto& c : level) n += c.valid ? 1 : 0;
            f.push_back(n);
        }
        while (!f.empty() && f.back() == 0) f.pop_back();
        return f;
    }

    long euler_characteristic() const {
        long chi = 0, sign = 1;
        for (const auto& n : f_vector()) {
            chi += sign * long(n);
            sign = -sign;
        }
        return chi;
    }

    size_t total_cells() const {
        size_t n = 0;
        for (const auto& f : f_vector()) n += f;
        return n;
    }

    const Cell& cell(CellRef r) const { return cells[size_t(r.dim)][r.idx]; }

    CellRef find_cell(int dim, size_t ap, size_t z) const {
        auto it = label_index_.find({dim, ap, z});
        if (it == label_index_.end()) return {};
        return {dim, it->second};
    }
    void register_cell(int dim, size_t ap, size_t z, size_t idx) {
        label_index_[{dim, ap, z}] = idx;
    }

  private:
    std::map<std::tuple<int, size_t, size_t>, size_t> label_index_;
};

namespace detail {

inline int popcount32(uint32_t m) { return __builtin_popcount(m); }

// Root ids selected by a mask over the polytope base.
template <class S>
std::vector<size_t> subset_ids(const CoxPolytope<S>& poly, uint32_t mask) {
    std::vector<size_t> out;
    for (size_t g = 0; g < poly.rank(); ++g)
        if ((mask >> g) & 1u) out.push_back(poly.base()[g]);
    return out;
}

// Translate sorted root ids into a mask over a polytope's base; -1 on failure.
template <class S>
uint32_t mask_in_base(const CoxPolytope<S>& poly, const std::vector<size_t>& ids) {
    uint32_t mask = 0;
    for (size_t id : ids) {
        auto it = std::lower_bound(poly.base().begin(), poly.base().end(), id);
        if (it == poly.base().end() || *it != id) return uint32_t(-1);
        mask |= 1u << size_t(it - poly.base().begin());
    }
    return mask;
}

struct PerimeterStep {
    size_t u;     // coset representative of the edge (subgroup id)
    size_t g;     // base index of the root labelling the edge
    bool forward; // traversal agrees with the edge orientation u -> u r
};

// The 2m perimeter steps of a rank-2 polytope starting at the base vertex and
// leaving along start_gen: m forward edges, then the other side against its
// orientation.
template <class S>
std::vector<PerimeterStep> perimeter(const CoxPolytope<S>& poly, size_t start_gen) {
    size_t m = poly.subgroup().size() / 2;
    std::vector<PerimeterStep> steps;
    size_t cur = 0;
    for (size_t k = 1; k <= m; ++k) {
        size_t g = (k % 2 == 1) ? start_gen : 1 - start_gen;
        steps.push_back({cur, g, true});
        cur = poly.subgroup().step(cur, g);
    }
    std::vector<size_t> reps{0};
    size_t v = 0;
    for (size_t k = 1; k < m; ++k) {
        size_t g = (k % 2 == 1) ? 1 - start_gen : start_gen;
        v = poly.subgroup().step(v, g);
        reps.push_back(v);
    }
    for (size_t k = m; k >= 1; --k) {
        size_t g = (k % 2 == 1) ? 1 - start_gen : start_gen;
        steps.push_back({reps[k - 1], g, false});
    }
    return steps;
}

// Precomputed letters of a rank-2 boundary word; only the deck coordinate
// walk is left for the per-cell pass.
struct BoundaryPlan {
    bool ok = true;
    struct Letter {
        size_t root;    // root id of the target 1-cell
        size_t deck_by; // ambient id to right-multiply the deck coordinate by
        bool forward;
    };
    std::vector<Letter> letters;
};

template <class S>
BoundaryPlan boundary_plan(const Session<S>& session, ComplexKind kind,
                           const CoxPolytope<S>& poly, int dim, size_t ap, size_t start_gen) {
    BoundaryPlan plan;
    const auto& amb = session.ambient_ids(dim, ap);
    for (const auto& step : perimeter(poly, start_gen)) {
        typename BoundaryPlan::Letter l;
        l.forward = step.forward;
        if (kind == ComplexKind::Sigma || kind == ComplexKind::ThetaSigma) {
            l.root = poly.base()[step.g];
        } else {
            l.root = poly.act_on_root(step.u, poly.base()[step.g]);
            if (l.root == RootTable<S>::npos) {
                plan.ok = false;
                return plan;
            }
        }
        l.deck_by = kNoDeck;
        if (kind == ComplexKind::ThetaSigma)
            l.deck_by = amb.id[step.u];
        else if (kind == ComplexKind::ThetaBeer)
            l.deck_by = amb.inv[step.u];
        if ((kind == ComplexKind::ThetaSigma || kind == ComplexKind::ThetaBeer) &&
            l.deck_by == GroupTable<S>::npos) {
            plan.ok = false;
            return plan;
        }
        plan.letters.push_back(l);
    }
    return plan;
}

template <class S>
bool word_from_plan(const Session<S>& session, const CellComplex& cx, const BoundaryPlan& plan,
                    size_t z, std::vector<SignedLetter>& out) {
    out.clear();
    if (!plan.ok) return false;
    for (const auto& l : plan.letters) {
        size_t cell_idx;
        if (cx.kind == ComplexKind::Sigma || cx.kind == ComplexKind::Beer) {
            cell_idx = l.root;
        } else {
            size_t zz = session.group().mult(z, l.deck_by);
            if (zz == GroupTable<S>::npos) return false;
            CellRef ref = cx.find_cell(1, l.root, zz);
            if (!ref.valid()) return false;
            cell_idx = ref.idx;
        }
        out.push_back({cell_idx, l.forward});
    }
    return true;
}

} // namespace detail

struct CoherenceCertificate {
    bool pass = true;
    size_t checked = 0;
    std::string first_failure;
};

namespace detail {

// Transported coordinates of every subface chain (u, Y) > (uv, Z) of one
// model polytope; depends only on the AP set, not on the deck coordinate.
struct CoherencePlan {
    bool ok = true;
    std::string error;
    struct Entry {
        uint32_t ymask;
        size_t u;
        uint32_t zmask;
        size_t uv;
        size_t v_mid;      // subgroup id inside the middle polytope
        uint32_t mask_mid; // Z translated into the middle polytope's base
    };
    std::vector<Entry> entries;
};

template <class S>
CoherencePlan coherence_plan(const Session<S>& session, ComplexKind kind, int dim, size_t ap) {
    CoherencePlan plan;
    bool sigma_side = kind == ComplexKind::Sigma || kind == ComplexKind::ThetaSigma;
    const CoxPolytope<S>& poly = session.polytope(dim, ap);
    auto fail = [&](const std::string& e) {
        plan.ok = false;
        plan.error = e;
    };
    for (const auto& f : poly.faces()) {
        if (f.mask == 0) continue;
        std::vector<size_t> mid_ids = sigma_side ? subset_ids(poly, f.mask)
                                                 : poly.act_on_subset(f.u, f.mask);
        for (size_t r : mid_ids)
            if (r == RootTable<S>::npos) return plan; // truncated; cell will be dropped anyway
        size_t mid_ap = session.ap_index(mid_ids);
        if (mid_ap == APEnumeration::npos) return plan;
        const CoxPolytope<S>& pmid = session.polytope(f.dim, mid_ap);
        size_t u_inv = poly.subgroup().inv(f.u);
        for (size_t v : poly.members(f.mask)) {
            uint32_t zmask = f.mask;
            while (true) {
                zmask = (zmask - 1) & f.mask; // strict submasks, ending at 0
                if (poly.is_min_rep(v, zmask)) {
                    size_t uv = poly.subgroup().mult(f.u, v);
                    if (!poly.is_min_rep(uv, zmask)) {
                        fail("composed coset representative is not minimal");
                        return plan;
                    }
                    size_t v_mid;
                    uint32_t mask_mid;
                    if (sigma_side) {
                        v_mid = pmid.subgroup().find(poly.subgroup().matrix(v));
                        mask_mid = mask_in_base(pmid, subset_ids(poly, zmask));
                    } else {
                        Mat<S> w1 = poly.subgroup().matrix(f.u) * poly.subgroup().matrix(v) *
                                    poly.subgroup().matrix(u_inv);
                        v_mid = pmid.subgroup().find(w1);
                        mask_mid = mask_in_base(pmid, poly.act_on_subset(f.u, zmask));
                    }
                    if (v_mid == GroupTable<S>::npos || mask_mid == uint32_t(-1)) {
                        fail("subface does not land in the middle polytope");
                        return plan;
                    }
                    if (!pmid.is_min_rep(v_mid, mask_mid)) {
                        fail("transported representative is not minimal");
                        return plan;
                    }
                    plan.entries.push_back({f.mask, f.u, zmask, uv, v_mid, mask_mid});
                }
                if (zmask == 0) break;
            }
        }
    }
    return plan;
}

} // namespace detail

// Face-of-face coherence: composing the glue of a face (u, Y) with the glue
// of one of its own faces (v, Z) must agree with the direct glue of (uv, Z).
// The per-polytope geometry is checked once; every cell is then checked
// against its own attaching records.
template <class S>
CoherenceCertificate verify_face_coherence(const CellComplex& cx, const Session<S>& session) {
    CoherenceCertificate cert;
    auto fail = [&](const std::string& msg) {
        if (cert.pass) {
            cert.pass = false;
            cert.first_failure = msg;
        }
    };
    for (size_t k = 2; k < cx.cells.size() && cert.pass; ++k) {
        std::map<size_t, detail::CoherencePlan> plans;
        for (const Cell& c : cx.cells[k]) {
            if (!c.valid) continue;
            auto it = plans.find(c.ap);
            if (it == plans.end())
                it = plans.emplace(c.ap, detail::coherence_plan(session, cx.kind, int(k), c.ap))
                         .first;
            const detail::CoherencePlan& plan = it->second;
            if (!plan.ok) {
                fail(plan.error);
                break;
            }
            for (const auto& e : plan.entries) {
                const AttachRecord* outer = c.record(e.ymask, e.u);
                const AttachRecord* direct = c.record(e.zmask, e.uv);
                if (!outer || !direct) {
                    fail("missing face record");
                    break;
                }
                const Cell& mid = cx.cell(outer->target);
                const AttachRecord* through = mid.record(e.mask_mid, e.v_mid);
                if (!through || !(through->target == direct->target)) {
                    fail("composed and direct transports disagree");
                    break;
                }
                ++cert.checked;
            }
            if (!cert.pass) break;
        }
    }
    return cert;
}

namespace detail {

template <class S>
CellComplex build_base(const Session<S>& session, ComplexKind kind) {
    const APEnumeration& ap = session.ap();
    CellComplex cx;
    cx.kind = kind;
    cx.truncated = ap.truncated;
    cx.num_vertices = 1;
    cx.cells.resize(ap.by_rank.size());
    for (size_t k = 0; k < ap.by_rank.size(); ++k)
        for (size_t i = 0; i < ap.by_rank[k].size(); ++i) {
            Cell c;
            c.ap = i;
            cx.register_cell(int(k), i, kNoDeck, cx.cells[k].size());
            cx.cells[k].push_back(std::move(c));
        }
    if (cx.cells.size() > 1)
        for (size_t i = 0; i < cx.cells[1].size(); ++i) {
            if (session.ap_set(1, i).roots[0] != i)
                throw InternalInvariantViolation("rank-1 cells out of root order");
            cx.edge_source.push_back(0);
            cx.edge_target.push_back(0);
        }
    for (size_t k = 1; k < cx.cells.size(); ++k)
        for (size_t i = 0; i < cx.cells[k].size(); ++i) {
            Cell& c = cx.cells[k][i];
            const CoxPolytope<S>& poly = session.polytope(int(k), i);
            bool ok = true;
            for (const auto& f : poly.faces()) {
                AttachRecord rec;
                rec.face_mask = f.mask;
                rec.face_u = f.u;
                std::vector<size_t> target_ids;
                if (kind == ComplexKind::Sigma) {
                    target_ids = subset_ids(poly, f.mask);
                } else {
                    target_ids = poly.act_on_subset(f.u, f.mask);
                    for (size_t r : target_ids)
                        if (r == RootTable<S>::npos) ok = false;
                }
                if (!ok) break;
                size_t idx = f.dim == 0 ? 0 : session.ap_index(target_ids);
                if (idx == APEnumeration::npos) {
                    ok = false;
                    break;
                }
                rec.target = CellRef{f.dim, idx};
                c.attach.push_back(rec);
            }
            if (ok && k == 2) {
                c.polygon_m = session.ap_set(2, i).induced_matrix[0][1];
                auto plan = boundary_plan(session, kind, poly, 2, i, 0);
                ok = word_from_plan(session, cx, plan, kNoDeck, c.word);
            }
            if (!ok) {
                cx.truncated = true;
                ++cx.dropped;
                c.valid = false;
                c.attach.clear();
                c.word.clear();
            }
        }
    auto cert = verify_face_coherence(cx, session);
    if (!cert.pass) throw InternalInvariantViolation(cert.first_failure);
    return cx;
}

} // namespace detail

template <class S>
CellComplex build_sigma(const Session<S>& session) {
    return detail::build_base(session, ComplexKind::Sigma);
}

template <class S>
CellComplex build_beer(const Session<S>& session) {
    return detail::build_base(session, ComplexKind::Beer);
}

// Covering complexes: one cell (X, z) per AP set X and deck coordinate z in
// the enumerated group. Cells whose attaching data leaves a truncated table
// are dropped and counted.
template <class S>
CellComplex build_theta(const Session<S>& session, ComplexKind side) {
    if (side != ComplexKind::ThetaSigma && side != ComplexKind::ThetaBeer)
        throw Error("build_theta expects a covering kind");
    const APEnumeration& ap = session.ap();
    const GroupTable<S>& group = session.group();
    CellComplex cx;
    cx.kind = side;
    cx.truncated = ap.truncated || group.truncated() || !session.roots().complete();
    cx.num_vertices = group.size();
    cx.cells.resize(ap.by_rank.size());

    for (size_t z = 0; z < group.size(); ++z) {
        Cell c;
        c.ap = 0;
        c.z = z;
        cx.register_cell(0, 0, z, cx.cells[0].size());
        cx.cells[0].push_back(std::move(c));
    }
    for (size_t b = 0; ap.by_rank.size() > 1 && b < ap.by_rank[1].size(); ++b) {
        size_t refl = group.find(session.roots().reflection_matrix(b));
        for (size_t z = 0; z < group.size(); ++z) {
            size_t tgt = refl == GroupTable<S>::npos ? GroupTable<S>::npos : group.mult(z, refl);
            if (tgt == GroupTable<S>::npos) {
                cx.truncated = true;
                ++cx.dropped;
                continue;
            }
            Cell c;
            c.ap = b;
            c.z = z;
            AttachRecord at_src{0, 0, CellRef{0, z}};
            AttachRecord at_tgt{0, 1, CellRef{0, tgt}};
            c.attach = {at_src, at_tgt};
            cx.register_cell(1, b, z, cx.cells[1].size());
            cx.edge_source.push_back(z);
            cx.edge_target.push_back(tgt);
            cx.cells[1].push_back(std::move(c));
        }
    }
    for (size_t k = 2; k < ap.by_rank.size(); ++k)
        for (size_t i = 0; i < ap.by_rank[k].size(); ++i) {
            const CoxPolytope<S>& poly = session.polytope(int(k), i);
            const auto& amb = session.ambient_ids(int(k), i);
            // Per-face data independent of the deck coordinate.
            struct FacePlan {
                uint32_t mask;
                size_t u;
                int tdim;
                size_t tap;
                size_t deck_by;
            };
            std::vector<FacePlan> fplans;
            bool plan_ok = true;
            for (const auto& f : poly.faces()) {
                FacePlan fp;
                fp.mask = f.mask;
                fp.u = f.u;
                fp.tdim = f.dim;
                if (side == ComplexKind::ThetaSigma) {
                    fp.tap = f.dim == 0 ? 0 : session.ap_index(detail::subset_ids(poly, f.mask));
                    fp.deck_by = amb.id[f.u];
                } else {
                    std::vector<size_t> ids = poly.act_on_subset(f.u, f.mask);
                    bool bad = false;
                    for (size_t r : ids)
                        if (r == RootTable<S>::npos) bad = true;
                    fp.tap = f.dim == 0 ? 0 : (bad ? APEnumeration::npos : session.ap_index(ids));
                    fp.deck_by = amb.inv[f.u];
                }
                if (fp.tap == APEnumeration::npos || fp.deck_by == GroupTable<S>::npos)
                    plan_ok = false;
                fplans.push_back(fp);
            }
            detail::BoundaryPlan wplan;
            if (k == 2 && plan_ok) wplan = detail::boundary_plan(session, side, poly, 2, i, 0);
            for (size_t z = 0; z < group.size(); ++z) {
                Cell c;
                c.ap = i;
                c.z = z;
                bool ok = plan_ok;
                for (const auto& fp : fplans) {
                    if (!ok) break;
                    size_t tz = group.mult(z, fp.deck_by);
                    if (tz == GroupTable<S>::npos) {
                        ok = false;
                        break;
                    }
                    CellRef ref = cx.find_cell(fp.tdim, fp.tap, tz);
                    if (!ref.valid()) {
                        ok = false;
                        break;
                    }
                    c.attach.push_back({fp.mask, fp.u, ref});
                }
                if (ok && k == 2) {
                    c.polygon_m = session.ap_set(2, i).induced_matrix[0][1];
                    ok = detail::word_from_plan(session, cx, wplan, z, c.word);
                }
                if (!ok) {
                    cx.truncated = true;
                    ++cx.dropped;
                    continue;
                }
                cx.register_cell(int(k), i, z, cx.cells[k].size());
                cx.cells[k].push_back(std::move(c));
            }
        }
    auto cert = verify_face_coherence(cx, session);
    if (!cert.pass) throw InternalInvariantViolation(cert.first_failure);
    return cx;
}

} // namespace coxcell

#endif
