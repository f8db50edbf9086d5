#ifndef COXCELL_SESSION_HPP
#define COXCELL_SESSION_HPP

#include <memory>

#include "coxcell/polytope.hpp"

namespace coxcell {

struct Bounds {
    std::optional<size_t> root_depth; // BFS depth for root enumeration
    std::optional<size_t> word_length; // length bound for group enumeration
};

// Everything derived from one Coxeter graph that the complex builders and
// verifiers share: the group and root tables, the pairwise witness table, the
// spherical AP enumeration and the per-set polytopes (built lazily).
template <class S>
class Session {
  public:
    explicit Session(CoxeterGraph graph, Bounds bounds = {}, bool parallel = true)
        : geo_(std::move(graph)),
          spherical_(classify<S>(geo_.graph).kind == TypeKind::Spherical),
          group_(enumerate_group<S>(geo_, spherical_ ? std::nullopt : bounds.word_length)),
          roots_(geo_, spherical_ ? std::nullopt : bounds.root_depth),
          pairs_(roots_, group_, parallel),
          ap_(enumerate_ap_spherical(pairs_, {}, parallel)) {
        polys_.resize(ap_.by_rank.size());
        amb_.resize(ap_.by_rank.size());
        for (size_t k = 0; k < ap_.by_rank.size(); ++k) {
            polys_[k].resize(ap_.by_rank[k].size());
            amb_[k].resize(ap_.by_rank[k].size());
        }
    }

    const Geometry<S>& geometry() const { return geo_; }
    const CoxeterGraph& graph() const { return geo_.graph; }
    bool spherical() const { return spherical_; }
    const GroupTable<S>& group() const { return group_; }
    const RootTable<S>& roots() const { return roots_; }
    const PairTable<S>& pairs() const { return pairs_; }
    const APEnumeration& ap() const { return ap_; }

    const APSet& ap_set(int dim, size_t idx) const { return ap_.by_rank[size_t(dim)][idx]; }

    const CoxPolytope<S>& polytope(int dim, size_t idx) const {
        auto& slot = polys_[size_t(dim)][idx];
        if (!slot) slot = std::make_unique<CoxPolytope<S>>(roots_, ap_set(dim, idx));
        return *slot;
    }

    // Ambient group ids (and ids of inverses) of the subgroup elements of one
    // polytope; npos entries when the ambient table is truncated. Cached, as
    // the covering builders look these up per deck coordinate.
    struct AmbientIds {
        std::vector<size_t> id, inv;
        std::unordered_map<size_t, size_t> member_of; // ambient id -> subgroup id
    };
    const AmbientIds& ambient_ids(int dim, size_t idx) const {
        auto& slot = amb_[size_t(dim)][idx];
        if (!slot) {
            const CoxPolytope<S>& poly = polytope(dim, idx);
            auto a = std::make_unique<AmbientIds>();
            for (size_t v = 0; v < poly.subgroup().size(); ++v) {
                size_t id = group_.find(poly.subgroup().matrix(v));
                a->id.push_back(id);
                a->inv.push_back(id == GroupTable<S>::npos ? id : group_.inv(id));
                if (id != GroupTable<S>::npos) a->member_of.emplace(id, v);
            }
            slot = std::move(a);
        }
        return *slot;
    }

    // Index of a sorted root-id set within its rank level.
    size_t ap_index(const std::vector<size_t>& ids) const { return ap_.find(ids); }

    // z(X) as sorted root ids; npos entries under truncation.
    std::vector<size_t> act_on_set(size_t z, const std::vector<size_t>& ids) const {
        std::vector<size_t> out;
        for (size_t r : ids) out.push_back(roots_.act_word(group_.word(z), r));
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    Geometry<S> geo_;
    bool spherical_;
    GroupTable<S> group_;
    RootTable<S> roots_;
    PairTable<S> pairs_;
    APEnumeration ap_;
    mutable std::vector<std::vector<std::unique_ptr<CoxPolytope<S>>>> polys_;
    mutable std::vector<std::vector<std::unique_ptr<AmbientIds>>> amb_;
};

} // namespace coxcell

#endif
