#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coxcell/polytope.hpp"
#include "coxcell/session.hpp"

using namespace coxcell;
using X = ExactScalar;

namespace {

CoxeterGraph a2() { return CoxeterGraph({"s", "t"}, {{1, 3}, {3, 1}}); }
CoxeterGraph b2() { return CoxeterGraph({"s", "t"}, {{1, 4}, {4, 1}}); }
CoxeterGraph a1a1() { return CoxeterGraph({"s", "t"}, {{1, 2}, {2, 1}}); }
CoxeterGraph a3() {
    return CoxeterGraph({"s1", "s2", "s3"}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}});
}

template <class S>
std::vector<size_t> detail_subset(const CoxPolytope<S>& poly, uint32_t mask) {
    std::vector<size_t> out;
    for (size_t g = 0; g < poly.rank(); ++g)
        if ((mask >> g) & 1u) out.push_back(poly.base()[g]);
    return out;
}

// Oracle: all simple-system images w(Pi) listed by brute force over the
// enumerated group, as sets of root ids.
template <class S>
std::vector<std::vector<size_t>> simple_systems_oracle(const Session<S>& ss) {
    std::vector<std::vector<size_t>> out;
    for (size_t w = 0; w < ss.group().size(); ++w) {
        std::vector<size_t> sys;
        for (size_t s = 0; s < ss.geometry().rank(); ++s)
            sys.push_back(ss.roots().act_word(ss.group().word(w), s));
        std::sort(sys.begin(), sys.end());
        if (std::find(out.begin(), out.end(), sys) == out.end()) out.push_back(sys);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("pair labels in A2") {
    Session<X> ss(a2());
    const auto& pairs = ss.pairs();
    CHECK(pairs.label(0, 0).m == 1);
    // simple pair via the identity witness
    auto lab = pairs.label(0, 1);
    CHECK(lab.kind == PairLabelKind::Finite);
    CHECK(lab.m == 3);
    // alpha_s and alpha_s + alpha_t: no witness among the 6 simple systems
    size_t high = ss.roots().find({X(1), X(1)});
    auto sys = simple_systems_oracle(ss);
    std::vector<size_t> probe{size_t(0), high};
    std::sort(probe.begin(), probe.end());
    CHECK(std::find(sys.begin(), sys.end(), probe) == sys.end());
    CHECK(pairs.label(0, high).kind == PairLabelKind::Infinite);
    // symmetry wherever determined
    for (size_t a = 0; a < 6; ++a)
        for (size_t b = 0; b < 6; ++b) {
            auto l1 = pairs.label(a, b), l2 = pairs.label(b, a);
            CHECK(l1.kind == l2.kind);
            if (l1.kind == PairLabelKind::Finite) CHECK(l1.m == l2.m);
        }
}

TEST_CASE("pair root sequences and prefix products") {
    Session<X> ss(a2());
    size_t high = ss.roots().find({X(1), X(1)});
    auto seq = pair_root_sequence(ss.roots(), 0, 1, 3);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0] == 0);
    CHECK(seq[1] == high);
    CHECK(seq[2] == 1);
    // reversal identity: the swapped sequence is the reverse
    auto rev = pair_root_sequence(ss.roots(), 1, 0, 3);
    for (size_t k = 0; k < 3; ++k) CHECK(rev[3 - 1 - k] == seq[k]);
    // relation words reverse each other
    auto z1 = pair_relation_word(ss.roots(), 0, 1, 3);
    auto z2 = pair_relation_word(ss.roots(), 1, 0, 3);
    std::vector<size_t> z2r(z2.rbegin(), z2.rend());
    CHECK(z1 == z2r);
    CHECK_NOTHROW(prefix_product_check(ss.roots(), 0, 1, 2, 3));
    CHECK_NOTHROW(prefix_product_check(ss.roots(), 0, 1, 3, 3));

    // B2: k = 4 prefix equals the alternating product of length 3
    Session<X> sb(b2());
    for (int k = 2; k <= 4; ++k) CHECK_NOTHROW(prefix_product_check(sb.roots(), 0, 1, k, 4));
}

TEST_CASE("AP detection against the simple-system oracle") {
    Session<X> ss(a2());
    // {beta, -beta} fails AP1
    auto dep = is_ap(ss.pairs(), {0, ss.roots().negation(0)});
    CHECK(dep.verdict == APVerdict::No);
    CHECK(dep.reason.find("AP1") != std::string::npos);
    // parabolic pair is AP
    auto par = is_ap(ss.pairs(), {0, 1});
    CHECK(par.verdict == APVerdict::Yes);
    CHECK(par.set.induced_matrix[0][1] == 3);
    // {alpha_s, alpha_s+alpha_t} fails AP2
    size_t high = ss.roots().find({X(1), X(1)});
    auto bad = is_ap(ss.pairs(), {0, high});
    CHECK(bad.verdict == APVerdict::No);
    CHECK(bad.reason.find("AP2") != std::string::npos);

    // enumeration agrees with brute force over all pairs
    auto sys = simple_systems_oracle(ss);
    CHECK(sys.size() == 6);
    const auto& level2 = ss.ap().by_rank[2];
    REQUIRE(level2.size() == 6);
    for (size_t i = 0; i < 6; ++i) CHECK(level2[i].roots == sys[i]);
    CHECK(ss.ap().by_rank[0].size() == 1);
    CHECK(ss.ap().by_rank[1].size() == 6);

    // B2: 8 pairs out of 28
    Session<X> sb(b2());
    CHECK(sb.ap().by_rank[2].size() == 8);
    CHECK(simple_systems_oracle(sb).size() == 8);

    // induced labels match the pair labels (two independent routes)
    for (const auto& set : sb.ap().by_rank[2]) {
        auto lab = sb.pairs().label(set.roots[0], set.roots[1]);
        REQUIRE(lab.kind == PairLabelKind::Finite);
        CHECK(lab.m == set.induced_matrix[0][1]);
    }
}

TEST_CASE("parallel and serial AP enumeration agree") {
    Session<X> ss(a3());
    auto par = enumerate_ap_spherical(ss.pairs());
    auto ser = enumerate_ap_spherical_serial(ss.pairs());
    REQUIRE(par.by_rank.size() == ser.by_rank.size());
    for (size_t k = 0; k < par.by_rank.size(); ++k) {
        REQUIRE(par.by_rank[k].size() == ser.by_rank[k].size());
        for (size_t i = 0; i < par.by_rank[k].size(); ++i)
            CHECK(par.by_rank[k][i].roots == ser.by_rank[k][i].roots);
    }
    // A3: 12 roots, 36 rank-2 sets, 24 rank-3 sets (the simple systems)
    CHECK(ss.roots().size() == 12);
    CHECK(par.by_rank[1].size() == 12);
    CHECK(par.by_rank[2].size() == 36);
    CHECK(par.by_rank[3].size() == 24);
    CHECK(simple_systems_oracle(ss).size() == 24);
}

TEST_CASE("polytopes: segment, hexagon, square") {
    Session<X> ss(a2());
    // rank 1: segment [beta, -beta] with o = beta
    const auto& seg = ss.polytope(1, 0);
    CHECK(seg.num_vertices() == 2);
    CHECK(vec_eq(seg.base_point(), ss.roots().coeffs(0)));
    CHECK(vec_eq(seg.vertex(1), negate(ss.roots().coeffs(0))));

    // hexagon: 6 vertices, 6 edges, coset counting oracle
    size_t idx = ss.ap().find({0, 1});
    const auto& hex = ss.polytope(2, idx);
    CHECK(hex.num_vertices() == 6);
    CHECK(hex.edges().size() == 6);
    size_t vertex_faces = 0;
    for (const auto& f : hex.faces())
        if (f.dim == 0) ++vertex_faces;
    CHECK(vertex_faces == 6);

    // orthogonal pair: square with o = beta + gamma
    Session<X> so(a1a1());
    size_t sq_idx = so.ap().find({0, 1});
    REQUIRE(sq_idx != APEnumeration::npos);
    const auto& sq = so.polytope(2, sq_idx);
    CHECK(sq.num_vertices() == 4);
    Vec<X> expect = so.roots().coeffs(0) + so.roots().coeffs(1);
    CHECK(vec_eq(sq.base_point(), expect));

    // f-vector of a rank-2 polytope with label m: (2m, 2m, 1)
    Session<X> sb(b2());
    const auto& oct = sb.polytope(2, sb.ap().find({0, 1}));
    CHECK(oct.num_vertices() == 8);
    CHECK(oct.edges().size() == 8);
}

TEST_CASE("base point transport under minimal representatives") {
    // u(o_Y) = o_{u(Y)} for u minimal
    Session<X> ss(a3());
    for (size_t i = 0; i < ss.ap().by_rank[2].size(); ++i) {
        const auto& poly = ss.polytope(2, i);
        for (const auto& f : poly.faces()) {
            if (f.dim != 1) continue;
            std::vector<size_t> img = poly.act_on_subset(f.u, f.mask);
            size_t tidx = ss.ap_index(img);
            REQUIRE(tidx != APEnumeration::npos);
            const auto& tpoly = ss.polytope(1, tidx);
            Vec<X> moved = poly.subgroup().matrix(f.u).apply(
                ss.polytope(1, ss.ap_index(detail_subset(poly, f.mask))).base_point());
            CHECK(vec_eq(moved, tpoly.base_point()));
        }
    }
}

TEST_CASE("standard face translation") {
    // tau(o - o_X) carries C[X] onto the standard face F(id, X, S) vertexwise
    Session<X> ss(a3());
    size_t full = ss.ap().find({0, 1, 2});
    REQUIRE(full != APEnumeration::npos);
    const auto& big = ss.polytope(3, full);
    for (const auto& f : big.faces()) {
        if (f.u != 0) continue;
        std::vector<size_t> ids = detail_subset(big, f.mask);
        size_t tidx = ss.ap_index(ids);
        const auto& sub = ss.polytope(f.dim, tidx);
        Vec<X> shift = big.base_point() - sub.base_point();
        // F(id, Y, X) vertices are exactly the shifted C[Y] vertices
        std::vector<std::string> lhs, rhs;
        for (size_t m : big.members(f.mask)) lhs.push_back(vec_key(big.vertex(m)));
        for (size_t v = 0; v < sub.num_vertices(); ++v)
            rhs.push_back(vec_key(sub.vertex(v) + shift));
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sign flip certificates") {
    Session<X> so(a1a1());
    // X = {alpha, beta}, X' = {-alpha, beta}
    size_t na = so.roots().negation(0);
    auto x = is_ap(so.pairs(), {0, 1});
    auto xp = is_ap(so.pairs(), {na, 1});
    REQUIRE(x.verdict == APVerdict::Yes);
    REQUIRE(xp.verdict == APVerdict::Yes);
    auto cert = sign_flip_polytope_check(so.pairs(), x.set, xp.set);
    CHECK(cert.pass);
    CHECK(cert.flipped == std::vector<size_t>{0});
    CHECK(cert.common == std::vector<size_t>{1});
    CHECK(cert.reversed_edges.size() == 2); // both alpha-edges of the square
    CHECK(cert.kept_edges == 2);

    // non-orthogonal flip in A2 is not AP at all
    Session<X> sa(a2());
    auto bad = is_ap(sa.pairs(), {sa.roots().negation(0), 1});
    CHECK(bad.verdict == APVerdict::No);

    // full flips in B2: X and -X span the same polytope, all edges reverse
    Session<X> sb(b2());
    auto xb = is_ap(sb.pairs(), {0, 1});
    std::vector<size_t> negs{sb.roots().negation(0), sb.roots().negation(1)};
    std::sort(negs.begin(), negs.end());
    auto xbm = is_ap(sb.pairs(), negs);
    REQUIRE(xb.verdict == APVerdict::Yes);
    REQUIRE(xbm.verdict == APVerdict::Yes);
    auto cb = sign_flip_polytope_check(sb.pairs(), xb.set, xbm.set);
    CHECK(cb.pass);
    CHECK(cb.common.empty());
    CHECK(cb.reversed_edges.size() == 8);
    CHECK(cb.kept_edges == 0);
}

TEST_CASE("abstract polytope transport") {
    Session<X> sa(a2());
    auto cert = abstract_polytope_transport_check(sa.roots(), sa.ap_set(2, 0));
    CHECK(cert.pass);
    CHECK(cert.vertices == 6);
    CHECK(cert.compared_pairs == 21); // 6 choose 2 plus diagonal

    Session<X> sb(b2());
    auto certb = abstract_polytope_transport_check(sb.roots(), sb.ap_set(2, 0));
    CHECK(certb.pass);
    CHECK(certb.vertices == 8);

    // rank 1: two points at distance 2
    auto cert1 = abstract_polytope_transport_check(sa.roots(), sa.ap_set(1, 0));
    CHECK(cert1.pass);
    CHECK(cert1.vertices == 2);
}

TEST_CASE("commuting reflections always witness a parabolic pair") {
    // simply-laced ambient graphs of rank <= 4
    std::vector<CoxeterGraph> graphs{
        a1a1(), a2(), a3(),
        CoxeterGraph({"s1", "s2", "s3", "s4"},
                     {{1, 3, 2, 2}, {3, 1, 3, 2}, {2, 3, 1, 3}, {2, 2, 3, 1}}),
        CoxeterGraph({"s1", "s2", "s3", "s4"},
                     {{1, 3, 2, 2}, {3, 1, 3, 3}, {2, 3, 1, 2}, {2, 3, 2, 1}})}; // A4, D4
    for (const auto& g : graphs) {
        Session<X> ss(g);
        const auto& roots = ss.roots();
        for (size_t a = 0; a < roots.size(); ++a)
            for (size_t b = a + 1; b < roots.size(); ++b) {
                if (!roots.positive(a) || !roots.positive(b)) continue;
                if (roots.negation(a) == b) continue;
                // commuting reflections only
                if (detail::product_order(roots, a, b) != 2) continue;
                bool some_sign_choice = false;
                for (size_t ra : {a, roots.negation(a)})
                    for (size_t rb : {b, roots.negation(b)})
                        if (ss.pairs().witness(ra, rb).found()) some_sign_choice = true;
                CHECK(some_sign_choice);
            }
    }
}
