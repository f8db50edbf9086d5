#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coxcell/group.hpp"
#include "coxcell/roots.hpp"

using namespace coxcell;

namespace {

CoxeterGraph graph_a2() { return CoxeterGraph({"s", "t"}, {{1, 3}, {3, 1}}); }
CoxeterGraph graph_b2() { return CoxeterGraph({"s", "t"}, {{1, 4}, {4, 1}}); }
CoxeterGraph graph_a1tilde() {
    return CoxeterGraph({"s", "t"}, {{1, kInfiniteLabel}, {kInfiniteLabel, 1}});
}

// Independent oracle: plain rational 2x2 determinant for the A2 form.
Rational det2(Rational a, Rational b, Rational c, Rational d) { return a * d - b * c; }

} // namespace

TEST_CASE("exact scalar field operations") {
    ExactScalar r2 = ExactScalar::sqrt_of(2);
    ExactScalar r3 = ExactScalar::sqrt_of(3);
    CHECK(r2 * r2 == ExactScalar(2));
    CHECK(r2 * r3 == ExactScalar::sqrt_of(6));
    ExactScalar x = ExactScalar(1) + r2;
    CHECK(x * x.inverse() == ExactScalar(1));
    CHECK((x - x).is_zero());
    CHECK(x.sign() == 1);
    CHECK((ExactScalar(1) - r2).sign() == -1);
    ExactScalar phi = ExactScalar::cos_pi_over(5);
    // cos(pi/5) satisfies 4c^2 - 2c - 1 = 0
    CHECK((ExactScalar(4) * phi * phi - ExactScalar(2) * phi - ExactScalar(1)).is_zero());
    CHECK_THROWS_AS(ExactScalar::cos_pi_over(7), ArithmeticModeUnavailable);
}

TEST_CASE("classification of small graphs") {
    auto a2 = classify<ExactScalar>(graph_a2());
    CHECK(a2.kind == TypeKind::Spherical);
    CHECK(a2.components.size() == 1);
    CHECK(a2.components[0].label == "A2");
    // oracle: principal minors of [[1,-1/2],[-1/2,1]] are 1 and 3/4
    CHECK(det2(1, Rational(-1, 2), Rational(-1, 2), 1) == Rational(3, 4));

    auto inf2 = classify<ExactScalar>(graph_a1tilde());
    CHECK(inf2.kind == TypeKind::Affine);
    CHECK(inf2.components[0].label == "A1~");

    // rank-2 label 7 is spherical; exact mode refuses, interval mode decides
    CoxeterGraph i27({"s", "t"}, {{1, 7}, {7, 1}});
    CHECK_THROWS_AS(classify<ExactScalar>(i27), ArithmeticModeUnavailable);
    auto c = classify<FloatScalar>(i27);
    CHECK(c.kind == TypeKind::Spherical);
    CHECK(c.components[0].label == "I2(7)");
}

TEST_CASE("group elements in A2") {
    Geometry<ExactScalar> geo(graph_a2());
    auto s = Element<ExactScalar>::generator(geo, 0);
    auto t = Element<ExactScalar>::generator(geo, 1);
    auto id = Element<ExactScalar>::identity(geo);
    CHECK(multiply(geo, s, s) == id);
    auto sts = multiply(geo, multiply(geo, s, t), s);
    auto tst = multiply(geo, multiply(geo, t, s), t);
    CHECK(sts == tst);
    CHECK(sts.length() == 3);
    CHECK(id.length() == 0);

    // brute force enumeration of all 6 elements
    GroupTable<ExactScalar> w = enumerate_group<ExactScalar>(geo);
    CHECK(w.size() == 6);
    CHECK(!w.truncated());

    // min coset reps against brute force: coset {st, s} has minimum s
    auto st = multiply(geo, s, t);
    auto rep = min_coset_rep(geo, st, {1});
    CHECK(rep == s);
    CHECK(min_coset_rep(geo, sts, {0, 1}) == id);
    CHECK(min_double_coset_rep(geo, s, {0}, {}) == id);
}

TEST_CASE("roots of A2 and B2") {
    Geometry<ExactScalar> geo(graph_a2());
    RootTable<ExactScalar> rt(geo);
    CHECK(rt.complete());
    CHECK(rt.size() == 6);
    size_t pos = 0;
    for (size_t i = 0; i < rt.size(); ++i) {
        if (rt.positive(i)) ++pos;
        CHECK(rt.negation(rt.negation(i)) == i);
        // <beta,beta> = 1
        CHECK(geo.pair(rt.coeffs(i), rt.coeffs(i)) == ExactScalar(1));
    }
    CHECK(pos == 3);

    Geometry<ExactScalar> geob(graph_b2());
    RootTable<ExactScalar> rtb(geob);
    CHECK(rtb.size() == 8);

    // reflnumeric identities: r_alpha(alpha) = -alpha, fixed vectors stay
    Vec<ExactScalar> alpha = rt.coeffs(0);
    CHECK(vec_eq(rt.reflect_vector(0, alpha), negate(alpha)));

    // reflection_element(alpha_s + alpha_t) = sts = tst
    Vec<ExactScalar> high{ExactScalar(1), ExactScalar(1)};
    size_t hid = rt.find(high);
    REQUIRE(hid != RootTable<ExactScalar>::npos);
    auto refl = rt.reflection_element(hid);
    auto s = Element<ExactScalar>::generator(geo, 0);
    auto t = Element<ExactScalar>::generator(geo, 1);
    CHECK(refl == multiply(geo, multiply(geo, s, t), s));
    CHECK(refl.matrix() == rt.reflection_matrix(hid));
    CHECK(rt.reflection_matrix(hid) == rt.reflection_matrix(rt.negation(hid)));
}

TEST_CASE("affine root truncation") {
    Geometry<ExactScalar> geo(graph_a1tilde());
    CHECK_THROWS_AS((RootTable<ExactScalar>(geo, {})), BoundRequired);
    RootTable<ExactScalar> rt(geo, 4);
    CHECK(!rt.complete());
    CHECK(rt.size() > 4);
    GroupTable<ExactScalar> w(geo, geo.gen, {.max_length = 6});
    CHECK(w.truncated());
    CHECK(w.size() == 13);
}
