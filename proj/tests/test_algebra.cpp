#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "hyperconv/algebra.hpp"
#include "hyperconv/rng.hpp"
#include "oracles.hpp"

using namespace hyperconv;
using oracles::oracle_mul;
using oracles::random_hnum;
using oracles::unit_products_for;

namespace {

HNum unit(int idx, double s = 1.0) {
    HNum h;
    h[idx] = s;
    return h;
}

bool close(const HNum& a, const HNum& b, double tol) {
    for (int d = 0; d < 4; ++d) {
        const double scale = std::max({1.0, std::fabs(a[d]), std::fabs(b[d])});
        if (std::fabs(a[d] - b[d]) > tol * scale) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("quaternion table matches the classic product rules") {
    const auto t = build_table({Family::Anticommutative, -1, -1});
    CHECK(hmul(t, unit(1), unit(2)) == unit(3));    // ij = k
    CHECK(hmul(t, unit(2), unit(3)) == unit(1));    // jk = i
    CHECK(hmul(t, unit(3), unit(1)) == unit(2));    // ki = j
    CHECK(hmul(t, unit(1), unit(1)) == unit(0, -1));
    CHECK(hmul(t, unit(2), unit(2)) == unit(0, -1));
    CHECK(hmul(t, unit(3), unit(3)) == unit(0, -1));
}

TEST_CASE("coquaternion table: ik = -j and k^2 = +1") {
    const auto t = build_table({Family::Anticommutative, -1, +1});
    CHECK(hmul(t, unit(1), unit(3)) == unit(2, -1));
    CHECK(hmul(t, unit(3), unit(3)) == unit(0, +1));
}

TEST_CASE("Klein 4-group: all unit squares +1 and ij = ji = k") {
    const auto t = build_table({Family::Commutative, +1, +1});
    for (int u = 1; u < 4; ++u) CHECK(hmul(t, unit(u), unit(u)) == unit(0, +1));
    CHECK(hmul(t, unit(1), unit(2)) == unit(3));
    CHECK(hmul(t, unit(2), unit(1)) == unit(3));
}

TEST_CASE("identity element multiplies trivially in every algebra") {
    for (const auto& spec : all_algebras()) {
        const auto t = build_table(spec);
        for (int mu = 0; mu < 4; ++mu) {
            CHECK(hmul(t, unit(0), unit(mu)) == unit(mu));
            CHECK(hmul(t, unit(mu), unit(0)) == unit(mu));
        }
        Rng rng(7);
        const HNum x = random_hnum(rng);
        CHECK(close(hmul(t, HNum{1, 0, 0, 0}, x), x, 0.0));
        // scalar product scales each coefficient
        const HNum scaled = hmul(t, HNum{2.5, 0, 0, 0}, x);
        for (int d = 0; d < 4; ++d) CHECK(scaled[d] == doctest::Approx(2.5 * x[d]));
    }
}

TEST_CASE("k = ij and the k^2 rule hold for every algebra") {
    for (const auto& spec : all_algebras()) {
        const auto t = build_table(spec);
        CHECK(t.at(1, 2) == SignedUnit{+1, 3});
        const int expected =
            (spec.family == Family::Anticommutative ? -1 : +1) * spec.i_sq * spec.j_sq;
        CHECK(t.at(3, 3) == SignedUnit{expected, 0});
    }
}

TEST_CASE("hadd is coefficient-wise with identity and inverse") {
    CHECK(hadd({1, 2, 3, 4}, {0, 0, 0, 0}) == HNum{1, 2, 3, 4});
    CHECK(hadd({1, 0, -1, 0}, {0, 1, 0, 1}) == HNum{1, 1, -1, 1});
    Rng rng(11);
    const HNum x = random_hnum(rng);
    const HNum neg{-x[0], -x[1], -x[2], -x[3]};
    CHECK(hadd(x, neg) == HNum{0, 0, 0, 0});
}

TEST_CASE("all eight tables are associative over the 64 basis triples") {
    for (const auto& spec : all_algebras())
        CHECK(check_associativity(build_table(spec)));
}

TEST_CASE("a corrupted quaternion table fails associativity") {
    auto t = build_table({Family::Anticommutative, -1, -1});
    t.c[2][3].sign = -t.c[2][3].sign;
    CHECK_FALSE(check_associativity(t));
}

TEST_CASE("commutativity class matches the family for all algebras") {
    for (const auto& spec : all_algebras()) {
        const auto cls = check_commutativity_class(build_table(spec));
        if (spec.family == Family::Commutative)
            CHECK(cls == CommClass::Commutative);
        else
            CHECK(cls == CommClass::Anticommutative);
    }
}

TEST_CASE("a hybrid table is classified as Neither") {
    // ij = ji = k but ik = j, ki = -j: neither relation holds globally.
    auto t = build_table({Family::Commutative, +1, +1});
    t.c[3][1].sign = -1;
    CHECK(check_commutativity_class(t) == CommClass::Neither);
}

TEST_CASE("product matches the 16-term expansion oracle on random pairs") {
    for (const auto& spec : all_algebras()) {
        const auto t = build_table(spec);
        const auto u = unit_products_for(spec);
        Rng rng(0x5eed0 + spec.i_sq + 3 * spec.j_sq);
        for (int it = 0; it < 1000; ++it) {
            const HNum x = random_hnum(rng);
            const HNum y = random_hnum(rng);
            CAPTURE(algebra_signature(spec));
            REQUIRE(close(hmul(t, x, y), oracle_mul(u, x, y), 1e-13));
        }
    }
}

TEST_CASE("product is bilinear") {
    for (const auto& spec : all_algebras()) {
        const auto t = build_table(spec);
        Rng rng(99);
        for (int it = 0; it < 50; ++it) {
            const double a = rng.uniform(-2.0, 2.0);
            const double b = rng.uniform(-2.0, 2.0);
            const HNum x = random_hnum(rng), xp = random_hnum(rng);
            const HNum y = random_hnum(rng);
            HNum combo;
            for (int d = 0; d < 4; ++d) combo[d] = a * x[d] + b * xp[d];
            const HNum lhs = hmul(t, combo, y);
            const HNum p = hmul(t, x, y), q = hmul(t, xp, y);
            HNum rhs;
            for (int d = 0; d < 4; ++d) rhs[d] = a * p[d] + b * q[d];
            REQUIRE(close(lhs, rhs, 1e-12));
        }
    }
}

TEST_CASE("signed-permutation search certifies the expected classes") {
    const AlgebraSpec co{Family::Anticommutative, -1, +1};
    const AlgebraSpec cl11{Family::Anticommutative, +1, -1};
    const AlgebraSpec cl20{Family::Anticommutative, +1, +1};
    const AlgebraSpec quat{Family::Anticommutative, -1, -1};
    const AlgebraSpec bic{Family::Commutative, -1, -1};
    const AlgebraSpec tess{Family::Commutative, -1, +1};
    const AlgebraSpec bpm{Family::Commutative, +1, -1};
    const AlgebraSpec klein{Family::Commutative, +1, +1};

    auto iso = [](const AlgebraSpec& a, const AlgebraSpec& b) {
        return find_signed_permutation_isomorphism(build_table(a), build_table(b));
    };

    SUBCASE("witnesses exist inside each three-member class") {
        CHECK(iso(co, cl11).has_value());
        CHECK(iso(co, cl20).has_value());
        CHECK(iso(cl11, cl20).has_value());
        CHECK(iso(bic, tess).has_value());
        CHECK(iso(bic, bpm).has_value());
        CHECK(iso(tess, bpm).has_value());
    }

    SUBCASE("returned maps transport every structure constant") {
        const auto m = iso(co, cl11);
        REQUIRE(m.has_value());
        const auto ta = build_table(co);
        const auto tb = build_table(cl11);
        // independent re-check: transport basis numbers through hmul
        for (int mu = 1; mu < 4; ++mu)
            for (int nu = 1; nu < 4; ++nu) {
                HNum fx = unit(m->perm[mu], m->sign[mu]);
                HNum fy = unit(m->perm[nu], m->sign[nu]);
                const HNum lhs_src = hmul(ta, unit(mu), unit(nu));
                HNum lhs;  // image of lhs_src under the map
                lhs[0] = lhs_src[0];
                for (int u = 1; u < 4; ++u) lhs[m->perm[u]] = lhs_src[u] * m->sign[u];
                CHECK(close(lhs, hmul(tb, fx, fy), 0.0));
            }
    }

    SUBCASE("quaternions and Klein are isolated") {
        for (const auto& other : {co, cl11, cl20, bic, tess, bpm, klein})
            CHECK_FALSE(iso(quat, other).has_value());
        for (const auto& other : {co, cl11, cl20, bic, tess, bpm, quat})
            CHECK_FALSE(iso(klein, other).has_value());
    }

    SUBCASE("no cross-family witnesses") {
        for (const auto& a : {quat, co, cl11, cl20})
            for (const auto& b : {bic, tess, bpm, klein})
                CHECK_FALSE(iso(a, b).has_value());
    }

    SUBCASE("full partition over all eight algebras") {
        const auto algs = all_algebras();
        std::map<int, std::set<int>> classes;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (find_signed_permutation_isomorphism(build_table(algs[i]),
                                                        build_table(algs[j])))
                    classes[i].insert(j);
        // expected index sets within all_algebras() ordering:
        // 0=A[-1,-1] 1=A[-1,+1] 2=A[+1,-1] 3=A[+1,+1]
        // 4=B[-1,-1] 5=B[-1,+1] 6=B[+1,-1] 7=B[+1,+1]
        CHECK(classes[0] == std::set<int>{0});
        CHECK(classes[1] == std::set<int>{1, 2, 3});
        CHECK(classes[2] == std::set<int>{1, 2, 3});
        CHECK(classes[3] == std::set<int>{1, 2, 3});
        CHECK(classes[4] == std::set<int>{4, 5, 6});
        CHECK(classes[5] == std::set<int>{4, 5, 6});
        CHECK(classes[6] == std::set<int>{4, 5, 6});
        CHECK(classes[7] == std::set<int>{7});
    }
}

TEST_CASE("algebra names round-trip and accept signature forms") {
    CHECK(parse_algebra_name("quaternion") == AlgebraSpec{Family::Anticommutative, -1, -1});
    CHECK(parse_algebra_name("TESSARINE") == AlgebraSpec{Family::Commutative, -1, +1});
    CHECK(parse_algebra_name("A[-1,+1]") == AlgebraSpec{Family::Anticommutative, -1, +1});
    CHECK(parse_algebra_name("b[+1,-1]") == AlgebraSpec{Family::Commutative, +1, -1});
    CHECK(parse_algebra_name("B[1,1]") == AlgebraSpec{Family::Commutative, +1, +1});
    CHECK_FALSE(parse_algebra_name("octonion").has_value());
    CHECK_FALSE(parse_algebra_name("A[0,1]").has_value());
    for (const auto& spec : all_algebras()) {
        CHECK(parse_algebra_name(algebra_name(spec)) == spec);
        CHECK(parse_algebra_name(algebra_signature(spec)) == spec);
    }
    CHECK(algebra_signature(AlgebraSpec{Family::Anticommutative, -1, +1}) == "A[-1,+1]");
}
