#include <doctest.h>

#include <random>
#include <set>

#include "nbpencil/blocking.hpp"
#include "nbpencil/constructions.hpp"

using namespace nbp;

TEST_CASE("rational points of the first plane-pencil member") {
    FiniteField F2(2, 1);
    // y^2 + z^2 + zx over GF(2).
    HomogeneousForm C0(F2, 3, 2);
    C0.add_term({0, 2, 0}, F2.one());
    C0.add_term({0, 0, 2}, F2.one());
    C0.add_term({1, 0, 1}, F2.one());
    PointSet S = rational_points(C0);
    std::set<ProjPoint> expected{
        canonical_point({F2.one(), F2.zero(), F2.one()}),
        canonical_point({F2.zero(), F2.one(), F2.one()}),
        canonical_point({F2.one(), F2.zero(), F2.zero()}),
    };
    CHECK(S.members == expected);
    CHECK(S.size() == 3);  // q+1
}

TEST_CASE("rational points of the Hermitian curve over GF(4)") {
    FiniteField F4(2, 2);
    HomogeneousForm H(F4, 3, 3);
    H.add_term({3, 0, 0}, F4.one());
    H.add_term({0, 3, 0}, F4.one());
    H.add_term({0, 0, 3}, F4.one());
    CHECK(rational_points(H).size() == 9);
}

TEST_CASE("a power of a coordinate gives a full line") {
    for (long q : {2L, 3L, 5L}) {
        FiniteField F = FiniteField::parse(std::to_string(q));
        HomogeneousForm f(F, 3, 3);
        f.add_term({3, 0, 0}, F.one());
        PointSet S = rational_points(f);
        CHECK(static_cast<long>(S.size()) == q + 1);
        for (const auto& P : S.members) CHECK(P[0].is_zero());
    }
}

TEST_CASE("rational points are scale invariant") {
    FiniteField F(5, 1);
    HomogeneousForm f(F, 3, 2);
    f.add_term({2, 0, 0}, F.one());
    f.add_term({0, 1, 1}, F.from_int(3));
    for (const auto& lam : F.elements()) {
        if (lam.is_zero()) continue;
        CHECK(rational_points(f).members == rational_points(f.scaled(lam)).members);
    }
}

TEST_CASE("blocking decision") {
    FiniteField F3(3, 1);
    // A full line in P^2 blocks (two plane lines always meet).
    ProjLine L = enumerate_lines(2, F3)[0];
    PointSet S{F3, 2, {}};
    for (const auto& P : points_on_line(L)) S.members.insert(P);
    CHECK(is_blocking(S).blocking);

    // The empty set is nonblocking with the first line as witness.
    PointSet empty{F3, 2, {}};
    BlockingScan scan = is_blocking(empty);
    CHECK_FALSE(scan.blocking);
    CHECK(*scan.skew_witness == enumerate_lines(2, F3)[0]);

    // C_0 for q=2, d=2 is nonblocking; oracle tests all 7 lines directly.
    FiniteField F2(2, 1);
    HomogeneousForm C0(F2, 3, 2);
    C0.add_term({0, 2, 0}, F2.one());
    C0.add_term({0, 0, 2}, F2.one());
    C0.add_term({1, 0, 1}, F2.one());
    PointSet SC = rational_points(C0);
    bool oracle_blocking = true;
    for (const ProjLine& M : enumerate_lines(2, F2)) {
        bool met = false;
        for (const auto& P : points_on_line(M)) met = met || SC.contains(P);
        oracle_blocking = oracle_blocking && met;
    }
    CHECK_FALSE(oracle_blocking);
    CHECK_FALSE(is_blocking(SC).blocking);
}

TEST_CASE("classification") {
    FiniteField F3(3, 1);
    PointSet line_set{F3, 2, {}};
    for (const auto& P : points_on_line(enumerate_lines(2, F3)[2])) line_set.members.insert(P);
    BlockingVerdict v = classify(line_set);
    CHECK(v.status == BlockingStatus::trivial_blocking);
    REQUIRE(v.witness.has_value());
    for (const auto& P : points_on_line(*v.witness)) CHECK(line_set.contains(P));

    PointSet single{F3, 2, {canonical_point({F3.one(), F3.one(), F3.one()})}};
    CHECK(classify(single).status == BlockingStatus::nonblocking);

    // Hermitian curve over GF(4): nontrivial blocking with exactly q+sqrt(q)+1 points.
    FiniteField F4(2, 2);
    HomogeneousForm H(F4, 3, 3);
    H.add_term({3, 0, 0}, F4.one());
    H.add_term({0, 3, 0}, F4.one());
    H.add_term({0, 0, 3}, F4.one());
    PointSet SH = rational_points(H);
    BlockingVerdict vh = classify(SH);
    CHECK(vh.status == BlockingStatus::nontrivial_blocking);
    CHECK(SH.size() == 9);
}

TEST_CASE("small sets never block") {
    std::mt19937 rng(20240817);
    for (long q : {2L, 3L, 4L}) {
        FiniteField F = FiniteField::parse(std::to_string(q));
        auto points = enumerate_points(2, F);
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<std::size_t> size_dist(0, static_cast<std::size_t>(q));
            std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
            PointSet S{F, 2, {}};
            std::size_t target = size_dist(rng);
            while (S.members.size() < target) S.members.insert(points[pick(rng)]);
            CHECK_FALSE(is_blocking(S).blocking);
        }
    }
}

TEST_CASE("skew lines") {
    FiniteField F7(7, 1);
    HomogeneousForm fermat(F7, 3, 6);  // x^6 + y^6: sixth powers are {1}, so 1+1 != 0 off z=0's zeros
    fermat.add_term({6, 0, 0}, F7.one());
    fermat.add_term({0, 6, 0}, F7.one());
    ProjLine z0(std::vector<FieldElement>{F7.one(), F7.zero(), F7.zero()},
                std::vector<FieldElement>{F7.zero(), F7.one(), F7.zero()});
    auto sk = skew_lines(fermat);
    CHECK(std::find(sk.begin(), sk.end(), z0) != sk.end());

    // x^d contains the full line x=0, so no line is skew... except those missing the line.
    FiniteField F3(3, 1);
    HomogeneousForm cube(F3, 3, 3);
    cube.add_term({3, 0, 0}, F3.one());
    CHECK(skew_lines(cube).empty());
}

TEST_CASE("skew-line scan agrees with the blocking decision") {
    FiniteField F3(3, 1);
    ConstructionOutput out = plane_pencil(2, F3);
    for (const auto& [s, t] : out.members) {
        HomogeneousForm m = pencil_member(out.pencil, s, t);
        PointSet S = rational_points(m);
        BlockingScan scan = is_blocking(S);
        auto sk = skew_lines(m);
        CHECK(scan.blocking == sk.empty());
        if (!scan.blocking) {
            CHECK(*scan.skew_witness == sk.front());  // both report minimal enumeration index
            for (const auto& P : points_on_line(*scan.skew_witness)) CHECK_FALSE(S.contains(P));
        }
    }
}

TEST_CASE("every plane point lies on some member of any pencil") {
    // For each P, sF(P) - tG(P) = 0 is solvable with (s,t) != (0,0); hence no
    // two lines can jointly witness all members skew.
    for (long q : {2L, 3L}) {
        FiniteField F = FiniteField::parse(std::to_string(q));
        ConstructionOutput out = plane_pencil(2, F);
        for (const ProjPoint& P : enumerate_points(2, F)) {
            bool covered = false;
            for (const auto& [s, t] : out.members)
                covered = covered || pencil_member(out.pencil, s, t).evaluate(P).is_zero();
            CHECK(covered);
        }
    }
}
