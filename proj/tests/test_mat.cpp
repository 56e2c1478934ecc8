#include <doctest.h>

#include <excat/mat.hpp>

#include <random>

using namespace excat;

namespace {

Mat from(PrimeField f, std::size_t r, std::size_t c, std::vector<Fe> v) {
    Mat m(f, r, c);
    m.entries() = std::move(v);
    return m;
}

Mat random_mat(PrimeField f, std::mt19937& rng, std::size_t maxdim = 6) {
    std::uniform_int_distribution<std::size_t> dd(1, maxdim);
    std::uniform_int_distribution<std::uint32_t> de(0, f.p() - 1);
    Mat m(f, dd(rng), dd(rng));
    for (auto& e : m.entries()) e = de(rng);
    return m;
}

} // namespace

TEST_CASE("rref basic cases") {
    PrimeField f2(2), f3(3);
    auto id2 = Mat::identity(f2, 2);
    auto r = rref(id2);
    CHECK(r.R == id2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    auto rep = from(f2, 2, 2, {1, 1, 1, 1});
    auto rr = rref(rep);
    CHECK(rr.R == from(f2, 2, 2, {1, 1, 0, 0}));
    CHECK(rr.pivots == std::vector<std::size_t>{0});
    CHECK(rank(rep) == 1);

    // all-ones over GF(3): hand elimination gives a single pivot row [1 1 1]
    Mat ones(f3, 3, 3);
    for (auto& e : ones.entries()) e = 1;
    auto r3 = rref(ones);
    CHECK(r3.pivots == std::vector<std::size_t>{0});
    CHECK(rank(ones) == 1);
    CHECK(r3.R.at(0, 0) == 1);
    CHECK(r3.R.at(0, 1) == 1);
    CHECK(r3.R.at(0, 2) == 1);
}

TEST_CASE("solve basic cases") {
    PrimeField f2(2);
    auto id2 = Mat::identity(f2, 2);
    auto s = solve(id2, {1, 0});
    REQUIRE(s.has_value());
    CHECK(s->x0 == std::vector<Fe>{1, 0});
    CHECK(s->nullbasis.rows() == 0);

    auto z = Mat::zero(f2, 2, 2);
    auto s2 = solve(z, {0, 0});
    REQUIRE(s2.has_value());
    CHECK(s2->x0 == std::vector<Fe>{0, 0});
    CHECK(s2->nullbasis == Mat::identity(f2, 2));

    auto a = from(f2, 1, 2, {1, 1});
    auto s3 = solve(a, {1});
    REQUIRE(s3.has_value());
    // enumeration oracle: solutions of x+y=1 are {10, 01}; affine line x0 + span{11}
    CHECK(a.apply(s3->x0) == std::vector<Fe>{1});
    REQUIRE(s3->nullbasis.rows() == 1);
    CHECK(s3->nullbasis == from(f2, 1, 2, {1, 1}));

    CHECK_FALSE(solve(from(f2, 2, 1, {0, 0}), {1, 0}).has_value());
}

TEST_CASE("subspace operations") {
    PrimeField f2(2);
    auto e1 = from(f2, 1, 2, {1, 0});
    auto e2 = from(f2, 1, 2, {0, 1});
    CHECK(subspace_sum(e1, e2) == Mat::identity(f2, 2));
    CHECK(subspace_intersection(e1, e2).rows() == 0);

    CHECK(quotient_complement(Mat::identity(f2, 2), 2).rows() == 0);

    auto diag = from(f2, 1, 2, {1, 1});
    auto q = quotient_complement(diag, 2);
    REQUIRE(q.rows() == 1);  // dimension count 2 - 1 = 1
    CHECK_FALSE(subspace_member(diag, {q.at(0, 0), q.at(0, 1)}));

    CHECK(subspace_member(diag, {1, 1}));
    CHECK(subspace_contains(Mat::identity(f2, 2), diag));
    CHECK_FALSE(subspace_contains(diag, e1));
}

TEST_CASE("random matrix properties over p in {2,3,5}") {
    std::mt19937 rng(20240817);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (int it = 0; it < 400; ++it) {
            Mat a = random_mat(f, rng);
            // rank-nullity
            CHECK(rank(a) + nullspace(a).rows() == a.cols());
            // rref idempotence
            auto r = rref(a);
            CHECK(rref(r.R).R == r.R);
            // nullspace vectors are solutions
            Mat ns = nullspace(a);
            for (std::size_t i = 0; i < ns.rows(); ++i) {
                std::vector<Fe> v(a.cols());
                for (std::size_t j = 0; j < a.cols(); ++j) v[j] = ns.at(i, j);
                for (Fe x : a.apply(v)) CHECK(x == 0);
            }
            // solve returns a genuine solution
            std::vector<Fe> x(a.cols());
            std::uniform_int_distribution<std::uint32_t> de(0, p - 1);
            for (auto& e : x) e = de(rng);
            auto b = a.apply(x);
            auto s = solve(a, b);
            REQUIRE(s.has_value());
            CHECK(a.apply(s->x0) == b);
            // canonicity: a row-scrambled basis spans the same canonical space
            Mat scr = a;
            if (scr.rows() > 1) {
                Mat extra = scr.vstack(scr);  // duplicate rows, same span
                CHECK(canonical_basis(scr) == canonical_basis(extra));
            }
        }
    }
}

TEST_CASE("mul matches schoolbook across fields") {
    std::mt19937 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (int it = 0; it < 100; ++it) {
            Mat a = random_mat(f, rng);
            Mat b(f, a.cols(), 1 + (rng() % 5));
            std::uniform_int_distribution<std::uint32_t> de(0, p - 1);
            for (auto& e : b.entries()) e = de(rng);
            Mat c = a.mul(b);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t k = 0; k < b.cols(); ++k) {
                    std::uint64_t acc = 0;
                    for (std::size_t j = 0; j < a.cols(); ++j)
                        acc += std::uint64_t(a.at(i, j)) * b.at(j, k);
                    CHECK(c.at(i, k) == f.reduce(acc));
                }
        }
    }
}

TEST_CASE("zassenhaus intersection vs membership oracle over GF(2)") {
    std::mt19937 rng(99);
    PrimeField f(2);
    for (int it = 0; it < 200; ++it) {
        Mat a = random_mat(f, rng, 4);
        Mat b(f, 1 + (rng() % 4), a.cols());
        for (auto& e : b.entries()) e = rng() & 1;
        Mat inter = subspace_intersection(a, b);
        // every intersection vector lies in both spans
        for (std::size_t i = 0; i < inter.rows(); ++i) {
            std::vector<Fe> v(inter.cols());
            for (std::size_t j = 0; j < inter.cols(); ++j) v[j] = inter.at(i, j);
            CHECK(subspace_member(a, v));
            CHECK(subspace_member(b, v));
        }
        // dim formula: dim(A) + dim(B) = dim(A+B) + dim(A cap B)
        CHECK(rank(a) + rank(b) == subspace_sum(a, b).rows() + inter.rows());
    }
}
