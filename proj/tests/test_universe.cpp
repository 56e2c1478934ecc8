#include <doctest.h>

#include <excat/universe.hpp>

using namespace excat;

TEST_CASE("truncated polynomial preset seeds") {
    auto pr2 = preset_truncated_poly(2, 2);
    REQUIRE(pr2.seeds.size() == 2);
    CHECK(pr2.seeds[0]->dim() == 1);
    CHECK(pr2.seeds[1]->dim() == 2);

    auto pr4 = preset_truncated_poly(2, 4);
    REQUIRE(pr4.seeds.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(pr4.seeds[i]->dim() == i + 1);

    auto pr31 = preset_truncated_poly(3, 1);
    REQUIRE(pr31.seeds.size() == 1);
    CHECK(pr31.seeds[0]->dim() == 1);
}

TEST_CASE("universe enumeration and ordering") {
    auto pr = preset_truncated_poly(2, 2);
    auto u1 = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 1);
    CHECK(u1->size() == 4);  // 2^2 multiplicity vectors
    CHECK(u1->object(0).mod->dim() == 0);
    CHECK(u1->object(0).label == "0");

    auto u2 = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 2);
    CHECK(u2->size() == 9);
    // lexicographic: (0,0) < (0,1) < (0,2) < (1,0) < ...
    CHECK(u2->object(1).mult == std::vector<std::size_t>{0, 1});
    CHECK(u2->object(3).mult == std::vector<std::size_t>{1, 0});
    CHECK(u2->object(8).mult == std::vector<std::size_t>{2, 2});
    CHECK(u2->object(8).mod->dim() == 6);
    CHECK(u2->object(4).label == "M1+M2");

    CHECK(u2->id_of({1, 1}) == std::size_t(4));
    CHECK_FALSE(u2->id_of({3, 0}).has_value());
}

TEST_CASE("duplicate or decomposable seeds rejected") {
    auto pr = preset_truncated_poly(2, 2);
    CHECK_THROWS_AS(Universe::build(pr.alg, {pr.seeds[0], pr.seeds[0]}, {}, 1), SpecError);
    auto dbl = direct_sum({pr.seeds[0], pr.seeds[1]}).sum;
    CHECK_THROWS_AS(Universe::build(pr.alg, {dbl}, {}, 1), SpecError);
}

TEST_CASE("classification round-trips, chain algebra fast path") {
    for (std::size_t n : {2u, 3u, 4u}) {
        auto pr = preset_truncated_poly(2, n);
        auto u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 2);
        for (std::size_t id = 0; id < u->size(); ++id) {
            auto mult = u->classify(u->object(id).mod);
            REQUIRE(mult.has_value());
            CHECK(*mult == u->object(id).mult);
            CHECK(u->resolve(u->object(id).mod) == id);
            auto iso = u->iso_to_object(u->object(id).mod, id);
            CHECK(is_morphism(iso));
            CHECK(is_isomorphism(iso));
        }
    }
}

TEST_CASE("classification of scrambled modules") {
    auto pr = preset_truncated_poly(2, 3);
    auto u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 2);
    // M2 + M1 in the other order still classifies as (1,1,0)
    auto m = direct_sum({pr.seeds[1], pr.seeds[0]}).sum;
    auto mult = u->classify(m);
    REQUIRE(mult.has_value());
    CHECK(*mult == std::vector<std::size_t>{1, 1, 0});
    auto id = u->resolve(m);
    REQUIRE(id.has_value());
    auto iso = u->iso_to_object(m, *id);
    CHECK(is_isomorphism(iso));
    CHECK(is_morphism(iso));
    // above-bound module resolves to nothing but still classifies
    auto big = direct_sum({pr.seeds[0], pr.seeds[0], pr.seeds[0]}).sum;
    CHECK_FALSE(u->resolve(big).has_value());
    CHECK(u->classify(big) == std::vector<std::size_t>{3, 0, 0});
}

TEST_CASE("xy square preset universe (generic classification path)") {
    auto pr = preset_xy_square(2);
    auto u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 2);
    CHECK(u->size() == 9);
    for (std::size_t id = 0; id < u->size(); ++id) {
        CHECK(u->resolve(u->object(id).mod) == id);
    }
    // the 2-dim module k[x]/(x^2) pulled back along y->0 is not in the universe
    PrimeField f(2);
    Mat shift(f, 2, 2);
    shift.at(1, 0) = 1;
    auto odd = Module::make(pr.alg, {Mat::identity(f, 2), shift, Mat::zero(f, 2, 2)});
    CHECK_FALSE(u->classify(odd).has_value());
}

TEST_CASE("hom memoization agrees with direct computation") {
    auto pr = preset_truncated_poly(2, 2);
    auto u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, 2);
    for (std::size_t x = 0; x < u->size(); ++x)
        for (std::size_t y = 0; y < u->size(); ++y) {
            auto& h = u->hom(x, y);
            CHECK(h.size() == hom_space(*u->object(x).mod, *u->object(y).mod).size());
            // hom additivity in the first argument
        }
    // dim Hom(A+B, C) = dim Hom(A,C) + dim Hom(B,C)
    CHECK(u->hom(*u->id_of({1, 1}), 1).size() ==
          u->hom(*u->id_of({1, 0}), 1).size() + u->hom(*u->id_of({0, 1}), 1).size());
}
