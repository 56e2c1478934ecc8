#include <doctest.h>

#include <excat/module.hpp>

using namespace excat;

namespace {

std::shared_ptr<const Algebra> dual_numbers() {
    return std::make_shared<Algebra>(algebra_truncated_poly(2, 2));
}

// S: the simple module, x acts by 0.
ModulePtr simple(std::shared_ptr<const Algebra> a) {
    PrimeField f = a->field();
    return Module::make(a, {Mat::identity(f, 1), Mat::zero(f, 1, 1)});
}

} // namespace

TEST_CASE("module validation") {
    auto a = dual_numbers();
    PrimeField f = a->field();
    CHECK(simple(a)->dim() == 1);
    auto reg = Module::regular(a);
    CHECK(reg->dim() == 2);
    // x acting by identity violates x^2 = 0
    CHECK_THROWS_AS(Module::make(a, {Mat::identity(f, 1), Mat::identity(f, 1)}), SpecError);
}

TEST_CASE("hom spaces over GF(2)[x]/(x^2)") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);
    CHECK(hom_space(*s, *s).size() == 1);
    CHECK(hom_space(*p, *p).size() == 2);  // End(P) = the algebra itself
    CHECK(hom_space(*s, *p).size() == 1);
    CHECK(hom_space(*p, *s).size() == 1);
    for (auto& m : hom_space(*s, *p)) CHECK(is_morphism({s, p, m}));
}

TEST_CASE("compose and the socle-to-top zero composite") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);
    auto sp = hom_space(*s, *p);
    auto ps = hom_space(*p, *s);
    REQUIRE(sp.size() == 1);
    REQUIRE(ps.size() == 1);
    Morphism up{s, p, sp[0]};
    Morphism down{p, s, ps[0]};
    CHECK_FALSE(up.is_zero());
    CHECK_FALSE(down.is_zero());
    CHECK(compose(down, up).is_zero());  // S -> P -> S dies through the radical

    CHECK(compose(Morphism::identity(p), up).mat == up.mat);
    CHECK(compose(up, Morphism::zero(p, s)).is_zero());
}

TEST_CASE("direct sum block structure") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);
    auto ds = direct_sum({s, p});
    CHECK(ds.sum->dim() == 3);
    for (std::size_t i = 0; i < 2; ++i) {
        auto pi = compose(ds.projections[i], ds.inclusions[i]);
        CHECK(pi.mat == Mat::identity(a->field(), pi.src->dim()));
    }
    CHECK(compose(ds.projections[0], ds.inclusions[1]).is_zero());

    auto with_zero = direct_sum({s, Module::zero(a)});
    auto iso = are_isomorphic(with_zero.sum, s);
    REQUIRE(iso.has_value());
    CHECK(is_isomorphism(*iso));
}

TEST_CASE("isomorphism testing") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);
    CHECK(is_isomorphism(Morphism::identity(p)));
    CHECK_FALSE(is_isomorphism(Morphism::zero(p, p)));
    CHECK_FALSE(is_isomorphism({s, p, hom_space(*s, *p)[0]}));

    auto self = are_isomorphic(p, p);
    REQUIRE(self.has_value());
    CHECK(is_isomorphism(*self));
    CHECK(compose(inverse_of(*self), *self).mat == Mat::identity(a->field(), 2));

    CHECK_FALSE(are_isomorphic(s, p).has_value());
    // P vs S + S: same dimension, never isomorphic (x acts nontrivially on P)
    auto ss = direct_sum({s, s}).sum;
    CHECK_FALSE(are_isomorphic(p, ss).has_value());
}

TEST_CASE("submodule and quotient") {
    auto a = dual_numbers();
    auto p = Module::regular(a);
    PrimeField f = a->field();
    // socle of P = span(x) = e2
    Mat soc(f, 1, 2);
    soc.at(0, 1) = 1;
    auto sub = submodule(p, soc);
    CHECK(sub.sub->dim() == 1);
    CHECK(is_morphism(sub.incl));
    CHECK(sub.sub->action(1).is_zero());  // x kills the socle

    auto q = quotient_module(p, soc);
    CHECK(q.quot->dim() == 1);
    CHECK(is_morphism(q.proj));
    CHECK(q.quot->action(1).is_zero());

    // non-invariant subspace rejected
    Mat top(f, 1, 2);
    top.at(0, 0) = 1;
    CHECK_THROWS_AS(submodule(p, top), SpecError);
}

TEST_CASE("Krull-Schmidt decomposition") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);

    CHECK(indecompose(Module::zero(a)).empty());
    CHECK(is_indecomposable(p));  // End(P) has 4 elements, no splitting idempotent
    CHECK(is_indecomposable(s));

    auto parts = indecompose(direct_sum({s, p}).sum);
    REQUIRE(parts.size() == 2);
    std::size_t dims = 0;
    for (auto& su : parts) {
        dims += su.part->dim();
        CHECK(compose(su.proj, su.incl).mat == Mat::identity(a->field(), su.part->dim()));
        CHECK(is_morphism(su.incl));
        CHECK(is_morphism(su.proj));
    }
    CHECK(dims == 3);

    // partition property: sum of the parts is isomorphic to the input
    auto big = direct_sum({p, p, s}).sum;
    auto dec = indecompose(big);
    std::vector<ModulePtr> mods;
    for (auto& su : dec) mods.push_back(su.part);
    auto re = direct_sum(mods).sum;
    CHECK(are_isomorphic(big, re).has_value());
}

TEST_CASE("solve_morphism with constraints and slack") {
    auto a = dual_numbers();
    auto s = simple(a);
    auto p = Module::regular(a);
    PrimeField f = a->field();

    // unconstrained = hom space
    auto all = solve_morphism(*p, *p, {});
    CHECK(all.solvable);
    CHECK(all.basis.size() == 2);
    CHECK(all.count(2, 1u << 16) == 4);

    // a section of the projective cover P ->> S would split off S; none exists
    Mat soc(f, 1, 2);
    soc.at(0, 1) = 1;
    auto q = quotient_module(p, soc);
    auto section = solve_morphism(*s, *p, {{q.proj.mat, Mat::identity(f, 1), Mat::identity(f, 1)}});
    CHECK_FALSE(section.solvable);
    auto up = submodule(p, soc);
    auto retract = solve_morphism(*p, *up.sub,
                                  {{Mat::identity(f, 1), up.incl.mat, Mat::identity(f, 1)}});
    CHECK_FALSE(retract.solvable);  // socle does not split off P

    // slack: same retract equation modulo all of Hom becomes solvable
    std::vector<Mat> slack = {Mat::identity(f, 1)};
    auto lax = solve_morphism(*p, *up.sub,
                              {{Mat::identity(f, 1), up.incl.mat, Mat::identity(f, 1)}},
                              {slack});
    CHECK(lax.solvable);
}
