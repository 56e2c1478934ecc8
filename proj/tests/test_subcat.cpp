#include <doctest.h>

#include <excat/subcat.hpp>

#include "oracle_subcat.hpp"

using namespace excat;

namespace {

struct Fixture {
    UniversePtr u;
    ExactPtr ab;
    QuotientPtr q;
    SubcatPtr ctx;
    std::size_t sid, pid, ssid, ppid;

    explicit Fixture(int n = 2, std::size_t bound = 2) {
        auto pr = preset_truncated_poly(2, std::size_t(n));
        u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, bound);
        ab = ExactStructure::make_abelian(u);
        q = QuotientContext::make(ab, is_frobenius(*ab).injectives);
        ctx = SubcatContext::make(q);
        if (n == 2) {
            sid = *u->id_of({1, 0});
            pid = *u->id_of({0, 1});
            ssid = *u->id_of({2, 0});
            ppid = *u->id_of({0, 2});
        }
    }

    oracle::Input oracle_input() const {
        oracle::Input in;
        in.nseeds = u->num_seeds();
        for (std::size_t i = 0; i < u->size(); ++i) in.objects.push_back(u->object(i).mult);
        return in;
    }
};

std::vector<std::vector<std::size_t>> member_sets(const Lattice& l) {
    std::vector<std::vector<std::size_t>> out;
    for (auto& s : l.sets) out.push_back(s.members);
    return out;
}

} // namespace

TEST_CASE("sequence triples match the Littlewood-Richardson oracle") {
    for (auto [n, b] : {std::pair<int, int>{2, 2}, {3, 2}, {4, 1}}) {
        Fixture fx(n, std::size_t(b));
        auto in = fx.oracle_input();
        std::set<std::array<std::size_t, 3>> engine(fx.ctx->triples(Side::ambient).begin(),
                                                    fx.ctx->triples(Side::ambient).end());
        std::set<std::array<std::size_t, 3>> naive;
        for (auto& t : oracle::triples(in, oracle::Side::ambient)) naive.insert(t);
        CHECK(engine == naive);
    }
}

TEST_CASE("closure examples") {
    Fixture fx;
    auto zero = fx.ctx->closure({}, SubcatKind::thick, Side::ambient);
    CHECK(zero.members == std::vector<std::size_t>{fx.u->zero_id()});
    CHECK(zero.complete);
    CHECK(zero.thick);

    // P is an extension of S by S, so S generates everything
    auto whole = fx.ctx->closure({fx.sid}, SubcatKind::thick, Side::ambient);
    CHECK(whole.members.size() == fx.u->size());

    auto addp = fx.ctx->closure({fx.pid}, SubcatKind::thick, Side::ambient);
    CHECK(addp.members == std::vector<std::size_t>{fx.u->zero_id(), fx.pid, fx.ppid});
    CHECK(addp.thick);
    CHECK(addp.contains_n);
}

TEST_CASE("closure is a closure operator") {
    Fixture fx;
    std::vector<std::vector<std::size_t>> gens{{}, {fx.sid}, {fx.pid}, {fx.ssid, fx.pid}};
    for (auto kind : {SubcatKind::complete, SubcatKind::thick})
        for (auto& g : gens) {
            auto c = fx.ctx->closure(g, kind, Side::ambient);
            for (auto x : g)  // extensive
                CHECK(std::binary_search(c.members.begin(), c.members.end(), x));
            auto c2 = fx.ctx->closure(c.members, kind, Side::ambient);
            CHECK(c2.members == c.members);  // idempotent
            auto bigger = g;
            bigger.push_back(fx.pid);
            auto cb = fx.ctx->closure(bigger, kind, Side::ambient);
            CHECK(std::includes(cb.members.begin(), cb.members.end(), c.members.begin(),
                                c.members.end()));  // monotone
        }
}

TEST_CASE("is_complete and is_thick with witnesses") {
    Fixture fx;
    Subcategory all;
    all.side = Side::ambient;
    for (std::size_t i = 0; i < fx.u->size(); ++i) all.members.push_back(i);
    CHECK_FALSE(fx.ctx->is_complete(all).found);
    CHECK_FALSE(fx.ctx->is_thick(all).found);

    Subcategory zero;
    zero.members = {fx.u->zero_id()};
    CHECK_FALSE(fx.ctx->is_complete(zero).found);
    CHECK_FALSE(fx.ctx->is_thick(zero).found);

    // {0, S, S+S}: the conflation S >-> P ->> S exposes the missing P
    Subcategory bad;
    bad.members = {fx.u->zero_id(), fx.sid, fx.ssid};
    auto v = fx.ctx->is_complete(bad);
    CHECK(v.found);
    CHECK(v.missing == fx.pid);
    CHECK(v.triple == std::array<std::size_t, 3>{fx.sid, fx.pid, fx.sid});

    // complete but not thick: everything except it misses summands after
    // dropping one; use add(P) plus S+P, whose summand S is absent
    Subcategory nt;
    nt.side = Side::quotient;
    nt.members = {fx.u->zero_id(), fx.sid};
    auto tv = fx.ctx->is_thick(nt);
    CHECK(tv.found);  // not stable-iso closed (S+P missing)
}

TEST_CASE("lattices over GF(2)[x]/(x^2): exactly two on both sides") {
    Fixture fx;
    auto la = fx.ctx->enumerate_closed(SubcatKind::thick, Side::ambient);
    auto lq = fx.ctx->enumerate_closed(SubcatKind::thick, Side::quotient);
    REQUIRE(la.sets.size() == 2);
    REQUIRE(lq.sets.size() == 2);
    CHECK(la.sets[0].members == std::vector<std::size_t>({fx.u->zero_id(), fx.pid, fx.ppid}));
    CHECK(la.sets[1].members.size() == fx.u->size());
    CHECK(lq.sets[0].members == la.sets[0].members);  // the stable zero class
    CHECK(la.hasse == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK_FALSE(la.truncated);
}

TEST_CASE("lattice enumeration matches the oracle on all presets") {
    for (auto [n, b] : {std::pair<int, int>{2, 2}, {3, 2}, {4, 1}}) {
        Fixture fx(n, std::size_t(b));
        auto in = fx.oracle_input();
        for (auto kind : {SubcatKind::thick, SubcatKind::complete})
            for (auto side : {Side::ambient, Side::quotient}) {
                auto ok = kind == SubcatKind::thick ? oracle::Kind::thick
                                                    : oracle::Kind::complete;
                auto os = side == Side::ambient ? oracle::Side::ambient
                                                : oracle::Side::quotient;
                auto engine = member_sets(fx.ctx->enumerate_closed(kind, side));
                auto naive = oracle::enumerate(in, ok, os);
                INFO("n=", n, " kind=", int(kind), " side=", int(side));
                CHECK(engine == naive);
            }
    }
}

TEST_CASE("thick implies complete (family inclusion)") {
    Fixture fx(3, 2);
    for (auto side : {Side::ambient, Side::quotient}) {
        auto thick = member_sets(fx.ctx->enumerate_closed(SubcatKind::thick, side));
        auto complete = member_sets(fx.ctx->enumerate_closed(SubcatKind::complete, side));
        for (auto& t : thick)
            CHECK(std::find(complete.begin(), complete.end(), t) != complete.end());
    }
}

TEST_CASE("maps F and G") {
    Fixture fx;
    auto la = fx.ctx->enumerate_closed(SubcatKind::thick, Side::ambient);
    auto whole = la.sets[1];
    auto fw = fx.ctx->map_F(whole);
    CHECK(fw.side == Side::quotient);
    CHECK(fw.members == whole.members);
    CHECK(fw.thick);

    auto addp = la.sets[0];
    auto fp = fx.ctx->map_F(addp);
    CHECK(fp.members == addp.members);  // the stable zero class
    CHECK(fp.thick);

    Subcategory no_n;
    no_n.members = {fx.u->zero_id(), fx.sid, fx.ssid};
    CHECK_THROWS_AS(fx.ctx->map_F(no_n), SpecError);

    Subcategory zero_q;
    zero_q.side = Side::quotient;
    zero_q.members = {fx.u->zero_id(), fx.pid, fx.ppid};
    auto g = fx.ctx->map_G(zero_q);
    CHECK(g.side == Side::ambient);
    CHECK(g.members == zero_q.members);  // add N
    CHECK(g.contains_n);
}

TEST_CASE("correspondence theorems") {
    for (auto [n, b] : {std::pair<int, int>{2, 2}, {3, 2}, {4, 1}}) {
        Fixture fx(n, std::size_t(b));
        for (auto kind : {SubcatKind::thick, SubcatKind::complete}) {
            auto rep = fx.ctx->verify_correspondence(kind);
            for (auto& item : rep.items) {
                INFO("n=", n, " kind=", int(kind), " ", item.name, ": ", item.detail);
                CHECK(item.status == "pass");
            }
        }
    }
}

TEST_CASE("correspondence refuses when the hypotheses fail") {
    Fixture fx;
    // N = add(S) is not factorization admissible
    auto qs = QuotientContext::make(fx.ab, {fx.u->zero_id(), fx.sid, fx.ssid});
    auto ctx = SubcatContext::make(qs);
    auto rep = ctx->verify_correspondence(SubcatKind::complete);
    bool refused = false;
    for (auto& item : rep.items)
        if (item.name == "correspondence" && item.status == "fail" &&
            item.detail.find("factorization") != std::string::npos)
            refused = true;
    CHECK(refused);
}

TEST_CASE("supporting propositions") {
    for (auto [n, b] : {std::pair<int, int>{2, 2}, {3, 2}}) {
        Fixture fx(n, std::size_t(b));
        auto rep = fx.ctx->check_supporting_props();
        for (auto& item : rep.items) {
            INFO("n=", n, " ", item.name, ": ", item.detail);
            CHECK(item.status == "pass");
        }
    }
}

TEST_CASE("degenerate N = whole universe collapses both sides") {
    Fixture fx;
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < fx.u->size(); ++i) all.push_back(i);
    auto qw = QuotientContext::make(fx.ab, all);
    auto ctx = SubcatContext::make(qw);
    CHECK(ctx->enumerate_closed(SubcatKind::thick, Side::ambient).sets.size() == 1);
    CHECK(ctx->enumerate_closed(SubcatKind::thick, Side::quotient).sets.size() == 1);
    auto rep = ctx->verify_correspondence(SubcatKind::thick);
    for (auto& item : rep.items) CHECK(item.status == "pass");
}

TEST_CASE("dot export is deterministic and well-formed") {
    Fixture fx;
    auto l = fx.ctx->enumerate_closed(SubcatKind::thick, Side::ambient);
    auto d1 = fx.ctx->to_dot(l);
    auto d2 = fx.ctx->to_dot(fx.ctx->enumerate_closed(SubcatKind::thick, Side::ambient));
    CHECK(d1 == d2);
    CHECK(d1.find("digraph lattice") != std::string::npos);
    CHECK(d1.find("n0 -> n1") != std::string::npos);
}
