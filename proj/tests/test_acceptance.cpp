// Acceptance gate: one pass/fail line per criterion; exit code = failures.

#include <excat/report.hpp>

#include "oracle_subcat.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace excat;

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
    UniversePtr u;
    ExactPtr ab;
};

Ctx make_chain(std::size_t n, std::size_t bound) {
    auto pr = preset_truncated_poly(2, n);
    Ctx c;
    c.u = Universe::build(pr.alg, pr.seeds, pr.seed_labels, bound);
    c.ab = ExactStructure::make_abelian(c.u);
    return c;
}

const std::vector<std::pair<std::size_t, std::size_t>> kPresets{{2, 2}, {3, 2}, {4, 1}};

oracle::Input oracle_input(const Universe& u) {
    oracle::Input in;
    in.nseeds = u.num_seeds();
    for (std::size_t i = 0; i < u.size(); ++i) in.objects.push_back(u.object(i).mult);
    return in;
}

std::vector<std::vector<std::size_t>> member_sets(const Lattice& l) {
    std::vector<std::vector<std::size_t>> out;
    for (auto& s : l.sets) out.push_back(s.members);
    return out;
}

bool clean(const CheckReport& r) { return !r.any_fail() && !r.any_inconclusive(); }

int failures = 0;

void criterion(int num, double budget_s, const std::function<bool(std::ostream&)>& body) {
    std::ostringstream detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > budget_s) {
        ok = false;
        detail << " OVER BUDGET " << budget_s << "s";
    }
    if (!ok) ++failures;
    std::cout << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " ("
              << std::fixed;
    std::cout.precision(1);
    std::cout << secs << "s)" << detail.str() << "\n"
              << std::defaultfloat;
}

std::vector<std::size_t> add_free_ids(const Universe& u) {
    // multiples of the free seed (the last chain seed M_n)
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k <= u.mult_bound(); ++k) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[u.num_seeds() - 1] = k;
        ids.push_back(*u.id_of(m));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace

int main() {
    // 1: exact-category axioms for split and abelian structures
    criterion(1, 3 * 2 * 60.0, [](std::ostream& out) {
        bool ok = true;
        for (auto [n, b] : kPresets) {
            auto c = make_chain(n, b);
            for (auto s : {ExactStructure::make_split(c.u), c.ab}) {
                auto t0 = Clock::now();
                auto rep = verify_exact_axioms(*s);
                double secs = std::chrono::duration<double>(Clock::now() - t0).count();
                bool good = clean(rep) && secs < 60.0;
                ok = ok && good;
                if (!good) out << " [n=" << n << " " << s->name() << "]";
            }
        }
        return ok;
    });

    // 2: Frobenius with proj = inj = add(free)
    criterion(2, 60.0, [](std::ostream& out) {
        bool ok = true;
        for (auto [n, b] : kPresets) {
            auto c = make_chain(n, b);
            auto fr = is_frobenius(*c.ab);
            auto free_ids = add_free_ids(*c.u);
            bool good = fr.frobenius && fr.projectives == free_ids && fr.injectives == free_ids;
            ok = ok && good;
            if (!good) out << " [n=" << n << "]";
        }
        return ok;
    });

    // 3: thick correspondence against the independent oracle
    criterion(3, 600.0, [](std::ostream& out) {
        bool ok = true;
        for (auto [n, b] : kPresets) {
            auto c = make_chain(n, b);
            auto q = QuotientContext::make(c.ab, is_frobenius(*c.ab).injectives);
            auto sc = SubcatContext::make(q);
            auto la = sc->enumerate_closed(SubcatKind::thick, Side::ambient);
            auto lq = sc->enumerate_closed(SubcatKind::thick, Side::quotient);
            auto in = oracle_input(*c.u);
            bool good =
                member_sets(la) == oracle::enumerate(in, oracle::Kind::thick,
                                                     oracle::Side::ambient) &&
                member_sets(lq) == oracle::enumerate(in, oracle::Kind::thick,
                                                     oracle::Side::quotient) &&
                clean(sc->verify_correspondence(SubcatKind::thick));
            if (n == 2) good = good && la.sets.size() == 2 && lq.sets.size() == 2;
            ok = ok && good;
            if (!good) out << " [n=" << n << "]";
            else out << " [n=" << n << ": " << la.sets.size() << " sets]";
        }
        return ok;
    });

    // 4: complete correspondence with hypothesis preconditions
    criterion(4, 600.0, [](std::ostream& out) {
        bool ok = true;
        for (auto [n, b] : kPresets) {
            auto c = make_chain(n, b);
            auto q = QuotientContext::make(c.ab, is_frobenius(*c.ab).injectives);
            bool pre = clean(q->is_factorization_admissible()) &&
                       clean(q->check_weak_five_lemma());
            auto sc = SubcatContext::make(q);
            auto in = oracle_input(*c.u);
            bool good = pre &&
                member_sets(sc->enumerate_closed(SubcatKind::complete, Side::ambient)) ==
                    oracle::enumerate(in, oracle::Kind::complete, oracle::Side::ambient) &&
                member_sets(sc->enumerate_closed(SubcatKind::complete, Side::quotient)) ==
                    oracle::enumerate(in, oracle::Kind::complete, oracle::Side::quotient) &&
                clean(sc->verify_correspondence(SubcatKind::complete));
            ok = ok && good;
            if (!good) out << " [n=" << n << (pre ? "" : " precondition") << "]";
        }
        return ok;
    });

    // 5: lemma suite — triangles, the zero lemma, and ideal bases
    criterion(5, 300.0, [](std::ostream& out) {
        bool ok = true;
        for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
            auto c = make_chain(n, 2);
            auto st = StableContext::make(c.ab);
            auto q = st->q_ptr();
            if (!clean(st->verify_sn_iff_triangle())) {
                ok = false;
                out << " [n=" << n << " sn_iff_triangle]";
            }
            for (std::size_t i = 0; i < c.u->size(); ++i) {
                auto zl = q->stable_zero_lemma(i);
                if (!zl.lemma_holds || !zl.converse_holds || zl.is_zero != zl.summand) {
                    ok = false;
                    out << " [n=" << n << " zero_lemma " << c.u->object(i).label << "]";
                }
            }
            // brute-force ideal: composites through every N-object
            const PrimeField& f = c.u->algebra().field();
            for (std::size_t x = 0; x < c.u->size() && ok; ++x)
                for (std::size_t y = 0; y < c.u->size() && ok; ++y) {
                    Mat span(f, 0, c.u->dim(y) * c.u->dim(x));
                    for (auto w : q->n_ids())
                        for (auto& a : c.u->hom(x, w))
                            for (auto& bmat : c.u->hom(w, y)) {
                                Mat comp = bmat.mul(a);
                                Mat row(f, 1, comp.entries().size());
                                for (std::size_t k = 0; k < comp.entries().size(); ++k)
                                    row.at(0, k) = comp.entries()[k];
                                span = span.vstack(row);
                            }
                    if (canonical_basis(span) != q->ideal(x, y)) {
                        ok = false;
                        out << " [n=" << n << " ideal " << c.u->object(x).label << "->"
                            << c.u->object(y).label << "]";
                    }
                }
        }
        return ok;
    });

    // 6: supporting propositions on the enumerated lattices
    criterion(6, 600.0, [](std::ostream& out) {
        bool ok = true;
        for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
            auto c = make_chain(n, 2);
            auto q = QuotientContext::make(c.ab, is_frobenius(*c.ab).injectives);
            auto sc = SubcatContext::make(q);
            if (!clean(sc->check_supporting_props())) {
                ok = false;
                out << " [n=" << n << "]";
            }
        }
        return ok;
    });

    // 7: Gorenstein layer on the self-injective and non-Gorenstein examples
    criterion(7, 300.0, [](std::ostream& out) {
        bool ok = true;
        auto c2 = make_chain(2, 2);
        for (std::size_t i = 0; i < c2.u->size(); ++i)
            if (!is_totally_reflexive(c2.u->object(i).mod, 2).verified()) {
                ok = false;
                out << " [x2 " << c2.u->object(i).label << " not reflexive]";
            }
        if (!clean(verify_gr_theorems(c2.u, 2))) {
            ok = false;
            out << " [x2 theorems]";
        }
        auto pxy = preset_xy_square(2);
        auto uxy = Universe::build(pxy.alg, pxy.seeds, pxy.seed_labels, 2);
        auto vk = is_totally_reflexive(uxy->object(*uxy->id_of({1, 0})).mod, 2);
        if (vk.verified() || vk.ext_m.failure != 1) {
            ok = false;
            out << " [xy simple]";
        }
        std::vector<std::size_t> gr;
        for (std::size_t i = 0; i < uxy->size(); ++i)
            if (is_totally_reflexive(uxy->object(i).mod, 2).verified()) gr.push_back(i);
        std::vector<std::size_t> add_r{*uxy->id_of({0, 0}), *uxy->id_of({0, 1}),
                                       *uxy->id_of({0, 2})};
        if (gr != add_r) {
            ok = false;
            out << " [xy G(R) != add(R)]";
        }
        if (!clean(verify_gr_theorems(uxy, 2))) {
            ok = false;
            out << " [xy theorems]";
        }
        return ok;
    });

    // 8: field linear algebra properties over random matrices
    criterion(8, 30.0, [](std::ostream& out) {
        bool ok = true;
        for (std::uint32_t p : {2u, 3u, 5u}) {
            PrimeField f(p);
            std::mt19937 rng(p * 1000003u);
            std::uniform_int_distribution<std::size_t> dn(1, 8);
            std::uniform_int_distribution<std::uint32_t> de(0, p - 1);
            for (int it = 0; it < 10000; ++it) {
                Mat a(f, dn(rng), dn(rng));
                for (auto& e : a.entries()) e = de(rng);
                std::size_t r = rank(a);
                if (r + nullspace(a).rows() != a.cols()) {
                    ok = false;
                    out << " [p=" << p << " rank-nullity]";
                    break;
                }
                auto rr = rref(a);
                if (rref(rr.R).R != rr.R) {
                    ok = false;
                    out << " [p=" << p << " rref idempotence]";
                    break;
                }
                // the canonical basis is invariant under span-preserving moves
                Mat mixed = a;
                for (std::size_t i = 0; i + 1 < a.rows(); ++i) {
                    Mat row = a.submatrix(i, 0, 1, a.cols()).scale(de(rng));
                    Mat next = a.submatrix(i + 1, 0, 1, a.cols());
                    mixed = mixed.vstack(row.add(next));
                }
                if (canonical_basis(mixed) != canonical_basis(a)) {
                    ok = false;
                    out << " [p=" << p << " canonical basis]";
                    break;
                }
            }
        }
        return ok;
    });

    // 9: byte-identical reports across two independent runs
    criterion(9, 300.0, [](std::ostream& out) {
        RunConfig cfg;
        cfg.preset = "xquot:2,2";
        auto render = [&cfg]() {
            auto c = make_chain(2, 2);
            auto split = ExactStructure::make_split(c.u);
            auto q = QuotientContext::make(c.ab, is_frobenius(*c.ab).injectives);
            auto sc = SubcatContext::make(q);
            auto thick = sc->enumerate_closed(SubcatKind::thick, Side::quotient);
            auto pxy = preset_xy_square(2);
            auto uxy = Universe::build(pxy.alg, pxy.seeds, pxy.seed_labels, 2);
            std::string bytes;
            bytes += report_json(cfg, "axioms", verify_exact_axioms(*c.ab)).dump(2);
            bytes += report_json(cfg, "axioms-split", verify_exact_axioms(*split)).dump(2);
            bytes += report_json(cfg, "correspondence",
                                 sc->verify_correspondence(SubcatKind::thick)).dump(2);
            bytes += report_json(cfg, "correspondence-complete",
                                 sc->verify_correspondence(SubcatKind::complete)).dump(2);
            bytes += lattice_json(*sc, thick).dump(2);
            bytes += sc->to_dot(thick);
            bytes += report_json(cfg, "gorenstein", verify_gr_theorems(c.u, 2)).dump(2);
            bytes += report_json(cfg, "gorenstein-xy", verify_gr_theorems(uxy, 2)).dump(2);
            bytes += report_markdown(cfg, "axioms", verify_exact_axioms(*c.ab));
            return bytes;
        };
        std::string first = render(), second = render();
        if (first != second) {
            out << " [reports differ]";
            return false;
        }
        out << " [" << first.size() << " bytes identical]";
        return true;
    });

    std::cout << (failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << " (" << (9 - failures)
              << "/9)\n";
    return failures;
}
