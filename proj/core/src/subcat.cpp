#include "excat/subcat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace excat {

namespace {

/// All in-bound componentwise-smaller multiplicity vectors: the direct
/// summands of a universe object (Krull-Schmidt).
template <typename Fn>
void for_each_summand(const Universe& u, const std::vector<std::size_t>& mult, Fn fn) {
    std::vector<std::size_t> m(mult.size(), 0);
    for (;;) {
        fn(*u.id_of(m));
        std::size_t i = m.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (m[i] < mult[i]) {
                ++m[i];
                done = false;
                break;
            }
            m[i] = 0;
        }
        if (done) return;
    }
}

} // namespace

SubcatPtr SubcatContext::make(QuotientPtr q) {
    auto ctx = std::shared_ptr<SubcatContext>(new SubcatContext());
    ctx->q_ = std::move(q);
    const Universe& u = *ctx->q_->universe();
    const ExactStructure& s = *ctx->q_->structure();

    ctx->cls_.resize(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        ctx->cls_[j] = j;
        for (std::size_t i = 0; i < j; ++i) {
            if (ctx->cls_[i] != i) continue;  // only class representatives
            auto r = ctx->q_->stably_isomorphic(i, j);
            if (!r) ctx->inconclusive_ = true;
            else if (*r) {
                ctx->cls_[j] = i;
                break;
            }
        }
    }

    std::set<std::array<std::size_t, 3>> amb;
    for (std::size_t x = 0; x < u.size(); ++x)
        for (std::size_t z = 0; z < u.size(); ++z) {
            const ConfCell& cell = s.cell(x, z);
            if (cell.inconclusive) ctx->inconclusive_ = true;
            for (auto mid : cell.middles) amb.insert({x, mid, z});
        }
    // split sequences A >-> A+B ->> B exist in every exact structure
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = 0; b < u.size(); ++b) {
            std::vector<std::size_t> m = u.object(a).mult;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += u.object(b).mult[i];
            auto id = u.id_of(m);
            if (!id) continue;
            if (s.kind() == StructKind::explicit_list) {
                auto ds = direct_sum({u.object(a).mod, u.object(b).mod});
                auto iso = u.iso_to_object(ds.sum, *id);
                Conflation c{{u.object(a).mod, u.object(*id).mod,
                              iso.mat.mul(ds.inclusions[0].mat)},
                             {u.object(*id).mod, u.object(b).mod,
                              ds.projections[1].mat.mul(inverse_of(iso).mat)}};
                if (!s.is_conflation(c)) continue;
            }
            amb.insert({a, *id, b});
        }
    ctx->amb_triples_.assign(amb.begin(), amb.end());

    std::set<std::array<std::size_t, 3>> quo;
    for (auto& t : ctx->amb_triples_)
        quo.insert({ctx->cls_[t[0]], ctx->cls_[t[1]], ctx->cls_[t[2]]});
    ctx->quo_triples_.assign(quo.begin(), quo.end());
    return ctx;
}

const std::vector<std::array<std::size_t, 3>>& SubcatContext::triples(Side side) const {
    return side == Side::ambient ? amb_triples_ : quo_triples_;
}

std::size_t SubcatContext::stable_class(std::size_t id) const { return cls_[id]; }

Subcategory SubcatContext::closure(const std::vector<std::size_t>& generators, SubcatKind kind,
                                   Side side) const {
    const Universe& u = *universe();
    std::vector<char> in(u.size(), 0);
    auto add = [&](std::size_t id) {
        if (side == Side::quotient) {
            for (std::size_t j = 0; j < u.size(); ++j)
                if (cls_[j] == cls_[id]) in[j] = 1;
        } else
            in[id] = 1;
    };
    add(u.zero_id());
    for (auto g : generators) add(g);
    auto& tri = triples(side);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& t : tri) {
            int cnt = (in[t[0]] ? 1 : 0) + (in[t[1]] ? 1 : 0) + (in[t[2]] ? 1 : 0);
            if (cnt != 2) continue;
            for (auto id : t)
                if (!in[id]) add(id);
            changed = true;
        }
        if (kind == SubcatKind::thick)
            for (std::size_t x = 0; x < u.size(); ++x) {
                if (!in[x]) continue;
                for_each_summand(u, u.object(x).mult, [&](std::size_t sm) {
                    if (!in[sm]) {
                        add(sm);
                        changed = true;
                    }
                });
            }
    }
    Subcategory out;
    out.side = side;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (in[i]) out.members.push_back(i);
    recompute_flags(out);
    return out;
}

SubcatViolation SubcatContext::is_complete(const Subcategory& d) const {
    const Universe& u = *universe();
    std::vector<char> in(u.size(), 0);
    for (auto m : d.members) in[m] = 1;
    if (!in[u.zero_id()])
        return {true, {u.zero_id(), u.zero_id(), u.zero_id()}, u.zero_id(),
                "missing the zero object"};
    if (d.side == Side::quotient)
        for (auto m : d.members)
            for (std::size_t j = 0; j < u.size(); ++j)
                if (cls_[j] == cls_[m] && !in[j])
                    return {true, {m, j, u.zero_id()}, j,
                            "not closed under stable isomorphism"};
    for (auto& t : triples(d.side)) {
        int cnt = (in[t[0]] ? 1 : 0) + (in[t[1]] ? 1 : 0) + (in[t[2]] ? 1 : 0);
        if (cnt != 2) continue;
        std::size_t missing = !in[t[0]] ? t[0] : (!in[t[1]] ? t[1] : t[2]);
        return {true, t, missing, "2-out-of-3 fails"};
    }
    return {};
}

SubcatViolation SubcatContext::is_thick(const Subcategory& d) const {
    auto v = is_complete(d);
    if (v.found) return v;
    const Universe& u = *universe();
    std::vector<char> in(u.size(), 0);
    for (auto m : d.members) in[m] = 1;
    SubcatViolation out;
    auto check = [&](std::size_t x, const std::vector<std::size_t>& mult) {
        for_each_summand(u, mult, [&](std::size_t sm) {
            if (!in[sm] && !out.found)
                out = {true, {x, sm, u.zero_id()}, sm, "missing a direct summand"};
        });
    };
    for (auto m : d.members) {
        check(m, u.object(m).mult);
        if (d.side == Side::quotient)
            // summands in the quotient are summands of X + N in the ambient
            for (auto n : q_->n_ids()) {
                std::vector<std::size_t> mult = u.object(m).mult;
                for (std::size_t i = 0; i < mult.size(); ++i)
                    mult[i] += u.object(n).mult[i];
                if (u.id_of(mult)) check(m, mult);
            }
        if (out.found) return out;
    }
    return out;
}

void SubcatContext::recompute_flags(Subcategory& s) const {
    const Universe& u = *universe();
    std::vector<char> in(u.size(), 0);
    for (auto m : s.members) in[m] = 1;
    s.contains_n = true;
    for (auto n : q_->n_ids())
        if (!in[n]) s.contains_n = false;
    s.extension_closed = true;
    for (auto& t : triples(s.side))
        if (in[t[0]] && in[t[2]] && !in[t[1]]) s.extension_closed = false;
    s.complete = !is_complete(s).found;
    s.thick = !is_thick(s).found;
    s.inconclusive = inconclusive_;
}

Lattice SubcatContext::enumerate_closed(SubcatKind kind, Side side,
                                        std::size_t max_sets) const {
    const Universe& u = *universe();
    Lattice lat;
    lat.kind = kind;
    lat.side = side;
    lat.inconclusive = inconclusive_;
    std::vector<std::size_t> base;
    if (side == Side::ambient) base = q_->n_ids();
    auto bottom = closure(base, kind, side);
    std::map<std::vector<std::size_t>, Subcategory> fam;
    std::deque<std::vector<std::size_t>> work;
    fam.emplace(bottom.members, bottom);
    work.push_back(bottom.members);
    while (!work.empty() && !lat.truncated) {
        auto cur = std::move(work.front());
        work.pop_front();
        for (std::size_t id = 0; id < u.size(); ++id) {
            if (std::binary_search(cur.begin(), cur.end(), id)) continue;
            auto gens = cur;
            gens.push_back(id);
            auto c = closure(gens, kind, side);
            if (fam.count(c.members)) continue;
            if (fam.size() >= max_sets) {
                lat.truncated = true;
                break;
            }
            work.push_back(c.members);
            auto key = c.members;
            fam.emplace(std::move(key), std::move(c));
        }
    }
    for (auto& [k, v] : fam) lat.sets.push_back(v);
    std::sort(lat.sets.begin(), lat.sets.end(), [](const Subcategory& a, const Subcategory& b) {
        return std::make_pair(a.members.size(), a.members) <
               std::make_pair(b.members.size(), b.members);
    });
    for (std::size_t i = 0; i < lat.sets.size(); ++i)
        for (std::size_t j = 0; j < lat.sets.size(); ++j) {
            if (i == j) continue;
            auto& a = lat.sets[i].members;
            auto& b = lat.sets[j].members;
            if (a.size() >= b.size() || !std::includes(b.begin(), b.end(), a.begin(), a.end()))
                continue;
            bool covering = true;
            for (std::size_t k = 0; k < lat.sets.size() && covering; ++k) {
                if (k == i || k == j) continue;
                auto& c = lat.sets[k].members;
                if (a.size() < c.size() && c.size() < b.size() &&
                    std::includes(c.begin(), c.end(), a.begin(), a.end()) &&
                    std::includes(b.begin(), b.end(), c.begin(), c.end()))
                    covering = false;
            }
            if (covering) lat.hasse.emplace_back(i, j);
        }
    return lat;
}

Subcategory SubcatContext::map_F(const Subcategory& d) const {
    for (auto n : q_->n_ids())
        if (!std::binary_search(d.members.begin(), d.members.end(), n))
            throw SpecError("map_F: the subcategory does not contain N");
    Subcategory out;
    out.side = Side::quotient;
    out.members = d.members;
    recompute_flags(out);
    return out;
}

Subcategory SubcatContext::map_G(const Subcategory& e) const {
    Subcategory out;
    out.side = Side::ambient;
    std::set<std::size_t> m(e.members.begin(), e.members.end());
    for (auto n : q_->n_ids()) m.insert(n);
    out.members.assign(m.begin(), m.end());
    recompute_flags(out);
    return out;
}

CheckReport SubcatContext::verify_correspondence(SubcatKind kind) const {
    CheckReport rep;
    if (kind == SubcatKind::complete) {
        auto fa = q_->is_factorization_admissible();
        auto w5 = q_->check_weak_five_lemma();
        rep.add("hypothesis_factorization_admissible", !fa.any_fail());
        rep.add("hypothesis_weak_five_lemma", !w5.any_fail());
        if (fa.any_fail() || w5.any_fail()) {
            rep.items.push_back(
                {"correspondence", "fail",
                 std::string("hypothesis failed: ") +
                     (fa.any_fail() ? "factorization admissibility" : "the weak five lemma")});
            return rep;
        }
    }
    auto la = enumerate_closed(kind, Side::ambient);
    auto lq = enumerate_closed(kind, Side::quotient);
    bool flagged = inconclusive_ || la.truncated || lq.truncated;
    std::map<std::vector<std::size_t>, std::size_t> qidx, aidx;
    for (std::size_t i = 0; i < lq.sets.size(); ++i) qidx[lq.sets[i].members] = i;
    for (std::size_t i = 0; i < la.sets.size(); ++i) aidx[la.sets[i].members] = i;

    bool wf_f = true, wf_g = true, gf = true, fg = true;
    std::string df, dg, dgf, dfg;
    std::vector<std::string> pairs;
    for (std::size_t i = 0; i < la.sets.size(); ++i) {
        auto fd = map_F(la.sets[i]);
        bool good = kind == SubcatKind::thick ? fd.thick : fd.complete;
        auto it = qidx.find(fd.members);
        if (!good || it == qidx.end()) {
            wf_f = false;
            if (df.empty()) df = "image of ambient set " + std::to_string(i);
            continue;
        }
        pairs.push_back("ambient " + std::to_string(i) + " <-> quotient " +
                        std::to_string(it->second) + " (" +
                        std::to_string(fd.members.size()) + " objects)");
        if (map_G(fd).members != la.sets[i].members) {
            gf = false;
            if (dgf.empty()) dgf = "G(F(ambient set " + std::to_string(i) + "))";
        }
    }
    for (std::size_t i = 0; i < lq.sets.size(); ++i) {
        auto ge = map_G(lq.sets[i]);
        bool good = kind == SubcatKind::thick ? ge.thick : ge.complete;
        if (!good || !ge.contains_n || !aidx.count(ge.members)) {
            wf_g = false;
            if (dg.empty()) dg = "image of quotient set " + std::to_string(i);
            continue;
        }
        if (map_F(ge).members != lq.sets[i].members) {
            fg = false;
            if (dfg.empty()) dfg = "F(G(quotient set " + std::to_string(i) + "))";
        }
    }
    auto push = [&](const std::string& name, bool ok, const std::string& det) {
        rep.items.push_back({name, ok ? (flagged ? "inconclusive" : "pass") : "fail", det});
    };
    push("f_well_defined", wf_f, df);
    push("g_well_defined", wf_g, dg);
    push("g_after_f_identity", gf, dgf);
    push("f_after_g_identity", fg, dfg);
    push("bijection_counts", la.sets.size() == lq.sets.size(),
         std::to_string(la.sets.size()) + " ambient vs " + std::to_string(lq.sets.size()) +
             " quotient");
    for (auto& p : pairs) rep.notes.push_back(p);
    if (flagged) rep.notes.push_back("verified modulo flagged cells");
    return rep;
}

CheckReport SubcatContext::check_supporting_props() const {
    const Universe& u = *universe();
    CheckReport rep;
    auto iso_closed = [&](const Subcategory& d, std::string& det) {
        std::vector<char> in(u.size(), 0);
        for (auto m : d.members) in[m] = 1;
        for (auto m : d.members)
            for (std::size_t j = 0; j < u.size(); ++j)
                if (cls_[j] == cls_[m] && !in[j]) {
                    det = u.object(j).label + " stably isomorphic to " + u.object(m).label;
                    return false;
                }
        return true;
    };
    auto qsummand_closed = [&](const Subcategory& d, std::string& det) {
        std::vector<char> in(u.size(), 0);
        for (auto m : d.members) in[m] = 1;
        for (auto m : d.members)
            for (auto n : q_->n_ids()) {
                std::vector<std::size_t> mult = u.object(m).mult;
                for (std::size_t i = 0; i < mult.size(); ++i)
                    mult[i] += u.object(n).mult[i];
                if (!u.id_of(mult)) continue;
                bool ok = true;
                for_each_summand(u, mult, [&](std::size_t sm) {
                    if (!in[sm]) ok = false;
                });
                if (!ok) {
                    det = "a stable summand of " + u.object(m).label + " is missing";
                    return false;
                }
            }
        return true;
    };

    auto thick = enumerate_closed(SubcatKind::thick, Side::ambient);
    bool sum_ok = true, iso_ok = true;
    std::string dsum, diso;
    for (auto& d : thick.sets) {
        std::string det;
        if (sum_ok && !qsummand_closed(d, det)) {
            sum_ok = false;
            dsum = det;
        }
        if (iso_ok && !iso_closed(d, det)) {
            iso_ok = false;
            diso = det;
        }
    }
    auto push = [&](const std::string& name, bool ok, const std::string& det) {
        rep.items.push_back(
            {name, ok ? (inconclusive_ ? "inconclusive" : "pass") : "fail", det});
    };
    push("thick_quotient_summand_closure", sum_ok, dsum);
    push("thick_quotient_iso_closure", iso_ok, diso);

    auto fa = q_->is_factorization_admissible();
    auto w5 = q_->check_weak_five_lemma();
    if (fa.any_fail() || w5.any_fail()) {
        rep.items.push_back({"complete_quotient_iso_closure", "inconclusive",
                             "hypotheses not satisfied"});
        return rep;
    }
    auto complete = enumerate_closed(SubcatKind::complete, Side::ambient);
    bool ciso_ok = true;
    std::string dciso;
    for (auto& d : complete.sets) {
        std::string det;
        if (ciso_ok && !iso_closed(d, det)) {
            ciso_ok = false;
            dciso = det;
        }
    }
    push("complete_quotient_iso_closure", ciso_ok, dciso);
    return rep;
}

std::string SubcatContext::to_dot(const Lattice& l) const {
    const Universe& u = *universe();
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < l.sets.size(); ++i) {
        std::vector<std::size_t> mx(u.num_seeds(), 0);
        for (auto m : l.sets[i].members)
            for (std::size_t s = 0; s < u.num_seeds(); ++s)
                mx[s] = std::max(mx[s], u.object(m).mult[s]);
        out << "  n" << i << " [label=\"" << u.object(*u.id_of(mx)).label << " ("
            << l.sets[i].members.size() << ")\"];\n";
    }
    for (auto& [a, b] : l.hasse) out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace excat
