#include "excat/quotient.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace excat {

namespace {

constexpr std::uint64_t kComboCap = 4096;    // class-space enumerations
constexpr std::uint64_t kWitnessBudget = 256; // conflation witnesses per cell
constexpr std::uint64_t kBruteCap = 4096;    // hom-space brute-force searches

std::uint64_t pow_capped(std::uint64_t b, std::size_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (v > cap) return cap + 1;
        v *= b;
    }
    return v;
}

Mat unvec(const PrimeField& f, std::size_t rows, std::size_t cols, const std::vector<Fe>& v,
          std::size_t off = 0) {
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) m.entries()[i] = v[off + i];
    return m;
}

std::size_t first_nonzero(const Mat& ech, std::size_t row) {
    for (std::size_t c = 0; c < ech.cols(); ++c)
        if (ech.at(row, c) != 0) return c;
    return ech.cols();
}

/// Reduce v modulo the row space of an echelon basis.
std::vector<Fe> reduce_mod(const Mat& ech, std::vector<Fe> v) {
    const PrimeField& f = ech.field();
    for (std::size_t r = 0; r < ech.rows(); ++r) {
        std::size_t p = first_nonzero(ech, r);
        if (p == ech.cols() || v[p] == 0) continue;
        Fe c = f.mul(v[p], f.inv(ech.at(r, p)));
        for (std::size_t j = 0; j < ech.cols(); ++j) v[j] = f.sub(v[j], f.mul(c, ech.at(r, j)));
    }
    return v;
}

/// Canonical basis of a complement of `sub` inside `whole` (pre: sub within
/// whole's span).
Mat relative_complement(const Mat& sub, const Mat& whole) {
    Mat rows(whole.field(), 0, whole.cols());
    for (std::size_t r = 0; r < whole.rows(); ++r) {
        std::vector<Fe> v(whole.entries().begin() + r * whole.cols(),
                          whole.entries().begin() + (r + 1) * whole.cols());
        v = reduce_mod(sub, std::move(v));
        Mat row(whole.field(), 1, whole.cols());
        row.entries() = std::move(v);
        rows = rows.vstack(row);
    }
    return canonical_basis(rows);
}

/// Coordinates of v in an echelon basis given as vectorized matrices;
/// pre: v lies in the span.
std::vector<Fe> coords_in(const std::vector<Mat>& basis, const std::vector<Fe>& v) {
    std::vector<Fe> c(basis.size(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::size_t p = 0;
        while (p < basis[k].entries().size() && basis[k].entries()[p] == 0) ++p;
        if (p < v.size()) c[k] = v[p];
    }
    return c;
}

/// Enumerate coefficient vectors over GF(p) for `n` basis elements, up to
/// `cap` combinations; fn returns false to stop (found). Returns true when the
/// enumeration was exhaustive.
bool for_each_combo(std::size_t n, std::uint32_t p, std::uint64_t cap,
                    const std::function<bool(const std::vector<Fe>&)>& fn) {
    std::uint64_t total = pow_capped(p, n, cap);
    bool exhaustive = total <= cap;
    std::uint64_t limit = exhaustive ? total : cap;
    std::vector<Fe> coeff(n, 0);
    for (std::uint64_t code = 0; code < limit; ++code) {
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < n; ++i) {
            coeff[i] = Fe(rest % p);
            rest /= p;
        }
        if (!fn(coeff)) return exhaustive;
    }
    return exhaustive;
}

std::vector<Mat> mats_of_rows(const Mat& rows, std::size_t r, std::size_t c) {
    std::vector<Mat> out;
    for (std::size_t i = 0; i < rows.rows(); ++i)
        out.push_back(unvec(rows.field(), r, c, rows.entries(), i * rows.cols()));
    return out;
}

} // namespace

// ---- QuotientContext ---------------------------------------------------------

struct QuotientContext::Caches {
    std::map<std::pair<std::size_t, std::size_t>, Mat> ideal;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<int, Mat>> iso;  // -1/0/1
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::vector<Fe>, std::vector<Fe>>,
             std::optional<bool>>
        sn;
    std::vector<int> seed_zero;  // -1 unset
    std::map<std::size_t, std::optional<Morphism>> env_mono, cov_epi;
};

QuotientPtr QuotientContext::make(ExactPtr s, std::vector<std::size_t> n_ids) {
    const Universe& u = *s->universe();
    std::sort(n_ids.begin(), n_ids.end());
    n_ids.erase(std::unique(n_ids.begin(), n_ids.end()), n_ids.end());
    auto q = std::shared_ptr<QuotientContext>(new QuotientContext());
    q->s_ = std::move(s);
    q->n_ = std::move(n_ids);
    q->cache_ = std::make_shared<Caches>();
    if (q->n_.empty() || q->n_[0] != u.zero_id())
        throw SpecError("quotient: N must contain the zero object");
    for (auto a : q->n_)
        for (auto b : q->n_) {
            std::vector<std::size_t> m = u.object(a).mult;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += u.object(b).mult[i];
            auto id = u.id_of(m);
            if (id && !std::binary_search(q->n_.begin(), q->n_.end(), *id))
                throw SpecError("quotient: N not closed under direct sums: " +
                                u.object(a).label + " + " + u.object(b).label);
        }
    std::vector<bool> seen(u.num_seeds(), false);
    for (auto n : q->n_)
        for (std::size_t i = 0; i < u.num_seeds(); ++i)
            if (u.object(n).mult[i] && !seen[i]) {
                seen[i] = true;
                q->gen_seeds_.push_back(i);
            }
    std::sort(q->gen_seeds_.begin(), q->gen_seeds_.end());
    return q;
}

bool QuotientContext::in_n(std::size_t id) const {
    return std::binary_search(n_.begin(), n_.end(), id);
}

bool QuotientContext::n_summand_closed() const {
    const Universe& u = *universe();
    for (auto n : n_) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        for (;;) {  // all componentwise-smaller multiplicity vectors
            if (!in_n(*u.id_of(m))) return false;
            std::size_t i = m.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (m[i] < u.object(n).mult[i]) {
                    ++m[i];
                    done = false;
                    break;
                }
                m[i] = 0;
            }
            if (done) break;
        }
    }
    return true;
}

const Mat& QuotientContext::ideal(std::size_t x, std::size_t y) const {
    auto key = std::make_pair(x, y);
    auto it = cache_->ideal.find(key);
    if (it != cache_->ideal.end()) return it->second;
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    std::size_t len = u.dim(y) * u.dim(x);
    Mat rows(f, 0, len);
    for (auto g : gen_seeds_) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[g] = 1;
        std::size_t gid = *u.id_of(m);
        for (auto& a : u.hom(x, gid))
            for (auto& b : u.hom(gid, y)) {
                Mat comp = b.mul(a);
                Mat row(f, 1, len);
                row.entries() = comp.entries();
                rows = rows.vstack(row);
            }
    }
    return cache_->ideal.emplace(key, canonical_basis(rows)).first->second;
}

std::vector<Mat> QuotientContext::stable_hom(std::size_t x, std::size_t y) const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    std::size_t len = u.dim(y) * u.dim(x);
    Mat homrows(f, 0, len);
    for (auto& h : u.hom(x, y)) {
        Mat row(f, 1, len);
        row.entries() = h.entries();
        homrows = homrows.vstack(row);
    }
    Mat comp = relative_complement(ideal(x, y), homrows);
    return mats_of_rows(comp, u.dim(y), u.dim(x));
}

Mat QuotientContext::stable_reduce(std::size_t x, std::size_t y, const Mat& f) const {
    const Universe& u = *universe();
    auto v = reduce_mod(ideal(x, y), f.entries());
    return unvec(f.field(), u.dim(y), u.dim(x), v);
}

bool QuotientContext::stable_equal(std::size_t x, std::size_t y, const Mat& f,
                                   const Mat& g) const {
    return stable_reduce(x, y, f) == stable_reduce(x, y, g);
}

bool QuotientContext::stably_zero(std::size_t x) const {
    const Universe& u = *universe();
    Mat id = Mat::identity(u.algebra().field(), u.dim(x));
    return subspace_member(ideal(x, x), id.entries());
}

bool QuotientContext::stable_is_iso(std::size_t x, std::size_t y, const Mat& f) const {
    const Universe& u = *universe();
    if (u.dim(x) == 0 && u.dim(y) == 0) return true;
    if (u.dim(x) == 0) return stably_zero(y);
    if (u.dim(y) == 0) return stably_zero(x);
    const PrimeField& fld = u.algebra().field();
    // simultaneous two-sided stable inverse g: gf = 1 mod I(X,X), fg = 1 mod I(Y,Y)
    std::vector<MatConstraint> cons;
    cons.push_back({Mat::identity(fld, u.dim(x)), f, Mat::identity(fld, u.dim(x))});
    cons.push_back({f, Mat::identity(fld, u.dim(y)), Mat::identity(fld, u.dim(y))});
    std::vector<std::vector<Mat>> slack;
    slack.push_back(mats_of_rows(ideal(x, x), u.dim(x), u.dim(x)));
    slack.push_back(mats_of_rows(ideal(y, y), u.dim(y), u.dim(y)));
    return solve_morphism(*u.object(y).mod, *u.object(x).mod, cons, slack).solvable;
}

std::optional<Mat> QuotientContext::stable_iso_witness(std::size_t x, std::size_t y) const {
    auto tri = stably_isomorphic(x, y);
    if (!tri || !*tri) return std::nullopt;
    return cache_->iso.at({x, y}).second;
}

std::optional<bool> QuotientContext::stably_isomorphic(std::size_t x, std::size_t y) const {
    auto key = std::make_pair(x, y);
    auto it = cache_->iso.find(key);
    if (it != cache_->iso.end()) {
        if (it->second.first < 0) return std::nullopt;
        return it->second.first == 1;
    }
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    if (cache_->seed_zero.empty()) {
        cache_->seed_zero.resize(u.num_seeds());
        for (std::size_t i = 0; i < u.num_seeds(); ++i) {
            std::vector<std::size_t> m(u.num_seeds(), 0);
            m[i] = 1;
            cache_->seed_zero[i] = stably_zero(*u.id_of(m)) ? 1 : 0;
        }
    }
    auto strip = [&](std::size_t id) {
        std::vector<std::size_t> m = u.object(id).mult;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (cache_->seed_zero[i]) m[i] = 0;
        return m;
    };
    auto memo = [&](int state, Mat wit) -> std::optional<bool> {
        cache_->iso.emplace(key, std::make_pair(state, std::move(wit)));
        if (state < 0) return std::nullopt;
        return state == 1;
    };
    if (strip(x) == strip(y)) {
        // identity on the shared non-vanishing part is a stable isomorphism
        Mat wit = Mat::zero(f, u.dim(y), u.dim(x));
        std::size_t xoff = 0, yoff = 0;
        for (std::size_t i = 0; i < u.num_seeds(); ++i) {
            std::size_t d = u.seed(i)->dim();
            std::size_t mx = u.object(x).mult[i], my = u.object(y).mult[i];
            if (!cache_->seed_zero[i])
                for (std::size_t k = 0; k < mx; ++k)
                    for (std::size_t r = 0; r < d; ++r)
                        wit.at(yoff + k * d + r, xoff + k * d + r) = 1;
            xoff += mx * d;
            yoff += my * d;
        }
        if (stable_is_iso(x, y, wit)) return memo(1, std::move(wit));
        return memo(-1, Mat(f, 0, 0));
    }
    // a stable inverse pair gives gf = id - h with h through some N0 in add N,
    // so X | Y + N0; every indecomposable summand of N0 is stably zero, hence
    // by Krull-Schmidt the non-vanishing multiplicities agree -- they do not
    return memo(0, Mat(f, 0, 0));
}

QuotientContext::ZeroLemma QuotientContext::stable_zero_lemma(std::size_t x) const {
    const Universe& u = *universe();
    ZeroLemma out;
    out.is_zero = stably_zero(x);
    out.summand = true;
    for (std::size_t i = 0; i < u.num_seeds(); ++i) {
        if (!u.object(x).mult[i]) continue;
        bool covered = false;
        for (auto n : n_)
            if (u.object(n).mult[i]) {
                covered = true;
                break;
            }
        if (!covered) out.summand = false;
    }
    out.lemma_holds = !out.is_zero || out.summand;
    out.converse_holds = !out.summand || out.is_zero;
    return out;
}

namespace {

/// Linear search for (a, b, c) with b f = f' a and c g = g' b modulo the
/// ideals, then stable-iso tests on class representatives of the solution
/// space.
struct SeqMatcher {
    const QuotientContext& q;
    const Universe& u;
    const PrimeField& f;

    bool match(const QuotientContext::StableSeq& seq, std::size_t x2, std::size_t mid,
               std::size_t z2, const Conflation& c, bool& inconclusive) const {
        auto& ha = u.hom(seq.x, x2);
        auto& hb = u.hom(seq.y, mid);
        auto& hc = u.hom(seq.z, z2);
        auto s1 = mats_of_rows(q.ideal(seq.x, mid), u.dim(mid), u.dim(seq.x));
        auto s2 = mats_of_rows(q.ideal(seq.y, z2), u.dim(z2), u.dim(seq.y));
        std::size_t e0 = u.dim(mid) * u.dim(seq.x), e1 = u.dim(z2) * u.dim(seq.y);
        std::size_t na = ha.size(), nb = hb.size(), nc = hc.size();
        Mat a(f, e0 + e1, na + nb + nc + s1.size() + s2.size());
        Fe neg = f.neg(1);
        auto put = [&](std::size_t col, std::size_t off, const Mat& m, Fe sign) {
            for (std::size_t i = 0; i < m.entries().size(); ++i)
                a.at(off + i, col) = f.add(a.at(off + i, col), f.mul(sign, m.entries()[i]));
        };
        std::size_t col = 0;
        for (auto& e : ha) put(col++, 0, c.f.mat.mul(e), neg);
        for (auto& e : hb) {
            put(col, 0, e.mul(seq.f), 1);
            put(col, e0, c.g.mat.mul(e), neg);
            ++col;
        }
        for (auto& e : hc) put(col++, e0, e.mul(seq.g), 1);
        for (auto& m : s1) put(col++, 0, m, neg);
        for (auto& m : s2) put(col++, e0, m, neg);
        Mat sol = nullspace(a);
        Mat w = canonical_basis(sol.submatrix(0, 0, sol.rows(), na + nb + nc));
        // quotient the solutions by blockwise ideal directions
        Mat blk(f, 0, na + nb + nc);
        auto embed = [&](const Mat& idl, const std::vector<Mat>& basis, std::size_t off) {
            for (std::size_t r = 0; r < idl.rows(); ++r) {
                std::vector<Fe> v(idl.entries().begin() + r * idl.cols(),
                                  idl.entries().begin() + (r + 1) * idl.cols());
                auto co = coords_in(basis, v);
                Mat row(f, 1, na + nb + nc);
                for (std::size_t k = 0; k < co.size(); ++k) row.at(0, off + k) = co[k];
                blk = blk.vstack(row);
            }
        };
        embed(q.ideal(seq.x, x2), ha, 0);
        embed(q.ideal(seq.y, mid), hb, na);
        embed(q.ideal(seq.z, z2), hc, na + nb);
        Mat reps = relative_complement(subspace_intersection(w, blk), w);
        bool found = false;
        bool exhaustive = for_each_combo(reps.rows(), f.p(), kComboCap, [&](const std::vector<Fe>& co) {
            std::vector<Fe> v(na + nb + nc, 0);
            for (std::size_t k = 0; k < co.size(); ++k)
                if (co[k])
                    for (std::size_t j = 0; j < v.size(); ++j)
                        v[j] = f.add(v[j], f.mul(co[k], reps.at(k, j)));
            auto build = [&](const std::vector<Mat>& basis, std::size_t off, std::size_t r,
                             std::size_t cdim) {
                Mat m = Mat::zero(f, r, cdim);
                for (std::size_t k = 0; k < basis.size(); ++k)
                    if (v[off + k]) m = m.add(basis[k].scale(v[off + k]));
                return m;
            };
            Mat am = build(ha, 0, u.dim(x2), u.dim(seq.x));
            Mat bm = build(hb, na, u.dim(mid), u.dim(seq.y));
            Mat cm = build(hc, na + nb, u.dim(z2), u.dim(seq.z));
            if (q.stable_is_iso(seq.x, x2, am) && q.stable_is_iso(seq.y, mid, bm) &&
                q.stable_is_iso(seq.z, z2, cm)) {
                found = true;
                return false;
            }
            return true;
        });
        if (!found && !exhaustive) inconclusive = true;
        return found;
    }
};

} // namespace

std::optional<bool> QuotientContext::sn_membership(const StableSeq& seq) const {
    auto key = std::make_tuple(seq.x, seq.y, seq.z,
                               stable_reduce(seq.x, seq.y, seq.f).entries(),
                               stable_reduce(seq.y, seq.z, seq.g).entries());
    auto it = cache_->sn.find(key);
    if (it != cache_->sn.end()) return it->second;
    const Universe& u = *universe();
    SeqMatcher matcher{*this, u, u.algebra().field()};
    bool inconclusive = false;
    std::optional<bool> result;
    for (std::size_t x2 = 0; x2 < u.size() && !result; ++x2) {
        auto tx = stably_isomorphic(seq.x, x2);
        if (!tx) {
            inconclusive = true;
            continue;
        }
        if (!*tx) continue;
        for (std::size_t z2 = 0; z2 < u.size() && !result; ++z2) {
            auto tz = stably_isomorphic(seq.z, z2);
            if (!tz) {
                inconclusive = true;
                continue;
            }
            if (!*tz) continue;
            // middles outside the universe are not objects of the category;
            // only a capped class enumeration is inconclusive
            if (s_->cell(x2, z2).inconclusive) inconclusive = true;
            std::uint64_t budget = kWitnessBudget;
            s_->for_each_conflation(x2, z2, [&](const Conflation& c, std::size_t mid) {
                if (budget-- == 0) {
                    inconclusive = true;
                    return false;
                }
                auto ty = stably_isomorphic(seq.y, mid);
                if (!ty) {
                    inconclusive = true;
                    return true;
                }
                if (!*ty) return true;
                if (matcher.match(seq, x2, mid, z2, c, inconclusive)) {
                    result = true;
                    return false;
                }
                return true;
            });
        }
    }
    if (!result) result = inconclusive ? std::optional<bool>() : std::optional<bool>(false);
    cache_->sn.emplace(std::move(key), result);
    return result;
}

CheckReport QuotientContext::check_weak_five_lemma() const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    CheckReport rep;
    // when every N-generator is S-projective, any conflation deflating onto a
    // stably-zero object splits, so (f, 0) lies in S_N exactly when f is a
    // stable isomorphism; dually for S-injective generators and (0, g)
    bool n_proj = true, n_inj = true;
    for (auto g : gen_seeds_) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[g] = 1;
        std::size_t gid = *u.id_of(m);
        if (!is_s_projective(*s_, gid)) n_proj = false;
        if (!is_s_injective(*s_, gid)) n_inj = false;
    }
    bool ok_i = true, ok_ii = true, inconclusive = false, capped_cells = false;
    std::string det_i, det_ii;
    for (std::size_t x = 0; x < u.size(); ++x)
        for (std::size_t z = 0; z < u.size(); ++z) {
            const ConfCell& cell = s_->cell(x, z);
            if (cell.inconclusive) capped_cells = true;
            auto consider = [&](const std::pair<std::size_t, Conflation>& r) {
                std::size_t mid = r.first;
                // (i): a map to an S_N sequence ending in 0 with the first two
                // components isomorphisms forces the third object to vanish
                if (!stably_zero(z)) {
                    std::optional<bool> pre;
                    if (n_proj)
                        pre = stable_is_iso(x, mid, r.second.f.mat);
                    else
                        pre = sn_membership(
                            {x, mid, u.zero_id(), r.second.f.mat, Mat::zero(f, 0, u.dim(mid))});
                    if (!pre) inconclusive = true;
                    else if (*pre && ok_i) {
                        ok_i = false;
                        det_i = "conflation " + u.object(x).label + " >-> " +
                                u.object(mid).label + " ->> " + u.object(z).label;
                    }
                }
                // (ii): dually with the first object 0
                if (!stably_zero(x)) {
                    std::optional<bool> pre;
                    if (n_inj)
                        pre = stable_is_iso(mid, z, r.second.g.mat);
                    else
                        pre = sn_membership(
                            {u.zero_id(), mid, z, Mat::zero(f, u.dim(mid), 0), r.second.g.mat});
                    if (!pre) inconclusive = true;
                    else if (*pre && ok_ii) {
                        ok_ii = false;
                        det_ii = "conflation " + u.object(x).label + " >-> " +
                                 u.object(mid).label + " ->> " + u.object(z).label;
                    }
                }
            };
            for (auto& r : cell.reps) consider(r);
            for (auto& r : cell.basis_reps) consider(r);
        }
    auto push = [&](const std::string& name, bool ok, const std::string& det) {
        CheckItem item{name, ok ? (inconclusive ? "inconclusive" : "pass") : "fail", det};
        rep.items.push_back(std::move(item));
    };
    push("w5l_clause_i", ok_i, det_i);
    push("w5l_clause_ii", ok_ii, det_ii);
    rep.notes.push_back(
        "sequences sampled per cell: one conflation per middle plus the extension-class basis");
    if (capped_cells)
        rep.notes.push_back("some extension-class enumerations were capped; "
                            "only the sampled representatives were checked");
    return rep;
}

namespace {

const std::optional<Morphism>& envelope_into_n(const QuotientContext& q, std::size_t x,
                                               std::map<std::size_t, std::optional<Morphism>>& memo,
                                               const std::vector<std::size_t>& gen_seeds,
                                               bool mono_side) {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    const Universe& u = *q.universe();
    const PrimeField& f = u.algebra().field();
    ModulePtr xm = u.object(x).mod;
    std::vector<ModulePtr> parts;
    std::vector<Mat> maps;
    for (auto g : gen_seeds) {
        ModulePtr gm = u.seed(g);
        for (auto& h : hom_space(mono_side ? *xm : *gm, mono_side ? *gm : *xm)) {
            parts.push_back(gm);
            maps.push_back(h);
        }
    }
    std::optional<Morphism> out;
    if (!parts.empty() && xm->dim() > 0) {
        auto ds = direct_sum(parts);
        if (mono_side) {
            Mat m = Mat::zero(f, ds.sum->dim(), xm->dim());
            for (std::size_t i = 0; i < parts.size(); ++i)
                m = m.add(ds.inclusions[i].mat.mul(maps[i]));
            Morphism cand{xm, ds.sum, std::move(m)};
            if (rank(cand.mat) == xm->dim() && q.structure()->is_admissible_mono(cand))
                out = std::move(cand);
        } else {
            Mat m = Mat::zero(f, xm->dim(), ds.sum->dim());
            for (std::size_t i = 0; i < parts.size(); ++i)
                m = m.add(maps[i].mul(ds.projections[i].mat));
            Morphism cand{ds.sum, xm, std::move(m)};
            if (rank(cand.mat) == xm->dim() && q.structure()->is_admissible_epi(cand))
                out = std::move(cand);
        }
    }
    return memo.emplace(x, std::move(out)).first->second;
}

} // namespace

CheckReport QuotientContext::is_factorization_admissible() const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    CheckReport rep;
    rep.add("n_summand_closed", n_summand_closed());
    rep.add("n_sum_closed", true, "verified at construction (in-bound sums)");

    auto factors_after = [&](const Morphism& alpha, const Mat& fm, std::size_t y) {
        // beta with beta . alpha = f
        return solve_morphism(*alpha.dst, *u.object(y).mod,
                              {{Mat::identity(f, u.dim(y)), alpha.mat, fm}})
            .solvable;
    };
    auto factors_before = [&](const Morphism& beta, const Mat& fm, std::size_t x) {
        // alpha with beta . alpha = f
        return solve_morphism(*u.object(x).mod, *beta.src,
                              {{beta.mat, Mat::identity(f, u.dim(x)), fm}})
            .solvable;
    };

    bool ok = true, inconclusive = false;
    std::string detail;
    for (std::size_t x = 0; x < u.size() && ok; ++x)
        for (std::size_t y = 0; y < u.size() && ok; ++y) {
            auto basis = mats_of_rows(ideal(x, y), u.dim(y), u.dim(x));
            for (auto& fm : basis) {
                bool witnessed = false, capped = false;
                auto& env = envelope_into_n(*this, x, cache_->env_mono, gen_seeds_, true);
                if (env && factors_after(*env, fm, y)) witnessed = true;
                if (!witnessed) {
                    auto& cov = envelope_into_n(*this, y, cache_->cov_epi, gen_seeds_, false);
                    if (cov && factors_before(*cov, fm, x)) witnessed = true;
                }
                // canonical in-bound candidates from the conflation table
                for (std::size_t o = 0; o < u.size() && !witnessed; ++o) {
                    for (auto& r : s_->cell(x, o).reps)
                        if (in_n(r.first) && factors_after(r.second.f, fm, y)) {
                            witnessed = true;
                            break;
                        }
                    if (witnessed) break;
                    for (auto& r : s_->cell(o, y).reps)
                        if (in_n(r.first) && factors_before(r.second.g, fm, x)) {
                            witnessed = true;
                            break;
                        }
                }
                // bounded brute force over single N-objects
                for (auto n : n_) {
                    if (witnessed) break;
                    ModulePtr nm = u.object(n).mod;
                    auto& hxn = u.hom(x, n);
                    if (pow_capped(f.p(), hxn.size(), kBruteCap) <= kBruteCap) {
                        for_each_combo(hxn.size(), f.p(), kBruteCap, [&](const std::vector<Fe>& co) {
                            Mat m = Mat::zero(f, u.dim(n), u.dim(x));
                            for (std::size_t k = 0; k < co.size(); ++k)
                                if (co[k]) m = m.add(hxn[k].scale(co[k]));
                            Morphism cand{u.object(x).mod, nm, std::move(m)};
                            if (rank(cand.mat) == u.dim(x) && s_->is_admissible_mono(cand) &&
                                factors_after(cand, fm, y)) {
                                witnessed = true;
                                return false;
                            }
                            return true;
                        });
                    } else
                        capped = true;
                    if (witnessed) break;
                    auto& hny = u.hom(n, y);
                    if (pow_capped(f.p(), hny.size(), kBruteCap) <= kBruteCap) {
                        for_each_combo(hny.size(), f.p(), kBruteCap, [&](const std::vector<Fe>& co) {
                            Mat m = Mat::zero(f, u.dim(y), u.dim(n));
                            for (std::size_t k = 0; k < co.size(); ++k)
                                if (co[k]) m = m.add(hny[k].scale(co[k]));
                            Morphism cand{nm, u.object(y).mod, std::move(m)};
                            if (rank(cand.mat) == u.dim(y) && s_->is_admissible_epi(cand) &&
                                factors_before(cand, fm, x)) {
                                witnessed = true;
                                return false;
                            }
                            return true;
                        });
                    } else
                        capped = true;
                }
                if (!witnessed) {
                    if (capped) inconclusive = true;
                    else {
                        ok = false;
                        detail = "no admissible factorization for an ideal morphism " +
                                 u.object(x).label + " -> " + u.object(y).label;
                        break;
                    }
                }
            }
        }
    CheckItem item{"factorizations", ok ? (inconclusive ? "inconclusive" : "pass") : "fail",
                   detail};
    rep.items.push_back(std::move(item));
    rep.notes.push_back(
        "factorization witnesses may pass through add-N objects above the multiplicity bound");
    return rep;
}

// ---- StableContext -----------------------------------------------------------

struct StableContext::Caches {
    std::map<std::size_t, SuspensionData> susp;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Mat>> t_basis;
};

StablePtr StableContext::make(ExactPtr s) {
    auto fr = is_frobenius(*s);
    if (!fr.frobenius)
        throw SpecError("stable context requires a Frobenius structure");
    auto ctx = std::shared_ptr<StableContext>(new StableContext());
    ctx->s_ = s;
    ctx->q_ = QuotientContext::make(s, fr.injectives);
    ctx->inj_ = fr.injectives;
    const Universe& u = *s->universe();
    std::sort(ctx->inj_.begin(), ctx->inj_.end(), [&](std::size_t a, std::size_t b) {
        return std::make_pair(u.dim(a), a) < std::make_pair(u.dim(b), b);
    });
    ctx->cache_ = std::make_shared<Caches>();
    return ctx;
}

const SuspensionData& StableContext::suspension(std::size_t x) const {
    auto it = cache_->susp.find(x);
    if (it != cache_->susp.end()) return it->second;
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    ModulePtr xm = u.object(x).mod;
    if (u.dim(x) == 0) {
        SuspensionData d{u.zero_id(), Morphism::identity(xm), Morphism::identity(xm)};
        return cache_->susp.emplace(x, std::move(d)).first->second;
    }
    // canonical in-universe choice: injectives by (dim, id), coefficients in
    // odometer order
    for (auto i : inj_) {
        if (u.dim(i) < u.dim(x)) continue;
        auto& homs = u.hom(x, i);
        std::optional<SuspensionData> got;
        for_each_combo(homs.size(), f.p(), kBruteCap, [&](const std::vector<Fe>& co) {
            Mat m = Mat::zero(f, u.dim(i), u.dim(x));
            for (std::size_t k = 0; k < co.size(); ++k)
                if (co[k]) m = m.add(homs[k].scale(co[k]));
            Morphism mono{xm, u.object(i).mod, std::move(m)};
            if (rank(mono.mat) != u.dim(x) || !s_->is_admissible_mono(mono)) return true;
            auto coker = cokernel(mono);
            auto tid = u.resolve(coker.dst);
            if (!tid) return true;
            auto conj = u.iso_to_object(coker.dst, *tid);
            got = SuspensionData{
                *tid, mono, {mono.dst, u.object(*tid).mod, conj.mat.mul(coker.mat)}};
            return false;
        });
        if (got) return cache_->susp.emplace(x, std::move(*got)).first->second;
    }
    // blockwise: the sum of the seed suspensions
    std::vector<std::size_t> txmult(u.num_seeds(), 0);
    std::vector<ModulePtr> iparts, tparts;
    std::vector<const SuspensionData*> seed_susp;
    for (std::size_t i = 0; i < u.num_seeds(); ++i) {
        if (!u.object(x).mult[i]) continue;
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[i] = 1;
        std::size_t sid = *u.id_of(m);
        if (sid == x)
            throw SpecError("suspension: no admissible mono from " + u.object(x).label +
                            " into an injective within the universe");
        const SuspensionData& sd = suspension(sid);
        for (std::size_t k = 0; k < u.object(x).mult[i]; ++k) {
            iparts.push_back(sd.mono.dst);
            tparts.push_back(u.object(sd.tx).mod);
            seed_susp.push_back(&sd);
        }
        for (std::size_t j = 0; j < u.num_seeds(); ++j)
            txmult[j] += u.object(x).mult[i] * u.object(sd.tx).mult[j];
    }
    auto tid = u.id_of(txmult);
    if (!tid)
        throw SpecError("suspension of " + u.object(x).label + " leaves the universe");
    auto ids = direct_sum(iparts);
    auto tds = direct_sum(tparts);
    Mat mono = Mat::zero(f, ids.sum->dim(), u.dim(x));
    Mat epi = Mat::zero(f, tds.sum->dim(), ids.sum->dim());
    std::size_t xoff = 0;
    for (std::size_t b = 0; b < seed_susp.size(); ++b) {
        const Mat& mm = seed_susp[b]->mono.mat;
        mono = mono.add(ids.inclusions[b].mat.mul(
            mm.mul(Mat::identity(f, u.dim(x)).submatrix(xoff, 0, mm.cols(), u.dim(x)))));
        epi = epi.add(
            tds.inclusions[b].mat.mul(seed_susp[b]->epi.mat).mul(ids.projections[b].mat));
        xoff += mm.cols();
    }
    Morphism monoM{xm, ids.sum, std::move(mono)};
    if (!s_->is_admissible_mono(monoM))
        throw SpecError("suspension: blockwise embedding of " + u.object(x).label +
                        " is not admissible");
    auto conj = u.iso_to_object(tds.sum, *tid);
    SuspensionData d{*tid, std::move(monoM), {ids.sum, u.object(*tid).mod, conj.mat.mul(epi)}};
    return cache_->susp.emplace(x, std::move(d)).first->second;
}

Mat StableContext::suspend_morphism(std::size_t x, std::size_t x2, const Mat& fm) const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    const SuspensionData& a = suspension(x);
    const SuspensionData& b = suspension(x2);
    // I(f) with I(f) mono_x = mono_x2 f, then Tf with Tf epi_x = epi_x2 I(f)
    auto lift = solve_morphism(*a.mono.dst, *b.mono.dst,
                               {{Mat::identity(f, b.mono.dst->dim()), a.mono.mat,
                                 b.mono.mat.mul(fm)}});
    if (!lift.solvable) throw SpecError("suspend_morphism: no injective lift");
    auto tf = solve_morphism(*u.object(a.tx).mod, *u.object(b.tx).mod,
                             {{Mat::identity(f, u.dim(b.tx)), a.epi.mat,
                               b.epi.mat.mul(lift.particular)}});
    if (!tf.solvable) throw SpecError("suspend_morphism: no induced map on cokernels");
    return tf.particular;
}

Triangle StableContext::standard_triangle(std::size_t x, std::size_t y, const Mat& fm) const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    const SuspensionData& sx = suspension(x);
    auto po = pushout(sx.mono, {u.object(x).mod, u.object(y).mod, fm});
    auto zid = u.resolve(po.obj);
    if (zid) {
        auto conj = u.iso_to_object(po.obj, *zid);
        Mat v = conj.mat.mul(po.from_a2.mat);
        Mat barf = conj.mat.mul(po.from_b.mat);
        auto w = solve_morphism(
            *u.object(*zid).mod, *u.object(sx.tx).mod,
            {{Mat::identity(f, u.dim(sx.tx)), barf, sx.epi.mat},
             {Mat::identity(f, u.dim(sx.tx)), v, Mat::zero(f, u.dim(sx.tx), u.dim(y))}});
        if (!w.solvable) throw SpecError("standard triangle: no connecting morphism");
        return Triangle{x, y, *zid, sx.tx, fm, std::move(v), std::move(w.particular)};
    }
    // the cone splits as (injective) + Z'; strip the injective summands to a
    // universe object, which is the same object stably
    auto mult = u.classify(po.obj);
    if (!mult)
        throw SpecError("standard triangle: the cone of a morphism " + u.object(x).label +
                        " -> " + u.object(y).label + " leaves the universe");
    std::vector<std::size_t> stripped = *mult;
    std::vector<bool> inj_seed(u.num_seeds(), false);
    for (std::size_t i = 0; i < u.num_seeds(); ++i) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[i] = 1;
        auto sid = u.id_of(m);
        if (sid && std::binary_search(q_->n_ids().begin(), q_->n_ids().end(), *sid)) {
            inj_seed[i] = true;
            stripped[i] = 0;
        }
    }
    auto zid2 = u.id_of(stripped);
    if (!zid2)
        throw SpecError("standard triangle: the cone of a morphism " + u.object(x).label +
                        " -> " + u.object(y).label + " leaves the universe");
    std::vector<ModulePtr> parts{u.object(*zid2).mod};
    for (std::size_t i = 0; i < u.num_seeds(); ++i)
        if (inj_seed[i])
            for (std::size_t k = stripped[i]; k < (*mult)[i]; ++k) parts.push_back(u.seed(i));
    auto ds = direct_sum(parts);
    auto phi = are_isomorphic(po.obj, ds.sum);  // cone -> Z' + injectives
    if (!phi)
        throw SpecError("standard triangle: the cone of a morphism " + u.object(x).label +
                        " -> " + u.object(y).label + " leaves the universe");
    Mat pi = ds.projections[0].mat.mul(phi->mat);
    Mat iota = inverse_of(*phi).mat.mul(ds.inclusions[0].mat);
    Mat v = pi.mul(po.from_a2.mat);
    auto wc = solve_morphism(
        *po.obj, *u.object(sx.tx).mod,
        {{Mat::identity(f, u.dim(sx.tx)), po.from_b.mat, sx.epi.mat},
         {Mat::identity(f, u.dim(sx.tx)), po.from_a2.mat,
          Mat::zero(f, u.dim(sx.tx), u.dim(y))}});
    if (!wc.solvable) throw SpecError("standard triangle: no connecting morphism");
    return Triangle{x, y, *zid2, sx.tx, fm, std::move(v), wc.particular.mul(iota)};
}

namespace {

/// Triangle isomorphism search: stable isos (p1, p2, p3) with the three
/// squares commuting modulo the ideals; the third square uses T on a hom
/// basis.
bool triangle_iso(const QuotientContext& q, const Triangle& st, const Triangle& t,
                  const std::vector<Mat>& tbasis, bool& inconclusive) {
    const Universe& u = *q.universe();
    const PrimeField& f = u.algebra().field();
    auto& h1 = u.hom(st.x, t.x);
    auto& h2 = u.hom(st.y, t.y);
    auto& h3 = u.hom(st.z, t.z);
    auto s1 = mats_of_rows(q.ideal(st.x, t.y), u.dim(t.y), u.dim(st.x));
    auto s2 = mats_of_rows(q.ideal(st.y, t.z), u.dim(t.z), u.dim(st.y));
    auto s3 = mats_of_rows(q.ideal(st.z, t.tx), u.dim(t.tx), u.dim(st.z));
    std::size_t e0 = u.dim(t.y) * u.dim(st.x);
    std::size_t e1 = u.dim(t.z) * u.dim(st.y);
    std::size_t e2 = u.dim(t.tx) * u.dim(st.z);
    std::size_t n1 = h1.size(), n2 = h2.size(), n3 = h3.size();
    Mat a(f, e0 + e1 + e2, n1 + n2 + n3 + s1.size() + s2.size() + s3.size());
    Fe neg = f.neg(1);
    auto put = [&](std::size_t col, std::size_t off, const Mat& m, Fe sign) {
        for (std::size_t i = 0; i < m.entries().size(); ++i)
            a.at(off + i, col) = f.add(a.at(off + i, col), f.mul(sign, m.entries()[i]));
    };
    std::size_t col = 0;
    for (std::size_t k = 0; k < n1; ++k) {
        put(col, 0, t.u.mul(h1[k]), 1);
        put(col, e0 + e1, tbasis[k].mul(st.w), neg);  // T(p1) st.w
        ++col;
    }
    for (auto& e : h2) {
        put(col, 0, e.mul(st.u), neg);
        put(col, e0, t.v.mul(e), 1);
        ++col;
    }
    for (auto& e : h3) {
        put(col, e0, e.mul(st.v), neg);
        put(col, e0 + e1, t.w.mul(e), 1);
        ++col;
    }
    for (auto& m : s1) put(col++, 0, m, neg);
    for (auto& m : s2) put(col++, e0, m, neg);
    for (auto& m : s3) put(col++, e0 + e1, m, neg);
    Mat sol = nullspace(a);
    Mat w = canonical_basis(sol.submatrix(0, 0, sol.rows(), n1 + n2 + n3));
    Mat blk(f, 0, n1 + n2 + n3);
    auto embed = [&](const Mat& idl, const std::vector<Mat>& basis, std::size_t off) {
        for (std::size_t r = 0; r < idl.rows(); ++r) {
            std::vector<Fe> v(idl.entries().begin() + r * idl.cols(),
                              idl.entries().begin() + (r + 1) * idl.cols());
            auto co = coords_in(basis, v);
            Mat row(f, 1, n1 + n2 + n3);
            for (std::size_t k = 0; k < co.size(); ++k) row.at(0, off + k) = co[k];
            blk = blk.vstack(row);
        }
    };
    embed(q.ideal(st.x, t.x), h1, 0);
    embed(q.ideal(st.y, t.y), h2, n1);
    embed(q.ideal(st.z, t.z), h3, n1 + n2);
    Mat reps = relative_complement(subspace_intersection(w, blk), w);
    bool found = false;
    bool exhaustive = for_each_combo(reps.rows(), f.p(), kComboCap, [&](const std::vector<Fe>& co) {
        std::vector<Fe> v(n1 + n2 + n3, 0);
        for (std::size_t k = 0; k < co.size(); ++k)
            if (co[k])
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = f.add(v[j], f.mul(co[k], reps.at(k, j)));
        auto build = [&](const std::vector<Mat>& basis, std::size_t off, std::size_t r,
                         std::size_t c) {
            Mat m = Mat::zero(f, r, c);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (v[off + k]) m = m.add(basis[k].scale(v[off + k]));
            return m;
        };
        Mat p1 = build(h1, 0, u.dim(t.x), u.dim(st.x));
        Mat p2 = build(h2, n1, u.dim(t.y), u.dim(st.y));
        Mat p3 = build(h3, n1 + n2, u.dim(t.z), u.dim(st.z));
        if (q.stable_is_iso(st.x, t.x, p1) && q.stable_is_iso(st.y, t.y, p2) &&
            q.stable_is_iso(st.z, t.z, p3)) {
            found = true;
            return false;
        }
        return true;
    });
    if (!found && !exhaustive) inconclusive = true;
    return found;
}

} // namespace

std::optional<bool> StableContext::is_distinguished(const Triangle& t) const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    if (t.tx != suspension(t.x).tx) return false;
    if (!q_->stable_reduce(t.x, t.z, t.v.mul(t.u)).is_zero()) return false;
    if (!q_->stable_reduce(t.y, t.tx, t.w.mul(t.v)).is_zero()) return false;
    bool inconclusive = false;
    for (std::size_t x2 = 0; x2 < u.size(); ++x2) {
        auto tx = q_->stably_isomorphic(x2, t.x);
        if (!tx) {
            inconclusive = true;
            continue;
        }
        if (!*tx) continue;
        for (std::size_t y2 = 0; y2 < u.size(); ++y2) {
            auto ty = q_->stably_isomorphic(y2, t.y);
            if (!ty) {
                inconclusive = true;
                continue;
            }
            if (!*ty) continue;
            auto tkey = std::make_pair(x2, t.x);
            auto tit = cache_->t_basis.find(tkey);
            if (tit == cache_->t_basis.end()) {
                std::vector<Mat> imgs;
                for (auto& e : u.hom(x2, t.x)) imgs.push_back(suspend_morphism(x2, t.x, e));
                tit = cache_->t_basis.emplace(tkey, std::move(imgs)).first;
            }
            auto reps = q_->stable_hom(x2, y2);
            bool found = false;
            bool exhaustive =
                for_each_combo(reps.size(), f.p(), kComboCap, [&](const std::vector<Fe>& co) {
                    Mat fm = Mat::zero(f, u.dim(y2), u.dim(x2));
                    for (std::size_t k = 0; k < co.size(); ++k)
                        if (co[k]) fm = fm.add(reps[k].scale(co[k]));
                    std::optional<Triangle> st;
                    try {
                        st = standard_triangle(x2, y2, fm);
                    } catch (const SpecError&) {
                        inconclusive = true;
                        return true;
                    }
                    auto tz = q_->stably_isomorphic(st->z, t.z);
                    if (!tz) {
                        inconclusive = true;
                        return true;
                    }
                    if (!*tz) return true;
                    if (triangle_iso(*q_, *st, t, tit->second, inconclusive)) {
                        found = true;
                        return false;
                    }
                    return true;
                });
            if (found) return true;
            if (!exhaustive) inconclusive = true;
        }
    }
    return inconclusive ? std::optional<bool>() : std::optional<bool>(false);
}

CheckReport StableContext::verify_sn_iff_triangle() const {
    const Universe& u = *universe();
    const PrimeField& f = u.algebra().field();
    CheckReport rep;
    bool ok_fwd = true, ok_bwd = true, inconclusive = false, sampled = false;
    std::string det_fwd, det_bwd;

    // every S_N representative completes to a distinguished triangle: find a
    // stable iso p: Z -> C_f intertwining the deflations; then w' p closes it
    for (std::size_t x = 0; x < u.size(); ++x)
        for (std::size_t z = 0; z < u.size(); ++z) {
            const ConfCell& cell = s_->cell(x, z);
            if (cell.inconclusive) inconclusive = true;
            auto consider = [&](const std::pair<std::size_t, Conflation>& r) {
                if (!ok_fwd) return;
                std::size_t mid = r.first;
                std::optional<Triangle> tri;
                try {
                    tri = standard_triangle(x, mid, r.second.f.mat);
                } catch (const SpecError&) {
                    inconclusive = true;
                    return;
                }
                const Triangle& st = *tri;
                auto sols = solve_morphism(*u.object(z).mod, *u.object(st.z).mod,
                                           {{Mat::identity(f, u.dim(st.z)), r.second.g.mat, st.v}},
                                           {mats_of_rows(q_->ideal(mid, st.z), u.dim(st.z),
                                                         u.dim(mid))});
                bool found = false;
                if (sols.solvable) {
                    bool exhaustive = for_each_combo(
                        sols.basis.size(), f.p(), kComboCap, [&](const std::vector<Fe>& co) {
                            Mat cand = sols.particular;
                            for (std::size_t k = 0; k < co.size(); ++k)
                                if (co[k]) cand = cand.add(sols.basis[k].scale(co[k]));
                            if (q_->stable_is_iso(z, st.z, cand)) {
                                found = true;
                                return false;
                            }
                            return true;
                        });
                    if (!found && !exhaustive) inconclusive = true;
                }
                if (!found) {
                    ok_fwd = false;
                    det_fwd = "conflation " + u.object(x).label + " >-> " + u.object(mid).label +
                              " ->> " + u.object(z).label + " has no triangle completion";
                }
            };
            for (auto& r : cell.reps) consider(r);
            for (auto& r : cell.basis_reps) consider(r);
        }

    // the first two maps of every standard triangle lie in S_N, witnessed by
    // the pushout conflation X >-> Y + I ->> C and the projection Y + I -> Y
    for (std::size_t x = 0; x < u.size() && ok_bwd; ++x)
        for (std::size_t y = 0; y < u.size() && ok_bwd; ++y) {
            auto reps = q_->stable_hom(x, y);
            bool exhaustive = for_each_combo(
                reps.size(), f.p(), kComboCap, [&](const std::vector<Fe>& co) {
                    Mat fm = Mat::zero(f, u.dim(y), u.dim(x));
                    for (std::size_t k = 0; k < co.size(); ++k)
                        if (co[k]) fm = fm.add(reps[k].scale(co[k]));
                    const SuspensionData& sx = suspension(x);
                    auto po = pushout(sx.mono, {u.object(x).mod, u.object(y).mod, fm});
                    auto ds = direct_sum({u.object(y).mod, sx.mono.dst});
                    Mat fmu = ds.inclusions[0].mat.mul(fm).add(
                        ds.inclusions[1].mat.mul(sx.mono.mat));
                    Mat epi = po.from_a2.mat.mul(ds.projections[0].mat).sub(
                        po.from_b.mat.mul(ds.projections[1].mat));
                    Conflation push{{u.object(x).mod, ds.sum, std::move(fmu)},
                                    {ds.sum, po.obj, std::move(epi)}};
                    if (!s_->is_conflation(push)) {
                        ok_bwd = false;
                        det_bwd = "pushout sequence of a morphism " + u.object(x).label +
                                  " -> " + u.object(y).label + " is not a conflation";
                        return false;
                    }
                    // first square: the projection Y + I -> Y restricts the
                    // inflation to f; second square: the deflation differs
                    // from v (projection) by a map through the injective I
                    if (ds.projections[0].mat.mul(push.f.mat) != fm) {
                        ok_bwd = false;
                        det_bwd = "pushout comparison failed for " + u.object(x).label + " -> " +
                                  u.object(y).label;
                        return false;
                    }
                    Mat diff = po.from_a2.mat.mul(ds.projections[0].mat).sub(push.g.mat);
                    Mat through_i = po.from_b.mat.mul(ds.projections[1].mat);
                    if (diff != through_i) {
                        ok_bwd = false;
                        det_bwd = "pushout comparison failed for " + u.object(x).label + " -> " +
                                  u.object(y).label;
                        return false;
                    }
                    return true;
                });
            // every tested morphism passes or fails definitively; a capped
            // sweep is a sampling disclosure, not an unknown verdict
            if (!exhaustive) sampled = true;
        }
    if (sampled)
        rep.notes.push_back(
            "triangle_to_sn: stable morphism classes sampled up to the cap for "
            "pairs with large stable hom spaces");

    auto push_item = [&](const std::string& name, bool ok, const std::string& det) {
        CheckItem item{name, ok ? (inconclusive ? "inconclusive" : "pass") : "fail", det};
        rep.items.push_back(std::move(item));
    };
    push_item("sn_to_triangle", ok_fwd, det_fwd);
    push_item("triangle_to_sn", ok_bwd, det_bwd);
    rep.notes.push_back(
        "sequences and triangles sampled through conflation and stable-class representatives");
    return rep;
}

} // namespace excat
