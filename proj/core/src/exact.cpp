#include "excat/exact.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace excat {

namespace {

Mat vec_row(const Mat& m) {
    Mat out(m.field(), 1, m.rows() * m.cols());
    out.entries() = m.entries();
    return out;
}

std::uint64_t pow_capped(std::uint32_t p, std::size_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        v *= p;
        if (v > cap) return cap + 1;
    }
    return v;
}

// L with L * a = id, for a of full column rank
Mat left_inverse(const Mat& a) {
    std::size_t n = a.rows(), s = a.cols();
    Mat r = rref(a.hstack(Mat::identity(a.field(), n))).R;
    return r.submatrix(0, s, s, n);
}

// X with a * X = id, for a of full row rank
Mat right_inverse(const Mat& a) {
    std::size_t r = a.rows(), n = a.cols();
    auto rr = rref(a.hstack(Mat::identity(a.field(), r)));
    Mat x(a.field(), n, r);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] >= n) continue;
        for (std::size_t j = 0; j < r; ++j) x.at(rr.pivots[i], j) = rr.R.at(i, n + j);
    }
    return x;
}

// projection / section pair for the quotient by a canonical-echelon subspace
struct ProjSect {
    Mat proj, sect;
};

ProjSect quotient_maps(const Mat& sub, std::size_t n, const PrimeField& f) {
    std::size_t s = sub.rows(), q = n - s;
    std::vector<std::size_t> leads(s);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < s; ++r) {
        std::size_t lead = 0;
        while (lead < n && sub.at(r, lead) == 0) ++lead;
        leads[r] = lead;
        is_pivot[lead] = true;
    }
    std::vector<std::size_t> free_coords;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_coords.push_back(c);
    ProjSect out{Mat(f, q, n), Mat(f, n, q)};
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Fe> v(n, 0);
        v[c] = 1;
        for (std::size_t r = 0; r < s; ++r) {
            Fe factor = v[leads[r]];
            if (!factor) continue;
            for (std::size_t cc = 0; cc < n; ++cc) v[cc] = f.sub(v[cc], f.mul(factor, sub.at(r, cc)));
        }
        for (std::size_t i = 0; i < q; ++i) out.proj.at(i, c) = v[free_coords[i]];
    }
    for (std::size_t i = 0; i < q; ++i) out.sect.at(free_coords[i], i) = 1;
    return out;
}

struct Presentation {
    ModulePtr p0;
    Morphism eps;   // p0 ->> z
    ModulePtr k;
    Morphism iota;  // k >-> p0
};

struct ExtData {
    ModulePtr amb;          // p0 (+) x
    Mat incl_x;             // x -> amb
    Mat eps0;               // [eps | 0]: amb -> z
    Mat amb_t;              // action of the chain generator on amb (Jordan path)
    std::vector<Mat> coset; // representatives spanning Ext^1(z, x) over im Hom(p0, x)
};

} // namespace

struct ExactCacheData {
    std::map<std::size_t, Presentation> pres;
    std::map<std::pair<std::size_t, std::size_t>, ExtData> ext;
};

// ---- plain homological operations -------------------------------------------

Morphism kernel(const Morphism& g) {
    return submodule(g.src, nullspace(g.mat)).incl;
}

Morphism cokernel(const Morphism& f) {
    return quotient_module(f.dst, canonical_basis(f.mat.transpose())).proj;
}

bool is_kernel_cokernel_pair(const Morphism& f, const Morphism& g) {
    if (f.mat.rows() != g.mat.cols()) return false;
    if (!is_morphism(f) || !is_morphism(g)) return false;
    if (!g.mat.mul(f.mat).is_zero()) return false;
    std::size_t rf = rank(f.mat), rg = rank(g.mat);
    // f injective, g surjective, im f = ker g (dimension count given g f = 0)
    return rf == f.src->dim() && rg == g.dst->dim() && rf + rg == g.src->dim();
}

PullbackResult pullback(const Morphism& g, const Morphism& h) {
    if (g.mat.rows() != h.mat.rows()) throw SpecError("pullback: codomain mismatch");
    const PrimeField& f = g.mat.field();
    ModulePtr amb = direct_sum({g.src, h.src}).sum;
    Mat eqs = g.mat.hstack(h.mat.scale(f.neg(1)));
    auto sp = submodule(amb, nullspace(eqs));
    std::size_t bdim = g.src->dim(), cdim = h.src->dim(), s = sp.sub->dim();
    PullbackResult out{sp.sub,
                       {sp.sub, g.src, sp.incl.mat.submatrix(0, 0, bdim, s)},
                       {sp.sub, h.src, sp.incl.mat.submatrix(bdim, 0, cdim, s)}};
    return out;
}

PushoutResult pushout(const Morphism& f, const Morphism& h) {
    if (f.mat.cols() != h.mat.cols()) throw SpecError("pushout: domain mismatch");
    const PrimeField& fld = f.mat.field();
    ModulePtr amb = direct_sum({f.dst, h.dst}).sum;
    std::size_t adim = f.src->dim(), bdim = f.dst->dim(), cdim = h.dst->dim();
    Mat rows(fld, adim, bdim + cdim);
    for (std::size_t j = 0; j < adim; ++j) {
        for (std::size_t i = 0; i < bdim; ++i) rows.at(j, i) = f.mat.at(i, j);
        for (std::size_t i = 0; i < cdim; ++i) rows.at(j, bdim + i) = fld.neg(h.mat.at(i, j));
    }
    auto q = quotient_module(amb, rows);
    std::size_t qd = q.quot->dim();
    PushoutResult out{q.quot,
                      {f.dst, q.quot, q.proj.mat.submatrix(0, 0, qd, bdim)},
                      {h.dst, q.quot, q.proj.mat.submatrix(0, bdim, qd, cdim)}};
    return out;
}

// ---- CheckReport -------------------------------------------------------------

bool CheckReport::all_pass() const {
    for (auto& i : items)
        if (i.status != "pass") return false;
    return true;
}
bool CheckReport::any_fail() const {
    for (auto& i : items)
        if (i.status == "fail") return true;
    return false;
}
bool CheckReport::any_inconclusive() const {
    for (auto& i : items)
        if (i.status == "inconclusive") return true;
    return false;
}
void CheckReport::add(std::string name, bool ok, std::string detail) {
    items.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
}

// ---- structure construction --------------------------------------------------

ExactPtr ExactStructure::make_abelian(UniversePtr u) {
    auto s = std::shared_ptr<ExactStructure>(new ExactStructure());
    s->kind_ = StructKind::abelian;
    s->uni_ = std::move(u);
    return s;
}

ExactPtr ExactStructure::make_split(UniversePtr u) {
    auto s = std::shared_ptr<ExactStructure>(new ExactStructure());
    s->kind_ = StructKind::split;
    s->uni_ = std::move(u);
    return s;
}

ExactPtr ExactStructure::make_explicit(UniversePtr u, std::vector<Conflation> members) {
    auto s = std::shared_ptr<ExactStructure>(new ExactStructure());
    s->kind_ = StructKind::explicit_list;
    s->uni_ = std::move(u);
    s->explicit_ = std::move(members);
    return s;
}

std::string ExactStructure::name() const {
    switch (kind_) {
        case StructKind::abelian: return "abelian";
        case StructKind::split: return "split";
        case StructKind::induced: return "induced";
        case StructKind::explicit_list: return "explicit";
    }
    return "?";
}

// ---- Ext-class machinery -----------------------------------------------------

namespace {

Presentation make_presentation(const Universe& u, ModulePtr z) {
    auto alg = u.algebra_ptr();
    const PrimeField& f = alg->field();
    std::size_t zd = z->dim();
    // generators of z: coset representatives of rad z (minimal cover) when the
    // radical is available, otherwise every basis vector (non-minimal cover)
    Mat gens = Mat::identity(f, zd);
    if (alg->commutative() && zd > 0) {
        const Mat& rad = alg->radical();
        Mat acc(f, 0, zd);
        for (std::size_t i = 0; i < rad.rows(); ++i) {
            std::vector<Fe> elem(alg->dim());
            for (std::size_t c = 0; c < alg->dim(); ++c) elem[c] = rad.at(i, c);
            acc = acc.vstack(z->elem_action(elem).transpose());
        }
        gens = quotient_complement(canonical_basis(acc), zd);
    }
    std::size_t r = zd == 0 ? 0 : gens.rows();
    Presentation out{nullptr, {nullptr, nullptr, Mat(f, 0, 0)}, nullptr, {nullptr, nullptr, Mat(f, 0, 0)}};
    if (r == 0) {
        out.p0 = Module::zero(alg);
        out.k = Module::zero(alg);
        out.eps = Morphism::zero(out.p0, z);
        out.iota = Morphism::zero(out.k, out.p0);
        return out;
    }
    ModulePtr reg = Module::regular(alg);
    std::vector<ModulePtr> copies(r, reg);
    out.p0 = direct_sum(copies).sum;
    Mat eps(f, zd, r * alg->dim());
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Fe> gi(zd);
        for (std::size_t c = 0; c < zd; ++c) gi[c] = gens.at(i, c);
        for (std::size_t j = 0; j < alg->dim(); ++j) {
            auto col = z->action(j).apply(gi);
            for (std::size_t c = 0; c < zd; ++c) eps.at(c, i * alg->dim() + j) = col[c];
        }
    }
    out.eps = {out.p0, z, std::move(eps)};
    assert(is_morphism(out.eps) && rank(out.eps.mat) == zd);
    auto sub = submodule(out.p0, nullspace(out.eps.mat));
    out.k = sub.sub;
    out.iota = sub.incl;
    return out;
}

ExtData make_ext(const Universe& u, const Presentation& pres, ModulePtr x, ModulePtr z) {
    const PrimeField& f = u.algebra().field();
    ExtData out{nullptr, Mat(f, 0, 0), Mat(f, 0, 0), Mat(f, 0, 0), {}};
    auto ds = direct_sum({pres.p0, x});
    out.amb = ds.sum;
    out.incl_x = ds.inclusions[1].mat;
    std::size_t ad = out.amb->dim(), pd = pres.p0->dim(), zd = z->dim();
    out.eps0 = Mat(f, zd, ad);
    for (std::size_t i = 0; i < zd; ++i)
        for (std::size_t j = 0; j < pd; ++j) out.eps0.at(i, j) = pres.eps.mat.at(i, j);
    if (u.jordan()) out.amb_t = out.amb->elem_action(u.t_elem());
    if (pres.k->dim() > 0 && x->dim() > 0) {
        auto homk = hom_space(*pres.k, *x);
        auto homp = hom_space(*pres.p0, *x);
        Mat span(f, 0, pres.k->dim() * x->dim());
        for (auto& b : homp) span = span.vstack(vec_row(b.mul(pres.iota.mat)));
        span = canonical_basis(span);
        for (auto& t : homk) {
            Mat v = vec_row(t);
            std::vector<Fe> vv = v.entries();
            if (!subspace_member(span, vv)) {
                out.coset.push_back(t);
                span = subspace_sum(span, v);
            }
        }
    }
    return out;
}

// rows of the graph subspace { (iota k, -t k) } inside amb = p0 (+) x
Mat graph_rows(const Presentation& pres, const Mat& t, std::size_t ambdim) {
    const PrimeField& f = t.field();
    std::size_t kd = pres.k->dim(), pd = pres.p0->dim(), xd = t.rows();
    Mat rows(f, kd, ambdim);
    for (std::size_t j = 0; j < kd; ++j) {
        for (std::size_t c = 0; c < pd; ++c) rows.at(j, c) = pres.iota.mat.at(c, j);
        for (std::size_t i = 0; i < xd; ++i) rows.at(j, pd + i) = f.neg(t.at(i, j));
    }
    return rows;
}

Conflation build_middle(const Presentation& pres, const ExtData& ext, ModulePtr x, ModulePtr z,
                        const Mat& t) {
    Mat rows = graph_rows(pres, t, ext.amb->dim());
    auto q = quotient_module(ext.amb, rows);
    Mat fmat = q.proj.mat.mul(ext.incl_x);
    Mat gmat = ext.eps0.mul(right_inverse(q.proj.mat));
    return {{x, q.quot, std::move(fmat)}, {q.quot, z, std::move(gmat)}};
}

Mat class_matrix(const ExtData& ext, const PrimeField& f, std::uint64_t code, ModulePtr x,
                 const Presentation& pres) {
    Mat t = Mat::zero(f, x->dim(), pres.k->dim());
    std::uint64_t rest = code;
    for (std::size_t i = 0; i < ext.coset.size(); ++i) {
        Fe c = Fe(rest % f.p());
        rest /= f.p();
        if (c) t = t.add(ext.coset[i].scale(c));
    }
    return t;
}

bool is_unit_code(std::uint64_t code, std::uint32_t p, std::size_t e) {
    if (code == 0) return true;
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (code == v) return true;
        v *= p;
    }
    return false;
}

} // namespace

void ExactStructure::for_each_conflation(
    std::size_t x, std::size_t z,
    const std::function<bool(const Conflation&, std::size_t)>& fn, bool* skipped) const {
    const Universe& u = *uni_;
    const PrimeField& fld = u.algebra().field();
    switch (kind_) {
        case StructKind::split: {
            std::vector<std::size_t> mult = u.object(x).mult;
            for (std::size_t i = 0; i < mult.size(); ++i) mult[i] += u.object(z).mult[i];
            auto id = u.id_of(mult);
            if (!id) {
                if (skipped) *skipped = true;
                return;
            }
            auto ds = direct_sum({u.object(x).mod, u.object(z).mod});
            auto iso = u.iso_to_object(ds.sum, *id);
            Conflation c{{u.object(x).mod, u.object(*id).mod, iso.mat.mul(ds.inclusions[0].mat)},
                         {u.object(*id).mod, u.object(z).mod,
                          ds.projections[1].mat.mul(inverse_of(iso).mat)}};
            fn(c, *id);
            return;
        }
        case StructKind::induced: {
            if (!std::binary_search(members_.begin(), members_.end(), x) ||
                !std::binary_search(members_.begin(), members_.end(), z))
                return;
            parent_->for_each_conflation(
                x, z,
                [&](const Conflation& c, std::size_t mid) {
                    if (!std::binary_search(members_.begin(), members_.end(), mid)) return true;
                    return fn(c, mid);
                },
                skipped);
            return;
        }
        case StructKind::explicit_list: {
            for (auto& m : explicit_) {
                auto rx = u.resolve(m.f.src);
                auto rm = u.resolve(m.f.dst);
                auto rz = u.resolve(m.g.dst);
                if (!rx || !rm || !rz) {
                    if (skipped) *skipped = true;
                    continue;
                }
                if (*rx != x || *rz != z) continue;
                if (!is_kernel_cokernel_pair(m.f, m.g)) continue;
                auto ix = u.iso_to_object(m.f.src, x);
                auto im = u.iso_to_object(m.f.dst, *rm);
                auto iz = u.iso_to_object(m.g.dst, z);
                Conflation c{{u.object(x).mod, u.object(*rm).mod,
                              im.mat.mul(m.f.mat).mul(inverse_of(ix).mat)},
                             {u.object(*rm).mod, u.object(z).mod,
                              iz.mat.mul(m.g.mat).mul(inverse_of(im).mat)}};
                if (!fn(c, *rm)) return;
            }
            return;
        }
        case StructKind::abelian: break;
    }
    // abelian: one witness per extension class
    if (!cache_) cache_ = std::make_shared<ExactCacheData>();
    auto pit = cache_->pres.find(z);
    if (pit == cache_->pres.end())
        pit = cache_->pres.emplace(z, make_presentation(u, u.object(z).mod)).first;
    const Presentation& pres = pit->second;
    auto eit = cache_->ext.find({x, z});
    if (eit == cache_->ext.end())
        eit = cache_->ext.emplace(std::make_pair(x, z), make_ext(u, pres, u.object(x).mod, u.object(z).mod)).first;
    const ExtData& ext = eit->second;
    std::uint64_t total = pow_capped(fld.p(), ext.coset.size(), u.cap());
    bool capped = total > u.cap();
    if (capped && skipped) *skipped = true;
    std::uint64_t limit = capped ? 0 : total;
    std::vector<std::uint64_t> codes;
    if (capped) {
        codes.push_back(0);
        std::uint64_t v = 1;
        for (std::size_t i = 0; i < ext.coset.size(); ++i) { codes.push_back(v); v *= fld.p(); }
    } else {
        for (std::uint64_t c = 0; c < limit; ++c) codes.push_back(c);
    }
    for (std::uint64_t code : codes) {
        Mat t = class_matrix(ext, fld, code, u.object(x).mod, pres);
        Conflation c = build_middle(pres, ext, u.object(x).mod, u.object(z).mod, t);
        auto id = u.resolve(c.f.dst);
        if (!id) {
            if (skipped) *skipped = true;
            continue;
        }
        auto iso = u.iso_to_object(c.f.dst, *id);
        Conflation conj{{c.f.src, u.object(*id).mod, iso.mat.mul(c.f.mat)},
                        {u.object(*id).mod, c.g.dst, c.g.mat.mul(inverse_of(iso).mat)}};
        if (!fn(conj, *id)) return;
    }
}

ConfCell ExactStructure::build_cell(std::size_t x, std::size_t z) const {
    const Universe& u = *uni_;
    const PrimeField& fld = u.algebra().field();
    ConfCell cell;
    cell.xid = x;
    cell.zid = z;
    auto note_once = [&](const std::string& n) {
        if (std::find(cell.notes.begin(), cell.notes.end(), n) == cell.notes.end())
            cell.notes.push_back(n);
    };
    switch (kind_) {
        case StructKind::split: {
            std::vector<std::size_t> mult = u.object(x).mult;
            for (std::size_t i = 0; i < mult.size(); ++i) mult[i] += u.object(z).mult[i];
            auto id = u.id_of(mult);
            if (!id) {
                note_once("split middle exceeds the multiplicity bound");
                return cell;
            }
            for_each_conflation(x, z, [&](const Conflation& c, std::size_t mid) {
                cell.middles.push_back(mid);
                cell.reps.emplace_back(mid, c);
                cell.basis_reps.emplace_back(mid, c);
                return true;
            });
            return cell;
        }
        case StructKind::induced: {
            if (!std::binary_search(members_.begin(), members_.end(), x) ||
                !std::binary_search(members_.begin(), members_.end(), z))
                return cell;
            const ConfCell& pc = parent_->cell(x, z);
            cell.inconclusive = pc.inconclusive;
            cell.notes = pc.notes;
            for (auto m : pc.middles)
                if (std::binary_search(members_.begin(), members_.end(), m))
                    cell.middles.push_back(m);
            for (auto& r : pc.reps)
                if (std::binary_search(members_.begin(), members_.end(), r.first))
                    cell.reps.push_back(r);
            for (auto& r : pc.basis_reps)
                if (std::binary_search(members_.begin(), members_.end(), r.first))
                    cell.basis_reps.push_back(r);
            return cell;
        }
        case StructKind::explicit_list: {
            std::set<std::size_t> mids;
            bool skipped = false;
            for_each_conflation(
                x, z,
                [&](const Conflation& c, std::size_t mid) {
                    mids.insert(mid);
                    cell.reps.emplace_back(mid, c);
                    cell.basis_reps.emplace_back(mid, c);
                    return true;
                },
                &skipped);
            if (skipped) note_once("an explicit member escapes the universe");
            cell.middles.assign(mids.begin(), mids.end());
            return cell;
        }
        case StructKind::abelian: break;
    }
    if (!cache_) cache_ = std::make_shared<ExactCacheData>();
    auto pit = cache_->pres.find(z);
    if (pit == cache_->pres.end())
        pit = cache_->pres.emplace(z, make_presentation(u, u.object(z).mod)).first;
    const Presentation& pres = pit->second;
    ExtData ext = make_ext(u, pres, u.object(x).mod, u.object(z).mod);
    std::size_t e = ext.coset.size();
    std::uint64_t total = pow_capped(fld.p(), e, u.cap());
    std::vector<std::uint64_t> codes;
    if (total > u.cap()) {
        cell.inconclusive = true;
        note_once("extension-class enumeration capped; only the class basis was explored");
        codes.push_back(0);
        std::uint64_t v = 1;
        for (std::size_t i = 0; i < e; ++i) { codes.push_back(v); v *= fld.p(); }
    }
    std::set<std::size_t> mids;
    std::uint64_t limit = codes.empty() ? total : codes.size();
    for (std::uint64_t idx = 0; idx < limit; ++idx) {
        std::uint64_t code = codes.empty() ? idx : codes[idx];
        Mat t = class_matrix(ext, fld, code, u.object(x).mod, pres);
        bool unit = is_unit_code(code, fld.p(), e);
        std::optional<std::vector<std::size_t>> cls;
        Mat rows = graph_rows(pres, t, ext.amb->dim());
        if (u.jordan()) {
            // classify from the induced chain-generator action alone
            Mat sub = canonical_basis(rows);
            ProjSect ps = quotient_maps(sub, ext.amb->dim(), fld);
            cls = u.classify_by_t(ps.proj.mul(ext.amb_t).mul(ps.sect));
        }
        std::optional<Conflation> built;
        if (!cls) {
            built = build_middle(pres, ext, u.object(x).mod, u.object(z).mod, t);
            cls = u.classify(built->f.dst);
        }
        if (!cls) {
            note_once("a middle escapes the seed classes");
            continue;
        }
        auto id = u.id_of(*cls);
        if (!id) {
            note_once("a middle exceeds the multiplicity bound");
            continue;
        }
        bool fresh = mids.insert(*id).second;
        if (!fresh && !unit) continue;
        if (!built) built = build_middle(pres, ext, u.object(x).mod, u.object(z).mod, t);
        auto iso = u.iso_to_object(built->f.dst, *id);
        Conflation conj{{built->f.src, u.object(*id).mod, iso.mat.mul(built->f.mat)},
                        {u.object(*id).mod, built->g.dst, built->g.mat.mul(inverse_of(iso).mat)}};
        if (fresh) cell.reps.emplace_back(*id, conj);
        if (unit) cell.basis_reps.emplace_back(*id, conj);
    }
    cell.middles.assign(mids.begin(), mids.end());
    return cell;
}

void ExactStructure::ensure_table() const {
    if (table_built_) return;
    std::size_t n = uni_->size();
    table_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) table_[x * n + z] = build_cell(x, z);
    table_built_ = true;
}

const ConfCell& ExactStructure::cell(std::size_t x, std::size_t z) const {
    ensure_table();
    return table_[x * uni_->size() + z];
}

std::vector<std::string> ExactStructure::table_notes() const {
    ensure_table();
    std::vector<std::string> out;
    for (auto& c : table_)
        for (auto& n : c.notes)
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    return out;
}

bool ExactStructure::table_inconclusive() const {
    ensure_table();
    for (auto& c : table_)
        if (c.inconclusive) return true;
    return false;
}

// ---- membership --------------------------------------------------------------

bool ExactStructure::is_conflation(const Conflation& c) const {
    if (!is_kernel_cokernel_pair(c.f, c.g)) return false;
    switch (kind_) {
        case StructKind::abelian:
            return true;
        case StructKind::split: {
            // section of g
            Mat idz = Mat::identity(c.g.mat.field(), c.g.dst->dim());
            return solve_morphism(*c.g.dst, *c.g.src, {{c.g.mat, idz, idz}}).solvable;
        }
        case StructKind::induced: {
            auto rx = uni_->resolve(c.f.src);
            auto rm = uni_->resolve(c.f.dst);
            auto rz = uni_->resolve(c.g.dst);
            if (!rx || !rm || !rz) return false;
            auto in = [&](std::size_t id) {
                return std::binary_search(members_.begin(), members_.end(), id);
            };
            return in(*rx) && in(*rm) && in(*rz) && parent_->is_conflation(c);
        }
        case StructKind::explicit_list: {
            for (auto& m : explicit_) {
                if (m.f.src->dim() != c.f.src->dim() || m.f.dst->dim() != c.f.dst->dim() ||
                    m.g.dst->dim() != c.g.dst->dim())
                    continue;
                if (!is_kernel_cokernel_pair(m.f, m.g)) continue;
                if (sequences_isomorphic(c, m, uni_->cap())) return true;
            }
            return false;
        }
    }
    return false;
}

bool ExactStructure::is_admissible_mono(const Morphism& f) const {
    if (!is_morphism(f) || rank(f.mat) != f.src->dim()) return false;
    if (kind_ == StructKind::abelian) return true;
    if (kind_ == StructKind::split) {
        Mat idx = Mat::identity(f.mat.field(), f.src->dim());
        return solve_morphism(*f.dst, *f.src, {{idx, f.mat, idx}}).solvable;  // retraction
    }
    return is_conflation({f, cokernel(f)});
}

bool ExactStructure::is_admissible_epi(const Morphism& g) const {
    if (!is_morphism(g) || rank(g.mat) != g.dst->dim()) return false;
    if (kind_ == StructKind::abelian) return true;
    if (kind_ == StructKind::split) {
        Mat idz = Mat::identity(g.mat.field(), g.dst->dim());
        return solve_morphism(*g.dst, *g.src, {{g.mat, idz, idz}}).solvable;  // section
    }
    return is_conflation({kernel(g), g});
}

// ---- sequence isomorphism ----------------------------------------------------

namespace {

// enumerate offset + span(basis); fn returns true to stop (found)
bool scan_affine(const PrimeField& f, const Mat& offset, const std::vector<Mat>& basis,
                 std::uint64_t cap, const std::function<bool(const Mat&)>& fn) {
    std::uint64_t total = pow_capped(f.p(), basis.size(), cap);
    if (total > cap) throw UndecidableError("sequence search: enumeration cap exceeded");
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat m = offset;
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Fe c = Fe(rest % f.p());
            rest /= f.p();
            if (c) m = m.add(basis[i].scale(c));
        }
        if (fn(m)) return true;
    }
    return false;
}

} // namespace

bool sequences_isomorphic(const Conflation& c1, const Conflation& c2, std::uint64_t cap) {
    if (c1.f.src->dim() != c2.f.src->dim() || c1.f.dst->dim() != c2.f.dst->dim() ||
        c1.g.dst->dim() != c2.g.dst->dim())
        return false;
    const PrimeField& f = c1.f.mat.field();
    auto homx = hom_space(*c1.f.src, *c2.f.src);
    Mat zx = Mat::zero(f, c2.f.src->dim(), c1.f.src->dim());
    return scan_affine(f, zx, homx, cap, [&](const Mat& a) {
        if (rank(a) != a.rows()) return false;
        // b with b f1 = f2 a
        Mat idy = Mat::identity(f, c2.f.dst->dim());
        auto bs = solve_morphism(*c1.f.dst, *c2.f.dst, {{idy, c1.f.mat, c2.f.mat.mul(a)}});
        if (!bs.solvable) return false;
        bool found = false;
        scan_affine(f, bs.particular, bs.basis, cap, [&](const Mat& b) {
            if (rank(b) != b.rows()) return false;
            // c with c g1 = g2 b; unique since g1 is surjective
            Mat idz = Mat::identity(f, c2.g.dst->dim());
            auto cs = solve_morphism(*c1.g.dst, *c2.g.dst, {{idz, c1.g.mat, c2.g.mat.mul(b)}});
            if (!cs.solvable) return false;
            if (rank(cs.particular) != cs.particular.rows()) return false;
            found = true;
            return true;
        });
        return found;
    });
}

// ---- induced structure ---------------------------------------------------------

ExactPtr induced_structure(ExactPtr parent, const std::vector<std::size_t>& members) {
    UniversePtr u = parent->universe();
    std::vector<std::size_t> d = members;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    if (d.empty() || d[0] != u->zero_id())
        throw SpecError("induced structure: subcategory must contain the zero object");
    for (auto id : d)
        if (id >= u->size()) throw SpecError("induced structure: object id out of range");
    for (auto x : d)
        for (auto z : d) {
            const ConfCell& c = parent->cell(x, z);
            for (auto m : c.middles)
                if (!std::binary_search(d.begin(), d.end(), m))
                    throw SpecError("induced structure: not extension-closed; conflation " +
                                    u->object(x).label + " >-> " + u->object(m).label + " ->> " +
                                    u->object(z).label + " has its middle outside");
        }
    auto s = std::shared_ptr<ExactStructure>(new ExactStructure());
    s->kind_ = StructKind::induced;
    s->uni_ = u;
    s->parent_ = std::move(parent);
    s->members_ = std::move(d);
    return s;
}

// ---- axiom verification ---------------------------------------------------------

namespace {

// invertible middle twists: identity plus elementary units id + e
std::vector<Mat> twist_set(const Universe& u, std::size_t obj, std::size_t limit) {
    const PrimeField& f = u.algebra().field();
    std::size_t d = u.object(obj).mod->dim();
    std::vector<Mat> out{Mat::identity(f, d)};
    if (limit <= 1) return out;
    for (auto& e : u.hom(obj, obj)) {
        Mat m = Mat::identity(f, d).add(e);
        if (rank(m) == d && m != out[0]) out.push_back(m);
        if (out.size() >= limit) break;
    }
    return out;
}

// coset representatives of hom(src, dst-of-g) modulo g . hom(src, mid):
// enumerate all of them through fn (cap-guarded); returns false when capped
bool epi_cosets(const Universe& u, std::size_t src, std::size_t mid, std::size_t zid,
                const Mat& gmat, const std::function<void(const Mat&)>& fn) {
    const PrimeField& f = u.algebra().field();
    auto& homz = u.hom(src, zid);
    auto& homm = u.hom(src, mid);
    std::size_t zd = u.object(zid).mod->dim(), sd = u.object(src).mod->dim();
    Mat span(f, 0, zd * sd);
    for (auto& m : homm) span = span.vstack(vec_row(gmat.mul(m)));
    span = canonical_basis(span);
    std::vector<Mat> coset;
    for (auto& h : homz) {
        Mat v = vec_row(h);
        if (!subspace_member(span, v.entries())) {
            coset.push_back(h);
            span = subspace_sum(span, v);
        }
    }
    std::uint64_t total = pow_capped(f.p(), coset.size(), u.cap());
    if (total > u.cap()) return false;
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat h = Mat::zero(f, zd, sd);
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < coset.size(); ++i) {
            Fe c = Fe(rest % f.p());
            rest /= f.p();
            if (c) h = h.add(coset[i].scale(c));
        }
        fn(h);
    }
    return true;
}

// dual: hom(xid, dst) modulo hom(mid, dst) . f
bool mono_cosets(const Universe& u, std::size_t xid, std::size_t mid, std::size_t dst,
                 const Mat& fmat, const std::function<void(const Mat&)>& fn) {
    const PrimeField& f = u.algebra().field();
    auto& homx = u.hom(xid, dst);
    auto& homm = u.hom(mid, dst);
    std::size_t dd = u.object(dst).mod->dim(), xd = u.object(xid).mod->dim();
    Mat span(f, 0, dd * xd);
    for (auto& m : homm) span = span.vstack(vec_row(m.mul(fmat)));
    span = canonical_basis(span);
    std::vector<Mat> coset;
    for (auto& h : homx) {
        Mat v = vec_row(h);
        if (!subspace_member(span, v.entries())) {
            coset.push_back(h);
            span = subspace_sum(span, v);
        }
    }
    std::uint64_t total = pow_capped(f.p(), coset.size(), u.cap());
    if (total > u.cap()) return false;
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat h = Mat::zero(f, dd, xd);
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < coset.size(); ++i) {
            Fe c = Fe(rest % f.p());
            rest /= f.p();
            if (c) h = h.add(coset[i].scale(c));
        }
        fn(h);
    }
    return true;
}

} // namespace

CheckReport verify_exact_axioms(const ExactStructure& s) {
    const Universe& u = *s.universe();
    CheckReport rep;
    rep.notes.push_back("quantification restricted to the bounded object universe");
    std::size_t n = u.size();

    // precondition: stored members are kernel-cokernel pairs
    {
        bool ok = true;
        std::string detail;
        if (s.kind() == StructKind::explicit_list) {
            for (std::size_t i = 0; i < s.explicit_members().size(); ++i)
                if (!is_kernel_cokernel_pair(s.explicit_members()[i].f, s.explicit_members()[i].g)) {
                    ok = false;
                    detail = "member " + std::to_string(i) + " is not a kernel-cokernel pair";
                    break;
                }
        }
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t z = 0; z < n && ok; ++z)
                for (auto& r : s.cell(x, z).reps)
                    if (!is_kernel_cokernel_pair(r.second.f, r.second.g)) {
                        ok = false;
                        detail = "stored conflation " + u.object(x).label + " >-> " +
                                 u.object(r.first).label + " ->> " + u.object(z).label +
                                 " is not a kernel-cokernel pair";
                        break;
                    }
        rep.add("kernel_cokernel_pairs", ok, detail);
    }

    // Ex0: the identity of the zero object is an admissible epimorphism
    rep.add("ex0", s.is_admissible_epi(Morphism::identity(u.object(u.zero_id()).mod)));

    // gather witnesses, indexed for composition
    struct Rep { std::size_t x, m, z; const Conflation* c; };
    std::vector<Rep> reps;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            for (auto& r : s.cell(x, z).reps) reps.push_back({x, r.first, z, &r.second});
    std::vector<std::vector<const Rep*>> by_mid(n), by_z(n), by_x(n);
    for (auto& r : reps) {
        by_mid[r.m].push_back(&r);
        by_z[r.z].push_back(&r);
        by_x[r.x].push_back(&r);
    }

    // twist budget: full elementary twists only when affordable
    std::uint64_t pairs_epi = 0, pairs_mono = 0;
    for (std::size_t o = 0; o < n; ++o) {
        pairs_epi += std::uint64_t(by_z[o].size()) * by_mid[o].size();
        pairs_mono += std::uint64_t(by_mid[o].size()) * by_x[o].size();
    }
    std::uint64_t budget = s.kind() == StructKind::abelian ? 4000000 : 100000;
    bool with_twists = pairs_epi + pairs_mono < budget;
    std::size_t twist_limit = with_twists ? 64 : 1;
    if (!with_twists)
        rep.notes.push_back("composition axioms checked with identity gluing only (budget)");
    else
        rep.notes.push_back("middle gluing isomorphisms truncated to elementary units");

    // Ex1: admissible epis closed under composition
    {
        bool ok = true;
        std::string detail;
        for (std::size_t o = 0; o < n && ok; ++o) {
            auto tw = twist_set(u, o, twist_limit);
            for (auto* r1 : by_z[o]) {
                for (auto* r2 : by_mid[o]) {
                    for (auto& phi : tw) {
                        Morphism comp{r1->c->g.src, r2->c->g.dst,
                                      r2->c->g.mat.mul(phi).mul(r1->c->g.mat)};
                        if (!s.is_admissible_epi(comp)) {
                            ok = false;
                            detail = "composite epi " + u.object(r1->m).label + " ->> " +
                                     u.object(o).label + " ->> " + u.object(r2->z).label +
                                     " is not admissible";
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
        }
        rep.add("ex1", ok, detail);
    }

    // derived Ex1-op: admissible monos closed under composition
    {
        bool ok = true;
        std::string detail;
        for (std::size_t o = 0; o < n && ok; ++o) {
            auto tw = twist_set(u, o, twist_limit);
            for (auto* r1 : by_mid[o]) {  // f1: x1 >-> o
                for (auto* r2 : by_x[o]) {  // f2: o >-> m2
                    for (auto& phi : tw) {
                        Morphism comp{r1->c->f.src, r2->c->f.dst,
                                      r2->c->f.mat.mul(phi).mul(r1->c->f.mat)};
                        if (!s.is_admissible_mono(comp)) {
                            ok = false;
                            detail = "composite mono " + u.object(r1->x).label + " >-> " +
                                     u.object(o).label + " >-> " + u.object(r2->m).label +
                                     " is not admissible";
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
        }
        rep.add("ex1op", ok, detail);
    }

    // seed (indecomposable) test objects
    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < u.num_seeds(); ++i) {
        std::vector<std::size_t> m(u.num_seeds(), 0);
        m[i] = 1;
        if (auto id = u.id_of(m)) seeds.push_back(*id);
    }

    // Ex2: admissible epis stable under pullback (test morphisms from
    // indecomposables, one representative per coset mod g-liftable maps)
    {
        bool ok = true, inconclusive = false;
        std::string detail;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t z = 0; z < n && ok; ++z) {
                for (auto& r : s.cell(x, z).basis_reps) {
                    for (auto cp : seeds) {
                        bool full = epi_cosets(u, cp, r.first, z, r.second.g.mat, [&](const Mat& h) {
                            if (!ok) return;
                            auto pb = pullback(r.second.g, {u.object(cp).mod, u.object(z).mod, h});
                            if (s.kind() == StructKind::induced && !u.resolve(pb.obj)) {
                                inconclusive = true;
                                return;
                            }
                            if (!s.is_admissible_epi(pb.to_c2)) {
                                ok = false;
                                detail = "pullback of " + u.object(r.first).label + " ->> " +
                                         u.object(z).label + " along a map from " +
                                         u.object(cp).label + " is not admissible";
                            }
                        });
                        if (!full) inconclusive = true;
                        if (!ok) break;
                    }
                    if (!ok) break;
                }
            }
        rep.items.push_back({"ex2", ok ? (inconclusive ? "inconclusive" : "pass") : "fail", detail});
    }

    // Ex2-op: admissible monos stable under pushout
    {
        bool ok = true, inconclusive = false;
        std::string detail;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t z = 0; z < n && ok; ++z) {
                for (auto& r : s.cell(x, z).basis_reps) {
                    for (auto ap : seeds) {
                        bool full = mono_cosets(u, x, r.first, ap, r.second.f.mat, [&](const Mat& h) {
                            if (!ok) return;
                            auto po = pushout(r.second.f, {u.object(x).mod, u.object(ap).mod, h});
                            if (s.kind() == StructKind::induced && !u.resolve(po.obj)) {
                                inconclusive = true;
                                return;
                            }
                            if (!s.is_admissible_mono(po.from_a2)) {
                                ok = false;
                                detail = "pushout of " + u.object(x).label + " >-> " +
                                         u.object(r.first).label + " along a map to " +
                                         u.object(ap).label + " is not admissible";
                            }
                        });
                        if (!full) inconclusive = true;
                        if (!ok) break;
                    }
                    if (!ok) break;
                }
            }
        rep.items.push_back({"ex2op", ok ? (inconclusive ? "inconclusive" : "pass") : "fail", detail});
    }

    // split sequences are members (Remark-level derived check)
    {
        bool ok = true;
        std::string detail;
        bool skipped_any = false;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                std::vector<std::size_t> m = u.object(a).mult;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += u.object(b).mult[i];
                if (!u.id_of(m)) {
                    skipped_any = true;
                    continue;
                }
                auto ds = direct_sum({u.object(a).mod, u.object(b).mod});
                Conflation c{ds.inclusions[0], ds.projections[1]};
                if (!s.is_conflation(c)) {
                    ok = false;
                    detail = "split sequence " + u.object(a).label + " >-> ... ->> " +
                             u.object(b).label + " is not a member";
                }
            }
        if (skipped_any) rep.notes.push_back("split sequences above the bound were skipped");
        rep.add("split_membership", ok, detail);
    }

    for (auto& note : s.table_notes()) rep.notes.push_back(note);
    if (s.table_inconclusive())
        rep.notes.push_back("some conflation cells were enumerated only through their class basis");
    return rep;
}

// ---- projectives / injectives ----------------------------------------------

bool is_s_projective(const ExactStructure& s, std::size_t obj) {
    const Universe& u = *s.universe();
    std::size_t n = u.size();
    const PrimeField& f = u.algebra().field();
    std::size_t pd = u.object(obj).mod->dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            for (auto& r : s.cell(x, z).basis_reps) {
                // post-composition hom(P, M) -> hom(P, Z) must be surjective
                auto& homm = u.hom(obj, r.first);
                auto& homz = u.hom(obj, z);
                Mat span(f, 0, u.object(z).mod->dim() * pd);
                for (auto& m : homm) span = span.vstack(vec_row(r.second.g.mat.mul(m)));
                if (canonical_basis(span).rows() != homz.size()) return false;
            }
    return true;
}

bool is_s_injective(const ExactStructure& s, std::size_t obj) {
    const Universe& u = *s.universe();
    std::size_t n = u.size();
    const PrimeField& f = u.algebra().field();
    std::size_t id = u.object(obj).mod->dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            for (auto& r : s.cell(x, z).basis_reps) {
                // pre-composition hom(M, I) -> hom(X, I) must be surjective
                auto& homm = u.hom(r.first, obj);
                auto& homx = u.hom(x, obj);
                Mat span(f, 0, id * u.object(x).mod->dim());
                for (auto& m : homm) span = span.vstack(vec_row(m.mul(r.second.f.mat)));
                if (canonical_basis(span).rows() != homx.size()) return false;
            }
    return true;
}

EnoughReport has_enough(const ExactStructure& s, bool proj_side) {
    const Universe& u = *s.universe();
    std::size_t n = u.size();
    std::vector<bool> good(n);
    for (std::size_t i = 0; i < n; ++i)
        good[i] = proj_side ? is_s_projective(s, i) : is_s_injective(s, i);
    // good indecomposables: projectivity/injectivity is additive, so sums of
    // these outside the multiplicity bound are still good
    std::vector<ModulePtr> good_seeds;
    for (std::size_t i = 0; i < u.num_seeds(); ++i) {
        std::vector<std::size_t> mult(u.num_seeds(), 0);
        mult[i] = 1;
        auto id = u.id_of(mult);
        if (id && good[*id]) good_seeds.push_back(u.seed(i));
    }
    EnoughReport rep;
    rep.ok = true;
    rep.witness.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t other = 0; other < n && !rep.witness[x]; ++other) {
            const ConfCell& c = proj_side ? s.cell(other, x) : s.cell(x, other);
            for (auto& r : c.reps)
                if (good[r.first]) {
                    rep.witness[x] = r.second;
                    break;
                }
        }
        if (!rep.witness[x] && !good_seeds.empty()) {
            // stacked-hom cover/envelope from good seeds (source or target may
            // exceed the multiplicity bound; admissibility is checked on the
            // concrete sequence)
            ModulePtr X = u.object(x).mod;
            std::vector<ModulePtr> parts;
            std::vector<Mat> maps;
            for (auto& g : good_seeds)
                for (auto& h : hom_space(proj_side ? *g : *X, proj_side ? *X : *g)) {
                    parts.push_back(g);
                    maps.push_back(h);
                }
            if (!parts.empty()) {
                auto ds = direct_sum(parts);
                if (proj_side) {
                    Mat q = Mat::zero(u.algebra().field(), X->dim(), ds.sum->dim());
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        q = q.add(maps[i].mul(ds.projections[i].mat));
                    Morphism epi{ds.sum, X, std::move(q)};
                    if (rank(epi.mat) == X->dim() && s.is_admissible_epi(epi))
                        rep.witness[x] = Conflation{kernel(epi), epi};
                } else {
                    Mat m = Mat::zero(u.algebra().field(), ds.sum->dim(), X->dim());
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        m = m.add(ds.inclusions[i].mat.mul(maps[i]));
                    Morphism mono{X, ds.sum, std::move(m)};
                    if (rank(mono.mat) == X->dim() && s.is_admissible_mono(mono))
                        rep.witness[x] = Conflation{mono, cokernel(mono)};
                }
            }
        }
        if (!rep.witness[x]) {
            rep.ok = false;
            rep.failures.push_back(x);
        }
    }
    return rep;
}

FrobeniusReport is_frobenius(const ExactStructure& s) {
    const Universe& u = *s.universe();
    FrobeniusReport rep;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (is_s_projective(s, i)) rep.projectives.push_back(i);
        if (is_s_injective(s, i)) rep.injectives.push_back(i);
    }
    rep.enough_proj = has_enough(s, true);
    rep.enough_inj = has_enough(s, false);
    rep.frobenius =
        rep.enough_proj.ok && rep.enough_inj.ok && rep.projectives == rep.injectives;
    return rep;
}

} // namespace excat
