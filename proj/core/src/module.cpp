#include "excat/module.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace excat {

namespace {

std::uint64_t pow_capped(std::uint32_t p, std::size_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        v *= p;
        if (v > cap) return cap + 1;
    }
    return v;
}

} // namespace

ModulePtr Module::make(std::shared_ptr<const Algebra> alg, std::vector<Mat> action) {
    const Algebra& a = *alg;
    if (action.size() != a.dim()) throw SpecError("module: one action matrix per basis element required");
    std::size_t d = action.empty() ? 0 : action[0].rows();
    for (auto& m : action)
        if (m.rows() != d || m.cols() != d) throw SpecError("module: action matrices must be square of equal size");
    // rho(1) = id
    Mat rho1 = Mat::zero(a.field(), d, d);
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.unit()[i]) rho1 = rho1.add(action[i].scale(a.unit()[i]));
    if (rho1 != Mat::identity(a.field(), d)) throw SpecError("module: rho(1) != id");
    // structure constants
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Mat lhs = action[i].mul(action[j]);
            Mat rhs = Mat::zero(a.field(), d, d);
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (a.c(i, j, k)) rhs = rhs.add(action[k].scale(a.c(i, j, k)));
            if (lhs != rhs)
                throw SpecError("module: action violates structure constants at basis pair (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return ModulePtr(new Module(std::move(alg), d, std::move(action)));
}

ModulePtr Module::zero(std::shared_ptr<const Algebra> alg) {
    std::vector<Mat> action(alg->dim(), Mat(alg->field(), 0, 0));
    return ModulePtr(new Module(std::move(alg), 0, std::move(action)));
}

ModulePtr Module::regular(std::shared_ptr<const Algebra> alg) {
    std::vector<Mat> action;
    for (std::size_t i = 0; i < alg->dim(); ++i) action.push_back(alg->left_mult(i));
    return make(std::move(alg), std::move(action));
}

Mat Module::elem_action(const std::vector<Fe>& a) const {
    Mat m = Mat::zero(alg_->field(), dim_, dim_);
    for (std::size_t i = 0; i < alg_->dim(); ++i)
        if (a[i]) m = m.add(action_[i].scale(a[i]));
    return m;
}

bool Module::structurally_equal(const Module& o) const {
    if (dim_ != o.dim_ || alg_->dim() != o.alg_->dim()) return false;
    for (std::size_t i = 0; i < action_.size(); ++i)
        if (action_[i] != o.action_[i]) return false;
    return true;
}

bool is_morphism(const Morphism& f) {
    const Algebra& a = f.src->algebra();
    if (f.mat.rows() != f.dst->dim() || f.mat.cols() != f.src->dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (f.mat.mul(f.src->action(i)) != f.dst->action(i).mul(f.mat)) return false;
    return true;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!f.dst->structurally_equal(*g.src))
        throw SpecError("compose: endpoint mismatch");
    return {f.src, g.dst, g.mat.mul(f.mat)};
}

Morphism add(const Morphism& f, const Morphism& g) { return {f.src, f.dst, f.mat.add(g.mat)}; }
Morphism sub(const Morphism& f, const Morphism& g) { return {f.src, f.dst, f.mat.sub(g.mat)}; }

std::vector<Mat> hom_space(const Module& m, const Module& n) {
    AffineMatSpace s = solve_morphism(m, n, {});
    return s.basis;
}

bool is_isomorphism(const Morphism& f) {
    return f.mat.rows() == f.mat.cols() && rank(f.mat) == f.mat.rows();
}

Morphism inverse_of(const Morphism& f) {
    assert(is_isomorphism(f));
    std::size_t n = f.mat.rows();
    const PrimeField& fld = f.mat.field();
    Mat aug = f.mat.hstack(Mat::identity(fld, n));
    Mat r = rref(aug).R;
    return {f.dst, f.src, r.submatrix(0, n, n, n)};
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts) {
    if (parts.empty()) throw SpecError("direct_sum: empty part list");
    auto alg = parts[0]->algebra_ptr();
    const PrimeField& f = alg->field();
    std::size_t total = 0;
    for (auto& p : parts) total += p->dim();
    std::vector<Mat> action;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        Mat blk(f, 0, 0);
        for (auto& p : parts) blk = blk.block_diag(p->action(i));
        action.push_back(std::move(blk));
    }
    DirectSum out;
    out.sum = Module::make(alg, std::move(action));
    std::size_t off = 0;
    for (auto& p : parts) {
        Mat inc(f, total, p->dim());
        Mat prj(f, p->dim(), total);
        for (std::size_t k = 0; k < p->dim(); ++k) {
            inc.at(off + k, k) = 1;
            prj.at(k, off + k) = 1;
        }
        out.inclusions.push_back({p, out.sum, std::move(inc)});
        out.projections.push_back({out.sum, p, std::move(prj)});
        off += p->dim();
    }
    return out;
}

SubmodulePair submodule(ModulePtr m, const Mat& span_rows) {
    const Algebra& a = m->algebra();
    const PrimeField& f = a.field();
    Mat basis = canonical_basis(span_rows);
    std::size_t s = basis.rows();
    Mat inc = basis.transpose();  // columns = basis vectors
    // one rref of [inc | all targets] recovers every induced action at once
    Mat aug = inc;
    for (std::size_t i = 0; i < a.dim(); ++i) aug = aug.hstack(m->action(i).mul(inc));
    auto rr = rref(aug);
    const Mat& r = rr.R;
    // invariance: no pivot may fall outside the first s columns
    for (auto p : rr.pivots)
        if (p >= s) throw SpecError("submodule: span is not action-invariant");
    std::vector<Mat> action;
    for (std::size_t i = 0; i < a.dim(); ++i)
        action.push_back(r.submatrix(0, s * (i + 1), s, s));
    ModulePtr sub = Module::make(m->algebra_ptr(), std::move(action));
    return {sub, Morphism{sub, m, std::move(inc)}};
}

QuotientPair quotient_module(ModulePtr m, const Mat& sub_rows) {
    const Algebra& a = m->algebra();
    const PrimeField& f = a.field();
    Mat sub = canonical_basis(sub_rows);
    std::size_t n = m->dim(), s = sub.rows(), q = n - s;
    // non-pivot coordinates index the quotient
    std::vector<std::size_t> leads;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < s; ++r) {
        std::size_t lead = 0;
        while (lead < n && sub.at(r, lead) == 0) ++lead;
        leads.push_back(lead);
        is_pivot[lead] = true;
    }
    std::vector<std::size_t> free_coords;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_coords.push_back(c);
    // projection: reduce by sub rows, then read off free coordinates
    Mat proj(f, q, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Fe> v(n, 0);
        v[c] = 1;
        for (std::size_t r = 0; r < s; ++r) {
            Fe factor = v[leads[r]];
            if (!factor) continue;
            for (std::size_t cc = 0; cc < n; ++cc) v[cc] = f.sub(v[cc], f.mul(factor, sub.at(r, cc)));
        }
        for (std::size_t i = 0; i < q; ++i) proj.at(i, c) = v[free_coords[i]];
    }
    // section: unit vectors at free coordinates
    Mat sect(f, n, q);
    for (std::size_t i = 0; i < q; ++i) sect.at(free_coords[i], i) = 1;
    std::vector<Mat> action;
    for (std::size_t i = 0; i < a.dim(); ++i)
        action.push_back(proj.mul(m->action(i)).mul(sect));
    ModulePtr quot = Module::make(m->algebra_ptr(), std::move(action));
    QuotientPair out{quot, Morphism{m, quot, std::move(proj)}};
    if (!is_morphism(out.proj)) throw SpecError("quotient_module: subspace is not action-invariant");
    return out;
}

// ---- solve_morphism --------------------------------------------------------

AffineMatSpace solve_morphism(const Module& src, const Module& dst,
                              const std::vector<MatConstraint>& constraints,
                              const std::vector<std::vector<Mat>>& constraint_slack) {
    const Algebra& alg = src.algebra();
    const PrimeField& fld = alg.field();
    std::size_t a = dst.dim(), b = src.dim();
    std::size_t nt = a * b;
    std::size_t nslack = 0;
    for (auto& s : constraint_slack) nslack += s.size();
    std::size_t nvars = nt + nslack;

    std::vector<std::vector<Fe>> rows;
    std::vector<Fe> rhs;

    auto tvar = [&](std::size_t r, std::size_t c) { return r * b + c; };

    // intertwining: T * rho_src(i) - rho_dst(i) * T = 0
    for (std::size_t g = 0; g < alg.dim(); ++g) {
        const Mat& rs = src.action(g);
        const Mat& rd = dst.action(g);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) {
                std::vector<Fe> row(nvars, 0);
                for (std::size_t k = 0; k < b; ++k)
                    row[tvar(i, k)] = fld.add(row[tvar(i, k)], rs.at(k, j));
                for (std::size_t k = 0; k < a; ++k)
                    row[tvar(k, j)] = fld.sub(row[tvar(k, j)], rd.at(i, k));
                bool nonzero = false;
                for (Fe x : row) if (x) { nonzero = true; break; }
                if (nonzero) {
                    rows.push_back(std::move(row));
                    rhs.push_back(0);
                }
            }
    }

    // custom constraints P T Q = R (+ slack)
    std::size_t slack_off = nt;
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
        const MatConstraint& con = constraints[ci];
        const std::vector<Mat>* slack =
            ci < constraint_slack.size() ? &constraint_slack[ci] : nullptr;
        std::size_t r = con.lhs_pre.rows(), c = con.lhs_post.cols();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < c; ++k) {
                std::vector<Fe> row(nvars, 0);
                for (std::size_t j = 0; j < a; ++j) {
                    Fe pij = con.lhs_pre.at(i, j);
                    if (!pij) continue;
                    for (std::size_t l = 0; l < b; ++l) {
                        Fe qlk = con.lhs_post.at(l, k);
                        if (!qlk) continue;
                        row[tvar(j, l)] = fld.add(row[tvar(j, l)], fld.mul(pij, qlk));
                    }
                }
                if (slack)
                    for (std::size_t s = 0; s < slack->size(); ++s)
                        row[slack_off + s] = fld.neg((*slack)[s].at(i, k));
                rows.push_back(std::move(row));
                rhs.push_back(con.rhs.at(i, k));
            }
        if (slack) slack_off += slack->size();
    }

    Mat sys(fld, rows.size(), nvars);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];

    AffineMatSpace out;
    auto sol = solve(sys, rhs);
    if (!sol) return out;
    out.solvable = true;
    out.particular = Mat(fld, a, b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) out.particular.at(i, j) = sol->x0[tvar(i, j)];
    // project nullspace onto the T block, then canonicalize
    Mat proj(fld, sol->nullbasis.rows(), nt);
    for (std::size_t r = 0; r < sol->nullbasis.rows(); ++r)
        for (std::size_t j = 0; j < nt; ++j) proj.at(r, j) = sol->nullbasis.at(r, j);
    Mat cb = canonical_basis(proj);
    for (std::size_t r = 0; r < cb.rows(); ++r) {
        Mat t(fld, a, b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) t.at(i, j) = cb.at(r, tvar(i, j));
        out.basis.push_back(std::move(t));
    }
    return out;
}

std::uint64_t AffineMatSpace::count(std::uint32_t p, std::uint64_t cap) const {
    if (!solvable) return 0;
    return pow_capped(p, basis.size(), cap);
}

// ---- decomposition ---------------------------------------------------------

namespace {

// Enumerate all elements of span(basis) + offset, calling fn; fn returning
// true stops and the element is returned.
std::optional<Mat> scan_span(const PrimeField& f, const Mat& offset, const std::vector<Mat>& basis,
                             std::uint64_t cap, const std::function<bool(const Mat&)>& fn);

std::optional<Mat> scan_span(const PrimeField& f, const Mat& offset, const std::vector<Mat>& basis,
                             std::uint64_t cap, const std::function<bool(const Mat&)>& fn) {
    std::uint64_t total = pow_capped(f.p(), basis.size(), cap);
    if (total > cap) throw UndecidableError("scan_span: enumeration cap exceeded");
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat m = offset;
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Fe coeff = Fe(rest % f.p());
            rest /= f.p();
            if (coeff) m = m.add(basis[i].scale(coeff));
        }
        if (fn(m)) return m;
    }
    return std::nullopt;
}

struct Split {
    Mat im_basis;   // rows
    Mat ker_basis;  // rows
};

// Fitting: iterate e until the rank stabilizes; a proper invariant splitting
// im(e^k) (+) ker(e^k) when 0 < rank < dim.
std::optional<Split> fitting_split(const PrimeField& f, const Mat& e, std::size_t dim) {
    Mat pw = e;
    std::size_t r_prev = rank(pw);
    for (std::size_t it = 0; it < dim + 1; ++it) {
        Mat nx = pw.mul(pw);
        std::size_t r = rank(nx);
        if (r == r_prev) break;
        pw = std::move(nx);
        r_prev = r;
    }
    if (r_prev == 0 || r_prev == dim) return std::nullopt;
    Split s{canonical_basis(pw.transpose()), nullspace(pw)};
    return s;
}

void split_and_recurse(ModulePtr m, const Split& s, std::uint64_t cap, std::vector<Summand>& out);

void decompose_into(ModulePtr m, std::uint64_t cap, std::vector<Summand>& out) {
    const PrimeField& f = m->algebra().field();
    if (m->dim() == 0) return;
    auto end_basis = hom_space(*m, *m);
    std::uint64_t total = pow_capped(f.p(), end_basis.size(), cap);
    if (total <= cap) {
        // exhaustive idempotent scan: certified answer
        Mat id = Mat::identity(f, m->dim());
        Mat zero = Mat::zero(f, m->dim(), m->dim());
        std::optional<Mat> idem = scan_span(f, zero, end_basis, cap, [&](const Mat& e) {
            return e.mul(e) == e && !e.is_zero() && e != id;
        });
        if (!idem) {
            out.push_back({m, Morphism::identity(m), Morphism::identity(m)});
            return;
        }
        Split s{canonical_basis(idem->transpose()), nullspace(*idem)};
        split_and_recurse(m, s, cap, out);
        return;
    }
    // basis-generated Fitting search
    for (std::size_t i = 0; i < end_basis.size(); ++i) {
        auto s = fitting_split(f, end_basis[i], m->dim());
        if (s) { split_and_recurse(m, *s, cap, out); return; }
    }
    for (std::size_t i = 0; i < end_basis.size(); ++i)
        for (std::size_t j = i + 1; j < end_basis.size(); ++j) {
            auto s = fitting_split(f, end_basis[i].add(end_basis[j]), m->dim());
            if (s) { split_and_recurse(m, *s, cap, out); return; }
        }
    throw UndecidableError("indecompose: |End| exceeds cap and basis-generated search found no splitting");
}

void split_and_recurse(ModulePtr m, const Split& s, std::uint64_t cap, std::vector<Summand>& out) {
    const PrimeField& f = m->algebra().field();
    std::size_t n = m->dim();
    std::size_t d1 = s.im_basis.rows(), d2 = s.ker_basis.rows();
    assert(d1 + d2 == n);
    // change of basis: columns [im | ker]
    Mat cols = s.im_basis.transpose().hstack(s.ker_basis.transpose());
    Mat inv = inverse_of({nullptr, nullptr, cols}).mat;
    auto p1 = submodule(m, s.im_basis);
    auto p2 = submodule(m, s.ker_basis);
    Morphism proj1{m, p1.sub, inv.submatrix(0, 0, d1, n)};
    Morphism proj2{m, p2.sub, inv.submatrix(d1, 0, d2, n)};
    std::vector<Summand> sub1, sub2;
    decompose_into(p1.sub, cap, sub1);
    decompose_into(p2.sub, cap, sub2);
    for (auto& su : sub1)
        out.push_back({su.part, compose(p1.incl, su.incl), compose(su.proj, proj1)});
    for (auto& su : sub2)
        out.push_back({su.part, compose(p2.incl, su.incl), compose(su.proj, proj2)});
}

} // namespace

std::vector<Summand> indecompose(ModulePtr m, std::uint64_t cap) {
    std::vector<Summand> out;
    decompose_into(m, cap, out);
    return out;
}

bool is_indecomposable(ModulePtr m, std::uint64_t cap) {
    return m->dim() > 0 && indecompose(m, cap).size() == 1;
}

std::optional<Morphism> are_isomorphic(ModulePtr m, ModulePtr n, std::uint64_t cap) {
    const PrimeField& f = m->algebra().field();
    if (m->dim() != n->dim()) return std::nullopt;
    if (m->dim() == 0) return Morphism::zero(m, n);
    auto basis = hom_space(*m, *n);
    std::uint64_t total = pow_capped(f.p(), basis.size(), cap);
    if (total <= cap) {
        Mat zero = Mat::zero(f, n->dim(), m->dim());
        auto hit = scan_span(f, zero, basis, cap,
                             [&](const Mat& t) { return rank(t) == t.rows(); });
        if (!hit) return std::nullopt;
        return Morphism{m, n, *hit};
    }
    // compare Krull-Schmidt decompositions and assemble an isomorphism
    auto dm = indecompose(m, cap);
    auto dn = indecompose(n, cap);
    if (dm.size() != dn.size()) return std::nullopt;
    std::vector<bool> used(dn.size(), false);
    Mat acc = Mat::zero(f, n->dim(), m->dim());
    for (auto& sm : dm) {
        bool matched = false;
        for (std::size_t j = 0; j < dn.size(); ++j) {
            if (used[j]) continue;
            auto iso = are_isomorphic(sm.part, dn[j].part, cap);
            if (iso) {
                used[j] = true;
                matched = true;
                acc = acc.add(dn[j].incl.mat.mul(iso->mat).mul(sm.proj.mat));
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    Morphism out{m, n, acc};
    assert(is_isomorphism(out));
    return out;
}

} // namespace excat
