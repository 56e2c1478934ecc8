#include "excat/mat.hpp"

#include <cassert>
#include <stdexcept>

namespace excat {

namespace {

// ---- packed GF(2) kernels --------------------------------------------------

struct Packed2 {
    std::size_t rows, cols, words;
    std::vector<std::uint64_t> w;  // row-major, `words` words per row

    Packed2(std::size_t r, std::size_t c)
        : rows(r), cols(c), words((c + 63) / 64), w(r * words, 0) {}

    std::uint64_t* row(std::size_t r) { return w.data() + r * words; }
    const std::uint64_t* row(std::size_t r) const { return w.data() + r * words; }
    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= std::uint64_t(1) << (c & 63); }
    void xor_rows(std::size_t dst, std::size_t src) {
        auto* d = row(dst);
        const auto* s = row(src);
        for (std::size_t k = 0; k < words; ++k) d[k] ^= s[k];
    }
};

Packed2 pack2(const Mat& a) {
    Packed2 p(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.at(r, c)) p.set(r, c);
    return p;
}

Mat unpack2(const Packed2& p, PrimeField f) {
    Mat m(f, p.rows, p.cols);
    for (std::size_t r = 0; r < p.rows; ++r)
        for (std::size_t c = 0; c < p.cols; ++c)
            if (p.get(r, c)) m.at(r, c) = 1;
    return m;
}

std::vector<std::size_t> rref2_inplace(Packed2& m) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < m.cols && pr < m.rows; ++pc) {
        std::size_t sel = pr;
        while (sel < m.rows && !m.get(sel, pc)) ++sel;
        if (sel == m.rows) continue;
        if (sel != pr)
            for (std::size_t k = 0; k < m.words; ++k)
                std::swap(m.row(sel)[k], m.row(pr)[k]);
        for (std::size_t r = 0; r < m.rows; ++r)
            if (r != pr && m.get(r, pc)) m.xor_rows(r, pr);
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

// ---- generic elimination ---------------------------------------------------

std::vector<std::size_t> rref_generic_inplace(Mat& m) {
    const PrimeField& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
        std::size_t sel = pr;
        while (sel < m.rows() && m.at(sel, pc) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(pr, c));
        Fe piv_inv = f.inv(m.at(pr, pc));
        for (std::size_t c = pc; c < m.cols(); ++c) m.at(pr, c) = f.mul(m.at(pr, c), piv_inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr) continue;
            Fe factor = m.at(r, pc);
            if (factor == 0) continue;
            for (std::size_t c = pc; c < m.cols(); ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(pr, c)));
        }
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

} // namespace

Mat Mat::transpose() const {
    Mat t(fld_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Mat Mat::mul(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Mat::mul: dimension mismatch");
    Mat out(fld_, rows_, rhs.cols_);
    if (fld_.p() == 2) {
        Packed2 b = pack2(rhs);
        Packed2 o(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            auto* orow = o.row(r);
            for (std::size_t k = 0; k < cols_; ++k)
                if (at(r, k)) {
                    const auto* brow = b.row(k);
                    for (std::size_t wdx = 0; wdx < b.words; ++wdx) orow[wdx] ^= brow[wdx];
                }
        }
        return unpack2(o, fld_);
    }
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k)
                acc += std::uint64_t(at(r, k)) * rhs.at(k, c);
            out.at(r, c) = fld_.reduce(acc);
        }
    return out;
}

Mat Mat::add(const Mat& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    Mat out(fld_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = fld_.add(e_[i], rhs.e_[i]);
    return out;
}

Mat Mat::sub(const Mat& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    Mat out(fld_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = fld_.sub(e_[i], rhs.e_[i]);
    return out;
}

Mat Mat::scale(Fe c) const {
    Mat out(fld_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = fld_.mul(e_[i], c);
    return out;
}

std::vector<Fe> Mat::apply(const std::vector<Fe>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Mat::apply: dimension mismatch");
    std::vector<Fe> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t(at(r, c)) * v[c];
        out[r] = fld_.reduce(acc);
    }
    return out;
}

Mat Mat::vstack(const Mat& lo) const {
    assert(cols_ == lo.cols_);
    Mat out(fld_, rows_ + lo.rows_, cols_);
    std::copy(e_.begin(), e_.end(), out.e_.begin());
    std::copy(lo.e_.begin(), lo.e_.end(), out.e_.begin() + e_.size());
    return out;
}

Mat Mat::hstack(const Mat& right) const {
    assert(rows_ == right.rows_);
    Mat out(fld_, rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < right.cols_; ++c) out.at(r, cols_ + c) = right.at(r, c);
    }
    return out;
}

Mat Mat::block_diag(const Mat& other) const {
    Mat out(fld_, rows_ + other.rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
        for (std::size_t c = 0; c < other.cols_; ++c) out.at(rows_ + r, cols_ + c) = other.at(r, c);
    return out;
}

Mat Mat::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    Mat out(fld_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = at(r0 + r, c0 + c);
    return out;
}

RrefResult rref(const Mat& a) {
    if (a.field().p() == 2) {
        Packed2 p = pack2(a);
        auto pivots = rref2_inplace(p);
        return {unpack2(p, a.field()), std::move(pivots)};
    }
    Mat m = a;
    auto pivots = rref_generic_inplace(m);
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& a) {
    if (a.field().p() == 2) {
        Packed2 p = pack2(a);
        return rref2_inplace(p).size();
    }
    Mat m = a;
    return rref_generic_inplace(m).size();
}

Mat nullspace(const Mat& a) {
    auto [r, pivots] = rref(a);
    const PrimeField& f = a.field();
    std::vector<std::size_t> free_cols;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (pi < pivots.size() && pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Mat basis(f, free_cols.size(), a.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        std::size_t fc = free_cols[i];
        basis.at(i, fc) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            basis.at(i, pivots[pi]) = f.neg(r.at(pi, fc));
    }
    return canonical_basis(basis);
}

std::optional<SolveResult> solve(const Mat& a, const std::vector<Fe>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const PrimeField& f = a.field();
    Mat aug(f, a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto [r, pivots] = rref(aug);
    // inconsistent iff a pivot lands in the augmented column
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Fe> x0(a.cols(), 0);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) x0[pivots[pi]] = r.at(pi, a.cols());
    return SolveResult{std::move(x0), nullspace(a)};
}

Mat canonical_basis(const Mat& span_rows) {
    auto [r, pivots] = rref(span_rows);
    return r.submatrix(0, 0, pivots.size(), span_rows.cols());
}

Mat subspace_sum(const Mat& a, const Mat& b) {
    return canonical_basis(a.vstack(b));
}

Mat subspace_intersection(const Mat& a, const Mat& b) {
    // Zassenhaus: rref of [A A; B 0]; rows with zero left half carry the
    // intersection in their right half.
    const PrimeField& f = a.field();
    std::size_t n = a.cols();
    Mat big(f, a.rows() + b.rows(), 2 * n);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) {
            big.at(r, c) = a.at(r, c);
            big.at(r, n + c) = a.at(r, c);
        }
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) big.at(a.rows() + r, c) = b.at(r, c);
    auto [rr, pivots] = rref(big);
    Mat inter(f, 0, n);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] < n) continue;
        Mat row(f, 1, n);
        for (std::size_t c = 0; c < n; ++c) row.at(0, c) = rr.at(i, n + c);
        inter = inter.vstack(row);
    }
    return canonical_basis(inter);
}

bool subspace_member(const Mat& basis, const std::vector<Fe>& v) {
    const PrimeField& f = basis.field();
    std::vector<Fe> w = v;
    auto cb = canonical_basis(basis);
    // reduce w by echelon rows
    for (std::size_t r = 0; r < cb.rows(); ++r) {
        std::size_t lead = 0;
        while (lead < cb.cols() && cb.at(r, lead) == 0) ++lead;
        if (lead == cb.cols()) continue;
        Fe factor = w[lead];  // pivot is 1 in rref
        if (factor == 0) continue;
        for (std::size_t c = 0; c < cb.cols(); ++c) w[c] = f.sub(w[c], f.mul(factor, cb.at(r, c)));
    }
    for (Fe x : w) if (x != 0) return false;
    return true;
}

bool subspace_contains(const Mat& outer, const Mat& inner) {
    Mat o = canonical_basis(outer);
    for (std::size_t r = 0; r < inner.rows(); ++r) {
        std::vector<Fe> v(inner.cols());
        for (std::size_t c = 0; c < inner.cols(); ++c) v[c] = inner.at(r, c);
        if (!subspace_member(o, v)) return false;
    }
    return true;
}

Mat quotient_complement(const Mat& sub, std::size_t ambient_dim) {
    const PrimeField& f = sub.field();
    Mat cb = canonical_basis(sub);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (std::size_t r = 0; r < cb.rows(); ++r) {
        std::size_t lead = 0;
        while (lead < ambient_dim && cb.at(r, lead) == 0) ++lead;
        if (lead < ambient_dim) is_pivot[lead] = true;
    }
    std::size_t q = ambient_dim - cb.rows();
    Mat reps(f, q, ambient_dim);
    std::size_t i = 0;
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) reps.at(i++, c) = 1;
    return reps;
}

} // namespace excat
