#include "excat/algebra.hpp"

#include <algorithm>

namespace excat {

std::vector<std::string> Algebra::check(const AlgebraSpec& spec) {
    std::vector<std::string> bad;
    if (!PrimeField::is_prime(spec.p)) {
        bad.push_back("p = " + std::to_string(spec.p) + " is not prime");
        return bad;
    }
    if (spec.dim == 0) {
        bad.push_back("dim must be positive");
        return bad;
    }
    if (spec.unit.size() != spec.dim) {
        bad.push_back("unit coordinate vector has wrong length");
        return bad;
    }
    PrimeField f(spec.p);
    std::size_t d = spec.dim;
    std::vector<Fe> c(d * d * d, 0);
    for (auto& [i, j, k, v] : spec.structure) {
        if (i >= d || j >= d || k >= d) {
            bad.push_back("structure triple index out of range: (" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + ")");
            return bad;
        }
        c[(i * d + j) * d + k] = f.add(c[(i * d + j) * d + k], v % spec.p);
    }
    auto prod = [&](std::size_t i, std::size_t j, std::size_t k) { return c[(i * d + j) * d + k]; };

    // associativity: (b_i b_j) b_k = b_i (b_j b_k)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t m = 0; m < d; ++m) {
                    std::uint64_t lhs = 0, rhs = 0;
                    for (std::size_t t = 0; t < d; ++t) {
                        lhs += std::uint64_t(prod(i, j, t)) * prod(t, k, m);
                        rhs += std::uint64_t(prod(j, k, t)) * prod(i, t, m);
                    }
                    if (f.reduce(lhs) != f.reduce(rhs)) {
                        bad.push_back("associativity violated at basis triple (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
                        goto assoc_done;
                    }
                }
assoc_done:
    // two-sided unit
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t m = 0; m < d; ++m) {
            std::uint64_t le = 0, re = 0;
            for (std::size_t t = 0; t < d; ++t) {
                le += std::uint64_t(spec.unit[t]) * prod(t, i, m);
                re += std::uint64_t(spec.unit[t]) * prod(i, t, m);
            }
            Fe want = (m == i) ? 1 : 0;
            if (f.reduce(le) != want || f.reduce(re) != want) {
                bad.push_back("unit violated at basis " + std::to_string(i));
                break;
            }
        }
    }
    if (spec.commutative) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    if (prod(i, j, k) != prod(j, i, k)) {
                        bad.push_back("commutativity violated at basis pair (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
                        i = j = d;  // break out
                        break;
                    }
    }
    return bad;
}

Algebra Algebra::validate(const AlgebraSpec& spec) {
    auto bad = check(spec);
    if (!bad.empty()) {
        std::string msg = "algebra validation failed:";
        for (auto& b : bad) msg += "\n  " + b;
        throw SpecError(msg);
    }
    PrimeField f(spec.p);
    Algebra a(f, spec.dim);
    a.labels_ = spec.labels;
    if (a.labels_.size() != spec.dim) {
        a.labels_.resize(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i)
            if (a.labels_[i].empty()) a.labels_[i] = "b" + std::to_string(i);
    }
    a.unit_.assign(spec.dim, 0);
    for (std::size_t i = 0; i < spec.dim; ++i) a.unit_[i] = spec.unit[i] % spec.p;
    a.c_.assign(spec.dim * spec.dim * spec.dim, 0);
    for (auto& [i, j, k, v] : spec.structure)
        a.c_[(i * spec.dim + j) * spec.dim + k] =
            f.add(a.c_[(i * spec.dim + j) * spec.dim + k], v % spec.p);
    a.commutative_ = spec.commutative;
    a.lmul_.reserve(spec.dim);
    for (std::size_t i = 0; i < spec.dim; ++i) {
        Mat L(f, spec.dim, spec.dim);
        for (std::size_t j = 0; j < spec.dim; ++j)
            for (std::size_t k = 0; k < spec.dim; ++k) L.at(k, j) = a.c(i, j, k);
        a.lmul_.push_back(std::move(L));
    }
    return a;
}

std::vector<Fe> Algebra::mul(const std::vector<Fe>& a, const std::vector<Fe>& b) const {
    std::vector<Fe> out(dim_, 0);
    for (std::size_t k = 0; k < dim_; ++k) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                acc += std::uint64_t(a[i]) * b[j] % fld_.p() * c(i, j, k);
        }
        out[k] = fld_.reduce(acc);
    }
    return out;
}

Mat Algebra::elem_left_mult(const std::vector<Fe>& a) const {
    Mat m = Mat::zero(fld_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (a[i] != 0) m = m.add(lmul_[i].scale(a[i]));
    return m;
}

const Mat& Algebra::radical() const {
    if (radical_) return *radical_;
    if (!commutative_) throw SpecError("radical: only implemented for commutative algebras");
    // In a commutative algebra over GF(p) the map a -> a^p is GF(p)-linear,
    // so the nilradical is the kernel of an iterated power map.
    Mat frob(fld_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::vector<Fe> x(dim_, 0);
        x[i] = 1;
        std::vector<Fe> acc = x;
        for (std::uint32_t t = 1; t < fld_.p(); ++t) acc = mul(acc, x);
        for (std::size_t k = 0; k < dim_; ++k) frob.at(k, i) = acc[k];
    }
    Mat power = frob;
    std::size_t covered = fld_.p();
    while (covered < dim_ + 1) {
        power = frob.mul(power);
        covered *= fld_.p();
    }
    radical_ = nullspace(power);
    return *radical_;
}

bool Algebra::is_local() const {
    if (!commutative_) return false;
    const Mat& rad = radical();
    std::size_t q = dim_ - rad.rows();
    // Semisimple quotient: local iff it has no nontrivial idempotent.
    // Work with coset representatives of the radical.
    Mat reps = quotient_complement(rad, dim_);
    // enumerate the quotient (small in practice)
    std::size_t qdim = reps.rows();
    (void)q;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < qdim; ++i) {
        total *= fld_.p();
        if (total > (1u << 20)) throw SpecError("is_local: semisimple quotient too large to scan");
    }
    auto reduce_mod_rad = [&](std::vector<Fe> v) {
        for (std::size_t r = 0; r < rad.rows(); ++r) {
            std::size_t lead = 0;
            while (lead < dim_ && rad.at(r, lead) == 0) ++lead;
            if (lead == dim_) continue;
            Fe factor = v[lead];
            if (factor == 0) continue;
            for (std::size_t c2 = 0; c2 < dim_; ++c2)
                v[c2] = fld_.sub(v[c2], fld_.mul(factor, rad.at(r, c2)));
        }
        return v;
    };
    std::vector<Fe> zero(dim_, 0);
    std::vector<Fe> one = reduce_mod_rad(unit_);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        std::vector<Fe> v(dim_, 0);
        for (std::size_t i = 0; i < qdim; ++i) {
            Fe coeff = Fe(rest % fld_.p());
            rest /= fld_.p();
            if (coeff)
                for (std::size_t c2 = 0; c2 < dim_; ++c2)
                    v[c2] = fld_.add(v[c2], fld_.mul(coeff, reps.at(i, c2)));
        }
        auto sq = reduce_mod_rad(mul(v, v));
        auto vr = reduce_mod_rad(v);
        if (sq == vr && vr != zero && vr != one) return false;
    }
    return true;
}

Algebra algebra_truncated_poly(std::uint32_t p, std::size_t n) {
    AlgebraSpec s;
    s.p = p;
    s.dim = n;
    s.commutative = true;
    s.unit.assign(n, 0);
    s.unit[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        s.labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) s.structure.emplace_back(i, j, i + j, 1);
    }
    return Algebra::validate(s);
}

Algebra algebra_xy_square(std::uint32_t p) {
    AlgebraSpec s;
    s.p = p;
    s.dim = 3;
    s.commutative = true;
    s.labels = {"1", "x", "y"};
    s.unit = {1, 0, 0};
    for (std::size_t i = 0; i < 3; ++i) {
        s.structure.emplace_back(0, i, i, 1);
        if (i != 0) s.structure.emplace_back(i, 0, i, 1);
    }
    return Algebra::validate(s);
}

} // namespace excat
