#pragma once

#include "excat/mat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace excat {

/// Input-validation failure; `message` carries the offending field or axiom.
struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AlgebraSpec {
    std::uint32_t p = 2;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Fe> unit;                                   // coordinates of 1
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Fe>> structure;
    bool commutative = false;
};

/// Finite-dimensional algebra over GF(p) given by structure constants
/// c[i][j][k] with b_i * b_j = sum_k c[i][j][k] b_k.
class Algebra {
public:
    /// Validates associativity, the unit, and (if flagged) commutativity.
    /// Throws SpecError naming the violated axiom and indices.
    static Algebra validate(const AlgebraSpec& spec);

    /// Returns all violated axioms instead of throwing; empty means valid.
    static std::vector<std::string> check(const AlgebraSpec& spec);

    const PrimeField& field() const { return fld_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Fe>& unit() const { return unit_; }
    bool commutative() const { return commutative_; }

    Fe c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

    /// Product of elements in coordinates.
    std::vector<Fe> mul(const std::vector<Fe>& a, const std::vector<Fe>& b) const;

    /// Matrix of left multiplication by basis element i (acting on columns).
    const Mat& left_mult(std::size_t i) const { return lmul_[i]; }
    Mat elem_left_mult(const std::vector<Fe>& a) const;

    /// Nilradical = Jacobson radical for a commutative artinian algebra;
    /// canonical echelon basis, one element per row. Commutative only.
    const Mat& radical() const;
    /// True iff commutative with a unique maximal ideal (no nontrivial
    /// idempotent in the semisimple quotient).
    bool is_local() const;

private:
    Algebra(PrimeField f, std::size_t dim) : fld_(f), dim_(dim) {}

    PrimeField fld_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<Fe> unit_;
    std::vector<Fe> c_;  // dim^3 flattened
    bool commutative_ = false;
    std::vector<Mat> lmul_;
    mutable std::optional<Mat> radical_;
};

/// GF(p)[x]/(x^n): basis 1, x, ..., x^(n-1).
Algebra algebra_truncated_poly(std::uint32_t p, std::size_t n);
/// GF(p)[x,y]/(x,y)^2: basis 1, x, y.
Algebra algebra_xy_square(std::uint32_t p);

} // namespace excat
