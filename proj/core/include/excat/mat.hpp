#pragma once

#include "excat/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace excat {

/// Dense row-major matrix over a prime field. Immutable by convention once
/// built; all operations return fresh values.
class Mat {
public:
    Mat(PrimeField f, std::size_t rows, std::size_t cols)
        : fld_(f), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static Mat zero(PrimeField f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }
    static Mat identity(PrimeField f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return fld_; }

    Fe& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    Fe at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    const std::vector<Fe>& entries() const { return e_; }
    std::vector<Fe>& entries() { return e_; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (Fe x : e_) if (x != 0) return false;
        return true;
    }

    Mat transpose() const;
    Mat mul(const Mat& rhs) const;        // this * rhs
    Mat add(const Mat& rhs) const;
    Mat sub(const Mat& rhs) const;
    Mat scale(Fe c) const;
    std::vector<Fe> apply(const std::vector<Fe>& v) const;  // column vector

    /// Rows of `lo` appended below rows of `this` (same cols).
    Mat vstack(const Mat& lo) const;
    /// Columns of `right` appended to the right (same rows).
    Mat hstack(const Mat& right) const;
    /// Block diagonal [this 0; 0 other].
    Mat block_diag(const Mat& other) const;
    Mat submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

private:
    PrimeField fld_;
    std::size_t rows_, cols_;
    std::vector<Fe> e_;
};

struct RrefResult {
    Mat R;
    std::vector<std::size_t> pivots;  // pivot columns in increasing order
};

/// Reduced row echelon form. rank = pivots.size().
RrefResult rref(const Mat& a);
std::size_t rank(const Mat& a);

struct SolveResult {
    std::vector<Fe> x0;   // one particular solution
    Mat nullbasis;        // rows = canonical basis of the nullspace
};

/// Solve A x = b. Empty optional when inconsistent. Throws on dimension
/// mismatch.
std::optional<SolveResult> solve(const Mat& a, const std::vector<Fe>& b);

/// Canonical echelon basis of the nullspace of A, one vector per row.
Mat nullspace(const Mat& a);

// ---- subspace operations -------------------------------------------------
// A subspace is represented by a Mat whose rows span it; canonical form is
// the rref with zero rows dropped, which is unique per subspace.

Mat canonical_basis(const Mat& span_rows);
Mat subspace_sum(const Mat& a, const Mat& b);
Mat subspace_intersection(const Mat& a, const Mat& b);
bool subspace_member(const Mat& basis, const std::vector<Fe>& v);
bool subspace_contains(const Mat& outer, const Mat& inner);

/// Representatives of a basis of ambient/sub (unit vectors at the non-pivot
/// coordinates of the canonical basis of `sub`).
Mat quotient_complement(const Mat& sub, std::size_t ambient_dim);

} // namespace excat
