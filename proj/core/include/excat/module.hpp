#pragma once

#include "excat/algebra.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace excat {

class Module;
using ModulePtr = std::shared_ptr<const Module>;

/// A finite-dimensional representation: one action matrix per algebra basis
/// element, satisfying the structure constants.
class Module {
public:
    /// Validates the structure-constant relations and rho(1) = id.
    static ModulePtr make(std::shared_ptr<const Algebra> alg, std::vector<Mat> action);
    static ModulePtr zero(std::shared_ptr<const Algebra> alg);
    /// The regular module: b_i acts by left multiplication.
    static ModulePtr regular(std::shared_ptr<const Algebra> alg);

    const Algebra& algebra() const { return *alg_; }
    std::shared_ptr<const Algebra> algebra_ptr() const { return alg_; }
    std::size_t dim() const { return dim_; }
    const Mat& action(std::size_t i) const { return action_[i]; }
    /// Action of an arbitrary algebra element given by coordinates.
    Mat elem_action(const std::vector<Fe>& a) const;

    bool structurally_equal(const Module& o) const;

private:
    Module(std::shared_ptr<const Algebra> alg, std::size_t dim, std::vector<Mat> action)
        : alg_(std::move(alg)), dim_(dim), action_(std::move(action)) {}

    std::shared_ptr<const Algebra> alg_;
    std::size_t dim_;
    std::vector<Mat> action_;
};

/// A module morphism; mat has shape (dst.dim x src.dim) and intertwines the
/// actions.
struct Morphism {
    ModulePtr src, dst;
    Mat mat;

    static Morphism zero(ModulePtr s, ModulePtr d) {
        Mat m = Mat::zero(s->algebra().field(), d->dim(), s->dim());
        return {std::move(s), std::move(d), std::move(m)};
    }
    static Morphism identity(ModulePtr m) {
        Mat i = Mat::identity(m->algebra().field(), m->dim());
        return {m, m, std::move(i)};
    }
    bool is_zero() const { return mat.is_zero(); }
};

/// Checks the intertwining relations.
bool is_morphism(const Morphism& f);

/// g after f; throws on endpoint mismatch.
Morphism compose(const Morphism& g, const Morphism& f);
Morphism add(const Morphism& f, const Morphism& g);
Morphism sub(const Morphism& f, const Morphism& g);

/// Canonical basis of Hom(M, N) as matrices (row-major vectorization,
/// echelonized), deterministic across runs.
std::vector<Mat> hom_space(const Module& m, const Module& n);

bool is_isomorphism(const Morphism& f);
Morphism inverse_of(const Morphism& f);  // pre: is_isomorphism

struct DirectSum {
    ModulePtr sum;
    std::vector<Morphism> inclusions;
    std::vector<Morphism> projections;
};
DirectSum direct_sum(const std::vector<ModulePtr>& parts);

/// Submodule spanned by the rows of `span_rows` (must be action-invariant);
/// returns the module together with its inclusion.
struct SubmodulePair {
    ModulePtr sub;
    Morphism incl;
};
SubmodulePair submodule(ModulePtr m, const Mat& span_rows);

/// Quotient by an invariant subspace; returns module with projection.
struct QuotientPair {
    ModulePtr quot;
    Morphism proj;
};
QuotientPair quotient_module(ModulePtr m, const Mat& sub_rows);

struct UndecidableError : std::runtime_error {
    explicit UndecidableError(const std::string& m) : std::runtime_error(m) {}
};

/// Search Hom(M,N) for an invertible element. Enumerates the hom space when
/// |Hom| <= cap, otherwise falls back to comparing Krull-Schmidt
/// decompositions. Throws UndecidableError when neither route is conclusive.
std::optional<Morphism> are_isomorphic(ModulePtr m, ModulePtr n, std::uint64_t cap = 1u << 16);

struct Summand {
    ModulePtr part;
    Morphism incl;  // part -> M
    Morphism proj;  // M -> part, proj . incl = id
};

/// Krull-Schmidt decomposition via idempotent search / Fitting's lemma.
/// Certified when |End(M)| <= cap (exhaustive idempotent scan); otherwise a
/// basis-generated search that throws UndecidableError when inconclusive.
std::vector<Summand> indecompose(ModulePtr m, std::uint64_t cap = 1u << 16);

bool is_indecomposable(ModulePtr m, std::uint64_t cap = 1u << 16);

// ---- morphism-space linear solving ----------------------------------------

/// Affine set of matrices { particular + span(basis) }, or empty.
struct AffineMatSpace {
    bool solvable = false;
    Mat particular;
    std::vector<Mat> basis;

    AffineMatSpace() : particular(PrimeField(2), 0, 0) {}
    std::uint64_t count(std::uint32_t p, std::uint64_t cap) const;
};

/// Constraint of the form  P * T * Q == R  on an unknown (a x b) matrix T.
struct MatConstraint {
    Mat lhs_pre;   // P, (r x a)
    Mat lhs_post;  // Q, (b x c)
    Mat rhs;       // R, (r x c)
};

/// Solve for T in Hom(src, dst) subject to additional linear constraints,
/// optionally modulo a subspace of Hom (each constraint is then required to
/// hold up to an element of `mod_span` composed appropriately... the spans
/// are added as free unknowns on the right-hand side of each constraint).
AffineMatSpace solve_morphism(const Module& src, const Module& dst,
                              const std::vector<MatConstraint>& constraints,
                              const std::vector<std::vector<Mat>>& constraint_slack = {});

} // namespace excat
