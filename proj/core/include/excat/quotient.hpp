#pragma once

#include "excat/exact.hpp"

namespace excat {

class QuotientContext;
using QuotientPtr = std::shared_ptr<const QuotientContext>;

/// The quotient category E/N for a full subcategory N of universe objects
/// closed under finite direct sums: per-pair ideal bases, stable hom-spaces,
/// S_N membership and the Weak Five Lemma. Immutable; caches are memoized
/// (single-threaded use).
class QuotientContext {
public:
    /// Verifies 0 in N and closure of N under in-bound pairwise sums; throws
    /// SpecError otherwise.
    static QuotientPtr make(ExactPtr s, std::vector<std::size_t> n_ids);

    ExactPtr structure() const { return s_; }
    UniversePtr universe() const { return s_->universe(); }
    const std::vector<std::size_t>& n_ids() const { return n_; }
    bool in_n(std::size_t id) const;
    /// Every in-bound summand of every N-object lies in N.
    bool n_summand_closed() const;

    /// Canonical basis of I(X,Y): the span of all composites through single
    /// indecomposable generators of N (closed under sums, so this equals the
    /// factoring-through-add-N subspace). Rows are vectorized matrices.
    const Mat& ideal(std::size_t x, std::size_t y) const;
    /// Canonical coset representatives of Hom(X,Y)/I(X,Y), as matrices.
    std::vector<Mat> stable_hom(std::size_t x, std::size_t y) const;
    /// Canonical representative of the coset of f.
    Mat stable_reduce(std::size_t x, std::size_t y, const Mat& f) const;
    bool stable_equal(std::size_t x, std::size_t y, const Mat& f, const Mat& g) const;
    /// f: X -> Y invertible in E/N; one linear solve for a simultaneous
    /// two-sided stable inverse.
    bool stable_is_iso(std::size_t x, std::size_t y, const Mat& f) const;
    /// id_X lies in I(X,X), i.e. X vanishes in E/N.
    bool stably_zero(std::size_t x) const;

    /// Object isomorphy in E/N, decided by Krull-Schmidt: yes iff the
    /// stably-zero-seed-stripped multiplicity vectors agree (witness verified
    /// via stable_is_iso); nullopt is reserved for a failed witness check and
    /// does not occur for valid N.
    std::optional<bool> stably_isomorphic(std::size_t x, std::size_t y) const;
    /// Witness matrix for a certified yes, if any.
    std::optional<Mat> stable_iso_witness(std::size_t x, std::size_t y) const;

    struct ZeroLemma {
        bool is_zero = false;        // X isomorphic to 0 in E/N
        bool summand = false;        // X a summand of a finite sum of N-objects
        bool lemma_holds = false;    // is_zero implies summand
        bool converse_holds = false; // summand implies is_zero
    };
    ZeroLemma stable_zero_lemma(std::size_t x) const;

    /// A sequence X -> Y -> Z in E/N given by representatives.
    struct StableSeq {
        std::size_t x, y, z;
        Mat f, g;
    };
    /// Membership in S_N: some conflation plus stable isomorphisms on all
    /// three terms matching the sequence. nullopt = search capped or a cell
    /// skipped (inconclusive).
    std::optional<bool> sn_membership(const StableSeq& seq) const;

    /// Clauses (i) and (ii) of the Weak Five Lemma, reduced to: for every
    /// conflation representative X >-f-> M ->g-> Z, (f,0) in S_N forces Z = 0
    /// stably, and (0,g) in S_N forces X = 0 stably. Sampling per cell is the
    /// middle representatives plus the class basis (disclosed in notes).
    CheckReport check_weak_five_lemma() const;

    /// Summand/sum closure of N plus a witnessed factorization (alpha an
    /// admissible mono or beta an admissible epi through one add-N object)
    /// for every ideal basis morphism. Witness objects may exceed the
    /// multiplicity bound (disclosed); exhausted in-bound search without a
    /// witness is a fail, capped search is inconclusive.
    CheckReport is_factorization_admissible() const;

private:
    QuotientContext() = default;

    ExactPtr s_;
    std::vector<std::size_t> n_;         // sorted object ids
    std::vector<std::size_t> gen_seeds_; // indecomposable generators of N

    struct Caches;
    std::shared_ptr<Caches> cache_;
};

// ---- Frobenius / stable-category layer --------------------------------------

struct SuspensionData {
    std::size_t tx = 0;  // universe id of TX
    Morphism mono;       // X >--> I (I a concrete sum of injective seeds)
    Morphism epi;        // I -->> TX (universe object)
};

/// A triangle X -> Y -> Z -> TX in the stable category, by representatives.
struct Triangle {
    std::size_t x = 0, y = 0, z = 0, tx = 0;
    Mat u, v, w;
};

class StableContext;
using StablePtr = std::shared_ptr<const StableContext>;

/// The stable category of a verified Frobenius structure (N = the
/// projective-injectives): suspension, standard triangles, distinguished
/// triangles, and the S_N <-> triangle equivalence.
class StableContext {
public:
    /// Throws SpecError when the structure is not Frobenius.
    static StablePtr make(ExactPtr s);

    const QuotientContext& q() const { return *q_; }
    QuotientPtr q_ptr() const { return q_; }
    ExactPtr structure() const { return s_; }
    UniversePtr universe() const { return s_->universe(); }

    /// Deterministic choice of conflation X >--> I -->> TX with I injective:
    /// the first admissible mono into an injective universe object in
    /// (dimension, id, coefficient) order, else the blockwise sum of seed
    /// suspensions. Throws SpecError when TX leaves the universe.
    const SuspensionData& suspension(std::size_t x) const;
    /// Representative of T(f) for f: X -> X2 (well-defined mod the ideal).
    Mat suspend_morphism(std::size_t x, std::size_t x2, const Mat& f) const;

    /// X -> Y -> C_f -> TX from the pushout of f along the chosen mono.
    /// Throws SpecError when the cone leaves the universe.
    Triangle standard_triangle(std::size_t x, std::size_t y, const Mat& f) const;

    /// Isomorphic to some standard triangle (search over stable-class
    /// representative morphisms between the stable classes of the endpoints).
    /// nullopt = capped or a cone left the universe.
    std::optional<bool> is_distinguished(const Triangle& t) const;

    /// Both directions of the S_N <-> distinguished-triangle equivalence over
    /// conflation representatives and stable-class representative morphisms.
    CheckReport verify_sn_iff_triangle() const;

private:
    StableContext() = default;

    ExactPtr s_;
    QuotientPtr q_;
    std::vector<std::size_t> inj_;  // injective ids, sorted by (dim, id)

    struct Caches;
    std::shared_ptr<Caches> cache_;
};

} // namespace excat
