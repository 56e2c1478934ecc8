#pragma once

#include "excat/quotient.hpp"

#include <array>

namespace excat {

enum class Side { ambient, quotient };
enum class SubcatKind { complete, thick };

/// A strictly full subcategory given extensionally by universe object ids.
/// Flags are always recomputed, never trusted from input.
struct Subcategory {
    Side side = Side::ambient;
    std::vector<std::size_t> members;  // sorted ids, always containing 0
    bool complete = false;
    bool thick = false;
    bool contains_n = false;
    bool extension_closed = false;
    bool inconclusive = false;  // some closure cells were capped
};

/// Witness for a failed closure condition.
struct SubcatViolation {
    bool found = false;
    std::array<std::size_t, 3> triple{0, 0, 0};  // x >-> y ->> z (or x, summand, 0)
    std::size_t missing = 0;
    std::string what;
};

struct Lattice {
    SubcatKind kind = SubcatKind::thick;
    Side side = Side::ambient;
    std::vector<Subcategory> sets;  // canonical order: by (size, members)
    std::vector<std::pair<std::size_t, std::size_t>> hasse;  // covering pairs (sub, super)
    bool truncated = false;      // enumeration aborted at the set-count limit
    bool inconclusive = false;   // capped cells or undecided stable classes
};

class SubcatContext;
using SubcatPtr = std::shared_ptr<const SubcatContext>;

/// Complete and thick subcategories of the ambient exact category and of the
/// quotient, their lattices, and the correspondence maps F and G.
class SubcatContext {
public:
    static SubcatPtr make(QuotientPtr q);

    QuotientPtr quotient() const { return q_; }
    ExactPtr structure() const { return q_->structure(); }
    UniversePtr universe() const { return q_->universe(); }

    /// Ambient sequence triples (X, Y, Z) realized by conflations, one per
    /// distinct middle per cell; quotient side: the same triples transported
    /// across stable-isomorphism classes (as class triples on class ids).
    const std::vector<std::array<std::size_t, 3>>& triples(Side side) const;
    /// Canonical stable-class representative (least id).
    std::size_t stable_class(std::size_t id) const;
    /// Some stable-isomorphism decisions or conflation cells were capped.
    bool inconclusive() const { return inconclusive_; }

    /// Least closed superset of generators (plus 0; plus the stably-zero
    /// objects on the quotient side): iso, bounded direct sums, 2-out-of-3
    /// over the side's sequence class, and summands when kind = thick.
    Subcategory closure(const std::vector<std::size_t>& generators, SubcatKind kind,
                        Side side) const;

    SubcatViolation is_complete(const Subcategory& d) const;
    SubcatViolation is_thick(const Subcategory& d) const;

    /// All closed sets by the closure-system enumeration; the ambient side is
    /// seeded with the N-objects so every set contains N. Aborts with partial
    /// output (truncated = true) beyond max_sets.
    Lattice enumerate_closed(SubcatKind kind, Side side, std::size_t max_sets = 4096) const;

    /// Same member set viewed in the quotient; pre: d contains N.
    Subcategory map_F(const Subcategory& d) const;
    /// Member set plus all N-objects, viewed in the ambient category.
    Subcategory map_G(const Subcategory& e) const;

    /// Enumerates both lattices and checks F, G are well-defined mutually
    /// inverse bijections. For kind = complete, first verifies the
    /// hypotheses (factorization admissibility and the Weak Five Lemma) and
    /// refuses when one fails.
    CheckReport verify_correspondence(SubcatKind kind) const;

    /// Quotient-summand and quotient-isomorphism closure of every enumerated
    /// thick ambient subcategory; quotient-isomorphism closure of every
    /// complete one when the hypotheses hold.
    CheckReport check_supporting_props() const;

    /// DOT digraph of a lattice; nodes labeled by componentwise-maximal
    /// multiplicity summaries, edges are covering inclusions.
    std::string to_dot(const Lattice& l) const;

private:
    SubcatContext() = default;

    void recompute_flags(Subcategory& s) const;

    QuotientPtr q_;
    std::vector<std::size_t> cls_;  // stable-class representative per id
    std::vector<std::array<std::size_t, 3>> amb_triples_, quo_triples_;
    bool inconclusive_ = false;
};

} // namespace excat
