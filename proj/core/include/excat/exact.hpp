#pragma once

#include "excat/universe.hpp"

#include <functional>

namespace excat {

/// Kernel of g as a submodule inclusion (canonical nullspace basis).
Morphism kernel(const Morphism& g);
/// Cokernel of f as a quotient projection.
Morphism cokernel(const Morphism& f);

/// f is a kernel of g and g is a cokernel of f (abelian-backend criterion:
/// g f = 0, f injective, g surjective, im f = ker g).
bool is_kernel_cokernel_pair(const Morphism& f, const Morphism& g);

/// A kernel-cokernel pair X >--f--> Y --g-->> Z (candidate or member of an
/// exact structure).
struct Conflation {
    Morphism f, g;
};

/// Fiber product of g: B -> C and h: C2 -> C, with the two projections.
struct PullbackResult {
    ModulePtr obj;
    Morphism to_b, to_c2;
};
PullbackResult pullback(const Morphism& g, const Morphism& h);

/// Cofiber coproduct of f: A -> B and h: A -> A2.
struct PushoutResult {
    ModulePtr obj;
    Morphism from_b, from_a2;
};
PushoutResult pushout(const Morphism& f, const Morphism& h);

// ---- verdicts --------------------------------------------------------------

struct CheckItem {
    std::string name;
    std::string status;  // "pass" | "fail" | "inconclusive"
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;
    std::vector<std::string> notes;  // truncation disclosures etc.

    bool all_pass() const;
    bool any_fail() const;
    bool any_inconclusive() const;
    void add(std::string name, bool ok, std::string detail = "");
};

// ---- exact structures -------------------------------------------------------

enum class StructKind { abelian, split, induced, explicit_list };

/// Conflation data for one (end, end) pair of universe objects.
struct ConfCell {
    std::size_t xid = 0, zid = 0;
    /// Sorted distinct middle-object ids over all extension classes.
    std::vector<std::size_t> middles;
    /// Witness conflations between universe objects, one per distinct middle.
    std::vector<std::pair<std::size_t, Conflation>> reps;  // (middle id, witness)
    /// Witnesses for the zero (split) class and each extension-class basis
    /// element; linear conditions on the class need only these.
    std::vector<std::pair<std::size_t, Conflation>> basis_reps;
    std::vector<std::string> notes;  // out-of-universe middles etc.
    bool inconclusive = false;       // enumeration capped
};

class ExactStructure;
using ExactPtr = std::shared_ptr<const ExactStructure>;

/// An exact structure on the bounded universe: an intensional membership
/// predicate plus a conflation enumerator and a memoized per-pair table.
class ExactStructure : public std::enable_shared_from_this<ExactStructure> {
public:
    static ExactPtr make_abelian(UniversePtr u);
    static ExactPtr make_split(UniversePtr u);
    static ExactPtr make_explicit(UniversePtr u, std::vector<Conflation> members);

    StructKind kind() const { return kind_; }
    UniversePtr universe() const { return uni_; }
    std::string name() const;
    /// Object ids of the defining subcategory (induced kind only).
    const std::vector<std::size_t>& induced_members() const { return members_; }
    ExactPtr parent() const { return parent_; }
    const std::vector<Conflation>& explicit_members() const { return explicit_; }

    /// Membership predicate; works on arbitrary modules over the algebra.
    bool is_conflation(const Conflation& c) const;
    bool is_admissible_mono(const Morphism& f) const;
    bool is_admissible_epi(const Morphism& g) const;

    /// Memoized conflation table (built whole on first access).
    const ConfCell& cell(std::size_t x, std::size_t z) const;
    /// Notes aggregated across all cells (truncations, caps).
    std::vector<std::string> table_notes() const;
    bool table_inconclusive() const;

    /// One witness per extension class between two universe objects (not
    /// deduplicated by middle); fn gets the witness plus its middle id and
    /// returns false to stop early. Out-of-universe or capped classes are
    /// skipped and reported through `skipped`.
    void for_each_conflation(
        std::size_t x, std::size_t z,
        const std::function<bool(const Conflation&, std::size_t)>& fn,
        bool* skipped = nullptr) const;

private:
    friend ExactPtr induced_structure(ExactPtr, const std::vector<std::size_t>&);
    ExactStructure() = default;

    void ensure_table() const;
    ConfCell build_cell(std::size_t x, std::size_t z) const;

    StructKind kind_ = StructKind::abelian;
    UniversePtr uni_;
    ExactPtr parent_;                    // induced
    std::vector<std::size_t> members_;   // induced: sorted object ids
    std::vector<Conflation> explicit_;   // explicit_list

    mutable std::vector<ConfCell> table_;
    mutable bool table_built_ = false;
    mutable std::shared_ptr<struct ExactCacheData> cache_;
};

/// The induced structure on an extension-closed subcategory containing 0;
/// throws SpecError (with a witness conflation description) otherwise.
ExactPtr induced_structure(ExactPtr parent, const std::vector<std::size_t>& members);

/// Ex0, Ex1, Ex2, Ex2-op, derived Ex1-op, and split-sequence membership,
/// quantified over the bounded universe (truncations disclosed in notes).
CheckReport verify_exact_axioms(const ExactStructure& s);

bool is_s_projective(const ExactStructure& s, std::size_t obj);
bool is_s_injective(const ExactStructure& s, std::size_t obj);

struct EnoughReport {
    bool ok = false;
    /// Per object id: a witness conflation (epi from a projective onto it, or
    /// mono from it into an injective), when found.
    std::vector<std::optional<Conflation>> witness;
    std::vector<std::size_t> failures;
};
EnoughReport has_enough(const ExactStructure& s, bool proj_side);

struct FrobeniusReport {
    bool frobenius = false;
    std::vector<std::size_t> projectives, injectives;  // object ids, sorted
    EnoughReport enough_proj, enough_inj;
};
FrobeniusReport is_frobenius(const ExactStructure& s);

/// Checks that (a, b, c) with commuting squares carries c1 to c2; enumeration
/// bounded by cap.
bool sequences_isomorphic(const Conflation& c1, const Conflation& c2, std::uint64_t cap);

} // namespace excat
