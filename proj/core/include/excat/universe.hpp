#pragma once

#include "excat/module.hpp"

#include <map>
#include <string>

namespace excat {

/// One object of the bounded universe: a formal direct sum of the seed
/// indecomposables, stored with its multiplicity vector and a concrete module.
struct UniverseObject {
    std::vector<std::size_t> mult;
    ModulePtr mod;
    std::string label;
};

/// All formal sums of the seed indecomposables with per-seed multiplicity at
/// most `mult_bound`, in lexicographic multiplicity order (the zero object is
/// id 0). Immutable after build; hom-space bases are memoized on demand
/// (single-threaded use).
class Universe {
public:
    /// Verifies the seeds are pairwise non-isomorphic indecomposables, then
    /// enumerates all multiplicity vectors. Throws SpecError on bad seeds.
    static std::shared_ptr<const Universe> build(std::shared_ptr<const Algebra> alg,
                                                 std::vector<ModulePtr> seeds,
                                                 std::vector<std::string> seed_labels,
                                                 std::size_t mult_bound,
                                                 std::uint64_t cap = 1u << 16);

    const Algebra& algebra() const { return *alg_; }
    std::shared_ptr<const Algebra> algebra_ptr() const { return alg_; }
    std::size_t size() const { return objects_.size(); }
    const UniverseObject& object(std::size_t id) const { return objects_[id]; }
    std::size_t zero_id() const { return 0; }
    std::size_t num_seeds() const { return seeds_.size(); }
    ModulePtr seed(std::size_t i) const { return seeds_[i]; }
    std::size_t mult_bound() const { return bound_; }
    std::uint64_t cap() const { return cap_; }

    /// Object id for a multiplicity vector within bound, if any.
    std::optional<std::size_t> id_of(const std::vector<std::size_t>& mult) const;

    /// Multiplicity vector of an arbitrary module over the seed classes;
    /// nullopt when some indecomposable summand matches no seed. May throw
    /// UndecidableError (cap).
    std::optional<std::vector<std::size_t>> classify(ModulePtr m) const;

    /// Universe id of an arbitrary module; nullopt when out of universe
    /// (unknown summand or multiplicity above bound).
    std::optional<std::size_t> resolve(ModulePtr m) const;

    /// Explicit isomorphism m -> object(id).mod; pre: classify(m) == mult of id.
    Morphism iso_to_object(ModulePtr m, std::size_t id) const;

    /// True when the algebra is a chain k[t]/(t^n); then classify_by_t gives
    /// the class directly from the action of the chosen radical generator.
    bool jordan() const { return jordan_; }
    const std::vector<Fe>& t_elem() const { return t_elem_; }
    std::optional<std::vector<std::size_t>> classify_by_t(const Mat& t_action) const;

    /// Memoized canonical hom basis between universe objects.
    const std::vector<Mat>& hom(std::size_t x, std::size_t y) const;

    /// dim of object(id).
    std::size_t dim(std::size_t id) const { return objects_[id].mod->dim(); }

private:
    Universe() = default;

    std::optional<std::vector<std::size_t>> classify_jordan(const Module& m) const;

    std::shared_ptr<const Algebra> alg_;
    std::vector<ModulePtr> seeds_;
    std::vector<std::string> seed_labels_;
    std::size_t bound_ = 0;
    std::uint64_t cap_ = 1u << 16;
    std::vector<UniverseObject> objects_;
    std::map<std::vector<std::size_t>, std::size_t> index_;

    // fast classification when the algebra is a chain k[t]/(t^n): the Jordan
    // type of rho(t) determines the module
    bool jordan_ = false;
    Mat t_action_of(const Module& m) const;
    std::vector<Fe> t_elem_;                       // chosen radical generator
    std::vector<std::size_t> block_to_seed_;       // Jordan block size -> seed index

    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Mat>> homs_;
};

using UniversePtr = std::shared_ptr<const Universe>;

/// Algebra-plus-seeds bundle for the built-in presets.
struct Preset {
    std::shared_ptr<const Algebra> alg;
    std::vector<ModulePtr> seeds;
    std::vector<std::string> seed_labels;
};

/// GF(p)[x]/(x^n) with its n indecomposables M_i = k[x]/(x^i), i = 1..n.
Preset preset_truncated_poly(std::uint32_t p, std::size_t n);
/// GF(p)[x,y]/(x,y)^2 with seeds {k, R} (simple and regular).
Preset preset_xy_square(std::uint32_t p);

} // namespace excat
