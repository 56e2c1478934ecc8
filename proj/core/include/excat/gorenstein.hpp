#pragma once

#include "excat/subcat.hpp"

namespace excat {

/// Finite window of a minimal free resolution ... -> F_1 -> F_0 -> M -> 0.
/// covers[0] is (rank F_0, augmentation F_0 -> M); covers[i] for i >= 1 is
/// (rank F_i, differential F_i -> F_{i-1}). syzygies[i] is the i+1-st syzygy.
struct FreeResolution {
    ModulePtr module;
    std::vector<std::pair<std::size_t, Mat>> covers;
    std::vector<ModulePtr> syzygies;
    /// (i, j) with syzygy^i = syzygy^j (index 0 = M itself); minimality makes
    /// the resolution eventually periodic with period j - i.
    std::optional<std::pair<std::size_t, std::size_t>> period;
};

/// Bounded Ext^{>0}(M, R) vanishing verdict with a periodicity certificate.
struct ExtVerdict {
    std::size_t vanishes_through = 0;                         // Ext^1..d all zero
    std::optional<std::pair<std::size_t, std::size_t>> periodic;
    std::optional<std::size_t> failure;                       // first nonzero degree
    bool certified = false;  // periodicity closes the window: all degrees vanish
};

struct TotalReflexivityVerdict {
    bool biduality_iso = false;
    ExtVerdict ext_m, ext_mstar;
    bool certified = false;

    bool verified() const {
        return biduality_iso && !ext_m.failure && !ext_mstar.failure && certified;
    }
};

/// M* = Hom(M, R) with (r.phi)(m) = phi(rm); commutative algebras only.
ModulePtr dual_module(ModulePtr m);
/// Contravariant dual of f: M -> N, as N* -> M* in the canonical dual bases.
Morphism dual_morphism(const Morphism& f);

struct Biduality {
    Morphism map;  // the evaluation M -> M**
    bool is_iso = false;
};
Biduality biduality(ModulePtr m);

/// Minimal free resolution with `depth` covers; ranks are top dimensions, so
/// the window is unique up to isomorphism. Throws SpecError when a syzygy
/// exceeds the dimension cap.
FreeResolution free_resolution(ModulePtr m, std::size_t depth,
                               std::size_t dim_cap = 4096);

/// Ext^i(M, R) for 1 <= i <= bound + 2 as homology of the dualized minimal
/// resolution; certified when a syzygy period closes the window.
ExtVerdict ext_vanishing(ModulePtr m, std::size_t bound);

/// Conjunction of biduality and certified Ext-vanishing for M and M*.
TotalReflexivityVerdict is_totally_reflexive(ModulePtr m, std::size_t bound);

/// Depth equals dimension trivially over a commutative local artinian ring:
/// every module is maximal Cohen-Macaulay. Refuses other algebras.
bool is_mcm_artinian(ModulePtr m);

/// G(R) within the universe via is_totally_reflexive, the Frobenius property
/// of its exact structure with proj-inj = add R, the contains-R iff
/// contains-projectives equivalence over all sum- and summand-closed
/// subcategories, and the thick correspondence on G(R).
CheckReport verify_gr_theorems(UniversePtr u, std::size_t ext_bound);

} // namespace excat
