#ifndef HGO_HTYPE_HPP
#define HGO_HTYPE_HPP

#include "hgo/clifford.hpp"

namespace hgo {

struct HTypeAlgebra {
    CliffordModule module;
    std::size_t z_dim = 0;
    DiagMetric eta_z;
    // structure[k](i,j) = a_k(i,j), [V_i,V_j] = sum_k a_k(i,j) Z_k
    std::vector<RatMatrix> structure;

    std::size_t v_dim() const { return module.module_dim; }
    const Signature& sig() const { return module.sig; }
    RatVec bracket(const RatVec& X, const RatVec& Y) const;
    RatMatrix J(const RatVec& z) const { return module.J(z); }
};

HTypeAlgebra assemble(const CliffordModule& mod);
HTypeAlgebra assemble(const Signature& sig, std::size_t multiplicity = 1);

// Exhaustive generator checks plus random rational Z; reports the first
// violating tuple.
CheckReport verify_admissibility(const HTypeAlgebra& alg, std::mt19937_64& rng, int samples = 100);
// ad_X : v -> z surjective for the basis vectors and random samples.
CheckReport check_nonsingular(const HTypeAlgebra& alg, std::mt19937_64& rng, int samples = 100);

// Table of [V_i,V_j] as signed Z labels, one row per V_i.
std::string bracket_table(const HTypeAlgebra& alg);
// Single cell label, e.g. "-Z7", "0", "Z1+2Z3".
std::string bracket_label(const RatVec& z);

}  // namespace hgo

#endif  // HGO_HTYPE_HPP
