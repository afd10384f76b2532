#ifndef HGO_ISOMETRY_HPP
#define HGO_ISOMETRY_HPP

#include "hgo/htype.hpp"

#include <optional>
#include <utility>

namespace hgo {

struct NormalizerData {
    std::vector<RatMatrix> V_basis;
    std::vector<RatMatrix> VV_basis;  // J_i J_j for i < j, so [J_i,J_j] = 2 J_i J_j
    std::vector<std::pair<int, int>> vv_pairs;
    std::vector<RatMatrix> centralizer_basis;
    std::vector<RatMatrix> N_basis;  // VV_basis followed by centralizer_basis
    // "orbit" when the centralizer came from the signed-permutation structure,
    // "kernel" when from the full linear system
    std::string centralizer_method;
    // dim N from the independent full normalizer kernel, when it was computed
    std::optional<std::size_t> full_kernel_dim;
};

struct NormalizerOptions {
    // Solve {B skew, [B,J_i] in span V} directly and compare dimensions.
    // Default: only when dim v <= 16.
    std::optional<bool> full_kernel_check;
};

NormalizerData build_normalizer(const HTypeAlgebra& alg, const NormalizerOptions& opts = {});

// Basis of the eta-skew matrices: E_ab - eta_a eta_b E_ba for a < b.
std::vector<RatMatrix> skew_basis(const DiagMetric& eta);

std::vector<RatMatrix> centralizer_by_orbits(const CliffordModule& mod);
std::vector<RatMatrix> centralizer_by_kernel(const CliffordModule& mod);

struct SkewDerivation {
    RatMatrix C;  // on z
    RatMatrix A;  // on v
};

// C with [A, J_{Z_i}] = J_{C(Z_i)}; nullopt if some commutator leaves span V
// or C fails to be skew.
std::optional<RatMatrix> recover_C(const RatMatrix& A, const HTypeAlgebra& alg);

SkewDerivation phi_derivation(const HTypeAlgebra& alg, const RatVec& Z1, const RatVec& Z2);

// [A,J_Z] = J_{C(Z)} on basis Z, A and C skew.
CheckReport check_skew_derivation(const HTypeAlgebra& alg, const SkewDerivation& D);
// D[X,Y] = [DX,Y] + [X,DY] on all basis pairs.
CheckReport check_derivation_property(const HTypeAlgebra& alg, const SkewDerivation& D);

// Every normalizer element commutes with J_omega; requires r+s = 0 mod 4.
CheckReport volume_commutation_check(const HTypeAlgebra& alg, const NormalizerData& nd);

CheckReport check_lie_triple(const NormalizerData& nd);
CheckReport check_normalizer_structure(const HTypeAlgebra& alg, const NormalizerData& nd);

}  // namespace hgo

#endif  // HGO_ISOMETRY_HPP
