#ifndef HGO_SUBMANIFOLD_HPP
#define HGO_SUBMANIFOLD_HPP

#include "hgo/goprop.hpp"

#include <optional>

namespace hgo {

// Coordinate splitting z = z1 + z2, v = v1 + v2 (0-based basis indices).
struct Splitting {
    std::vector<int> z1_idx, z2_idx;
    std::vector<int> v1_idx, v2_idx;
};

// Fills z2 and v2 with the complements.
Splitting make_splitting(const HTypeAlgebra& alg, std::vector<int> z1, std::vector<int> v1);

struct TotGeodResult {
    bool ok = false;
    std::string failure;
    std::optional<HTypeAlgebra> sub;
    Signature sub_sig;
    // dim v1 equals the minimal admissible dimension for sub_sig
    bool sub_minimal = false;
};

TotGeodResult totally_geodesic_check(const HTypeAlgebra& alg, const Splitting& sp);

// Basis index k with J_w v_0 = +-e_k, for modules with a signed-permutation basis.
int word_image_index(const CliffordModule& mod, Word w);
std::vector<int> word_image_indices(const CliffordModule& mod, const std::vector<Word>& words);

// All coordinate splittings with |z1| = z1_size whose v1 is the orbit of one
// basis vector under the group generated by J_{z1}; first hit per target
// signature, in lexicographic order of (z1, seed).
std::vector<Splitting> search_splittings(const HTypeAlgebra& alg, int z1_size, const Signature& target);

// Rank certificate for one GO probe: rank([A|b]) = rank(A) + 1.
struct RankCertificate {
    std::string z_class;
    RatVec Z;
    RatVec X;
    std::size_t rank_A = 0;
    std::size_t rank_Ab = 0;
};

struct ObstructionEvidence {
    bool applicable = false;
    std::string reason;  // when not applicable, or the failed step
    // "volume-element", "odd-volume-element", "involution-contradiction"
    std::string tag;
    Signature sig;
    // volume: the factors of the (partial) volume element; involution: p
    Word word = 0;
    int word_square = 0;
    RankCertificate probe;
    bool confirmed = false;
};

// r+s = 0 mod 4 and s even: X in the +1 eigenspace of J_omega, Z = Z_1.
ObstructionEvidence volume_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd);
// r+s = 0 mod 4 and s odd: omega' = Z_1...Z_{r+s-1}, Z = Z_{r+s}.
ObstructionEvidence odd_volume_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd);
// (0, s >= 4) with p = Z1Z2Z3Z4 and Z = Z_1, or (r >= 3, 1) with q = Z1Z2Z3
// and Z = Z_{r+1}.
ObstructionEvidence involution_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd);

// Rebuilds the minimal algebra of ev.sig and re-checks every stored claim.
CheckReport replay_obstruction(const ObstructionEvidence& ev);
// The probe is inconsistent on the given algebra, under both elimination orders.
CheckReport replay_rank_certificate(const HTypeAlgebra& alg, const NormalizerData& nd, const RankCertificate& cert);

struct PeriodicityEmbedding {
    CliffordModule module;  // v_{r,s} (x) v_{mu,nu}
    HTypeAlgebra alg;
    Splitting splitting;
    std::size_t base_dim = 0;
    int fixed_index = 0;   // basis index of the fixed vector of the period module
    CheckReport base_brackets;    // [u_i (x) v_k, u_j (x) v_k] = chi_k [u_i,u_j]
    CheckReport period_brackets;  // [u_k (x) v_i, u_k (x) v_j] = |u_k|^2 [v_i,v_j]
    TotGeodResult check;
};

PeriodicityEmbedding periodicity_embedding(const Signature& base, const Signature& period);

struct ChainLink {
    Signature ambient;
    std::vector<Word> pi;  // module_from_involutions(ambient, pi); empty: build_minimal_module
    std::vector<int> z1;
    std::vector<int> v1;
    Signature sub;
};

struct ReductionChain {
    std::vector<ChainLink> links;
    Signature terminal;
    // "counterexample" (rank certificate on the minimal terminal algebra) or an
    // obstruction tag
    std::string terminal_kind;
    std::optional<RankCertificate> terminal_probe;
    std::optional<ObstructionEvidence> terminal_obstruction;
};

// Hand-built splittings for the totally-geodesic reductions; nullopt when the
// signature is not covered.
std::optional<ReductionChain> reduction_chain(const Signature& sig);
CheckReport replay_chain(const ReductionChain& chain);
CheckReport replay_link(const ChainLink& link);

// The terminal refutation for a small signature: known counterexample probe
// for the signatures with r+s <= 3, otherwise the applicable obstruction.
std::optional<RankCertificate> known_counterexample(const Signature& sig);

}  // namespace hgo

#endif  // HGO_SUBMANIFOLD_HPP
