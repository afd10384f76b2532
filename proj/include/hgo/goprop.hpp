#ifndef HGO_GOPROP_HPP
#define HGO_GOPROP_HPP

#include "hgo/isometry.hpp"

#include <functional>
#include <optional>

namespace hgo {

// One center vector per hyperquadric class; a class is absent when the
// signature has no vector of that norm.
struct CenterRepresentatives {
    std::optional<RatVec> positive;  // Z_1
    std::optional<RatVec> negative;  // Z_{r+1}
    std::optional<RatVec> null;      // Z_1 + Z_{r+1}

    std::vector<std::pair<std::string, RatVec>> list() const;
};

CenterRepresentatives center_representatives(const Signature& sig);

struct NRResult {
    bool ok = false;
    // tau[i] maps Z_j to tau_{Z_i}(Z_j): [J_i, J_j] = J(tau[i] e_j)
    std::vector<RatMatrix> tau;
    std::string failure;
};

NRResult naturally_reductive_check(const HTypeAlgebra& alg, const NormalizerData& nd);

// Basis of N^Z = {B in N : [B, J_Z] = 0}, or of its intersection with
// span [V,V] when restrict_to_vv is set.
std::vector<RatMatrix> stabilizer_basis(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z,
                                        bool restrict_to_vv);

struct GoSystem {
    RatMatrix A;  // columns B_k(X)
    RatVec b;     // J_Z(X)
    std::vector<RatMatrix> basis;
};

GoSystem go_system(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z, const RatVec& X,
                   bool restrict_to_vv = false);
GoSystem go_system_from(const std::vector<RatMatrix>& basis, const RatMatrix& JZ, const RatVec& X);

struct ProbeResult {
    bool consistent = false;
    std::size_t rank_A = 0;
    std::size_t rank_Ab = 0;
    RatVec coeffs;  // in the stabilizer basis, when consistent
    RatMatrix B;
};

ProbeResult go_probe(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z, const RatVec& X,
                     bool restrict_to_vv = false);
ProbeResult probe_system(const GoSystem& sys);
// Consistency by ranks only (no solution), for bulk probing.
bool probe_consistent_fast(const GoSystem& sys);

// B skew, [B, J_Z] = 0 and B X = J_Z X, exactly.
CheckReport verify_witness(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const RatMatrix& B);

struct Counterexample {
    std::string z_class;
    RatVec Z;
    RatVec X;
    std::size_t rank_A = 0;
    std::size_t rank_Ab = 0;
    std::size_t probes = 0;
};

// Integer X with entries in [-height, height], by increasing max-norm, first
// nonzero entry positive and gcd 1; for each X every representative Z is tried.
std::optional<Counterexample> counterexample_search(const HTypeAlgebra& alg, const NormalizerData& nd, int height);

// Rank certificate replay: rank([A|b]) = rank(A) + 1 under both elimination orders.
bool verify_inconsistent(const GoSystem& sys, std::size_t rank_A, std::size_t rank_Ab);

// Worker count from HGO_THREADS (default 1).
unsigned worker_count();
// Runs f(i) for i in [0, n) on worker_count() threads; results are written by
// index so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace hgo

#endif  // HGO_GOPROP_HPP
