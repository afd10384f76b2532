#ifndef HGO_CERTIFICATE_HPP
#define HGO_CERTIFICATE_HPP

#include "hgo/polywit.hpp"
#include "hgo/submanifold.hpp"

#include <cstdint>

namespace hgo {

struct WitnessRecord {
    std::string z_class;
    std::string source;  // "random-probe" or a family name
    RatVec Z;
    RatVec X;
    RatMatrix B;
};

struct ClassProbeStats {
    std::string z_class;
    RatVec Z;
    std::size_t stabilizer_dim = 0;
    std::size_t probes = 0;
    std::size_t consistent = 0;
};

struct FamilyOutcome {
    std::string name;
    std::string z_class;
    bool expect_pass = true;
    bool symbolic_pass = false;
    std::string residual;  // first nonzero residual when the identity fails
    std::size_t points = 0;
    std::size_t points_ok = 0;
};

struct StrongConditionReport {
    bool ok = true;
    std::string failure;
    std::uint64_t seed = 0;
    std::vector<FamilyOutcome> families;
    std::vector<ClassProbeStats> classes;
    std::vector<WitnessRecord> witnesses;
};

std::string z_class_of(N34Case c);

// Closed-form families (symbolic, then instantiated at points_per_family
// random parameter points with the witness re-checked and the restricted
// probe solved), then probes_per_class random X per representative, all
// restricted to span [V,V]. The first few solutions per class are kept.
StrongConditionReport strong_condition_n34(std::uint64_t seed, std::size_t probes_per_class = 10000,
                                           std::size_t points_per_family = 50);

enum class Verdict { NaturallyReductive, GOWitnessed, NotGO, Undecided };
std::string to_string(Verdict v);

struct ClassifyOptions {
    std::size_t multiplicity = 1;
    int height = 5;
    std::size_t probes = 10000;
    std::uint64_t seed = 1;
};

struct GOCertificate {
    Signature sig;
    std::size_t multiplicity = 1;
    Verdict verdict = Verdict::Undecided;
    // "tau", "strong-condition", "counterexample", an obstruction tag,
    // "totally-geodesic-chain" or "none"
    std::string evidence_kind = "none";
    std::vector<RatMatrix> tau;
    std::optional<StrongConditionReport> strong;
    std::optional<RankCertificate> counterexample;
    std::optional<ObstructionEvidence> obstruction;
    std::optional<ReductionChain> chain;
    std::string note;
    int height = 0;
    std::uint64_t seed = 0;
};

GOCertificate classify(const Signature& sig, const ClassifyOptions& opts = {});

// Re-checks the stored evidence only.
CheckReport replay(const GOCertificate& cert);

std::string to_json(const GOCertificate& cert);
GOCertificate certificate_from_json(const std::string& text);

}  // namespace hgo

#endif  // HGO_CERTIFICATE_HPP
