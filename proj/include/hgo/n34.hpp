#ifndef HGO_N34_HPP
#define HGO_N34_HPP

#include "hgo/certificate.hpp"

namespace hgo {

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct GeodesicCheck {
    std::string source;
    std::string z_class;
    double max_deviation = 0;
};

struct N34Bundle {
    bool ok = true;
    std::string failure;
    StrongConditionReport strong;
    std::vector<IdentityCheck> identities;
    std::vector<GeodesicCheck> geodesics;
    double geodesic_tolerance = 1e-8;
    int geodesic_steps = 10000;
};

// Left kernels, family membership and every minor identity of minors_text
// (empty: none), then the strong condition, then geodesic-vs-orbit on each
// kept witness over [0, 1].
N34Bundle certify_n34(std::uint64_t seed, std::size_t probes, const std::string& minors_text);

// The two left-kernel row vectors, in the order (Z4 system, Z1+Z4 system).
std::vector<std::vector<MultiPoly>> n34_left_kernels();

std::string to_json(const N34Bundle& b);

}  // namespace hgo

#endif  // HGO_N34_HPP
