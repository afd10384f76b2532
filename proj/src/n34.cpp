#include "hgo/n34.hpp"

#include "hgo/geod.hpp"

#include <json.hpp>

#include <cstdio>

namespace hgo {

std::vector<std::vector<MultiPoly>> n34_left_kernels() {
    std::vector<std::vector<MultiPoly>> out(2);
    for (const char* e : {"-y5", "-y8", "-y7", "-y6", "y1", "y4", "y3", "y2"}) out[0].push_back(parse_poly(e));
    for (const char* e : {"-y2", "y5", "-y1", "y8", "-y4", "y7", "y6", "-y3"}) out[1].push_back(parse_poly(e));
    return out;
}

N34Bundle certify_n34(std::uint64_t seed, std::size_t probes, const std::string& minors_text) {
    N34Bundle b;
    auto fail = [&](const std::string& msg) {
        if (b.ok) b.failure = msg;
        b.ok = false;
    };
    const HTypeAlgebra alg = assemble(Signature{3, 4});
    const SymbolicMatrix ME = n34_system(alg, N34Case::Z4).printed;
    const SymbolicMatrix MEt = n34_system(alg, N34Case::Z1Z4).printed;
    const auto kernels = n34_left_kernels();
    b.identities.push_back({"left-kernel-Z4", left_kernel_identity(ME, kernels[0]), ""});
    b.identities.push_back({"left-kernel-Z1+Z4", left_kernel_identity(MEt, kernels[1]), ""});
    const CheckReport mem = family_membership_check();
    b.identities.push_back({"family-membership", mem.ok, mem.failure});
    if (!minors_text.empty()) {
        for (const MinorIdentity& id : parse_minor_identities(minors_text, n34_polynomials())) {
            const SymbolicMatrix& M = id.matrix == "ME" ? ME : MEt;
            const MultiPoly m = minor(M, id.rows, id.cols);
            const bool ok = m == id.expected;
            b.identities.push_back({"minor-" + id.name, ok, ok ? "" : "difference: " + (m - id.expected).str()});
        }
    }
    for (const auto& id : b.identities)
        if (!id.ok) fail("identity " + id.name + " fails");

    b.strong = strong_condition_n34(seed, probes);
    if (!b.strong.ok) fail(b.strong.failure);

    for (const auto& w : b.strong.witnesses) {
        GeodesicCheck g{w.source, w.z_class, compare(alg, w.Z, w.X, w.B, 1.0, b.geodesic_steps)};
        if (!(g.max_deviation < b.geodesic_tolerance)) fail("geodesic and orbit differ for witness " + w.source);
        b.geodesics.push_back(g);
    }
    return b;
}

std::string to_json(const N34Bundle& b) {
    using nlohmann::json;
    json ids = json::array(), geo = json::array();
    for (auto& i : b.identities) {
        json e = {{"name", i.name}, {"ok", i.ok}};
        if (!i.detail.empty()) e["detail"] = i.detail;
        ids.push_back(e);
    }
    for (auto& g : b.geodesics) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", g.max_deviation);
        geo.push_back({{"source", g.source}, {"z_class", g.z_class}, {"max_deviation", buf}});
    }
    // the strong-condition block is the certificate's evidence block
    GOCertificate cert;
    cert.sig = {3, 4};
    cert.verdict = b.strong.ok ? Verdict::GOWitnessed : Verdict::Undecided;
    cert.evidence_kind = "strong-condition";
    cert.strong = b.strong;
    cert.seed = b.strong.seed;
    json j = {{"schema", 1},
              {"kind", "n34-bundle"},
              {"ok", b.ok},
              {"identities", ids},
              {"geodesic", {{"steps", b.geodesic_steps}, {"tolerance", "1e-8"}, {"witnesses", geo}}},
              {"certificate", json::parse(to_json(cert))}};
    if (!b.failure.empty()) j["failure"] = b.failure;
    return j.dump(2) + "\n";
}

}  // namespace hgo
