#include "hgo/certificate.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace hgo {

std::string z_class_of(N34Case c) {
    switch (c) {
        case N34Case::Z1: return "positive";
        case N34Case::Z4: return "negative";
        case N34Case::Z1Z4: return "null";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NaturallyReductive: return "NaturallyReductive";
        case Verdict::GOWitnessed: return "GOWitnessed";
        case Verdict::NotGO: return "NotGO";
        case Verdict::Undecided: return "Undecided";
    }
    return "?";
}

namespace {

constexpr std::size_t kKeptPerClass = 4;

bool in_vv_span(const NormalizerData& nd, const RatMatrix& B) { return span_coordinates(nd.VV_basis, B).has_value(); }

}  // namespace

StrongConditionReport strong_condition_n34(std::uint64_t seed, std::size_t probes_per_class, std::size_t points_per_family) {
    StrongConditionReport rep;
    rep.seed = seed;
    const HTypeAlgebra alg = assemble(Signature{3, 4});
    const NormalizerData nd = build_normalizer(alg);
    std::mt19937_64 rng(seed);
    auto fail = [&](const std::string& msg) {
        if (rep.ok) rep.failure = msg;
        rep.ok = false;
    };

    const N34Case cases[] = {N34Case::Z1, N34Case::Z4, N34Case::Z1Z4};
    std::vector<std::vector<RatMatrix>> stab;
    std::vector<RatVec> reps;
    for (N34Case c : cases) {
        reps.push_back(n34_system(alg, c).Z);
        stab.push_back(stabilizer_basis(alg, nd, reps.back(), true));
    }

    for (const WitnessFamily& fam : n34_witness_families()) {
        FamilyOutcome out;
        out.name = fam.name;
        out.z_class = z_class_of(fam.which);
        out.expect_pass = fam.expect_pass;
        const FamilyReport fr = verify_witness_family(alg, fam);
        out.symbolic_pass = fr.ok;
        if (!fr.ok) out.residual = fr.residual.str();
        if (fr.ok != fam.expect_pass) fail("family " + fam.name + (fr.ok ? " unexpectedly passes" : " fails: " + fr.failure));
        if (fam.expect_pass) {
            const std::size_t ci = static_cast<std::size_t>(fam.which);
            const RatVec& Z = reps[ci];
            bool kept = false;
            for (std::size_t p = 0; p < points_per_family; ++p) {
                const RatVec params = random_vector(rng, MultiPoly::kMaxVars);
                const auto inst = instantiate_family(alg, fam, params);
                if (!inst) continue;
                ++out.points;
                const auto& [X, B] = *inst;
                const CheckReport w = verify_witness(alg, Z, X, B);
                const bool probe_ok = probe_consistent_fast(go_system_from(stab[ci], alg.J(Z), X));
                if (w.ok && in_vv_span(nd, B) && probe_ok) {
                    ++out.points_ok;
                    if (!kept) {
                        rep.witnesses.push_back({out.z_class, fam.name, Z, X, B});
                        kept = true;
                    }
                } else {
                    fail("family " + fam.name + " at X = " + [&] {
                        std::string s;
                        for (auto& q : X) s += (s.empty() ? "" : ",") + rat_str(q);
                        return s;
                    }() + ": " + (w.ok ? "restricted probe inconsistent or B outside [V,V]" : w.failure));
                }
            }
            if (out.points == 0) fail("family " + fam.name + " has no admissible sample point");
        }
        rep.families.push_back(std::move(out));
    }

    for (std::size_t ci = 0; ci < 3; ++ci) {
        ClassProbeStats st;
        st.z_class = z_class_of(cases[ci]);
        st.Z = reps[ci];
        st.stabilizer_dim = stab[ci].size();
        std::vector<RatVec> xs(probes_per_class);
        for (auto& x : xs) x = random_vector(rng, alg.v_dim());
        const RatMatrix JZ = alg.J(st.Z);
        std::vector<char> ok(xs.size(), 0);
        std::vector<std::optional<RatMatrix>> kept(std::min(kKeptPerClass, xs.size()));
        parallel_for(xs.size(), [&](std::size_t i) {
            const GoSystem sys = go_system_from(stab[ci], JZ, xs[i]);
            if (i < kept.size()) {
                const ProbeResult pr = probe_system(sys);
                ok[i] = pr.consistent && verify_witness(alg, st.Z, xs[i], pr.B).ok;
                if (ok[i]) kept[i] = pr.B;
            } else {
                ok[i] = probe_consistent_fast(sys);
            }
        });
        st.probes = xs.size();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (ok[i]) {
                ++st.consistent;
                continue;
            }
            std::string s;
            for (auto& q : xs[i]) s += (s.empty() ? "" : ",") + rat_str(q);
            fail("probe " + std::to_string(i) + " inconsistent for Z = " + st.z_class + " representative, X = (" + s + ")");
        }
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (kept[i]) rep.witnesses.push_back({st.z_class, "random-probe", st.Z, xs[i], *kept[i]});
        rep.classes.push_back(std::move(st));
    }
    return rep;
}

GOCertificate classify(const Signature& sig, const ClassifyOptions& opts) {
    if (!sig.valid()) throw std::invalid_argument("classify: invalid signature");
    if (opts.multiplicity < 1) throw std::invalid_argument("classify: multiplicity must be at least 1");
    GOCertificate cert;
    cert.sig = sig;
    cert.multiplicity = opts.multiplicity;
    cert.height = opts.height;
    cert.seed = opts.seed;
    const HTypeAlgebra alg = assemble(sig, opts.multiplicity);
    const NormalizerData nd = build_normalizer(alg);

    NRResult nr = naturally_reductive_check(alg, nd);
    if (nr.ok) {
        cert.verdict = Verdict::NaturallyReductive;
        cert.evidence_kind = "tau";
        cert.tau = std::move(nr.tau);
        return cert;
    }
    if (sig == Signature{3, 4} && opts.multiplicity == 1) {
        StrongConditionReport sc = strong_condition_n34(opts.seed, opts.probes);
        cert.evidence_kind = "strong-condition";
        if (sc.ok) {
            cert.verdict = Verdict::GOWitnessed;
        } else {
            cert.verdict = Verdict::Undecided;
            cert.note = sc.failure;
        }
        cert.strong = std::move(sc);
        return cert;
    }
    if (opts.multiplicity == 1) {
        for (auto fn : {volume_obstruction, odd_volume_obstruction, involution_obstruction}) {
            ObstructionEvidence ev = fn(alg, nd);
            if (ev.applicable && ev.confirmed) {
                cert.verdict = Verdict::NotGO;
                cert.evidence_kind = ev.tag;
                cert.obstruction = std::move(ev);
                return cert;
            }
        }
        if (auto chain = reduction_chain(sig)) {
            if (replay_chain(*chain).ok) {
                cert.verdict = Verdict::NotGO;
                cert.evidence_kind = "totally-geodesic-chain";
                cert.chain = std::move(chain);
                return cert;
            }
        }
    }
    if (auto ce = counterexample_search(alg, nd, opts.height)) {
        cert.verdict = Verdict::NotGO;
        cert.evidence_kind = "counterexample";
        cert.counterexample = RankCertificate{ce->z_class, ce->Z, ce->X, ce->rank_A, ce->rank_Ab};
        return cert;
    }
    cert.verdict = Verdict::Undecided;
    cert.note = "no obstruction applies and no inconsistent probe up to height " + std::to_string(opts.height);
    return cert;
}

CheckReport replay(const GOCertificate& cert) {
    CheckReport rep;
    const HTypeAlgebra alg = assemble(cert.sig, cert.multiplicity);
    auto need = [&](bool present, const char* what) {
        if (!present) rep.fail(std::string("certificate lacks ") + what);
        return present;
    };
    switch (cert.verdict) {
        case Verdict::NaturallyReductive: {
            const NRResult nr = naturally_reductive_check(alg, build_normalizer(alg));
            if (!nr.ok) rep.fail("naturally reductive check fails: " + nr.failure);
            else if (nr.tau != cert.tau) rep.fail("stored tau table differs from the recomputed one");
            break;
        }
        case Verdict::GOWitnessed: {
            if (!need(cert.strong.has_value(), "strong-condition evidence")) break;
            const auto& sc = *cert.strong;
            if (!sc.ok) rep.fail("stored report is not successful");
            const NormalizerData nd = build_normalizer(alg);
            for (const auto& w : sc.witnesses) {
                const CheckReport r = verify_witness(alg, w.Z, w.X, w.B);
                if (!r.ok) rep.fail("witness (" + w.source + ", " + w.z_class + "): " + r.failure);
                if (!in_vv_span(nd, w.B)) rep.fail("witness (" + w.source + ") is outside span [V,V]");
            }
            const auto fams = n34_witness_families();
            for (const auto& out : sc.families) {
                auto it = std::find_if(fams.begin(), fams.end(), [&](auto& f) { return f.name == out.name; });
                if (it == fams.end()) {
                    rep.fail("unknown family " + out.name);
                    continue;
                }
                if (verify_witness_family(alg, *it).ok != out.symbolic_pass || out.symbolic_pass != out.expect_pass)
                    rep.fail("family " + out.name + " does not replay");
            }
            std::set<std::string> classes;
            for (const auto& w : sc.witnesses) classes.insert(w.z_class);
            if (classes.size() != 3) rep.fail("witnesses do not cover the three center classes");
            break;
        }
        case Verdict::NotGO: {
            if (cert.evidence_kind == "counterexample") {
                if (need(cert.counterexample.has_value(), "the rank certificate")) {
                    const CheckReport r = replay_rank_certificate(alg, build_normalizer(alg), *cert.counterexample);
                    if (!r.ok) rep.fail(r.failure);
                }
            } else if (cert.evidence_kind == "totally-geodesic-chain") {
                if (need(cert.chain.has_value(), "the reduction chain")) {
                    if (cert.chain->links.empty() || cert.chain->links.front().ambient != cert.sig)
                        rep.fail("chain does not start at the certified signature");
                    const CheckReport r = replay_chain(*cert.chain);
                    if (!r.ok) rep.fail(r.failure);
                }
            } else if (need(cert.obstruction.has_value(), "the obstruction evidence")) {
                if (cert.obstruction->sig != cert.sig || cert.obstruction->tag != cert.evidence_kind)
                    rep.fail("obstruction does not match the certificate header");
                const CheckReport r = replay_obstruction(*cert.obstruction);
                if (!r.ok) rep.fail(r.failure);
            }
            break;
        }
        case Verdict::Undecided:
            break;
    }
    return rep;
}

}  // namespace hgo
