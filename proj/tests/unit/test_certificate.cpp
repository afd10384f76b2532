#include <doctest.h>

#include "hgo/n34.hpp"
#include "support.hpp"

#include <json.hpp>

using namespace hgo;

namespace {

ClassifyOptions quick(std::uint64_t seed = 1) {
    ClassifyOptions o;
    o.probes = 50;
    o.seed = seed;
    return o;
}

}  // namespace

TEST_CASE("small signatures") {
    const GOCertificate nr01 = classify({0, 1}, quick());
    CHECK(nr01.verdict == Verdict::NaturallyReductive);
    CHECK(nr01.evidence_kind == "tau");
    const GOCertificate nr12 = classify({1, 2}, quick());
    CHECK(nr12.verdict == Verdict::NaturallyReductive);
    CHECK(nr12.tau.size() == 3);

    for (const Signature& sig : {Signature{1, 1}, Signature{0, 2}, Signature{0, 3}}) {
        CAPTURE(to_string(sig));
        const GOCertificate c = classify(sig, quick());
        CHECK(c.verdict == Verdict::NotGO);
        CHECK(c.evidence_kind == "counterexample");
        REQUIRE(c.counterexample);
        CHECK(c.counterexample->rank_Ab == c.counterexample->rank_A + 1);
        CHECK(replay(c).ok);
    }
    // (2,1) reduces to (1,1)
    const GOCertificate c21 = classify({2, 1}, quick());
    CHECK(c21.verdict == Verdict::NotGO);
    CHECK(c21.evidence_kind == "totally-geodesic-chain");
    REQUIRE(c21.chain);
    CHECK(c21.chain->terminal == Signature{1, 1});
    CHECK(replay(c21).ok);
    const GOCertificate c04 = classify({0, 4}, quick());
    CHECK(c04.verdict == Verdict::NotGO);
    CHECK(c04.evidence_kind == "volume-element");
    const GOCertificate c05 = classify({0, 5}, quick());
    CHECK(c05.verdict == Verdict::NotGO);
    CHECK(c05.evidence_kind == "involution-contradiction");
    CHECK(replay(c05).ok);
    const GOCertificate c23 = classify({2, 3}, quick());
    CHECK(c23.evidence_kind == "totally-geodesic-chain");
    CHECK(replay(c23).ok);
    CHECK_THROWS(classify({0, 0}, quick()));
}

TEST_CASE("multiplicity") {
    // (0,1) with two copies is still naturally reductive
    ClassifyOptions o = quick();
    o.multiplicity = 2;
    const GOCertificate c = classify({0, 1}, o);
    CHECK(c.multiplicity == 2);
    CHECK(c.verdict == Verdict::NaturallyReductive);
    CHECK(replay(c).ok);
}

TEST_CASE("JSON round trip and determinism") {
    for (const Signature& sig : {Signature{1, 2}, Signature{0, 3}, Signature{2, 3}, Signature{4, 4}, Signature{7, 2}}) {
        CAPTURE(to_string(sig));
        const GOCertificate c = classify(sig, quick(7));
        const std::string a = to_json(c);
        CHECK(a == to_json(classify(sig, quick(7))));
        const GOCertificate back = certificate_from_json(a);
        CHECK(to_json(back) == a);
        CHECK(replay(back).ok);
        const nlohmann::json j = nlohmann::json::parse(a);
        CHECK(j.at("schema") == 1);
        CHECK(j.at("verdict") == to_string(c.verdict));
    }
    CHECK_THROWS(certificate_from_json("{}"));
    CHECK_THROWS(certificate_from_json("not json"));
}

TEST_CASE("tampered certificates fail replay") {
    GOCertificate c = classify({0, 2}, quick());
    REQUIRE(c.counterexample);
    GOCertificate wrong_x = c;
    wrong_x.counterexample->X = RatVec(wrong_x.counterexample->X.size());
    CHECK_FALSE(replay(wrong_x).ok);
    GOCertificate wrong_rank = c;
    wrong_rank.counterexample->rank_A += 1;
    CHECK_FALSE(replay(wrong_rank).ok);
    GOCertificate wrong_kind = c;
    wrong_kind.evidence_kind = "tau";
    CHECK_FALSE(replay(wrong_kind).ok);

    GOCertificate nr = classify({1, 2}, quick());
    nr.tau[0] = nr.tau[0] * Rational(2);
    CHECK_FALSE(replay(nr).ok);

    // edit the JSON text itself
    nlohmann::json j = nlohmann::json::parse(to_json(c));
    j["verdict"] = "GOWitnessed";
    CHECK_FALSE(replay(certificate_from_json(j.dump())).ok);
}

TEST_CASE("n_{3,4} with few probes") {
    ClassifyOptions o = quick(3);
    o.probes = 30;
    const GOCertificate c = classify({3, 4}, o);
    CHECK(c.verdict == Verdict::GOWitnessed);
    CHECK(c.evidence_kind == "strong-condition");
    REQUIRE(c.strong);
    CHECK(c.strong->classes.size() == 3);
    for (const ClassProbeStats& s : c.strong->classes) CHECK(s.consistent == s.probes);
    for (const FamilyOutcome& f : c.strong->families) {
        CAPTURE(f.name);
        CHECK(f.symbolic_pass == f.expect_pass);
        if (f.expect_pass) CHECK(f.points_ok == f.points);
    }
    CHECK(replay(c).ok);
    const GOCertificate back = certificate_from_json(to_json(c));
    CHECK(replay(back).ok);
    // a broken witness is caught
    GOCertificate bad = c;
    REQUIRE_FALSE(bad.strong->witnesses.empty());
    bad.strong->witnesses[0].B = bad.strong->witnesses[0].B * Rational(-1);
    CHECK_FALSE(replay(bad).ok);
}

TEST_CASE("n_{3,4} bundle") {
    const N34Bundle b = certify_n34(2, 20, testsupport::read_fixture("n34_minors.txt"));
    CHECK_MESSAGE(b.ok, b.failure);
    CHECK(b.identities.size() >= 26);
    for (const IdentityCheck& id : b.identities) CHECK_MESSAGE(id.ok, std::string(id.name + " " + id.detail));
    CHECK_FALSE(b.geodesics.empty());
    for (const GeodesicCheck& g : b.geodesics) CHECK(g.max_deviation < b.geodesic_tolerance);
    CHECK(n34_left_kernels().size() == 2);
    CHECK(to_json(b) == to_json(certify_n34(2, 20, testsupport::read_fixture("n34_minors.txt"))));
    // the printed D(i) forms are reported as failures
    const N34Bundle p = certify_n34(2, 5, testsupport::read_fixture("n34_minors_printed.txt"));
    CHECK_FALSE(p.ok);
}
