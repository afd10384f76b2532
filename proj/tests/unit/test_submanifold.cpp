#include <doctest.h>

#include "hgo/submanifold.hpp"
#include "support.hpp"

using namespace hgo;

namespace {

Rational bracket_coeff(const HTypeAlgebra& alg, int z, int i, int j) {
    return alg.structure[static_cast<std::size_t>(z)](static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

// Independent test of the splitting conditions straight from the structure
// constants: [v1,v1] in z1, [v1,v2] in z2, J_{z1} v1 in v1, J_{z2} v1 in v2.
bool splitting_conditions(const HTypeAlgebra& alg, const Splitting& sp) {
    auto in = [](const std::vector<int>& s, int k) { return std::find(s.begin(), s.end(), k) != s.end(); };
    for (int i : sp.v1_idx) {
        for (int j : sp.v1_idx)
            for (int z : sp.z2_idx)
                if (bracket_coeff(alg, z, i, j) != 0) return false;
        for (int j : sp.v2_idx)
            for (int z : sp.z1_idx)
                if (bracket_coeff(alg, z, i, j) != 0) return false;
        for (int z = 0; z < static_cast<int>(alg.z_dim); ++z) {
            const RatMatrix& J = alg.module.generators[static_cast<std::size_t>(z)];
            for (int k = 0; k < static_cast<int>(alg.v_dim()); ++k) {
                if (J(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) == 0) continue;
                if (in(sp.z1_idx, z) != in(sp.v1_idx, k)) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("make_splitting complements") {
    const HTypeAlgebra alg = assemble(Signature{2, 1});
    const Splitting sp = make_splitting(alg, {0, 2}, {0, 1, 4, 5});
    CHECK(sp.z2_idx == std::vector<int>{1});
    CHECK(sp.v2_idx == std::vector<int>{2, 3, 6, 7});
}

TEST_CASE("totally geodesic reductions to four-dimensional cores") {
    for (auto [sig, sub] : {std::pair{Signature{1, 4}, Signature{0, 2}}, std::pair{Signature{3, 2}, Signature{1, 1}},
                            std::pair{Signature{1, 6}, Signature{0, 2}}, std::pair{Signature{5, 2}, Signature{1, 1}},
                            std::pair{Signature{2, 3}, Signature{1, 1}}, std::pair{Signature{2, 4}, Signature{0, 2}},
                            std::pair{Signature{3, 3}, Signature{1, 1}}, std::pair{Signature{2, 1}, Signature{1, 1}}}) {
        CAPTURE(to_string(sig));
        const auto chain = reduction_chain(sig);
        REQUIRE(chain);
        REQUIRE(chain->links.size() == 1);
        const ChainLink& link = chain->links[0];
        CHECK(link.sub == sub);
        CHECK(link.v1.size() == 4);
        CHECK(replay_link(link).ok);
        CHECK(chain->terminal == sub);
        CHECK(chain->terminal_kind == "counterexample");
        REQUIRE(chain->terminal_probe);
        CHECK(chain->terminal_probe->rank_Ab == chain->terminal_probe->rank_A + 1);
        CHECK(replay_chain(*chain).ok);
    }
}

TEST_CASE("totally geodesic check agrees with the direct conditions") {
    const HTypeAlgebra n21 = assemble(Signature{2, 1});
    const Splitting good = make_splitting(n21, {0, 2}, {0, 1, 4, 5});
    const TotGeodResult r = totally_geodesic_check(n21, good);
    CHECK(r.ok);
    CHECK(splitting_conditions(n21, good));
    CHECK(r.sub_sig == Signature{1, 1});
    CHECK(r.sub_minimal);

    // z1 = {Z1} with the J_1-orbit of v_0 is a Heisenberg subalgebra of n_{3,4}
    const HTypeAlgebra n34 = assemble(Signature{3, 4});
    const int j1 = word_image_index(n34.module, make_word({1}));
    const Splitting heis = make_splitting(n34, {0}, {0, j1});
    CHECK(splitting_conditions(n34, heis));
    const TotGeodResult rh = totally_geodesic_check(n34, heis);
    CHECK(rh.ok);
    CHECK(rh.sub_sig == Signature{1, 0});
    // v1 not stable under J_1
    const int j2 = word_image_index(n34.module, make_word({2}));
    const Splitting bad = make_splitting(n34, {0}, {0, j2});
    CHECK_FALSE(splitting_conditions(n34, bad));
    const TotGeodResult rb = totally_geodesic_check(n34, bad);
    CHECK_FALSE(rb.ok);
    CHECK_FALSE(rb.failure.empty());
}

TEST_CASE("splitting search") {
    const HTypeAlgebra n21 = assemble(Signature{2, 1});
    const auto hits = search_splittings(n21, 2, Signature{1, 1});
    REQUIRE_FALSE(hits.empty());
    for (const Splitting& sp : hits) {
        CHECK(splitting_conditions(n21, sp));
        const TotGeodResult r = totally_geodesic_check(n21, sp);
        CHECK(r.ok);
        CHECK(r.sub_sig == Signature{1, 1});
    }
    // no sub-signature with two negative directions in n_{2,1}
    CHECK(search_splittings(n21, 2, Signature{0, 2}).empty());
}

TEST_CASE("obstructions apply exactly where stated") {
    struct Case {
        Signature sig;
        ObstructionEvidence (*fn)(const HTypeAlgebra&, const NormalizerData&);
        bool applicable;
    };
    const std::vector<Case> cases = {
        {{4, 4}, volume_obstruction, true},         {{8, 0}, volume_obstruction, true},
        {{0, 8}, volume_obstruction, true},         {{6, 2}, volume_obstruction, true},
        {{3, 5}, odd_volume_obstruction, true},     {{0, 4}, involution_obstruction, true},
        {{0, 7}, involution_obstruction, true},     {{3, 1}, involution_obstruction, true},
        {{7, 1}, involution_obstruction, true},     {{3, 4}, volume_obstruction, false},
        {{3, 5}, volume_obstruction, false},        {{4, 4}, odd_volume_obstruction, false},
        {{2, 1}, involution_obstruction, false},    {{1, 2}, involution_obstruction, false},
    };
    for (const Case& c : cases) {
        CAPTURE(to_string(c.sig));
        const HTypeAlgebra alg = assemble(c.sig);
        const NormalizerData nd = build_normalizer(alg);
        const ObstructionEvidence ev = c.fn(alg, nd);
        CHECK(ev.applicable == c.applicable);
        if (!c.applicable) {
            CHECK_FALSE(ev.reason.empty());
            CHECK_FALSE(replay_obstruction(ev).ok);
            continue;
        }
        CHECK_MESSAGE(ev.confirmed, ev.reason);
        CHECK(ev.sig == c.sig);
        CHECK(ev.probe.rank_Ab == ev.probe.rank_A + 1);
        CHECK(replay_rank_certificate(alg, nd, ev.probe).ok);
        CHECK(replay_obstruction(ev).ok);
    }
}

TEST_CASE("tampered obstruction evidence is rejected") {
    const HTypeAlgebra alg = assemble(Signature{0, 4});
    const NormalizerData nd = build_normalizer(alg);
    const ObstructionEvidence ev = involution_obstruction(alg, nd);
    REQUIRE(ev.confirmed);
    ObstructionEvidence wrong_x = ev;
    wrong_x.probe.X = vec_add(wrong_x.probe.X, unit_vector(wrong_x.probe.X.size(), 1));
    CHECK_FALSE(replay_obstruction(wrong_x).ok);
    ObstructionEvidence wrong_word = ev;
    wrong_word.word = make_word({1, 2});
    CHECK_FALSE(replay_obstruction(wrong_word).ok);
    ObstructionEvidence wrong_tag = ev;
    wrong_tag.tag = "volume";
    CHECK_FALSE(replay_obstruction(wrong_tag).ok);
    // a consistent probe does not pass as a rank certificate
    RankCertificate zero = ev.probe;
    zero.Z = RatVec(alg.z_dim);
    CHECK_FALSE(replay_rank_certificate(alg, nd, zero).ok);
}

TEST_CASE("periodicity embedding brackets") {
    for (const Signature& base : {Signature{1, 1}, Signature{0, 2}, Signature{2, 1}, Signature{0, 3}, Signature{0, 1}})
        for (const Signature& p : {Signature{8, 0}, Signature{0, 8}, Signature{4, 4}}) {
            CAPTURE(to_string(base));
            CAPTURE(to_string(p));
            const PeriodicityEmbedding pe = periodicity_embedding(base, p);
            CHECK(pe.module.module_dim == 16 * pe.base_dim);
            CHECK_MESSAGE(pe.base_brackets.ok, pe.base_brackets.failure);
            CHECK_MESSAGE(pe.period_brackets.ok, pe.period_brackets.failure);
            CHECK_MESSAGE(pe.check.ok, pe.check.failure);
            CHECK(pe.check.sub_sig == base);
            CHECK(splitting_conditions(pe.alg, pe.splitting));
        }
    CHECK_THROWS(periodicity_embedding({1, 1}, {2, 2}));
}

TEST_CASE("reduction chains") {
    for (const Signature& sig : {Signature{1, 5}, Signature{4, 2}, Signature{2, 5}, Signature{4, 3}, Signature{2, 7},
                                 Signature{3, 6}, Signature{3, 7}, Signature{6, 3}, Signature{7, 2}, Signature{7, 3}}) {
        CAPTURE(to_string(sig));
        const auto chain = reduction_chain(sig);
        REQUIRE(chain);
        CHECK(chain->links.front().ambient == sig);
        for (std::size_t i = 0; i + 1 < chain->links.size(); ++i) CHECK(chain->links[i].sub == chain->links[i + 1].ambient);
        CHECK(chain->links.back().sub == chain->terminal);
        const CheckReport rep = replay_chain(*chain);
        CHECK_MESSAGE(rep.ok, rep.failure);
    }
    const auto c72 = reduction_chain({7, 2});
    REQUIRE(c72);
    CHECK(c72->terminal == Signature{7, 1});
    CHECK(c72->terminal_kind == "involution-contradiction");
    const auto c36 = reduction_chain({3, 6});
    REQUIRE(c36);
    CHECK(c36->terminal_kind == "odd-volume-element");
    CHECK_FALSE(reduction_chain({3, 4}));
    CHECK_FALSE(reduction_chain({1, 2}));
}

TEST_CASE("tampered chains fail replay") {
    auto chain = reduction_chain({2, 3});
    REQUIRE(chain);
    ReductionChain wrong_sub = *chain;
    wrong_sub.links[0].sub = {0, 2};
    CHECK_FALSE(replay_chain(wrong_sub).ok);
    ReductionChain wrong_v1 = *chain;
    wrong_v1.links[0].v1.back() = (wrong_v1.links[0].v1.back() + 1) % 8;
    CHECK_FALSE(replay_chain(wrong_v1).ok);
    ReductionChain no_terminal = *chain;
    no_terminal.terminal_probe.reset();
    CHECK_FALSE(replay_chain(no_terminal).ok);

    auto c72 = reduction_chain({7, 2});
    REQUIRE(c72);
    c72->terminal_obstruction->probe.rank_A += 1;
    CHECK_FALSE(replay_chain(*c72).ok);
}

TEST_CASE("known counterexamples") {
    for (const Signature& sig : {Signature{1, 1}, Signature{0, 2}, Signature{2, 1}, Signature{0, 3}}) {
        CAPTURE(to_string(sig));
        const auto c = known_counterexample(sig);
        REQUIRE(c);
        CHECK(c->rank_Ab == c->rank_A + 1);
        const HTypeAlgebra alg = assemble(sig);
        CHECK(replay_rank_certificate(alg, build_normalizer(alg), *c).ok);
    }
    const auto c02 = known_counterexample({0, 2});
    CHECK(c02->rank_A == 2);
    CHECK(c02->rank_Ab == 3);
    const auto c03 = known_counterexample({0, 3});
    CHECK(c03->rank_A == 5);
    CHECK(c03->rank_Ab == 6);
    CHECK_FALSE(known_counterexample({1, 2}));
}
