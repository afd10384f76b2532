#include <doctest.h>

#include "hgo/isometry.hpp"
#include "support.hpp"

#include <random>

using namespace hgo;
using testsupport::naive_mul;

namespace {

std::vector<Signature> signatures_upto(int max_n) {
    std::vector<Signature> out;
    for (int n = 1; n <= max_n; ++n)
        for (int r = 0; r <= n; ++r) out.push_back({r, n - r});
    return out;
}

std::size_t span_rank(const std::vector<RatMatrix>& ms) {
    if (ms.empty()) return 0;
    RatMatrix S(ms.size(), ms[0].rows() * ms[0].cols());
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t k = 0; k < S.cols(); ++k) S(i, k) = ms[i].data()[k];
    return rank(S);
}

bool in_span(const std::vector<RatMatrix>& basis, const RatMatrix& M) {
    auto all = basis;
    all.push_back(M);
    return span_rank(all) == span_rank(basis);
}

RatMatrix combo(const std::vector<RatMatrix>& basis, std::mt19937_64& rng) {
    RatMatrix acc(basis[0].rows(), basis[0].cols());
    for (const RatMatrix& B : basis) acc += B * random_rational(rng, 20);
    return acc;
}

bool is_skew(const RatMatrix& B, const DiagMetric& eta) { return metric_transpose(B, eta) == -B; }

}  // namespace

TEST_CASE("normalizer dimensions") {
    const NormalizerData n11 = build_normalizer(assemble(Signature{1, 1}));
    CHECK(n11.VV_basis.size() == 1);
    CHECK(n11.centralizer_basis.size() == 3);
    CHECK(n11.N_basis.size() == 4);

    const NormalizerData n34 = build_normalizer(assemble(Signature{3, 4}));
    CHECK(n34.centralizer_basis.empty());
    CHECK(n34.N_basis.size() == 21);
    REQUIRE(n34.full_kernel_dim);
    CHECK(*n34.full_kernel_dim == 21);
}

TEST_CASE("N = [V,V] + Z as a direct sum, and the normalizer conditions") {
    for (const Signature& sig : signatures_upto(6)) {
        CAPTURE(to_string(sig));
        const HTypeAlgebra alg = assemble(sig);
        const NormalizerData nd = build_normalizer(alg);
        const std::size_t n = static_cast<std::size_t>(sig.n());
        CHECK(nd.VV_basis.size() == n * (n - 1) / 2);
        CHECK(span_rank(nd.VV_basis) == nd.VV_basis.size());
        CHECK(span_rank(nd.centralizer_basis) == nd.centralizer_basis.size());
        // independence of the union is the trivial intersection
        CHECK(span_rank(nd.N_basis) == nd.VV_basis.size() + nd.centralizer_basis.size());
        if (nd.full_kernel_dim) CHECK(*nd.full_kernel_dim == nd.N_basis.size());
        for (const RatMatrix& B : nd.N_basis) {
            CHECK(is_skew(B, alg.module.eta_v));
            for (const RatMatrix& J : nd.V_basis) CHECK(in_span(nd.V_basis, commutator(B, J)));
        }
        for (const RatMatrix& B : nd.centralizer_basis)
            for (const RatMatrix& J : nd.V_basis) CHECK(commutator(B, J).is_zero());
        CHECK(check_normalizer_structure(alg, nd).ok);
    }
}

TEST_CASE("centralizer by orbits agrees with the kernel computation") {
    for (const Signature& sig : signatures_upto(5)) {
        CAPTURE(to_string(sig));
        const CliffordModule m = build_minimal_module(sig);
        const auto a = centralizer_by_orbits(m), b = centralizer_by_kernel(m);
        CHECK(a.size() == b.size());
        for (const RatMatrix& B : a) CHECK(in_span(b, B));
    }
}

TEST_CASE("Lie triple: [[V,V],V] in V and [V,V] closed") {
    std::mt19937_64 rng(31);
    for (const Signature& sig : signatures_upto(6)) {
        CAPTURE(to_string(sig));
        const HTypeAlgebra alg = assemble(sig);
        const NormalizerData nd = build_normalizer(alg);
        CHECK(check_lie_triple(nd).ok);
        for (const RatMatrix& B : nd.VV_basis) {
            for (const RatMatrix& J : nd.V_basis) CHECK(in_span(nd.V_basis, commutator(B, J)));
            for (const RatMatrix& C : nd.VV_basis) CHECK(in_span(nd.VV_basis, commutator(B, C)));
        }
    }
    for (const Signature& sig : {Signature{1, 2}, Signature{3, 4}}) {
        const NormalizerData nd = build_normalizer(assemble(sig));
        for (int k = 0; k < 100; ++k) CHECK(in_span(nd.V_basis, commutator(combo(nd.VV_basis, rng), combo(nd.V_basis, rng))));
    }
}

TEST_CASE("recover_C") {
    const HTypeAlgebra alg = assemble(Signature{1, 1});
    const NormalizerData nd = build_normalizer(alg);
    for (const RatMatrix& B : nd.centralizer_basis) {
        auto C = recover_C(B, alg);
        REQUIRE(C);
        CHECK(C->is_zero());
    }

    // A = J_a J_b: C = 2(<Z_a,.>Z_b - <Z_b,.>Z_a)
    for (const Signature& sig : {Signature{3, 4}, Signature{1, 2}, Signature{0, 3}}) {
        const HTypeAlgebra h = assemble(sig);
        const std::size_t n = h.z_dim;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                auto C = recover_C(naive_mul(h.module.generators[a], h.module.generators[b]), h);
                REQUIRE(C);
                RatMatrix want(n, n);
                want(b, a) = 2 * h.eta_z.signs[a];
                want(a, b) = -2 * h.eta_z.signs[b];
                CHECK(*C == want);
            }
    }

    // skew A off the normalizer is rejected (for (1,2) every skew map normalizes)
    std::mt19937_64 rng(8);
    const HTypeAlgebra h = assemble(Signature{0, 3});
    const NormalizerData hn = build_normalizer(h);
    const auto skew = skew_basis(h.module.eta_v);
    int rejected = 0;
    for (int k = 0; k < 20; ++k) {
        const RatMatrix A = combo(skew, rng);
        if (in_span(hn.N_basis, A)) continue;
        CHECK_FALSE(recover_C(A, h));
        ++rejected;
    }
    CHECK(rejected > 0);
}

TEST_CASE("every normalizer element yields a skew derivation") {
    for (const Signature& sig : signatures_upto(5)) {
        CAPTURE(to_string(sig));
        const HTypeAlgebra alg = assemble(sig);
        const NormalizerData nd = build_normalizer(alg);
        for (const RatMatrix& B : nd.N_basis) {
            auto C = recover_C(B, alg);
            REQUIRE(C);
            const SkewDerivation D{*C, B};
            CHECK(check_skew_derivation(alg, D).ok);
            CHECK(check_derivation_property(alg, D).ok);
        }
    }
}

TEST_CASE("Phi derivations") {
    const HTypeAlgebra n34 = assemble(Signature{3, 4});
    const SkewDerivation D = phi_derivation(n34, unit_vector(7, 0), unit_vector(7, 1));
    CHECK(D.A == naive_mul(n34.module.generators[0], n34.module.generators[1]));
    CHECK(D.C * unit_vector(7, 0) == vec_scale(unit_vector(7, 1), 2));
    CHECK(D.C * unit_vector(7, 1) == vec_scale(unit_vector(7, 0), -2));
    CHECK_THROWS_AS(phi_derivation(n34, unit_vector(7, 0), unit_vector(7, 0)), std::invalid_argument);

    // random orthogonal pairs; C agrees with the one recovered from A
    std::mt19937_64 rng(12);
    for (const Signature& sig : {Signature{1, 2}, Signature{3, 4}}) {
        const HTypeAlgebra alg = assemble(sig);
        const std::size_t n = alg.z_dim;
        int done = 0;
        while (done < 100) {
            const RatVec Z1 = random_vector(rng, n, 10), W = random_vector(rng, n, 10);
            const Rational q = alg.eta_z.inner(Z1, Z1);
            if (q == 0) continue;
            const RatVec Z2 = vec_sub(W, vec_scale(Z1, alg.eta_z.inner(W, Z1) / q));
            if (vec_is_zero(Z2)) continue;
            const SkewDerivation P = phi_derivation(alg, Z1, Z2);
            CHECK(check_skew_derivation(alg, P).ok);
            CHECK(check_derivation_property(alg, P).ok);
            auto C = recover_C(P.A, alg);
            REQUIRE(C);
            CHECK(*C == P.C);
            ++done;
        }
    }
}

TEST_CASE("derivation property by direct bracket expansion") {
    const HTypeAlgebra alg = assemble(Signature{3, 4});
    const std::size_t d = alg.v_dim();
    const SkewDerivation D = phi_derivation(alg, unit_vector(7, 2), unit_vector(7, 5));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const RatVec X = unit_vector(d, i), Y = unit_vector(d, j);
            CHECK(D.C * alg.bracket(X, Y) == vec_add(alg.bracket(D.A * X, Y), alg.bracket(X, D.A * Y)));
        }
    // a non-derivation is caught
    SkewDerivation bad = D;
    bad.C = bad.C * Rational(-1);
    CHECK_FALSE(check_derivation_property(alg, bad).ok);
}

TEST_CASE("normalizer commutes with the volume element when r+s = 0 mod 4") {
    for (const Signature& sig : {Signature{4, 4}, Signature{8, 0}, Signature{0, 4}, Signature{2, 2}}) {
        CAPTURE(to_string(sig));
        const HTypeAlgebra alg = assemble(sig);
        const NormalizerData nd = build_normalizer(alg);
        CHECK(volume_commutation_check(alg, nd).ok);
        const RatMatrix w = volume_element(alg.module).J_omega;
        CHECK(naive_mul(alg.module.generators[0], w) == -naive_mul(w, alg.module.generators[0]));
    }
    const HTypeAlgebra n12 = assemble(Signature{1, 2});
    CHECK_THROWS(volume_commutation_check(n12, build_normalizer(n12)));
}
