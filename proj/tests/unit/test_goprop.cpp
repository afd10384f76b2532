#include <doctest.h>

#include "hgo/goprop.hpp"
#include "hgo/polywit.hpp"
#include "support.hpp"

#include <atomic>
#include <map>
#include <random>
#include <sstream>

using namespace hgo;
using testsupport::naive_mul;

namespace {

struct Fixture {
    HTypeAlgebra alg;
    NormalizerData nd;
    explicit Fixture(const Signature& sig, std::size_t mult = 1) : alg(assemble(sig, mult)), nd(build_normalizer(alg)) {}
};

// x_ij coordinates (i < j, 1-based) of B in the J_i J_j basis.
std::map<std::pair<int, int>, Rational> vv_coords(const NormalizerData& nd, const RatMatrix& B) {
    auto c = span_coordinates(nd.VV_basis, B);
    REQUIRE(c);
    std::map<std::pair<int, int>, Rational> out;
    for (std::size_t k = 0; k < nd.vv_pairs.size(); ++k) out[{nd.vv_pairs[k].first + 1, nd.vv_pairs[k].second + 1}] = (*c)[k];
    return out;
}

// B(x) from the fixture, x_ik the coefficients of [J_i, J_k].
RatMatrix fixture_B(const std::map<std::pair<int, int>, Rational>& x) {
    PolyEnv env;
    for (int a = 1; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b) {
            auto it = x.find({a, b});
            env["x" + std::to_string(a) + std::to_string(b)] = MultiPoly::constant(it == x.end() ? Rational(0) : it->second);
        }
    const auto rows = testsupport::fixture_lines("n34_B.txt");
    REQUIRE(rows.size() == 8);
    RatMatrix B(8, 8);
    for (std::size_t r = 0; r < 8; ++r) {
        std::stringstream ss(rows[r]);
        std::size_t c = 0;
        for (std::string cell; std::getline(ss, cell, '&'); ++c) B(r, c) = 2 * parse_poly(cell, env).eval(RatVec(8));
        REQUIRE(c == 8);
    }
    return B;
}

RatMatrix inverse(const RatMatrix& M) {
    const std::size_t n = M.rows();
    RatMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto col = solve_consistent(M, unit_vector(n, j));
        REQUIRE(col);
        for (std::size_t i = 0; i < n; ++i) out(i, j) = (*col)[i];
    }
    return out;
}

// Cayley transform (I - B/2)^{-1}(I + B/2): an eta-isometry for skew B.
RatMatrix cayley(const RatMatrix& B) {
    const RatMatrix I = RatMatrix::identity(B.rows());
    return naive_mul(inverse(I - B * Rational(1, 2)), I + B * Rational(1, 2));
}

}  // namespace

TEST_CASE("naturally reductive check") {
    {
        Fixture f({1, 2});
        const NRResult nr = naturally_reductive_check(f.alg, f.nd);
        REQUIRE(nr.ok);
        CHECK(commutator(f.nd.V_basis[0], f.nd.V_basis[1]) == f.nd.V_basis[2] * Rational(2));
        CHECK(nr.tau[0] * unit_vector(3, 1) == vec_scale(unit_vector(3, 2), 2));
        for (const RatMatrix& t : nr.tau) CHECK(metric_transpose(t, f.alg.eta_z) == -t);
    }
    {
        Fixture f({0, 1}, 3);
        const NRResult nr = naturally_reductive_check(f.alg, f.nd);
        REQUIRE(nr.ok);
        for (const RatMatrix& t : nr.tau) CHECK(t.is_zero());
    }
    {
        Fixture f({1, 1});
        const NRResult nr = naturally_reductive_check(f.alg, f.nd);
        CHECK_FALSE(nr.ok);
        CHECK_FALSE(nr.failure.empty());
    }
}

TEST_CASE("center representatives") {
    const CenterRepresentatives c = center_representatives({3, 4});
    const DiagMetric eta = Signature{3, 4}.metric();
    REQUIRE(c.positive);
    REQUIRE(c.negative);
    REQUIRE(c.null);
    CHECK(eta.inner(*c.positive, *c.positive) == 1);
    CHECK(eta.inner(*c.negative, *c.negative) == -1);
    CHECK(eta.inner(*c.null, *c.null) == 0);
    CHECK_FALSE(center_representatives({0, 3}).positive);
    CHECK_FALSE(center_representatives({0, 3}).null);
    CHECK(center_representatives({0, 3}).list().size() == 1);
}

TEST_CASE("n_{3,4} stabilizer systems") {
    Fixture f({3, 4});
    // Z = Z_4: the x_ik with 4 in {i,k} vanish, 15 unknowns
    const GoSystem s4 = go_system(f.alg, f.nd, unit_vector(7, 3), unit_vector(8, 0));
    CHECK(s4.A.rows() == 8);
    CHECK(s4.A.cols() == 15);
    for (const RatMatrix& B : s4.basis)
        for (auto& [ik, x] : vv_coords(f.nd, B))
            if (ik.first == 4 || ik.second == 4) CHECK(x == 0);

    // Z = Z_1 + Z_4
    const RatVec Zn = vec_add(unit_vector(7, 0), unit_vector(7, 3));
    const auto basis = stabilizer_basis(f.alg, f.nd, Zn, false);
    CHECK(basis.size() == 15);
    for (const RatMatrix& B : basis) {
        auto x = vv_coords(f.nd, B);
        CHECK(x[{1, 2}] == -x[{2, 4}]);
        // opposite sign to the printed constraint list; see the test below
        CHECK(x[{1, 3}] == -x[{3, 4}]);
        CHECK(x[{1, 4}] == 0);
        CHECK(x[{1, 5}] == x[{4, 5}]);
        CHECK(x[{1, 6}] == x[{4, 6}]);
        CHECK(x[{1, 7}] == x[{4, 7}]);
    }
}

TEST_CASE("displayed normalizer element and the null-class constraints") {
    Fixture f({3, 4});
    for (int i = 1; i <= 7; ++i)
        for (int k = i + 1; k <= 7; ++k)
            CHECK(fixture_B({{{i, k}, 1}}) == commutator(f.alg.module.generators[i - 1], f.alg.module.generators[k - 1]));
    const RatMatrix JZ = f.alg.J(vec_add(unit_vector(7, 0), unit_vector(7, 3)));
    CHECK(commutator(fixture_B({{{1, 3}, 1}, {{3, 4}, -1}}), JZ).is_zero());
    CHECK_FALSE(commutator(fixture_B({{{1, 3}, 1}, {{3, 4}, 1}}), JZ).is_zero());
    CHECK(commutator(fixture_B({{{1, 2}, 1}, {{2, 4}, -1}}), JZ).is_zero());
    CHECK(commutator(fixture_B({{{1, 5}, 1}, {{4, 5}, 1}}), JZ).is_zero());
}

TEST_CASE("probes") {
    std::mt19937_64 rng(21);
    {
        Fixture f({1, 1});
        const ProbeResult p = go_probe(f.alg, f.nd, unit_vector(2, 0), {1, 1, 1, 1});
        CHECK_FALSE(p.consistent);
        CHECK(p.rank_Ab == p.rank_A + 1);
        const GoSystem sys = go_system(f.alg, f.nd, unit_vector(2, 0), {1, 1, 1, 1});
        CHECK(verify_inconsistent(sys, p.rank_A, p.rank_Ab));
        CHECK_FALSE(verify_inconsistent(sys, p.rank_A + 1, p.rank_Ab));
        // Z = 0: b = 0 and B = 0 works
        const GoSystem z0 = go_system(f.alg, f.nd, RatVec(2), {1, 1, 1, 1});
        CHECK(vec_is_zero(z0.b));
        CHECK(probe_system(z0).consistent);
    }
    {
        Fixture f({0, 2});
        const ProbeResult p = go_probe(f.alg, f.nd, unit_vector(2, 0), {3, 4, 5, 0});
        CHECK_FALSE(p.consistent);
        CHECK(p.rank_A == 2);
        CHECK(p.rank_Ab == 3);
        // generic X off the cone y1^2+y2^2 = y3^2+y4^2 has a witness
        int generic = 0;
        while (generic < 100) {
            const RatVec X = random_vector(rng, 4);
            if (X[0] * X[0] + X[1] * X[1] == X[2] * X[2] + X[3] * X[3]) continue;
            const ProbeResult q = go_probe(f.alg, f.nd, unit_vector(2, 0), X);
            REQUIRE(q.consistent);
            CHECK(verify_witness(f.alg, unit_vector(2, 0), X, q.B).ok);
            ++generic;
        }
    }
}

TEST_CASE("witness verification rejects wrong B") {
    Fixture f({1, 2});
    const RatVec Z = unit_vector(3, 0), X = {1, 2, 3, 4};
    const ProbeResult p = go_probe(f.alg, f.nd, Z, X);
    REQUIRE(p.consistent);
    CHECK(verify_witness(f.alg, Z, X, p.B).ok);
    CHECK_FALSE(verify_witness(f.alg, Z, X, p.B * Rational(2)).ok);
    CHECK_FALSE(verify_witness(f.alg, Z, X, p.B + f.nd.V_basis[1]).ok);
}

TEST_CASE("naturally reductive implies GO on random pairs") {
    std::mt19937_64 rng(99);
    for (auto [sig, mult] : {std::pair{Signature{1, 2}, std::size_t{1}}, std::pair{Signature{0, 1}, std::size_t{2}}}) {
        Fixture f(sig, mult);
        for (int k = 0; k < 100; ++k) {
            const RatVec Z = random_vector(rng, f.alg.z_dim), X = random_vector(rng, f.alg.v_dim());
            const ProbeResult p = go_probe(f.alg, f.nd, Z, X);
            REQUIRE(p.consistent);
            CHECK(verify_witness(f.alg, Z, X, p.B).ok);
        }
    }
}

TEST_CASE("probe consistency is invariant under the isotropy of Z") {
    std::mt19937_64 rng(123);
    for (const Signature& sig : {Signature{1, 1}, Signature{0, 2}, Signature{2, 1}, Signature{0, 3}}) {
        CAPTURE(to_string(sig));
        Fixture f(sig);
        const std::size_t n = f.alg.z_dim, d = f.alg.v_dim();
        const RatVec Z = unit_vector(n, 0);
        std::vector<RatMatrix> Qs;
        for (const RatMatrix& B : f.nd.centralizer_basis) {
            // skip scalings where I - B/2 is singular
            for (long den = 3; den < 20; ++den) {
                const RatMatrix sB = B * Rational(1, den);
                if (determinant(RatMatrix::identity(d) - sB * Rational(1, 2)) != 0) {
                    Qs.push_back(cayley(sB));
                    break;
                }
            }
        }
        for (std::size_t a = 1; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) Qs.push_back(naive_mul(f.alg.module.generators[a], f.alg.module.generators[b]));
        REQUIRE_FALSE(Qs.empty());
        for (const RatMatrix& Q : Qs) {
            CHECK(naive_mul(Q, f.alg.J(Z)) == naive_mul(f.alg.J(Z), Q));
            for (const RatMatrix& J : f.nd.V_basis) CHECK(span_coordinates(f.nd.V_basis, naive_mul(naive_mul(Q, J), inverse(Q))));
        }
        std::vector<RatVec> Xs;
        for (int k = 0; k < 20; ++k) Xs.push_back(random_vector(rng, d, 3));
        for (int k = 0; k < 20; ++k) {
            // small integer vectors hit the inconsistent strata
            RatVec X(d);
            for (auto& x : X) x = static_cast<long>(bounded_draw(rng, 3)) - 1;
            Xs.push_back(X);
        }
        int inconsistent = 0;
        for (const RatVec& X : Xs) {
            const bool c = probe_consistent_fast(go_system(f.alg, f.nd, Z, X));
            inconsistent += !c;
            for (const RatMatrix& Q : Qs) CHECK(probe_consistent_fast(go_system(f.alg, f.nd, Z, Q * X)) == c);
        }
        MESSAGE(to_string(sig) << ": " << inconsistent << " inconsistent samples");
    }
}

TEST_CASE("counterexample search") {
    {
        Fixture f({2, 1});
        auto c = counterexample_search(f.alg, f.nd, 1);
        REQUIRE(c);
        CHECK(c->rank_Ab == c->rank_A + 1);
        CHECK(verify_inconsistent(go_system(f.alg, f.nd, c->Z, c->X), c->rank_A, c->rank_Ab));
    }
    {
        Fixture f({0, 3});
        auto c = counterexample_search(f.alg, f.nd, 5);
        REQUIRE(c);
        CHECK(verify_inconsistent(go_system(f.alg, f.nd, c->Z, c->X), c->rank_A, c->rank_Ab));
        const ProbeResult p = go_probe(f.alg, f.nd, unit_vector(3, 0), {3, 4, 0, 0, 5, 0, 0, 0});
        CHECK_FALSE(p.consistent);
        CHECK(p.rank_A == 5);
        CHECK(p.rank_Ab == 6);
    }
    {
        Fixture f({1, 2});
        CHECK_FALSE(counterexample_search(f.alg, f.nd, 2));
    }
}

TEST_CASE("parallel_for writes every index once") {
    std::vector<int> hits(1000, 0);
    std::atomic<int> total{0};
    parallel_for(hits.size(), [&](std::size_t i) {
        hits[i] += 1;
        total += 1;
    });
    CHECK(total == 1000);
    for (int h : hits) CHECK(h == 1);
    CHECK(worker_count() >= 1);
}
