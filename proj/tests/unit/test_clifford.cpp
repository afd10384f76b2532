#include <doctest.h>

#include "hgo/clifford.hpp"
#include "support.hpp"

#include <random>

using namespace hgo;
using testsupport::naive_mul;

namespace {

std::vector<Signature> small_signatures(int max_n) {
    std::vector<Signature> out;
    for (int n = 1; n <= max_n; ++n)
        for (int r = 0; r <= n; ++r) out.push_back({r, n - r});
    return out;
}

RatMatrix J_of(const CliffordModule& m, const RatVec& z) {
    RatMatrix acc(m.module_dim, m.module_dim);
    for (std::size_t i = 0; i < z.size(); ++i) acc += m.generators[i] * z[i];
    return acc;
}

// Invariants (i)-(v) recomputed with plain products.
void check_invariants_directly(const CliffordModule& m, std::mt19937_64& rng, int samples) {
    const Signature& sig = m.sig;
    const std::size_t d = m.module_dim;
    const RatMatrix I = RatMatrix::identity(d);
    const RatMatrix eta = m.eta_v.matrix();
    for (int i = 0; i < sig.n(); ++i) {
        const RatMatrix& Ji = m.generators[i];
        CHECK(naive_mul(Ji, Ji) == I * Rational(-sig.eps(i)));
        CHECK(naive_mul(naive_mul(eta, Ji.transpose()), eta) == -Ji);
        for (int j = i + 1; j < sig.n(); ++j) CHECK((naive_mul(Ji, m.generators[j]) + naive_mul(m.generators[j], Ji)).is_zero());
    }
    if (sig.s > 0) {
        int plus = 0;
        for (int e : m.eta_v.signs) plus += e > 0;
        CHECK(2 * plus == static_cast<int>(d));
    }
    const DiagMetric ez = sig.metric();
    for (int k = 0; k < samples; ++k) {
        const RatVec Z = random_vector(rng, sig.n()), W = random_vector(rng, sig.n()), X = random_vector(rng, d);
        CHECK(m.eta_v.inner(J_of(m, Z) * X, J_of(m, W) * X) == ez.inner(Z, W) * m.eta_v.inner(X, X));
    }
}

}  // namespace

TEST_CASE("module invariants (i)-(v) for every signature with r+s <= 8") {
    std::mt19937_64 rng(2024);
    for (const Signature& sig : small_signatures(8)) {
        CAPTURE(to_string(sig));
        const CliffordModule m = build_minimal_module(sig);
        const CheckReport rep = check_module_invariants(m, rng, 100);
        CHECK_MESSAGE(rep.ok, rep.failure);
        check_invariants_directly(m, rng, sig.n() <= 4 ? 100 : 10);
        // generators act by signed permutations on the constructed basis
        for (const RatMatrix& J : m.generators) CHECK(is_signed_permutation(J));
    }
}

TEST_CASE("dimension formula against the constructed modules") {
    for (const Signature& sig : small_signatures(9)) {
        CAPTURE(to_string(sig));
        CHECK(build_minimal_module(sig).module_dim == std::size_t{1} << (sig.n() - static_cast<int>(ell(sig))));
    }
}

TEST_CASE("stated module dimensions") {
    for (const std::string& line : testsupport::fixture_lines("dims.txt")) {
        const auto t = testsupport::tokens(line);
        const Signature sig{std::stoi(t[0]), std::stoi(t[1])};
        CAPTURE(line);
        CHECK(build_minimal_module(sig).module_dim == std::stoul(t[2]));
    }
    const CliffordModule m01 = build_minimal_module({0, 1}, 3);
    CHECK(m01.module_dim == 6);
    CHECK(naive_mul(m01.generators[0], m01.generators[0]) == RatMatrix::identity(6));
}

TEST_CASE("ell table") {
    for (const std::string& line : testsupport::fixture_lines("ell_table.txt")) {
        const auto bar = line.find('|');
        const int s = std::stoi(line.substr(0, bar));
        const auto cells = testsupport::tokens(line.substr(bar + 1));
        for (std::size_t r = 0; r < cells.size(); ++r) {
            if (cells[r] == "-") continue;
            CAPTURE(r);
            CAPTURE(s);
            CHECK(ell({static_cast<int>(r), s}) == std::stoul(cells[r]));
        }
    }
}

TEST_CASE("ell is raised by 4 under each period") {
    for (const Signature& sig : small_signatures(4))
        for (const Signature& p : {Signature{8, 0}, Signature{0, 8}, Signature{4, 4}}) {
            CAPTURE(to_string(sig));
            CHECK(ell({sig.r + p.r, sig.s + p.s}) == ell(sig) + 4);
        }
}

TEST_CASE("positive involution sets") {
    const InvolutionSet p80 = enumerate_positive_involutions({8, 0});
    const std::vector<Word> expected80 = {make_word({1, 2, 3, 4}), make_word({1, 2, 5, 6}), make_word({1, 2, 7, 8}),
                                          make_word({1, 3, 5, 7})};
    CHECK(p80.generators == expected80);
    CHECK(enumerate_positive_involutions({1, 1}).generators.empty());
    CHECK(enumerate_positive_involutions({2, 3}).generators ==
          std::vector<Word>{make_word({1, 4, 5}), make_word({1, 2, 3, 4})});

    for (const Signature& sig : small_signatures(8)) {
        const InvolutionSet pi = enumerate_positive_involutions(sig);
        CHECK(pi.ell() == ell(sig));
        std::string why;
        CHECK_MESSAGE(is_valid_involution_set(pi, sig, &why), why);
        for (Word p : pi.generators) {
            CHECK(word_square(p, sig) == 1);
            CHECK(is_positive_involution(p, sig));
        }
    }
    // Z1Z3Z3 collapses to Z1 and is no involution
    CHECK_FALSE(is_positive_involution(make_word({1}), Signature{3, 4}));
}

TEST_CASE("word algebra") {
    const Signature sig{1, 2};
    CHECK(word_str(0) == "1");
    CHECK(word_str(make_word({1, 3})) == "Z1Z3");
    CHECK(parse_word("Z1Z3") == make_word({1, 3}));
    // Z_2^2 = +1 for a negative generator, Z_1^2 = -1 for a positive one
    CHECK(word_square(make_word({2}), sig) == 1);
    CHECK(word_square(make_word({1}), sig) == -1);
    const SignedWord ab = word_mul(make_word({1}), make_word({2}), sig);
    const SignedWord ba = word_mul(make_word({2}), make_word({1}), sig);
    CHECK(ab.word == ba.word);
    CHECK(ab.sign == -ba.sign);
}

TEST_CASE("invariant basis is orthonormal") {
    for (const Signature& sig : {Signature{3, 4}, Signature{4, 4}, Signature{2, 3}, Signature{0, 3}, Signature{1, 2}}) {
        CAPTURE(to_string(sig));
        const CliffordModule m = build_minimal_module(sig);
        const InvolutionSet pi = enumerate_positive_involutions(sig);
        const InvariantBasis b = invariant_basis(m, pi);
        REQUIRE(b.vectors.size() == m.module_dim);
        const CliffordModule re = change_basis(m, b);
        for (std::size_t i = 0; i < b.vectors.size(); ++i)
            for (std::size_t j = 0; j < b.vectors.size(); ++j) {
                const Rational g = m.eta_v.inner(b.vectors[i], b.vectors[j]);
                CHECK(g == (i == j ? Rational(re.eta_v.signs[i]) : Rational(0)));
            }
        CHECK(m.eta_v.inner(b.v, b.v) == 1);
        for (Word p : pi.generators) {
            // J_p v = v for every involution
            RatMatrix Jp = RatMatrix::identity(m.module_dim);
            for (int k : word_indices(p)) Jp = naive_mul(Jp, m.generators[k]);
            CHECK(Jp * b.v == b.v);
        }
        for (const RatMatrix& J : re.generators) CHECK(is_signed_permutation(J));
    }
}

TEST_CASE("(4,4) basis labels and (3,4) labels") {
    const CliffordModule m44 = build_minimal_module({4, 4});
    std::vector<Word> want = {0};
    for (int i = 1; i <= 8; ++i) want.push_back(make_word({i}));
    for (int j = 2; j <= 8; ++j) want.push_back(make_word({1, j}));
    CHECK(m44.sigma == want);
    const CliffordModule m34 = build_minimal_module({3, 4});
    REQUIRE(m34.sigma.size() == 8);
    CHECK(m34.sigma[0] == 0);
    for (int i = 1; i <= 7; ++i) CHECK(m34.sigma[i] == make_word({i}));
}

TEST_CASE("tensor periodicity") {
    std::mt19937_64 rng(9);
    const CliffordModule m09 = tensor_periodicity(build_minimal_module({0, 1}), build_minimal_module({0, 8}));
    CHECK(m09.sig == Signature{0, 9});
    CHECK(m09.module_dim == 32);
    CHECK(check_module_invariants(m09, rng, 100).ok);
    for (const Signature& base : {Signature{1, 1}, Signature{0, 2}, Signature{2, 1}, Signature{1, 2}})
        for (const Signature& p : {Signature{8, 0}, Signature{0, 8}, Signature{4, 4}}) {
            CAPTURE(to_string(base));
            CAPTURE(to_string(p));
            const CliffordModule a = build_minimal_module(base), b = build_minimal_module(p);
            const CliffordModule t = tensor_periodicity(a, b);
            CHECK(t.module_dim == a.module_dim * b.module_dim);
            CHECK(t.module_dim == 16 * a.module_dim);
            if (base == Signature{1, 1} && p == Signature{4, 4}) check_invariants_directly(t, rng, 3);
            for (const RatMatrix& J : t.generators) CHECK(is_signed_permutation(J));
        }
    CHECK_THROWS(tensor_periodicity(build_minimal_module({1, 1}), build_minimal_module({1, 2})));
    CHECK(is_period({4, 4}));
    CHECK_FALSE(is_period({2, 2}));
}

TEST_CASE("volume element square") {
    for (const Signature& sig : small_signatures(8)) {
        CAPTURE(to_string(sig));
        const CliffordModule m = build_minimal_module(sig);
        RatMatrix w = RatMatrix::identity(m.module_dim);
        for (const RatMatrix& J : m.generators) w = naive_mul(w, J);
        const RatMatrix w2 = naive_mul(w, w);
        const int sign = w2(0, 0) > 0 ? 1 : -1;
        CHECK(w2 == RatMatrix::identity(m.module_dim) * Rational(sign));
        CHECK(omega_square_formula(sig) == sign);
        const VolumeElement ve = volume_element(m);
        CHECK(ve.omega_square == sign);
        CHECK(ve.J_omega == w);
    }
    CHECK(omega_square_formula({3, 4}) == 1);
    CHECK(omega_square_formula({0, 1}) == 1);
    // (4,4): both eigenspaces of J_omega are nontrivial
    const VolumeElement v44 = volume_element(build_minimal_module({4, 4}));
    const RatMatrix I = RatMatrix::identity(16);
    CHECK(rank(v44.J_omega - I) == 8);
    CHECK(rank(v44.J_omega + I) == 8);
}

TEST_CASE("module dump round trip and mutation") {
    const CliffordModule m = build_minimal_module({2, 1});
    const CliffordModule back = parse_module(dump_module(m));
    CHECK(back.sig == m.sig);
    CHECK(back.generators == m.generators);
    CHECK(back.eta_v.signs == m.eta_v.signs);

    std::mt19937_64 rng(1);
    CliffordModule bad = m;
    bad.generators[1](0, bad.generators[1].cols() - 1) = -bad.generators[1](0, bad.generators[1].cols() - 1) + 1;
    CHECK_FALSE(check_module_invariants(bad, rng, 10).ok);
}
