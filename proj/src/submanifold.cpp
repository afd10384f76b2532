#include "hgo/submanifold.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hgo {

Splitting make_splitting(const HTypeAlgebra& alg, std::vector<int> z1, std::vector<int> v1) {
    Splitting sp;
    std::sort(z1.begin(), z1.end());
    std::sort(v1.begin(), v1.end());
    for (int i = 0; i < static_cast<int>(alg.z_dim); ++i)
        if (!std::binary_search(z1.begin(), z1.end(), i)) sp.z2_idx.push_back(i);
    for (int i = 0; i < static_cast<int>(alg.v_dim()); ++i)
        if (!std::binary_search(v1.begin(), v1.end(), i)) sp.v2_idx.push_back(i);
    sp.z1_idx = std::move(z1);
    sp.v1_idx = std::move(v1);
    return sp;
}

namespace {

bool is_partition(std::vector<int> a, const std::vector<int>& b, std::size_t n) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    if (a.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != static_cast<int>(i)) return false;
    return true;
}

std::size_t minimal_dim(const Signature& sig) { return std::size_t{1} << (sig.n() - static_cast<int>(ell(sig))); }

RatMatrix word_matrix(const CliffordModule& mod, Word w) {
    RatMatrix M = RatMatrix::identity(mod.module_dim);
    for (int i : word_indices(w)) M = M * mod.generators[static_cast<std::size_t>(i)];
    return M;
}

}  // namespace

TotGeodResult totally_geodesic_check(const HTypeAlgebra& alg, const Splitting& sp) {
    TotGeodResult res;
    const std::size_t d = alg.v_dim();
    if (!is_partition(sp.z1_idx, sp.z2_idx, alg.z_dim) || !is_partition(sp.v1_idx, sp.v2_idx, d)) {
        res.failure = "index sets do not partition the bases";
        return res;
    }
    if (sp.z1_idx.empty() || sp.v1_idx.empty()) {
        res.failure = "z1 and v1 must be nonempty";
        return res;
    }
    std::vector<char> in_v1(d, 0);
    for (int a : sp.v1_idx) in_v1[static_cast<std::size_t>(a)] = 1;
    auto check = [&](int zi, bool into_v1) {
        const RatMatrix& J = alg.module.generators[static_cast<std::size_t>(zi)];
        for (int a : sp.v1_idx)
            for (std::size_t i = 0; i < d; ++i) {
                if (sgn(J(i, static_cast<std::size_t>(a))) == 0) continue;
                if (static_cast<bool>(in_v1[i]) != into_v1) {
                    res.failure = "J_Z" + std::to_string(zi + 1) + "(X" + std::to_string(a + 1) + ") leaves " +
                                  (into_v1 ? "v1" : "v2");
                    return false;
                }
            }
        return true;
    };
    for (int zi : sp.z1_idx)
        if (!check(zi, true)) return res;
    for (int zi : sp.z2_idx)
        if (!check(zi, false)) return res;

    CliffordModule sub;
    for (int zi : sp.z1_idx) (alg.sig().eps(zi) > 0 ? sub.sig.r : sub.sig.s)++;
    const std::size_t d1 = sp.v1_idx.size();
    sub.module_dim = d1;
    sub.origin = "subalgebra";
    for (int a : sp.v1_idx) sub.eta_v.signs.push_back(alg.module.eta_v.signs[static_cast<std::size_t>(a)]);
    for (int zi : sp.z1_idx) {
        const RatMatrix& J = alg.module.generators[static_cast<std::size_t>(zi)];
        RatMatrix R(d1, d1);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j)
                R(i, j) = J(static_cast<std::size_t>(sp.v1_idx[i]), static_cast<std::size_t>(sp.v1_idx[j]));
        sub.generators.push_back(std::move(R));
    }
    // Clifford relations and skewness of the restriction
    const RatMatrix I = RatMatrix::identity(d1);
    for (std::size_t i = 0; i < sub.generators.size(); ++i) {
        const RatMatrix& Ji = sub.generators[i];
        if (Ji * Ji != I * Rational(-sub.sig.eps(static_cast<int>(i)))) {
            res.failure = "restricted J fails J^2 = -<Z,Z> Id";
            return res;
        }
        if (metric_transpose(Ji, sub.eta_v) != -Ji) {
            res.failure = "restricted J is not skew";
            return res;
        }
        for (std::size_t k = i + 1; k < sub.generators.size(); ++k)
            if (!(Ji * sub.generators[k] + sub.generators[k] * Ji).is_zero()) {
                res.failure = "restricted J's do not anticommute";
                return res;
            }
    }
    res.sub_sig = sub.sig;
    res.sub_minimal = d1 == minimal_dim(sub.sig);
    res.sub = assemble(sub);
    res.ok = true;
    return res;
}

int word_image_index(const CliffordModule& mod, Word w) {
    RatVec x = unit_vector(mod.module_dim, 0);
    const auto idx = word_indices(w);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) x = mod.generators[static_cast<std::size_t>(*it)] * x;
    int found = -1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        if (found >= 0 || (x[i] != 1 && x[i] != -1)) throw std::invalid_argument("word_image_index: basis is not invariant");
        found = static_cast<int>(i);
    }
    if (found < 0) throw std::logic_error("word_image_index: zero image");
    return found;
}

std::vector<int> word_image_indices(const CliffordModule& mod, const std::vector<Word>& words) {
    std::set<int> s;
    for (Word w : words) s.insert(word_image_index(mod, w));
    return {s.begin(), s.end()};
}

std::vector<Splitting> search_splittings(const HTypeAlgebra& alg, int z1_size, const Signature& target) {
    std::vector<Splitting> out;
    const int n = static_cast<int>(alg.z_dim);
    const std::size_t d = alg.v_dim();
    for (const auto& J : alg.module.generators)
        if (!is_signed_permutation(J)) return out;
    // target column of each generator
    std::vector<std::vector<int>> image(static_cast<std::size_t>(n), std::vector<int>(d));
    for (int z = 0; z < n; ++z)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t i = 0; i < d; ++i)
                if (sgn(alg.module.generators[static_cast<std::size_t>(z)](i, a)) != 0) image[static_cast<std::size_t>(z)][a] = static_cast<int>(i);
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (Word mask = 0; mask < (Word{1} << n); ++mask) {
        if (std::popcount(mask) != z1_size) continue;
        const std::vector<int> z1 = word_indices(mask);
        Signature sig;
        for (int z : z1) (alg.sig().eps(z) > 0 ? sig.r : sig.s)++;
        if (sig != target) continue;
        for (std::size_t seed = 0; seed < d; ++seed) {
            std::set<int> orbit{static_cast<int>(seed)};
            std::vector<int> todo{static_cast<int>(seed)};
            while (!todo.empty()) {
                const int a = todo.back();
                todo.pop_back();
                for (int z : z1) {
                    const int b = image[static_cast<std::size_t>(z)][static_cast<std::size_t>(a)];
                    if (orbit.insert(b).second) todo.push_back(b);
                }
            }
            std::vector<int> v1(orbit.begin(), orbit.end());
            if (!seen.insert({z1, v1}).second) continue;
            Splitting sp = make_splitting(alg, z1, v1);
            if (totally_geodesic_check(alg, sp).ok) out.push_back(std::move(sp));
        }
    }
    return out;
}

CheckReport replay_rank_certificate(const HTypeAlgebra& alg, const NormalizerData& nd, const RankCertificate& cert) {
    CheckReport rep;
    if (cert.Z.size() != alg.z_dim || cert.X.size() != alg.v_dim()) {
        rep.fail("rank certificate vectors have the wrong length");
        return rep;
    }
    const GoSystem sys = go_system(alg, nd, cert.Z, cert.X, false);
    if (!verify_inconsistent(sys, cert.rank_A, cert.rank_Ab))
        rep.fail("rank certificate does not replay: expected ranks " + std::to_string(cert.rank_A) + "/" +
                 std::to_string(cert.rank_Ab));
    return rep;
}

namespace {

RankCertificate probe_certificate(const HTypeAlgebra& alg, const NormalizerData& nd, const std::string& cls,
                                  const RatVec& Z, const RatVec& X, bool* inconsistent) {
    const GoSystem sys = go_system(alg, nd, Z, X, false);
    const ProbeResult pr = probe_system(sys);
    *inconsistent = !pr.consistent && verify_inconsistent(sys, pr.rank_A, pr.rank_Ab);
    return {cls, Z, X, pr.rank_A, pr.rank_Ab};
}

// A vector of the subspace with <X,X> of the requested sign (positive: > 0,
// otherwise != 0); basis vectors first, then pairwise sums.
std::optional<RatVec> pick_vector(const std::vector<RatVec>& basis, const DiagMetric& eta, bool positive) {
    auto good = [&](const RatVec& x) {
        const Rational q = eta.inner(x, x);
        return positive ? sgn(q) > 0 : sgn(q) != 0;
    };
    for (auto& b : basis)
        if (good(b)) return b;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            RatVec x = vec_add(basis[i], basis[j]);
            if (good(x)) return x;
            x = vec_sub(basis[i], basis[j]);
            if (good(x)) return x;
        }
    return std::nullopt;
}

struct EigenSetup {
    RatMatrix W;
    RatVec Z;
    std::string z_class;
    std::vector<RatMatrix> must_commute;
    bool require_positive_X;
};

// X in the +1 eigenspace of W, J_Z X in the -1 eigenspace, every listed
// matrix commutes with W, and the probe at (Z, X) is inconsistent.
void run_eigen_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd, const EigenSetup& setup,
                           ObstructionEvidence& ev) {
    const std::size_t d = alg.v_dim();
    const RatMatrix I = RatMatrix::identity(d);
    if (setup.W * setup.W != I) {
        ev.reason = "the chosen element does not square to Id";
        return;
    }
    ev.word_square = 1;
    for (std::size_t k = 0; k < setup.must_commute.size(); ++k)
        if (!commutator(setup.must_commute[k], setup.W).is_zero()) {
            ev.reason = "normalizer element " + std::to_string(k) + " does not commute with the involution";
            return;
        }
    const auto plus = kernel_basis(setup.W - I);
    auto X = pick_vector(plus, alg.module.eta_v, setup.require_positive_X);
    if (!X) {
        ev.reason = "no suitable vector in the +1 eigenspace";
        return;
    }
    const RatVec JX = alg.J(setup.Z) * *X;
    if (setup.W * JX != vec_scale(JX, -1)) {
        ev.reason = "J_Z X is not in the -1 eigenspace";
        return;
    }
    bool inconsistent = false;
    ev.probe = probe_certificate(alg, nd, setup.z_class, setup.Z, *X, &inconsistent);
    if (!inconsistent) {
        ev.reason = "GO system at (Z, X) is consistent";
        return;
    }
    ev.confirmed = true;
}

}  // namespace

ObstructionEvidence volume_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd) {
    ObstructionEvidence ev;
    ev.tag = "volume-element";
    ev.sig = alg.sig();
    const int n = ev.sig.n();
    if (n % 4 != 0 || ev.sig.s % 2 != 0) {
        ev.reason = "needs r+s = 0 mod 4 and s even";
        return ev;
    }
    ev.applicable = true;
    ev.word = (Word{1} << n) - 1;
    const VolumeElement vol = volume_element(alg.module);
    if (vol.omega_square != 1) {
        ev.reason = "omega^2 != 1";
        return ev;
    }
    run_eigen_obstruction(alg, nd, {vol.J_omega, unit_vector(alg.z_dim, 0), "positive", nd.N_basis, false}, ev);
    return ev;
}

ObstructionEvidence odd_volume_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd) {
    ObstructionEvidence ev;
    ev.tag = "odd-volume-element";
    ev.sig = alg.sig();
    const int n = ev.sig.n();
    if (n % 4 != 0 || ev.sig.s % 2 != 1) {
        ev.reason = "needs r+s = 0 mod 4 and s odd";
        return ev;
    }
    ev.applicable = true;
    ev.word = (Word{1} << (n - 1)) - 1;
    const RatVec Z = unit_vector(alg.z_dim, static_cast<std::size_t>(n - 1));
    run_eigen_obstruction(alg, nd, {word_matrix(alg.module, ev.word), Z, "negative", stabilizer_basis(alg, nd, Z, false), false},
                          ev);
    return ev;
}

ObstructionEvidence involution_obstruction(const HTypeAlgebra& alg, const NormalizerData& nd) {
    ObstructionEvidence ev;
    ev.tag = "involution-contradiction";
    ev.sig = alg.sig();
    const auto [r, s] = std::pair{ev.sig.r, ev.sig.s};
    RatVec Z;
    std::string cls;
    if (r == 0 && s >= 4) {
        ev.word = make_word({1, 2, 3, 4});
        Z = unit_vector(alg.z_dim, 0);
        cls = "negative";
    } else if (s == 1 && r >= 3) {
        ev.word = make_word({1, 2, 3});
        Z = unit_vector(alg.z_dim, static_cast<std::size_t>(r));
        cls = "negative";
    } else if (s == 1 && r == 2) {
        ev.reason = "no positive involution of odd length avoids Z_{r+1} when r = 2";
        return ev;
    } else {
        ev.reason = "needs (0, s >= 4) or (r >= 3, 1)";
        return ev;
    }
    ev.applicable = true;
    if (!is_positive_involution(ev.word, ev.sig)) {
        ev.reason = word_str(ev.word) + " is not a positive involution";
        return ev;
    }
    const RatMatrix P = word_matrix(alg.module, ev.word);
    const RatMatrix JZ = alg.J(Z);
    if (!(P * JZ + JZ * P).is_zero()) {
        ev.reason = "J_p does not anticommute with J_Z";
        return ev;
    }
    // the extension condition [B, J_Z] = 0 is part of the GO system, so the
    // stabilizer need not commute with J_p; the rank certificate carries the proof
    run_eigen_obstruction(alg, nd, {P, Z, cls, {}, true}, ev);
    return ev;
}

CheckReport replay_obstruction(const ObstructionEvidence& ev) {
    CheckReport rep;
    if (!ev.applicable || !ev.confirmed) {
        rep.fail("obstruction was not confirmed: " + ev.reason);
        return rep;
    }
    const HTypeAlgebra alg = assemble(ev.sig);
    const NormalizerData nd = build_normalizer(alg);
    const RatMatrix W = word_matrix(alg.module, ev.word);
    const RatMatrix I = RatMatrix::identity(alg.v_dim());
    if (W * W != I) rep.fail("stored word does not square to Id");
    if (W * ev.probe.X != ev.probe.X) rep.fail("X is not fixed by the stored word");
    const RatVec JX = alg.J(ev.probe.Z) * ev.probe.X;
    if (W * JX != vec_scale(JX, -1)) rep.fail("J_Z X is not in the -1 eigenspace");
    if (ev.tag == "volume-element") {
        for (auto& B : nd.N_basis)
            if (!commutator(B, W).is_zero()) rep.fail("a normalizer element does not commute with J_omega");
    } else if (ev.tag == "odd-volume-element") {
        for (auto& B : stabilizer_basis(alg, nd, ev.probe.Z, false))
            if (!commutator(B, W).is_zero()) rep.fail("a stabilizer element does not commute with J_omega'");
    } else if (ev.tag == "involution-contradiction") {
        if (sgn(alg.module.eta_v.inner(ev.probe.X, ev.probe.X)) <= 0) rep.fail("X is not positive");
    } else {
        rep.fail("unknown obstruction tag " + ev.tag);
    }
    const CheckReport r2 = replay_rank_certificate(alg, nd, ev.probe);
    if (!r2.ok) rep.fail(r2.failure);
    return rep;
}

PeriodicityEmbedding periodicity_embedding(const Signature& base, const Signature& period) {
    if (!is_period(period)) throw std::invalid_argument("periodicity_embedding: period must be (8,0), (0,8) or (4,4)");
    PeriodicityEmbedding pe;
    const CliffordModule a = build_minimal_module(base);
    const CliffordModule b = build_minimal_module(period);
    pe.module = tensor_periodicity(a, b);
    pe.alg = assemble(pe.module);
    pe.base_dim = a.module_dim;
    const std::size_t da = a.module_dim, db = b.module_dim;
    if (pe.module.module_dim != 16 * da) throw std::logic_error("periodicity_embedding: dimension is not 16 dim v_{r,s}");
    const HTypeAlgebra A = assemble(a), B = assemble(b);
    // generator positions: a positive, b positive, a negative, b negative
    std::vector<int> a_pos, b_pos;
    for (int i = 0; i < a.sig.n(); ++i) a_pos.push_back(i < a.sig.r ? i : b.sig.r + i);
    for (int m = 0; m < b.sig.n(); ++m) b_pos.push_back(m < b.sig.r ? a.sig.r + m : a.sig.n() + m);
    const RatMatrix Wb = [&] {
        RatMatrix W = volume_element(b).J_omega;
        return sgn(W(0, 0)) < 0 ? RatMatrix(-W) : W;
    }();
    pe.fixed_index = 0;
    auto big = [&](std::size_t i, std::size_t k) { return i * db + k; };
    // chi_k = <W_b v_k, v_k>
    for (std::size_t k = 0; k < db && pe.base_brackets.ok; ++k) {
        const Rational chi = Wb(k, k) * b.eta_v.signs[k];
        for (std::size_t i = 0; i < da && pe.base_brackets.ok; ++i)
            for (std::size_t j = 0; j < da; ++j) {
                for (std::size_t z = 0; z < pe.alg.z_dim; ++z) {
                    Rational expect = 0;
                    const auto it = std::find(a_pos.begin(), a_pos.end(), static_cast<int>(z));
                    if (it != a_pos.end()) expect = A.structure[static_cast<std::size_t>(it - a_pos.begin())](i, j) * chi;
                    if (pe.alg.structure[z](big(i, k), big(j, k)) != expect) {
                        pe.base_brackets.fail("base bracket relation fails at i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
                                      " k=" + std::to_string(k + 1));
                        break;
                    }
                }
                if (!pe.base_brackets.ok) break;
            }
    }
    for (std::size_t k = 0; k < da && pe.period_brackets.ok; ++k) {
        const int nu = a.eta_v.signs[k];
        for (std::size_t i = 0; i < db && pe.period_brackets.ok; ++i)
            for (std::size_t j = 0; j < db; ++j) {
                for (std::size_t z = 0; z < pe.alg.z_dim; ++z) {
                    Rational expect = 0;
                    const auto it = std::find(b_pos.begin(), b_pos.end(), static_cast<int>(z));
                    if (it != b_pos.end()) expect = B.structure[static_cast<std::size_t>(it - b_pos.begin())](i, j) * nu;
                    if (pe.alg.structure[z](big(k, i), big(k, j)) != expect) {
                        pe.period_brackets.fail("period bracket relation fails at k=" + std::to_string(k + 1) + " i=" + std::to_string(i + 1) +
                                      " j=" + std::to_string(j + 1));
                        break;
                    }
                }
                if (!pe.period_brackets.ok) break;
            }
    }
    std::vector<int> v1;
    for (std::size_t i = 0; i < da; ++i) v1.push_back(static_cast<int>(big(i, static_cast<std::size_t>(pe.fixed_index))));
    pe.splitting = make_splitting(pe.alg, a_pos, v1);
    pe.check = totally_geodesic_check(pe.alg, pe.splitting);
    if (pe.check.ok) {
        if (pe.check.sub_sig != base) {
            pe.check.ok = false;
            pe.check.failure = "induced signature differs from the base";
        } else {
            for (std::size_t i = 0; i < a.generators.size(); ++i)
                if (pe.check.sub->module.generators[i] != a.generators[i]) {
                    pe.check.ok = false;
                    pe.check.failure = "induced module differs from v_{r,s}";
                }
        }
    }
    return pe;
}

std::optional<RankCertificate> known_counterexample(const Signature& sig) {
    const std::pair<int, int> k{sig.r, sig.s};
    auto cert = [&](std::vector<long> x) {
        RatVec X;
        for (long v : x) X.emplace_back(v);
        const HTypeAlgebra alg = assemble(sig);
        const NormalizerData nd = build_normalizer(alg);
        bool inconsistent = false;
        RankCertificate c = probe_certificate(alg, nd, "positive", unit_vector(alg.z_dim, 0), X, &inconsistent);
        if (!inconsistent) throw std::logic_error("known_counterexample: stored probe is consistent for " + to_string(sig));
        return c;
    };
    if (k == std::pair{1, 1}) return cert({1, 1, 1, 1});
    if (k == std::pair{0, 2}) return cert({3, 4, 5, 0});
    if (k == std::pair{2, 1}) return cert({1, 0, 0, 0, 1, 0, 0, 0});
    if (k == std::pair{0, 3}) return cert({3, 4, 0, 0, 5, 0, 0, 0});
    return std::nullopt;
}

namespace {

CliffordModule link_module(const ChainLink& link) {
    if (link.pi.empty()) return build_minimal_module(link.ambient);
    InvolutionSet pi{link.pi};
    std::string why;
    if (!is_valid_involution_set(pi, link.ambient, &why))
        throw std::invalid_argument("chain link: invalid involution set for " + to_string(link.ambient) + ": " + why);
    return module_from_involutions(link.ambient, pi);
}

ChainLink split_link(const Signature& ambient, const std::vector<std::vector<int>>& pi, const std::vector<int>& z1,
                     const std::vector<std::vector<int>>& v1_words, const Signature& sub) {
    ChainLink link;
    link.ambient = ambient;
    for (auto& w : pi) link.pi.push_back(make_word(w));
    for (int z : z1) link.z1.push_back(z - 1);
    std::vector<Word> words;
    for (auto& w : v1_words) words.push_back(make_word(w));
    link.v1 = word_image_indices(link_module(link), words);
    link.sub = sub;
    return link;
}

// v_{r,s} inside v_{r,s+1} (new_positive false) or v_{r+1,s} (true), with the
// same involutions (indices shifted past a new positive generator).
ChainLink embed_link(const Signature& sub, const std::vector<Word>& sub_pi, bool new_positive) {
    ChainLink link;
    link.sub = sub;
    link.ambient = new_positive ? Signature{sub.r + 1, sub.s} : Signature{sub.r, sub.s + 1};
    const int fresh = new_positive ? sub.r : sub.n();
    auto remap = [&](Word w) {
        if (!new_positive) return w;
        const Word low = w & ((Word{1} << sub.r) - 1);
        return low | ((w >> sub.r) << (sub.r + 1));
    };
    for (Word w : sub_pi) link.pi.push_back(remap(w));
    for (int i = 0; i <= sub.n(); ++i)
        if (i != fresh) link.z1.push_back(i);
    std::vector<Word> words;
    for (Word w = 0; w < (Word{1} << sub.n()); ++w) words.push_back(remap(w));
    link.v1 = word_image_indices(link_module(link), words);
    return link;
}

std::vector<Word> default_pi(const Signature& sig) { return enumerate_positive_involutions(sig).generators; }

}  // namespace

CheckReport replay_link(const ChainLink& link) {
    CheckReport rep;
    const HTypeAlgebra alg = assemble(link_module(link));
    const TotGeodResult tg = totally_geodesic_check(alg, make_splitting(alg, link.z1, link.v1));
    if (!tg.ok) {
        rep.fail(to_string(link.ambient) + ": " + tg.failure);
        return rep;
    }
    if (tg.sub_sig != link.sub) rep.fail(to_string(link.ambient) + ": induced signature is " + to_string(tg.sub_sig));
    if (!tg.sub_minimal) rep.fail(to_string(link.ambient) + ": induced module is not minimal");
    return rep;
}

CheckReport replay_chain(const ReductionChain& chain) {
    CheckReport rep;
    if (chain.links.empty()) rep.fail("empty chain");
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        const CheckReport r = replay_link(chain.links[i]);
        if (!r.ok) rep.fail(r.failure);
        const Signature next = i + 1 < chain.links.size() ? chain.links[i + 1].ambient : chain.terminal;
        if (chain.links[i].sub != next) rep.fail("chain links do not connect at " + to_string(chain.links[i].sub));
    }
    if (chain.terminal_kind == "counterexample") {
        if (!chain.terminal_probe) {
            rep.fail("terminal probe missing");
        } else {
            const HTypeAlgebra alg = assemble(chain.terminal);
            const CheckReport r = replay_rank_certificate(alg, build_normalizer(alg), *chain.terminal_probe);
            if (!r.ok) rep.fail(r.failure);
        }
    } else if (chain.terminal_obstruction) {
        if (chain.terminal_obstruction->sig != chain.terminal) rep.fail("terminal obstruction signature mismatch");
        const CheckReport r = replay_obstruction(*chain.terminal_obstruction);
        if (!r.ok) rep.fail(r.failure);
    } else {
        rep.fail("terminal evidence missing");
    }
    return rep;
}

std::optional<ReductionChain> reduction_chain(const Signature& sig) {
    const std::vector<std::vector<int>> square = {{}, {2}, {4}, {2, 4}};
    const std::vector<std::vector<int>> pi_14 = {{1, 2, 3}, {2, 3, 4, 5}};
    const std::vector<std::vector<int>> pi_16 = {{1, 2, 3}, {2, 3, 4, 5}, {2, 3, 6, 7}};
    const std::vector<std::vector<int>> pi_23 = {{1, 4, 5}, {1, 2, 3, 4}};
    const std::vector<std::vector<int>> pi_24 = {{1, 4, 5}, {1, 2, 3, 4}, {1, 2, 5, 6}};
    const std::vector<std::vector<int>> pi_33 = {{1, 4, 5}, {1, 2, 3}, {1, 2, 5, 6}};

    // base splittings into a four-dimensional core
    auto base = [&](const Signature& s) -> std::optional<ChainLink> {
        const std::pair<int, int> k{s.r, s.s};
        if (k == std::pair{1, 4}) return split_link(s, pi_14, {2, 4}, square, {0, 2});
        if (k == std::pair{3, 2}) return split_link(s, pi_14, {2, 4}, square, {1, 1});
        if (k == std::pair{1, 6}) return split_link(s, pi_16, {2, 4}, square, {0, 2});
        if (k == std::pair{5, 2}) return split_link(s, pi_16, {2, 6}, {{}, {2}, {6}, {2, 6}}, {1, 1});
        if (k == std::pair{2, 3}) return split_link(s, pi_23, {1, 3}, {{}, {1}, {3}, {1, 3}}, {1, 1});
        if (k == std::pair{2, 4}) return split_link(s, pi_24, {5, 6}, {{}, {5}, {6}, {5, 6}}, {0, 2});
        if (k == std::pair{3, 3}) return split_link(s, pi_33, {3, 4}, {{}, {3}, {4}, {3, 4}}, {1, 1});
        if (k == std::pair{2, 1}) {
            ChainLink link;
            link.ambient = s;
            link.z1 = {0, 2};
            link.v1 = {0, 1, 4, 5};
            link.sub = {1, 1};
            return link;
        }
        return std::nullopt;
    };
    auto pi_words = [](const std::vector<std::vector<int>>& pi) {
        std::vector<Word> w;
        for (auto& p : pi) w.push_back(make_word(p));
        return w;
    };

    ReductionChain chain;
    auto finish_with_core = [&](const Signature& core) {
        chain.terminal = core;
        chain.terminal_kind = "counterexample";
        chain.terminal_probe = known_counterexample(core);
    };
    auto finish_with_obstruction = [&](const Signature& core, ObstructionEvidence (*fn)(const HTypeAlgebra&, const NormalizerData&)) {
        const HTypeAlgebra alg = assemble(core);
        const NormalizerData nd = build_normalizer(alg);
        chain.terminal = core;
        chain.terminal_obstruction = fn(alg, nd);
        chain.terminal_kind = chain.terminal_obstruction->tag;
    };

    if (auto link = base(sig)) {
        chain.links.push_back(*link);
        finish_with_core(link->sub);
        return chain;
    }
    // one or two embeddings v_{r,s} in v_{r,s+1} / v_{r+1,s} first
    struct Step {
        Signature sub;
        std::vector<Word> pi;
        bool new_positive;
    };
    std::vector<Step> steps;
    const std::pair<int, int> k{sig.r, sig.s};
    if (k == std::pair{1, 5}) steps = {{{1, 4}, pi_words(pi_14), false}};
    else if (k == std::pair{4, 2}) steps = {{{3, 2}, pi_words(pi_14), true}};
    else if (k == std::pair{2, 5}) steps = {{{2, 4}, pi_words(pi_24), false}};
    else if (k == std::pair{4, 3}) steps = {{{3, 3}, pi_words(pi_33), true}};
    else if (k == std::pair{2, 7}) steps = {{{2, 6}, default_pi({2, 6}), false}};
    else if (k == std::pair{3, 6}) steps = {{{3, 5}, default_pi({3, 5}), false}};
    else if (k == std::pair{3, 7}) steps = {{{3, 6}, default_pi({3, 5}), false}, {{3, 5}, default_pi({3, 5}), false}};
    else if (k == std::pair{6, 3}) steps = {{{6, 2}, default_pi({6, 2}), false}};
    else if (k == std::pair{7, 2}) steps = {{{7, 1}, default_pi({7, 1}), false}};
    else if (k == std::pair{7, 3}) steps = {{{7, 2}, default_pi({7, 1}), false}, {{7, 1}, default_pi({7, 1}), false}};
    else return std::nullopt;

    for (auto& st : steps) chain.links.push_back(embed_link(st.sub, st.pi, st.new_positive));
    const Signature last = steps.back().sub;
    if (auto link = base(last)) {
        // the base link uses its own involutions; the embedding must use the same ones
        chain.links.push_back(*link);
        finish_with_core(link->sub);
        return chain;
    }
    if ((last.s == 1 && last.r >= 3) || (last.r == 0 && last.s >= 4)) finish_with_obstruction(last, involution_obstruction);
    else if (last.s % 2 == 0) finish_with_obstruction(last, volume_obstruction);
    else finish_with_obstruction(last, odd_volume_obstruction);
    return chain;
}

}  // namespace hgo
