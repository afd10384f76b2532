#include "hgo/isometry.hpp"

#include <numeric>
#include <stdexcept>

namespace hgo {

std::vector<RatMatrix> skew_basis(const DiagMetric& eta) {
    const std::size_t d = eta.dim();
    std::vector<RatMatrix> out;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) {
            RatMatrix K(d, d);
            K(a, b) = 1;
            K(b, a) = -eta.signs[a] * eta.signs[b];
            out.push_back(std::move(K));
        }
    return out;
}

namespace {

struct SignedPerm {
    std::vector<std::size_t> image;
    std::vector<int> sign;
};

std::optional<SignedPerm> as_signed_perm(const RatMatrix& M) {
    if (!is_signed_permutation(M)) return std::nullopt;
    SignedPerm p;
    for (std::size_t j = 0; j < M.cols(); ++j)
        for (std::size_t i = 0; i < M.rows(); ++i)
            if (sgn(M(i, j)) != 0) {
                p.image.push_back(i);
                p.sign.push_back(sgn(M(i, j)));
            }
    return p;
}

// Union-find over matrix positions with a sign relative to the root.
struct SignedUnionFind {
    std::vector<std::size_t> parent;
    std::vector<int> rel;  // value(x) = rel[x] * value(parent[x])
    std::vector<bool> zero;

    explicit SignedUnionFind(std::size_t n) : parent(n), rel(n, 1), zero(n, false) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<std::size_t, int> find(std::size_t x) {
        if (parent[x] == x) return {x, 1};
        auto [root, s] = find(parent[x]);
        parent[x] = root;
        rel[x] *= s;
        return {root, rel[x]};
    }
    // impose value(x) = s * value(y)
    void unite(std::size_t x, std::size_t y, int s) {
        auto [rx, sx] = find(x);
        auto [ry, sy] = find(y);
        if (rx == ry) {
            if (sx != s * sy) zero[rx] = true;
            return;
        }
        parent[rx] = ry;
        rel[rx] = sx * s * sy;  // value(rx) = sx*value(x) = sx*s*sy*value(ry)
        if (zero[rx]) zero[ry] = true;
    }
};

}  // namespace

std::vector<RatMatrix> centralizer_by_orbits(const CliffordModule& mod) {
    const std::size_t d = mod.module_dim;
    std::vector<SignedPerm> perms;
    for (auto& g : mod.generators) {
        auto p = as_signed_perm(g);
        if (!p) throw std::invalid_argument("centralizer_by_orbits: generator is not a signed permutation");
        perms.push_back(std::move(*p));
    }
    SignedUnionFind uf(d * d);
    auto idx = [d](std::size_t a, std::size_t b) { return a * d + b; };
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            // J B J^{-1} = B: B_{pi a, pi b} = s_a s_b B_{ab}
            for (auto& p : perms) uf.unite(idx(p.image[a], p.image[b]), idx(a, b), p.sign[a] * p.sign[b]);
            // skew: B_{ba} = -eta_a eta_b B_{ab}
            uf.unite(idx(b, a), idx(a, b), -mod.eta_v.signs[a] * mod.eta_v.signs[b]);
        }
    std::vector<std::size_t> roots;
    std::vector<std::size_t> root_slot(d * d, SIZE_MAX);
    for (std::size_t x = 0; x < d * d; ++x) {
        auto [r, s] = uf.find(x);
        if (uf.zero[r]) continue;
        if (root_slot[r] == SIZE_MAX) {
            root_slot[r] = roots.size();
            roots.push_back(r);
        }
    }
    // order classes by their first position so output is canonical
    std::vector<RatMatrix> out(roots.size(), RatMatrix(d, d));
    std::vector<std::size_t> first(roots.size(), SIZE_MAX);
    for (std::size_t x = 0; x < d * d; ++x) {
        auto [r, s] = uf.find(x);
        if (uf.zero[r]) continue;
        const std::size_t k = root_slot[r];
        if (first[k] == SIZE_MAX) first[k] = x;
    }
    // normalize so the first position of each class carries +1
    for (std::size_t x = 0; x < d * d; ++x) {
        auto [r, s] = uf.find(x);
        if (uf.zero[r]) continue;
        const std::size_t k = root_slot[r];
        const int s0 = uf.find(first[k]).second;
        out[k](x / d, x % d) = s * s0;
    }
    std::vector<std::size_t> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
    std::vector<RatMatrix> sorted;
    for (auto k : order) sorted.push_back(std::move(out[k]));
    return sorted;
}

namespace {

// Coefficient space of a skew basis; matrices are flattened row-major.
RatMatrix flatten_columns(const std::vector<RatMatrix>& mats) {
    if (mats.empty()) return {};
    const std::size_t n = mats[0].rows() * mats[0].cols();
    RatMatrix A(n, mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k)
        for (std::size_t e = 0; e < n; ++e) A(e, k) = mats[k].data()[e];
    return A;
}

RatMatrix combine(const std::vector<RatMatrix>& basis, const RatVec& coeffs, std::size_t d) {
    RatMatrix M(d, d);
    for (std::size_t k = 0; k < basis.size() && k < coeffs.size(); ++k)
        if (sgn(coeffs[k]) != 0) M += basis[k] * coeffs[k];
    return M;
}

}  // namespace

std::vector<RatMatrix> centralizer_by_kernel(const CliffordModule& mod) {
    const std::size_t d = mod.module_dim;
    const auto K = skew_basis(mod.eta_v);
    std::vector<RatMatrix> blocks;
    for (auto& g : mod.generators) {
        std::vector<RatMatrix> comms;
        for (auto& k : K) comms.push_back(commutator(k, g));
        blocks.push_back(flatten_columns(comms));
    }
    std::vector<RatMatrix> out;
    if (K.empty()) return out;
    for (auto& c : kernel_basis(vstack(blocks))) out.push_back(combine(K, c, d));
    return out;
}

NormalizerData build_normalizer(const HTypeAlgebra& alg, const NormalizerOptions& opts) {
    const auto& mod = alg.module;
    const std::size_t d = mod.module_dim, n = alg.z_dim;
    NormalizerData nd;
    nd.V_basis = mod.generators;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            nd.VV_basis.push_back(mod.generators[i] * mod.generators[j]);
            nd.vv_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    bool perms = true;
    for (auto& g : mod.generators) perms = perms && is_signed_permutation(g);
    if (perms) {
        nd.centralizer_basis = centralizer_by_orbits(mod);
        nd.centralizer_method = "orbit";
    } else {
        nd.centralizer_basis = centralizer_by_kernel(mod);
        nd.centralizer_method = "kernel";
    }
    nd.N_basis = nd.VV_basis;
    nd.N_basis.insert(nd.N_basis.end(), nd.centralizer_basis.begin(), nd.centralizer_basis.end());

    // direct sum: the concatenation is linearly independent
    if (!nd.N_basis.empty() && rank(flatten_columns(nd.N_basis)) != nd.N_basis.size())
        throw std::logic_error("build_normalizer: [V,V] and the centralizer are not independent");

    const bool full = opts.full_kernel_check.value_or(d <= 16);
    if (full) {
        // unknowns: skew coordinates of B, then c_{ik} with [B,J_i] = sum_k c_ik J_k
        const auto K = skew_basis(mod.eta_v);
        const std::size_t nk = K.size(), nc = n * n;
        RatMatrix A(n * d * d, nk + nc);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < nk; ++k) {
                const RatMatrix c = commutator(K[k], mod.generators[i]);
                for (std::size_t e = 0; e < d * d; ++e) A(i * d * d + e, k) = c.data()[e];
            }
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t e = 0; e < d * d; ++e) A(i * d * d + e, nk + i * n + k) = -mod.generators[k].data()[e];
        }
        nd.full_kernel_dim = kernel_basis(A).size();
        if (*nd.full_kernel_dim != nd.N_basis.size())
            throw std::logic_error("build_normalizer: full normalizer dimension differs from [V,V] + centralizer");
    }
    return nd;
}

std::optional<RatMatrix> recover_C(const RatMatrix& A, const HTypeAlgebra& alg) {
    const std::size_t n = alg.z_dim;
    RatMatrix C(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto coords = span_coordinates(alg.module.generators, commutator(A, alg.module.generators[i]));
        if (!coords) return std::nullopt;
        for (std::size_t k = 0; k < n; ++k) C(k, i) = (*coords)[k];
    }
    if (metric_transpose(C, alg.eta_z) != -C) return std::nullopt;
    return C;
}

SkewDerivation phi_derivation(const HTypeAlgebra& alg, const RatVec& Z1, const RatVec& Z2) {
    if (sgn(alg.eta_z.inner(Z1, Z2)) != 0) throw std::invalid_argument("phi_derivation: Z' and Z'' must be orthogonal");
    if (vec_is_zero(Z1) || vec_is_zero(Z2)) throw std::invalid_argument("phi_derivation: zero input");
    const std::size_t n = alg.z_dim;
    SkewDerivation D;
    D.A = alg.J(Z1) * alg.J(Z2);
    D.C = RatMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const RatVec e = unit_vector(n, c);
        // C(Z) = 2(<Z',Z> Z'' - <Z'',Z> Z')
        const RatVec col = vec_sub(vec_scale(Z2, 2 * alg.eta_z.inner(Z1, e)), vec_scale(Z1, 2 * alg.eta_z.inner(Z2, e)));
        for (std::size_t r = 0; r < n; ++r) D.C(r, c) = col[r];
    }
    auto rep = check_skew_derivation(alg, D);
    if (!rep.ok) throw std::logic_error("phi_derivation: " + rep.failure);
    return D;
}

CheckReport check_skew_derivation(const HTypeAlgebra& alg, const SkewDerivation& D) {
    CheckReport rep;
    if (metric_transpose(D.A, alg.module.eta_v) != -D.A) rep.fail("A is not skew");
    if (metric_transpose(D.C, alg.eta_z) != -D.C) rep.fail("C is not skew");
    for (std::size_t i = 0; i < alg.z_dim && rep.ok; ++i) {
        const RatVec CZ = D.C * unit_vector(alg.z_dim, i);
        if (commutator(D.A, alg.module.generators[i]) != alg.J(CZ))
            rep.fail("[A, J_" + std::to_string(i + 1) + "] != J_{C(Z)}");
    }
    return rep;
}

CheckReport check_derivation_property(const HTypeAlgebra& alg, const SkewDerivation& D) {
    CheckReport rep;
    const std::size_t d = alg.v_dim();
    for (std::size_t i = 0; i < d && rep.ok; ++i)
        for (std::size_t j = 0; j < d && rep.ok; ++j) {
            const RatVec X = unit_vector(d, i), Y = unit_vector(d, j);
            const RatVec lhs = D.C * alg.bracket(X, Y);
            const RatVec rhs = vec_add(alg.bracket(D.A * X, Y), alg.bracket(X, D.A * Y));
            if (lhs != rhs)
                rep.fail("D[V_" + std::to_string(i + 1) + ",V_" + std::to_string(j + 1) + "] != [DV_i,V_j] + [V_i,DV_j]");
        }
    return rep;
}

CheckReport volume_commutation_check(const HTypeAlgebra& alg, const NormalizerData& nd) {
    if (alg.z_dim % 4 != 0) throw std::invalid_argument("volume_commutation_check: r+s must be 0 mod 4");
    CheckReport rep;
    const RatMatrix W = volume_element(alg.module).J_omega;
    for (std::size_t k = 0; k < nd.N_basis.size() && rep.ok; ++k)
        if (!commutator(nd.N_basis[k], W).is_zero()) rep.fail("normalizer element " + std::to_string(k) + " does not commute with J_omega");
    return rep;
}

CheckReport check_lie_triple(const NormalizerData& nd) {
    CheckReport rep;
    for (std::size_t a = 0; a < nd.VV_basis.size() && rep.ok; ++a)
        for (std::size_t i = 0; i < nd.V_basis.size() && rep.ok; ++i)
            if (!span_coordinates(nd.V_basis, commutator(nd.VV_basis[a], nd.V_basis[i])))
                rep.fail("[[V,V],V] leaves V");
    return rep;
}

CheckReport check_normalizer_structure(const HTypeAlgebra& alg, const NormalizerData& nd) {
    CheckReport rep;
    const auto& eta = alg.module.eta_v;
    for (std::size_t k = 0; k < nd.N_basis.size() && rep.ok; ++k) {
        const auto& B = nd.N_basis[k];
        if (metric_transpose(B, eta) != -B) rep.fail("normalizer element is not skew");
        for (std::size_t i = 0; i < nd.V_basis.size() && rep.ok; ++i)
            if (!span_coordinates(nd.V_basis, commutator(B, nd.V_basis[i]))) rep.fail("[B,J_i] leaves span V");
    }
    for (std::size_t k = 0; k < nd.centralizer_basis.size() && rep.ok; ++k)
        for (std::size_t i = 0; i < nd.V_basis.size() && rep.ok; ++i)
            if (!commutator(nd.centralizer_basis[k], nd.V_basis[i]).is_zero()) rep.fail("centralizer element fails to commute");
    const std::size_t n = alg.z_dim;
    if (nd.VV_basis.size() != n * (n - 1) / 2) rep.fail("dim [V,V] != (r+s)(r+s-1)/2");
    if (!nd.N_basis.empty() && rank(flatten_columns(nd.N_basis)) != nd.N_basis.size())
        rep.fail("N basis is dependent");
    // [V,V] closed under the commutator
    for (std::size_t a = 0; a < nd.VV_basis.size() && rep.ok; ++a)
        for (std::size_t b = a + 1; b < nd.VV_basis.size() && rep.ok; ++b)
            if (!span_coordinates(nd.VV_basis, commutator(nd.VV_basis[a], nd.VV_basis[b]))) rep.fail("[V,V] not closed");
    return rep;
}

}  // namespace hgo
