#include "hgo/goprop.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hgo {

std::vector<std::pair<std::string, RatVec>> CenterRepresentatives::list() const {
    std::vector<std::pair<std::string, RatVec>> out;
    if (positive) out.emplace_back("positive", *positive);
    if (negative) out.emplace_back("negative", *negative);
    if (null) out.emplace_back("null", *null);
    return out;
}

CenterRepresentatives center_representatives(const Signature& sig) {
    CenterRepresentatives reps;
    const std::size_t n = static_cast<std::size_t>(sig.n());
    if (sig.r >= 1) reps.positive = unit_vector(n, 0);
    if (sig.s >= 1) reps.negative = unit_vector(n, static_cast<std::size_t>(sig.r));
    if (sig.r >= 1 && sig.s >= 1) reps.null = vec_add(unit_vector(n, 0), unit_vector(n, static_cast<std::size_t>(sig.r)));
    return reps;
}

NRResult naturally_reductive_check(const HTypeAlgebra& alg, const NormalizerData& nd) {
    NRResult res;
    const std::size_t n = alg.z_dim;
    res.tau.assign(n, RatMatrix(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto coords = span_coordinates(nd.V_basis, commutator(nd.V_basis[i], nd.V_basis[j]));
            if (!coords) {
                res.failure = "[J_" + std::to_string(i + 1) + ", J_" + std::to_string(j + 1) + "] is not in span V";
                res.tau.clear();
                return res;
            }
            for (std::size_t k = 0; k < n; ++k) res.tau[i](k, j) = (*coords)[k];
        }
    for (std::size_t i = 0; i < n; ++i)
        if (metric_transpose(res.tau[i], alg.eta_z) != -res.tau[i]) {
            res.failure = "tau_" + std::to_string(i + 1) + " is not skew";
            res.tau.clear();
            return res;
        }
    res.ok = true;
    return res;
}

std::vector<RatMatrix> stabilizer_basis(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z,
                                        bool restrict_to_vv) {
    const auto& src = restrict_to_vv ? nd.VV_basis : nd.N_basis;
    const std::size_t d = alg.v_dim();
    if (src.empty()) return {};
    const RatMatrix JZ = alg.J(Z);
    RatMatrix M(d * d, src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
        const RatMatrix c = commutator(src[k], JZ);
        for (std::size_t e = 0; e < d * d; ++e) M(e, k) = c.data()[e];
    }
    std::vector<RatMatrix> out;
    for (const auto& v : kernel_basis(M)) {
        RatMatrix B(d, d);
        for (std::size_t k = 0; k < src.size(); ++k)
            if (sgn(v[k]) != 0) B += src[k] * v[k];
        out.push_back(std::move(B));
    }
    return out;
}

GoSystem go_system_from(const std::vector<RatMatrix>& basis, const RatMatrix& JZ, const RatVec& X) {
    GoSystem sys;
    sys.basis = basis;
    sys.A = RatMatrix(X.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const RatVec col = basis[k] * X;
        for (std::size_t i = 0; i < X.size(); ++i) sys.A(i, k) = col[i];
    }
    sys.b = JZ * X;
    return sys;
}

GoSystem go_system(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z, const RatVec& X,
                   bool restrict_to_vv) {
    if (Z.size() != alg.z_dim || X.size() != alg.v_dim()) throw DimensionError("go_system: vector length mismatch");
    return go_system_from(stabilizer_basis(alg, nd, Z, restrict_to_vv), alg.J(Z), X);
}

ProbeResult probe_system(const GoSystem& sys) {
    ProbeResult res;
    const std::size_t d = sys.b.size();
    if (sys.basis.empty()) {
        res.rank_A = 0;
        res.rank_Ab = vec_is_zero(sys.b) ? 0 : 1;
        res.consistent = res.rank_Ab == 0;
        if (res.consistent) res.B = RatMatrix(d, d);
        return res;
    }
    res.rank_A = rank(sys.A);
    res.rank_Ab = rank(append_column(sys.A, sys.b));
    auto x = solve_consistent(sys.A, sys.b);
    res.consistent = x.has_value();
    if (res.consistent != (res.rank_A == res.rank_Ab)) throw std::logic_error("probe_system: rank test and solver disagree");
    if (x) {
        res.coeffs = *x;
        res.B = RatMatrix(d, d);
        for (std::size_t k = 0; k < sys.basis.size(); ++k)
            if (sgn((*x)[k]) != 0) res.B += sys.basis[k] * (*x)[k];
    }
    return res;
}

bool probe_consistent_fast(const GoSystem& sys) {
    if (sys.basis.empty()) return vec_is_zero(sys.b);
    return rank(sys.A) == rank(append_column(sys.A, sys.b));
}

ProbeResult go_probe(const HTypeAlgebra& alg, const NormalizerData& nd, const RatVec& Z, const RatVec& X,
                     bool restrict_to_vv) {
    return probe_system(go_system(alg, nd, Z, X, restrict_to_vv));
}

CheckReport verify_witness(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const RatMatrix& B) {
    CheckReport rep;
    const RatMatrix JZ = alg.J(Z);
    if (metric_transpose(B, alg.module.eta_v) != -B) rep.fail("witness is not skew");
    if (!commutator(B, JZ).is_zero()) rep.fail("witness does not commute with J_Z");
    if (B * X != JZ * X) rep.fail("B(X) != J_Z(X)");
    return rep;
}

bool verify_inconsistent(const GoSystem& sys, std::size_t rank_A, std::size_t rank_Ab) {
    if (rank_Ab != rank_A + 1) return false;
    const RatMatrix Ab = append_column(sys.A, sys.b);
    if (sys.basis.empty()) return rank_A == 0 && !vec_is_zero(sys.b);
    return rank(sys.A) == rank_A && rank(Ab) == rank_Ab && rank_reverse_order(sys.A) == rank_A &&
           rank_reverse_order(Ab) == rank_Ab;
}

namespace {

long gcd_all(const std::vector<long>& x) {
    long g = 0;
    for (long v : x) g = std::gcd(g, std::labs(v));
    return g;
}

// Next vector in [-h,h]^d in lexicographic order (last coordinate fastest);
// false after the last one.
bool advance(std::vector<long>& x, long h) {
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] < h) {
            ++x[i];
            return true;
        }
        x[i] = -h;
    }
    return false;
}

}  // namespace

std::optional<Counterexample> counterexample_search(const HTypeAlgebra& alg, const NormalizerData& nd, int height) {
    const std::size_t d = alg.v_dim();
    struct RepData {
        std::string cls;
        RatVec Z;
        RatMatrix JZ;
        std::vector<RatMatrix> basis;
    };
    std::vector<RepData> reps;
    for (auto& [cls, Z] : center_representatives(alg.sig()).list())
        reps.push_back({cls, Z, alg.J(Z), stabilizer_basis(alg, nd, Z, false)});
    std::size_t probes = 0;
    for (long h = 1; h <= height; ++h) {
        std::vector<long> x(d, -h);
        do {
            long mx = 0;
            for (long v : x) mx = std::max(mx, std::labs(v));
            if (mx != h || gcd_all(x) != 1) continue;
            auto first = std::find_if(x.begin(), x.end(), [](long v) { return v != 0; });
            if (*first < 0) continue;
            RatVec X(d);
            for (std::size_t i = 0; i < d; ++i) X[i] = x[i];
            for (auto& rep : reps) {
                ++probes;
                const GoSystem sys = go_system_from(rep.basis, rep.JZ, X);
                if (probe_consistent_fast(sys)) continue;
                const ProbeResult pr = probe_system(sys);
                Counterexample ce{rep.cls, rep.Z, X, pr.rank_A, pr.rank_Ab, probes};
                return ce;
            }
        } while (advance(x, h));
    }
    return std::nullopt;
}

unsigned worker_count() {
    if (const char* env = std::getenv("HGO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const unsigned w = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace hgo
