#include "hgo/geod.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace hgo {

Eigen::VectorXd to_double(const RatVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return out;
}

Eigen::MatrixXd to_double(const RatMatrix& M) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(M.rows()), static_cast<Eigen::Index>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = M(i, j).get_d();
    return out;
}

namespace {

// 3-point Gauss-Legendre on [-1, 1]
const double kNodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double kWeights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct Flow {
    std::vector<Eigen::MatrixXd> structure;
    Eigen::MatrixXd C, A;
    Eigen::VectorXd v0, w0;
};

Eigen::VectorXd bracket(const std::vector<Eigen::MatrixXd>& S, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(S.size()));
    for (std::size_t k = 0; k < S.size(); ++k) out(static_cast<Eigen::Index>(k)) = x.dot(S[k] * y);
    return out;
}

// Uniform panels: every exponential needed is exp(a M) exp(delta M) with a a
// panel start and delta one of a fixed set of offsets, so only the offsets
// are exponentiated and exp(a M) is advanced one panel at a time.
std::vector<GeodesicState> integrate(const Flow& f, double t, int steps, bool keep_all) {
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    const double dt = t / steps, h = 0.5 * dt;
    // offsets: node q of the panel, node r of [a, node q], the full panel
    double node[3], sub[3][3];
    for (int q = 0; q < 3; ++q) {
        node[q] = h * (1 + kNodes[q]);
        for (int r = 0; r < 3; ++r) sub[q][r] = 0.5 * node[q] * (1 + kNodes[r]);
    }
    auto offsets = [&](const Eigen::MatrixXd& M, Eigen::MatrixXd (&en)[3], Eigen::MatrixXd (&es)[3][3], Eigen::MatrixXd& full) {
        for (int q = 0; q < 3; ++q) {
            en[q] = (node[q] * M).exp();
            for (int r = 0; r < 3; ++r) es[q][r] = (sub[q][r] * M).exp();
        }
        full = (dt * M).exp();
    };
    Eigen::MatrixXd An[3], As[3][3], Afull, Cn[3], Cs[3][3], Cfull;
    offsets(f.A, An, As, Afull);
    offsets(f.C, Cn, Cs, Cfull);
    // panel quadrature of int_a^b exp(sA) w0 reuses the node exponentials
    GeodesicState st;
    st.x = Eigen::VectorXd::Zero(f.w0.size());
    st.z = Eigen::VectorXd::Zero(f.v0.size());
    std::vector<GeodesicState> out;
    if (keep_all) out.push_back(st);
    Eigen::VectorXd ea_w = f.w0;  // exp(aA) w0
    Eigen::VectorXd ec_v = f.v0;  // exp(aC) v0
    for (int p = 0; p < steps; ++p) {
        Eigen::VectorXd x_panel = Eigen::VectorXd::Zero(f.w0.size());
        for (int q = 0; q < 3; ++q) {
            const Eigen::VectorXd wdot = An[q] * ea_w;
            Eigen::VectorXd part = Eigen::VectorXd::Zero(f.w0.size());
            for (int r = 0; r < 3; ++r) part += kWeights[r] * (As[q][r] * ea_w);
            const Eigen::VectorXd w = st.x + 0.5 * node[q] * part;
            st.z += h * kWeights[q] * (Cn[q] * ec_v + 0.5 * bracket(f.structure, w, wdot));
            x_panel += h * kWeights[q] * wdot;
        }
        st.x += x_panel;
        ea_w = Afull * ea_w;
        ec_v = Cfull * ec_v;
        st.t = (p + 1) * dt;
        if (keep_all) out.push_back(st);
    }
    st.t = t;
    if (!keep_all) out.push_back(st);
    return out;
}

std::vector<Eigen::MatrixXd> structure_double(const HTypeAlgebra& alg) {
    std::vector<Eigen::MatrixXd> S;
    for (auto& M : alg.structure) S.push_back(to_double(M));
    return S;
}

Eigen::MatrixXd J_double(const HTypeAlgebra& alg, const Eigen::VectorXd& z) {
    const Eigen::Index d = static_cast<Eigen::Index>(alg.v_dim());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t k = 0; k < alg.z_dim; ++k) J += z(static_cast<Eigen::Index>(k)) * to_double(alg.module.generators[k]);
    return J;
}

}  // namespace

GeodesicState geodesic(const HTypeAlgebra& alg, const Eigen::VectorXd& zdot0, const Eigen::VectorXd& xdot0, double t, int steps) {
    if (static_cast<std::size_t>(zdot0.size()) != alg.z_dim || static_cast<std::size_t>(xdot0.size()) != alg.v_dim())
        throw DimensionError("geodesic: initial velocity has the wrong size");
    const Eigen::Index n = zdot0.size();
    return integrate({structure_double(alg), Eigen::MatrixXd::Zero(n, n), J_double(alg, zdot0), zdot0, xdot0}, t, steps, false).back();
}

GeodesicState orbit(const HTypeAlgebra& alg, const Eigen::MatrixXd& C, const Eigen::MatrixXd& A, const Eigen::VectorXd& vdot0,
                    const Eigen::VectorXd& wdot0, double t, int steps) {
    if (static_cast<std::size_t>(vdot0.size()) != alg.z_dim || static_cast<std::size_t>(wdot0.size()) != alg.v_dim() ||
        C.rows() != vdot0.size() || A.rows() != wdot0.size())
        throw DimensionError("orbit: size mismatch");
    return integrate({structure_double(alg), C, A, vdot0, wdot0}, t, steps, false).back();
}

double state_distance(const GeodesicState& a, const GeodesicState& b) {
    return std::max((a.z - b.z).lpNorm<Eigen::Infinity>(), (a.x - b.x).lpNorm<Eigen::Infinity>());
}

namespace {

double max_gap(const HTypeAlgebra& alg, const Eigen::VectorXd& z, const Eigen::VectorXd& x, const Eigen::MatrixXd& C,
               const Eigen::MatrixXd& A, double t_end, int steps) {
    const Eigen::Index n = z.size();
    const auto S = structure_double(alg);
    const auto geo = integrate({S, Eigen::MatrixXd::Zero(n, n), J_double(alg, z), z, x}, t_end, steps, true);
    const auto orb = integrate({S, C, A, z, x}, t_end, steps, true);
    double worst = 0;
    for (std::size_t k = 0; k < geo.size(); ++k) worst = std::max(worst, state_distance(geo[k], orb[k]));
    return worst;
}

}  // namespace

double compare(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const RatMatrix& B, double t_end, int steps) {
    const auto C = recover_C(B, alg);
    if (!C) throw std::invalid_argument("compare: B is not the v-part of a skew derivation");
    return max_gap(alg, to_double(Z), to_double(X), to_double(*C), to_double(B), t_end, steps);
}

double compare_numeric(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, const Eigen::MatrixXd& A, double t_end,
                       int steps) {
    const Eigen::Index n = static_cast<Eigen::Index>(alg.z_dim);
    return max_gap(alg, to_double(Z), to_double(X), Eigen::MatrixXd::Zero(n, n), A, t_end, steps);
}

double convergence_order(const HTypeAlgebra& alg, const RatVec& Z, const RatVec& X, double t, int steps, int ref_steps) {
    const Eigen::VectorXd z = to_double(Z), x = to_double(X);
    const GeodesicState ref = geodesic(alg, z, x, t, ref_steps);
    const double e1 = state_distance(geodesic(alg, z, x, t, steps), ref);
    const double e2 = state_distance(geodesic(alg, z, x, t, 2 * steps), ref);
    return std::log2(e1 / e2);
}

void write_trace_csv(std::ostream& os, const HTypeAlgebra& alg, const Eigen::VectorXd& zdot0, const Eigen::VectorXd& xdot0,
                     double t_end, int samples, int steps) {
    if (samples < 1) throw std::invalid_argument("write_trace_csv: samples must be at least 1");
    os << "t";
    for (std::size_t k = 0; k < alg.z_dim; ++k) os << ",z" << k + 1;
    for (std::size_t i = 0; i < alg.v_dim(); ++i) os << ",x" << i + 1;
    os << '\n' << std::setprecision(17);
    for (int k = 0; k <= samples; ++k) {
        const double t = t_end * k / samples;
        const int panels = std::max(1, static_cast<int>(std::lround(steps * static_cast<double>(k) / samples)));
        const GeodesicState st = geodesic(alg, zdot0, xdot0, t, panels);
        os << t;
        for (Eigen::Index i = 0; i < st.z.size(); ++i) os << ',' << st.z(i);
        for (Eigen::Index i = 0; i < st.x.size(); ++i) os << ',' << st.x(i);
        os << '\n';
    }
}

}  // namespace hgo
