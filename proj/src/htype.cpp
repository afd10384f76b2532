#include "hgo/htype.hpp"

#include <iomanip>
#include <sstream>

namespace hgo {

RatVec HTypeAlgebra::bracket(const RatVec& X, const RatVec& Y) const {
    if (X.size() != v_dim() || Y.size() != v_dim()) throw DimensionError("bracket: vector length differs from dim v");
    RatVec z(z_dim);
    for (std::size_t k = 0; k < z_dim; ++k) {
        Rational acc = 0;
        const RatMatrix& a = structure[k];
        for (std::size_t i = 0; i < v_dim(); ++i) {
            if (sgn(X[i]) == 0) continue;
            for (std::size_t j = 0; j < v_dim(); ++j)
                if (sgn(a(i, j)) != 0 && sgn(Y[j]) != 0) acc += a(i, j) * X[i] * Y[j];
        }
        z[k] = acc;
    }
    return z;
}

HTypeAlgebra assemble(const CliffordModule& mod) {
    HTypeAlgebra alg;
    alg.module = mod;
    alg.z_dim = static_cast<std::size_t>(mod.sig.n());
    alg.eta_z = mod.sig.metric();
    const std::size_t d = mod.module_dim;
    for (std::size_t k = 0; k < alg.z_dim; ++k) {
        RatMatrix a(d, d);
        const RatMatrix& Jk = mod.generators[k];
        const int ek = mod.sig.eps(static_cast<int>(k));
        // a_k(i,j) = eps_k <J_k V_i, V_j> = eps_k eta_j (J_k)_{j,i}
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(Jk(j, i)) != 0) a(i, j) = Jk(j, i) * (ek * mod.eta_v.signs[j]);
        alg.structure.push_back(std::move(a));
    }
    // <J_Z X, Y> = <[X,Y], Z> on all basis triples
    for (std::size_t k = 0; k < alg.z_dim; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Rational lhs = mod.generators[k](j, i) * mod.eta_v.signs[j];
                const Rational rhs = alg.structure[k](i, j) * alg.eta_z.signs[k];
                if (lhs != rhs) throw std::logic_error("assemble: defining identity fails");
                if (alg.structure[k](i, j) != -alg.structure[k](j, i))
                    throw std::logic_error("assemble: bracket is not antisymmetric (module not skew)");
            }
    return alg;
}

HTypeAlgebra assemble(const Signature& sig, std::size_t multiplicity) {
    return assemble(build_minimal_module(sig, multiplicity));
}

CheckReport verify_admissibility(const HTypeAlgebra& alg, std::mt19937_64& rng, int samples) {
    CheckReport rep;
    const auto& mod = alg.module;
    const std::size_t d = alg.v_dim();
    const RatMatrix I = RatMatrix::identity(d);
    for (std::size_t i = 0; i < alg.z_dim && rep.ok; ++i) {
        const auto& Ji = mod.generators[i];
        if (metric_transpose(Ji, mod.eta_v) != -Ji) rep.fail("J_" + std::to_string(i + 1) + " is not skew");
        for (std::size_t j = i; j < alg.z_dim && rep.ok; ++j) {
            const auto& Jj = mod.generators[j];
            const RatMatrix sym = Ji * Jj + Jj * Ji;
            const Rational want = i == j ? Rational(-2 * alg.eta_z.signs[i]) : Rational(0);
            if (sym != I * want)
                rep.fail("J_" + std::to_string(i + 1) + "J_" + std::to_string(j + 1) + " + J_" + std::to_string(j + 1) +
                         "J_" + std::to_string(i + 1) + " != -2<Z_i,Z_j> Id");
        }
    }
    for (int t = 0; t < samples && rep.ok; ++t) {
        const RatVec Z = random_vector(rng, alg.z_dim);
        const RatMatrix JZ = alg.J(Z);
        if (JZ * JZ != I * (-alg.eta_z.inner(Z, Z))) {
            std::ostringstream os;
            os << "J_Z^2 != -<Z,Z> Id at Z = (";
            for (std::size_t k = 0; k < Z.size(); ++k) os << (k ? "," : "") << rat_str(Z[k]);
            os << ")";
            rep.fail(os.str());
        }
    }
    return rep;
}

CheckReport check_nonsingular(const HTypeAlgebra& alg, std::mt19937_64& rng, int samples) {
    CheckReport rep;
    const std::size_t d = alg.v_dim();
    auto surjective = [&](const RatVec& X) {
        RatMatrix ad(alg.z_dim, d);
        for (std::size_t j = 0; j < d; ++j) {
            const RatVec z = alg.bracket(X, unit_vector(d, j));
            for (std::size_t k = 0; k < alg.z_dim; ++k) ad(k, j) = z[k];
        }
        return rank(ad) == alg.z_dim;
    };
    for (std::size_t i = 0; i < d && rep.ok; ++i)
        if (!surjective(unit_vector(d, i))) rep.fail("ad_{V_" + std::to_string(i + 1) + "} is not onto z");
    for (int t = 0; t < samples && rep.ok; ++t) {
        RatVec X = random_vector(rng, d);
        if (vec_is_zero(X)) continue;
        if (!surjective(X)) rep.fail("ad_X is not onto z for a random X");
    }
    return rep;
}

std::string bracket_label(const RatVec& z) {
    std::string out;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (sgn(z[k]) == 0) continue;
        const Rational a = abs(z[k]);
        if (sgn(z[k]) < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (a != 1) out += rat_str(a);
        out += "Z" + std::to_string(k + 1);
    }
    return out.empty() ? "0" : out;
}

std::string bracket_table(const HTypeAlgebra& alg) {
    const std::size_t d = alg.v_dim();
    std::ostringstream os;
    os << std::setw(4) << "";
    for (std::size_t j = 0; j < d; ++j) os << std::setw(6) << ("V" + std::to_string(j + 1));
    os << '\n';
    for (std::size_t i = 0; i < d; ++i) {
        os << std::left << std::setw(4) << ("V" + std::to_string(i + 1)) << std::right;
        for (std::size_t j = 0; j < d; ++j)
            os << std::setw(6) << bracket_label(alg.bracket(unit_vector(d, i), unit_vector(d, j)));
        os << '\n';
    }
    return os.str();
}

}  // namespace hgo
