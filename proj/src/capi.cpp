#include "hgo.h"

#include "hgo/geod.hpp"
#include "hgo/n34.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>

struct hgo_algebra {
    hgo::HTypeAlgebra alg;
};

struct hgo_certificate {
    hgo::GOCertificate cert;
};

namespace {

thread_local std::string g_last_error;

hgo_status set_error(hgo_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// Runs f, mapping exceptions onto status codes.
template <class F>
hgo_status guarded(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const hgo::DimensionError& e) {
        return set_error(HGO_E_INVALID, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(HGO_E_INVALID, e.what());
    } catch (const std::exception& e) {
        return set_error(HGO_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(HGO_E_INTERNAL, "unknown exception");
    }
}

hgo::Signature checked_signature(int r, int s) {
    const hgo::Signature sig{r, s};
    if (!sig.valid() || r > 16 || s > 16) throw std::invalid_argument("invalid signature (" + std::to_string(r) + "," + std::to_string(s) + ")");
    return sig;
}

Eigen::VectorXd parse_velocity(const char* text, std::size_t n, const char* what) {
    if (!text) throw std::invalid_argument(std::string(what) + " is missing");
    std::vector<double> vals;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::runtime_error(std::string(what) + ": empty entry");
        item = item.substr(b, e - b + 1);
        if (item.find('/') != std::string::npos) {
            try {
                vals.push_back(hgo::parse_rational(item).get_d());
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(std::string(what) + ": " + e.what());
            }
        } else {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size()) throw std::runtime_error(std::string(what) + ": cannot parse '" + item + "'");
            vals.push_back(v);
        }
    }
    if (vals.size() != n)
        throw std::invalid_argument(std::string(what) + " needs " + std::to_string(n) + " entries, got " + std::to_string(vals.size()));
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string grid(int max_r, int max_s, const std::function<std::string(int, int)>& cell) {
    std::ostringstream os;
    os << "s\\r";
    for (int r = 0; r <= max_r; ++r) os << '\t' << r;
    os << '\n';
    for (int s = max_s; s >= 0; --s) {
        os << s;
        for (int r = 0; r <= max_r; ++r) os << '\t' << (r + s == 0 ? "-" : cell(r, s));
        os << '\n';
    }
    return os.str();
}

std::string certificate_text(const hgo::GOCertificate& c) {
    std::ostringstream os;
    os << "N" << hgo::to_string(c.sig) << (c.multiplicity > 1 ? " x" + std::to_string(c.multiplicity) : "") << ": "
       << hgo::to_string(c.verdict) << " (" << c.evidence_kind << ")";
    if (c.counterexample) {
        os << "; Z = " << c.counterexample->z_class << " representative, X = (";
        for (std::size_t i = 0; i < c.counterexample->X.size(); ++i) os << (i ? "," : "") << hgo::rat_str(c.counterexample->X[i]);
        os << "), rank A = " << c.counterexample->rank_A << ", rank [A|b] = " << c.counterexample->rank_Ab;
    }
    if (c.obstruction) os << "; word " << hgo::word_str(c.obstruction->word);
    if (c.chain) {
        os << "; chain";
        for (auto& l : c.chain->links) os << ' ' << hgo::to_string(l.ambient) << " >";
        os << ' ' << hgo::to_string(c.chain->terminal) << " [" << c.chain->terminal_kind << "]";
    }
    if (c.strong)
        for (auto& cl : c.strong->classes) os << "; " << cl.z_class << ": " << cl.consistent << "/" << cl.probes << " probes consistent";
    if (!c.note.empty()) os << "; " << c.note;
    os << '\n';
    return os.str();
}

}  // namespace

extern "C" {

const char* hgo_last_error(void) { return g_last_error.c_str(); }

void hgo_string_free(char* s) { std::free(s); }

const char* hgo_verdict_name(hgo_verdict v) {
    switch (v) {
        case HGO_NATURALLY_REDUCTIVE: return "NaturallyReductive";
        case HGO_GO_WITNESSED: return "GOWitnessed";
        case HGO_NOT_GO: return "NotGO";
        case HGO_UNDECIDED: return "Undecided";
    }
    return "?";
}

void hgo_classify_options_init(hgo_classify_options* opts) {
    if (!opts) return;
    const hgo::ClassifyOptions d;
    opts->multiplicity = d.multiplicity;
    opts->height = d.height;
    opts->probes = d.probes;
    opts->seed = d.seed;
}

hgo_status hgo_algebra_create(int r, int s, size_t multiplicity, hgo_algebra** out) {
    return guarded([&] {
        if (!out) return set_error(HGO_E_INVALID, "null output pointer");
        if (multiplicity < 1) return set_error(HGO_E_INVALID, "multiplicity must be at least 1");
        *out = new hgo_algebra{hgo::assemble(checked_signature(r, s), multiplicity)};
        return HGO_OK;
    });
}

void hgo_algebra_free(hgo_algebra* alg) { delete alg; }

hgo_status hgo_algebra_dims(const hgo_algebra* alg, size_t* z_dim, size_t* v_dim) {
    if (!alg || !z_dim || !v_dim) return set_error(HGO_E_INVALID, "null pointer");
    *z_dim = alg->alg.z_dim;
    *v_dim = alg->alg.v_dim();
    return HGO_OK;
}

hgo_status hgo_algebra_bracket_table(const hgo_algebra* alg, char** out) {
    return guarded([&] {
        if (!alg || !out) return set_error(HGO_E_INVALID, "null pointer");
        *out = dup_string(hgo::bracket_table(alg->alg));
        return HGO_OK;
    });
}

hgo_status hgo_classify(int r, int s, const hgo_classify_options* opts, hgo_certificate** out) {
    return guarded([&] {
        if (!out) return set_error(HGO_E_INVALID, "null output pointer");
        hgo::ClassifyOptions o;
        if (opts) {
            if (opts->multiplicity < 1 || opts->height < 0) return set_error(HGO_E_INVALID, "bad classify options");
            o.multiplicity = opts->multiplicity;
            o.height = opts->height;
            o.probes = opts->probes;
            o.seed = opts->seed;
        }
        *out = new hgo_certificate{hgo::classify(checked_signature(r, s), o)};
        return HGO_OK;
    });
}

hgo_status hgo_certificate_parse(const char* json, hgo_certificate** out) {
    return guarded([&] {
        if (!json || !out) return set_error(HGO_E_INVALID, "null pointer");
        try {
            *out = new hgo_certificate{hgo::certificate_from_json(json)};
        } catch (const std::invalid_argument& e) {
            return set_error(HGO_E_PARSE, e.what());
        }
        return HGO_OK;
    });
}

void hgo_certificate_free(hgo_certificate* cert) { delete cert; }

hgo_status hgo_certificate_verdict(const hgo_certificate* cert, hgo_verdict* out) {
    if (!cert || !out) return set_error(HGO_E_INVALID, "null pointer");
    *out = static_cast<hgo_verdict>(cert->cert.verdict);
    return HGO_OK;
}

hgo_status hgo_certificate_json(const hgo_certificate* cert, char** out) {
    return guarded([&] {
        if (!cert || !out) return set_error(HGO_E_INVALID, "null pointer");
        *out = dup_string(hgo::to_json(cert->cert));
        return HGO_OK;
    });
}

hgo_status hgo_certificate_text(const hgo_certificate* cert, char** out) {
    return guarded([&] {
        if (!cert || !out) return set_error(HGO_E_INVALID, "null pointer");
        *out = dup_string(certificate_text(cert->cert));
        return HGO_OK;
    });
}

hgo_status hgo_certificate_replay(const hgo_certificate* cert) {
    return guarded([&] {
        if (!cert) return set_error(HGO_E_INVALID, "null pointer");
        const hgo::CheckReport rep = hgo::replay(cert->cert);
        return rep.ok ? HGO_OK : set_error(HGO_E_FAILED, rep.failure);
    });
}

hgo_status hgo_table(const char* what, int max_r, int max_s, char** out) {
    return guarded([&] {
        if (!what || !out) return set_error(HGO_E_INVALID, "null pointer");
        if (max_r < 0 || max_s < 0 || max_r > 16 || max_s > 16) return set_error(HGO_E_INVALID, "table range must be within 0..16");
        const std::string w = what;
        std::function<std::string(int, int)> cell;
        if (w == "ell") {
            cell = [](int r, int s) { return std::to_string(hgo::ell({r, s})); };
        } else if (w == "dim") {
            cell = [](int r, int s) {
                const hgo::Signature sig{r, s};
                return std::to_string(std::size_t{1} << (sig.n() - static_cast<int>(hgo::ell(sig))));
            };
        } else if (w == "omega") {
            cell = [](int r, int s) { return std::string(hgo::omega_square_formula({r, s}) > 0 ? "+1" : "-1"); };
        } else {
            return set_error(HGO_E_INVALID, "unknown table '" + w + "' (ell, dim, omega)");
        }
        *out = dup_string(grid(max_r, max_s, cell));
        return HGO_OK;
    });
}

hgo_status hgo_certify_n34(uint64_t seed, size_t probes, const char* minors_text, char** out_json) {
    return guarded([&] {
        if (!out_json) return set_error(HGO_E_INVALID, "null output pointer");
        const hgo::N34Bundle b = hgo::certify_n34(seed, probes, minors_text ? minors_text : "");
        *out_json = dup_string(hgo::to_json(b));
        return b.ok ? HGO_OK : set_error(HGO_E_FAILED, b.failure);
    });
}

hgo_status hgo_geodesic_csv(const hgo_algebra* alg, const char* zdot, const char* xdot, double t_end, int samples, int steps,
                            char** out_csv) {
    return guarded([&] {
        if (!alg || !out_csv) return set_error(HGO_E_INVALID, "null pointer");
        if (samples < 1 || steps < 1) return set_error(HGO_E_INVALID, "samples and steps must be positive");
        Eigen::VectorXd z, x;
        try {
            z = parse_velocity(zdot, alg->alg.z_dim, "zdot");
            x = parse_velocity(xdot, alg->alg.v_dim(), "xdot");
        } catch (const std::runtime_error& e) {
            return set_error(HGO_E_PARSE, e.what());
        }
        std::ostringstream os;
        hgo::write_trace_csv(os, alg->alg, z, x, t_end, samples, steps);
        *out_csv = dup_string(os.str());
        return HGO_OK;
    });
}

}  // extern "C"
