// hgo command-line front end; talks to the library only through hgo.h.
#include "hgo.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

enum Exit { kDefinitive = 0, kInternal = 1, kUndecided = 2, kUsage = 64 };

int exit_for(hgo_status st) {
    switch (st) {
        case HGO_OK: return kDefinitive;
        case HGO_E_INVALID:
        case HGO_E_PARSE: return kUsage;
        default: return kInternal;
    }
}

int report(hgo_status st, const char* what) {
    std::cerr << "hgo " << what << ": " << hgo_last_error() << '\n';
    return exit_for(st);
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "hgo: cannot write " << path << '\n';
        return false;
    }
    return true;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    out = ss.str();
    return true;
}

// C-string ownership for the duration of one command
struct Owned {
    char* p = nullptr;
    ~Owned() { hgo_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct Config {
    int r = -1, s = -1;
    std::size_t mult = 1;
    int height = 5;
    std::size_t probes = 10000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
};

int cmd_classify(const Config& cfg) {
    hgo_classify_options opts;
    hgo_classify_options_init(&opts);
    opts.multiplicity = cfg.mult;
    opts.height = cfg.height;
    opts.probes = cfg.probes;
    opts.seed = cfg.seed;
    hgo_certificate* cert = nullptr;
    if (hgo_status st = hgo_classify(cfg.r, cfg.s, &opts, &cert); st != HGO_OK) return report(st, "classify");
    Owned text;
    const hgo_status st = cfg.format == "text" ? hgo_certificate_text(cert, &text.p) : hgo_certificate_json(cert, &text.p);
    hgo_verdict v = HGO_UNDECIDED;
    hgo_certificate_verdict(cert, &v);
    hgo_certificate_free(cert);
    if (st != HGO_OK) return report(st, "classify");
    if (!write_output(cfg.out, text.str())) return kInternal;
    if (!cfg.out.empty() && cfg.out != "-") std::cerr << hgo_verdict_name(v) << '\n';
    return v == HGO_UNDECIDED ? kUndecided : kDefinitive;
}

int cmd_table(const std::string& what, const Config& cfg, int max_r, int max_s) {
    Owned text;
    if (what == "bracket") {
        hgo_algebra* alg = nullptr;
        if (hgo_status st = hgo_algebra_create(cfg.r < 0 ? 3 : cfg.r, cfg.s < 0 ? 4 : cfg.s, cfg.mult, &alg); st != HGO_OK)
            return report(st, "table");
        const hgo_status st = hgo_algebra_bracket_table(alg, &text.p);
        hgo_algebra_free(alg);
        if (st != HGO_OK) return report(st, "table");
    } else if (hgo_status st = hgo_table(what.c_str(), max_r, max_s, &text.p); st != HGO_OK) {
        return report(st, "table");
    }
    return write_output(cfg.out, text.str()) ? kDefinitive : kInternal;
}

int cmd_certify(const Config& cfg, const std::string& minors_path) {
    std::string minors;
    if (!minors_path.empty() && !read_file(minors_path, minors)) {
        std::cerr << "hgo certify-n34: cannot read " << minors_path << '\n';
        return kUsage;
    }
    Owned json;
    const hgo_status st = hgo_certify_n34(cfg.seed, cfg.probes, minors.c_str(), &json.p);
    if (json.p && !write_output(cfg.out, json.str())) return kInternal;
    if (st != HGO_OK) {
        report(st, "certify-n34");
        return kInternal;
    }
    return kDefinitive;
}

int cmd_geodesic(const Config& cfg, const std::string& zdot, const std::string& xdot, double t_end, int samples, int steps) {
    hgo_algebra* alg = nullptr;
    if (hgo_status st = hgo_algebra_create(cfg.r, cfg.s, cfg.mult, &alg); st != HGO_OK) return report(st, "geodesic");
    Owned csv;
    const hgo_status st = hgo_geodesic_csv(alg, zdot.c_str(), xdot.c_str(), t_end, samples, steps, &csv.p);
    hgo_algebra_free(alg);
    if (st != HGO_OK) return report(st, "geodesic");
    return write_output(cfg.out, csv.str()) ? kDefinitive : kInternal;
}

int cmd_verify(const std::string& path) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "hgo verify: cannot read " << path << '\n';
        return kUsage;
    }
    hgo_certificate* cert = nullptr;
    if (hgo_status st = hgo_certificate_parse(text.c_str(), &cert); st != HGO_OK) return report(st, "verify");
    hgo_verdict v = HGO_UNDECIDED;
    hgo_certificate_verdict(cert, &v);
    const hgo_status st = hgo_certificate_replay(cert);
    hgo_certificate_free(cert);
    if (st != HGO_OK) {
        std::cout << "FAIL " << hgo_verdict_name(v) << ": " << hgo_last_error() << '\n';
        return kInternal;
    }
    std::cout << "OK " << hgo_verdict_name(v) << '\n';
    return v == HGO_UNDECIDED ? kUndecided : kDefinitive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesic orbit property of pseudo H-type nilmanifolds"};
    app.require_subcommand(1);
    Config cfg;

    auto add_sig = [&](CLI::App* sub, bool required) {
        auto* r = sub->add_option("--r", cfg.r, "positive part of the center signature")->check(CLI::Range(0, 16));
        auto* s = sub->add_option("--s", cfg.s, "negative part of the center signature")->check(CLI::Range(0, 16));
        if (required) {
            r->required();
            s->required();
        }
        sub->add_option("--mult", cfg.mult, "module multiplicity")->check(CLI::PositiveNumber);
    };

    auto* classify = app.add_subcommand("classify", "decide the GO property and write a certificate");
    add_sig(classify, true);
    classify->add_option("--height", cfg.height, "counterexample search bound")->check(CLI::Range(0, 20));
    classify->add_option("--probes", cfg.probes, "random probes per center class for (3,4)");
    classify->add_option("--seed", cfg.seed, "random seed");
    classify->add_option("--out", cfg.out, "output file (default stdout)");
    classify->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* table = app.add_subcommand("table", "ell, dim, omega or bracket tables");
    std::string what;
    int max_r = 8, max_s = 8;
    table->add_option("what", what, "ell | dim | omega | bracket")->required()->check(CLI::IsMember({"ell", "dim", "omega", "bracket"}));
    add_sig(table, false);
    table->add_option("--max-r", max_r, "grid bound in r")->check(CLI::Range(0, 16));
    table->add_option("--max-s", max_s, "grid bound in s")->check(CLI::Range(0, 16));
    table->add_option("--out", cfg.out, "output file (default stdout)");

    auto* certify = app.add_subcommand("certify-n34", "identity suite, strong condition and geodesic checks for (3,4)");
    std::string minors_path;
#ifdef HGO_FIXTURE_DIR
    minors_path = HGO_FIXTURE_DIR "/n34_minors.txt";
#endif
    certify->add_option("--seed", cfg.seed, "random seed");
    certify->add_option("--probes", cfg.probes, "random probes per center class");
    certify->add_option("--minors", minors_path, "minor identity fixture");
    certify->add_option("--out", cfg.out, "output file (default stdout)");

    auto* geodesic = app.add_subcommand("geodesic", "CSV trace of the geodesic with a given initial velocity");
    std::string zdot, xdot;
    double t_end = 1.0;
    int samples = 100, steps = 1000;
    add_sig(geodesic, true);
    geodesic->add_option("--zdot", zdot, "center velocity, comma separated")->required();
    geodesic->add_option("--xdot", xdot, "module velocity, comma separated")->required();
    geodesic->add_option("--t", t_end, "end time");
    geodesic->add_option("--samples", samples, "rows after t = 0")->check(CLI::PositiveNumber);
    geodesic->add_option("--steps", steps, "quadrature panels on [0, t]")->check(CLI::PositiveNumber);
    geodesic->add_option("--out", cfg.out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "replay the evidence of a certificate");
    std::string cert_path;
    verify->add_option("certificate", cert_path, "certificate JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*classify) return cmd_classify(cfg);
        if (*table) return cmd_table(what, cfg, max_r, max_s);
        if (*certify) return cmd_certify(cfg, minors_path);
        if (*geodesic) return cmd_geodesic(cfg, zdot, xdot, t_end, samples, steps);
        if (*verify) return cmd_verify(cert_path);
    } catch (const std::exception& e) {
        std::cerr << "hgo: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
