#include "hgo/certificate.hpp"

#include <json.hpp>

namespace hgo {

using nlohmann::json;

namespace {

json vec_json(const RatVec& v) {
    json a = json::array();
    for (auto& q : v) a.push_back(rat_str(q));
    return a;
}

RatVec vec_from(const json& a) {
    RatVec v;
    for (auto& e : a) v.push_back(parse_rational(e.get<std::string>()));
    return v;
}

json mat_json(const RatMatrix& M) {
    json a = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) a.push_back(vec_json(M.row(i)));
    return a;
}

RatMatrix mat_from(const json& a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    RatMatrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw std::invalid_argument("certificate: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = parse_rational(a[i][j].get<std::string>());
    }
    return M;
}

json sig_json(const Signature& s) { return {{"r", s.r}, {"s", s.s}}; }
Signature sig_from(const json& j) { return {j.at("r").get<int>(), j.at("s").get<int>()}; }

json words_json(const std::vector<Word>& ws) {
    json a = json::array();
    for (Word w : ws) a.push_back(word_str(w));
    return a;
}

std::vector<Word> words_from(const json& a) {
    std::vector<Word> ws;
    for (auto& e : a) ws.push_back(parse_word(e.get<std::string>()));
    return ws;
}

json rank_json(const RankCertificate& c) {
    return {{"z_class", c.z_class}, {"Z", vec_json(c.Z)}, {"X", vec_json(c.X)}, {"rank_A", c.rank_A}, {"rank_Ab", c.rank_Ab}};
}

RankCertificate rank_from(const json& j) {
    return {j.at("z_class").get<std::string>(), vec_from(j.at("Z")), vec_from(j.at("X")), j.at("rank_A").get<std::size_t>(),
            j.at("rank_Ab").get<std::size_t>()};
}

json obstruction_json(const ObstructionEvidence& ev) {
    return {{"tag", ev.tag},
            {"signature", sig_json(ev.sig)},
            {"word", word_str(ev.word)},
            {"word_square", ev.word_square},
            {"probe", rank_json(ev.probe)}};
}

ObstructionEvidence obstruction_from(const json& j) {
    ObstructionEvidence ev;
    ev.applicable = true;
    ev.confirmed = true;
    ev.tag = j.at("tag").get<std::string>();
    ev.sig = sig_from(j.at("signature"));
    ev.word = parse_word(j.at("word").get<std::string>());
    ev.word_square = j.at("word_square").get<int>();
    ev.probe = rank_from(j.at("probe"));
    return ev;
}

json chain_json(const ReductionChain& ch) {
    json links = json::array();
    for (auto& l : ch.links)
        links.push_back({{"ambient", sig_json(l.ambient)},
                         {"involutions", words_json(l.pi)},
                         {"z1", l.z1},
                         {"v1", l.v1},
                         {"sub", sig_json(l.sub)}});
    json j = {{"links", links}, {"terminal", sig_json(ch.terminal)}, {"terminal_kind", ch.terminal_kind}};
    if (ch.terminal_probe) j["terminal_probe"] = rank_json(*ch.terminal_probe);
    if (ch.terminal_obstruction) j["terminal_obstruction"] = obstruction_json(*ch.terminal_obstruction);
    return j;
}

ReductionChain chain_from(const json& j) {
    ReductionChain ch;
    for (auto& l : j.at("links"))
        ch.links.push_back({sig_from(l.at("ambient")), words_from(l.at("involutions")), l.at("z1").get<std::vector<int>>(),
                            l.at("v1").get<std::vector<int>>(), sig_from(l.at("sub"))});
    ch.terminal = sig_from(j.at("terminal"));
    ch.terminal_kind = j.at("terminal_kind").get<std::string>();
    if (j.contains("terminal_probe")) ch.terminal_probe = rank_from(j["terminal_probe"]);
    if (j.contains("terminal_obstruction")) ch.terminal_obstruction = obstruction_from(j["terminal_obstruction"]);
    return ch;
}

json strong_json(const StrongConditionReport& sc) {
    json fams = json::array(), classes = json::array(), wit = json::array();
    for (auto& f : sc.families) {
        json e = {{"name", f.name},          {"z_class", f.z_class}, {"expect_pass", f.expect_pass},
                  {"symbolic_pass", f.symbolic_pass}, {"points", f.points},   {"points_ok", f.points_ok}};
        if (!f.residual.empty()) e["residual"] = f.residual;
        fams.push_back(e);
    }
    for (auto& c : sc.classes)
        classes.push_back({{"z_class", c.z_class},
                           {"Z", vec_json(c.Z)},
                           {"stabilizer_dim", c.stabilizer_dim},
                           {"probes", c.probes},
                           {"consistent", c.consistent}});
    for (auto& w : sc.witnesses)
        wit.push_back({{"z_class", w.z_class}, {"source", w.source}, {"Z", vec_json(w.Z)}, {"X", vec_json(w.X)}, {"B", mat_json(w.B)}});
    json j = {{"ok", sc.ok}, {"seed", sc.seed}, {"families", fams}, {"classes", classes}, {"witnesses", wit}};
    if (!sc.failure.empty()) j["failure"] = sc.failure;
    return j;
}

StrongConditionReport strong_from(const json& j) {
    StrongConditionReport sc;
    sc.ok = j.at("ok").get<bool>();
    sc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("failure")) sc.failure = j["failure"].get<std::string>();
    for (auto& f : j.at("families")) {
        FamilyOutcome o;
        o.name = f.at("name").get<std::string>();
        o.z_class = f.at("z_class").get<std::string>();
        o.expect_pass = f.at("expect_pass").get<bool>();
        o.symbolic_pass = f.at("symbolic_pass").get<bool>();
        o.points = f.at("points").get<std::size_t>();
        o.points_ok = f.at("points_ok").get<std::size_t>();
        if (f.contains("residual")) o.residual = f["residual"].get<std::string>();
        sc.families.push_back(std::move(o));
    }
    for (auto& c : j.at("classes"))
        sc.classes.push_back({c.at("z_class").get<std::string>(), vec_from(c.at("Z")), c.at("stabilizer_dim").get<std::size_t>(),
                              c.at("probes").get<std::size_t>(), c.at("consistent").get<std::size_t>()});
    for (auto& w : j.at("witnesses"))
        sc.witnesses.push_back({w.at("z_class").get<std::string>(), w.at("source").get<std::string>(), vec_from(w.at("Z")),
                                vec_from(w.at("X")), mat_from(w.at("B"))});
    return sc;
}

Verdict verdict_from(const std::string& s) {
    for (Verdict v : {Verdict::NaturallyReductive, Verdict::GOWitnessed, Verdict::NotGO, Verdict::Undecided})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("certificate: unknown verdict " + s);
}

}  // namespace

std::string to_json(const GOCertificate& cert) {
    json ev = {{"kind", cert.evidence_kind}};
    if (!cert.tau.empty()) {
        json t = json::array();
        for (auto& m : cert.tau) t.push_back(mat_json(m));
        ev["tau"] = t;
    }
    if (cert.strong) ev["strong_condition"] = strong_json(*cert.strong);
    if (cert.counterexample) ev["rank_certificate"] = rank_json(*cert.counterexample);
    if (cert.obstruction) ev["obstruction"] = obstruction_json(*cert.obstruction);
    if (cert.chain) ev["chain"] = chain_json(*cert.chain);
    if (!cert.note.empty()) ev["note"] = cert.note;
    json j = {{"schema", 1},
              {"signature", sig_json(cert.sig)},
              {"multiplicity", cert.multiplicity},
              {"verdict", to_string(cert.verdict)},
              {"evidence", ev},
              {"height", cert.height},
              {"seed", cert.seed}};
    return j.dump(2) + "\n";
}

GOCertificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate: ") + e.what());
    }
    try {
        if (j.at("schema").get<int>() != 1) throw std::invalid_argument("certificate: unsupported schema");
        GOCertificate cert;
        cert.sig = sig_from(j.at("signature"));
        cert.multiplicity = j.at("multiplicity").get<std::size_t>();
        cert.verdict = verdict_from(j.at("verdict").get<std::string>());
        cert.height = j.at("height").get<int>();
        cert.seed = j.at("seed").get<std::uint64_t>();
        const json& ev = j.at("evidence");
        cert.evidence_kind = ev.at("kind").get<std::string>();
        if (ev.contains("tau"))
            for (auto& m : ev["tau"]) cert.tau.push_back(mat_from(m));
        if (ev.contains("strong_condition")) cert.strong = strong_from(ev["strong_condition"]);
        if (ev.contains("rank_certificate")) cert.counterexample = rank_from(ev["rank_certificate"]);
        if (ev.contains("obstruction")) cert.obstruction = obstruction_from(ev["obstruction"]);
        if (ev.contains("chain")) cert.chain = chain_from(ev["chain"]);
        if (ev.contains("note")) cert.note = ev["note"].get<std::string>();
        return cert;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("certificate: ") + e.what());
    }
}

}  // namespace hgo
