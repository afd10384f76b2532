#include "hgo/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hgo {

DiagMetric Signature::metric() const {
    DiagMetric m;
    for (int i = 0; i < n(); ++i) m.signs.push_back(eps(i));
    return m;
}

std::string to_string(const Signature& sig) {
    return "(" + std::to_string(sig.r) + "," + std::to_string(sig.s) + ")";
}

SignedWord word_mul(Word a, Word b, const Signature& sig) {
    int sign = 1;
    for (int j = 0; j < sig.n(); ++j) {
        if (!((b >> j) & 1U)) continue;
        // g_j from b passes every generator of a with a larger index
        if (std::popcount(a >> (j + 1)) & 1) sign = -sign;
    }
    const Word common = a & b;
    for (int j = 0; j < sig.n(); ++j)
        if ((common >> j) & 1U) sign *= -sig.eps(j);  // g_j^2 = -eps_j
    return {sign, a ^ b};
}

int word_square(Word p, const Signature& sig) {
    return word_mul(p, p, sig).sign;
}

bool words_commute(Word a, Word b) {
    const int la = std::popcount(a), lb = std::popcount(b), lc = std::popcount(a & b);
    return ((la * lb - lc) % 2) == 0;
}

int word_negatives(Word p, const Signature& sig) {
    const Word neg_mask = ((Word{1} << sig.n()) - 1) & ~((Word{1} << sig.r) - 1);
    return std::popcount(p & neg_mask);
}

bool is_positive_involution(Word p, const Signature& sig) {
    if (p == 0) return false;
    return word_square(p, sig) == 1 && word_negatives(p, sig) % 2 == 0;
}

std::string word_str(Word w) {
    if (w == 0) return "1";
    std::string s;
    for (int i = 0; i < 32; ++i)
        if ((w >> i) & 1U) s += "Z" + std::to_string(i + 1);
    return s;
}

Word parse_word(const std::string& text) {
    if (text == "1") return 0;
    Word w = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'Z') throw std::invalid_argument("parse_word: expected 'Z' in '" + text + "'");
        std::size_t end = pos + 1;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos + 1) throw std::invalid_argument("parse_word: missing index in '" + text + "'");
        const int idx = std::stoi(text.substr(pos + 1, end - pos - 1));
        if (idx < 1 || idx > 32) throw std::invalid_argument("parse_word: index out of range");
        const Word bit = Word{1} << (idx - 1);
        if (w & bit) throw std::invalid_argument("parse_word: repeated index in '" + text + "'");
        w |= bit;
        pos = end;
    }
    return w;
}

std::vector<int> word_indices(Word w) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if ((w >> i) & 1U) out.push_back(i);
    return out;
}

Word make_word(const std::vector<int>& one_based) {
    Word w = 0;
    for (int i : one_based) w |= Word{1} << (i - 1);
    return w;
}

bool degree_lex_less(Word a, Word b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return word_indices(a) < word_indices(b);
}

namespace {

// GF(2) span of words, kept in reduced echelon form by leading bit.
struct Gf2Basis {
    std::vector<Word> rows;

    Word reduce(Word w) const {
        for (Word r : rows) {
            const Word lead = std::bit_floor(r);
            if (w & lead) w ^= r;
        }
        return w;
    }
    bool add(Word w) {
        w = reduce(w);
        if (!w) return false;
        rows.push_back(w);
        std::sort(rows.begin(), rows.end(), std::greater<>());
        return true;
    }
    std::size_t size() const { return rows.size(); }
};

std::size_t gf2_rank(const std::vector<Word>& ws, const Gf2Basis& base) {
    Gf2Basis b = base;
    std::size_t before = b.size();
    for (Word w : ws) b.add(w);
    return b.size() - before;
}

std::vector<Word> allowed_words(const Signature& sig) {
    std::vector<Word> out;
    const Word total = Word{1} << sig.n();
    for (Word w = 1; w < total; ++w)
        if (is_positive_involution(w, sig)) out.push_back(w);
    std::sort(out.begin(), out.end(), degree_lex_less);
    return out;
}

struct EllSearch {
    std::size_t best = 0;
    std::vector<Word> best_set;
    std::size_t target = 0;  // stop as soon as a set of this size is found

    void run(const std::vector<Word>& cands, std::vector<Word>& chosen, Gf2Basis& span) {
        if (chosen.size() > best) {
            best = chosen.size();
            best_set = chosen;
        }
        if (target && best >= target) return;
        // Upper bound: what the remaining candidates can add to the span.
        if (chosen.size() + gf2_rank(cands, span) <= best) return;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const Word w = cands[k];
            if (!span.reduce(w)) continue;
            std::vector<Word> next;
            for (std::size_t m = k + 1; m < cands.size(); ++m)
                if (words_commute(w, cands[m])) next.push_back(cands[m]);
            Gf2Basis span2 = span;
            span2.add(w);
            chosen.push_back(w);
            run(next, chosen, span2);
            chosen.pop_back();
            if (target && best >= target) return;
            if (chosen.size() + 1 + gf2_rank(std::vector<Word>(cands.begin() + static_cast<long>(k) + 1, cands.end()), span) <= best)
                return;
        }
    }
};

// One canonical first word per (length, negatives) class; the index
// permutations within positives and within negatives are symmetries.
std::vector<Word> canonical_first_words(const std::vector<Word>& allowed, const Signature& sig) {
    std::map<std::pair<int, int>, Word> firsts;
    for (Word w : allowed) {
        const auto key = std::make_pair(std::popcount(w), word_negatives(w, sig));
        const int pos = key.first - key.second;
        const int neg = key.second;
        const Word canon = ((Word{1} << pos) - 1) | (((Word{1} << neg) - 1) << sig.r);
        if (w == canon) firsts.emplace(key, w);
    }
    std::vector<Word> out;
    for (auto& [k, w] : firsts) out.push_back(w);
    return out;
}

std::map<std::pair<int, int>, std::size_t>& ell_cache() {
    static std::map<std::pair<int, int>, std::size_t> cache;
    return cache;
}

}  // namespace

namespace {

// Beyond this center dimension the direct search is too slow; larger
// signatures are reduced by a period, l(r+mu,s+nu) = l(r,s) + 4.
constexpr int kDirectSearchLimit = 10;

std::pair<Signature, Signature> split_period(const Signature& sig) {
    if (sig.r >= 4 && sig.s >= 4) return {{sig.r - 4, sig.s - 4}, {4, 4}};
    if (sig.r >= 8) return {{sig.r - 8, sig.s}, {8, 0}};
    return {{sig.r, sig.s - 8}, {0, 8}};
}

}  // namespace

std::size_t ell(const Signature& sig) {
    if (!sig.valid()) throw std::invalid_argument("ell: need r+s >= 1");
    if (sig.n() > kDirectSearchLimit) return ell(split_period(sig).first) + 4;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = ell_cache().find({sig.r, sig.s});
        if (it != ell_cache().end()) return it->second;
    }
    const auto allowed = allowed_words(sig);
    EllSearch search;
    for (Word first : canonical_first_words(allowed, sig)) {
        std::vector<Word> next;
        for (Word w : allowed)
            if (w != first && words_commute(first, w)) next.push_back(w);
        std::vector<Word> chosen{first};
        Gf2Basis span;
        span.add(first);
        search.run(next, chosen, span);
    }
    std::lock_guard<std::mutex> lock(mu);
    ell_cache()[{sig.r, sig.s}] = search.best;
    return search.best;
}

namespace {

std::vector<Word> words_from(const std::vector<std::vector<int>>& lists) {
    std::vector<Word> out;
    for (auto& l : lists) out.push_back(make_word(l));
    return out;
}

// Generating sets written out for the cases worked by hand.
bool preferred_involutions(const Signature& sig, InvolutionSet& out) {
    const int r = sig.r, s = sig.s;
    if ((r == 8 && s == 0) || (r == 0 && s == 8) || (r == 4 && s == 4)) {
        out.generators = words_from({{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {1, 3, 5, 7}});
        return true;
    }
    if (r == 3 && s == 4) {
        out.generators = words_from({{1, 2, 4, 5}, {1, 2, 6, 7}, {1, 3, 5, 7}, {1, 2, 3}});
        return true;
    }
    if (r == 2 && s == 3) {
        out.generators = words_from({{1, 4, 5}, {1, 2, 3, 4}});
        return true;
    }
    if (r == 2 && s == 4) {
        out.generators = words_from({{1, 4, 5}, {1, 2, 3, 4}, {1, 2, 5, 6}});
        return true;
    }
    if (r == 3 && s == 3) {
        // Z1Z2Z3Z4 has one negative index here; Z1Z2Z3 takes its place
        out.generators = words_from({{1, 4, 5}, {1, 2, 3}, {1, 2, 5, 6}});
        return true;
    }
    if ((r == 1 && s == 4) || (r == 3 && s == 2)) {
        out.generators = words_from({{1, 2, 3}, {2, 3, 4, 5}});
        return true;
    }
    if ((r == 1 && s == 6) || (r == 5 && s == 2)) {
        out.generators = words_from({{1, 2, 3}, {2, 3, 4, 5}, {2, 3, 6, 7}});
        return true;
    }
    return false;
}

}  // namespace

bool is_valid_involution_set(const InvolutionSet& pi, const Signature& sig, std::string* why) {
    auto bad = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    Gf2Basis span;
    for (std::size_t a = 0; a < pi.generators.size(); ++a) {
        const Word p = pi.generators[a];
        if (p >> sig.n()) return bad(word_str(p) + " uses an index outside the center");
        if (!is_positive_involution(p, sig)) return bad(word_str(p) + " is not a positive involution");
        if (!span.add(p)) return bad(word_str(p) + " is dependent on earlier generators");
        for (std::size_t b = 0; b < a; ++b)
            if (!words_commute(p, pi.generators[b]))
                return bad(word_str(p) + " does not commute with " + word_str(pi.generators[b]));
    }
    return true;
}

InvolutionSet enumerate_positive_involutions(const Signature& sig) {
    InvolutionSet out;
    const std::size_t l = ell(sig);
    if (preferred_involutions(sig, out)) {
        std::string why;
        if (!is_valid_involution_set(out, sig, &why) || out.ell() != l)
            throw std::logic_error("preferred involution set invalid for " + to_string(sig) + ": " + why);
        return out;
    }
    if (l == 0) return out;
    // First maximal set in degree-lex DFS order; short (type T1/T2) words come
    // first, so they are used whenever they suffice.
    const auto allowed = allowed_words(sig);
    EllSearch search;
    search.target = l;
    std::vector<Word> chosen;
    Gf2Basis span;
    search.run(allowed, chosen, span);
    if (search.best != l) throw std::logic_error("enumerate_positive_involutions: search did not reach ell");
    out.generators = search.best_set;
    return out;
}

RatMatrix CliffordModule::J(const RatVec& z) const {
    if (z.size() != generators.size()) throw DimensionError("J: center vector has wrong length");
    RatMatrix m(module_dim, module_dim);
    for (std::size_t k = 0; k < z.size(); ++k)
        if (sgn(z[k]) != 0) m += generators[k] * z[k];
    return m;
}

CliffordModule module_from_involutions(const Signature& sig, const InvolutionSet& pi) {
    std::string why;
    if (!is_valid_involution_set(pi, sig, &why)) throw std::invalid_argument("module_from_involutions: " + why);
    const int n = sig.n();
    // group of products of the involutions, word -> sign of the product
    std::map<Word, int> grp{{0, 1}};
    for (Word p : pi.generators) {
        auto next = grp;
        for (auto& [w, sg] : grp) {
            const auto prod = word_mul(w, p, sig);
            next[prod.word] = sg * prod.sign;
        }
        grp = std::move(next);
    }
    std::vector<Word> all(std::size_t{1} << n);
    for (std::size_t w = 0; w < all.size(); ++w) all[w] = static_cast<Word>(w);
    std::sort(all.begin(), all.end(), degree_lex_less);
    std::map<Word, std::size_t> coset_index;  // any word -> basis index
    std::vector<Word> reps;
    for (Word w : all) {
        if (coset_index.count(w)) continue;
        for (auto& [t, sg] : grp) coset_index[w ^ t] = reps.size();
        reps.push_back(w);
    }
    const std::size_t dim = reps.size();
    CliffordModule mod;
    mod.sig = sig;
    mod.module_dim = dim;
    mod.sigma = reps;
    mod.pi = pi;
    mod.origin = "involutions";
    for (Word rep : reps) {
        int e = 1;
        for (int i : word_indices(rep)) e *= sig.eps(i);
        mod.eta_v.signs.push_back(e);
    }
    for (int i = 0; i < n; ++i) {
        RatMatrix M(dim, dim);
        for (std::size_t c = 0; c < dim; ++c) {
            const auto gi = word_mul(Word{1} << i, reps[c], sig);
            const std::size_t k = coset_index.at(gi.word);
            const Word t = gi.word ^ reps[k];
            const auto back = word_mul(reps[k], t, sig);
            M(k, c) = gi.sign * back.sign * grp.at(t);
        }
        mod.generators.push_back(std::move(M));
    }
    return mod;
}

CliffordModule module_from_brackets(const Signature& sig, const DiagMetric& eta, const std::vector<BracketEntry>& table) {
    const std::size_t dim = eta.dim();
    CliffordModule mod;
    mod.sig = sig;
    mod.module_dim = dim;
    mod.eta_v = eta;
    mod.origin = "brackets";
    mod.generators.assign(sig.n(), RatMatrix(dim, dim));
    for (const auto& e : table) {
        // <J_k X_i, X_j> = eps_k a_k(i,j) and <J_k X_j, X_i> = -eps_k a_k(i,j)
        const int ek = sig.eps(e.k);
        mod.generators[e.k](e.j, e.i) = eta.signs[e.j] * ek * e.coeff;
        mod.generators[e.k](e.i, e.j) = -eta.signs[e.i] * ek * e.coeff;
    }
    return mod;
}

CliffordModule repeat_module(const CliffordModule& mod, std::size_t multiplicity) {
    if (multiplicity <= 1) return mod;
    const std::size_t d = mod.module_dim, D = d * multiplicity;
    // block-diagonal copies, then reorder so positive basis vectors come first
    std::vector<std::size_t> order;
    for (int want : {1, -1})
        for (std::size_t b = 0; b < multiplicity; ++b)
            for (std::size_t i = 0; i < d; ++i)
                if (mod.eta_v.signs[i] == want) order.push_back(b * d + i);
    std::vector<std::size_t> pos(D);
    for (std::size_t k = 0; k < D; ++k) pos[order[k]] = k;
    CliffordModule out = mod;
    out.module_dim = D;
    out.multiplicity = mod.multiplicity * multiplicity;
    out.sigma.clear();
    out.eta_v.signs.assign(D, 0);
    for (std::size_t k = 0; k < D; ++k) out.eta_v.signs[k] = mod.eta_v.signs[order[k] % d];
    for (std::size_t g = 0; g < mod.generators.size(); ++g) {
        RatMatrix M(D, D);
        for (std::size_t b = 0; b < multiplicity; ++b)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    if (sgn(mod.generators[g](i, j)) != 0) M(pos[b * d + i], pos[b * d + j]) = mod.generators[g](i, j);
        out.generators[g] = std::move(M);
    }
    return out;
}

namespace {

RatMatrix matrix_from(const std::vector<std::vector<long>>& rows) {
    return RatMatrix::from_rows(rows);
}

CliffordModule printed_module(const Signature& sig, const std::vector<int>& eta, const std::vector<RatMatrix>& gens) {
    CliffordModule mod;
    mod.sig = sig;
    mod.module_dim = eta.size();
    mod.eta_v.signs = eta;
    mod.generators = gens;
    mod.origin = "printed";
    return mod;
}

}  // namespace

bool has_seeded_module(const Signature& sig) {
    const std::pair<int, int> k{sig.r, sig.s};
    return k == std::pair{0, 1} || k == std::pair{1, 1} || k == std::pair{0, 2} || k == std::pair{1, 2} ||
           k == std::pair{2, 1} || k == std::pair{0, 3};
}

CliffordModule seeded_module(const Signature& sig) {
    const DiagMetric eta22{{1, 1, -1, -1}};
    if (sig == Signature{0, 1})
        return printed_module(sig, {1, -1}, {matrix_from({{0, 1}, {1, 0}})});
    if (sig == Signature{1, 1})
        return module_from_brackets(sig, eta22, {{0, 1, 0, 1}, {2, 3, 0, 1}, {0, 2, 1, -1}, {1, 3, 1, -1}});
    if (sig == Signature{0, 2})
        return module_from_brackets(sig, eta22, {{0, 2, 0, -1}, {1, 3, 0, -1}, {0, 3, 1, -1}, {1, 2, 1, 1}});
    if (sig == Signature{1, 2})
        return module_from_brackets(
            sig, eta22, {{0, 1, 0, 1}, {2, 3, 0, -1}, {0, 2, 1, 1}, {1, 3, 1, -1}, {0, 3, 2, 1}, {1, 2, 2, 1}});
    if (sig == Signature{2, 1}) {
        const std::vector<int> eta{1, 1, 1, 1, -1, -1, -1, -1};
        return printed_module(sig, eta,
                              {matrix_from({{0, -1, 0, 0, 0, 0, 0, 0},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 0, -1, 0, 0, 0, 0},
                                            {0, 0, 1, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 0, 0, -1, 0, 0},
                                            {0, 0, 0, 0, 1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 0, -1},
                                            {0, 0, 0, 0, 0, 0, 1, 0}}),
                               matrix_from({{0, 0, -1, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 1, 0, 0, 0, 0},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, -1, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, -1, 0},
                                            {0, 0, 0, 0, 0, 0, 0, 1},
                                            {0, 0, 0, 0, 1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, -1, 0, 0}}),
                               matrix_from({{0, 0, 0, 0, 1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, -1, 0, 0},
                                            {0, 0, 0, 0, 0, 0, -1, 0},
                                            {0, 0, 0, 0, 0, 0, 0, 1},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, -1, 0, 0, 0, 0, 0, 0},
                                            {0, 0, -1, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 1, 0, 0, 0, 0}})});
    }
    if (sig == Signature{0, 3}) {
        const std::vector<int> eta{1, 1, 1, 1, -1, -1, -1, -1};
        return printed_module(sig, eta,
                              {matrix_from({{0, 0, 0, 0, 1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 1, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 1, 0},
                                            {0, 0, 0, 0, 0, 0, 0, 1},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, 1, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 1, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 1, 0, 0, 0, 0}}),
                               matrix_from({{0, 0, 0, 0, 0, 1, 0, 0},
                                            {0, 0, 0, 0, -1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, 0, 0, -1},
                                            {0, 0, 0, 0, 0, 0, 1, 0},
                                            {0, -1, 0, 0, 0, 0, 0, 0},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, 0, 0, 1, 0, 0, 0, 0},
                                            {0, 0, -1, 0, 0, 0, 0, 0}}),
                               matrix_from({{0, 0, 0, 0, 0, 0, 1, 0},
                                            {0, 0, 0, 0, 0, 0, 0, 1},
                                            {0, 0, 0, 0, -1, 0, 0, 0},
                                            {0, 0, 0, 0, 0, -1, 0, 0},
                                            {0, 0, -1, 0, 0, 0, 0, 0},
                                            {0, 0, 0, -1, 0, 0, 0, 0},
                                            {1, 0, 0, 0, 0, 0, 0, 0},
                                            {0, 1, 0, 0, 0, 0, 0, 0}})});
    }
    throw std::invalid_argument("seeded_module: no seeded module for " + to_string(sig));
}

CliffordModule build_minimal_module(const Signature& sig, std::size_t multiplicity) {
    if (!sig.valid()) throw std::invalid_argument("build_minimal_module: need r+s >= 1");
    if (multiplicity == 0) throw std::invalid_argument("build_minimal_module: multiplicity must be positive");
    if (sig.n() > kDirectSearchLimit) {
        auto [rest, period] = split_period(sig);
        return repeat_module(tensor_periodicity(build_minimal_module(rest), build_minimal_module(period)), multiplicity);
    }
    CliffordModule base = has_seeded_module(sig) ? seeded_module(sig)
                                                 : module_from_involutions(sig, enumerate_positive_involutions(sig));
    return repeat_module(base, multiplicity);
}

InvariantBasis invariant_basis(const CliffordModule& mod, const InvolutionSet& pi) {
    if (mod.multiplicity != 1) throw std::invalid_argument("invariant_basis: module is not minimal");
    const std::size_t d = mod.module_dim;
    const Signature& sig = mod.sig;
    auto word_matrix = [&](Word w) {
        RatMatrix M = RatMatrix::identity(d);
        for (int i : word_indices(w)) M = M * mod.generators[i];
        return M;
    };
    // common +1 eigenspace of all J_p
    std::vector<RatMatrix> blocks;
    for (Word p : pi.generators) blocks.push_back(word_matrix(p) - RatMatrix::identity(d));
    std::vector<RatVec> eig;
    if (blocks.empty()) {
        for (std::size_t i = 0; i < d; ++i) eig.push_back(unit_vector(d, i));
    } else {
        eig = kernel_basis(vstack(blocks));
    }
    InvariantBasis out;
    // prefer a standard basis vector; otherwise the first kernel vector whose
    // norm is a positive rational square
    for (std::size_t i = 0; i < d && out.v.empty(); ++i) {
        if (mod.eta_v.signs[i] < 0) continue;
        const RatVec e = unit_vector(d, i);
        bool fixed = true;
        for (auto& B : blocks)
            if (!vec_is_zero(B * e)) fixed = false;
        if (fixed) out.v = e;
    }
    for (std::size_t k = 0; k < eig.size() && out.v.empty(); ++k) {
        const Rational q = mod.eta_v.inner(eig[k], eig[k]);
        if (sgn(q) <= 0) continue;
        mpz_class num = q.get_num(), den = q.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) continue;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        out.v = vec_scale(eig[k], Rational(sd, sn));
    }
    if (out.v.empty()) throw std::logic_error("invariant_basis: no rational unit vector in the common eigenspace");
    std::vector<Word> all(std::size_t{1} << sig.n());
    for (std::size_t w = 0; w < all.size(); ++w) all[w] = static_cast<Word>(w);
    std::sort(all.begin(), all.end(), degree_lex_less);
    for (Word w : all) {
        if (out.vectors.size() == d) break;
        RatVec x = word_matrix(w) * out.v;
        RatMatrix A(d, out.vectors.size());
        for (std::size_t c = 0; c < out.vectors.size(); ++c)
            for (std::size_t i = 0; i < d; ++i) A(i, c) = out.vectors[c][i];
        if (!out.vectors.empty() && solve_consistent(A, x)) continue;
        out.vectors.push_back(std::move(x));
        out.sigma.push_back(w);
    }
    if (out.vectors.size() != d) throw std::logic_error("invariant_basis: words do not span the module");
    return out;
}

CliffordModule change_basis(const CliffordModule& mod, const InvariantBasis& basis) {
    const std::size_t d = mod.module_dim;
    RatMatrix P(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < d; ++i) P(i, c) = basis.vectors[c][i];
    // P^{-1} via solving against the identity
    RatMatrix Pinv(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        auto x = solve_consistent(P, unit_vector(d, c));
        if (!x) throw std::logic_error("change_basis: basis is singular");
        for (std::size_t i = 0; i < d; ++i) Pinv(i, c) = (*x)[i];
    }
    CliffordModule out = mod;
    out.sigma = basis.sigma;
    out.eta_v.signs.clear();
    for (auto& x : basis.vectors) out.eta_v.signs.push_back(sgn(mod.eta_v.inner(x, x)));
    for (auto& g : out.generators) g = Pinv * g * P;
    return out;
}

bool is_period(const Signature& sig) {
    return (sig.r == 8 && sig.s == 0) || (sig.r == 0 && sig.s == 8) || (sig.r == 4 && sig.s == 4);
}

namespace {

RatMatrix kron(const RatMatrix& A, const RatMatrix& B) {
    RatMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (sgn(A(i, j)) == 0) continue;
            for (std::size_t k = 0; k < B.rows(); ++k)
                for (std::size_t l = 0; l < B.cols(); ++l)
                    if (sgn(B(k, l)) != 0) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
        }
    return K;
}

}  // namespace

int omega_square_formula(const Signature& sig) {
    const int n = sig.n();
    return ((n * (n + 1) / 2 + sig.s) % 2 == 0) ? 1 : -1;
}

VolumeElement volume_element(const CliffordModule& mod) {
    RatMatrix W = RatMatrix::identity(mod.module_dim);
    for (const auto& g : mod.generators) W = W * g;
    const int sq = omega_square_formula(mod.sig);
    if (W * W != RatMatrix::identity(mod.module_dim) * Rational(sq))
        throw std::logic_error("volume_element: J_omega^2 disagrees with the sign formula");
    return {W, sq};
}

CliffordModule tensor_periodicity(const CliffordModule& a, const CliffordModule& b) {
    if (!is_period(b.sig)) throw std::invalid_argument("tensor_periodicity: second factor is not a period signature");
    if (a.multiplicity != 1 || b.multiplicity != 1) throw std::invalid_argument("tensor_periodicity: modules must be minimal");
    const std::size_t da = a.module_dim, db = b.module_dim;
    // J_Z (x) Id would commute with Id (x) J_zeta; twisting by the volume
    // element of b (which anticommutes with every J_zeta) restores the
    // Clifford relations. The sign makes the first basis vector of b fixed.
    RatMatrix Wb = volume_element(b).J_omega;
    if (sgn(Wb(0, 0)) < 0) Wb = -Wb;
    CliffordModule out;
    out.sig = {a.sig.r + b.sig.r, a.sig.s + b.sig.s};
    out.module_dim = da * db;
    out.origin = "tensor";
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k) out.eta_v.signs.push_back(a.eta_v.signs[i] * b.eta_v.signs[k]);
    const RatMatrix Ia = RatMatrix::identity(da);
    std::vector<RatMatrix> pos, neg;
    for (int i = 0; i < a.sig.n(); ++i) (a.sig.eps(i) > 0 ? pos : neg).push_back(kron(a.generators[i], Wb));
    std::vector<RatMatrix> bpos, bneg;
    for (int m = 0; m < b.sig.n(); ++m) (b.sig.eps(m) > 0 ? bpos : bneg).push_back(kron(Ia, b.generators[m]));
    for (auto* v : {&pos, &bpos, &neg, &bneg})
        for (auto& M : *v) out.generators.push_back(std::move(M));
    return out;
}

bool is_signed_permutation(const RatMatrix& M) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
        int nz = 0;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            const Rational& q = M(i, j);
            if (sgn(q) == 0) continue;
            if (q != 1 && q != -1) return false;
            ++nz;
        }
        if (nz != 1) return false;
    }
    return true;
}

CheckReport check_module_invariants(const CliffordModule& mod, std::mt19937_64& rng, int samples) {
    CheckReport rep;
    const std::size_t d = mod.module_dim;
    const int n = mod.sig.n();
    if (static_cast<int>(mod.generators.size()) != n) {
        rep.fail("generator count differs from r+s");
        return rep;
    }
    if (mod.eta_v.dim() != d) {
        rep.fail("metric dimension differs from module dimension");
        return rep;
    }
    for (int s : mod.eta_v.signs)
        if (s != 1 && s != -1) rep.fail("metric entry is not +-1");
    const RatMatrix I = RatMatrix::identity(d);
    for (int i = 0; i < n && rep.ok; ++i) {
        const auto& Ji = mod.generators[i];
        if (Ji.rows() != d || Ji.cols() != d) {
            rep.fail("J_" + std::to_string(i + 1) + " has wrong shape");
            break;
        }
        if (Ji * Ji != I * Rational(-mod.sig.eps(i))) rep.fail("(i) J_" + std::to_string(i + 1) + "^2 != -eps Id");
        if (metric_transpose(Ji, mod.eta_v) != -Ji) rep.fail("(iii) J_" + std::to_string(i + 1) + " not skew");
        for (int j = i + 1; j < n; ++j)
            if (!(Ji * mod.generators[j] + mod.generators[j] * Ji).is_zero())
                rep.fail("(ii) J_" + std::to_string(i + 1) + ", J_" + std::to_string(j + 1) + " do not anticommute");
    }
    if (mod.sig.s > 0 && !mod.eta_v.is_neutral()) rep.fail("(iv) module metric is not neutral");
    const DiagMetric zeta = mod.sig.metric();
    for (int t = 0; t < samples && rep.ok; ++t) {
        const RatVec Z = random_vector(rng, n), W = random_vector(rng, n), X = random_vector(rng, d);
        const Rational lhs = mod.eta_v.inner(mod.J(Z) * X, mod.J(W) * X);
        const Rational rhs = zeta.inner(Z, W) * mod.eta_v.inner(X, X);
        if (lhs != rhs) rep.fail("(v) <J_Z X, J_W X> != <Z,W><X,X> on a random sample");
    }
    return rep;
}

std::string dump_module(const CliffordModule& mod) {
    std::ostringstream os;
    os << mod.sig.r << ' ' << mod.sig.s << ' ' << mod.module_dim << ' ' << mod.multiplicity << '\n';
    for (std::size_t i = 0; i < mod.eta_v.signs.size(); ++i) os << (i ? " " : "") << mod.eta_v.signs[i];
    os << '\n';
    for (auto& g : mod.generators) os << to_text(g);
    return os.str();
}

CliffordModule parse_module(const std::string& text) {
    std::istringstream is(text);
    CliffordModule mod;
    if (!(is >> mod.sig.r >> mod.sig.s >> mod.module_dim >> mod.multiplicity))
        throw std::invalid_argument("parse_module: bad header");
    mod.eta_v.signs.resize(mod.module_dim);
    for (auto& s : mod.eta_v.signs)
        if (!(is >> s)) throw std::invalid_argument("parse_module: short metric line");
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::istringstream rs(rest);
    for (int g = 0; g < mod.sig.n(); ++g) {
        std::size_t r = 0, c = 0;
        if (!(rs >> r >> c)) throw std::invalid_argument("parse_module: missing generator");
        std::ostringstream chunk;
        chunk << r << ' ' << c << '\n';
        std::string tok;
        for (std::size_t k = 0; k < r * c; ++k) {
            if (!(rs >> tok)) throw std::invalid_argument("parse_module: short generator");
            chunk << tok << ' ';
        }
        mod.generators.push_back(from_text(chunk.str()));
    }
    mod.origin = "parsed";
    return mod;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded_draw: zero bound");
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % bound;
}

Rational random_rational(std::mt19937_64& rng, long range) {
    const long num = static_cast<long>(bounded_draw(rng, static_cast<std::uint64_t>(2 * range + 1))) - range;
    const long den = static_cast<long>(bounded_draw(rng, static_cast<std::uint64_t>(range))) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

RatVec random_vector(std::mt19937_64& rng, std::size_t n, long range) {
    RatVec v(n);
    for (auto& q : v) q = random_rational(rng, range);
    return v;
}

}  // namespace hgo
