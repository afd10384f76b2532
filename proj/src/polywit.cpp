#include "hgo/polywit.hpp"

#include <bit>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hgo {

namespace {

MultiPoly::Monomial mono_of(int var, unsigned e) {
    MultiPoly::Monomial m;
    m.degree = e;
    m.packed = static_cast<std::uint64_t>(e) << (8 * (MultiPoly::kMaxVars - 1 - var));
    return m;
}

MultiPoly::Monomial mono_mul(const MultiPoly::Monomial& a, const MultiPoly::Monomial& b) {
    for (int v = 0; v < MultiPoly::kMaxVars; ++v)
        if (a.exponent(v) + b.exponent(v) > 255) throw std::overflow_error("MultiPoly: exponent overflow");
    return {a.degree + b.degree, a.packed + b.packed};
}

}  // namespace

MultiPoly MultiPoly::constant(const Rational& c) {
    MultiPoly p;
    p.add_term(Monomial{}, c);
    return p;
}

MultiPoly MultiPoly::variable(int i) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("MultiPoly::variable: index out of range");
    MultiPoly p;
    p.add_term(mono_of(i, 1), 1);
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

unsigned MultiPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree; }

Rational MultiPoly::eval(const RatVec& y) const {
    Rational acc = 0;
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (int v = 0; v < kMaxVars; ++v) {
            const unsigned e = m.exponent(v);
            if (e == 0) continue;
            if (static_cast<std::size_t>(v) >= y.size()) throw DimensionError("MultiPoly::eval: too few values");
            for (unsigned k = 0; k < e; ++k) t *= y[v];
        }
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& subst) const {
    MultiPoly out;
    for (auto& [m, c] : terms_) {
        MultiPoly t = constant(c);
        for (int v = 0; v < kMaxVars; ++v) {
            const unsigned e = m.exponent(v);
            if (e == 0) continue;
            const MultiPoly base = static_cast<std::size_t>(v) < subst.size() ? subst[v] : variable(v);
            t = t * base.pow(e);
        }
        out += t;
    }
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(1), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(it->second);
        std::string factors;
        for (int v = 0; v < kMaxVars; ++v) {
            const unsigned e = it->first.exponent(v);
            if (e == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "y" + std::to_string(v + 1);
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (!factors.empty()) os << " * " << factors;
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, const PolyEnv& env) : s_(text), env_(env) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse_poly: " + msg + " in \"" + s_ + "\"");
    }

    MultiPoly expr() {
        MultiPoly acc;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }
    MultiPoly term() {
        MultiPoly acc = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                acc = acc * factor();
                continue;
            }
            // implicit product: "2y1", "y1 y2", "2(…)"
            if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
                acc = acc * factor();
                continue;
            }
            return acc;
        }
    }
    MultiPoly factor() {
        MultiPoly base;
        if (eat('-')) return -factor();
        if (eat('(')) {
            base = expr();
            if (!eat(')')) fail("missing ')'");
        } else {
            skip();
            if (pos_ >= s_.size()) fail("unexpected end");
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t st = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (pos_ < s_.size() && s_[pos_] == '/') {
                    ++pos_;
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                }
                base = MultiPoly::constant(parse_rational(s_.substr(st, pos_ - st)));
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t st = pos_;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
                std::string name = s_.substr(st, pos_ - st);
                auto it = env_.find(name);
                if (it != env_.end()) {
                    base = it->second;
                } else {
                    std::string digits;
                    if (name.size() >= 2 && name[0] == 'y') digits = name.substr(name[1] == '_' ? 2 : 1);
                    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                        fail("unknown name '" + name + "'");
                    const int idx = std::stoi(digits);
                    if (idx < 1 || idx > MultiPoly::kMaxVars) fail("variable out of range '" + name + "'");
                    base = MultiPoly::variable(idx - 1);
                }
            } else {
                fail("unexpected '" + std::string(1, c) + "'");
            }
        }
        if (eat('^')) {
            skip();
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) fail("missing exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(st, pos_ - st))));
        }
        return base;
    }

    const std::string& s_;
    const PolyEnv& env_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const PolyEnv& env) { return PolyParser(text, env).parse(); }

RatMatrix SymbolicMatrix::instantiate(const RatVec& y) const {
    RatMatrix M(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) M(i, j) = (*this)(i, j).eval(y);
    return M;
}

SymbolicMatrix SymbolicMatrix::left_multiply(const RatMatrix& T) const {
    if (T.cols() != rows_) throw DimensionError("SymbolicMatrix::left_multiply: shape mismatch");
    SymbolicMatrix out(T.rows(), cols_);
    for (std::size_t i = 0; i < T.rows(); ++i)
        for (std::size_t k = 0; k < rows_; ++k) {
            if (sgn(T(i, k)) == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) += (*this)(k, j) * T(i, k);
        }
    return out;
}

SymbolicMatrix SymbolicMatrix::drop_last_column() const {
    if (cols_ == 0) throw DimensionError("drop_last_column: no columns");
    SymbolicMatrix out(rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j + 1 < cols_; ++j) out(i, j) = (*this)(i, j);
    return out;
}

SymbolicMatrix parse_symbolic_matrix(const std::string& text) {
    std::string flat = text;
    for (std::size_t p; (p = flat.find("\\\\")) != std::string::npos;) flat.replace(p, 2, "\n");
    std::vector<std::vector<MultiPoly>> rows;
    std::istringstream in(flat);
    for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<MultiPoly> row;
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, '&');) row.push_back(parse_poly(cell));
        if (!rows.empty() && row.size() != rows[0].size()) throw std::invalid_argument("parse_symbolic_matrix: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return {};
    SymbolicMatrix sm(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) sm(i, j) = rows[i][j];
    return sm;
}

SymbolicMatrix symbolic_go_matrix(const std::vector<RatMatrix>& basis, const RatMatrix& JZ) {
    const std::size_t d = JZ.rows();
    if (d > static_cast<std::size_t>(MultiPoly::kMaxVars)) throw DimensionError("symbolic_go_matrix: dim v exceeds 8");
    std::vector<MultiPoly> Y;
    for (std::size_t i = 0; i < d; ++i) Y.push_back(MultiPoly::variable(static_cast<int>(i)));
    SymbolicMatrix sm(d, basis.size() + 1);
    auto apply = [&](const RatMatrix& M, std::size_t col) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(M(i, j)) != 0) sm(i, col) += Y[j] * M(i, j);
    };
    for (std::size_t k = 0; k < basis.size(); ++k) apply(basis[k], k);
    apply(JZ, basis.size());
    return sm;
}

MultiPoly minor(const SymbolicMatrix& sm, const std::vector<int>& rows, const std::vector<int>& cols) {
    const std::size_t k = rows.size();
    if (cols.size() != k) throw DimensionError("minor: row and column counts differ");
    if (k > 16) throw DimensionError("minor: order too large");
    for (int r : rows)
        if (r < 1 || static_cast<std::size_t>(r) > sm.rows()) throw std::out_of_range("minor: row index out of range");
    for (int c : cols)
        if (c < 1 || static_cast<std::size_t>(c) > sm.cols()) throw std::out_of_range("minor: column index out of range");
    if (k == 0) return MultiPoly::constant(1);
    // memo[mask] = determinant of the last popcount(mask) rows on columns mask
    std::unordered_map<std::uint32_t, MultiPoly> memo;
    std::function<MultiPoly(std::uint32_t)> det = [&](std::uint32_t mask) -> MultiPoly {
        const int used = std::popcount(mask);
        if (used == 0) return MultiPoly::constant(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const std::size_t row = static_cast<std::size_t>(rows[k - used] - 1);
        MultiPoly acc;
        int pos = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (!(mask & (1u << j))) continue;
            const MultiPoly& a = sm(row, static_cast<std::size_t>(cols[j] - 1));
            if (!a.is_zero()) {
                MultiPoly t = a * det(mask & ~(1u << j));
                if (pos % 2) acc -= t;
                else acc += t;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return det((k == 32 ? 0u : (1u << k)) - 1u);
}

bool left_kernel_identity(const SymbolicMatrix& sm, const std::vector<MultiPoly>& k) {
    if (k.size() != sm.rows()) throw DimensionError("left_kernel_identity: length differs from row count");
    for (std::size_t j = 0; j < sm.cols(); ++j) {
        MultiPoly acc;
        for (std::size_t i = 0; i < sm.rows(); ++i) acc += k[i] * sm(i, j);
        if (!acc.is_zero()) return false;
    }
    return true;
}

std::string to_string(N34Case c) {
    switch (c) {
        case N34Case::Z1: return "Z1";
        case N34Case::Z4: return "Z4";
        case N34Case::Z1Z4: return "Z1+Z4";
    }
    return "?";
}

namespace {

using Combo = std::vector<std::pair<std::pair<int, int>, int>>;

Combo single(int i, int k) { return {{{i, k}, 1}}; }

std::string pair_name(int i, int k) { return "x" + std::to_string(i) + std::to_string(k); }

RatMatrix product(const HTypeAlgebra& alg, int i, int k) {
    return alg.module.generators[static_cast<std::size_t>(i - 1)] * alg.module.generators[static_cast<std::size_t>(k - 1)];
}

}  // namespace

N34System n34_system(const HTypeAlgebra& n34, N34Case which) {
    if (n34.sig() != Signature{3, 4} || n34.v_dim() != 8) throw std::invalid_argument("n34_system: algebra is not n_{3,4}");
    N34System sys;
    sys.which = which;
    const std::size_t d = 8;
    switch (which) {
        case N34Case::Z1: {
            sys.Z = unit_vector(7, 0);
            for (auto [i, k] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 4}, {3, 5}, {3, 6},
                                                              {3, 7}, {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}) {
                sys.unknowns.push_back(single(i, k));
                sys.unknown_names.push_back(pair_name(i, k));
            }
            sys.row_transform = RatMatrix::identity(d);
            break;
        }
        case N34Case::Z4: {
            sys.Z = unit_vector(7, 3);
            for (auto [i, k] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 5}, {1, 6}, {1, 7}, {2, 3}, {2, 5}, {2, 6},
                                                              {2, 7}, {3, 5}, {3, 6}, {3, 7}, {5, 6}, {5, 7}, {6, 7}}) {
                sys.unknowns.push_back(single(i, k));
                sys.unknown_names.push_back(pair_name(i, k));
            }
            sys.row_transform = -n34.module.generators[3];
            break;
        }
        case N34Case::Z1Z4: {
            sys.Z = vec_add(unit_vector(7, 0), unit_vector(7, 3));
            // x12 = -x24, x13 = -x34, x15 = x45, x16 = x46, x17 = x47
            sys.unknowns = {single(2, 3),
                            {{{2, 4}, 1}, {{1, 2}, -1}},
                            single(2, 5),
                            single(2, 6),
                            single(2, 7),
                            {{{3, 4}, 1}, {{1, 3}, -1}},
                            single(3, 5),
                            single(3, 6),
                            single(3, 7),
                            {{{4, 5}, 1}, {{1, 5}, 1}},
                            {{{4, 6}, 1}, {{1, 6}, 1}},
                            {{{4, 7}, 1}, {{1, 7}, 1}},
                            single(5, 6),
                            single(5, 7),
                            single(6, 7)};
            sys.unknown_names = {"x23", "x24", "x25", "x26", "x27", "x34", "x35", "x36",
                                 "x37", "x45", "x46", "x47", "x56", "x57", "x67"};
            RatMatrix T(d, d);
            const std::pair<int, int> perm[] = {{0, 1}, {1, 4}, {2, 0}, {3, 7}, {4, 3}, {5, 6}, {6, 5}, {7, 2}};
            for (auto [r, c] : perm) T(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = -1;
            sys.row_transform = T;
            break;
        }
    }
    for (auto& combo : sys.unknowns) {
        RatMatrix B(d, d);
        for (auto& [ik, c] : combo) B += product(n34, ik.first, ik.second) * Rational(c);
        sys.basis.push_back(std::move(B));
    }
    const RatMatrix JZ = n34.J(sys.Z);
    for (auto& B : sys.basis)
        if (!commutator(B, JZ).is_zero()) throw std::logic_error("n34_system: unknown does not commute with J_Z");
    sys.raw = symbolic_go_matrix(sys.basis, JZ);
    sys.printed = sys.raw.left_multiply(sys.row_transform);
    return sys;
}

PolyEnv n34_polynomials() {
    PolyEnv env;
    auto def = [&](const std::string& name, const std::string& expr) { env[name] = parse_poly(expr, env); };
    def("U1", "y1*y8 - y2*y5 - y3*y6 + y4*y7");
    def("U2", "y1*y7 + y2*y6 - y3*y5 - y4*y8");
    def("U3", "y1*y4 + y2*y3 - y5*y6 - y7*y8");
    def("U4", "y1*y4 - y2*y3 - y5*y6 + y7*y8");
    def("U5", "y1*y3 - y2*y4 - y5*y7 + y6*y8");
    def("U6", "y1*y2 + y3*y4 - y5*y8 - y6*y7");
    def("U7", "y1^2 + y2^2 - y3^2 - y4^2 - y5^2 + y6^2 + y7^2 - y8^2");
    def("U8", "y1^2 - y2^2 + y3^2 - y4^2 - y5^2 + y6^2 - y7^2 + y8^2");
    def("U0", "(y1^2 + y2^2 + y3^2 + y4^2 - y5^2 - y6^2 - y7^2 - y8^2)^2 + 4*(y1*y6 - y2*y7 + y3*y8 - y4*y5)^2");
    def("a", "y1 + y8");
    def("b", "y2 - y5");
    def("c", "y3 - y6");
    def("d", "y4 + y7");
    def("S", "a^2 + b^2 + c^2 + d^2");
    def("W1", "a^2 - b^2 - c^2 + d^2");
    def("W2", "a^2 - b^2 + c^2 - d^2");
    def("W3", "a*b - c*d");
    def("W4", "a*b + c*d");
    def("S1", "y1^2 + y2^2 + y3^2 + y4^2");
    def("S2", "y5^2 + y6^2 + y7^2 + y8^2");
    return env;
}

namespace {

std::vector<MultiPoly> polys(const std::vector<std::string>& exprs, const PolyEnv& env) {
    std::vector<MultiPoly> out;
    for (auto& e : exprs) out.push_back(parse_poly(e, env));
    return out;
}

}  // namespace

std::vector<WitnessFamily> n34_witness_families() {
    const PolyEnv env = n34_polynomials();
    const MultiPoly one = MultiPoly::constant(1);
    std::vector<WitnessFamily> out;
    auto fam = [&](std::string name, N34Case which, std::vector<std::string> y, std::string ydenom, std::string guard,
                   Rational scale, std::vector<std::pair<std::pair<int, int>, std::string>> coeffs, std::vector<int> params,
                   bool expect = true) {
        WitnessFamily f;
        f.name = std::move(name);
        f.which = which;
        f.ynum = polys(y, env);
        f.ydenom = parse_poly(ydenom, env);
        f.guard = parse_poly(guard, env);
        f.scale = scale;
        for (auto& [ik, e] : coeffs) f.coeffs.emplace_back(ik, parse_poly(e, env));
        f.params = std::move(params);
        f.expect_pass = expect;
        out.push_back(std::move(f));
    };
    // B = sum x_ik [J_i,J_k] = 2 sum x_ik J_i J_k
    fam("z1-upper", N34Case::Z1, {"y1", "y2", "y3", "y4", "0", "0", "0", "0"}, "1", "2*S1", 2,
        {{{4, 5}, "-2*(y1*y3 - y2*y4)"}, {{4, 6}, "2*(y1*y4 + y2*y3)"}, {{4, 7}, "y1^2 + y2^2 - y3^2 - y4^2"}}, {0, 1, 2, 3});
    fam("z1-lower", N34Case::Z1, {"0", "0", "0", "0", "y5", "y6", "y7", "y8"}, "1", "2*S2", 2,
        {{{4, 5}, "-2*(y5*y7 - y6*y8)"}, {{4, 6}, "2*(y5*y6 + y7*y8)"}, {{4, 7}, "y5^2 - y6^2 - y7^2 + y8^2"}}, {4, 5, 6, 7});
    const std::vector<std::pair<std::pair<int, int>, std::string>> generic = {
        {{4, 5}, "-((y1*y3 - y2*y4)*S2 + (y5*y7 - y6*y8)*S1)"},
        {{4, 6}, "(y1*y4 + y2*y3)*S2 + (y5*y6 + y7*y8)*S1"},
        {{4, 7}, "(y1^2 + y2^2)*(y5^2 + y8^2) - (y3^2 + y4^2)*(y6^2 + y7^2)"},
        {{5, 6}, "(y1^2 + y2^2)*(y6^2 + y7^2) - (y3^2 + y4^2)*(y5^2 + y8^2)"},
        {{5, 7}, "-(y1*y4 + y2*y3)*S2 + (y5*y6 + y7*y8)*S1"},
        {{6, 7}, "(-y1*y3 + y2*y4)*S2 + (y5*y7 - y6*y8)*S1"}};
    fam("z1-generic", N34Case::Z1, {"y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8"}, "1", "2*S1*S2", 2, generic,
        {0, 1, 2, 3, 4, 5, 6, 7});
    auto printed = generic;
    printed[5].second = "(-y1*y3 + y2*y4)*S2 + (y5*y7 + y6*y8)*S1";
    fam("z1-generic-as-printed", N34Case::Z1, {"y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8"}, "1", "2*S1*S2", 2, printed,
        {0, 1, 2, 3, 4, 5, 6, 7}, false);

    // B = sum x_ik J_i J_k
    fam("z4-family1", N34Case::Z4, {"y1", "y2", "y3", "y4", "y1", "y4", "y3", "y2"}, "1", "2*(y1*y3 - y2*y4)", 1,
        {{{1, 2}, "-2*(y1*y2 + y3*y4)"}, {{1, 3}, "-(y1^2 - y2^2 - y3^2 + y4^2)"}, {{1, 5}, "-S1"}}, {0, 1, 2, 3});
    // y3 = y2 y4 / y1, Y scaled by y1
    fam("z4-family1-y3-eliminated", N34Case::Z4, {"y1^2", "y1*y2", "y2*y4", "y1*y4", "y1^2", "y1*y4", "y2*y4", "y1*y2"},
        "y1", "2*y1*y4*(y1^2 + y2^2)", 1,
        {{{1, 2}, "(y1^2 - y2^2)*(y1^2 - y4^2)"}, {{1, 3}, "-2*y1*y2*(y1^2 - y4^2)"}, {{1, 6}, "(y1^2 + y4^2)*(y1^2 + y2^2)"}},
        {0, 1, 3});
    fam("z4-family1-y3-y4-zero", N34Case::Z4, {"y1", "y2", "0", "0", "y1", "0", "0", "y2"}, "1", "1", 1, {{{1, 7}, "1"}},
        {0, 1});
    fam("z4-family2", N34Case::Z4, {"y1", "y2", "y3", "y4", "-y1", "-y4", "-y3", "-y2"}, "1", "2*(y1*y4 + y2*y3)", 1,
        {{{1, 2}, "-(y1^2 - y2^2 + y3^2 - y4^2)"}, {{1, 3}, "2*(y1*y2 - y3*y4)"}, {{1, 6}, "S1"}}, {0, 1, 2, 3});
    // y3 = -y1 y4 / y2, Y scaled by y2
    fam("z4-family2-y3-eliminated", N34Case::Z4,
        {"y1*y2", "y2^2", "-y1*y4", "y2*y4", "-y1*y2", "-y2*y4", "y1*y4", "-y2^2"}, "y2", "2*y2*y4*(y1^2 + y2^2)", 1,
        {{{1, 2}, "-2*y1*y2*(y2^2 - y4^2)"}, {{1, 3}, "-(y1^2 - y2^2)*(y2^2 - y4^2)"}, {{1, 5}, "(y2^2 + y4^2)*(y1^2 + y2^2)"}},
        {0, 1, 3});
    // the substitution y3 = -y2 y4 / y1 as displayed; Y scaled by y1
    fam("z4-family2-y3-eliminated-as-printed", N34Case::Z4,
        {"y1^2", "y1*y2", "-y2*y4", "y1*y4", "-y1^2", "-y1*y4", "y2*y4", "-y1*y2"}, "y1", "2*y2*y4*(y1^2 + y2^2)", 1,
        {{{1, 2}, "-2*y1*y2*(y2^2 - y4^2)"}, {{1, 3}, "-(y1^2 - y2^2)*(y2^2 - y4^2)"}, {{1, 5}, "(y2^2 + y4^2)*(y1^2 + y2^2)"}},
        {0, 1, 3}, false);
    fam("z4-family2-y3-y4-zero", N34Case::Z4, {"y1", "y2", "0", "0", "-y1", "0", "0", "-y2"}, "1", "1", 1, {{{1, 7}, "1"}},
        {0, 1});
    fam("z4-family2-y2-y4-zero", N34Case::Z4, {"y1", "0", "y3", "0", "-y1", "0", "-y3", "0"}, "1", "1", 1, {{{2, 6}, "1"}},
        {0, 2});
    // a = b = c = d = 0: J_Z Y vanishes, B = 0
    fam("z1z4-guard-zero", N34Case::Z1Z4, {"y1", "y2", "y3", "y4", "y2", "y3", "-y4", "-y1"}, "1", "1", 1, {}, {0, 1, 2, 3});
    (void)one;
    return out;
}

namespace {

RatMatrix family_basis_sum(const HTypeAlgebra& n34, const WitnessFamily& fam, const std::vector<Rational>& xs) {
    RatMatrix B(8, 8);
    for (std::size_t t = 0; t < fam.coeffs.size(); ++t)
        B += product(n34, fam.coeffs[t].first.first, fam.coeffs[t].first.second) * (xs[t] * fam.scale);
    return B;
}

RatVec case_z(N34Case which) {
    switch (which) {
        case N34Case::Z1: return unit_vector(7, 0);
        case N34Case::Z4: return unit_vector(7, 3);
        case N34Case::Z1Z4: return vec_add(unit_vector(7, 0), unit_vector(7, 3));
    }
    return {};
}

}  // namespace

FamilyReport verify_witness_family(const HTypeAlgebra& n34, const WitnessFamily& fam) {
    FamilyReport rep;
    const RatMatrix JZ = n34.J(case_z(fam.which));
    if (fam.guard.is_zero()) {
        rep.ok = false;
        rep.failure = "guard is identically zero";
        return rep;
    }
    // [B, J_Z] = 0: sum num_ik [J_i J_k, J_Z] = 0 entrywise as polynomials
    const std::size_t d = 8;
    std::vector<MultiPoly> comm(d * d);
    for (auto& [ik, num] : fam.coeffs) {
        const RatMatrix c = commutator(product(n34, ik.first, ik.second), JZ);
        for (std::size_t e = 0; e < d * d; ++e)
            if (sgn(c.data()[e]) != 0) comm[e] += num * c.data()[e];
    }
    for (std::size_t e = 0; e < d * d; ++e)
        if (!comm[e].is_zero()) {
            rep.ok = false;
            rep.failure = "[B, J_Z] has a nonzero entry";
            rep.residual = comm[e];
            return rep;
        }
    // scale * sum num_ik J_i J_k Ynum - guard * J_Z Ynum = 0
    for (std::size_t i = 0; i < d; ++i) {
        MultiPoly acc;
        for (auto& [ik, num] : fam.coeffs) {
            const RatMatrix P = product(n34, ik.first, ik.second);
            MultiPoly row;
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(P(i, j)) != 0) row += fam.ynum[j] * P(i, j);
            acc += num * row * fam.scale;
        }
        MultiPoly rhs;
        for (std::size_t j = 0; j < d; ++j)
            if (sgn(JZ(i, j)) != 0) rhs += fam.ynum[j] * JZ(i, j);
        acc -= fam.guard * rhs;
        if (!acc.is_zero()) {
            rep.ok = false;
            rep.failure = "B(Y) - J_Z(Y) has a nonzero entry in row " + std::to_string(i + 1);
            rep.residual = acc;
            return rep;
        }
    }
    return rep;
}

std::optional<std::pair<RatVec, RatMatrix>> instantiate_family(const HTypeAlgebra& n34, const WitnessFamily& fam,
                                                                const RatVec& params) {
    const Rational g = fam.guard.eval(params), yd = fam.ydenom.eval(params);
    if (sgn(g) == 0 || sgn(yd) == 0) return std::nullopt;
    RatVec Y;
    for (auto& p : fam.ynum) Y.push_back(p.eval(params) / yd);
    std::vector<Rational> xs;
    for (auto& [ik, num] : fam.coeffs) xs.push_back(num.eval(params) / g);
    return std::make_pair(Y, family_basis_sum(n34, fam, xs));
}

CheckReport family_membership_check() {
    CheckReport rep;
    const PolyEnv env = n34_polynomials();
    const char* fams[2][8] = {{"y1", "y2", "y3", "y4", "y1", "y4", "y3", "y2"},
                              {"y1", "y2", "y3", "y4", "-y1", "-y4", "-y3", "-y2"}};
    const MultiPoly norm = parse_poly("y1^2 + y2^2 + y3^2 + y4^2 - y5^2 - y6^2 - y7^2 - y8^2");
    const MultiPoly cross = parse_poly("y1*y6 - y2*y7 + y3*y8 - y4*y5");
    for (int f = 0; f < 2; ++f) {
        std::vector<MultiPoly> sub;
        for (auto* e : fams[f]) sub.push_back(parse_poly(e));
        for (int i = 1; i <= 8; ++i)
            if (!env.at("U" + std::to_string(i)).compose(sub).is_zero())
                rep.fail("family " + std::to_string(f + 1) + ": U" + std::to_string(i) + " does not vanish");
        if (!norm.compose(sub).is_zero()) rep.fail("family " + std::to_string(f + 1) + ": norm is not zero");
        if (!cross.compose(sub).is_zero()) rep.fail("family " + std::to_string(f + 1) + ": cross form is not zero");
    }
    return rep;
}

std::vector<MinorIdentity> parse_minor_identities(const std::string& text, const PolyEnv& env) {
    std::vector<MinorIdentity> out;
    std::istringstream in(text);
    auto ints = [](const std::string& s) {
        std::vector<int> v;
        std::istringstream is(s);
        for (std::string tok; std::getline(is, tok, ',');) {
            const auto dash = tok.find('-');
            if (dash != std::string::npos) {
                for (int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1)); a <= b; ++a) v.push_back(a);
            } else if (tok.find_first_not_of(" \t") != std::string::npos) {
                v.push_back(std::stoi(tok));
            }
        }
        return v;
    };
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    for (std::string line; std::getline(in, line);) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string part; std::getline(ls, part, '|');) f.push_back(trim(part));
        if (f.size() != 5) throw std::invalid_argument("parse_minor_identities: expected 5 fields: " + line);
        out.push_back({f[0], f[1], ints(f[2]), ints(f[3]), parse_poly(f[4], env)});
    }
    return out;
}

}  // namespace hgo
