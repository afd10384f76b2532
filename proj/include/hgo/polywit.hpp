#ifndef HGO_POLYWIT_HPP
#define HGO_POLYWIT_HPP

#include "hgo/isometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hgo {

// Sparse polynomial in y1..y8 over the rationals, graded lexicographic order.
// Exponents are packed one byte per variable, y1 in the most significant byte.
class MultiPoly {
public:
    static constexpr int kMaxVars = 8;

    struct Monomial {
        unsigned degree = 0;
        std::uint64_t packed = 0;
        // grlex: lower total degree first, then lexicographic with y1 largest
        friend bool operator<(const Monomial& a, const Monomial& b) {
            return a.degree != b.degree ? a.degree < b.degree : a.packed < b.packed;
        }
        friend bool operator==(const Monomial& a, const Monomial& b) { return a.packed == b.packed; }
        unsigned exponent(int var) const { return static_cast<unsigned>((packed >> (8 * (kMaxVars - 1 - var))) & 0xff); }
    };

    MultiPoly() = default;
    static MultiPoly constant(const Rational& c);
    // y_{i+1}
    static MultiPoly variable(int i);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;
    Rational eval(const RatVec& y) const;
    // substitute a polynomial for each variable (missing entries keep the variable)
    MultiPoly compose(const std::vector<MultiPoly>& subst) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    MultiPoly pow(unsigned e) const;

    // "c * y1^a1*...*y8^a8" terms, highest monomial first, joined by " + "
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

using PolyEnv = std::map<std::string, MultiPoly>;

// Expressions over integers, rationals p/q, y1..y8 (also y_1), names from env,
// + - * ^ and parentheses.
MultiPoly parse_poly(const std::string& text, const PolyEnv& env = {});

class SymbolicMatrix {
public:
    SymbolicMatrix() = default;
    SymbolicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    MultiPoly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMatrix instantiate(const RatVec& y) const;
    // rows of the result are T times the rows of this matrix
    SymbolicMatrix left_multiply(const RatMatrix& T) const;
    SymbolicMatrix drop_last_column() const;
    friend bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<MultiPoly> a_;
};

// Rows separated by newlines (or "\\"), entries by '&'.
SymbolicMatrix parse_symbolic_matrix(const std::string& text);

// Columns B_k(Y) for symbolic Y = (y1..yd), then J_Z(Y).
SymbolicMatrix symbolic_go_matrix(const std::vector<RatMatrix>& basis, const RatMatrix& JZ);

// Determinant of the submatrix (1-based row/column lists), Laplace expansion
// with memoized sub-minors.
MultiPoly minor(const SymbolicMatrix& sm, const std::vector<int>& rows, const std::vector<int>& cols);

bool left_kernel_identity(const SymbolicMatrix& sm, const std::vector<MultiPoly>& k);

// The N_{3,4} systems in the printed layout.
enum class N34Case { Z1, Z4, Z1Z4 };

struct N34System {
    N34Case which;
    RatVec Z;
    // unknowns: B_k = sum of coeff * J_i J_k over the listed pairs (1-based)
    std::vector<std::vector<std::pair<std::pair<int, int>, int>>> unknowns;
    std::vector<std::string> unknown_names;
    std::vector<RatMatrix> basis;
    RatMatrix row_transform;  // printed = row_transform * raw
    SymbolicMatrix raw;
    SymbolicMatrix printed;
};

N34System n34_system(const HTypeAlgebra& n34, N34Case which);
std::string to_string(N34Case c);

// Rational-function witness: x_ik = num_ik / guard, Y = ynum / ydenom, with
// B = scale * sum x_ik J_i J_k. Parameters are y1..y8.
struct WitnessFamily {
    std::string name;
    N34Case which;
    std::vector<MultiPoly> ynum;
    MultiPoly ydenom;
    MultiPoly guard;
    Rational scale;
    std::vector<std::pair<std::pair<int, int>, MultiPoly>> coeffs;
    // parameter variables that may be sampled freely (0-based)
    std::vector<int> params;
    bool expect_pass = true;
};

struct FamilyReport {
    bool ok = true;
    std::string failure;
    MultiPoly residual;  // first nonzero residual entry
};

FamilyReport verify_witness_family(const HTypeAlgebra& n34, const WitnessFamily& fam);
std::vector<WitnessFamily> n34_witness_families();
// The families' B at a concrete parameter point (nullopt when the guard or
// the Y denominator vanishes there).
std::optional<std::pair<RatVec, RatMatrix>> instantiate_family(const HTypeAlgebra& n34, const WitnessFamily& fam,
                                                                const RatVec& params);

// U0..U8, W1..W4, S, S1, S2 used by the n_{3,4} minor identities and families.
PolyEnv n34_polynomials();

// Forward direction: both degenerate families kill U1..U8 and satisfy the
// two stated relations.
CheckReport family_membership_check();

struct MinorIdentity {
    std::string name;
    std::string matrix;  // "ME" or "MEt"
    std::vector<int> rows;
    std::vector<int> cols;
    MultiPoly expected;
};

// Fixture lines: name | matrix | rows | cols | expression
std::vector<MinorIdentity> parse_minor_identities(const std::string& text, const PolyEnv& env);

}  // namespace hgo

#endif  // HGO_POLYWIT_HPP
