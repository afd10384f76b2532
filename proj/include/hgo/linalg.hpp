#ifndef HGO_LINALG_HPP
#define HGO_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgo {

using Rational = mpq_class;
using RatVec = std::vector<Rational>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/*
 * Dense row-major matrix over exact rationals.
 * All problems here stay below 64x64 (module side) or a few thousand
 * rows for stacked constraint systems, so dense storage is fine.
 */
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<std::vector<long>>& rows);
    static RatMatrix column(const RatVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<Rational>& data() const { return a_; }

    RatMatrix transpose() const;
    RatVec col(std::size_t j) const;
    RatVec row(std::size_t i) const;
    bool is_zero() const;

    RatMatrix& operator+=(const RatMatrix& o);
    RatMatrix& operator-=(const RatMatrix& o);
    RatMatrix& operator*=(const Rational& c);

    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    friend RatMatrix operator*(RatMatrix a, const Rational& c) { return a *= c; }
    friend RatMatrix operator*(const Rational& c, RatMatrix a) { return a *= c; }
    friend RatMatrix operator-(RatMatrix a) { return a *= Rational(-1); }
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatVec operator*(const RatMatrix& a, const RatVec& x);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

// Diagonal metric eta with entries +1/-1.
struct DiagMetric {
    std::vector<int> signs;

    std::size_t dim() const { return signs.size(); }
    static DiagMetric neutral(std::size_t l);
    Rational inner(const RatVec& x, const RatVec& y) const;
    RatMatrix matrix() const;
    bool is_neutral() const;
};

RatMatrix metric_transpose(const RatMatrix& A, const DiagMetric& eta);

// Fraction-free elimination; pivots are the first nonzero entry scanning
// columns left to right and rows top to bottom.
std::size_t rank(const RatMatrix& A);
// Same rank by an unrelated pivot order (columns right to left, rows bottom
// to top, on the transpose). Used to cross-check certificates.
std::size_t rank_reverse_order(const RatMatrix& A);

// One exact solution of A x = b when rank(A) == rank([A|b]), else nullopt.
std::optional<RatVec> solve_consistent(const RatMatrix& A, const RatVec& b);

std::vector<RatVec> kernel_basis(const RatMatrix& A);
RatMatrix commutator(const RatMatrix& A, const RatMatrix& B);

RatMatrix hstack(const RatMatrix& A, const RatMatrix& B);
RatMatrix append_column(const RatMatrix& A, const RatVec& b);
RatMatrix vstack(const std::vector<RatMatrix>& blocks);

// Coordinates of M in the span of basis (all same shape); nullopt if M is
// not in the span.
std::optional<RatVec> span_coordinates(const std::vector<RatMatrix>& basis, const RatMatrix& M);

Rational determinant(const RatMatrix& A);

// Text format: "rows cols" then row-major entries "p/q" or "p".
std::string to_text(const RatMatrix& A);
RatMatrix from_text(const std::string& text);

Rational parse_rational(const std::string& s);
std::string rat_str(const Rational& q);

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const RatVec& a, const Rational& c);
bool vec_is_zero(const RatVec& a);
RatVec unit_vector(std::size_t n, std::size_t i);

}  // namespace hgo

#endif  // HGO_LINALG_HPP
