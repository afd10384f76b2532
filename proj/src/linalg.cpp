#include "hgo/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace hgo {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return {};
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DimensionError("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::column(const RatVec& v) {
    RatMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatVec RatMatrix::col(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RatVec RatMatrix::row(std::size_t i) const {
    return RatVec(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

bool RatMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix add: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sub: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& c) {
    for (auto& q : a_) q *= c;
    return *this;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix mul: inner dimension mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatVec operator*(const RatMatrix& a, const RatVec& x) {
    if (a.cols_ != x.size()) throw DimensionError("matrix-vector: dimension mismatch");
    RatVec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j)
            if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0) y[i] += a(i, j) * x[j];
    return y;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

DiagMetric DiagMetric::neutral(std::size_t l) {
    DiagMetric m;
    m.signs.assign(l, 1);
    m.signs.insert(m.signs.end(), l, -1);
    return m;
}

Rational DiagMetric::inner(const RatVec& x, const RatVec& y) const {
    if (x.size() != signs.size() || y.size() != signs.size()) throw DimensionError("inner: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0)
            s += x[i] * y[i];
        else
            s -= x[i] * y[i];
    }
    return s;
}

RatMatrix DiagMetric::matrix() const {
    RatMatrix m(signs.size(), signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) m(i, i) = signs[i];
    return m;
}

bool DiagMetric::is_neutral() const {
    auto plus = std::count(signs.begin(), signs.end(), 1);
    return 2 * static_cast<std::size_t>(plus) == signs.size();
}

RatMatrix metric_transpose(const RatMatrix& A, const DiagMetric& eta) {
    const std::size_t n = eta.dim();
    if (A.rows() != n || A.cols() != n) throw DimensionError("metric_transpose: shape does not match metric");
    RatMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            t(i, j) = A(j, i);
            if (eta.signs[i] * eta.signs[j] < 0) t(i, j) = -t(i, j);
        }
    return t;
}

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

// Clear denominators row by row so Bareiss runs over the integers.
IntRows integer_rows(const RatMatrix& A) {
    IntRows m(A.rows(), std::vector<mpz_class>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const mpz_class& d = A(i, j).get_den();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const Rational& q = A(i, j);
            m[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    return m;
}

std::size_t bareiss_rank(IntRows m, std::size_t rows, std::size_t cols) {
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const mpz_class piv = m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class f = m[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = m[i][j] * piv - f * m[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
            m[i][c] = 0;
        }
        // every lower row is rescaled, even when f == 0, or the next exact
        // division by prev would fail
        prev = piv;
        ++r;
    }
    return r;
}

struct Rref {
    RatMatrix m;
    std::vector<std::size_t> pivots;
};

Rref rref(RatMatrix m) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

}  // namespace

std::size_t rank(const RatMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    return bareiss_rank(integer_rows(A), A.rows(), A.cols());
}

std::size_t rank_reverse_order(const RatMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    // Transpose and reverse both index orders: pivots are now searched over
    // original rows from the last one backwards, original columns bottom-up.
    RatMatrix t(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) t(A.cols() - 1 - j, A.rows() - 1 - i) = A(i, j);
    return bareiss_rank(integer_rows(t), t.rows(), t.cols());
}

std::optional<RatVec> solve_consistent(const RatMatrix& A, const RatVec& b) {
    if (A.rows() != b.size()) throw DimensionError("solve_consistent: rows of A differ from length of b");
    Rref red = rref(append_column(A, b));
    const std::size_t n = A.cols();
    if (!red.pivots.empty() && red.pivots.back() == n) return std::nullopt;
    RatVec x(n);
    for (std::size_t k = 0; k < red.pivots.size(); ++k) x[red.pivots[k]] = red.m(k, n);
    return x;
}

std::vector<RatVec> kernel_basis(const RatMatrix& A) {
    Rref red = rref(A);
    const std::size_t n = A.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : red.pivots) is_pivot[c] = true;
    std::vector<RatVec> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVec k(n);
        k[f] = 1;
        for (std::size_t r = 0; r < red.pivots.size(); ++r) k[red.pivots[r]] = -red.m(r, f);
        out.push_back(std::move(k));
    }
    return out;
}

RatMatrix commutator(const RatMatrix& A, const RatMatrix& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw DimensionError("commutator: square matrices of equal size required");
    return A * B - B * A;
}

RatMatrix hstack(const RatMatrix& A, const RatMatrix& B) {
    if (A.rows() != B.rows()) throw DimensionError("hstack: row mismatch");
    RatMatrix m(A.rows(), A.cols() + B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) m(i, j) = A(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j) m(i, A.cols() + j) = B(i, j);
    }
    return m;
}

RatMatrix append_column(const RatMatrix& A, const RatVec& b) {
    return hstack(A, RatMatrix::column(b));
}

RatMatrix vstack(const std::vector<RatMatrix>& blocks) {
    std::size_t rows = 0, cols = blocks.empty() ? 0 : blocks[0].cols();
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw DimensionError("vstack: column mismatch");
        rows += b.rows();
    }
    RatMatrix m(rows, cols);
    std::size_t r = 0;
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.rows(); ++i, ++r)
            for (std::size_t j = 0; j < cols; ++j) m(r, j) = b(i, j);
    return m;
}

std::optional<RatVec> span_coordinates(const std::vector<RatMatrix>& basis, const RatMatrix& M) {
    const std::size_t n = M.rows() * M.cols();
    RatMatrix A(n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].rows() != M.rows() || basis[k].cols() != M.cols())
            throw DimensionError("span_coordinates: shape mismatch");
        for (std::size_t e = 0; e < n; ++e) A(e, k) = basis[k].data()[e];
    }
    return solve_consistent(A, M.data());
}

Rational determinant(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("determinant: square matrix required");
    const std::size_t n = A.rows();
    RatMatrix m = A;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            const Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::string rat_str(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: malformed '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_text(const RatMatrix& A) {
    std::ostringstream os;
    os << A.rows() << ' ' << A.cols() << '\n';
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j) os << ' ';
            os << rat_str(A(i, j));
        }
        os << '\n';
    }
    return os.str();
}

RatMatrix from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) throw std::invalid_argument("from_text: missing header");
    RatMatrix m(r, c);
    std::string tok;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (!(is >> tok)) throw std::invalid_argument("from_text: too few entries");
            m(i, j) = parse_rational(tok);
        }
    return m;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_add: length mismatch");
    RatVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_sub: length mismatch");
    RatVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

RatVec vec_scale(const RatVec& a, const Rational& c) {
    RatVec b(a);
    for (auto& q : b) q *= c;
    return b;
}

bool vec_is_zero(const RatVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RatVec unit_vector(std::size_t n, std::size_t i) {
    RatVec e(n);
    e[i] = 1;
    return e;
}

}  // namespace hgo
