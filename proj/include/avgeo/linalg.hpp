#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "avgeo/rational.hpp"

namespace avgeo {

using RatVec = std::vector<Rational>;

/// Dense exact-rational matrix, row major.
class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    RatMat(int rows, int cols, std::vector<Rational> data)
        : rows_(rows), cols_(cols), a_(std::move(data)) {
        if ((int)a_.size() != rows * cols) throw std::invalid_argument("RatMat: size mismatch");
    }

    static RatMat identity(int n) {
        RatMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMat from_rows(const std::vector<RatVec>& rows) {
        if (rows.empty()) return RatMat();
        RatMat m((int)rows.size(), (int)rows[0].size());
        for (int i = 0; i < m.rows_; ++i) {
            if ((int)rows[i].size() != m.cols_) throw std::invalid_argument("RatMat: ragged rows");
            for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RatMat from_cols(const std::vector<RatVec>& cols) {
        if (cols.empty()) return RatMat();
        RatMat m((int)cols[0].size(), (int)cols.size());
        for (int j = 0; j < m.cols_; ++j) {
            if ((int)cols[j].size() != m.rows_) throw std::invalid_argument("RatMat: ragged cols");
            for (int i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    RatVec row(int i) const {
        RatVec r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    RatVec col(int j) const {
        RatVec c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    RatMat transpose() const {
        RatMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMat operator*(const RatMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("RatMat: dimension mismatch in mul");
        RatMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& v = (*this)(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    RatVec operator*(const RatVec& v) const {
        if ((int)v.size() != cols_) throw std::invalid_argument("RatMat: dimension mismatch in apply");
        RatVec r(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    RatMat operator+(const RatMat& o) const {
        check_same_shape(o);
        RatMat r = *this;
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
        return r;
    }
    RatMat operator-(const RatMat& o) const {
        check_same_shape(o);
        RatMat r = *this;
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
        return r;
    }
    RatMat operator*(const Rational& s) const {
        RatMat r = *this;
        for (auto& v : r.a_) v *= s;
        return r;
    }

    bool operator==(const RatMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RatMat& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& v) { return v.is_zero(); });
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        return *this == identity(rows_);
    }

    /// Kronecker product.
    RatMat kron(const RatMat& o) const {
        RatMat r(rows_ * o.rows_, cols_ * o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if ((*this)(i, j).is_zero()) continue;
                for (int k = 0; k < o.rows_; ++k)
                    for (int l = 0; l < o.cols_; ++l)
                        r(i * o.rows_ + k, j * o.cols_ + l) = (*this)(i, j) * o(k, l);
            }
        return r;
    }

  private:
    void check_same_shape(const RatMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("RatMat: shape mismatch");
    }

    int rows_, cols_;
    std::vector<Rational> a_;
};

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("RatVec: size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline RatVec operator-(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("RatVec: size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline RatVec operator*(const Rational& s, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}
inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational r;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}
inline bool is_zero(const RatVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v.is_zero(); });
}

/// Reduced row echelon form in place; returns pivot column of each pivot row.
inline std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = Rational(1) / m(r, c);
        for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RatMat m) { return (int)rref(m).size(); }

/// Columns form a basis of ker(m); free columns taken leftmost first.
inline RatMat kernel_basis(RatMat m) {
    int n = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVec> cols;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(n);
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m((int)i, c);
        cols.push_back(v);
    }
    if (cols.empty()) return RatMat(n, 0);
    return RatMat::from_cols(cols);
}

inline RatMat inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    int n = m.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if ((int)pivots.size() != n || pivots[n - 1] != n - 1)
        throw std::domain_error("inverse: singular matrix");
    RatMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

/// Solves A x = b exactly; returns nullopt if inconsistent. For rank-deficient
/// systems returns the solution with free variables set to zero.
inline std::optional<RatVec> solve(const RatMat& A, const RatVec& b) {
    int n = A.cols();
    RatMat aug(A.rows(), n + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    RatVec x(n);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug((int)i, n);
    return x;
}

/// Solves A X = B columnwise; throws if any column is inconsistent.
inline RatMat solve_all(const RatMat& A, const RatMat& B) {
    RatMat X(A.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        auto x = solve(A, B.col(j));
        if (!x) throw std::domain_error("solve_all: inconsistent system");
        for (int i = 0; i < A.cols(); ++i) X(i, j) = (*x)[i];
    }
    return X;
}

/// Quotient of Q^n by the column span of `sub`: proj * section = id on the
/// quotient, ker(proj) = span(sub). The complement is chosen from standard
/// basis vectors, leftmost first, so results are deterministic.
struct QuotientMap {
    RatMat proj;    // (n-k) x n
    RatMat section; // n x (n-k)
};

inline QuotientMap quotient_by(const RatMat& sub, int n) {
    int k = sub.cols();
    if (k == 0) return {RatMat::identity(n), RatMat::identity(n)};
    // Find standard basis vectors extending span(sub) to all of Q^n.
    std::vector<RatVec> cols;
    for (int j = 0; j < k; ++j) cols.push_back(sub.col(j));
    std::vector<int> chosen;
    for (int e = 0; e < n && (int)cols.size() < n; ++e) {
        RatVec v(n);
        v[e] = 1;
        cols.push_back(v);
        if (rank(RatMat::from_cols(cols)) == (int)cols.size())
            chosen.push_back(e);
        else
            cols.pop_back();
    }
    if ((int)cols.size() != n) throw std::domain_error("quotient_by: sub columns dependent");
    RatMat M = RatMat::from_cols(cols);
    RatMat Minv = inverse(M);
    QuotientMap q;
    q.proj = RatMat(n - k, n);
    for (int i = 0; i < n - k; ++i)
        for (int j = 0; j < n; ++j) q.proj(i, j) = Minv(k + i, j);
    std::vector<RatVec> sec;
    for (int e : chosen) {
        RatVec v(n);
        v[e] = 1;
        sec.push_back(v);
    }
    q.section = RatMat::from_cols(sec);
    return q;
}

} // namespace avgeo
