#ifndef COXCELL_LINALG_HPP
#define COXCELL_LINALG_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "coxcell/errors.hpp"

namespace coxcell {

template <class S>
using Vec = std::vector<S>;

// Dense square-ish matrix, row major. Sizes here are the graph rank, so no
// effort goes into blocking or storage tricks.
template <class S>
class Mat {
  public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    S& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const S& v = a(i, k);
                if (v.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) r(i, j) += v * b(k, j);
            }
        return r;
    }

    Vec<S> apply(const Vec<S>& v) const {
        Vec<S> r(rows_, S(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!a_[i * cols_ + j].is_zero()) r[i] += a_[i * cols_ + j] * v[j];
        return r;
    }

    Vec<S> column(size_t j) const {
        Vec<S> r(rows_);
        for (size_t i = 0; i < rows_; ++i) r[i] = a_[i * cols_ + j];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.a_.size(); ++i)
            if (!(a.a_[i] == b.a_[i])) return false;
        return true;
    }

    bool is_identity() const {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) {
                if (i == j) {
                    if (!((*this)(i, j) == S(1))) return false;
                } else if (!(*this)(i, j).is_zero()) {
                    return false;
                }
            }
        return true;
    }

    std::string key() const {
        std::string k;
        for (const auto& v : a_) {
            k += v.key();
            k += ';';
        }
        return k;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

template <class S>
Vec<S> operator+(Vec<S> a, const Vec<S>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
template <class S>
Vec<S> operator-(Vec<S> a, const Vec<S>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
template <class S>
Vec<S> operator*(const S& c, Vec<S> v) {
    for (auto& x : v) x *= c;
    return v;
}
template <class S>
Vec<S> negate(Vec<S> v) {
    for (auto& x : v) x = -x;
    return v;
}
template <class S>
bool vec_eq(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}
template <class S>
bool vec_is_zero(const Vec<S>& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}
// Lexicographic order on coordinate vectors; used only for canonical ordering.
template <class S>
bool vec_lex_less(const Vec<S>& a, const Vec<S>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int s = (a[i] - b[i]).sign();
        if (s != 0) return s < 0;
    }
    return a.size() < b.size();
}
template <class S>
std::string vec_key(const Vec<S>& v) {
    std::string k;
    for (const auto& x : v) {
        k += x.key();
        k += ',';
    }
    return k;
}

// Rank by Gaussian elimination; mutation-free interface.
template <class S>
size_t matrix_rank(Mat<S> m) {
    size_t rank = 0;
    size_t rows = m.rows(), cols = m.cols();
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
        S inv = m(rank, col).inverse();
        for (size_t i = rank + 1; i < rows; ++i) {
            if (m(i, col).is_zero()) continue;
            S f = m(i, col) * inv;
            for (size_t j = col; j < cols; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Solve A * X = B for square A; throws on singular input.
template <class S>
Mat<S> solve(Mat<S> a, Mat<S> b) {
    size_t n = a.rows();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw Error("singular linear system");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            for (size_t j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(col, j));
        }
        S inv = a(col, col).inverse();
        for (size_t j = 0; j < n; ++j) a(col, j) *= inv;
        for (size_t j = 0; j < b.cols(); ++j) b(col, j) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            S f = a(i, col);
            for (size_t j = 0; j < n; ++j) a(i, j) -= f * a(col, j);
            for (size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
        }
    }
    return b;
}

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

// Symmetric Gaussian reduction with diagonal pivoting. A symmetric matrix is
// positive semidefinite iff the reduction never sees a negative pivot and any
// all-zero-diagonal remainder is the zero block.
template <class S>
Definiteness definiteness(Mat<S> m) {
    size_t n = m.rows();
    std::vector<bool> done(n, false);
    bool definite = true;
    for (size_t step = 0; step < n; ++step) {
        size_t piv = n;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            int s = m(i, i).sign();
            if (s < 0) return Definiteness::Indefinite;
            if (s > 0 && piv == n) piv = i;
        }
        if (piv == n) {
            // Remaining diagonal is zero: semidefinite iff remainder is zero.
            for (size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                definite = false;
                for (size_t j = 0; j < n; ++j)
                    if (!done[j] && !m(i, j).is_zero()) return Definiteness::Indefinite;
            }
            break;
        }
        S inv = m(piv, piv).inverse();
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || i == piv || m(i, piv).is_zero()) continue;
            S f = m(i, piv) * inv;
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) m(i, j) -= f * m(piv, j);
        }
        done[piv] = true;
    }
    return definite ? Definiteness::PositiveDefinite : Definiteness::PositiveSemidefinite;
}

// Leading principal minors, used by the spherical test in exact mode.
template <class S>
std::vector<S> leading_principal_minors(const Mat<S>& m) {
    size_t n = m.rows();
    std::vector<S> minors;
    for (size_t k = 1; k <= n; ++k) {
        Mat<S> sub(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        // determinant by fraction-free-ish elimination over the field
        S det(1);
        bool zero = false;
        for (size_t col = 0; col < k; ++col) {
            size_t piv = col;
            while (piv < k && sub(piv, col).is_zero()) ++piv;
            if (piv == k) { zero = true; break; }
            if (piv != col) {
                for (size_t j = 0; j < k; ++j) std::swap(sub(piv, j), sub(col, j));
                det = -det;
            }
            det *= sub(col, col);
            S inv = sub(col, col).inverse();
            for (size_t i = col + 1; i < k; ++i) {
                if (sub(i, col).is_zero()) continue;
                S f = sub(i, col) * inv;
                for (size_t j = col; j < k; ++j) sub(i, j) -= f * sub(col, j);
            }
        }
        minors.push_back(zero ? S(0) : det);
    }
    return minors;
}

} // namespace coxcell

#endif
