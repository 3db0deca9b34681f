#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "phc/scalar.hpp"

namespace phc {

/// Coordinate vector in the distinguished basis.
class Vec {
public:
    Vec() = default;
    explicit Vec(int n) : c_(n) {}
    Vec(std::initializer_list<Scalar> xs) : c_(xs) {}
    explicit Vec(std::vector<Scalar> xs) : c_(std::move(xs)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    Scalar& operator[](int i) { return c_[i]; }
    const Scalar& operator[](int i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }

    Vec& operator+=(const Vec& o) {
        check_dim(o);
        for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_dim(o);
        for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(const Scalar& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const Scalar& s, Vec v) { return v *= s; }
    Vec operator-() const {
        Vec r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }

    static Vec unit(int n, int k) {
        Vec e(n);
        e[k] = 1;
        return e;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ", ";
            s += c_[i].str();
        }
        return s + ")";
    }

private:
    void check_dim(const Vec& o) const {
        if (o.dim() != dim()) throw UsageError("Vec: dimension mismatch");
    }
    std::vector<Scalar> c_;
};

/// Dense exact matrix, row-major. Column convention throughout: column j
/// holds the image of basis vector e_j, so apply(v) = M v.
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat zero(int n) { return Mat(n, n); }
    static Mat diag(std::initializer_list<Scalar> d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        int i = 0;
        for (const auto& x : d) { m.at(i, i) = x; ++i; }
        return m;
    }
    static Mat from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows.begin()->size()) : 0;
        Mat m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c) throw UsageError("Mat: ragged rows");
            int j = 0;
            for (const auto& x : row) m.at(i, j++) = x;
            ++i;
        }
        return m;
    }
    static Mat from_columns(const std::vector<Vec>& cols) {
        if (cols.empty()) return Mat();
        Mat m(cols[0].dim(), static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (cols[j].dim() != m.rows()) throw UsageError("Mat: ragged columns");
            for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }

    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec column(int j) const {
        Vec v(r_);
        for (int i = 0; i < r_; ++i) v[i] = at(i, j);
        return v;
    }
    Vec row(int i) const {
        Vec v(c_);
        for (int j = 0; j < c_; ++j) v[j] = at(i, j);
        return v;
    }

    bool is_zero() const {
        for (const auto& x : a_) if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const Scalar& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Scalar& s, Mat m) { return m *= s; }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw UsageError("Mat: product dimension mismatch");
        Mat r(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.c_; ++j)
                    r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        if (v.dim() != c_) throw UsageError("Mat: apply dimension mismatch");
        Vec r(r_);
        for (int j = 0; j < c_; ++j) {
            if (v[j].is_zero()) continue;
            for (int i = 0; i < r_; ++i) r[i] += at(i, j) * v[j];
        }
        return r;
    }

    Mat transposed() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    /// Reduced row-echelon form in place; returns pivot columns.
    /// Pivot choice is the leftmost nonzero in the first unreduced row,
    /// so the result is canonical for a given row span.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int p = -1;
            for (int i = row; i < r_; ++i)
                if (!at(i, col).is_zero()) { p = i; break; }
            if (p < 0) continue;
            if (p != row)
                for (int j = 0; j < c_; ++j) std::swap(at(p, j), at(row, j));
            Scalar inv = Scalar(1) / at(row, col);
            for (int j = 0; j < c_; ++j) at(row, j) *= inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                Scalar f = at(i, col);
                for (int j = 0; j < c_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Mat m = *this;
        return static_cast<int>(m.rref().size());
    }

    Scalar det() const {
        if (!square()) throw UsageError("Mat: det of non-square matrix");
        Mat m = *this;
        Scalar d = 1;
        for (int col = 0; col < c_; ++col) {
            int p = -1;
            for (int i = col; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { p = i; break; }
            if (p < 0) return Scalar(0);
            if (p != col) {
                for (int j = 0; j < c_; ++j) std::swap(m.at(p, j), m.at(col, j));
                d = -d;
            }
            d *= m.at(col, col);
            Scalar inv = Scalar(1) / m.at(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                Scalar f = m.at(i, col) * inv;
                for (int j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        return d;
    }

    /// Inverse by Gauss-Jordan; throws UsageError on singular input.
    Mat inverse() const {
        if (!square()) throw UsageError("Mat: inverse of non-square matrix");
        Mat aug(r_, 2 * c_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_ + i) = 1;
        }
        auto piv = aug.rref();
        if (static_cast<int>(piv.size()) != r_ || piv.back() >= c_)
            throw UsageError("Mat: singular matrix has no inverse");
        Mat inv(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
        return inv;
    }

    /// Basis of the right null space, as canonical RREF-derived vectors.
    std::vector<Vec> nullspace() const {
        Mat m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(c_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<Vec> basis;
        for (int j = 0; j < c_; ++j) {
            if (is_pivot[j]) continue;
            Vec v(c_);
            v[j] = 1;
            for (size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -m.at(static_cast<int>(r), j);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Scalar trace() const {
        if (!square()) throw UsageError("Mat: trace of non-square matrix");
        Scalar t = 0;
        for (int i = 0; i < r_; ++i) t += at(i, i);
        return t;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < r_; ++i) {
            s += "[";
            for (int j = 0; j < c_; ++j) {
                if (j) s += ", ";
                s += at(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    void check_same(const Mat& o) const {
        if (o.r_ != r_ || o.c_ != c_) throw UsageError("Mat: dimension mismatch");
    }
    int r_, c_;
    std::vector<Scalar> a_;
};

/// Subspace of Q^n, stored as a canonical reduced row-echelon basis.
class Subspace {
public:
    explicit Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    static Subspace span(int ambient_dim, const std::vector<Vec>& generators) {
        Subspace s(ambient_dim);
        if (generators.empty()) return s;
        Mat m(static_cast<int>(generators.size()), ambient_dim);
        for (int i = 0; i < m.rows(); ++i) {
            if (generators[i].dim() != ambient_dim)
                throw UsageError("Subspace: generator dimension mismatch");
            for (int j = 0; j < ambient_dim; ++j) m.at(i, j) = generators[i][j];
        }
        auto piv = m.rref();
        Mat b(static_cast<int>(piv.size()), ambient_dim);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < ambient_dim; ++j) b.at(i, j) = m.at(i, j);
        s.basis_ = std::move(b);
        return s;
    }

    static Subspace full(int ambient_dim) {
        std::vector<Vec> gens;
        for (int i = 0; i < ambient_dim; ++i) gens.push_back(Vec::unit(ambient_dim, i));
        return span(ambient_dim, gens);
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    Vec basis_vector(int i) const { return basis_.row(i); }
    std::vector<Vec> basis() const {
        std::vector<Vec> b;
        for (int i = 0; i < dim(); ++i) b.push_back(basis_.row(i));
        return b;
    }

    bool contains(const Vec& v) const {
        if (v.dim() != ambient_) throw UsageError("Subspace: dimension mismatch");
        // reduce v against the echelon basis
        Vec w = v;
        for (int i = 0; i < dim(); ++i) {
            int lead = -1;
            for (int j = 0; j < ambient_; ++j)
                if (!basis_.at(i, j).is_zero()) { lead = j; break; }
            if (lead < 0) continue;
            if (!w[lead].is_zero()) {
                Scalar f = w[lead] / basis_.at(i, lead);
                for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
            }
        }
        return w.is_zero();
    }

    bool contains(const Subspace& other) const {
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_vector(i))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    Subspace sum(const Subspace& other) const {
        auto gens = basis();
        for (const auto& v : other.basis()) gens.push_back(v);
        return span(ambient_, gens);
    }

    Subspace intersect(const Subspace& other) const {
        // Zassenhaus-free route: x in both spans <=> x = A^T a = B^T b;
        // solve [A^T | -B^T] kernel and read off the A part.
        if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
        Mat m(ambient_, dim() + other.dim());
        for (int i = 0; i < ambient_; ++i) {
            for (int j = 0; j < dim(); ++j) m.at(i, j) = basis_.at(j, i);
            for (int j = 0; j < other.dim(); ++j)
                m.at(i, dim() + j) = -other.basis_.at(j, i);
        }
        std::vector<Vec> gens;
        for (const auto& k : m.nullspace()) {
            Vec x(ambient_);
            for (int j = 0; j < dim(); ++j)
                for (int i = 0; i < ambient_; ++i)
                    x[i] += k[j] * basis_.at(j, i);
            gens.push_back(std::move(x));
        }
        return span(ambient_, gens);
    }

private:
    int ambient_;
    Mat basis_;  // rows form the reduced basis
};

}  // namespace phc
