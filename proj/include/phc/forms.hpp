#pragma once

#include <tuple>

#include "phc/linalg.hpp"

namespace phc {

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
    std::string str() const {
        return "(" + std::to_string(positive) + "," + std::to_string(negative) +
               "," + std::to_string(zero) + ")";
    }
};

/// Symmetric bilinear form given by its exact Gram matrix.
class BilinearForm {
public:
    explicit BilinearForm(Mat gram) : gram_(std::move(gram)) {
        if (!gram_.square()) throw UsageError("BilinearForm: Gram matrix must be square");
        for (int i = 0; i < gram_.rows(); ++i)
            for (int j = i + 1; j < gram_.cols(); ++j)
                if (gram_.at(i, j) != gram_.at(j, i))
                    throw UsageError("BilinearForm: Gram matrix must be symmetric");
        sig_ = compute_signature(gram_);
    }

    int dim() const { return gram_.rows(); }
    const Mat& gram() const { return gram_; }
    const Signature& signature() const { return sig_; }

    Scalar eval(const Vec& u, const Vec& v) const {
        if (u.dim() != dim() || v.dim() != dim())
            throw UsageError("BilinearForm: dimension mismatch");
        Scalar s = 0;
        for (int i = 0; i < dim(); ++i) {
            if (u[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j)
                s += u[i] * gram_.at(i, j) * v[j];
        }
        return s;
    }

    bool is_degenerate() const { return sig_.zero > 0; }

    /// Pullback along P (columns of P = new basis in old coordinates).
    BilinearForm pullback(const Mat& p) const {
        return BilinearForm(p.transposed() * gram_ * p);
    }

    /// Gram matrix of the form induced on the span of the given vectors.
    Mat induced_gram(const std::vector<Vec>& vs) const {
        Mat g(static_cast<int>(vs.size()), static_cast<int>(vs.size()));
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) g.at(i, j) = eval(vs[i], vs[j]);
        return g;
    }

    friend bool operator==(const BilinearForm& a, const BilinearForm& b) {
        return a.gram_ == b.gram_;
    }

    /// Exact signature by symmetric congruence reduction (Lagrange),
    /// never by eigenvalues. A hyperbolic 2x2 block with zero diagonal is
    /// broken by the congruence e_i -> e_i + e_j first.
    static Signature compute_signature(const Mat& gram) {
        Mat g = gram;
        int n = g.rows();
        std::vector<bool> done(n, false);
        Signature sig;
        for (int step = 0; step < n; ++step) {
            int p = -1;
            for (int i = 0; i < n; ++i)
                if (!done[i] && !g.at(i, i).is_zero()) { p = i; break; }
            if (p < 0) {
                int bi = -1, bj = -1;
                for (int i = 0; i < n && bi < 0; ++i) {
                    if (done[i]) continue;
                    for (int j = i + 1; j < n; ++j)
                        if (!done[j] && !g.at(i, j).is_zero()) { bi = i; bj = j; break; }
                }
                if (bi < 0) break;  // remaining block is zero
                // congruence by e_bi -> e_bi + e_bj gives a nonzero diagonal
                for (int j = 0; j < n; ++j) g.at(bi, j) += g.at(bj, j);
                for (int i = 0; i < n; ++i) g.at(i, bi) += g.at(i, bj);
                p = bi;
            }
            Scalar d = g.at(p, p);
            if (d.sign() > 0) ++sig.positive; else ++sig.negative;
            for (int i = 0; i < n; ++i) {
                if (i == p || done[i] || g.at(i, p).is_zero()) continue;
                Scalar f = g.at(i, p) / d;
                for (int j = 0; j < n; ++j) g.at(i, j) -= f * g.at(p, j);
                for (int j = 0; j < n; ++j) g.at(j, i) -= f * g.at(j, p);
            }
            done[p] = true;
        }
        sig.zero = n - sig.positive - sig.negative;
        return sig;
    }

private:
    Mat gram_;
    Signature sig_;
};

}  // namespace phc
