#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phc/forms.hpp"
#include "phc/linalg.hpp"

namespace phc {

struct JacobiDefect {
    int i, j, k;     // basis triple, i < j < k
    Vec cyclic_sum;  // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
};

/// Raw structure constants keyed on i < j. Antisymmetry is structural:
/// brackets with i >= j are derived, never stored. A table is not yet a
/// Lie algebra; LieAlgebra's constructor enforces the Jacobi identity.
class BracketTable {
public:
    explicit BracketTable(int dim) : dim_(dim) {
        if (dim < 1) throw UsageError("BracketTable: dimension must be positive");
    }

    int dim() const { return dim_; }

    void set(int i, int j, Vec value) {
        if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
            throw UsageError("BracketTable: index out of range");
        if (i == j) throw UsageError("BracketTable: [x,x] is structurally zero");
        if (value.dim() != dim_) throw UsageError("BracketTable: value dimension mismatch");
        if (i > j) { std::swap(i, j); value = -value; }
        if (value.is_zero())
            entries_.erase({i, j});
        else
            entries_[{i, j}] = std::move(value);
    }

    Vec basis_bracket(int i, int j) const {
        if (i == j) return Vec(dim_);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = entries_.find({i, j});
        Vec v = it == entries_.end() ? Vec(dim_) : it->second;
        return flip ? -v : v;
    }

    Vec bracket(const Vec& u, const Vec& v) const {
        if (u.dim() != dim_ || v.dim() != dim_)
            throw UsageError("bracket: dimension mismatch");
        Vec r(dim_);
        for (const auto& [ij, w] : entries_) {
            auto [i, j] = ij;
            Scalar coef = u[i] * v[j] - u[j] * v[i];
            if (coef.is_zero()) continue;
            for (int k = 0; k < dim_; ++k) r[k] += coef * w[k];
        }
        return r;
    }

    /// Every basis triple whose Jacobi cyclic sum fails, with the sum.
    /// Empty result <=> the table defines a Lie algebra.
    std::vector<JacobiDefect> jacobi_defects() const {
        std::vector<JacobiDefect> bad;
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                for (int k = j + 1; k < dim_; ++k) {
                    Vec ei = Vec::unit(dim_, i), ej = Vec::unit(dim_, j), ek = Vec::unit(dim_, k);
                    Vec s = bracket(bracket(ei, ej), ek);
                    s += bracket(bracket(ej, ek), ei);
                    s += bracket(bracket(ek, ei), ej);
                    if (!s.is_zero()) bad.push_back({i, j, k, std::move(s)});
                }
        return bad;
    }

    const std::map<std::pair<int, int>, Vec>& entries() const { return entries_; }

    friend bool operator==(const BracketTable& a, const BracketTable& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    int dim_;
    std::map<std::pair<int, int>, Vec> entries_;
};

/// A validated Lie algebra: structure constants that passed the Jacobi
/// check at construction. Immutable afterwards.
class LieAlgebra {
public:
    LieAlgebra(BracketTable table, std::vector<std::string> basis_names)
        : table_(std::move(table)), names_(std::move(basis_names)) {
        if (static_cast<int>(names_.size()) != table_.dim())
            throw UsageError("LieAlgebra: basis name count mismatch");
        auto bad = table_.jacobi_defects();
        if (!bad.empty()) {
            std::string msg = "LieAlgebra: Jacobi identity fails at (" +
                              names_[bad[0].i] + "," + names_[bad[0].j] + "," +
                              names_[bad[0].k] + ")";
            throw UsageError(msg);
        }
    }

    static LieAlgebra abelian(int dim, std::vector<std::string> names) {
        return LieAlgebra(BracketTable(dim), std::move(names));
    }

    int dim() const { return table_.dim(); }
    const std::vector<std::string>& basis_names() const { return names_; }
    const BracketTable& table() const { return table_; }

    Vec bracket(const Vec& u, const Vec& v) const { return table_.bracket(u, v); }
    Vec basis_bracket(int i, int j) const { return table_.basis_bracket(i, j); }

    /// Matrix of ad_u, column j = [u, e_j].
    Mat adjoint(const Vec& u) const {
        Mat m(dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            Vec col = bracket(u, Vec::unit(dim(), j));
            for (int i = 0; i < dim(); ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    Subspace derived_subalgebra() const { return bracket_span(Subspace::full(dim()), Subspace::full(dim())); }

    Subspace center() const {
        // kernel of the stacked adjoint maps ad_{e_0}, ..., ad_{e_{n-1}}
        Mat stacked(dim() * dim(), dim());
        for (int i = 0; i < dim(); ++i) {
            Mat ad = adjoint(Vec::unit(dim(), i));
            for (int r = 0; r < dim(); ++r)
                for (int c = 0; c < dim(); ++c)
                    stacked.at(i * dim() + r, c) = ad.at(r, c);
        }
        return Subspace::span(dim(), stacked.nullspace());
    }

    /// g ⊇ g' ⊇ g'' ⊇ ..., listed until stable.
    std::vector<Subspace> derived_series() const {
        std::vector<Subspace> series{Subspace::full(dim())};
        while (true) {
            Subspace next = bracket_span(series.back(), series.back());
            if (next.dim() == series.back().dim()) break;
            series.push_back(next);
            if (next.dim() == 0) break;
        }
        return series;
    }

    /// g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ..., listed until stable.
    std::vector<Subspace> lower_central_series() const {
        std::vector<Subspace> series{Subspace::full(dim())};
        while (true) {
            Subspace next = bracket_span(Subspace::full(dim()), series.back());
            if (next.dim() == series.back().dim()) break;
            series.push_back(next);
            if (next.dim() == 0) break;
        }
        return series;
    }

    bool is_solvable() const { return derived_series().back().dim() == 0; }
    bool is_nilpotent() const { return lower_central_series().back().dim() == 0; }

    /// B(u,v) = trace(ad_u ad_v), as an exact Gram matrix.
    BilinearForm killing_form() const {
        std::vector<Mat> ads;
        ads.reserve(dim());
        for (int i = 0; i < dim(); ++i) ads.push_back(adjoint(Vec::unit(dim(), i)));
        Mat g(dim(), dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = i; j < dim(); ++j) {
                Scalar t = (ads[i] * ads[j]).trace();
                g.at(i, j) = t;
                g.at(j, i) = t;
            }
        return BilinearForm(std::move(g));
    }

    /// Span of [u, v] over bases of the two subspaces.
    Subspace bracket_span(const Subspace& a, const Subspace& b) const {
        std::vector<Vec> gens;
        for (const auto& u : a.basis())
            for (const auto& v : b.basis()) {
                Vec w = bracket(u, v);
                if (!w.is_zero()) gens.push_back(std::move(w));
            }
        return Subspace::span(dim(), gens);
    }

    /// Isomorphic copy with constants transported by P: columns of P are
    /// the new basis vectors in old coordinates. [u,v]_new = P^-1 [Pu, Pv].
    LieAlgebra change_of_basis(const Mat& p, std::vector<std::string> new_names = {}) const {
        if (!p.square() || p.rows() != dim())
            throw UsageError("change_of_basis: matrix must be n x n");
        Mat pinv = p.inverse();  // throws UsageError if singular
        BracketTable t(dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j) {
                Vec w = pinv.apply(bracket(p.column(i), p.column(j)));
                if (!w.is_zero()) t.set(i, j, std::move(w));
            }
        if (new_names.empty()) new_names = names_;
        return LieAlgebra(std::move(t), std::move(new_names));
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.table_ == b.table_ && a.names_ == b.names_;
    }

private:
    BracketTable table_;
    std::vector<std::string> names_;
};

}  // namespace phc
