#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phc/catalog.hpp"
#include "phc/search.hpp"

namespace phc {

/// Isomorphism-invariant fingerprint of a 4-dimensional Lie algebra.
/// Every field is preserved by change_of_basis; the conjugation-invariance
/// property tests rely on that.
struct Fingerprint {
    int dim_derived = 0;
    int dim_center = 0;
    int dim_second_derived = 0;
    bool solvable = false;
    bool nilpotent = false;
    bool derived_is_abelian = false;
    bool derived_is_heisenberg = false;
    bool decomposable_2_2 = false;  // splits as a sum of two 2-dim ideals
    Signature killing_signature;
    std::vector<int> lower_central_dims;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

    std::string str() const {
        std::string s = "derived=" + std::to_string(dim_derived) +
                        " center=" + std::to_string(dim_center) +
                        " second_derived=" + std::to_string(dim_second_derived) +
                        std::string(solvable ? " solvable" : " non-solvable") +
                        std::string(nilpotent ? " nilpotent" : "") +
                        std::string(derived_is_abelian ? " derived-abelian" : "") +
                        std::string(derived_is_heisenberg ? " derived-heisenberg" : "") +
                        std::string(decomposable_2_2 ? " decomposable-2+2" : "") +
                        " killing=" + killing_signature.str() + " lcs=[";
        for (size_t i = 0; i < lower_central_dims.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(lower_central_dims[i]);
        }
        return s + "]";
    }
};

namespace detail {

inline bool subspace_abelian(const LieAlgebra& alg, const Subspace& w) {
    auto b = w.basis();
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            if (!alg.bracket(b[i], b[j]).is_zero()) return false;
    return true;
}

/// Centralizer {v : [v, w] = 0 for all w in W}.
inline Subspace centralizer(const LieAlgebra& alg, const Subspace& w) {
    auto b = w.basis();
    if (b.empty()) return Subspace::full(alg.dim());
    Mat stacked(static_cast<int>(b.size()) * alg.dim(), alg.dim());
    for (size_t k = 0; k < b.size(); ++k) {
        Mat ad = alg.adjoint(b[k]);  // [w_k, v] = ad(w_k) v; want the kernel
        for (int r = 0; r < alg.dim(); ++r)
            for (int c = 0; c < alg.dim(); ++c)
                stacked.at(static_cast<int>(k) * alg.dim() + r, c) = ad.at(r, c);
    }
    return Subspace::span(alg.dim(), stacked.nullspace());
}

/// Exact test: does the algebra split as a direct sum of two 2-dimensional
/// ideals? Decided through basis-invariant data only, case by dim g':
///   0: abelian, always splits.
///   1: splits iff g' misses the center and its centralizer is abelian of
///      dimension 3 (then g = aff(R) + R^2).
///   2: splits iff g' is abelian and the adjoint action on g' has two
///      distinct rational invariant lines with independent eigenvalue
///      functionals (then g = aff(R) + aff(R) up to the basis change the
///      construction provides).
///   3,4: a 2+2 splitting forces dim g' <= 2, so never.
inline bool decomposable_2_2(const LieAlgebra& alg) {
    Subspace der = alg.derived_subalgebra();
    if (der.dim() == 0) return true;
    if (der.dim() == 1) {
        Subspace cen = alg.center();
        if (der.intersect(cen).dim() != 0) return false;
        Subspace c = centralizer(alg, der);
        return c.dim() == 3 && subspace_abelian(alg, c);
    }
    if (der.dim() != 2) return false;
    if (!subspace_abelian(alg, der)) return false;
    // matrices of ad(e_i) restricted to g' in the canonical reduced basis
    auto w = der.basis();
    Mat frame = Mat::from_columns({w[0], w[1]});
    // solve frame * coords = image for each generator image
    std::vector<Mat> action;
    for (int i = 0; i < alg.dim(); ++i) {
        Mat m(2, 2);
        for (int j = 0; j < 2; ++j) {
            Vec img = alg.bracket(Vec::unit(alg.dim(), i), w[j]);
            // coordinates of img in (w0, w1): least-squares-free exact solve
            // via the 4x2 system; img is guaranteed to lie in g'
            Mat aug(alg.dim(), 3);
            for (int r = 0; r < alg.dim(); ++r) {
                aug.at(r, 0) = frame.at(r, 0);
                aug.at(r, 1) = frame.at(r, 1);
                aug.at(r, 2) = img[r];
            }
            aug.rref();
            m.at(0, j) = aug.at(0, 2);
            m.at(1, j) = aug.at(1, 2);
        }
        action.push_back(std::move(m));
    }
    // find a non-scalar member; a scalar family cannot separate two lines
    int pivot = -1;
    for (int i = 0; i < alg.dim(); ++i) {
        const Mat& m = action[i];
        if (!m.at(0, 1).is_zero() || !m.at(1, 0).is_zero() || m.at(0, 0) != m.at(1, 1)) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) return false;
    const Mat& m = action[pivot];
    Scalar tr = m.at(0, 0) + m.at(1, 1);
    Scalar det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    Scalar disc = tr * tr - 4 * det;
    auto sq = disc.sqrt_exact();
    if (!sq || sq->is_zero()) return false;  // no two distinct rational eigenlines
    Scalar half(1, 2);
    Scalar l1 = (tr + *sq) * half, l2 = (tr - *sq) * half;
    auto eigline = [&](const Scalar& l) -> Vec {
        Mat k = m;
        k.at(0, 0) -= l;
        k.at(1, 1) -= l;
        auto ns = k.nullspace();
        return ns.at(0);
    };
    Vec v1 = eigline(l1), v2 = eigline(l2);
    // eigenvalue functionals on the generators; independent iff some 2x2
    // minor of the value table is nonzero
    std::vector<Scalar> f1, f2;
    for (int i = 0; i < alg.dim(); ++i) {
        const Mat& a = action[i];
        // a v = lambda v on an eigenline; read lambda off a nonzero coord
        auto eval = [&](const Vec& v) {
            Vec av(2);
            av[0] = a.at(0, 0) * v[0] + a.at(0, 1) * v[1];
            av[1] = a.at(1, 0) * v[0] + a.at(1, 1) * v[1];
            return v[0].is_zero() ? av[1] / v[1] : av[0] / v[0];
        };
        f1.push_back(eval(v1));
        f2.push_back(eval(v2));
    }
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = i + 1; j < alg.dim(); ++j)
            if (!(f1[i] * f2[j] - f1[j] * f2[i]).is_zero()) return true;
    return false;
}

}  // namespace detail

inline Fingerprint fingerprint(const LieAlgebra& alg) {
    if (alg.dim() != 4) throw UsageError("fingerprint: algebra must have dimension 4");
    Fingerprint fp;
    Subspace der = alg.derived_subalgebra();
    fp.dim_derived = der.dim();
    fp.dim_center = alg.center().dim();
    fp.dim_second_derived = alg.bracket_span(der, der).dim();
    fp.solvable = alg.is_solvable();
    fp.nilpotent = alg.is_nilpotent();
    fp.derived_is_abelian = detail::subspace_abelian(alg, der);
    // Heisenberg derived algebra: 3-dimensional with a 1-dimensional
    // commutator that is central inside g'
    Subspace der2 = alg.bracket_span(der, der);
    fp.derived_is_heisenberg = der.dim() == 3 && der2.dim() == 1 &&
                               alg.bracket_span(der, der2).dim() == 0;
    fp.decomposable_2_2 = detail::decomposable_2_2(alg);
    fp.killing_signature = alg.killing_form().signature();
    for (const auto& s : alg.lower_central_series()) fp.lower_central_dims.push_back(s.dim());
    return fp;
}

struct MatchResult {
    std::vector<CatalogId> candidates;  // families with a grid sample match
    std::optional<SearchResult> evidence;
};

/// Fingerprints of a parameterized family over a grid (deduplicated).
inline std::vector<Fingerprint> family_fingerprints(CatalogId id,
                                                    const std::vector<Scalar>& grid) {
    std::vector<Fingerprint> out;
    auto push = [&](const Fingerprint& fp) {
        for (const auto& f : out)
            if (f == fp) return;
        out.push_back(fp);
    };
    switch (id) {
        case CatalogId::PHC6:
        case CatalogId::PHC7:
            for (const auto& a : grid)
                for (const auto& b : grid)
                    push(fingerprint(phc_entry(id, {{"a", a}, {"b", b}}).algebra));
            break;
        case CatalogId::PHC9:
        case CatalogId::PHC10:
            for (const auto& a : grid)
                for (const auto& b : grid)
                    for (const auto& c : grid) {
                        if (c.is_zero()) continue;
                        push(fingerprint(phc_entry(id, {{"a", a}, {"b", b}, {"c", c}}).algebra));
                    }
            break;
        default:
            push(fingerprint(phc_entry(id).algebra));
    }
    return out;
}

/// Candidate PHC families whose fingerprint set (over the grid) contains
/// the input's fingerprint. A candidate set, not an isomorphism verdict:
/// parameter-level isomorphism inside families is intentionally out of
/// scope. Optionally attaches search evidence.
inline MatchResult match_family(const LieAlgebra& alg, bool attach_evidence = false,
                                const SearchConfig& cfg = {},
                                const std::vector<Scalar>& grid = default_grid()) {
    if (alg.dim() != 4) throw UsageError("match_family: algebra must have dimension 4");
    Fingerprint fp = fingerprint(alg);
    MatchResult res;
    for (CatalogId id : {CatalogId::PHC1, CatalogId::PHC2, CatalogId::PHC3, CatalogId::PHC4,
                         CatalogId::PHC5, CatalogId::PHC6, CatalogId::PHC7, CatalogId::PHC8,
                         CatalogId::PHC9, CatalogId::PHC10}) {
        for (const auto& f : family_fingerprints(id, grid))
            if (f == fp) {
                res.candidates.push_back(id);
                break;
            }
    }
    if (attach_evidence && !res.candidates.empty()) res.evidence = search_structure(alg, cfg);
    return res;
}

}  // namespace phc
