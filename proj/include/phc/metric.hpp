#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phc/forms.hpp"
#include "phc/structures.hpp"

namespace phc {

struct AnchorIsNull : UsageError {
    AnchorIsNull() : UsageError("metric_from_anchor: anchor is a null vector "
                                "(the quadruple X, J1X, J2X, J3X is dependent)") {}
};

inline bool is_hermitian(const BilinearForm& g, const Endomorphism& j) {
    return (j.transposed() * g.gram() + g.gram() * j).is_zero();
}

inline Mat frame_of(const PHTriple& t, const Vec& x) {
    return Mat::from_columns({x, t.j1().apply(x), t.j2().apply(x), t.j3().apply(x)});
}

/// The unique hermitian metric with Gram diag(1,1,-1,-1) in the frame
/// (X, J1X, J2X, J3X). Fails iff the quadruple is dependent, which by the
/// basis criterion means X is null for every hermitian metric.
inline std::optional<BilinearForm> try_metric_from_anchor(const PHTriple& t, const Vec& x) {
    Mat f = frame_of(t, x);
    if (f.det().is_zero()) return std::nullopt;
    Mat fi = f.inverse();
    BilinearForm g(fi.transposed() * Mat::diag({1, 1, -1, -1}) * fi);
    // contract checks; cannot fail for a valid triple
    if (!is_hermitian(g, t.j1()) || !is_hermitian(g, t.j2()) || !is_hermitian(g, t.j3()))
        throw std::logic_error("metric_from_anchor: hermitian identity violated");
    if (g.signature() != Signature{2, 2, 0})
        throw std::logic_error("metric_from_anchor: signature is not (2,2)");
    return g;
}

inline BilinearForm metric_from_anchor(const PHTriple& t, const Vec& x) {
    auto g = try_metric_from_anchor(t, x);
    if (!g) throw AnchorIsNull();
    return *g;
}

/// Deterministic anchor ladder: e1, e2, e3, e4, e1+e2, e1+e3, e1+e4.
inline std::vector<Vec> anchor_ladder(int n) {
    std::vector<Vec> l;
    for (int i = 0; i < n; ++i) l.push_back(Vec::unit(n, i));
    for (int i = 1; i < n; ++i) l.push_back(Vec::unit(n, 0) + Vec::unit(n, i));
    return l;
}

struct AnchoredMetric {
    BilinearForm g;
    Vec anchor;
};

/// First non-null rung of the anchor ladder wins; exhaustion is a hard error.
inline AnchoredMetric hermitian_metric(const PHTriple& t) {
    for (const auto& x : anchor_ladder(t.dim())) {
        if (auto g = try_metric_from_anchor(t, x)) return {std::move(*g), x};
    }
    throw UsageError("hermitian_metric: anchor ladder exhausted (every rung is null)");
}

/// g(X,Y) := (X,Y) + (J1X,J1Y) - (J2X,J2Y) - (J3X,J3Y) for a symmetric seed.
/// May come out degenerate (then the caller retries with another seed);
/// nondegenerate output is hermitian of signature (2,2).
inline std::optional<BilinearForm> averaged_metric(const PHTriple& t, const BilinearForm& seed) {
    const Mat& s = seed.gram();
    Mat j1 = t.j1(), j2 = t.j2(), j3 = t.j3();
    Mat g = s + j1.transposed() * s * j1 - j2.transposed() * s * j2 - j3.transposed() * s * j3;
    BilinearForm out(std::move(g));
    if (out.is_degenerate()) return std::nullopt;
    return out;
}

/// Deterministic seed ladder for the averaging construction.
inline BilinearForm averaged_metric_auto(const PHTriple& t) {
    for (const Mat& seed : {Mat::diag({1, 2, 3, 4}), Mat::diag({1, 3, 9, 27})}) {
        if (auto g = averaged_metric(t, BilinearForm(seed))) return *g;
    }
    throw UsageError("averaged_metric: both ladder seeds degenerate");
}

/// lambda != 0 with g = lambda * g', or nullopt when no such constant exists.
inline std::optional<Scalar> proportionality_check(const BilinearForm& g,
                                                   const BilinearForm& gp) {
    if (g.dim() != gp.dim()) return std::nullopt;
    std::optional<Scalar> lambda;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            const Scalar& a = g.gram().at(i, j);
            const Scalar& b = gp.gram().at(i, j);
            if (b.is_zero()) {
                if (!a.is_zero()) return std::nullopt;
                continue;
            }
            Scalar r = a / b;
            if (!lambda)
                lambda = r;
            else if (*lambda != r)
                return std::nullopt;
        }
    if (!lambda || lambda->is_zero()) return std::nullopt;
    return lambda;
}

inline bool is_null(const BilinearForm& g, const Vec& v) { return g.eval(v, v).is_zero(); }

/// (X, J1X, J2X, J3X) is a basis  <=>  X is not null. The left side is
/// what gets computed; the equivalence is the tested invariant.
inline bool basis_criterion(const PHTriple& t, const Vec& x) {
    return !frame_of(t, x).det().is_zero();
}

enum class PlaneTag { Definite, Lorentz, TotallyNullA, TotallyNullB, RankOne };

inline std::string to_string(PlaneTag t) {
    switch (t) {
        case PlaneTag::Definite: return "Definite";
        case PlaneTag::Lorentz: return "Lorentz";
        case PlaneTag::TotallyNullA: return "TotallyNullA";
        case PlaneTag::TotallyNullB: return "TotallyNullB";
        case PlaneTag::RankOne: return "RankOne";
    }
    return "?";
}

/// Compatible pair (J_x complex, J_y product), x ⊥ y.
struct AdaptedPair {
    Triple3 x;  // on the complex hyperboloid, <x,x> = 1
    Triple3 y;  // on the product hyperboloid, <y,y> = -1
};

struct PlaneClass {
    PlaneTag tag;
    // Adapted compatible structure, when one exists over the rationals.
    // Always present for totally-null and rank-one planes; for definite /
    // Lorentz planes it needs an equal-norm orthogonal pair, which exists
    // over Q only when a norm ratio is a perfect square.
    std::optional<AdaptedPair> adapted;
    std::optional<Vec> null_witness;  // N (rank one) or the null anchor N1
    std::optional<Vec> base_point;    // the non-null X of the construction
};

namespace detail {

/// Coefficients (c0, a1, a2, a3) with v = c0 X + a1 J1X + a2 J2X + a3 J3X.
inline std::optional<std::array<Scalar, 4>> expand_in_frame(const PHTriple& t,
                                                            const Vec& x, const Vec& v) {
    Mat f = frame_of(t, x);
    if (f.det().is_zero()) return std::nullopt;
    Vec c = f.inverse().apply(v);
    return std::array<Scalar, 4>{c[0], c[1], c[2], c[3]};
}

/// Deterministic search for a non-null vector in a subspace.
inline std::optional<Vec> find_non_null(const BilinearForm& g, const Subspace& w) {
    auto b = w.basis();
    std::vector<Vec> candidates = b;
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j) {
            candidates.push_back(b[i] + b[j]);
            candidates.push_back(b[i] - b[j]);
        }
    if (b.size() == 3) candidates.push_back(b[0] + b[1] + b[2]);
    for (const auto& v : candidates)
        if (!g.eval(v, v).is_zero()) return v;
    return std::nullopt;
}

/// Rational point with <y,y> = target on the line conditions <y,x> = 0,
/// searched over a small deterministic grid. nullopt when none is found
/// (such a point need not exist over Q).
inline std::optional<Triple3> complementary_point(const Triple3& x, const Scalar& target) {
    // basis of x-perp in the (1,2) inner product
    std::vector<Triple3> perp;
    auto add_if_perp = [&](Triple3 c) {
        if (Triple3::inner(x, c).is_zero()) perp.push_back(c);
    };
    // two independent generators of the orthogonal complement
    Triple3 g1{x.x2, x.x1, Scalar(0)}, g2{x.x3, Scalar(0), x.x1};
    Triple3 g3{Scalar(0), x.x3, -x.x2};
    for (const auto& c : {g1, g2, g3}) add_if_perp(c);
    // drop dependent generators
    std::vector<Triple3> basis;
    for (const auto& c : perp) {
        if (c.x1.is_zero() && c.x2.is_zero() && c.x3.is_zero()) continue;
        bool dep = false;
        for (const auto& d : basis) {
            // c parallel to d <=> all 2x2 minors vanish
            if ((c.x1 * d.x2 - c.x2 * d.x1).is_zero() &&
                (c.x1 * d.x3 - c.x3 * d.x1).is_zero() &&
                (c.x2 * d.x3 - c.x3 * d.x2).is_zero())
                dep = true;
        }
        if (!dep) basis.push_back(c);
        if (basis.size() == 2) break;
    }
    if (basis.size() < 2) return std::nullopt;
    const int range = 8;
    for (int den = 1; den <= 4; ++den)
        for (int s = -range; s <= range; ++s)
            for (int u = -range; u <= range; ++u) {
                if (s == 0 && u == 0) continue;
                Triple3 y{(Scalar(s) * basis[0].x1 + Scalar(u) * basis[1].x1) / Scalar(den),
                          (Scalar(s) * basis[0].x2 + Scalar(u) * basis[1].x2) / Scalar(den),
                          (Scalar(s) * basis[0].x3 + Scalar(u) * basis[1].x3) / Scalar(den)};
                if (y.lorentz_norm() == target) return y;
            }
    return std::nullopt;
}

}  // namespace detail

/// Lemma-style classification of a 2-plane W with an adapted compatible
/// structure. The tag is exact and scale-invariant; the adapted pair is
/// attached whenever it exists over the rationals (see PlaneClass).
inline PlaneClass classify_plane(const PHTriple& t, const BilinearForm& g, const Subspace& w) {
    if (w.dim() != 2 || w.ambient_dim() != t.dim())
        throw UsageError("classify_plane: need a 2-dimensional subspace of the algebra");
    if (!is_hermitian(g, t.j1()) || !is_hermitian(g, t.j2()))
        throw UsageError("classify_plane: metric is not hermitian for the triple");

    auto wb = w.basis();
    BilinearForm induced(g.induced_gram(wb));
    Signature sig = induced.signature();

    auto invariant_under = [&](const Endomorphism& j) {
        for (const auto& v : wb)
            if (!w.contains(j.apply(v))) return false;
        return true;
    };

    if (sig.zero == 2) {
        // totally null: adapted pair from any null anchor N1 in W and a
        // non-null X orthogonal to it
        Vec n1 = wb[0];
        // N1-perp = kernel of the row vector g(N1, .)
        Mat row(1, g.dim());
        for (int j = 0; j < g.dim(); ++j) row.at(0, j) = g.eval(n1, Vec::unit(g.dim(), j));
        Subspace perp = Subspace::span(g.dim(), row.nullspace());
        auto xo = detail::find_non_null(g, perp);
        if (!xo) throw std::logic_error("classify_plane: no non-null vector in N1-perp");
        auto coef = detail::expand_in_frame(t, *xo, n1);
        if (!coef || !(*coef)[0].is_zero())
            throw std::logic_error("classify_plane: null anchor not in the J-frame span");
        Scalar alpha = (*coef)[1], beta = (*coef)[2], gamma = (*coef)[3];
        if (alpha.is_zero()) throw std::logic_error("classify_plane: degenerate expansion");
        Triple3 x{1, 0, 0};
        Triple3 yhat{Scalar(0), beta / alpha, gamma / alpha};  // N1/alpha = J1 X + J_yhat X
        bool all_invariant = invariant_under(t.j1()) && invariant_under(t.j2()) &&
                             invariant_under(t.j3());
        if (all_invariant)
            return {PlaneTag::TotallyNullB, AdaptedPair{x, yhat}, n1, *xo};
        // the other null plane through N1 is the +1 eigenplane of
        // J3' = J_{x cross yhat}, whose restriction to W is the identity
        return {PlaneTag::TotallyNullA, AdaptedPair{x, Triple3::cross(x, yhat)}, n1, *xo};
    }

    if (sig.zero == 1) {
        // rank one: radical direction N, any non-null X in W
        auto rad = induced.gram().nullspace();
        if (rad.size() != 1) throw std::logic_error("classify_plane: rank-1 radical not a line");
        Vec n = rad[0][0] * wb[0] + rad[0][1] * wb[1];
        auto xo = detail::find_non_null(g, w);
        if (!xo) throw std::logic_error("classify_plane: rank-1 plane with no non-null vector");
        auto coef = detail::expand_in_frame(t, *xo, n);
        if (!coef || !(*coef)[0].is_zero())
            throw std::logic_error("classify_plane: radical not in the J-frame span");
        Scalar alpha = (*coef)[1], beta = (*coef)[2], gamma = (*coef)[3];
        if (alpha.is_zero()) throw std::logic_error("classify_plane: degenerate expansion");
        Triple3 x{1, 0, 0};
        Triple3 y{Scalar(0), -(beta / alpha), -(gamma / alpha)};  // N/alpha = J1 X - J_y X
        return {PlaneTag::RankOne, AdaptedPair{x, y}, n, *xo};
    }

    // nondegenerate: definite or Lorentz
    bool lorentz = (sig.positive == 1);
    auto xo = detail::find_non_null(g, w);
    if (!xo) throw std::logic_error("classify_plane: nondegenerate plane with no non-null vector");
    Vec xv = *xo;
    // orthogonal companion in W
    Vec other = (wb[0] == xv) ? wb[1] : wb[0];
    Scalar nx = g.eval(xv, xv);
    Vec vperp = other - (g.eval(xv, other) / nx) * xv;
    Scalar nv = g.eval(vperp, vperp);
    std::optional<AdaptedPair> adapted;
    // want Y orthogonal to X with g(Y,Y) = +-g(X,X); the scaling factor
    // exists over Q iff the norm ratio is a perfect square
    Scalar want = lorentz ? -(nx / nv) : nx / nv;
    if (auto tscale = want.sqrt_exact()) {
        Vec y = *tscale * vperp;
        auto coef = detail::expand_in_frame(t, xv, y);
        if (coef && (*coef)[0].is_zero()) {
            Triple3 x{(*coef)[1], (*coef)[2], (*coef)[3]};
            if (lorentz) {
                // x is on the product hyperboloid; find the complex partner
                if (auto yc = detail::complementary_point(x, Scalar(1)))
                    adapted = AdaptedPair{*yc, x};
            } else {
                if (auto yp = detail::complementary_point(x, Scalar(-1)))
                    adapted = AdaptedPair{x, *yp};
            }
        }
    }
    return {lorentz ? PlaneTag::Lorentz : PlaneTag::Definite, adapted, std::nullopt, xv};
}

struct NullCone3 {
    Vec n;                // radical generator of the induced form on W
    Subspace plane1;      // span(N, J1'N)
    Subspace plane_minus; // -1 eigenplane of J3'
    AdaptedPair adapted;  // the compatible pair with N = J1'X - J2'X
    Vec base_point;       // X
};

/// Null cone of a degenerate 3-space: null(W) = span(N, J1'N) ∪ {v : J3'v = -v}
/// for the adapted compatible structure with N = J1'X - J2'X.
inline NullCone3 null_cone_3space(const PHTriple& t, const BilinearForm& g, const Subspace& w) {
    if (w.dim() != 3 || w.ambient_dim() != t.dim())
        throw UsageError("null_cone_3space: need a 3-dimensional subspace");
    auto wb = w.basis();
    BilinearForm induced(g.induced_gram(wb));
    auto rad = induced.gram().nullspace();
    if (rad.size() != 1)
        throw UsageError("null_cone_3space: induced form must have a 1-dimensional radical");
    Vec n(w.ambient_dim());
    for (int k = 0; k < 3; ++k) n += rad[0][k] * wb[k];
    auto xo = detail::find_non_null(g, w);
    if (!xo) throw std::logic_error("null_cone_3space: no non-null vector in W");
    auto coef = detail::expand_in_frame(t, *xo, n);
    if (!coef || !(*coef)[0].is_zero())
        throw std::logic_error("null_cone_3space: radical not in the J-frame span");
    Scalar alpha = (*coef)[1], beta = (*coef)[2], gamma = (*coef)[3];
    if (alpha.is_zero()) throw std::logic_error("null_cone_3space: degenerate expansion");
    Triple3 x{1, 0, 0};
    Triple3 y{Scalar(0), -(beta / alpha), -(gamma / alpha)};  // N/alpha = J1 X - J_y X
    Endomorphism j3p = j_of(t, Triple3::cross(x, y));
    Subspace plane1 = Subspace::span(w.ambient_dim(), {n, t.j1().apply(n)});
    Mat shifted = j3p + Mat::identity(t.dim());
    Subspace plane_minus = Subspace::span(w.ambient_dim(), shifted.nullspace());
    return {n, plane1, plane_minus, AdaptedPair{x, y}, *xo};
}

}  // namespace phc
