#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "phc/lie.hpp"

namespace phc {

using Endomorphism = Mat;  // column j = image of basis vector e_j

enum class StructureKind { Complex, Product };

inline bool is_complex_structure(const Endomorphism& j) {
    if (!j.square()) return false;
    return (j * j) == -Mat::identity(j.rows());
}

inline bool is_product_structure(const Endomorphism& j) {
    if (!j.square()) return false;
    Mat id = Mat::identity(j.rows());
    return (j * j) == id && j != id && j != -id;
}

enum class TripleIdentity {
    ComplexSquare,      // j1^2 = -I
    ProductSquare,      // j2^2 = I
    ProductNotIdentity, // j2 != +-I
    Anticommute,        // j1 j2 + j2 j1 = 0
};

inline std::string to_string(TripleIdentity id) {
    switch (id) {
        case TripleIdentity::ComplexSquare: return "j1^2 = -1";
        case TripleIdentity::ProductSquare: return "j2^2 = 1";
        case TripleIdentity::ProductNotIdentity: return "j2 != +-1";
        case TripleIdentity::Anticommute: return "j1 j2 = -j2 j1";
    }
    return "?";
}

/// Anticommuting pair of a complex and a product structure. j3 = j1 j2 is
/// always derived, never stored, so j3 = j1 j2 cannot be violated.
class PHTriple {
public:
    const Endomorphism& j1() const { return j1_; }
    const Endomorphism& j2() const { return j2_; }
    Endomorphism j3() const { return j1_ * j2_; }
    int dim() const { return j1_.rows(); }

    /// Which of the four defining identities fail; empty means valid.
    static std::vector<TripleIdentity> violations(const Endomorphism& j1,
                                                  const Endomorphism& j2) {
        std::vector<TripleIdentity> bad;
        if (!j1.square() || !j2.square() || j1.rows() != j2.rows())
            throw UsageError("PHTriple: endomorphisms must be square and same size");
        int n = j1.rows();
        Mat id = Mat::identity(n);
        if (j1 * j1 != -id) bad.push_back(TripleIdentity::ComplexSquare);
        if (j2 * j2 != id) bad.push_back(TripleIdentity::ProductSquare);
        if (j2 == id || j2 == -id) bad.push_back(TripleIdentity::ProductNotIdentity);
        if (!(j1 * j2 + j2 * j1).is_zero()) bad.push_back(TripleIdentity::Anticommute);
        return bad;
    }

    static PHTriple make(Endomorphism j1, Endomorphism j2) {
        auto bad = violations(j1, j2);
        if (!bad.empty()) {
            std::string msg = "PHTriple: identities failed:";
            for (auto v : bad) msg += " [" + to_string(v) + "]";
            throw UsageError(msg);
        }
        return PHTriple(std::move(j1), std::move(j2));
    }

    static std::optional<PHTriple> try_make(Endomorphism j1, Endomorphism j2) {
        if (!violations(j1, j2).empty()) return std::nullopt;
        return PHTriple(std::move(j1), std::move(j2));
    }

    friend bool operator==(const PHTriple& a, const PHTriple& b) {
        return a.j1_ == b.j1_ && a.j2_ == b.j2_;
    }

private:
    PHTriple(Endomorphism j1, Endomorphism j2) : j1_(std::move(j1)), j2_(std::move(j2)) {}
    Endomorphism j1_, j2_;
};

/// N(X,Y) = [JX,JY] - J[X,JY] - J[JX,Y] +- [X,Y]; the last sign is minus
/// for a complex structure and plus for a product structure.
inline Vec nijenhuis(const LieAlgebra& alg, const Endomorphism& j, StructureKind kind,
                     const Vec& x, const Vec& y) {
    if (j.rows() != alg.dim() || x.dim() != alg.dim() || y.dim() != alg.dim())
        throw UsageError("nijenhuis: dimension mismatch");
    Vec jx = j.apply(x), jy = j.apply(y);
    Vec n = alg.bracket(jx, jy);
    n -= j.apply(alg.bracket(x, jy));
    n -= j.apply(alg.bracket(jx, y));
    Vec br = alg.bracket(x, y);
    if (kind == StructureKind::Complex)
        n -= br;
    else
        n += br;
    return n;
}

/// N is bilinear and antisymmetric, so vanishing on basis pairs i < j is
/// vanishing identically.
inline bool is_integrable(const LieAlgebra& alg, const Endomorphism& j, StructureKind kind) {
    int n = alg.dim();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!nijenhuis(alg, j, kind, Vec::unit(n, a), Vec::unit(n, b)).is_zero())
                return false;
    return true;
}

/// Single-pair integrability test: when (X, JX, Y, JY) is a basis, N = 0
/// everywhere iff N(X,Y) = 0. The basis precondition is checked.
inline bool shortcut_integrable(const LieAlgebra& alg, const Endomorphism& j,
                                StructureKind kind, const Vec& x, const Vec& y) {
    if (alg.dim() != 4) throw UsageError("shortcut_integrable: needs dimension 4");
    Mat frame = Mat::from_columns({x, j.apply(x), y, j.apply(y)});
    if (frame.det().is_zero())
        throw UsageError("shortcut_integrable: (X, JX, Y, JY) is not a basis");
    return nijenhuis(alg, j, kind, x, y).is_zero();
}

/// Coefficients of J_x = x1 J1 + x2 J2 + x3 J3 in the span of a triple.
struct Triple3 {
    Scalar x1, x2, x3;

    /// <x,x> in the (1,2) inner product x1^2 - x2^2 - x3^2.
    Scalar lorentz_norm() const { return x1 * x1 - x2 * x2 - x3 * x3; }

    static Scalar inner(const Triple3& a, const Triple3& b) {
        return a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3;
    }

    /// Cross product adapted to the (1,2) inner product. The multiplication
    /// table J1J2 = J3, J2J3 = -J1, J3J1 = J2 forces the first component to
    /// carry the opposite sign from the Euclidean formula; only then does
    /// J_x J_y = -<x,y> + J_{x cross y} hold identically.
    static Triple3 cross(const Triple3& a, const Triple3& b) {
        return {a.x3 * b.x2 - a.x2 * b.x3,
                a.x3 * b.x1 - a.x1 * b.x3,
                a.x1 * b.x2 - a.x2 * b.x1};
    }

    friend bool operator==(const Triple3&, const Triple3&) = default;
};

inline Endomorphism j_of(const PHTriple& t, const Triple3& x) {
    Mat m = t.j1();
    m *= x.x1;
    Mat m2 = t.j2();
    m2 *= x.x2;
    Mat m3 = t.j3();
    m3 *= x.x3;
    return m + m2 + m3;
}

/// J_x J_y + <x,y> I - J_{x cross y}; the zero matrix on every valid triple.
inline Endomorphism composition_identity_defect(const PHTriple& t, const Triple3& x,
                                                const Triple3& y) {
    Mat lhs = j_of(t, x) * j_of(t, y);
    Mat id = Mat::identity(t.dim());
    id *= Triple3::inner(x, y);
    return lhs + id - j_of(t, Triple3::cross(x, y));
}

/// (J_x, J_y) is itself a para-hypercomplex pair iff x is on the complex
/// hyperboloid, y on the product one, and x ⊥ y.
inline bool is_compatible_pair(const Triple3& x, const Triple3& y) {
    return x.lorentz_norm() == Scalar(1) && y.lorentz_norm() == Scalar(-1) &&
           Triple3::inner(x, y).is_zero();
}

}  // namespace phc
