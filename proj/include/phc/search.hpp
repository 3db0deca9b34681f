#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phc/structures.hpp"

namespace phc {

struct SearchConfig {
    int restarts = 200;
    std::uint64_t seed = 0;
    int max_iterations = 500;
    double residual_tolerance = 1e-18;  // on the squared residual norm
    long long max_denominator = 10000;
    double init_scale = 2.0;
};

enum class SearchStatus { Certified, NumericOnly, NotFound };

inline std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Certified: return "Certified";
        case SearchStatus::NumericOnly: return "NumericOnly";
        case SearchStatus::NotFound: return "NotFound";
    }
    return "?";
}

struct RestartTrace {
    int restart;
    int iterations;
    double final_residual;
    bool certified;
};

struct ApproxPair {
    std::array<double, 16> a;  // row-major 4x4
    std::array<double, 16> b;
    double residual;
};

struct SearchResult {
    SearchStatus status;
    std::optional<PHTriple> triple;   // present iff Certified
    std::optional<ApproxPair> approx; // best numeric point seen
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<RestartTrace> trace;  // one entry per executed restart
};

struct CertificationFailed {
    std::string which;  // the exact check that broke
};

// ---------------------------------------------------------------------------
// deterministic counter-based generator (no shared state between restarts)

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_); }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

/// Random unimodular integer matrix: a product of elementary shears and
/// signed swaps, so both P and P^-1 are integral. Used by tests and the
/// acceptance suite to conjugate catalog algebras reproducibly.
inline Mat random_unimodular(int n, std::uint64_t seed, int ops = 8) {
    Mat p = Mat::identity(n);
    CounterRng r(seed, 0xac0b);
    for (int k = 0; k < ops; ++k) {
        int i = static_cast<int>(r.below(n));
        int j = static_cast<int>(r.below(n));
        if (i == j) {
            // negate a row: still unimodular
            for (int c = 0; c < n; ++c) p.at(i, c) = -p.at(i, c);
            continue;
        }
        int s = r.below(2) ? 1 : -1;
        for (int c = 0; c < n; ++c) p.at(i, c) += Scalar(s) * p.at(j, c);
    }
    return p;
}

namespace detail {

using Vec32 = std::array<double, 32>;  // A entries then B entries, row-major

struct FloatBrackets {
    // full antisymmetric table: c[i][j] = coordinates of [e_i, e_j]
    double c[4][4][4] = {};

    explicit FloatBrackets(const LieAlgebra& alg) {
        // the one float/rational conversion point of the whole search
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Vec v = alg.basis_bracket(i, j);
                for (int k = 0; k < 4; ++k) c[i][j][k] = v[k].to_double();
            }
    }

    std::array<double, 4> bracket(const double* u, const double* v) const {
        std::array<double, 4> w{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double f = u[i] * v[j];
                if (f == 0.0) continue;
                for (int k = 0; k < 4; ++k) w[k] += f * c[i][j][k];
            }
        return w;
    }
};

inline void mat_from(const Vec32& s, int offset, double m[4][4]) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = s[offset + 4 * i + j];
}

/// The 96-dimensional residual vector: the three pair identities entrywise
/// plus both Nijenhuis tensors on all basis pairs.
struct Objective {
    const FloatBrackets& fb;

    static constexpr int kResiduals = 96;
    static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

    void residual_vec(const Vec32& s, double* r) const {
        double A[4][4], B[4][4];
        mat_from(s, 0, A);
        mat_from(s, 16, B);
        int k = 0;
        // A^2 + I, B^2 - I, AB + BA
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = (i == j) ? 1.0 : 0.0;
                for (int t = 0; t < 4; ++t) v += A[i][t] * A[t][j];
                r[k++] = v;
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = (i == j) ? -1.0 : 0.0;
                for (int t = 0; t < 4; ++t) v += B[i][t] * B[t][j];
                r[k++] = v;
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = 0;
                for (int t = 0; t < 4; ++t) v += A[i][t] * B[t][j] + B[i][t] * A[t][j];
                r[k++] = v;
            }
        nij_block(A, -1.0, r + 48);
        nij_block(B, +1.0, r + 72);
    }

    double value(const Vec32& s) const {
        double r[kResiduals];
        residual_vec(s, r);
        double f = 0;
        for (double x : r) f += x * x;
        return f;
    }

    /// Analytic Jacobian, row-major 96 x 32. The residual is quadratic in
    /// the entries, so every derivative is exact and cheap.
    void jacobian(const Vec32& s, double* J) const {
        double A[4][4], B[4][4];
        mat_from(s, 0, A);
        mat_from(s, 16, B);
        for (int i = 0; i < kResiduals * 32; ++i) J[i] = 0;
        auto at = [&](int row, int col) -> double& { return J[row * 32 + col]; };

        // d(A^2)[i][j] / dA[p][q] = delta_ip A[q][j] + A[i][p] delta_qj
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int row = 4 * i + j;
                for (int q = 0; q < 4; ++q) at(row, 4 * i + q) += A[q][j];
                for (int p = 0; p < 4; ++p) at(row, 4 * p + j) += A[i][p];
            }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int row = 16 + 4 * i + j;
                for (int q = 0; q < 4; ++q) at(row, 16 + 4 * i + q) += B[q][j];
                for (int p = 0; p < 4; ++p) at(row, 16 + 4 * p + j) += B[i][p];
            }
        // d(AB+BA)[i][j]: dA[p][q] -> delta_ip B[q][j] + B[i][p] delta_qj
        //                 dB[p][q] -> A[i][p] delta_qj + delta_ip A[q][j]
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int row = 32 + 4 * i + j;
                for (int q = 0; q < 4; ++q) at(row, 4 * i + q) += B[q][j];
                for (int p = 0; p < 4; ++p) at(row, 4 * p + j) += B[i][p];
                for (int p = 0; p < 4; ++p) at(row, 16 + 4 * i + p) += A[p][j];  // delta_ip rows
                for (int q = 0; q < 4; ++q) at(row, 16 + 4 * q + j) += A[i][q];
            }
        nij_jacobian(A, 0, 48, J);
        nij_jacobian(B, 16, 72, J);
    }

private:
    void nij_block(const double M[4][4], double sign, double* out) const {
        for (int p = 0; p < 6; ++p) {
            int i = kPairs[p][0], j = kPairs[p][1];
            double u[4], v[4], ei[4] = {}, ej[4] = {};
            ei[i] = 1;
            ej[j] = 1;
            for (int t = 0; t < 4; ++t) { u[t] = M[t][i]; v[t] = M[t][j]; }
            auto n = fb.bracket(u, v);
            auto t1 = fb.bracket(ei, v);
            auto t2 = fb.bracket(u, ej);
            auto t0 = fb.bracket(ei, ej);
            for (int k = 0; k < 4; ++k) {
                double mj = 0;
                for (int t = 0; t < 4; ++t) mj += M[k][t] * (t1[t] + t2[t]);
                out[4 * p + k] = n[k] - mj + sign * t0[k];
            }
        }
    }

    /// dN(e_i, e_j)/dM[p][q] with N = [Me_i, Me_j] - M[e_i, Me_j]
    ///                              - M[Me_i, e_j] +- [e_i, e_j].
    void nij_jacobian(const double M[4][4], int var_offset, int row_offset, double* J) const {
        auto at = [&](int row, int col) -> double& { return J[row * 32 + col]; };
        for (int p6 = 0; p6 < 6; ++p6) {
            int i = kPairs[p6][0], j = kPairs[p6][1];
            double u[4], v[4], ei[4] = {}, ej[4] = {};
            ei[i] = 1;
            ej[j] = 1;
            for (int t = 0; t < 4; ++t) { u[t] = M[t][i]; v[t] = M[t][j]; }
            auto t1 = fb.bracket(ei, v);   // [e_i, Me_j]
            auto t2 = fb.bracket(u, ej);   // [Me_i, e_j]
            for (int p = 0; p < 4; ++p) {
                double ep[4] = {};
                ep[p] = 1;
                auto br_ep_v = fb.bracket(ep, v);
                auto br_u_ep = fb.bracket(u, ep);
                auto br_ei_ep = fb.bracket(ei, ep);
                auto br_ep_ej = fb.bracket(ep, ej);
                for (int q = 0; q < 4; ++q) {
                    int col = var_offset + 4 * p + q;
                    for (int k = 0; k < 4; ++k) {
                        double d = 0;
                        if (q == i) {
                            d += br_ep_v[k];
                            double mv = 0;
                            for (int t = 0; t < 4; ++t) mv += M[k][t] * br_ep_ej[t];
                            d -= mv;
                        }
                        if (q == j) {
                            d += br_u_ep[k];
                            double mv = 0;
                            for (int t = 0; t < 4; ++t) mv += M[k][t] * br_ei_ep[t];
                            d -= mv;
                        }
                        if (k == p) d -= t1[q] + t2[q];
                        if (d != 0.0) at(row_offset + 4 * p6 + k, col) += d;
                    }
                }
            }
        }
    }
};

/// Solve (H + lambda I) x = -g for SPD-ish H by Cholesky; returns false if
/// the factorization breaks down.
inline bool solve_damped(const double* H, const double* g, double lambda, int n, double* x) {
    std::vector<double> L(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = H[i * n + j] + (i == j ? lambda : 0.0);
            for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            if (i == j) {
                if (s <= 0) return false;
                L[i * n + i] = std::sqrt(s);
            } else {
                L[i * n + j] = s / L[j * n + j];
            }
        }
    }
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = -g[i];
        for (int k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
        y[i] = s / L[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= L[k * n + i] * x[k];
        x[i] = s / L[i * n + i];
    }
    return true;
}

struct LMOutcome {
    Vec32 s;
    double f;
    int iterations;
};

/// Damped Gauss-Newton with step rejection; the accepted-residual sequence
/// is non-increasing by construction. `frozen` masks coordinates out of
/// the update (used by the rational polish).
inline LMOutcome levenberg_marquardt(const Objective& obj, Vec32 s, int max_iter, double ftol,
                                     const std::array<bool, 32>* frozen = nullptr) {
    constexpr int m = Objective::kResiduals;
    double r[m];
    obj.residual_vec(s, r);
    double f = 0;
    for (double x : r) f += x * x;
    double lambda = 1e-3;
    int iter = 0;
    std::vector<double> J(m * 32), H(32 * 32), g(32), h(32);
    while (iter < max_iter && f > ftol) {
        ++iter;
        obj.jacobian(s, J.data());
        if (frozen)
            for (int col = 0; col < 32; ++col)
                if ((*frozen)[col])
                    for (int row = 0; row < m; ++row) J[row * 32 + col] = 0;
        for (int a = 0; a < 32; ++a) {
            g[a] = 0;
            for (int row = 0; row < m; ++row) g[a] += J[row * 32 + a] * r[row];
        }
        for (int a = 0; a < 32; ++a)
            for (int b = a; b < 32; ++b) {
                double s2 = 0;
                for (int row = 0; row < m; ++row) s2 += J[row * 32 + a] * J[row * 32 + b];
                H[a * 32 + b] = H[b * 32 + a] = s2;
            }
        bool accepted = false;
        for (int tries = 0; tries < 45 && !accepted; ++tries) {
            if (!solve_damped(H.data(), g.data(), lambda, 32, h.data())) {
                lambda *= 10;
                continue;
            }
            Vec32 s2 = s;
            for (int a = 0; a < 32; ++a) s2[a] += h[a];
            double r2[m];
            obj.residual_vec(s2, r2);
            double f2 = 0;
            for (double x : r2) f2 += x * x;
            if (f2 < f) {
                s = s2;
                f = f2;
                for (int row = 0; row < m; ++row) r[row] = r2[row];
                lambda = std::max(lambda * 0.35, 1e-14);
                accepted = true;
            } else {
                lambda *= 6;
                if (lambda > 1e15) return {s, f, iter};
            }
        }
        if (!accepted) break;
    }
    return {s, f, iter};
}

}  // namespace detail

/// Squared-norm infeasibility of a float candidate pair on L: Frobenius
/// norms of A^2+I, B^2-I, AB+BA plus both Nijenhuis tensors on all basis
/// pairs. Zero exactly at true para-hypercomplex structures.
inline double residual(const LieAlgebra& alg, const std::array<double, 16>& a,
                       const std::array<double, 16>& b) {
    if (alg.dim() != 4) throw UsageError("residual: algebra must have dimension 4");
    detail::FloatBrackets fb(alg);
    detail::Objective obj{fb};
    detail::Vec32 s;
    for (int k = 0; k < 16; ++k) { s[k] = a[k]; s[16 + k] = b[k]; }
    return obj.value(s);
}

/// Exact certification: round every entry to the nearest rational with
/// denominator <= max_denominator (continued fractions), then re-run all
/// pair identities and both integrability checks in exact arithmetic.
inline std::variant<PHTriple, CertificationFailed> certify(const LieAlgebra& alg,
                                                           const std::array<double, 16>& a,
                                                           const std::array<double, 16>& b,
                                                           long long max_denominator) {
    if (alg.dim() != 4) throw UsageError("certify: algebra must have dimension 4");
    Mat ja(4, 4), jb(4, 4);
    BigInt md(max_denominator);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ja.at(i, j) = Scalar::from_double(a[4 * i + j], md);
            jb.at(i, j) = Scalar::from_double(b[4 * i + j], md);
        }
    auto violations = PHTriple::violations(ja, jb);
    if (!violations.empty()) {
        std::string which = "pair identities:";
        for (auto v : violations) which += " [" + to_string(v) + "]";
        return CertificationFailed{which};
    }
    PHTriple t = PHTriple::make(ja, jb);
    if (!is_integrable(alg, t.j1(), StructureKind::Complex))
        return CertificationFailed{"J1 integrability"};
    if (!is_integrable(alg, t.j2(), StructureKind::Product))
        return CertificationFailed{"J2 integrability"};
    return t;
}

namespace detail {

inline std::optional<PHTriple> try_certify(const LieAlgebra& alg, const Vec32& s,
                                           long long max_den) {
    std::array<double, 16> a, b;
    for (int k = 0; k < 16; ++k) { a[k] = s[k]; b[k] = s[16 + k]; }
    auto res = certify(alg, a, b, max_den);
    if (auto* t = std::get_if<PHTriple>(&res)) return *t;
    return std::nullopt;
}

/// Rational polish: walk the converged point toward the rational lattice
/// without leaving the solution variety. Greedily pins one coordinate at a
/// time to the cheapest nearby small-denominator rational and re-solves the
/// free coordinates; a pin whose slice has no nearby solution is reverted
/// and that coordinate's denominator is escalated. Certification attempts
/// round each coordinate independently by continued fractions, so mixed
/// denominators are fine.
inline std::optional<PHTriple> snap_polish(const LieAlgebra& alg, const Objective& obj,
                                           Vec32 s, const SearchConfig& cfg) {
    static constexpr long long kPinLadder[] = {1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
    static constexpr long long kCertifyLadder[] = {4, 8, 16, 32, 64, 128, 1024, 10000};
    auto round_to = [](double x, long long d) {
        return std::nearbyint(x * static_cast<double>(d)) / static_cast<double>(d);
    };
    auto certify_rungs = [&](const Vec32& v) -> std::optional<PHTriple> {
        for (long long d : kCertifyLadder) {
            if (d > cfg.max_denominator) break;
            if (auto t = try_certify(alg, v, d)) return t;
        }
        return try_certify(alg, v, cfg.max_denominator);
    };

    if (auto t = certify_rungs(s)) return t;

    std::array<bool, 32> frozen{};
    std::array<long long, 32> min_den{};  // pins below this denominator failed
    min_den.fill(0);
    int failures = 0;
    for (int step = 0; step < 96 && failures < 40; ++step) {
        // cheapest pin: distance weighted by d^2 prefers small denominators
        int best_k = -1;
        long long best_d = 0;
        double best_cost = 1e18, best_val = 0;
        for (int k = 0; k < 32; ++k) {
            if (frozen[k]) continue;
            for (long long d : kPinLadder) {
                if (d <= min_den[k] || d > cfg.max_denominator) continue;
                double v = round_to(s[k], d);
                double cost = std::fabs(s[k] - v) * static_cast<double>(d) * static_cast<double>(d);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_k = k;
                    best_d = d;
                    best_val = v;
                }
            }
        }
        if (best_k < 0) break;  // nothing left to pin
        Vec32 saved = s;
        s[best_k] = best_val;
        frozen[best_k] = true;
        auto out = levenberg_marquardt(obj, s, 150, 1e-26, &frozen);
        if (out.f < 1e-18) {
            s = out.s;
            if (auto t = certify_rungs(s)) return t;
        } else {
            s = saved;
            frozen[best_k] = false;
            min_den[best_k] = best_d;  // escalate this coordinate's denominator
            ++failures;
        }
    }
    // final squeeze and one last attempt
    auto out = levenberg_marquardt(obj, s, 200, 1e-30, &frozen);
    if (out.f < 1e-18) return certify_rungs(out.s);
    return std::nullopt;
}

}  // namespace detail

/// Random-restart Levenberg-Marquardt feasibility search for an integrable
/// para-hypercomplex structure, with exact certification of hits.
/// Deterministic for a fixed (algebra, config); restarts are independent
/// and the smallest-index certified restart wins, so the result does not
/// depend on execution interleaving. NotFound is inconclusive by nature:
/// absence of a certificate is not a nonexistence proof.
inline SearchResult search_structure(const LieAlgebra& alg, const SearchConfig& cfg = {}) {
    if (alg.dim() != 4) throw UsageError("search_structure: algebra must have dimension 4");
    detail::FloatBrackets fb(alg);
    detail::Objective obj{fb};
    SearchResult result;
    result.status = SearchStatus::NotFound;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(restart));
        detail::Vec32 s;
        for (int k = 0; k < 32; ++k) s[k] = rng.uniform(-cfg.init_scale, cfg.init_scale);
        auto out = detail::levenberg_marquardt(obj, s, cfg.max_iterations,
                                               cfg.residual_tolerance * 1e-2);
        bool certified = false;
        if (out.f < std::max(cfg.residual_tolerance, 1e-16)) {
            if (auto t = detail::snap_polish(alg, obj, out.s, cfg)) {
                result.status = SearchStatus::Certified;
                result.triple = *t;
                certified = true;
            }
        }
        if (out.f < result.best_residual) {
            result.best_residual = out.f;
            ApproxPair ap;
            for (int k = 0; k < 16; ++k) { ap.a[k] = out.s[k]; ap.b[k] = out.s[16 + k]; }
            ap.residual = out.f;
            result.approx = ap;
        }
        result.trace.push_back({restart, out.iterations, out.f, certified});
        if (certified) break;
    }
    if (result.status != SearchStatus::Certified)
        result.status = result.best_residual < cfg.residual_tolerance ? SearchStatus::NumericOnly
                                                                      : SearchStatus::NotFound;
    return result;
}

}  // namespace phc
