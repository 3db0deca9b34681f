#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phc/metric.hpp"
#include "phc/structures.hpp"

namespace phc {

enum class CatalogId {
    PHC1, PHC2, PHC3, PHC4, PHC5, PHC6, PHC7, PHC8, PHC9, PHC10,
    HC1, HC2, HC3, HC4, HC5,
};

inline std::string to_string(CatalogId id) {
    static const char* names[] = {"PHC1", "PHC2", "PHC3", "PHC4", "PHC5", "PHC6",
                                  "PHC7", "PHC8", "PHC9", "PHC10",
                                  "HC1", "HC2", "HC3", "HC4", "HC5"};
    return names[static_cast<int>(id)];
}

inline std::optional<CatalogId> parse_catalog_id(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(CatalogId::HC5); ++k) {
        auto id = static_cast<CatalogId>(k);
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

inline bool is_phc(CatalogId id) { return static_cast<int>(id) <= static_cast<int>(CatalogId::PHC10); }

using CatalogParams = std::map<std::string, Scalar>;

/// One catalog entry. `structure` is the operative, exactly verified pair.
/// Where the printed table of the source fails exact verification (PHC8,
/// PHC10 -- see CATALOG_NOTES.md), `printed_structure` preserves it
/// verbatim, `printed_structure_verified` is false and the operative
/// structure is the corrected one derived from the classification proofs.
struct CatalogEntry {
    CatalogId id;
    CatalogParams params;
    LieAlgebra algebra;
    std::optional<PHTriple> structure;           // absent for HC entries
    std::optional<PHTriple> printed_structure;   // set only when it differs
    bool printed_structure_verified = true;
    std::string note;
};

namespace detail {

inline Vec e4(int k) { return Vec::unit(4, k); }

inline const std::vector<std::string>& xyzw() {
    static const std::vector<std::string> names{"X", "Y", "Z", "W"};
    return names;
}

inline Scalar param_of(const CatalogParams& p, const std::string& name, const Scalar& dflt) {
    auto it = p.find(name);
    return it == p.end() ? dflt : it->second;
}

inline void reject_unknown_params(CatalogId id, const CatalogParams& p,
                                  std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* name : allowed)
            if (k == name) ok = true;
        if (!ok)
            throw UsageError("catalog: " + to_string(id) + " takes no parameter '" + k + "'");
    }
}

}  // namespace detail

/// Raw bracket table of a catalog id at given parameter values, without
/// any validation (used by the polynomial-identity Jacobi checks, which
/// evaluate on grids that include forbidden parameter values).
inline BracketTable catalog_bracket_table(CatalogId id, const CatalogParams& p = {}) {
    using detail::e4;
    using detail::param_of;
    BracketTable t(4);
    Scalar a = param_of(p, "a", 0), b = param_of(p, "b", 0), c = param_of(p, "c", 1);
    Scalar half(1, 2);
    switch (id) {
        case CatalogId::PHC1:
        case CatalogId::HC1:
            break;
        case CatalogId::PHC2:
            t.set(0, 1, e4(3)); t.set(1, 3, -e4(0)); t.set(0, 3, -e4(1));
            break;
        case CatalogId::PHC3:
            t.set(0, 1, e4(1)); t.set(0, 3, e4(3));
            break;
        case CatalogId::PHC4:
            t.set(0, 1, e4(2));
            break;
        case CatalogId::PHC5:
            t.set(0, 1, e4(0));
            break;
        case CatalogId::PHC6:
            t.set(0, 1, e4(2));
            t.set(0, 3, e4(0) + a * e4(1) + b * e4(2));
            t.set(1, 3, -e4(1));
            break;
        case CatalogId::PHC7:
            t.set(0, 2, e4(0)); t.set(0, 3, e4(1)); t.set(1, 2, e4(1));
            t.set(1, 3, a * e4(0) + b * e4(1));
            break;
        case CatalogId::PHC8:
            t.set(0, 2, e4(0)); t.set(1, 3, e4(1));
            break;
        case CatalogId::PHC9:
            t.set(2, 3, e4(2)); t.set(1, 3, e4(1));
            t.set(0, 3, c * e4(0) + a * e4(1) + b * e4(2));
            break;
        case CatalogId::PHC10:
            t.set(0, 1, -e4(2));
            t.set(2, 3, -(c * e4(2)));
            t.set(0, 3, -(half * e4(0)) - a * e4(1) - b * e4(2));
            t.set(1, 3, (half - c) * e4(1));
            break;
        case CatalogId::HC2:
            t.set(0, 1, e4(3)); t.set(1, 3, e4(0)); t.set(0, 3, -e4(1));
            break;
        case CatalogId::HC3:
            t.set(0, 2, e4(0)); t.set(0, 3, e4(1)); t.set(1, 2, e4(1));
            t.set(1, 3, -e4(1));
            break;
        case CatalogId::HC4:
            t.set(0, 3, -e4(0)); t.set(1, 3, -e4(1)); t.set(2, 3, -e4(2));
            break;
        case CatalogId::HC5:
            t.set(0, 3, -e4(0)); t.set(1, 3, -(half * e4(1)));
            t.set(2, 3, -(half * e4(2))); t.set(1, 2, -e4(0));
            break;
    }
    return t;
}

namespace detail {

// Printed structure tables. Columns are images of (X, Y, Z, W).
inline PHTriple table_s12() {  // PHC1, PHC2
    return PHTriple::make(Mat::from_columns({-e4(2), e4(3), e4(0), -e4(1)}),
                          Mat::from_columns({-e4(3), e4(2), e4(1), -e4(0)}));
}
inline PHTriple table_s3() {  // PHC3
    return PHTriple::make(Mat::from_columns({-e4(2), e4(3), e4(0), -e4(1)}),
                          Mat::from_columns({e4(0) + e4(1), -e4(1), e4(3) - e4(2), e4(3)}));
}
inline PHTriple table_s45() {  // PHC4, PHC5
    return PHTriple::make(Mat::from_columns({e4(1), -e4(0), e4(3), -e4(2)}),
                          Mat::from_columns({e4(1) - e4(2), e4(0) + e4(3), e4(3), e4(2)}));
}
inline PHTriple table_s7() {  // PHC7; also the corrected PHC8 structure
    return PHTriple::make(Mat::from_columns({e4(2), e4(3), -e4(0), -e4(1)}),
                          Mat::diag({1, 1, -1, -1}));
}
inline PHTriple table_s8_printed() {  // PHC8 as printed; fails integrability
    return PHTriple::make(Mat::from_columns({-e4(1), e4(0), -e4(3), e4(2)}),
                          Mat::from_columns({e4(1), e4(0), -e4(3), -e4(2)}));
}
inline PHTriple table_s6910() {  // PHC6, PHC9; printed also for PHC10
    return PHTriple::make(Mat::from_columns({e4(3), -e4(2), e4(1), -e4(0)}),
                          Mat::from_columns({e4(3) - e4(2), e4(2), e4(1), e4(0) + e4(1)}));
}
inline PHTriple table_phc10_corrected() {
    // Frame construction from the Heisenberg case of the classification:
    // basis (N, J1 N, X, J1 X) = (Z, Y, X, 2W), so the W column picks up
    // the 1/2-scaling the printed shared table is missing.
    Scalar half(1, 2);
    return PHTriple::make(
        Mat::from_columns({2 * e4(3), -e4(2), e4(1), -(half * e4(0))}),
        Mat::from_columns({2 * e4(3) - e4(2), e4(2), e4(1), half * (e4(0) + e4(1))}));
}

}  // namespace detail

/// Para-hypercomplex catalog entry, fully validated. Parameters default to
/// a = b = 0 and c = 1; c = 0 is rejected where the family requires c != 0.
inline CatalogEntry phc_entry(CatalogId id, const CatalogParams& params = {}) {
    using namespace detail;
    if (!is_phc(id)) throw UsageError("phc: " + to_string(id) + " is not a PHC id");
    switch (id) {
        case CatalogId::PHC6:
        case CatalogId::PHC7:
            reject_unknown_params(id, params, {"a", "b"});
            break;
        case CatalogId::PHC9:
        case CatalogId::PHC10:
            reject_unknown_params(id, params, {"a", "b", "c"});
            if (param_of(params, "c", 1).is_zero())
                throw UsageError("phc: " + to_string(id) + " requires c != 0");
            break;
        default:
            reject_unknown_params(id, params, {});
    }
    LieAlgebra alg(catalog_bracket_table(id, params), xyzw());
    CatalogEntry entry{id, params, std::move(alg), std::nullopt, std::nullopt, true, ""};
    switch (id) {
        case CatalogId::PHC1:
        case CatalogId::PHC2:
            entry.structure = table_s12();
            break;
        case CatalogId::PHC3:
            entry.structure = table_s3();
            break;
        case CatalogId::PHC4:
        case CatalogId::PHC5:
            entry.structure = table_s45();
            break;
        case CatalogId::PHC6:
        case CatalogId::PHC9:
            entry.structure = table_s6910();
            break;
        case CatalogId::PHC7:
            entry.structure = table_s7();
            break;
        case CatalogId::PHC8:
            entry.structure = table_s7();
            entry.printed_structure = table_s8_printed();
            entry.printed_structure_verified = false;
            entry.note = "printed structure table fails exact integrability; "
                         "operative structure from the dim g' = 2 case of the "
                         "classification (see CATALOG_NOTES.md)";
            break;
        case CatalogId::PHC10:
            entry.structure = table_phc10_corrected();
            entry.printed_structure = table_s6910();
            entry.printed_structure_verified = false;
            entry.note = "printed shared table fails exact integrability for "
                         "every parameter value; operative structure from the "
                         "Heisenberg case of the classification "
                         "(see CATALOG_NOTES.md)";
            break;
        default:
            break;
    }
    return entry;
}

/// Comparison catalog (hypercomplex side). Bracket tables only; the
/// hypercomplex J-pairs are outside this artifact's validation scope.
inline CatalogEntry hc_entry(CatalogId id) {
    using namespace detail;
    if (is_phc(id)) throw UsageError("hc: " + to_string(id) + " is not an HC id");
    LieAlgebra alg(catalog_bracket_table(id), xyzw());
    return CatalogEntry{id, {}, std::move(alg), std::nullopt, std::nullopt, true, ""};
}

// ---------------------------------------------------------------------------
// verification

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct EntryReport {
    CatalogId id;
    CatalogParams params;
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string label() const {
        std::string s = to_string(id);
        if (!params.empty()) {
            s += "(";
            bool first = true;
            for (const auto& [k, v] : params) {
                if (!first) s += ",";
                s += k + "=" + v.str();
                first = false;
            }
            s += ")";
        }
        return s;
    }
};

/// Full battery for one candidate (algebra, j1, j2): Jacobi, the four pair
/// identities, exact integrability of J1/J2/J3, metric existence with
/// signature (2,2). Failures are report content, never exceptions.
inline EntryReport verify_candidate(CatalogId id, const CatalogParams& params,
                                    const BracketTable& table, const Endomorphism& j1,
                                    const Endomorphism& j2) {
    EntryReport rep{id, params, {}};
    auto defects = table.jacobi_defects();
    rep.checks.push_back({"jacobi", defects.empty(),
                          defects.empty() ? "" : "first defect at triple (" +
                              std::to_string(defects[0].i) + "," + std::to_string(defects[0].j) +
                              "," + std::to_string(defects[0].k) + ")"});
    if (!defects.empty()) return rep;
    LieAlgebra alg(table, detail::xyzw());

    auto violations = PHTriple::violations(j1, j2);
    std::string viol;
    for (auto v : violations) viol += "[" + to_string(v) + "]";
    rep.checks.push_back({"pair identities", violations.empty(), viol});
    if (!violations.empty()) return rep;
    PHTriple t = PHTriple::make(j1, j2);

    bool i1 = is_integrable(alg, t.j1(), StructureKind::Complex);
    bool i2 = is_integrable(alg, t.j2(), StructureKind::Product);
    bool i3 = is_integrable(alg, t.j3(), StructureKind::Product);
    rep.checks.push_back({"J1 integrable", i1, ""});
    rep.checks.push_back({"J2 integrable", i2, ""});
    rep.checks.push_back({"J3 integrable", i3, ""});

    bool metric_ok = false;
    std::string metric_detail;
    try {
        AnchoredMetric m = hermitian_metric(t);
        metric_ok = m.g.signature() == Signature{2, 2, 0};
        metric_detail = "anchor " + m.anchor.str() + ", signature " + m.g.signature().str();
    } catch (const UsageError& e) {
        metric_detail = e.what();
    }
    rep.checks.push_back({"metric (2,2)", metric_ok, metric_detail});
    return rep;
}

inline EntryReport verify_entry(const CatalogEntry& entry) {
    if (entry.structure) {
        EntryReport rep = verify_candidate(entry.id, entry.params, entry.algebra.table(),
                                           entry.structure->j1(), entry.structure->j2());
        if (entry.printed_structure) {
            bool p1 = is_integrable(entry.algebra, entry.printed_structure->j1(),
                                    StructureKind::Complex);
            bool p2 = is_integrable(entry.algebra, entry.printed_structure->j2(),
                                    StructureKind::Product);
            // the discrepancy is expected and documented; what must hold is
            // that the stored verification flag tells the truth about it
            bool flag_truthful = (p1 && p2) == entry.printed_structure_verified;
            rep.checks.push_back({"printed table status", flag_truthful,
                                  p1 && p2 ? "printed table verifies"
                                           : "printed table fails integrability "
                                             "(documented in CATALOG_NOTES.md)"});
        }
        return rep;
    }
    // HC entries: Jacobi only
    EntryReport rep{entry.id, entry.params, {}};
    auto defects = entry.algebra.table().jacobi_defects();
    rep.checks.push_back({"jacobi", defects.empty(), ""});
    return rep;
}

/// The default verification grid for family parameters.
inline std::vector<Scalar> default_grid() {
    return {Scalar(-2), Scalar(-1), Scalar(-1, 2), Scalar(0), Scalar(1, 2), Scalar(1), Scalar(3)};
}

/// Every catalog entry over the given parameter grid (c skips 0).
inline std::vector<CatalogEntry> catalog_over_grid(const std::vector<Scalar>& grid) {
    std::vector<CatalogEntry> entries;
    for (CatalogId id : {CatalogId::PHC1, CatalogId::PHC2, CatalogId::PHC3, CatalogId::PHC4,
                         CatalogId::PHC5, CatalogId::PHC8})
        entries.push_back(phc_entry(id));
    for (CatalogId id : {CatalogId::PHC6, CatalogId::PHC7})
        for (const auto& a : grid)
            for (const auto& b : grid)
                entries.push_back(phc_entry(id, {{"a", a}, {"b", b}}));
    for (CatalogId id : {CatalogId::PHC9, CatalogId::PHC10})
        for (const auto& a : grid)
            for (const auto& b : grid)
                for (const auto& c : grid) {
                    if (c.is_zero()) continue;
                    entries.push_back(phc_entry(id, {{"a", a}, {"b", b}, {"c", c}}));
                }
    for (CatalogId id : {CatalogId::HC1, CatalogId::HC2, CatalogId::HC3, CatalogId::HC4,
                         CatalogId::HC5})
        entries.push_back(hc_entry(id));
    return entries;
}

struct CatalogReport {
    std::vector<EntryReport> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.all_pass()) return false;
        return true;
    }
};

inline CatalogReport verify_all(const std::vector<Scalar>& grid = default_grid()) {
    CatalogReport rep;
    for (const auto& entry : catalog_over_grid(grid)) rep.entries.push_back(verify_entry(entry));
    return rep;
}

// ---------------------------------------------------------------------------
// cross references between the two catalogs

struct CrossRef {
    std::optional<CatalogId> counterpart;  // empty = "no counterpart" marker
    CatalogParams params;
    /// Exact basis-change witness (columns = images of the source basis),
    /// present where a rational isomorphism exists. The HC3 <-> PHC7(1,-1)
    /// correspondence printed in the comparison section admits no rational
    /// witness (see CATALOG_NOTES.md), so its witness is absent.
    std::optional<Mat> witness;
    std::string note;
};

/// P intertwines the brackets: P [u,v]_a = [P u, P v]_b for all u, v.
inline bool intertwines(const LieAlgebra& a, const LieAlgebra& b, const Mat& p) {
    if (a.dim() != b.dim() || !p.square() || p.rows() != a.dim()) return false;
    if (p.det().is_zero()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) {
            Vec lhs = p.apply(a.basis_bracket(i, j));
            Vec rhs = b.bracket(p.column(i), p.column(j));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

inline CrossRef cross_reference(CatalogId id) {
    using detail::e4;
    switch (id) {
        case CatalogId::HC1:
            return {CatalogId::PHC1, {}, Mat::identity(4), "both abelian"};
        case CatalogId::HC2:
            return {std::nullopt, {}, std::nullopt,
                    "R + so(3): admits no para-hypercomplex structure; "
                    "its counterpart R + sl(2) is PHC2"};
        case CatalogId::HC3:
            return {CatalogId::PHC7, {{"a", Scalar(1)}, {"b", Scalar(-1)}}, std::nullopt,
                    "printed correspondence; no rational basis-change witness "
                    "exists for the printed bracket tables (CATALOG_NOTES.md)"};
        case CatalogId::HC4:
            return {CatalogId::PHC9, {{"a", Scalar(0)}, {"b", Scalar(0)}, {"c", Scalar(1)}},
                    Mat::diag({1, 1, 1, -1}), "real hyperbolic space RH^4"};
        case CatalogId::HC5:
            return {CatalogId::PHC10, {{"a", Scalar(0)}, {"b", Scalar(0)}, {"c", Scalar(1)}},
                    Mat::from_columns({e4(2), e4(0), e4(1), e4(3)}),
                    "complex hyperbolic space CH^2"};
        case CatalogId::PHC1:
            return {CatalogId::HC1, {}, Mat::identity(4), "both abelian"};
        case CatalogId::PHC2:
            return {std::nullopt, {}, std::nullopt,
                    "R + sl(2): hypercomplex counterpart is HC2 = R + so(3), "
                    "which is a different algebra"};
        case CatalogId::PHC7:
            return {CatalogId::HC3, {{"a", Scalar(1)}, {"b", Scalar(-1)}}, std::nullopt,
                    "reverse of the printed HC3 correspondence"};
        case CatalogId::PHC9:
            return {CatalogId::HC4, {{"a", Scalar(0)}, {"b", Scalar(0)}, {"c", Scalar(1)}},
                    Mat::diag({1, 1, 1, -1}), "reverse of the HC4 correspondence"};
        case CatalogId::PHC10:
            return {CatalogId::HC5, {{"a", Scalar(0)}, {"b", Scalar(0)}, {"c", Scalar(1)}},
                    Mat::from_columns({e4(1), e4(2), e4(0), e4(3)}),
                    "reverse of the HC5 correspondence"};
        default:
            return {std::nullopt, {}, std::nullopt, "no stated correspondence"};
    }
}

}  // namespace phc
