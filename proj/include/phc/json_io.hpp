#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "phc/documents.hpp"
#include "phc/dsl.hpp"

namespace phc {

// Rationals travel as decimal strings ("num"/"den", den > 0, reduced) so no
// float contamination is possible. Emission is canonical: nlohmann's
// default object keeps keys sorted and dump() adds no whitespace, so
// emit(parse(emit(x))) is byte-identical to emit(x).

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_fail(const std::string& pointer, const std::string& msg) {
    throw ParseError(ParseCode::Schema, pointer, msg);
}

inline const json& need(const json& obj, const char* key, const std::string& pointer) {
    if (!obj.is_object() || !obj.contains(key))
        schema_fail(pointer + "/" + key, "missing required key");
    return obj.at(key);
}

inline BigInt parse_bigint(const json& node, const std::string& pointer, bool allow_neg) {
    if (!node.is_string()) schema_fail(pointer, "integers are serialized as strings");
    const std::string& s = node.get_ref<const std::string&>();
    size_t i = 0;
    if (allow_neg && !s.empty() && s[0] == '-') i = 1;
    if (i == s.size()) schema_fail(pointer, "malformed integer literal");
    for (size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') schema_fail(pointer, "malformed integer literal");
    return BigInt(s);
}

inline int parse_index(const json& node, const std::string& pointer, int dim) {
    if (!node.is_number_integer()) schema_fail(pointer, "expected a basis index");
    long long v = node.get<long long>();
    if (v < 0 || v >= dim) schema_fail(pointer, "basis index out of range");
    return static_cast<int>(v);
}

inline json parse_text(std::string_view bytes) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded()) schema_fail("", "not valid JSON");
    return doc;
}

inline json rational_json(const Scalar& s) {
    return json{{"den", s.den().str()}, {"num", s.num().str()}};
}

}  // namespace detail

/// Schema: {"name": str, "basis": [str], "brackets": [{"i": int, "j": int,
/// "terms": [{"k": int, "num": str, "den": str}]}]} with i < j, 0-based
/// indices, den > 0, fractions reduced, brackets sorted by (i, j) and terms
/// sorted by k on emission.
inline AlgebraDocument parse_algebra_json(std::string_view bytes) {
    using detail::json;
    using detail::need;
    using detail::schema_fail;
    json doc = detail::parse_text(bytes);

    AlgebraDocument out;
    const json& name = need(doc, "name", "");
    if (!name.is_string()) schema_fail("/name", "expected a string");
    out.name = name.get<std::string>();

    const json& basis = need(doc, "basis", "");
    if (!basis.is_array() || basis.empty()) schema_fail("/basis", "expected a non-empty array");
    std::map<std::string, int> seen;
    for (size_t k = 0; k < basis.size(); ++k) {
        std::string ptr = "/basis/" + std::to_string(k);
        if (!basis[k].is_string()) schema_fail(ptr, "expected a string");
        std::string id = basis[k].get<std::string>();
        if (seen.count(id)) schema_fail(ptr, "duplicate basis identifier");
        seen[id] = static_cast<int>(k);
        out.basis.push_back(std::move(id));
    }
    int dim = out.dim();

    const json& brackets = need(doc, "brackets", "");
    if (!brackets.is_array()) schema_fail("/brackets", "expected an array");
    for (size_t b = 0; b < brackets.size(); ++b) {
        std::string ptr = "/brackets/" + std::to_string(b);
        const json& rel = brackets[b];
        int i = detail::parse_index(need(rel, "i", ptr), ptr + "/i", dim);
        int j = detail::parse_index(need(rel, "j", ptr), ptr + "/j", dim);
        if (i >= j) schema_fail(ptr, "requires i < j");
        if (out.brackets.count({i, j})) schema_fail(ptr, "duplicate bracket pair");
        const json& terms = need(rel, "terms", ptr);
        if (!terms.is_array()) schema_fail(ptr + "/terms", "expected an array");
        std::vector<Scalar> coeffs(dim);
        std::vector<bool> used(dim, false);
        for (size_t t = 0; t < terms.size(); ++t) {
            std::string tptr = ptr + "/terms/" + std::to_string(t);
            const json& term = terms[t];
            int k = detail::parse_index(need(term, "k", tptr), tptr + "/k", dim);
            if (used[k]) schema_fail(tptr + "/k", "duplicate term index");
            used[k] = true;
            BigInt num = detail::parse_bigint(need(term, "num", tptr), tptr + "/num", true);
            BigInt den = detail::parse_bigint(need(term, "den", tptr), tptr + "/den", false);
            if (den <= 0) schema_fail(tptr + "/den", "denominator must be positive");
            if (boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den) != 1)
                schema_fail(tptr, "fraction is not reduced");
            if (num == 0) schema_fail(tptr + "/num", "zero terms may not be serialized");
            coeffs[k] = Scalar(num, den);
        }
        bool zero = true;
        for (const auto& c : coeffs) zero &= c.is_zero();
        if (!zero) out.brackets.emplace(std::make_pair(i, j), std::move(coeffs));
    }
    return out;
}

inline std::string emit_algebra_json(const AlgebraDocument& doc) {
    using detail::json;
    json brackets = json::array();
    for (const auto& [ij, coeffs] : doc.brackets) {
        json terms = json::array();
        for (size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k].is_zero()) continue;
            terms.push_back(json{{"den", coeffs[k].den().str()},
                                 {"k", static_cast<int>(k)},
                                 {"num", coeffs[k].num().str()}});
        }
        brackets.push_back(json{{"i", ij.first}, {"j", ij.second}, {"terms", std::move(terms)}});
    }
    json doc_json{{"basis", doc.basis}, {"brackets", std::move(brackets)}, {"name", doc.name}};
    return doc_json.dump();
}

/// Structure files: {"j1": [[str x n] x n], "j2": ...} where row i, column
/// j is the coefficient of basis[i] in the image of basis[j] (the column
/// convention), each entry "p" or "p/q".
inline StructureDocument parse_structure_json(std::string_view bytes) {
    using detail::json;
    using detail::need;
    using detail::schema_fail;
    json doc = detail::parse_text(bytes);
    auto parse_matrix = [&](const char* key) {
        const json& rows = need(doc, key, "");
        std::string ptr = std::string("/") + key;
        if (!rows.is_array() || rows.empty()) schema_fail(ptr, "expected a non-empty array");
        int n = static_cast<int>(rows.size());
        Mat m(n, n);
        for (int i = 0; i < n; ++i) {
            std::string rptr = ptr + "/" + std::to_string(i);
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
                schema_fail(rptr, "expected a square matrix");
            for (int j = 0; j < n; ++j) {
                std::string eptr = rptr + "/" + std::to_string(j);
                if (!rows[i][j].is_string()) schema_fail(eptr, "entries are rational strings");
                try {
                    m.at(i, j) = Scalar::parse(rows[i][j].get<std::string>());
                } catch (const UsageError&) {
                    schema_fail(eptr, "malformed rational");
                }
            }
        }
        return m;
    };
    Mat j1 = parse_matrix("j1");
    Mat j2 = parse_matrix("j2");
    if (j1.rows() != j2.rows()) schema_fail("/j2", "j1 and j2 dimensions differ");
    return {std::move(j1), std::move(j2)};
}

inline std::string emit_structure_json(const StructureDocument& doc) {
    using detail::json;
    auto matrix_json = [](const Mat& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
            rows.push_back(std::move(row));
        }
        return rows;
    };
    json doc_json{{"j1", matrix_json(doc.j1)}, {"j2", matrix_json(doc.j2)}};
    return doc_json.dump();
}

/// Content sniffing: JSON documents start with '{'; everything else is DSL.
inline AlgebraDocument parse_algebra_any(std::string_view bytes) {
    for (char c : bytes) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_algebra_json(bytes);
        break;
    }
    return parse_algebra(bytes);
}

}  // namespace phc
