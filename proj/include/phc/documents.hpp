#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phc/lie.hpp"
#include "phc/structures.hpp"

namespace phc {

enum class ParseCode {
    Lex,                    // bad character / malformed number
    Grammar,                // structure of a line or document
    UnknownIdentifier,
    DuplicateIdentifier,
    SelfBracket,            // [x, x] is forbidden; antisymmetry is implicit
    ContradictoryRelation,  // duplicate pair disagrees beyond the sign rule
    Schema,                 // JSON schema violation (see pointer)
};

inline std::string to_string(ParseCode c) {
    switch (c) {
        case ParseCode::Lex: return "lex";
        case ParseCode::Grammar: return "grammar";
        case ParseCode::UnknownIdentifier: return "unknown-identifier";
        case ParseCode::DuplicateIdentifier: return "duplicate-identifier";
        case ParseCode::SelfBracket: return "self-bracket";
        case ParseCode::ContradictoryRelation: return "contradictory-relation";
        case ParseCode::Schema: return "schema";
    }
    return "?";
}

struct ParseError : UsageError {
    ParseCode code;
    int line;     // 1-based; 0 when not line-oriented
    int col;      // 1-based
    std::string pointer;  // JSON pointer for schema errors

    ParseError(ParseCode c, int ln, int cl, const std::string& msg)
        : UsageError("parse error (" + to_string(c) + ") at " + std::to_string(ln) + ":" +
                     std::to_string(cl) + ": " + msg),
          code(c), line(ln), col(cl) {}
    ParseError(ParseCode c, std::string ptr, const std::string& msg)
        : UsageError("schema error at " + ptr + ": " + msg),
          code(c), line(0), col(0), pointer(std::move(ptr)) {}
};

/// Parsed bracket-relation document: basis names plus the resolved sparse
/// constants, keyed on i < j exactly like BracketTable.
struct AlgebraDocument {
    std::string name;
    std::vector<std::string> basis;
    std::map<std::pair<int, int>, std::vector<Scalar>> brackets;

    int dim() const { return static_cast<int>(basis.size()); }

    BracketTable to_table() const {
        BracketTable t(dim());
        for (const auto& [ij, coeffs] : brackets) t.set(ij.first, ij.second, Vec(coeffs));
        return t;
    }

    /// Validates Jacobi; throws UsageError when the constants fail it.
    LieAlgebra to_algebra() const { return LieAlgebra(to_table(), basis); }

    static AlgebraDocument from_algebra(const LieAlgebra& alg, std::string name) {
        AlgebraDocument doc;
        doc.name = std::move(name);
        doc.basis = alg.basis_names();
        for (const auto& [ij, v] : alg.table().entries()) {
            std::vector<Scalar> coeffs(alg.dim());
            for (int k = 0; k < alg.dim(); ++k) coeffs[k] = v[k];
            doc.brackets[ij] = std::move(coeffs);
        }
        return doc;
    }

    friend bool operator==(const AlgebraDocument&, const AlgebraDocument&) = default;
};

/// Candidate structure pair in the column convention of the structures
/// module: entry (i, j) is the coefficient of basis[i] in the image of
/// basis[j].
struct StructureDocument {
    Mat j1, j2;

    int dim() const { return j1.rows(); }

    friend bool operator==(const StructureDocument&, const StructureDocument&) = default;

    static StructureDocument from_triple(const PHTriple& t) { return {t.j1(), t.j2()}; }
};

}  // namespace phc
