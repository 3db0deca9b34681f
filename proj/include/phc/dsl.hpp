#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phc/documents.hpp"

namespace phc {

namespace detail {

struct DslToken {
    enum Kind { Ident, Int, LBracket, RBracket, Comma, Equals, Plus, Minus, Slash, End } kind;
    std::string text;
    int col;  // 1-based
};

inline std::vector<DslToken> lex_line(const std::string& line, int line_no) {
    std::vector<DslToken> out;
    size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            out.push_back({DslToken::Ident, line.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            out.push_back({DslToken::Int, line.substr(i, j - i), col});
            i = j;
            continue;
        }
        switch (ch) {
            case '[': out.push_back({DslToken::LBracket, "[", col}); break;
            case ']': out.push_back({DslToken::RBracket, "]", col}); break;
            case ',': out.push_back({DslToken::Comma, ",", col}); break;
            case '=': out.push_back({DslToken::Equals, "=", col}); break;
            case '+': out.push_back({DslToken::Plus, "+", col}); break;
            case '-': out.push_back({DslToken::Minus, "-", col}); break;
            case '/': out.push_back({DslToken::Slash, "/", col}); break;
            default:
                throw ParseError(ParseCode::Lex, line_no, col,
                                 std::string("unexpected character '") + ch + "'");
        }
        ++i;
    }
    out.push_back({DslToken::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

}  // namespace detail

/// Line-oriented bracket-relation input:
///   algebra <name>
///   basis <id> <id> ...
///   [<id>, <id>] = <term> {+|- <term>}     # unlisted brackets are zero
/// where term = [int | int/int] identifier and '#' starts a comment.
inline AlgebraDocument parse_algebra(std::string_view text) {
    using detail::DslToken;
    AlgebraDocument doc;
    std::map<std::string, int> index;
    std::map<std::pair<int, int>, std::vector<Scalar>> resolved;  // includes zero rhs
    bool have_name = false, have_basis = false;

    std::istringstream stream{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        // The algebra line is handled before lexing: its name is a free-form
        // non-space token (catalog labels carry '(' and '=').
        {
            std::string rest = line;
            if (auto h = rest.find('#'); h != std::string::npos) rest.resize(h);
            size_t pos = rest.find_first_not_of(" \t");
            if (pos != std::string::npos && rest.compare(pos, 7, "algebra") == 0 &&
                (pos + 7 == rest.size() ||
                 std::isspace(static_cast<unsigned char>(rest[pos + 7])))) {
                if (have_name)
                    throw ParseError(ParseCode::Grammar, line_no, static_cast<int>(pos) + 1,
                                     "duplicate algebra line");
                size_t start = rest.find_first_not_of(" \t", pos + 7);
                size_t end = rest.find_last_not_of(" \t");
                if (start == std::string::npos)
                    throw ParseError(ParseCode::Grammar, line_no, static_cast<int>(pos) + 1,
                                     "missing algebra name");
                doc.name = rest.substr(start, end - start + 1);
                if (doc.name.find(' ') != std::string::npos ||
                    doc.name.find('\t') != std::string::npos)
                    throw ParseError(ParseCode::Grammar, line_no, static_cast<int>(start) + 1,
                                     "algebra name may not contain whitespace");
                have_name = true;
                continue;
            }
        }

        auto toks = detail::lex_line(line, line_no);
        if (toks[0].kind == DslToken::End) continue;
        if (toks[0].kind == DslToken::Ident && toks[0].text == "basis") {
            if (!have_name)
                throw ParseError(ParseCode::Grammar, line_no, toks[0].col,
                                 "'algebra <name>' must come before 'basis'");
            if (have_basis)
                throw ParseError(ParseCode::Grammar, line_no, toks[0].col, "duplicate basis line");
            for (size_t k = 1; k + 1 <= toks.size() && toks[k].kind != DslToken::End; ++k) {
                if (toks[k].kind != DslToken::Ident)
                    throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                     "basis expects identifiers");
                if (index.count(toks[k].text))
                    throw ParseError(ParseCode::DuplicateIdentifier, line_no, toks[k].col,
                                     "duplicate basis identifier '" + toks[k].text + "'");
                index[toks[k].text] = static_cast<int>(doc.basis.size());
                doc.basis.push_back(toks[k].text);
            }
            if (doc.basis.empty())
                throw ParseError(ParseCode::Grammar, line_no, toks[0].col, "empty basis");
            have_basis = true;
            continue;
        }
        if (toks[0].kind == DslToken::LBracket) {
            if (!have_basis)
                throw ParseError(ParseCode::Grammar, line_no, toks[0].col,
                                 "relations must come after the basis line");
            size_t k = 0;
            auto expect = [&](DslToken::Kind kind, const char* what) -> const DslToken& {
                if (toks[k].kind != kind)
                    throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                     std::string("expected ") + what);
                return toks[k++];
            };
            auto lookup = [&](const DslToken& t) {
                auto it = index.find(t.text);
                if (it == index.end())
                    throw ParseError(ParseCode::UnknownIdentifier, line_no, t.col,
                                     "unknown identifier '" + t.text + "'");
                return it->second;
            };
            expect(DslToken::LBracket, "'['");
            int i = lookup(expect(DslToken::Ident, "identifier"));
            expect(DslToken::Comma, "','");
            const DslToken& second = expect(DslToken::Ident, "identifier");
            int j = lookup(second);
            if (i == j)
                throw ParseError(ParseCode::SelfBracket, line_no, second.col,
                                 "[x, x] is structurally zero and may not be written");
            expect(DslToken::RBracket, "']'");
            expect(DslToken::Equals, "'='");

            std::vector<Scalar> rhs(doc.basis.size());
            bool first_term = true;
            while (toks[k].kind != DslToken::End) {
                Scalar sign = 1;
                if (toks[k].kind == DslToken::Plus || toks[k].kind == DslToken::Minus) {
                    if (first_term && toks[k].kind == DslToken::Plus)
                        throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                         "leading '+' is not allowed");
                    sign = toks[k].kind == DslToken::Minus ? -1 : 1;
                    ++k;
                } else if (!first_term) {
                    throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                     "expected '+' or '-' between terms");
                }
                Scalar coef = 1;
                if (toks[k].kind == DslToken::Int) {
                    BigInt num(toks[k].text);
                    ++k;
                    if (toks[k].kind == DslToken::Slash) {
                        ++k;
                        const DslToken& den = expect(DslToken::Int, "denominator");
                        BigInt d(den.text);
                        if (d == 0)
                            throw ParseError(ParseCode::Lex, line_no, den.col,
                                             "zero denominator");
                        coef = Scalar(num, d);
                    } else {
                        coef = Scalar(num);
                    }
                } else if (toks[k].kind != DslToken::Ident) {
                    throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                     "expected a term (coefficient and identifier)");
                }
                int target = lookup(expect(DslToken::Ident, "identifier"));
                rhs[target] += sign * coef;
                first_term = false;
            }
            if (first_term)
                throw ParseError(ParseCode::Grammar, line_no, toks[k].col,
                                 "relation has an empty right-hand side");

            // canonical key i < j; antisymmetric completion is implicit
            std::pair<int, int> key{i, j};
            if (i > j) {
                key = {j, i};
                for (auto& x : rhs) x = -x;
            }
            auto it = resolved.find(key);
            if (it != resolved.end()) {
                if (it->second != rhs)
                    throw ParseError(ParseCode::ContradictoryRelation, line_no, toks[0].col,
                                     "duplicate relation for this pair disagrees with the "
                                     "earlier one (up to antisymmetry)");
            } else {
                resolved.emplace(key, std::move(rhs));
            }
            continue;
        }
        throw ParseError(ParseCode::Grammar, line_no, toks[0].col,
                         "expected 'algebra', 'basis' or a bracket relation");
    }
    if (!have_name) throw ParseError(ParseCode::Grammar, line_no + 1, 1, "missing algebra line");
    if (!have_basis) throw ParseError(ParseCode::Grammar, line_no + 1, 1, "missing basis line");
    for (auto& [key, rhs] : resolved) {
        bool zero = true;
        for (const auto& x : rhs) zero &= x.is_zero();
        if (!zero) doc.brackets.emplace(key, std::move(rhs));
    }
    return doc;
}

inline std::string emit_dsl(const AlgebraDocument& doc) {
    std::string out = "algebra " + doc.name + "\nbasis";
    for (const auto& b : doc.basis) out += " " + b;
    out += "\n";
    for (const auto& [ij, coeffs] : doc.brackets) {
        out += "[" + doc.basis[ij.first] + ", " + doc.basis[ij.second] + "] =";
        bool first = true;
        for (size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k].is_zero()) continue;
            Scalar mag = coeffs[k].abs();
            if (first) {
                out += coeffs[k].sign() < 0 ? " -" : " ";
            } else {
                out += coeffs[k].sign() < 0 ? " - " : " + ";
            }
            if (!mag.is_one()) out += mag.str() + " ";
            out += doc.basis[k];
            first = false;
        }
        out += "\n";
    }
    return out;
}

}  // namespace phc
