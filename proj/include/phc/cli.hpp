#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "phc/catalog.hpp"
#include "phc/classify.hpp"
#include "phc/json_io.hpp"
#include "phc/search.hpp"

namespace phc::cli {

// exit codes: 0 pass, 1 check failure, 2 usage/parse error, 3 search
// ended without a certificate
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kNotFound = 3;

namespace detail {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AlgebraDocument load_algebra(const std::string& path) {
    return parse_algebra_any(read_file(path));
}

inline StructureDocument load_structure(const std::string& path, int dim) {
    StructureDocument sd = parse_structure_json(read_file(path));
    if (sd.dim() != dim)
        throw UsageError("structure dimension " + std::to_string(sd.dim()) +
                         " does not match the algebra dimension " + std::to_string(dim));
    return sd;
}

inline Vec parse_rational_csv(const std::string& text, int dim) {
    Vec v(dim);
    std::stringstream ss(text);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= dim) throw UsageError("too many coordinates in '" + text + "'");
        v[k++] = Scalar::parse(item);
    }
    if (k != dim) throw UsageError("expected " + std::to_string(dim) + " coordinates");
    return v;
}

inline CatalogParams parse_params(const std::string& text) {
    CatalogParams params;
    if (text.empty()) return params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("parameters look like a=1,b=-1/2; got '" + item + "'");
        params[item.substr(0, eq)] = Scalar::parse(item.substr(eq + 1));
    }
    return params;
}

inline json gram_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json signature_json(const Signature& s) {
    return json{{"negative", s.negative}, {"positive", s.positive}, {"zero", s.zero}};
}

inline json vec_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i].str());
    return a;
}

inline json triple3_json(const Triple3& t) {
    return json::array({t.x1.str(), t.x2.str(), t.x3.str()});
}

inline json fingerprint_json(const Fingerprint& fp) {
    return json{{"decomposable_2_2", fp.decomposable_2_2},
                {"derived_is_abelian", fp.derived_is_abelian},
                {"derived_is_heisenberg", fp.derived_is_heisenberg},
                {"dim_center", fp.dim_center},
                {"dim_derived", fp.dim_derived},
                {"dim_second_derived", fp.dim_second_derived},
                {"killing_signature", signature_json(fp.killing_signature)},
                {"lower_central_dims", fp.lower_central_dims},
                {"nilpotent", fp.nilpotent},
                {"solvable", fp.solvable}};
}

struct CheckOutcome {
    bool pass = true;
    json report = json::object();
};

inline CheckOutcome run_check(const AlgebraDocument& doc,
                              const std::optional<StructureDocument>& sd) {
    CheckOutcome out;
    auto defects = doc.to_table().jacobi_defects();
    out.report["algebra"] = doc.name;
    out.report["jacobi"] = defects.empty();
    if (!defects.empty()) {
        json list = json::array();
        for (const auto& d : defects)
            list.push_back(json{{"triple", {d.i, d.j, d.k}}, {"sum", vec_json(d.cyclic_sum)}});
        out.report["jacobi_defects"] = std::move(list);
        out.pass = false;
        return out;
    }
    if (!sd) return out;
    LieAlgebra alg = doc.to_algebra();
    auto violations = PHTriple::violations(sd->j1, sd->j2);
    json vio = json::array();
    for (auto v : violations) vio.push_back(to_string(v));
    out.report["pair_identities"] = violations.empty();
    out.report["pair_violations"] = std::move(vio);
    if (!violations.empty()) {
        out.pass = false;
        return out;
    }
    PHTriple t = PHTriple::make(sd->j1, sd->j2);
    bool i1 = is_integrable(alg, t.j1(), StructureKind::Complex);
    bool i2 = is_integrable(alg, t.j2(), StructureKind::Product);
    out.report["j1_integrable"] = i1;
    out.report["j2_integrable"] = i2;
    out.pass = i1 && i2;
    return out;
}

inline json search_json(const SearchResult& res, const SearchConfig& cfg) {
    json trace = json::array();
    for (const auto& t : res.trace)
        trace.push_back(json{{"certified", t.certified},
                             {"iterations", t.iterations},
                             {"residual", t.final_residual},
                             {"restart", t.restart}});
    json out{{"best_residual", res.best_residual},
             {"config",
              json{{"init_scale", cfg.init_scale},
                   {"max_denominator", cfg.max_denominator},
                   {"max_iterations", cfg.max_iterations},
                   {"residual_tolerance", cfg.residual_tolerance},
                   {"restarts", cfg.restarts},
                   {"seed", cfg.seed}}},
             {"note", "NotFound is inconclusive: absence of a certificate is "
                      "not a nonexistence proof"},
             {"status", to_string(res.status)},
             {"trace", std::move(trace)}};
    if (res.triple) {
        out["structure"] =
            json::parse(emit_structure_json(StructureDocument::from_triple(*res.triple)));
    }
    return out;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    using detail::json;
    CLI::App app{"exact toolkit for para-hypercomplex structures on "
                 "4-dimensional Lie algebras"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "verify Jacobi and, optionally, a structure pair");
    std::string check_algebra, check_structure;
    bool check_json = false;
    check->add_option("algebra", check_algebra, "algebra file (DSL or JSON)")->required();
    check->add_option("--structure", check_structure, "structure file (JSON)");
    check->add_flag("--json", check_json, "machine-readable output");

    // metric
    auto* metric = app.add_subcommand("metric", "construct the hermitian metric of a structure");
    std::string metric_algebra, metric_structure, metric_anchor;
    bool metric_json = false;
    metric->add_option("algebra", metric_algebra)->required();
    metric->add_option("--structure", metric_structure)->required();
    metric->add_option("--anchor", metric_anchor, "comma-separated rational coordinates");
    metric->add_flag("--json", metric_json);

    // search
    auto* search = app.add_subcommand("search", "numeric search with exact certification");
    std::string search_algebra;
    SearchConfig cfg;
    bool search_json = false;
    search->add_option("algebra", search_algebra)->required();
    search->add_option("--restarts", cfg.restarts);
    search->add_option("--seed", cfg.seed);
    search->add_option("--tol", cfg.residual_tolerance);
    search->add_option("--max-denom", cfg.max_denominator);
    search->add_option("--max-iter", cfg.max_iterations);
    search->add_flag("--json", search_json);

    // classify
    auto* classify = app.add_subcommand("classify", "fingerprint and candidate families");
    std::string classify_algebra;
    bool classify_json = false, classify_evidence = false;
    classify->add_option("algebra", classify_algebra)->required();
    classify->add_flag("--json", classify_json);
    classify->add_flag("--evidence", classify_evidence, "attach search evidence");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "emit catalog entries");
    std::string catalog_id, catalog_params, catalog_emit = "json";
    std::string catalog_algebra_out, catalog_structure_out;
    catalog->add_option("--id", catalog_id, "PHC1..PHC10 or HC1..HC5")->required();
    catalog->add_option("--params", catalog_params, "k=v,... (a, b, c)");
    catalog->add_option("--emit", catalog_emit)->check(CLI::IsMember({"dsl", "json"}));
    catalog->add_option("--algebra-out", catalog_algebra_out, "write the algebra file here");
    catalog->add_option("--structure-out", catalog_structure_out, "write the structure file here");

    // plane
    auto* plane = app.add_subcommand("plane", "classify a 2-plane with adapted structures");
    std::string plane_algebra, plane_structure, plane_span;
    bool plane_json = false;
    plane->add_option("algebra", plane_algebra)->required();
    plane->add_option("--structure", plane_structure)->required();
    plane->add_option("--span", plane_span, "v1;v2 with rational csv coordinates")->required();
    plane->add_flag("--json", plane_json);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) {
            auto doc = detail::load_algebra(check_algebra);
            std::optional<StructureDocument> sd;
            if (!check_structure.empty())
                sd = detail::load_structure(check_structure, doc.dim());
            auto outcome = detail::run_check(doc, sd);
            if (check_json) {
                out << outcome.report.dump() << "\n";
            } else {
                out << (outcome.pass ? "PASS" : "FAIL") << " " << outcome.report.dump() << "\n";
            }
            return outcome.pass ? kOk : kCheckFailed;
        }
        if (metric->parsed()) {
            auto doc = detail::load_algebra(metric_algebra);
            auto sd = detail::load_structure(metric_structure, doc.dim());
            auto violations = PHTriple::violations(sd.j1, sd.j2);
            if (!violations.empty()) {
                err << "structure is not a para-hypercomplex pair\n";
                return kCheckFailed;
            }
            PHTriple t = PHTriple::make(sd.j1, sd.j2);
            BilinearForm g(Mat::identity(4));
            Vec anchor(4);
            if (!metric_anchor.empty()) {
                anchor = detail::parse_rational_csv(metric_anchor, doc.dim());
                auto maybe = try_metric_from_anchor(t, anchor);
                if (!maybe) {
                    err << "anchor is null: the frame (X, J1X, J2X, J3X) degenerates\n";
                    return kCheckFailed;
                }
                g = *maybe;
            } else {
                auto am = hermitian_metric(t);
                g = am.g;
                anchor = am.anchor;
            }
            json rep{{"anchor", detail::vec_json(anchor)},
                     {"gram", detail::gram_json(g.gram())},
                     {"signature", detail::signature_json(g.signature())}};
            if (metric_json)
                out << rep.dump() << "\n";
            else
                out << "anchor " << anchor.str() << "\nsignature " << g.signature().str()
                    << "\n" << g.gram().str();
            return kOk;
        }
        if (search->parsed()) {
            auto doc = detail::load_algebra(search_algebra);
            LieAlgebra alg = doc.to_algebra();
            auto res = search_structure(alg, cfg);
            json rep = detail::search_json(res, cfg);
            if (search_json) {
                out << rep.dump() << "\n";
            } else {
                out << to_string(res.status) << " best_residual=" << res.best_residual << "\n";
                if (res.triple)
                    out << emit_structure_json(StructureDocument::from_triple(*res.triple))
                        << "\n";
            }
            return res.status == SearchStatus::Certified ? kOk : kNotFound;
        }
        if (classify->parsed()) {
            auto doc = detail::load_algebra(classify_algebra);
            LieAlgebra alg = doc.to_algebra();
            auto fp = fingerprint(alg);
            auto match = match_family(alg, classify_evidence);
            json cands = json::array();
            for (auto id : match.candidates) cands.push_back(to_string(id));
            json rep{{"algebra", doc.name},
                     {"candidates", std::move(cands)},
                     {"fingerprint", detail::fingerprint_json(fp)},
                     {"note", "candidate families by invariant fingerprint; "
                              "not an isomorphism verdict"}};
            if (match.evidence) rep["evidence"] = detail::search_json(*match.evidence, {});
            if (classify_json)
                out << rep.dump() << "\n";
            else
                out << doc.name << ": " << fp.str() << "\n" << rep["candidates"].dump() << "\n";
            return kOk;
        }
        if (catalog->parsed()) {
            auto idOpt = parse_catalog_id(catalog_id);
            if (!idOpt) throw UsageError("unknown catalog id '" + catalog_id + "'");
            CatalogParams params = detail::parse_params(catalog_params);
            CatalogEntry entry = is_phc(*idOpt) ? phc_entry(*idOpt, params) : hc_entry(*idOpt);
            std::string label = to_string(entry.id);
            if (!entry.params.empty()) {
                label += "(";
                bool first = true;
                for (const auto& [k, v] : entry.params) {
                    if (!first) label += ",";
                    label += k + "=" + v.str();
                    first = false;
                }
                label += ")";
            }
            AlgebraDocument adoc = AlgebraDocument::from_algebra(entry.algebra, label);
            std::string algebra_text =
                catalog_emit == "dsl" ? emit_dsl(adoc) : emit_algebra_json(adoc) + "\n";
            std::optional<std::string> structure_text;
            if (entry.structure)
                structure_text =
                    emit_structure_json(StructureDocument::from_triple(*entry.structure)) + "\n";
            if (!catalog_algebra_out.empty()) {
                std::ofstream f(catalog_algebra_out, std::ios::binary);
                if (!f) throw UsageError("cannot write '" + catalog_algebra_out + "'");
                f << algebra_text;
            }
            if (!catalog_structure_out.empty()) {
                if (!structure_text)
                    throw UsageError(to_string(entry.id) + " carries no structure pair");
                std::ofstream f(catalog_structure_out, std::ios::binary);
                if (!f) throw UsageError("cannot write '" + catalog_structure_out + "'");
                f << *structure_text;
            }
            if (catalog_algebra_out.empty() && catalog_structure_out.empty()) {
                if (catalog_emit == "dsl") {
                    out << algebra_text;
                } else {
                    json rep{{"algebra", json::parse(emit_algebra_json(adoc))},
                             {"id", to_string(entry.id)},
                             {"printed_structure_verified", entry.printed_structure_verified},
                             {"structure", structure_text
                                               ? json::parse(emit_structure_json(
                                                     StructureDocument::from_triple(
                                                         *entry.structure)))
                                               : json(nullptr)}};
                    if (!entry.note.empty()) rep["note"] = entry.note;
                    if (entry.printed_structure)
                        rep["printed_structure"] = json::parse(emit_structure_json(
                            StructureDocument::from_triple(*entry.printed_structure)));
                    out << rep.dump() << "\n";
                }
            }
            if (!entry.printed_structure_verified)
                err << "note: " << entry.note << "\n";
            return kOk;
        }
        if (plane->parsed()) {
            auto doc = detail::load_algebra(plane_algebra);
            auto sd = detail::load_structure(plane_structure, doc.dim());
            PHTriple t = PHTriple::make(sd.j1, sd.j2);
            auto semi = plane_span.find(';');
            if (semi == std::string::npos)
                throw UsageError("--span expects 'v1;v2' with rational csv coordinates");
            Vec v1 = detail::parse_rational_csv(plane_span.substr(0, semi), doc.dim());
            Vec v2 = detail::parse_rational_csv(plane_span.substr(semi + 1), doc.dim());
            auto am = hermitian_metric(t);
            auto cls = classify_plane(t, am.g, Subspace::span(doc.dim(), {v1, v2}));
            json rep{{"class", to_string(cls.tag)}};
            if (cls.adapted)
                rep["adapted"] = json{{"x", detail::triple3_json(cls.adapted->x)},
                                      {"y", detail::triple3_json(cls.adapted->y)}};
            if (cls.null_witness) rep["null_witness"] = detail::vec_json(*cls.null_witness);
            if (cls.base_point) rep["base_point"] = detail::vec_json(*cls.base_point);
            if (plane_json)
                out << rep.dump() << "\n";
            else
                out << to_string(cls.tag) << " " << rep.dump() << "\n";
            return kOk;
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace phc::cli
