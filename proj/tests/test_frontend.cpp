#include <catch2/catch_amalgamated.hpp>

#include "phc/catalog.hpp"
#include "phc/cli.hpp"
#include "phc/dsl.hpp"
#include "phc/json_io.hpp"

using namespace phc;

namespace {
int run_cli(std::initializer_list<const char*> args, std::string* out_text = nullptr) {
    std::vector<const char*> argv{"phc"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return code;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/phc_test_") + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}
}  // namespace

TEST_CASE("dsl parses the catalog presentations") {
    auto doc = parse_algebra("algebra phc5\nbasis X Y Z W\n[X, Y] = X\n");
    CHECK(doc.name == "phc5");
    CHECK(doc.basis == std::vector<std::string>{"X", "Y", "Z", "W"});
    REQUIRE(doc.brackets.count({0, 1}) == 1);
    CHECK(doc.to_algebra().bracket(Vec::unit(4, 0), Vec::unit(4, 1)) == Vec::unit(4, 0));

    auto doc2 = parse_algebra("algebra t\nbasis X Y Z W\n[X, W] = X + 2 Y - 1/2 Z\n");
    auto& coeffs = doc2.brackets.at({0, 3});
    CHECK(coeffs[0] == Scalar(1));
    CHECK(coeffs[1] == Scalar(2));
    CHECK(coeffs[2] == Scalar(-1, 2));
    // coefficient glued to the identifier parses the same way
    auto doc3 = parse_algebra("algebra t\nbasis X Y Z W\n[X, W] = X + 2Y - 1/2Z\n");
    CHECK(doc3.brackets == doc2.brackets);

    // comments and blank lines
    auto doc4 = parse_algebra("# header\nalgebra c # trailing\n\nbasis A B\n[A, B] = B # ok\n");
    CHECK(doc4.name == "c");
    CHECK(doc4.brackets.count({0, 1}) == 1);
}

TEST_CASE("dsl error codes") {
    auto code_of = [](const char* text) {
        try {
            parse_algebra(text);
        } catch (const ParseError& e) {
            return e.code;
        }
        return ParseCode::Lex;  // unreachable marker
    };
    CHECK(code_of("algebra a\nbasis X X\n") == ParseCode::DuplicateIdentifier);
    CHECK(code_of("algebra a\nbasis X Y\n[X, X] = Y\n") == ParseCode::SelfBracket);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Q] = Y\n") == ParseCode::UnknownIdentifier);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Y] = Q\n") == ParseCode::UnknownIdentifier);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Y] = \n") == ParseCode::Grammar);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Y] @ X\n") == ParseCode::Lex);
    CHECK(code_of("basis X Y\n") == ParseCode::Grammar);
    CHECK(code_of("algebra a\n[X, Y] = X\n") == ParseCode::Grammar);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Y] = 1/0 X\n") == ParseCode::Lex);
    CHECK(code_of("algebra a\nbasis X Y\n[X, Y] = X\n[Y, X] = X\n") ==
          ParseCode::ContradictoryRelation);
    // agreeing duplicates (up to antisymmetry) are fine
    CHECK_NOTHROW(parse_algebra("algebra a\nbasis X Y\n[X, Y] = X\n[Y, X] = -X\n"));
    // line/column are tracked
    try {
        parse_algebra("algebra a\nbasis X Y\n[X, %] = X\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.col == 5);
    }
}

TEST_CASE("dsl round trip") {
    for (CatalogId id : {CatalogId::PHC2, CatalogId::PHC6, CatalogId::PHC10}) {
        auto entry = is_phc(id) ? phc_entry(id, id == CatalogId::PHC2 ? CatalogParams{}
                                                                : CatalogParams{{"a", Scalar(1)},
                                                                                {"b", Scalar(-1, 2)}})
                                : hc_entry(id);
        auto doc = AlgebraDocument::from_algebra(entry.algebra, to_string(id));
        auto text = emit_dsl(doc);
        CHECK(parse_algebra(text) == doc);
    }
}

TEST_CASE("algebra json round trips byte-for-byte") {
    for (CatalogId id : {CatalogId::PHC4, CatalogId::PHC7, CatalogId::HC5}) {
        CatalogEntry entry = is_phc(id) ? phc_entry(id) : hc_entry(id);
        auto doc = AlgebraDocument::from_algebra(entry.algebra, to_string(id));
        std::string bytes = emit_algebra_json(doc);
        auto parsed = parse_algebra_json(bytes);
        CHECK(parsed == doc);
        CHECK(emit_algebra_json(parsed) == bytes);  // canonical emission
    }
}

TEST_CASE("json schema violations carry pointers") {
    auto pointer_of = [](const std::string& text) {
        try {
            parse_algebra_json(text);
        } catch (const ParseError& e) {
            CHECK(e.code == ParseCode::Schema);
            return e.pointer;
        }
        return std::string("NO-ERROR");
    };
    CHECK(pointer_of(R"({"basis":["X","Y"],"brackets":[]})") == "/name");
    CHECK(pointer_of(R"({"name":"a","basis":["X","X"],"brackets":[]})") == "/basis/1");
    // negative denominator
    CHECK(pointer_of(R"({"name":"a","basis":["X","Y"],)"
                     R"("brackets":[{"i":0,"j":1,"terms":[{"k":0,"num":"1","den":"-2"}]}]})") ==
          "/brackets/0/terms/0/den");
    // i >= j
    CHECK(pointer_of(R"({"name":"a","basis":["X","Y"],)"
                     R"("brackets":[{"i":1,"j":0,"terms":[]}]})") == "/brackets/0");
    // unreduced fraction
    CHECK(pointer_of(R"({"name":"a","basis":["X","Y"],)"
                     R"("brackets":[{"i":0,"j":1,"terms":[{"k":0,"num":"2","den":"4"}]}]})") ==
          "/brackets/0/terms/0");
    // floats are rejected wholesale
    CHECK(pointer_of(R"({"name":"a","basis":["X","Y"],)"
                     R"("brackets":[{"i":0,"j":1,"terms":[{"k":0,"num":1.5,"den":"1"}]}]})") ==
          "/brackets/0/terms/0/num");
}

TEST_CASE("structure json round trips") {
    auto entry = phc_entry(CatalogId::PHC10);
    auto sd = StructureDocument::from_triple(*entry.structure);
    std::string bytes = emit_structure_json(sd);
    auto parsed = parse_structure_json(bytes);
    CHECK(parsed == sd);
    CHECK(emit_structure_json(parsed) == bytes);
    // malformed rational
    try {
        parse_structure_json(R"({"j1":[["x"]],"j2":[["1"]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pointer == "/j1/0/0");
    }
}

TEST_CASE("parser survives fuzzing") {
    // deterministic byte soup plus mutated valid documents; parsers must
    // throw structured errors or succeed, never crash
    std::string valid = emit_algebra_json(
        AlgebraDocument::from_algebra(phc_entry(CatalogId::PHC6).algebra, "PHC6"));
    std::uint64_t state = 12345;
    int parsed_ok = 0;
    for (int iter = 0; iter < 20000; ++iter) {
        state = splitmix64(state);
        std::string input;
        if (iter % 3 == 0) {
            input = valid;
            int flips = 1 + static_cast<int>(state % 4);
            for (int f = 0; f < flips; ++f) {
                state = splitmix64(state);
                input[state % input.size()] = static_cast<char>(splitmix64(state ^ f) % 256);
            }
        } else {
            int len = static_cast<int>(state % 60);
            for (int k = 0; k < len; ++k) {
                state = splitmix64(state);
                const char alphabet[] = "ab XYZW[],=+-/#0123456789\n{}\":";
                input += alphabet[state % (sizeof(alphabet) - 1)];
            }
        }
        try {
            parse_algebra_any(input);
            ++parsed_ok;
        } catch (const ParseError&) {
        } catch (const UsageError&) {
        }
    }
    CHECK(parsed_ok >= 0);  // reaching here means no crash
}

TEST_CASE("cli end-to-end contract") {
    // catalog emission, then self-check: exit 0
    std::string alg_path = "/tmp/phc_test_phc2.alg.json";
    std::string str_path = "/tmp/phc_test_phc2.str.json";
    CHECK(run_cli({"catalog", "--id", "PHC2", "--algebra-out", alg_path.c_str(),
                   "--structure-out", str_path.c_str()}) == cli::kOk);
    CHECK(run_cli({"check", alg_path.c_str(), "--structure", str_path.c_str()}) == cli::kOk);

    // forbidden parameter: exit 2
    CHECK(run_cli({"catalog", "--id", "PHC10", "--params", "c=0"}) == cli::kUsage);

    // mismatched structure: exit 1
    std::string alg3 = "/tmp/phc_test_phc3.alg.json";
    CHECK(run_cli({"catalog", "--id", "PHC3", "--algebra-out", alg3.c_str()}) == cli::kOk);
    CHECK(run_cli({"check", alg3.c_str(), "--structure", str_path.c_str()}) ==
          cli::kCheckFailed);

    // jacobi failure: exit 1
    auto bad = write_temp("bad.alg", "algebra bad\nbasis X Y Z W\n[X, Y] = Z\n[Y, Z] = Y\n");
    CHECK(run_cli({"check", bad.c_str()}) == cli::kCheckFailed);

    // parse garbage: exit 2
    auto garbage = write_temp("garbage.alg", "algebra g\nbasis X Y\n[X, Y] @= X\n");
    CHECK(run_cli({"check", garbage.c_str()}) == cli::kUsage);
    CHECK(run_cli({"check", "/tmp/phc_no_such_file_anywhere"}) == cli::kUsage);

    // metric on a catalog pair
    std::string metric_out;
    CHECK(run_cli({"metric", alg_path.c_str(), "--structure", str_path.c_str(), "--json"},
                  &metric_out) == cli::kOk);
    CHECK(metric_out.find("\"signature\"") != std::string::npos);
    CHECK(metric_out.find("\"positive\":2") != std::string::npos);
    // null anchor: exit 1
    CHECK(run_cli({"metric", alg_path.c_str(), "--structure", str_path.c_str(), "--anchor",
                   "0,1,1,0"}) == cli::kCheckFailed);

    // classify emits candidates
    std::string classify_out;
    CHECK(run_cli({"classify", alg_path.c_str(), "--json"}, &classify_out) == cli::kOk);
    CHECK(classify_out.find("PHC2") != std::string::npos);

    // plane classification on the abelian worked example
    std::string alg1 = "/tmp/phc_test_phc1.alg.json";
    std::string str1 = "/tmp/phc_test_phc1.str.json";
    CHECK(run_cli({"catalog", "--id", "PHC1", "--algebra-out", alg1.c_str(), "--structure-out",
                   str1.c_str()}) == cli::kOk);
    std::string plane_out;
    CHECK(run_cli({"plane", alg1.c_str(), "--structure", str1.c_str(), "--span",
                   "0,0,1,0;1,0,0,0"}, &plane_out) == cli::kOk);
    CHECK(plane_out.find("Definite") != std::string::npos);

    // search on a small abelian run: exit 0 with a certificate
    CHECK(run_cli({"search", alg1.c_str(), "--restarts", "25", "--seed", "7", "--json"}) ==
          cli::kOk);
}

TEST_CASE("catalog dsl emission parses back") {
    std::string text;
    CHECK(run_cli({"catalog", "--id", "PHC6", "--params", "a=-3,b=1/2", "--emit", "dsl"},
                  &text) == cli::kOk);
    auto doc = parse_algebra(text);
    CHECK(doc.name == "PHC6(a=-3,b=1/2)");
    auto expect = phc_entry(CatalogId::PHC6, {{"a", Scalar(-3)}, {"b", Scalar(1, 2)}}).algebra;
    CHECK(doc.to_algebra().table() == expect.table());
}
