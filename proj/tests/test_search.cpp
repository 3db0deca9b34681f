#include <catch2/catch_amalgamated.hpp>

#include "phc/catalog.hpp"
#include "phc/search.hpp"

using namespace phc;

namespace {
std::array<double, 16> to_floats(const Mat& m) {
    std::array<double, 16> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[4 * i + j] = m.at(i, j).to_double();
    return out;
}

std::array<double, 16> identity16() {
    std::array<double, 16> out{};
    for (int i = 0; i < 4; ++i) out[5 * i] = 1.0;
    return out;
}
}  // namespace

TEST_CASE("residual vanishes exactly on true structures") {
    for (CatalogId id : {CatalogId::PHC2, CatalogId::PHC7, CatalogId::PHC10}) {
        auto entry = phc_entry(id);
        double r = residual(entry.algebra, to_floats(entry.structure->j1()),
                            to_floats(entry.structure->j2()));
        CHECK(r <= 1e-24);
    }
}

TEST_CASE("residual of the identity pair") {
    // A = B = I on the abelian algebra: |A^2+I|^2 = |2I|^2 = 16, the B term
    // vanishes, |AB+BA|^2 = 16, no bracket terms: exactly 32
    auto abelian = phc_entry(CatalogId::PHC1).algebra;
    double r = residual(abelian, identity16(), identity16());
    CHECK(r == Catch::Approx(32.0).epsilon(1e-12));
    CHECK(r >= 16.0);
    // on any algebra the matrix-identity part alone keeps it >= 16
    CHECK(residual(phc_entry(CatalogId::PHC2).algebra, identity16(), identity16()) >= 16.0);
}

TEST_CASE("levenberg-marquardt residuals decrease") {
    auto alg = phc_entry(CatalogId::PHC1).algebra;
    SearchConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 11;
    auto res = search_structure(alg, cfg);
    REQUIRE(!res.trace.empty());
    for (const auto& t : res.trace) CHECK(t.final_residual < 64.0);
}

TEST_CASE("certification by continued-fraction rounding") {
    auto entry = phc_entry(CatalogId::PHC8);
    auto a = to_floats(entry.structure->j1());
    auto b = to_floats(entry.structure->j2());
    auto res = certify(entry.algebra, a, b, 10000);
    REQUIRE(std::holds_alternative<PHTriple>(res));
    CHECK(std::get<PHTriple>(res).j1() == entry.structure->j1());

    // conjugating by an irrational basis change leaves a numeric structure
    // (residual at machine zero) whose entries have no small-denominator
    // rational form, so exact certification fails
    double s = std::sqrt(2.0) / 4.0;
    double p[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {s, 0, 1, 0}, {0, 0, 0, 1}};
    double pinv[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {-s, 0, 1, 0}, {0, 0, 0, 1}};
    auto conj = [&](const std::array<double, 16>& m) {
        std::array<double, 16> r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = 0;
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) v += pinv[i][k] * m[4 * k + l] * p[l][j];
                r[4 * i + j] = v;
            }
        return r;
    };
    // the conjugated pair still solves the *pair* identities numerically
    auto alg_conj = entry.algebra;  // same constants: P is not an automorphism,
                                    // but the pair identities alone stay exact
    auto a2 = conj(a), b2 = conj(b);
    auto res2 = certify(alg_conj, a2, b2, 10000);
    REQUIRE(std::holds_alternative<CertificationFailed>(res2));
    CHECK(!std::get<CertificationFailed>(res2).which.empty());
}

TEST_CASE("search certifies the abelian algebra quickly") {
    SearchConfig cfg;
    cfg.restarts = 40;
    cfg.seed = 7;
    auto res = search_structure(phc_entry(CatalogId::PHC1).algebra, cfg);
    REQUIRE(res.status == SearchStatus::Certified);
    REQUIRE(res.triple.has_value());
    // soundness: the certificate re-verifies from scratch in exact arithmetic
    auto alg = phc_entry(CatalogId::PHC1).algebra;
    CHECK(PHTriple::violations(res.triple->j1(), res.triple->j2()).empty());
    CHECK(is_integrable(alg, res.triple->j1(), StructureKind::Complex));
    CHECK(is_integrable(alg, res.triple->j2(), StructureKind::Product));
}

TEST_CASE("search is deterministic") {
    SearchConfig cfg;
    cfg.restarts = 6;
    cfg.seed = 3;
    auto alg = phc_entry(CatalogId::PHC5).algebra;
    auto r1 = search_structure(alg, cfg);
    auto r2 = search_structure(alg, cfg);
    CHECK(r1.status == r2.status);
    CHECK(r1.best_residual == r2.best_residual);
    REQUIRE(r1.trace.size() == r2.trace.size());
    for (size_t k = 0; k < r1.trace.size(); ++k) {
        CHECK(r1.trace[k].iterations == r2.trace[k].iterations);
        CHECK(r1.trace[k].final_residual == r2.trace[k].final_residual);
        CHECK(r1.trace[k].certified == r2.trace[k].certified);
    }
    if (r1.triple && r2.triple) {
        CHECK(r1.triple->j1() == r2.triple->j1());
        CHECK(r1.triple->j2() == r2.triple->j2());
    }
}

TEST_CASE("conjugation covariance of certificates") {
    SearchConfig cfg;
    cfg.restarts = 40;
    cfg.seed = 5;
    auto alg = phc_entry(CatalogId::PHC4).algebra;
    auto res = search_structure(alg, cfg);
    REQUIRE(res.status == SearchStatus::Certified);
    Mat p = random_unimodular(4, 4242);
    Mat pinv = p.inverse();
    auto conj = alg.change_of_basis(p);
    Mat j1c = pinv * res.triple->j1() * p;
    Mat j2c = pinv * res.triple->j2() * p;
    CHECK(PHTriple::violations(j1c, j2c).empty());
    CHECK(is_integrable(conj, j1c, StructureKind::Complex));
    CHECK(is_integrable(conj, j2c, StructureKind::Product));
}

TEST_CASE("counter rng is stateless across restarts") {
    CounterRng a(42, 3), b(42, 3), c(42, 4);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    CounterRng d(42, 0);
    for (int i = 0; i < 1000; ++i) {
        double u = d.uniform(-2.0, 2.0);
        CHECK(u >= -2.0);
        CHECK(u < 2.0);
    }
}

TEST_CASE("random unimodular matrices are unimodular") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Mat p = random_unimodular(4, seed);
        CHECK(p.det().abs() == Scalar(1));
        // integer entries
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(p.at(i, j).den() == 1);
    }
}

TEST_CASE("searching a non-4-dimensional algebra is a usage error") {
    CHECK_THROWS_AS(search_structure(LieAlgebra::abelian(3, {"a", "b", "c"}), SearchConfig{}),
                    UsageError);
}
