#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "doc_fixtures.hpp"
#include "qwiener/errors.hpp"
#include "qwiener/serialize.hpp"

using namespace qwiener;

TEST_CASE("round trip is bitwise across kinds and bases") {
    Rng rng(20260816ull);
    for (int k = 0; k < 200; ++k) {
        const SeriesDocument doc = random_document(rng);
        const std::string text = render_document(doc);
        const SeriesDocument back = parse_document(text);
        CHECK(documents_bit_equal(doc, back));
        CHECK(render_document(back) == text);
    }
}

TEST_CASE("negative zero and extreme magnitudes survive") {
    const QSeries f(-1, {Quaternion{-0.0, 2.2250738585072014e-308, 0.1, 4.9e-324},
                         Quaternion{1.7976931348623157e308, -1.0 / 3.0, 0.0, -0.0}});
    const SeriesDocument doc = SeriesDocument::of(f);
    const SeriesDocument back = parse_document(render_document(doc));
    CHECK(documents_bit_equal(doc, back));
    CHECK(std::signbit(back.qs.coeffs[0].x0));
    CHECK(!std::signbit(back.qs.coeffs[1].x2));
    CHECK(std::signbit(back.qs.coeffs[1].x3));
}

TEST_CASE("integer literals parse as coefficients") {
    const std::string text =
        "{\"count\":2,\"kind\":\"qseries\",\"min_deg\":0}\n[1,0,0,0]\n[0,-2,0,3]\n";
    const SeriesDocument doc = parse_document(text);
    CHECK(doc.kind == DocKind::QSeriesDoc);
    CHECK(doc.qs.min_deg == 0);
    REQUIRE(doc.qs.coeffs.size() == 2);
    CHECK(doc.qs.coeffs[0] == Quaternion(1.0));
    CHECK(doc.qs.coeffs[1] == Quaternion{0.0, -2.0, 0.0, 3.0});
}

TEST_CASE("malformed documents are refused") {
    CHECK_THROWS_AS((void)parse_document("not a document\n"), DomainError);
    CHECK_THROWS_AS((void)parse_document(""), DomainError);
    CHECK_THROWS_AS((void)parse_document("{}\n"), DomainError);
    CHECK_THROWS_AS((void)parse_document("{\"kind\":\"mystery\",\"count\":0}\n"), DomainError);
    CHECK_THROWS_AS(
        (void)parse_document("{\"count\":2,\"kind\":\"qseries\",\"min_deg\":0}\n[1,0,0,0]\n"),
        DomainError);
    CHECK_THROWS_AS(
        (void)parse_document("{\"count\":1,\"kind\":\"qseries\",\"min_deg\":0}\n[1,0,0]\n"),
        DomainError);
    CHECK_THROWS_AS(
        (void)parse_document("{\"count\":1,\"kind\":\"qseries\",\"min_deg\":0}\n[1,0,0,\"x\"]\n"),
        DomainError);
    CHECK_THROWS_AS((void)parse_document("{\"count\":1,\"kind\":\"celement\"}\n[1,0,0,0]\n"),
                    DomainError);
    CHECK_THROWS_AS((void)parse_document("{\"count\":1,\"du\":0.5,\"kind\":\"hardy\"}\n[1]\n"),
                    DomainError);
    const std::string skew =
        "{\"basis\":{\"i\":[0,1,0,0],\"j\":[0,1,0,0]},\"count\":1,\"kind\":\"qvec\"}\n"
        "[1,0,0,0]\n";
    CHECK_THROWS_AS((void)parse_document(skew), DomainError);
}

TEST_CASE("documents survive the filesystem") {
    Rng rng(7ull);
    const SeriesDocument doc = random_document(rng);
    const std::string path = "serialize_roundtrip.tmp";
    save_document(path, doc);
    const SeriesDocument back = load_document(path);
    CHECK(documents_bit_equal(doc, back));
    std::remove(path.c_str());
    CHECK_THROWS_AS((void)load_document("no_such_directory/missing.doc"), DomainError);
}
