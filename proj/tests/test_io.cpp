#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qroc/io.hpp"

using namespace qroc;

TEST_CASE("parse density spec") {
    StateSpec s = parse_state_spec(R"({"kind":"density","dim":2,
        "matrix":[[[0.8,0],[0,0.1]],[[0,-0.1],[0.2,0]]]})");
    CHECK(s.kind == StateSpec::Kind::Density);
    CHECK(s.density.matrix(0, 0).real() == doctest::Approx(0.8));
    CHECK(s.density.matrix(0, 1).imag() == doctest::Approx(0.1));
}

TEST_CASE("parse gaussian spec") {
    StateSpec s = parse_state_spec(R"({"kind":"gaussian","modes":1,
        "mean":[0.5,-0.5],"cov":[[1.0,0.0],[0.0,1.0]]})");
    CHECK(s.kind == StateSpec::Kind::Gaussian);
    CHECK(s.gaussian.modes == 1);
    CHECK(s.gaussian.mean(0) == doctest::Approx(0.5));
}

TEST_CASE("parse pure-overlap spec") {
    StateSpec s = parse_state_spec(R"({"kind":"pure-overlap","fidelity":0.9})");
    CHECK(s.kind == StateSpec::Kind::PureOverlap);
    CHECK(s.fidelity == doctest::Approx(0.9));
    CHECK_THROWS_AS(parse_state_spec(R"({"kind":"pure-overlap","fidelity":1.5})"),
                    ParameterOutOfRange);
}

TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(parse_state_spec("not json"), MalformedInput);
    CHECK_THROWS_AS(parse_state_spec(R"({"kind":"density"})"), MalformedInput);
    CHECK_THROWS_AS(parse_state_spec(R"({"kind":"widget"})"), UnsupportedInput);
    CHECK_THROWS_AS(
        parse_state_spec(R"({"kind":"density","dim":2,"matrix":[[[1,0]]]})"),
        DimensionMismatch);
    // validation is delegated: trace != 1
    CHECK_THROWS_AS(parse_state_spec(R"({"kind":"density","dim":1,
        "matrix":[[[0.9,0]]]})"),
                    TraceNotOne);
}

TEST_CASE("csv emission is sorted and round-trips bit-exactly") {
    std::vector<CurveRecord> recs;
    recs.push_back({"zeta", 0.123456789012345678, std::nullopt, 0.5, 0.25});
    recs.push_back({"alpha", std::nullopt, 0.5, 1.0 / 3.0, 2.0 / 3.0});
    recs.push_back({"alpha", 0.25, 1.0, 0.1, 0.9});

    std::ostringstream os;
    write_csv(os, recs);
    const std::string text = os.str();
    CHECK(text.rfind("bound,p,q,beta,alpha\n", 0) == 0);

    std::istringstream is(text);
    std::vector<CurveRecord> parsed = parse_csv(is);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].bound == "alpha");
    CHECK(parsed[0].beta == 0.1);  // sorted by (bound, beta)
    CHECK(parsed[2].bound == "zeta");
    // bit-exact round trip through the 17-significant-digit format
    std::ostringstream os2;
    write_csv(os2, parsed);
    CHECK(os2.str() == text);
}

TEST_CASE("format determinism") {
    CHECK(format_value(1.0 / 3.0) == format_value(1.0 / 3.0));
    CHECK(std::stod(format_value(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("records from a curve keep the kernel tag") {
    ROCCurve c;
    c.points.push_back({0.4, 0.0, 0.8, 0.1, PointKind::KernelSegment, ""});
    c.points.push_back({0.5, 0.5, 0.6, 0.2, PointKind::Exact, ""});
    std::vector<CurveRecord> recs = records_from_curve(c, "exact");
    CHECK(recs[0].bound == "exact-kernel");
    CHECK(recs[1].bound == "exact");
    CHECK(recs[1].p.has_value());
}

TEST_CASE("svg writer emits one polyline per bound") {
    std::vector<CurveRecord> recs;
    for (int i = 0; i <= 4; ++i) {
        const double b = i / 4.0;
        recs.push_back({"one", std::nullopt, std::nullopt, b, 1.0 - b});
        recs.push_back({"two", std::nullopt, std::nullopt, b, (1.0 - b) / 2});
    }
    const std::string path = "test_io_plot.svg";
    write_svg(path, recs, false);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') > 4);
    size_t polylines = 0, pos = 0;
    while ((pos = text.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        ++pos;
    }
    CHECK(polylines == 2);
    std::remove(path.c_str());
}
