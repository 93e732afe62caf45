#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "aploco/report.hpp"
#include "aploco/util.hpp"

#include "test_support.hpp"

using namespace aploco;

TEST_CASE("format_fixed: half-up at the requested precision") {
    CHECK(format_fixed(0.0188, 3) == "0.019");
    CHECK(format_fixed(1.0, 3) == "1.000");
    CHECK(format_fixed(0.125, 2) == "0.13");
    CHECK(format_fixed(1.4426950408889634, 2) == "1.44");
    CHECK(format_fixed(22282.0, 2) == "22282.00");
    CHECK(format_fixed(0.0, 2) == "0.00");
    CHECK(format_fixed(-0.5, 0) == "-1");
    CHECK(format_fixed(2.5, 0) == "3");
    CHECK(format_fixed(0.9458002706085141, 3) == "0.946");
}

TEST_CASE("format_full round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 22665.0, 1.4426950408889634, -0.0075}) {
        CHECK(std::stod(format_full(v)) == v);
    }
}

TEST_CASE("rank report json round-trips losslessly") {
    const auto doc = build_rank_report(testsup::reference_problem());
    const auto text = report_to_json(doc);
    const auto back = report_from_json(text);

    CHECK(back.schema_version == doc.schema_version);
    CHECK(back.generated_at == doc.generated_at);
    CHECK(back.beta_s == doc.beta_s);
    CHECK(back.spc == doc.spc);
    CHECK(back.lc == doc.lc);
    CHECK(back.wlc == doc.wlc);
    CHECK(back.beta == doc.beta);
    CHECK(back.alpha == doc.alpha);
    CHECK(back.theta == doc.theta);
    CHECK(back.distance == doc.distance);
    CHECK(back.rank == doc.rank);
    REQUIRE(back.criteria.size() == doc.criteria.size());
    for (std::size_t i = 0; i < doc.criteria.size(); ++i) {
        CHECK(back.criteria[i].weight == doc.criteria[i].weight);
        CHECK(back.criteria[i].direction == doc.criteria[i].direction);
    }
    CHECK_THROWS_AS(report_from_json("{"), Error);
    CHECK_THROWS_AS(report_from_json("{\"schema_version\": 99}"), Error);
}

TEST_CASE("score table prints the best alternative with rank 1") {
    const auto doc = build_rank_report(testsup::reference_problem());
    const auto table = render_score_table(doc);
    CHECK(table.find("A6") != std::string::npos);
    CHECK(table.find("0.946") != std::string::npos);  // theta of the winner, half-up
    CHECK(table.find("beta_s 1.443") != std::string::npos);

    std::istringstream lines(table);
    std::string line;
    std::getline(lines, line);
    CHECK(line.find("alpha") != std::string::npos);
    CHECK(line.find("rank") != std::string::npos);
}

TEST_CASE("stage matrix rendering rounds to the requested precision") {
    const auto doc = build_rank_report(testsup::reference_problem());
    const auto text = render_stage_matrices(doc, 2);
    CHECK(text.find("spc") != std::string::npos);
    CHECK(text.find("lc") != std::string::npos);
    CHECK(text.find("wlc") != std::string::npos);
    CHECK(text.find("22282.00") != std::string::npos);  // spc C8/A1
    CHECK(text.find("1.44") != std::string::npos);      // lc bound
}

TEST_CASE("distances tsv is sorted ascending and mirrors the theta order") {
    const auto doc = build_rank_report(testsup::reference_problem());
    const auto tsv = distances_tsv(doc);

    std::istringstream lines(tsv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "alternative_id\tdistance");

    std::vector<std::string> ids;
    std::vector<double> values;
    std::string line;
    while (std::getline(lines, line)) {
        const auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        ids.push_back(line.substr(0, tab));
        values.push_back(std::stod(line.substr(tab + 1)));
    }
    REQUIRE(ids.size() == 9);
    CHECK(ids.front() == "A6");
    for (std::size_t k = 0; k + 1 < values.size(); ++k) CHECK(values[k] <= values[k + 1]);

    // ascending distance = best-first theta order
    const auto order = [&doc] {
        std::vector<int> idx(doc.rank.size());
        for (std::size_t j = 0; j < doc.rank.size(); ++j) idx[static_cast<std::size_t>(doc.rank[j] - 1)] = static_cast<int>(j);
        return idx;
    }();
    for (std::size_t k = 0; k < ids.size(); ++k)
        CHECK(ids[k] == doc.alternatives[static_cast<std::size_t>(order[k])].id);
}

TEST_CASE("distance svg contains one bar per alternative") {
    const auto doc = build_rank_report(testsup::reference_problem());
    const auto svg = distances_svg(doc);
    CHECK(svg.rfind("<svg", 0) == 0);
    std::size_t bars = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++bars;
        pos += 5;
    }
    CHECK(bars == 9);
}

TEST_CASE("single-alternative report has distance zero") {
    std::vector<CriterionSpec> criteria{{"C1", "C1", Direction::Maximize, 1.0}};
    std::vector<AlternativeSpec> alts{{"A1", "A1"}};
    MatrixX<double> v(1, 1);
    v << 5.0;
    const auto doc = build_rank_report(build_problem(criteria, alts, v));
    CHECK(doc.distance[0] == 0.0);
    CHECK(doc.theta[0] == 1.0);
    const auto tsv = distances_tsv(doc);
    CHECK(tsv.find("A1\t0") != std::string::npos);
}
