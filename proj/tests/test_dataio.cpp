#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "aploco/dataio.hpp"
#include "aploco/util.hpp"

#include "test_support.hpp"

using namespace aploco;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIXTURES_DIR;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("aploco-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("csv: quoting, trimming and blank-line handling") {
    const auto t = csv::parse("a, 1 ,\"x,y\"\n\n\"he said \"\"hi\"\"\",2,3\n");
    REQUIRE(t.size() == 2);
    CHECK(t[0] == std::vector<std::string>{"a", "1", "x,y"});
    CHECK(t[1] == std::vector<std::string>{"he said \"hi\"", "2", "3"});

    const auto round = csv::parse(csv::write(t));
    CHECK(round == t);
}

TEST_CASE("load_problem: the bundled fixture ranks to the reference order") {
    ProblemFileSet files{kFixtures / "oiz2015/matrix.csv", kFixtures / "oiz2015/criteria.csv", {}};
    const auto p = load_problem(files);
    CHECK(p.criterion_count() == 9);
    CHECK(p.alternative_count() == 9);
    CHECK(p.values(7, 5) == 22665.0);
    CHECK(p.criteria[2].direction == Direction::Minimize);
    CHECK(p.criteria[7].weight == 0.750);

    const auto rep = rank_pipeline(p);
    const auto order = rep.order();
    for (int k = 0; k < refdata::kR; ++k)
        CHECK(order[static_cast<std::size_t>(k)] == refdata::kOrder[static_cast<std::size_t>(k)]);
}

TEST_CASE("load_problem: weights override file replaces criterion weights") {
    ProblemFileSet files{kFixtures / "oiz2015/matrix.csv", kFixtures / "oiz2015/criteria.csv",
                         kFixtures / "oiz2015/weights.csv"};
    const auto p = load_problem(files);
    CHECK(p.criteria[7].weight == 0.750);

    TempDir tmp;
    write(tmp.path / "w.csv", "criterion_id,weight\nC1,0.2\nC2,0.2\nC3,0.2\nC4,0.2\nC5,0.05\nC6,0.05\nC7,0.05\nC8,0.03\nC9,0.02\n");
    files.weights_override = tmp.path / "w.csv";
    const auto q = load_problem(files);
    CHECK(q.criteria[0].weight == 0.2);
    CHECK(q.criteria[8].weight == 0.02);
}

TEST_CASE("load_problem: error coordinates and id checks") {
    TempDir tmp;
    const auto matrix = tmp.path / "m.csv";
    const auto criteria = tmp.path / "c.csv";
    write(criteria, "id,name,direction,weight\nC1,first,max,0.5\nC2,second,min,0.5\n");

    SUBCASE("empty matrix file") {
        write(matrix, "");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), ParseError);
    }
    SUBCASE("bad number carries coordinates") {
        write(matrix, "criterion_id,A1,A2\nC1,1,2\nC2,3,oops\n");
        try {
            load_problem({matrix, criteria, {}});
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 3);
            CHECK(e.column() == 3);
        }
    }
    SUBCASE("ragged row") {
        write(matrix, "criterion_id,A1,A2\nC1,1\nC2,3,4\n");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), ParseError);
    }
    SUBCASE("criteria file lists an id missing from the matrix") {
        write(matrix, "criterion_id,A1,A2\nC1,1,2\nC2,3,4\n");
        write(criteria, "id,name,direction,weight\nC1,first,max,0.4\nC2,second,min,0.4\nC10,extra,max,0.2\n");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), IdMismatch);
    }
    SUBCASE("matrix row missing from the criteria file") {
        write(matrix, "criterion_id,A1,A2\nC1,1,2\nC2,3,4\nC3,5,6\n");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), IdMismatch);
    }
    SUBCASE("bad direction token") {
        write(matrix, "criterion_id,A1,A2\nC1,1,2\nC2,3,4\n");
        write(criteria, "id,name,direction,weight\nC1,first,maximize,0.5\nC2,second,min,0.5\n");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), ParseError);
    }
    SUBCASE("duplicate alternative id") {
        write(matrix, "criterion_id,A1,A1\nC1,1,2\nC2,3,4\n");
        CHECK_THROWS_AS(load_problem({matrix, criteria, {}}), DuplicateId);
    }
}

TEST_CASE("load_problem: decimal-comma files parse like their dot twins") {
    TempDir tmp;
    write(tmp.path / "m.csv", "criterion_id;A1;A2\nC1;1,25;2,50\nC2;3,00;4,75\n");
    write(tmp.path / "c.csv", "id;name;direction;weight\nC1;first one;max;0,5\nC2;second;min;0,5\n");
    LoadOptions opt;
    opt.decimal_comma = true;
    const auto p = load_problem({tmp.path / "m.csv", tmp.path / "c.csv", {}}, opt);
    CHECK(p.values(0, 0) == 1.25);
    CHECK(p.values(1, 1) == 4.75);
    CHECK(p.criteria[0].weight == 0.5);
}

TEST_CASE("save/load round-trip preserves values bit-exactly") {
    std::mt19937_64 rng(101);
    TempDir tmp;
    for (int it = 0; it < 20; ++it) {
        const auto p = testsup::random_problem(rng);
        ProblemFileSet files{tmp.path / "m.csv", tmp.path / "c.csv", {}};
        save_problem(p, files);
        const auto q = load_problem(files);
        CHECK(q.values == p.values);
        REQUIRE(q.criteria.size() == p.criteria.size());
        for (std::size_t i = 0; i < p.criteria.size(); ++i) {
            CHECK(q.criteria[i].weight == p.criteria[i].weight);
            CHECK(q.criteria[i].direction == p.criteria[i].direction);
            CHECK(q.criteria[i].id == p.criteria[i].id);
        }
    }
}

TEST_CASE("load_raw_dataset: the synthetic fixture encodes to 17 inputs") {
    const auto [records, schema] =
        load_raw_dataset(kFixtures / "synthetic/dataset.csv", kFixtures / "synthetic/schema.json");
    CHECK(records.size() == 200);
    CHECK(schema.input_width() == 17);
    const auto ds = encode(records, schema);
    CHECK(ds.inputs.cols() == 17);
    CHECK(ds.inputs.rows() == 200);
}

TEST_CASE("load_raw_dataset: schema violations and parse errors") {
    TempDir tmp;
    const auto schema = tmp.path / "schema.json";
    write(schema,
          R"({"factors":[{"name":"kind","levels":["a","b"]}],"covariates":[{"name":"x"}],"target":{"name":"y"}})");

    SUBCASE("value outside declared levels") {
        write(tmp.path / "d.csv", "kind,x,y\na,1.0,2.0\nc,2.0,3.0\n");
        CHECK_THROWS_AS(load_raw_dataset(tmp.path / "d.csv", schema), SchemaViolation);
    }
    SUBCASE("missing column") {
        write(tmp.path / "d.csv", "kind,y\na,2.0\n");
        CHECK_THROWS_AS(load_raw_dataset(tmp.path / "d.csv", schema), SchemaViolation);
    }
    SUBCASE("non-numeric covariate carries coordinates") {
        write(tmp.path / "d.csv", "kind,x,y\na,1.0,2.0\nb,bad,3.0\n");
        try {
            load_raw_dataset(tmp.path / "d.csv", schema);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 3);
            CHECK(e.column() == 2);
        }
    }
    SUBCASE("zero-level factor in the schema") {
        write(schema, R"({"factors":[{"name":"kind","levels":[]}],"covariates":[{"name":"x"}],"target":{"name":"y"}})");
        write(tmp.path / "d.csv", "kind,x,y\na,1.0,2.0\n");
        CHECK_THROWS_AS(load_raw_dataset(tmp.path / "d.csv", schema), SchemaViolation);
    }
    SUBCASE("malformed schema json") {
        write(schema, "{");
        write(tmp.path / "d.csv", "kind,x,y\na,1.0,2.0\n");
        CHECK_THROWS_AS(load_raw_dataset(tmp.path / "d.csv", schema), ParseError);
    }
}

TEST_CASE("describe: hand-checked values and degenerate cases") {
    PredictorSchema schema;
    schema.covariates = {{"x"}};
    schema.target_name = "y";

    std::vector<RawRecord> records(3);
    records[0].fields = {{"x", "1"}, {"y", "5"}};
    records[1].fields = {{"x", "2"}, {"y", "5"}};
    records[2].fields = {{"x", "3"}, {"y", "5"}};

    auto stats = describe(records, schema);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].name == "x");
    CHECK(stats[0].n == 3);
    CHECK(stats[0].min == 1.0);
    CHECK(stats[0].max == 3.0);
    CHECK(stats[0].mean == 2.0);
    CHECK(stats[0].sd == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(stats[1].sd == 0.0);  // constant column

    records.resize(1);
    stats = describe(records, schema);
    CHECK(stats[0].degenerate);
    CHECK(stats[0].sd == 0.0);

    CHECK_THROWS_AS(describe({}, schema), EmptyDataset);
}

TEST_CASE("describe matches a naive two-pass oracle on random data") {
    std::mt19937_64 rng(103);
    PredictorSchema schema;
    schema.covariates = {{"x"}};
    schema.target_name = "y";
    for (int it = 0; it < 30; ++it) {
        const int n = 2 + static_cast<int>(rng() % 40);
        std::vector<RawRecord> records(static_cast<std::size_t>(n));
        std::vector<double> xs;
        for (auto& rec : records) {
            const double x = 1000.0 * (testsup::uniform01(rng) - 0.5);
            xs.push_back(x);
            rec.fields["x"] = format_full(x);
            rec.fields["y"] = "1";  // unused by the oracle comparison
        }
        // replace the constant target so describe does not choke downstream users
        records[0].fields["y"] = "2";

        const auto stats = describe(records, schema);
        double mn = xs[0], mx = xs[0], sum = 0.0;
        for (double v : xs) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (double v : xs) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (n - 1));
        CHECK(stats[0].min == mn);
        CHECK(stats[0].max == mx);
        CHECK(stats[0].mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(stats[0].sd == doctest::Approx(sd).epsilon(1e-12));
    }
}
