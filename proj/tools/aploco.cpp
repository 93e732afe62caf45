// aploco command-line tool.
//
// Subcommands:
//   rank              decision matrix + criteria -> ranking report
//   weights           raw dataset + schema + mapping -> trained criterion weights
//   report-distances  ranking report -> distance TSV (and optional SVG)
//   pipeline          weights, then rank with the derived weights
//
// Exit codes: 0 success, 1 input/validation error, 2 internal invariant
// violation, 3 training divergence.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aploco/dataio.hpp"
#include "aploco/decision.hpp"
#include "aploco/mlp.hpp"
#include "aploco/mlp_io.hpp"
#include "aploco/report.hpp"
#include "aploco/util.hpp"

namespace fs = std::filesystem;
using namespace aploco;

namespace {

struct RankArgs {
    std::string matrix;
    std::string criteria;
    std::string weights;  // optional override
    bool normalize_weights = false;
    bool decimal_comma = false;
    bool stages = false;
    int precision = 2;
    std::string out_dir = ".";
};

struct WeightsArgs {
    std::string data;
    std::string schema;
    std::string mapping;
    TrainConfig config;
    bool decimal_comma = false;
    std::string out_dir = ".";
};

struct DistanceArgs {
    std::string report;
    bool svg = false;
    std::string out_dir = ".";
};

void add_out_dir(CLI::App* cmd, std::string& out_dir) {
    cmd->add_option("-o,--out-dir", out_dir, "Directory for output files")
        ->envname("APLOCO_OUT_DIR")
        ->capture_default_str();
}

DecisionProblem<double> load_problem_from(const RankArgs& args) {
    ProblemFileSet files;
    files.matrix = args.matrix;
    files.criteria = args.criteria;
    if (!args.weights.empty()) files.weights_override = fs::path(args.weights);
    LoadOptions options;
    options.decimal_comma = args.decimal_comma;
    options.normalize_weights = args.normalize_weights;
    return load_problem(files, options);
}

int run_rank(const RankArgs& args) {
    const auto problem = load_problem_from(args);
    const auto doc = build_rank_report(problem);

    std::cout << render_score_table(doc);
    if (args.stages) std::cout << '\n' << render_stage_matrices(doc, args.precision);

    const fs::path out(args.out_dir);
    write_file_atomic(out / "rank_report.json", report_to_json(doc));
    std::string text = render_score_table(doc);
    if (args.stages) text += "\n" + render_stage_matrices(doc, args.precision);
    write_file_atomic(out / "rank_report.txt", text);
    return 0;
}

/// Trains, writes weights.csv / train_report.json / network.json and returns
/// the derived (criterion, weight) pairs. The criterion order comes from
/// `expected_criteria` when given (the pipeline passes the problem's ids, so
/// an incomplete mapping surfaces as UnmappedCriterion), else from the
/// mapping file.
std::vector<std::pair<std::string, double>> run_weights(
    const WeightsArgs& args, const std::optional<std::vector<std::string>>& expected_criteria = {}) {
    auto [records, schema] = load_raw_dataset(args.data, args.schema, args.decimal_comma);
    const auto mapping = load_mapping_csv(args.mapping);

    auto dataset = encode(records, schema);
    dataset = partition(std::move(dataset), args.config.train_fraction, args.config.seed);
    auto [net, train_report] = train(dataset, args.config);
    const auto importance_report = importance(net, dataset);

    std::vector<std::string> criterion_ids;
    if (expected_criteria) {
        criterion_ids = *expected_criteria;
    } else {
        for (const auto& [pred, crit] : mapping)
            if (std::find(criterion_ids.begin(), criterion_ids.end(), crit) == criterion_ids.end())
                criterion_ids.push_back(crit);
    }
    const auto weights = importances_to_weights(importance_report, mapping, criterion_ids);

    std::vector<std::pair<std::string, double>> rows;
    for (std::size_t i = 0; i < criterion_ids.size(); ++i) rows.emplace_back(criterion_ids[i], weights[i]);

    std::size_t train_rows = 0;
    for (auto s : dataset.partition) train_rows += (s == Split::Train) ? 1 : 0;

    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool"] = {{"name", "aploco"}, {"version", APLOCO_VERSION}};
    j["train"] = {{"sse", train_report.train_sse},
                  {"relative_error", train_report.train_relative_error},
                  {"rows", train_rows}};
    j["test"] = {{"sse", train_report.test_sse},
                 {"relative_error", train_report.test_relative_error},
                 {"rows", dataset.partition.size() - train_rows}};
    j["epochs_run"] = train_report.epochs_run;
    j["seed"] = train_report.seed;
    j["rng"] = "mt19937_64";
    j["config"] = {{"hidden_units", args.config.hidden_units},
                   {"epochs", args.config.epochs},
                   {"learning_rate", args.config.learning_rate},
                   {"init_scale", args.config.init_scale},
                   {"train_fraction", args.config.train_fraction}};
    nlohmann::json imp = nlohmann::json::array();
    for (std::size_t p = 0; p < importance_report.predictor.size(); ++p) {
        const auto i = static_cast<Eigen::Index>(p);
        imp.push_back({{"predictor", importance_report.predictor[p]},
                       {"importance", importance_report.importance[i]},
                       {"normalized", importance_report.normalized[i]},
                       {"rank", importance_report.rank[p]}});
    }
    j["importance"] = std::move(imp);
    nlohmann::json desc = nlohmann::json::array();
    for (const auto& s : describe(records, schema))
        desc.push_back({{"variable", s.name}, {"n", s.n},     {"min", s.min},
                        {"max", s.max},       {"mean", s.mean}, {"sd", s.sd},
                        {"degenerate", s.degenerate}});
    j["descriptives"] = std::move(desc);

    const fs::path out(args.out_dir);
    save_weights_csv(out / "weights.csv", rows);
    write_file_atomic(out / "train_report.json", j.dump(2) + "\n");
    NetworkFile file;
    file.network = std::move(net);
    file.rescale = dataset.rescale;
    file.config = args.config;
    file.schema_hash = schema_hash(schema);
    save_network(out / "network.json", file);

    std::cout << "trained " << train_rows << "/" << dataset.partition.size() - train_rows
              << " split, train relative error " << format_fixed(train_report.train_relative_error, 4)
              << ", test relative error " << format_fixed(train_report.test_relative_error, 4) << "\n";
    return rows;
}

int run_distances(const DistanceArgs& args) {
    const auto doc = report_from_json(read_file(args.report));
    const fs::path out(args.out_dir);
    write_file_atomic(out / "distances.tsv", distances_tsv(doc));
    if (args.svg) write_file_atomic(out / "distances.svg", distances_svg(doc));
    std::cout << distances_tsv(doc);
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"APLOCO multi-criteria ranking with MLP-derived criterion weights"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(APLOCO_VERSION));

    RankArgs rank_args;
    auto* rank_cmd = app.add_subcommand("rank", "Rank alternatives from a decision matrix");
    rank_cmd->add_option("--matrix", rank_args.matrix, "Decision matrix CSV (criteria rows x alternative columns)")
        ->required();
    rank_cmd->add_option("--criteria", rank_args.criteria, "Criteria CSV: id,name,direction,weight")->required();
    rank_cmd->add_option("--weights", rank_args.weights, "Weights CSV overriding the criteria file weights");
    rank_cmd->add_flag("--normalize-weights", rank_args.normalize_weights,
                       "Divide weights by their sum instead of requiring sum 1");
    rank_cmd->add_flag("--decimal-comma", rank_args.decimal_comma,
                       "Read semicolon-separated files with ',' as the decimal separator");
    rank_cmd->add_flag("--stages", rank_args.stages, "Also print the spc/lc/wlc stage matrices");
    rank_cmd->add_option("--precision", rank_args.precision, "Decimal places for printed stage matrices")
        ->capture_default_str();
    add_out_dir(rank_cmd, rank_args.out_dir);

    WeightsArgs weights_args;
    auto* weights_cmd = app.add_subcommand("weights", "Derive criterion weights by training a perceptron");
    weights_cmd->add_option("--data", weights_args.data, "Raw dataset CSV")->required();
    weights_cmd->add_option("--schema", weights_args.schema, "Predictor schema JSON")->required();
    weights_cmd->add_option("--mapping", weights_args.mapping, "Predictor-to-criterion mapping CSV")->required();
    weights_cmd->add_option("--seed", weights_args.config.seed, "Run seed")->capture_default_str();
    weights_cmd->add_option("--epochs", weights_args.config.epochs, "Training epochs")->capture_default_str();
    weights_cmd->add_option("--lr", weights_args.config.learning_rate, "Learning rate")->capture_default_str();
    weights_cmd->add_option("--hidden", weights_args.config.hidden_units, "Hidden units")->capture_default_str();
    weights_cmd->add_option("--init-scale", weights_args.config.init_scale, "Initialization scale")
        ->capture_default_str();
    weights_cmd->add_option("--train-fraction", weights_args.config.train_fraction, "Training split fraction")
        ->capture_default_str();
    weights_cmd->add_flag("--decimal-comma", weights_args.decimal_comma,
                          "Read semicolon-separated files with ',' as the decimal separator");
    add_out_dir(weights_cmd, weights_args.out_dir);

    DistanceArgs distance_args;
    auto* dist_cmd = app.add_subcommand("report-distances", "Distances to the optimal score from a ranking report");
    dist_cmd->add_option("--report", distance_args.report, "rank_report.json produced by the rank subcommand")
        ->required();
    dist_cmd->add_flag("--svg", distance_args.svg, "Also write a bar-chart SVG");
    add_out_dir(dist_cmd, distance_args.out_dir);

    RankArgs pipe_rank;
    WeightsArgs pipe_weights;
    auto* pipe_cmd = app.add_subcommand("pipeline", "weights followed by rank with the derived weights");
    pipe_cmd->add_option("--matrix", pipe_rank.matrix, "Decision matrix CSV")->required();
    pipe_cmd->add_option("--criteria", pipe_rank.criteria, "Criteria CSV")->required();
    pipe_cmd->add_option("--weights", pipe_rank.weights, "Weights CSV; skips training when given");
    pipe_cmd->add_option("--data", pipe_weights.data, "Raw dataset CSV");
    pipe_cmd->add_option("--schema", pipe_weights.schema, "Predictor schema JSON");
    pipe_cmd->add_option("--mapping", pipe_weights.mapping, "Predictor-to-criterion mapping CSV");
    pipe_cmd->add_option("--seed", pipe_weights.config.seed, "Run seed")->capture_default_str();
    pipe_cmd->add_option("--epochs", pipe_weights.config.epochs, "Training epochs")->capture_default_str();
    pipe_cmd->add_option("--lr", pipe_weights.config.learning_rate, "Learning rate")->capture_default_str();
    pipe_cmd->add_option("--hidden", pipe_weights.config.hidden_units, "Hidden units")->capture_default_str();
    pipe_cmd->add_option("--init-scale", pipe_weights.config.init_scale, "Initialization scale")
        ->capture_default_str();
    pipe_cmd->add_option("--train-fraction", pipe_weights.config.train_fraction, "Training split fraction")
        ->capture_default_str();
    pipe_cmd->add_flag("--normalize-weights", pipe_rank.normalize_weights,
                       "Divide weights by their sum instead of requiring sum 1");
    pipe_cmd->add_flag("--decimal-comma", pipe_rank.decimal_comma,
                       "Read semicolon-separated files with ',' as the decimal separator");
    pipe_cmd->add_flag("--stages", pipe_rank.stages, "Also print the spc/lc/wlc stage matrices");
    pipe_cmd->add_option("--precision", pipe_rank.precision, "Decimal places for printed stage matrices")
        ->capture_default_str();
    add_out_dir(pipe_cmd, pipe_rank.out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (rank_cmd->parsed()) return run_rank(rank_args);
    if (weights_cmd->parsed()) {
        run_weights(weights_args);
        return 0;
    }
    if (dist_cmd->parsed()) return run_distances(distance_args);

    // pipeline
    if (pipe_rank.weights.empty()) {
        if (pipe_weights.data.empty() || pipe_weights.schema.empty() || pipe_weights.mapping.empty())
            throw Error("pipeline needs --data, --schema and --mapping (or a --weights file)");
        pipe_weights.decimal_comma = pipe_rank.decimal_comma;
        pipe_weights.out_dir = pipe_rank.out_dir;
        run_weights(pipe_weights);
        pipe_rank.weights = (fs::path(pipe_rank.out_dir) / "weights.csv").string();
    }
    return run_rank(pipe_rank);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const NonFiniteLoss& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
