#pragma once

// CSV/JSON ingestion and validation.
//
// File formats (header row required everywhere):
//   matrix CSV    criterion_id,<alternative ids...>  then one row per criterion
//   criteria CSV  id,name,direction,weight           direction is max or min
//   weights CSV   criterion_id,weight
//   mapping CSV   predictor,criterion_id
//   schema JSON   {"factors":[{"name","levels":[..]}],"covariates":[{"name"}],"target":{"name"}}
//
// The default decimal separator is '.'. With decimal_comma set, files are
// read as semicolon-separated with ',' as the decimal separator (the usual
// spreadsheet export convention for comma-decimal locales).

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aploco/decision.hpp"
#include "aploco/mlp.hpp"

namespace aploco {

struct ProblemFileSet {
    std::filesystem::path matrix;
    std::filesystem::path criteria;
    std::optional<std::filesystem::path> weights_override;
};

struct LoadOptions {
    bool decimal_comma = false;
    bool normalize_weights = false;
};

/// Loads and cross-validates a decision problem. Malformed cells raise
/// ParseError with 1-based coordinates; id disagreements between the files
/// raise IdMismatch; the assembled problem is validated by build_problem.
DecisionProblem<double> load_problem(const ProblemFileSet& files, const LoadOptions& options = {});

/// Writes matrix and criteria CSVs with full-precision values, so that
/// load_problem(save_problem(p)) reproduces p bit-exactly.
void save_problem(const DecisionProblem<double>& problem, const ProblemFileSet& files);

/// weights CSV <-> ordered (criterion_id, weight) pairs.
std::vector<std::pair<std::string, double>> load_weights_csv(const std::filesystem::path& path,
                                                             bool decimal_comma = false);
void save_weights_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, double>>& weights);

/// mapping CSV: ordered (predictor, criterion_id) pairs.
std::vector<std::pair<std::string, std::string>> load_mapping_csv(const std::filesystem::path& path);

/// Loads a raw predictor dataset plus its JSON schema. Every schema field
/// must appear as a column; factor cells must hold declared levels; covariate
/// and target cells must be numeric.
std::pair<std::vector<RawRecord>, PredictorSchema> load_raw_dataset(const std::filesystem::path& data_csv,
                                                                    const std::filesystem::path& schema_json,
                                                                    bool decimal_comma = false);

/// Descriptive statistics of one numeric variable.
struct VariableStats {
    std::string name;
    std::size_t n = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double sd = 0.0;       ///< sample standard deviation (n-1 divisor)
    bool degenerate = false;  ///< true when n < 2, sd reported as 0
};

/// n/min/max/mean/sample-sd for every covariate and the target.
std::vector<VariableStats> describe(const std::vector<RawRecord>& records, const PredictorSchema& schema);

namespace csv {

/// Parsed CSV: rows of cells, quotes handled, cells trimmed.
using Table = std::vector<std::vector<std::string>>;

Table parse(const std::string& text, char separator = ',');
std::string write(const Table& table, char separator = ',');

}  // namespace csv

}  // namespace aploco
