#pragma once

// Report document assembled by the CLI: the problem echo, all three stage
// matrices, the optimum vector and per-alternative scores. The JSON form
// carries full-precision doubles and round-trips losslessly; the text
// renderers round half-up at a configurable precision.

#include <string>
#include <vector>

#include "aploco/decision.hpp"

namespace aploco {

inline constexpr int kReportSchemaVersion = 1;

struct RankReportDocument {
    int schema_version = kReportSchemaVersion;
    std::string tool_version;
    std::string generated_at;  ///< ISO-8601 UTC
    std::vector<CriterionSpec> criteria;
    std::vector<AlternativeSpec> alternatives;
    MatrixX<double> spc;
    MatrixX<double> lc;
    MatrixX<double> wlc;
    VectorX<double> beta;
    double beta_s = 0.0;
    VectorX<double> alpha;
    VectorX<double> theta;
    VectorX<double> distance;
    std::vector<int> rank;
};

/// Runs the full pipeline on a validated problem, checks every stage's
/// postconditions and assembles the document.
RankReportDocument build_rank_report(const DecisionProblem<double>& problem);

std::string report_to_json(const RankReportDocument& doc);
RankReportDocument report_from_json(const std::string& json_text);

/// Aligned per-alternative score table (alpha, theta, distance, rank).
std::string render_score_table(const RankReportDocument& doc, int precision = 3);

/// The three stage matrices with row/column headers, one block each.
std::string render_stage_matrices(const RankReportDocument& doc, int precision = 2);

/// "alternative_id\tdistance" lines sorted by ascending distance.
std::string distances_tsv(const RankReportDocument& doc);

/// Static horizontal bar chart of the distances, ascending.
std::string distances_svg(const RankReportDocument& doc);

}  // namespace aploco
