#include "aploco/report.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aploco/util.hpp"

namespace aploco {
namespace {

using nlohmann::json;

json matrix_to_json(const MatrixX<double>& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixX<double> matrix_from_json(const json& rows) {
    const auto r = rows.size();
    const auto c = r ? rows[0].size() : 0u;
    MatrixX<double> m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("ragged matrix in report JSON");
        for (std::size_t j = 0; j < c; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
    return m;
}

json vector_to_json(const VectorX<double>& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

VectorX<double> vector_from_json(const json& arr) {
    VectorX<double> v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    return v;
}

/// Indices sorted by ascending distance, ties by input order.
std::vector<int> ascending_distance_order(const RankReportDocument& doc) {
    std::vector<int> idx(static_cast<std::size_t>(doc.distance.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return doc.distance[a] < doc.distance[b]; });
    return idx;
}

}  // namespace

RankReportDocument build_rank_report(const DecisionProblem<double>& problem) {
    const auto spc = compute_spc(problem);
    const auto lc = compute_lc(spc);
    const auto wlc = apply_weights(lc, problem);
    const auto scores = score(wlc);
    validate(spc);
    validate(lc);
    validate(wlc);
    validate(scores);

    RankReportDocument doc;
    doc.tool_version = APLOCO_VERSION;
    doc.generated_at = iso8601_utc_now();
    doc.criteria = problem.criteria;
    doc.alternatives = problem.alternatives;
    doc.spc = spc.values;
    doc.lc = lc.values;
    doc.wlc = wlc.values;
    doc.beta = scores.beta;
    doc.beta_s = scores.beta_s;
    doc.alpha = scores.alpha;
    doc.theta = scores.theta;
    doc.distance = scores.distance;
    doc.rank = scores.rank;
    return doc;
}

std::string report_to_json(const RankReportDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    j["tool"] = {{"name", "aploco"}, {"version", doc.tool_version}};
    j["generated_at"] = doc.generated_at;
    json criteria = json::array();
    for (const auto& c : doc.criteria)
        criteria.push_back({{"id", c.id}, {"name", c.name}, {"direction", to_string(c.direction)}, {"weight", c.weight}});
    json alternatives = json::array();
    for (const auto& a : doc.alternatives) alternatives.push_back({{"id", a.id}, {"name", a.name}});
    j["problem"] = {{"criteria", std::move(criteria)}, {"alternatives", std::move(alternatives)}};
    j["stages"] = {{"spc", matrix_to_json(doc.spc)}, {"lc", matrix_to_json(doc.lc)}, {"wlc", matrix_to_json(doc.wlc)}};
    j["beta"] = vector_to_json(doc.beta);
    j["beta_s"] = doc.beta_s;
    json scores = json::array();
    for (std::size_t k = 0; k < doc.alternatives.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        scores.push_back({{"id", doc.alternatives[k].id},
                          {"alpha", doc.alpha[i]},
                          {"theta", doc.theta[i]},
                          {"distance", doc.distance[i]},
                          {"rank", doc.rank[k]}});
    }
    j["scores"] = std::move(scores);
    return j.dump(2) + "\n";
}

RankReportDocument report_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report JSON: ") + e.what());
    }
    try {
        RankReportDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != kReportSchemaVersion)
            throw Error("unsupported report schema_version " + std::to_string(doc.schema_version));
        doc.tool_version = j.at("tool").at("version").get<std::string>();
        doc.generated_at = j.at("generated_at").get<std::string>();
        for (const auto& c : j.at("problem").at("criteria")) {
            CriterionSpec spec;
            spec.id = c.at("id").get<std::string>();
            spec.name = c.at("name").get<std::string>();
            spec.direction = c.at("direction").get<std::string>() == "min" ? Direction::Minimize : Direction::Maximize;
            spec.weight = c.at("weight").get<double>();
            doc.criteria.push_back(std::move(spec));
        }
        for (const auto& a : j.at("problem").at("alternatives"))
            doc.alternatives.push_back({a.at("id").get<std::string>(), a.at("name").get<std::string>()});
        doc.spc = matrix_from_json(j.at("stages").at("spc"));
        doc.lc = matrix_from_json(j.at("stages").at("lc"));
        doc.wlc = matrix_from_json(j.at("stages").at("wlc"));
        doc.beta = vector_from_json(j.at("beta"));
        doc.beta_s = j.at("beta_s").get<double>();
        const auto& scores = j.at("scores");
        if (scores.size() != doc.alternatives.size()) throw Error("report scores do not match alternatives");
        doc.alpha.resize(static_cast<Eigen::Index>(scores.size()));
        doc.theta.resize(static_cast<Eigen::Index>(scores.size()));
        doc.distance.resize(static_cast<Eigen::Index>(scores.size()));
        doc.rank.resize(scores.size());
        for (std::size_t k = 0; k < scores.size(); ++k) {
            const auto i = static_cast<Eigen::Index>(k);
            if (scores[k].at("id").get<std::string>() != doc.alternatives[k].id)
                throw Error("report scores are not aligned with the alternatives");
            doc.alpha[i] = scores[k].at("alpha").get<double>();
            doc.theta[i] = scores[k].at("theta").get<double>();
            doc.distance[i] = scores[k].at("distance").get<double>();
            doc.rank[k] = scores[k].at("rank").get<int>();
        }
        return doc;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report JSON: ") + e.what());
    }
}

std::string render_score_table(const RankReportDocument& doc, int precision) {
    std::size_t id_w = 4, name_w = 4;
    for (const auto& a : doc.alternatives) {
        id_w = std::max(id_w, a.id.size());
        name_w = std::max(name_w, a.name.size());
    }
    const int value_w = std::max(precision + 4, 8);

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(id_w) + 2) << "code" << std::setw(static_cast<int>(name_w) + 2)
        << "name" << std::right << std::setw(value_w) << "alpha" << std::setw(value_w) << "theta"
        << std::setw(value_w) << "distance" << std::setw(6) << "rank" << '\n';
    for (std::size_t k = 0; k < doc.alternatives.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        out << std::left << std::setw(static_cast<int>(id_w) + 2) << doc.alternatives[k].id
            << std::setw(static_cast<int>(name_w) + 2) << doc.alternatives[k].name << std::right
            << std::setw(value_w) << format_fixed(doc.alpha[i], precision) << std::setw(value_w)
            << format_fixed(doc.theta[i], precision) << std::setw(value_w)
            << format_fixed(doc.distance[i], precision) << std::setw(6) << doc.rank[k] << '\n';
    }
    out << "beta_s " << format_fixed(doc.beta_s, precision) << '\n';
    return out.str();
}

std::string render_stage_matrices(const RankReportDocument& doc, int precision) {
    const struct {
        const char* title;
        const MatrixX<double>* m;
    } blocks[] = {{"spc", &doc.spc}, {"lc", &doc.lc}, {"wlc", &doc.wlc}};

    std::size_t id_w = 2;
    for (const auto& c : doc.criteria) id_w = std::max(id_w, c.id.size());
    const int value_w = std::max(precision + 4, 8);

    std::ostringstream out;
    for (const auto& block : blocks) {
        out << block.title << '\n';
        out << std::left << std::setw(static_cast<int>(id_w) + 2) << "" << std::right;
        for (const auto& a : doc.alternatives) out << std::setw(value_w) << a.id;
        out << '\n';
        for (Eigen::Index i = 0; i < block.m->rows(); ++i) {
            out << std::left << std::setw(static_cast<int>(id_w) + 2) << doc.criteria[static_cast<std::size_t>(i)].id
                << std::right;
            for (Eigen::Index j = 0; j < block.m->cols(); ++j)
                out << std::setw(value_w) << format_fixed((*block.m)(i, j), precision);
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

std::string distances_tsv(const RankReportDocument& doc) {
    std::string out = "alternative_id\tdistance\n";
    for (int i : ascending_distance_order(doc)) {
        out += doc.alternatives[static_cast<std::size_t>(i)].id;
        out += '\t';
        out += format_full(doc.distance[i]);
        out += '\n';
    }
    return out;
}

std::string distances_svg(const RankReportDocument& doc) {
    const auto order = ascending_distance_order(doc);
    const int bar_h = 24, gap = 8, label_w = 90, chart_w = 560, pad = 20;
    const int height = pad * 2 + static_cast<int>(order.size()) * (bar_h + gap);
    const double max_d = doc.distance.size() ? doc.distance.maxCoeff() : 0.0;
    const double scale = max_d > 0.0 ? (chart_w - label_w - 2 * pad) / max_d : 0.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart_w << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "  <text x=\"" << pad << "\" y=\"" << pad - 6 << "\">distance to the optimal score ("
        << format_fixed(doc.beta_s, 3) << ")</text>\n";
    int y = pad;
    for (int i : order) {
        const double d = doc.distance[i];
        const int w = std::max(1, static_cast<int>(d * scale));
        svg << "  <text x=\"" << pad << "\" y=\"" << y + bar_h - 7 << "\">"
            << doc.alternatives[static_cast<std::size_t>(i)].id << "</text>\n";
        svg << "  <rect x=\"" << label_w << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << bar_h
            << "\" fill=\"#4477aa\"/>\n";
        svg << "  <text x=\"" << label_w + w + 6 << "\" y=\"" << y + bar_h - 7 << "\">" << format_fixed(d, 3)
            << "</text>\n";
        y += bar_h + gap;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace aploco
