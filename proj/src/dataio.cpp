#include "aploco/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "aploco/util.hpp"

namespace aploco {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Parses one numeric cell; decimal_comma swaps ',' in for '.'.
double parse_cell_number(const std::string& raw, bool decimal_comma, std::size_t row, std::size_t col) {
    std::string cell = raw;
    if (decimal_comma) std::replace(cell.begin(), cell.end(), ',', '.');
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("cell '" + raw + "' is not a number", row, col);
    return value;
}

char separator_for(bool decimal_comma) { return decimal_comma ? ';' : ','; }

csv::Table load_csv_file(const std::filesystem::path& path, bool decimal_comma) {
    csv::Table table = csv::parse(read_file(path), separator_for(decimal_comma));
    if (table.empty()) throw ParseError(path.string() + ": no header row", 1, 1);
    return table;
}

void expect_cells(const csv::Table& t, std::size_t row, std::size_t want, const std::string& what) {
    if (t[row].size() != want)
        throw ParseError(what + ": expected " + std::to_string(want) + " cells, found " +
                             std::to_string(t[row].size()),
                         row + 1, t[row].size() + 1);
}

}  // namespace

namespace csv {

Table parse(const std::string& text, char separator) {
    Table rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool row_has_content = false;

    auto push_cell = [&] {
        row.push_back(trim(cell));
        cell.clear();
    };
    auto push_row = [&] {
        push_cell();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"' && trim(cell).empty()) {
            quoted = true;
            cell.clear();
            row_has_content = true;
        } else if (c == separator) {
            push_cell();
            row_has_content = true;
        } else if (c == '\n') {
            if (row_has_content || !trim(cell).empty()) push_row();
            cell.clear();
        } else if (c == '\r') {
            // swallowed; \r\n handled by the \n branch
        } else {
            cell += c;
        }
    }
    if (row_has_content || !trim(cell).empty()) push_row();
    return rows;
}

std::string write(const Table& table, char separator) {
    std::string out;
    for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += separator;
            const auto& cell = row[i];
            const bool needs_quotes = cell.find_first_of(",;\"\n") != std::string::npos;
            if (needs_quotes) {
                out += '"';
                for (char c : cell) {
                    if (c == '"') out += '"';
                    out += c;
                }
                out += '"';
            } else {
                out += cell;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace csv

DecisionProblem<double> load_problem(const ProblemFileSet& files, const LoadOptions& options) {
    const csv::Table matrix = load_csv_file(files.matrix, options.decimal_comma);
    if (matrix.size() < 2) throw ParseError(files.matrix.string() + ": no data rows", matrix.size(), 1);
    if (matrix[0].size() < 2) throw ParseError(files.matrix.string() + ": header lists no alternatives", 1, 1);

    std::vector<AlternativeSpec> alternatives;
    for (std::size_t j = 1; j < matrix[0].size(); ++j) {
        if (matrix[0][j].empty()) throw ParseError("empty alternative id in header", 1, j + 1);
        alternatives.push_back({matrix[0][j], matrix[0][j]});
    }

    const auto r = alternatives.size();
    const auto c = matrix.size() - 1;
    MatrixX<double> values(c, r);
    std::vector<std::string> matrix_ids;
    for (std::size_t i = 1; i < matrix.size(); ++i) {
        expect_cells(matrix, i, r + 1, files.matrix.string());
        if (matrix[i][0].empty()) throw ParseError("empty criterion id", i + 1, 1);
        matrix_ids.push_back(matrix[i][0]);
        for (std::size_t j = 1; j <= r; ++j)
            values(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) =
                parse_cell_number(matrix[i][j], options.decimal_comma, i + 1, j + 1);
    }

    const csv::Table crit = load_csv_file(files.criteria, options.decimal_comma);
    std::unordered_map<std::string, CriterionSpec> by_id;
    for (std::size_t i = 1; i < crit.size(); ++i) {
        expect_cells(crit, i, 4, files.criteria.string());
        CriterionSpec spec;
        spec.id = crit[i][0];
        spec.name = crit[i][1];
        const std::string dir = crit[i][2];
        if (dir == "max")
            spec.direction = Direction::Maximize;
        else if (dir == "min")
            spec.direction = Direction::Minimize;
        else
            throw ParseError("direction must be 'max' or 'min', got '" + dir + "'", i + 1, 3);
        spec.weight = parse_cell_number(crit[i][3], options.decimal_comma, i + 1, 4);
        if (!by_id.emplace(spec.id, spec).second) throw DuplicateId("duplicate criterion id '" + spec.id + "' in " + files.criteria.string());
    }

    for (const auto& [id, spec] : by_id)
        if (std::find(matrix_ids.begin(), matrix_ids.end(), id) == matrix_ids.end())
            throw IdMismatch("criterion '" + id + "' appears in " + files.criteria.string() +
                             " but not in the matrix");
    std::vector<CriterionSpec> criteria;
    for (const auto& id : matrix_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw IdMismatch("criterion '" + id + "' appears in the matrix but not in " + files.criteria.string());
        criteria.push_back(it->second);
    }

    if (files.weights_override) {
        auto weights = load_weights_csv(*files.weights_override, options.decimal_comma);
        std::unordered_map<std::string, double> w;
        for (const auto& [id, value] : weights)
            if (!w.emplace(id, value).second) throw DuplicateId("duplicate criterion id '" + id + "' in weights file");
        for (auto& spec : criteria) {
            auto it = w.find(spec.id);
            if (it == w.end()) throw IdMismatch("weights file has no entry for criterion '" + spec.id + "'");
            spec.weight = it->second;
            w.erase(it);
        }
        if (!w.empty()) throw IdMismatch("weights file lists unknown criterion '" + w.begin()->first + "'");
    }

    BuildOptions build;
    build.normalize_weights = options.normalize_weights;
    return build_problem(std::move(criteria), std::move(alternatives), std::move(values), build);
}

void save_problem(const DecisionProblem<double>& problem, const ProblemFileSet& files) {
    csv::Table matrix;
    std::vector<std::string> header{"criterion_id"};
    for (const auto& a : problem.alternatives) header.push_back(a.id);
    matrix.push_back(header);
    for (Eigen::Index i = 0; i < problem.criterion_count(); ++i) {
        std::vector<std::string> row{problem.criteria[static_cast<std::size_t>(i)].id};
        for (Eigen::Index j = 0; j < problem.alternative_count(); ++j) row.push_back(format_full(problem.values(i, j)));
        matrix.push_back(row);
    }
    write_file_atomic(files.matrix, csv::write(matrix));

    csv::Table crit;
    crit.push_back({"id", "name", "direction", "weight"});
    for (const auto& spec : problem.criteria)
        crit.push_back({spec.id, spec.name, to_string(spec.direction), format_full(spec.weight)});
    write_file_atomic(files.criteria, csv::write(crit));
}

std::vector<std::pair<std::string, double>> load_weights_csv(const std::filesystem::path& path,
                                                             bool decimal_comma) {
    const csv::Table table = load_csv_file(path, decimal_comma);
    std::vector<std::pair<std::string, double>> weights;
    for (std::size_t i = 1; i < table.size(); ++i) {
        expect_cells(table, i, 2, path.string());
        weights.emplace_back(table[i][0], parse_cell_number(table[i][1], decimal_comma, i + 1, 2));
    }
    return weights;
}

void save_weights_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, double>>& weights) {
    csv::Table table;
    table.push_back({"criterion_id", "weight"});
    for (const auto& [id, w] : weights) table.push_back({id, format_full(w)});
    write_file_atomic(path, csv::write(table));
}

std::vector<std::pair<std::string, std::string>> load_mapping_csv(const std::filesystem::path& path) {
    const csv::Table table = load_csv_file(path, false);
    std::vector<std::pair<std::string, std::string>> mapping;
    for (std::size_t i = 1; i < table.size(); ++i) {
        expect_cells(table, i, 2, path.string());
        if (table[i][0].empty() || table[i][1].empty()) throw ParseError("empty mapping cell", i + 1, 1);
        mapping.emplace_back(table[i][0], table[i][1]);
    }
    return mapping;
}

namespace {

PredictorSchema schema_from_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what(), 1, 1);
    }
    try {
        PredictorSchema schema;
        for (const auto& f : j.value("factors", nlohmann::json::array())) {
            FactorSpec spec;
            spec.name = f.at("name").get<std::string>();
            for (const auto& l : f.at("levels")) spec.levels.push_back(l.get<std::string>());
            schema.factors.push_back(std::move(spec));
        }
        for (const auto& c : j.value("covariates", nlohmann::json::array()))
            schema.covariates.push_back({c.at("name").get<std::string>()});
        schema.target_name = j.at("target").at("name").get<std::string>();
        validate(schema);
        return schema;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(origin + ": " + e.what());
    }
}

}  // namespace

std::pair<std::vector<RawRecord>, PredictorSchema> load_raw_dataset(const std::filesystem::path& data_csv,
                                                                    const std::filesystem::path& schema_json,
                                                                    bool decimal_comma) {
    const PredictorSchema schema = schema_from_json(read_file(schema_json), schema_json.string());
    const csv::Table table = load_csv_file(data_csv, decimal_comma);
    if (table.size() < 2) throw ParseError(data_csv.string() + ": no data rows", table.size(), 1);

    const auto& header = table[0];
    std::unordered_map<std::string, std::size_t> col_of;
    for (std::size_t j = 0; j < header.size(); ++j) col_of.emplace(header[j], j);

    std::vector<std::string> needed;
    for (const auto& f : schema.factors) needed.push_back(f.name);
    for (const auto& c : schema.covariates) needed.push_back(c.name);
    needed.push_back(schema.target_name);
    for (const auto& name : needed)
        if (!col_of.count(name)) throw SchemaViolation(data_csv.string() + ": missing column '" + name + "'");

    std::vector<RawRecord> records;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (table[i].size() != header.size())
            throw ParseError("row has " + std::to_string(table[i].size()) + " cells, header has " +
                                 std::to_string(header.size()),
                             i + 1, table[i].size() + 1);
        RawRecord rec;
        for (const auto& f : schema.factors) {
            const auto& cell = table[i][col_of[f.name]];
            if (std::find(f.levels.begin(), f.levels.end(), cell) == f.levels.end())
                throw SchemaViolation("row " + std::to_string(i + 1) + ": value '" + cell +
                                      "' is not a declared level of factor '" + f.name + "'");
            rec.fields[f.name] = cell;
        }
        for (const auto& c : schema.covariates) {
            const std::size_t col = col_of[c.name];
            parse_cell_number(table[i][col], decimal_comma, i + 1, col + 1);  // coordinates on failure
            rec.fields[c.name] = table[i][col];
        }
        const std::size_t tcol = col_of[schema.target_name];
        parse_cell_number(table[i][tcol], decimal_comma, i + 1, tcol + 1);
        rec.fields[schema.target_name] = table[i][tcol];
        if (decimal_comma) {
            for (const auto& c : schema.covariates) std::replace(rec.fields[c.name].begin(), rec.fields[c.name].end(), ',', '.');
            std::replace(rec.fields[schema.target_name].begin(), rec.fields[schema.target_name].end(), ',', '.');
        }
        records.push_back(std::move(rec));
    }
    return {std::move(records), schema};
}

std::vector<VariableStats> describe(const std::vector<RawRecord>& records, const PredictorSchema& schema) {
    if (records.empty()) throw EmptyDataset("describe needs at least one record");
    std::vector<std::string> names;
    for (const auto& c : schema.covariates) names.push_back(c.name);
    names.push_back(schema.target_name);

    std::vector<VariableStats> stats;
    for (const auto& name : names) {
        VariableStats s;
        s.name = name;
        s.n = records.size();
        double sum = 0.0;
        std::vector<double> vals;
        vals.reserve(records.size());
        for (const auto& rec : records) {
            const double v = detail::parse_field_double(rec, name);
            vals.push_back(v);
            sum += v;
        }
        s.min = *std::min_element(vals.begin(), vals.end());
        s.max = *std::max_element(vals.begin(), vals.end());
        s.mean = sum / static_cast<double>(s.n);
        if (s.n < 2) {
            s.sd = 0.0;
            s.degenerate = true;
        } else {
            double ss = 0.0;
            for (double v : vals) ss += (v - s.mean) * (v - s.mean);
            s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        }
        stats.push_back(std::move(s));
    }
    return stats;
}

}  // namespace aploco
