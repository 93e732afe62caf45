#pragma once

// Criterion-weight derivation: a single-hidden-layer perceptron (tanh hidden
// units, identity output) trained by full-batch gradient descent on
// sum-of-squares error, plus mean-absolute-gradient variable importance.
//
// The whole module is deterministic: a run is fully determined by
// (dataset, config, seed). The generator is mt19937_64 with an explicit
// bits-to-uniform mapping so results do not depend on the standard library's
// distribution implementations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "aploco/errors.hpp"

namespace aploco {

struct FactorSpec {
    std::string name;
    std::vector<std::string> levels;  ///< >= 2, one one-hot column per level
};

struct CovariateSpec {
    std::string name;
};

/// Declares how raw records map onto network inputs: every factor level
/// becomes one one-hot column (factors first, schema order), every covariate
/// one rescaled column. The target is standardized.
struct PredictorSchema {
    std::vector<FactorSpec> factors;
    std::vector<CovariateSpec> covariates;
    std::string target_name;

    int input_width() const {
        int w = 0;
        for (const auto& f : factors) w += static_cast<int>(f.levels.size());
        return w + static_cast<int>(covariates.size());
    }

    int predictor_count() const { return static_cast<int>(factors.size() + covariates.size()); }

    std::vector<std::string> predictor_names() const {
        std::vector<std::string> names;
        for (const auto& f : factors) names.push_back(f.name);
        for (const auto& c : covariates) names.push_back(c.name);
        return names;
    }
};

/// Schema sanity checks; throws SchemaViolation.
inline void validate(const PredictorSchema& schema) {
    if (schema.target_name.empty()) throw SchemaViolation("schema declares no target");
    if (schema.predictor_count() == 0) throw SchemaViolation("schema declares no predictors");
    std::map<std::string, int> names;
    for (const auto& f : schema.factors) {
        if (f.levels.size() < 2)
            throw SchemaViolation("factor '" + f.name + "' declares " + std::to_string(f.levels.size()) +
                                  " level(s), need at least 2");
        std::map<std::string, int> lv;
        for (const auto& l : f.levels)
            if (++lv[l] > 1) throw SchemaViolation("factor '" + f.name + "' repeats level '" + l + "'");
        ++names[f.name];
    }
    for (const auto& c : schema.covariates) ++names[c.name];
    ++names[schema.target_name];
    for (const auto& [n, cnt] : names)
        if (cnt > 1) throw SchemaViolation("field name '" + n + "' is used more than once");
}

/// One raw observation: field name -> raw string value.
struct RawRecord {
    std::map<std::string, std::string> fields;
};

enum class Split { Train, Test };

/// Rescaling parameters captured during encoding, kept so encoded values can
/// be mapped back to the original scale.
struct RescaleParams {
    struct MinMax {
        double min = 0.0;
        double max = 0.0;
    };
    std::vector<MinMax> covariates;  ///< per covariate, schema order
    double target_mean = 0.0;
    double target_sd = 1.0;  ///< sample standard deviation (n-1 divisor)
};

/// Encoded observations: one-hot factors plus covariates in [-1, 1], target
/// standardized over the full dataset.
struct EncodedDataset {
    PredictorSchema schema;
    Eigen::MatrixXd inputs;        ///< n x input_width
    Eigen::VectorXd targets;       ///< standardized
    std::vector<Split> partition;  ///< per row; encode() labels everything Train
    RescaleParams rescale;

    Eigen::Index row_count() const { return inputs.rows(); }
};

namespace detail {

inline double parse_field_double(const RawRecord& rec, const std::string& name) {
    auto it = rec.fields.find(name);
    if (it == rec.fields.end()) throw MissingField("record is missing field '" + name + "'");
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw SchemaViolation("field '" + name + "' value '" + it->second + "' is not numeric");
    }
}

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Encodes raw records against a schema. Covariates are adjusted-normalized,
/// x -> 2(x - min)/(max - min) - 1, the target standardized to mean 0 /
/// sample sd 1 over the full dataset. Rescale parameters are recorded for
/// inversion. All rows start in the Train split.
inline EncodedDataset encode(const std::vector<RawRecord>& records, const PredictorSchema& schema) {
    validate(schema);
    if (records.empty()) throw EmptyDataset("cannot encode an empty record set");
    const auto n = static_cast<Eigen::Index>(records.size());
    const int d = schema.input_width();

    EncodedDataset ds;
    ds.schema = schema;
    ds.inputs = Eigen::MatrixXd::Zero(n, d);
    ds.targets.resize(n);
    ds.partition.assign(records.size(), Split::Train);

    // one-hot factor blocks
    int col = 0;
    for (const auto& f : schema.factors) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto& rec = records[static_cast<std::size_t>(r)];
            auto it = rec.fields.find(f.name);
            if (it == rec.fields.end()) throw MissingField("record " + std::to_string(r) + " is missing factor '" + f.name + "'");
            auto lv = std::find(f.levels.begin(), f.levels.end(), it->second);
            if (lv == f.levels.end())
                throw UnknownLevel("value '" + it->second + "' is not a level of factor '" + f.name + "'");
            ds.inputs(r, col + static_cast<int>(lv - f.levels.begin())) = 1.0;
        }
        col += static_cast<int>(f.levels.size());
    }

    // covariates: collect raw, then rescale to [-1, 1]
    for (std::size_t c = 0; c < schema.covariates.size(); ++c) {
        const auto& name = schema.covariates[c].name;
        Eigen::VectorXd raw(n);
        for (Eigen::Index r = 0; r < n; ++r) raw[r] = detail::parse_field_double(records[static_cast<std::size_t>(r)], name);
        const double lo = raw.minCoeff(), hi = raw.maxCoeff();
        if (lo == hi) throw ZeroVariance("covariate '" + name + "' is constant");
        ds.rescale.covariates.push_back({lo, hi});
        ds.inputs.col(col + static_cast<int>(c)) = (2.0 * (raw.array() - lo) / (hi - lo) - 1.0).matrix();
    }

    // standardized target
    for (Eigen::Index r = 0; r < n; ++r)
        ds.targets[r] = detail::parse_field_double(records[static_cast<std::size_t>(r)], schema.target_name);
    const double mean = ds.targets.mean();
    if (n < 2) throw ZeroVariance("target needs at least 2 rows for standardization");
    const double sd = std::sqrt((ds.targets.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (sd == 0.0) throw ZeroVariance("target '" + schema.target_name + "' is constant");
    ds.rescale.target_mean = mean;
    ds.rescale.target_sd = sd;
    ds.targets = ((ds.targets.array() - mean) / sd).matrix();
    return ds;
}

/// Maps a standardized target value back to the original scale.
inline double destandardize_target(const RescaleParams& p, double standardized) {
    return standardized * p.target_sd + p.target_mean;
}

/// Labels ceil(n * train_fraction) rows Train via a seeded Fisher-Yates
/// shuffle (mt19937_64, modulo reduction); the rest become Test. The same
/// seed always yields the same labeling.
inline EncodedDataset partition(EncodedDataset dataset, double train_fraction, std::uint64_t seed) {
    const auto n = dataset.row_count();
    if (n < 2) throw EmptyDataset("need at least 2 rows to partition");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw Error("train fraction must be in (0, 1), got " + std::to_string(train_fraction));
    // the 1e-9 slack keeps exact products like 200 * 0.71 from ceiling upward
    const auto train_count =
        static_cast<Eigen::Index>(std::ceil(static_cast<double>(n) * train_fraction - 1e-9));

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::mt19937_64 rng(seed);
    for (auto i = static_cast<std::size_t>(n) - 1; i > 0; --i)
        std::swap(idx[i], idx[rng() % (i + 1)]);

    dataset.partition.assign(static_cast<std::size_t>(n), Split::Test);
    for (Eigen::Index k = 0; k < train_count && k < n; ++k)
        dataset.partition[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = Split::Train;
    return dataset;
}

/// Network parameters: input -> tanh hidden layer -> identity output.
struct MlpNetwork {
    Eigen::MatrixXd hidden_weights;  ///< input_width x hidden_units
    Eigen::VectorXd hidden_bias;     ///< hidden_units
    Eigen::VectorXd output_weights;  ///< hidden_units
    double output_bias = 0.0;

    Eigen::Index input_width() const { return hidden_weights.rows(); }
    Eigen::Index hidden_units() const { return hidden_weights.cols(); }
};

struct TrainConfig {
    int hidden_units = 5;
    int epochs = 2000;
    double learning_rate = 1e-3;
    std::uint64_t seed = 1;
    double init_scale = 0.5;  ///< parameters start uniform in [-init_scale, init_scale]
    double train_fraction = 0.71;  ///< recorded for reports; partition() applies it
};

struct TrainReport {
    double train_sse = 0.0;
    double test_sse = 0.0;
    double train_relative_error = 0.0;
    double test_relative_error = 0.0;
    int epochs_run = 0;
    std::uint64_t seed = 0;
};

/// Single forward pass.
inline double forward(const MlpNetwork& net, const Eigen::VectorXd& input) {
    if (input.size() != net.input_width())
        throw DimensionMismatch("input has " + std::to_string(input.size()) + " entries, network expects " +
                                std::to_string(net.input_width()));
    const Eigen::VectorXd h = (net.hidden_weights.transpose() * input + net.hidden_bias).array().tanh();
    return net.output_weights.dot(h) + net.output_bias;
}

/// Forward pass over the rows of a matrix.
inline Eigen::VectorXd forward_batch(const MlpNetwork& net, const Eigen::MatrixXd& inputs) {
    if (inputs.cols() != net.input_width())
        throw DimensionMismatch("batch has " + std::to_string(inputs.cols()) + " columns, network expects " +
                                std::to_string(net.input_width()));
    const Eigen::MatrixXd h =
        ((inputs * net.hidden_weights).rowwise() + net.hidden_bias.transpose()).array().tanh();
    return h * net.output_weights + Eigen::VectorXd::Constant(inputs.rows(), net.output_bias);
}

/// Gradient of the sum-of-squares error with respect to every parameter.
struct NetworkGradient {
    Eigen::MatrixXd hidden_weights;
    Eigen::VectorXd hidden_bias;
    Eigen::VectorXd output_weights;
    double output_bias = 0.0;
};

/// SSE over (inputs, targets) and its gradient, L = sum (yhat - y)^2.
inline std::pair<double, NetworkGradient> sse_and_gradient(const MlpNetwork& net,
                                                           const Eigen::MatrixXd& inputs,
                                                           const Eigen::VectorXd& targets) {
    const Eigen::MatrixXd h =
        ((inputs * net.hidden_weights).rowwise() + net.hidden_bias.transpose()).array().tanh();
    const Eigen::VectorXd yhat = h * net.output_weights + Eigen::VectorXd::Constant(inputs.rows(), net.output_bias);
    const Eigen::VectorXd err = yhat - targets;

    NetworkGradient g;
    g.output_weights = 2.0 * h.transpose() * err;
    g.output_bias = 2.0 * err.sum();
    // back through tanh: delta = 2 err w_out^T (1 - h^2), row-wise
    const Eigen::MatrixXd delta =
        (2.0 * err * net.output_weights.transpose()).array() * (1.0 - h.array().square());
    g.hidden_weights = inputs.transpose() * delta;
    g.hidden_bias = delta.colwise().sum().transpose();
    return {err.squaredNorm(), g};
}

/// Seeded uniform initialization in [-init_scale, init_scale]. Draw order:
/// hidden weights (input-major), hidden biases, output weights, output bias.
inline MlpNetwork init_network(Eigen::Index input_width, const TrainConfig& config) {
    std::mt19937_64 rng(config.seed);
    auto draw = [&] { return (2.0 * detail::uniform01(rng) - 1.0) * config.init_scale; };
    MlpNetwork net;
    net.hidden_weights.resize(input_width, config.hidden_units);
    for (Eigen::Index m = 0; m < input_width; ++m)
        for (Eigen::Index k = 0; k < config.hidden_units; ++k) net.hidden_weights(m, k) = draw();
    net.hidden_bias.resize(config.hidden_units);
    for (Eigen::Index k = 0; k < config.hidden_units; ++k) net.hidden_bias[k] = draw();
    net.output_weights.resize(config.hidden_units);
    for (Eigen::Index k = 0; k < config.hidden_units; ++k) net.output_weights[k] = draw();
    net.output_bias = draw();
    return net;
}

namespace detail {

inline void split_rows(const EncodedDataset& ds, Split which, Eigen::MatrixXd& x, Eigen::VectorXd& y) {
    Eigen::Index count = 0;
    for (auto s : ds.partition) count += (s == which) ? 1 : 0;
    x.resize(count, ds.inputs.cols());
    y.resize(count);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < ds.row_count(); ++r) {
        if (ds.partition[static_cast<std::size_t>(r)] == which) {
            x.row(k) = ds.inputs.row(r);
            y[k] = ds.targets[r];
            ++k;
        }
    }
}

}  // namespace detail

/// Prediction SSE over a split divided by the total sum of squares about that
/// split's own mean. 0 for a perfect predictor, 1 for the constant predictor
/// at the split mean.
inline double relative_error(const MlpNetwork& net, const EncodedDataset& dataset, Split which) {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    detail::split_rows(dataset, which, x, y);
    if (y.size() == 0) throw EmptyPartition(std::string("no rows labeled ") + (which == Split::Train ? "train" : "test"));
    const double mean = y.mean();
    const double total = (y.array() - mean).square().sum();
    if (total == 0.0) throw ZeroVariance("partition target is constant, relative error is undefined");
    const Eigen::VectorXd yhat = forward_batch(net, x);
    return (yhat - y).squaredNorm() / total;
}

/// Full-batch gradient descent on the training split's SSE. Deterministic per
/// (dataset, config): the seed fixes the initialization and no randomness is
/// used afterwards. Throws NonFiniteLoss if the loss leaves the finite range.
inline std::pair<MlpNetwork, TrainReport> train(const EncodedDataset& dataset, const TrainConfig& config) {
    if (config.hidden_units < 1) throw Error("hidden_units must be >= 1");
    if (config.epochs < 0) throw Error("epochs must be >= 0");
    if (!(config.learning_rate > 0.0)) throw Error("learning rate must be positive");
    if (!(config.init_scale > 0.0)) throw Error("init scale must be positive");

    Eigen::MatrixXd x_train;
    Eigen::VectorXd y_train;
    detail::split_rows(dataset, Split::Train, x_train, y_train);
    if (y_train.size() == 0) throw EmptyPartition("training split is empty");
    {
        Eigen::Index tests = dataset.row_count() - y_train.size();
        if (tests == 0) throw EmptyPartition("test split is empty; partition the dataset first");
    }

    MlpNetwork net = init_network(dataset.inputs.cols(), config);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        auto [sse, grad] = sse_and_gradient(net, x_train, y_train);
        if (!std::isfinite(sse))
            throw NonFiniteLoss("training diverged: SSE became non-finite at epoch " + std::to_string(epoch) +
                                "; lower the learning rate");
        net.hidden_weights -= config.learning_rate * grad.hidden_weights;
        net.hidden_bias -= config.learning_rate * grad.hidden_bias;
        net.output_weights -= config.learning_rate * grad.output_weights;
        net.output_bias -= config.learning_rate * grad.output_bias;
    }

    TrainReport report;
    report.seed = config.seed;
    report.epochs_run = config.epochs;
    report.train_sse = (forward_batch(net, x_train) - y_train).squaredNorm();
    if (!std::isfinite(report.train_sse)) throw NonFiniteLoss("training diverged: final SSE is non-finite");
    {
        Eigen::MatrixXd x_test;
        Eigen::VectorXd y_test;
        detail::split_rows(dataset, Split::Test, x_test, y_test);
        report.test_sse = (forward_batch(net, x_test) - y_test).squaredNorm();
    }
    report.train_relative_error = relative_error(net, dataset, Split::Train);
    report.test_relative_error = relative_error(net, dataset, Split::Test);
    return {std::move(net), report};
}

/// Gradient of the network output with respect to each input unit.
inline Eigen::VectorXd input_gradient(const MlpNetwork& net, const Eigen::VectorXd& input) {
    if (input.size() != net.input_width())
        throw DimensionMismatch("input has " + std::to_string(input.size()) + " entries, network expects " +
                                std::to_string(net.input_width()));
    const Eigen::VectorXd h = (net.hidden_weights.transpose() * input + net.hidden_bias).array().tanh();
    const Eigen::VectorXd k = (net.output_weights.array() * (1.0 - h.array().square())).matrix();
    return net.hidden_weights * k;
}

/// Variable-importance scores for every predictor: importance sums to 1,
/// normalized importance is each value over the maximum, rank 1 = most
/// important (ties keep schema order).
struct ImportanceReport {
    std::vector<std::string> predictor;  ///< schema order: factors, then covariates
    Eigen::VectorXd importance;          ///< nonnegative, sums to 1
    Eigen::VectorXd normalized;          ///< importance / max importance
    std::vector<int> rank;
};

/// Mean absolute output-input gradient per input column, aggregated over each
/// factor's one-hot block, normalized to sum 1.
inline ImportanceReport importance(const MlpNetwork& net, const EncodedDataset& dataset) {
    if (dataset.row_count() == 0) throw EmptyDataset("importance needs at least one row");
    if (dataset.inputs.cols() != net.input_width())
        throw DimensionMismatch("dataset width does not match the network");

    Eigen::VectorXd mean_abs = Eigen::VectorXd::Zero(dataset.inputs.cols());
    for (Eigen::Index r = 0; r < dataset.row_count(); ++r)
        mean_abs += input_gradient(net, dataset.inputs.row(r).transpose()).cwiseAbs();
    mean_abs /= static_cast<double>(dataset.row_count());

    const auto& schema = dataset.schema;
    ImportanceReport rep;
    rep.predictor = schema.predictor_names();
    rep.importance.resize(schema.predictor_count());
    int col = 0, p = 0;
    for (const auto& f : schema.factors) {
        rep.importance[p++] = mean_abs.segment(col, static_cast<Eigen::Index>(f.levels.size())).sum();
        col += static_cast<int>(f.levels.size());
    }
    for (std::size_t c = 0; c < schema.covariates.size(); ++c) rep.importance[p++] = mean_abs[col + static_cast<int>(c)];

    const double total = rep.importance.sum();
    if (total == 0.0) throw DegenerateImportance("all input sensitivities are zero (constant network)");
    rep.importance /= total;
    rep.normalized = rep.importance / rep.importance.maxCoeff();

    std::vector<int> idx(rep.predictor.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return rep.importance[a] > rep.importance[b]; });
    rep.rank.assign(rep.predictor.size(), 0);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) rep.rank[static_cast<std::size_t>(idx[pos])] = static_cast<int>(pos) + 1;
    return rep;
}

/// Turns predictor importances into criterion weights through a
/// predictor -> criterion mapping. Every criterion must receive at least one
/// predictor and every predictor must be mapped, so the weight sum stays 1.
inline std::vector<double> importances_to_weights(const ImportanceReport& report,
                                                  const std::vector<std::pair<std::string, std::string>>& mapping,
                                                  const std::vector<std::string>& criterion_ids) {
    std::map<std::string, double> by_predictor;
    for (std::size_t p = 0; p < report.predictor.size(); ++p)
        by_predictor[report.predictor[p]] = report.importance[static_cast<Eigen::Index>(p)];

    std::map<std::string, double> by_criterion;
    std::map<std::string, int> mapped;
    for (const auto& [pred, crit] : mapping) {
        auto it = by_predictor.find(pred);
        if (it == by_predictor.end())
            throw SchemaViolation("mapping references unknown predictor '" + pred + "'");
        if (std::find(criterion_ids.begin(), criterion_ids.end(), crit) == criterion_ids.end())
            throw SchemaViolation("mapping references unknown criterion '" + crit + "'");
        by_criterion[crit] += it->second;
        ++mapped[pred];
    }
    for (const auto& p : report.predictor)
        if (!mapped.count(p)) throw SchemaViolation("predictor '" + p + "' is not mapped to any criterion");

    std::vector<double> weights;
    weights.reserve(criterion_ids.size());
    for (const auto& id : criterion_ids) {
        auto it = by_criterion.find(id);
        if (it == by_criterion.end()) throw UnmappedCriterion("criterion '" + id + "' has no mapped predictor");
        weights.push_back(it->second);
    }
    return weights;
}

}  // namespace aploco
