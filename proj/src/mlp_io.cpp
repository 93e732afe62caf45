#include "aploco/mlp_io.hpp"

#include <nlohmann/json.hpp>

#include "aploco/decision.hpp"  // detail::fnv1a
#include "aploco/util.hpp"

namespace aploco {
namespace {

using nlohmann::json;

constexpr int kNetworkSchemaVersion = 1;

json flatten_row_major(const Eigen::MatrixXd& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
    return arr;
}

json to_array(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from(const json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    return v;
}

}  // namespace

std::uint64_t schema_hash(const PredictorSchema& schema) {
    std::uint64_t h = detail::fnv1a("schema", 6);
    for (const auto& f : schema.factors) {
        h = detail::fnv1a(f.name, h);
        h = detail::fnv1a("|", 1, h);
        for (const auto& l : f.levels) {
            h = detail::fnv1a(l, h);
            h = detail::fnv1a(";", 1, h);
        }
    }
    h = detail::fnv1a("#", 1, h);
    for (const auto& c : schema.covariates) {
        h = detail::fnv1a(c.name, h);
        h = detail::fnv1a(";", 1, h);
    }
    h = detail::fnv1a("#", 1, h);
    h = detail::fnv1a(schema.target_name, h);
    return h;
}

std::string network_to_json(const NetworkFile& file) {
    const auto& net = file.network;
    json j;
    j["schema_version"] = kNetworkSchemaVersion;
    j["kind"] = "aploco_mlp_network";
    j["schema_hash"] = file.schema_hash;
    j["input_units"] = net.input_width();
    j["hidden_units"] = net.hidden_units();
    j["activations"] = {{"hidden", "tanh"}, {"output", "identity"}};
    j["hidden_weights"] = flatten_row_major(net.hidden_weights);
    j["hidden_bias"] = to_array(net.hidden_bias);
    j["output_weights"] = to_array(net.output_weights);
    j["output_bias"] = net.output_bias;
    json covs = json::array();
    for (const auto& mm : file.rescale.covariates) covs.push_back({{"min", mm.min}, {"max", mm.max}});
    j["rescale"] = {{"covariates", std::move(covs)},
                    {"target", {{"mean", file.rescale.target_mean}, {"sd", file.rescale.target_sd}}}};
    j["config"] = {{"hidden_units", file.config.hidden_units},
                   {"epochs", file.config.epochs},
                   {"learning_rate", file.config.learning_rate},
                   {"seed", file.config.seed},
                   {"init_scale", file.config.init_scale},
                   {"train_fraction", file.config.train_fraction},
                   {"rng", "mt19937_64"}};
    return j.dump(2) + "\n";
}

NetworkFile network_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed network JSON: ") + e.what());
    }
    try {
        if (j.at("kind").get<std::string>() != "aploco_mlp_network") throw Error("not a network file");
        if (j.at("schema_version").get<int>() != kNetworkSchemaVersion) throw Error("unsupported network schema_version");
        NetworkFile file;
        file.schema_hash = j.at("schema_hash").get<std::uint64_t>();
        const auto d = j.at("input_units").get<Eigen::Index>();
        const auto h = j.at("hidden_units").get<Eigen::Index>();
        const auto& hw = j.at("hidden_weights");
        if (static_cast<Eigen::Index>(hw.size()) != d * h) throw Error("hidden_weights size mismatch");
        file.network.hidden_weights.resize(d, h);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index k = 0; k < h; ++k)
                file.network.hidden_weights(i, k) = hw[static_cast<std::size_t>(i * h + k)].get<double>();
        file.network.hidden_bias = vector_from(j.at("hidden_bias"));
        file.network.output_weights = vector_from(j.at("output_weights"));
        file.network.output_bias = j.at("output_bias").get<double>();
        if (file.network.hidden_bias.size() != h || file.network.output_weights.size() != h)
            throw Error("bias/weight vector size mismatch");
        for (const auto& mm : j.at("rescale").at("covariates"))
            file.rescale.covariates.push_back({mm.at("min").get<double>(), mm.at("max").get<double>()});
        file.rescale.target_mean = j.at("rescale").at("target").at("mean").get<double>();
        file.rescale.target_sd = j.at("rescale").at("target").at("sd").get<double>();
        const auto& cfg = j.at("config");
        file.config.hidden_units = cfg.at("hidden_units").get<int>();
        file.config.epochs = cfg.at("epochs").get<int>();
        file.config.learning_rate = cfg.at("learning_rate").get<double>();
        file.config.seed = cfg.at("seed").get<std::uint64_t>();
        file.config.init_scale = cfg.at("init_scale").get<double>();
        file.config.train_fraction = cfg.at("train_fraction").get<double>();
        return file;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed network JSON: ") + e.what());
    }
}

void save_network(const std::filesystem::path& path, const NetworkFile& file) {
    write_file_atomic(path, network_to_json(file));
}

NetworkFile load_network(const std::filesystem::path& path) { return network_from_json(read_file(path)); }

}  // namespace aploco
