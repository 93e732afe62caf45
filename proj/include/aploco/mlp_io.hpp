#pragma once

// JSON persistence for trained networks: dimensions, row-major weight
// arrays, rescale parameters, seed and config, plus a hash of the predictor
// schema so a network is never applied to differently-encoded data.

#include <cstdint>
#include <filesystem>
#include <string>

#include "aploco/mlp.hpp"

namespace aploco {

struct NetworkFile {
    MlpNetwork network;
    RescaleParams rescale;
    TrainConfig config;
    std::uint64_t schema_hash = 0;
};

/// Stable fingerprint of a predictor schema (names, levels, target).
std::uint64_t schema_hash(const PredictorSchema& schema);

std::string network_to_json(const NetworkFile& file);
NetworkFile network_from_json(const std::string& json_text);

void save_network(const std::filesystem::path& path, const NetworkFile& file);
NetworkFile load_network(const std::filesystem::path& path);

}  // namespace aploco
