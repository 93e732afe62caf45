// Regenerates fixtures/synthetic/dataset.csv: 200 draws from a linear model
// over five covariates (plus four informationless factors), with additive
// Gaussian noise of sd 0.01. The checked-in fixture was produced by this
// program; rerun it if the fixture ever needs to change.
//
//   aploco-gen-fixture [output.csv]

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "aploco/util.hpp"

namespace {

constexpr std::uint64_t kSeed = 20150831;
constexpr int kRows = 200;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Box-Muller; consumes two draws per call.
double gaussian(std::mt19937_64& rng) {
    const double u1 = uniform01(rng), u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string out = argc > 1 ? argv[1] : "fixtures/synthetic/dataset.csv";
    std::mt19937_64 rng(kSeed);

    std::string csv =
        "mixed,specialized,reformed,incentive_zone,education_index,income_wealth_index,"
        "safety_index,parcels_in_production,passing_years,factories_in_production\n";

    const char* zones[] = {"z1", "z2", "z3", "z4", "z5", "z6"};
    for (int r = 0; r < kRows; ++r) {
        const bool mixed = uniform01(rng) < 0.91;
        const bool specialized = !mixed && uniform01(rng) < 0.8;
        const bool reformed = !mixed && !specialized;
        const char* zone = zones[rng() % 6];

        const double education = uniform(rng, 0.16, 0.75);
        const double income = uniform(rng, 0.02, 0.88);
        const double safety = uniform(rng, 0.40, 0.79);
        const double parcels = std::floor(std::exp(uniform(rng, 0.0, 9.9))) + 1.0;
        const double years = std::floor(uniform(rng, 0.0, 16.0));

        // linear response; coefficients act on covariates rescaled to [-1, 1]
        // (an affine map, so the target stays linear in the raw covariates)
        auto rescale = [](double x, double lo, double hi) { return 2.0 * (x - lo) / (hi - lo) - 1.0; };
        const double y = 3.0 * rescale(parcels, 1.0, 19882.0) + 0.8 * rescale(income, 0.02, 0.88) +
                         0.5 * rescale(education, 0.16, 0.75) + 0.3 * rescale(safety, 0.40, 0.79) +
                         0.2 * rescale(years, 0.0, 15.0) + 0.01 * gaussian(rng);

        csv += mixed ? "yes," : "no,";
        csv += specialized ? "yes," : "no,";
        csv += reformed ? "yes," : "no,";
        csv += std::string(zone) + ",";
        csv += aploco::format_full(education) + ",";
        csv += aploco::format_full(income) + ",";
        csv += aploco::format_full(safety) + ",";
        csv += aploco::format_full(parcels) + ",";
        csv += aploco::format_full(years) + ",";
        csv += aploco::format_full(y) + "\n";
    }

    aploco::write_file_atomic(out, csv);
    std::cout << "wrote " << out << " (" << kRows << " rows, seed " << kSeed << ")\n";
    return 0;
}
