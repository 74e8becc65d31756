#include "advnids/synthetic.hpp"

#include "advnids/error.hpp"
#include "advnids/rng.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace advnids {

std::vector<double> default_shift(std::size_t dims) {
    std::vector<double> shift(dims);
    for (std::size_t i = 0; i < dims; ++i) shift[i] = 2.4 * std::pow(0.8, static_cast<double>(i));
    return shift;
}

SyntheticFlows generate_gaussian_flows(const SyntheticConfig& config) {
    if (config.rows < 2 || config.dims == 0) throw SpecError("synthetic: need rows >= 2 and dims >= 1");
    if (!(config.attack_fraction > 0.0 && config.attack_fraction < 1.0))
        throw SpecError("synthetic: attack fraction must lie in (0, 1)");
    const auto shift = config.shift.empty() ? default_shift(config.dims) : config.shift;
    if (shift.size() != config.dims) throw SpecError("synthetic: shift length differs from dims");

    RngStream rng(config.seed);
    SyntheticFlows flows;
    for (std::size_t i = 0; i < config.dims; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "Feature %02zu", i);
        flows.feature_names.emplace_back(name);
    }
    flows.features = Matrix(config.rows, config.dims);
    flows.labels.resize(config.rows);
    for (std::size_t r = 0; r < config.rows; ++r) {
        const int label = rng.uniform01() < config.attack_fraction ? 1 : 0;
        flows.labels[r] = label;
        for (std::size_t c = 0; c < config.dims; ++c) {
            const double z = rng.normal() + (label == 1 ? shift[c] : 0.0);
            const double offset = 10.0 * static_cast<double>(c + 1);
            const double spread = 1.0 + 0.5 * static_cast<double>(c);
            flows.features(r, c) = offset + spread * z;
        }
    }
    return flows;
}

void write_flow_csv(const std::string& path, const SyntheticFlows& flows,
                    const SyntheticConfig& config) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    RngStream holes(config.seed ^ 0x5bd1e995ULL);
    out << "Flow ID, Source IP, Timestamp";
    for (const auto& name : flows.feature_names) out << ", " << name;
    out << ", Label\n";
    char buf[40];
    for (std::size_t r = 0; r < flows.features.rows(); ++r) {
        out << "flow-" << r << ",10.0.0." << (r % 250) << ",2019-01-12 10:00:00";
        for (std::size_t c = 0; c < flows.features.cols(); ++c) {
            out << ',';
            if (config.missing_rate > 0.0 && holes.uniform01() < config.missing_rate) {
                static constexpr const char* kHoles[] = {"NaN", "Infinity", ""};
                out << kHoles[holes.bounded(3)];
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.17g", flows.features(r, c));
            out << buf;
        }
        out << ',' << (flows.labels[r] == 1 ? "DDoS" : "BENIGN") << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace advnids
