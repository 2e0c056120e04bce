#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolperc/geom.hpp"
#include "boolperc/measure.hpp"

namespace boolperc {

// Experiment description. Accepted either as flat key = value text (repeated
// `measure` / `target` lines accumulate) or as a JSON document with the same
// keys; `boolperc schema` prints the full key list.
struct ExperimentConfig {
    std::string kind;
    int d = 2;
    std::uint64_t master_seed = 1;
    std::string out_dir = "out";
    int workers = 1;
    std::size_t reps = 0;
    double sigma = 3.0;
    double hard_cap = 1e8;

    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    std::optional<TargetSet> target;

    std::optional<double> t;
    std::optional<double> dt;
    std::optional<double> delta;
    std::optional<double> n;
    std::optional<double> tol;
    std::optional<double> tc_hat;
    std::optional<double> length;
    std::optional<double> region_radius;
    std::optional<double> box_half_width;
    std::optional<long> mecke_m;
    std::vector<double> t_grid;
    std::vector<double> sizes;
    std::vector<double> k_grid;
    std::size_t mc_points = 64;
    int n_levels = 10;
    std::size_t drift_reps = 0; // 0 derives max(200, reps/10)

    RadiusMeasure measure() const { return RadiusMeasure(atoms, segments); }

    // Fills kind-dependent defaults (dt, delta, drift_reps, ...).
    ExperimentConfig resolved() const;

    // Throws ConfigError naming the offending field. Call on resolved().
    void validate() const;

    nlohmann::ordered_json to_json() const;

    static ExperimentConfig from_file(const std::filesystem::path& path);
    static ExperimentConfig from_text(const std::string& text);
    static ExperimentConfig from_json(const nlohmann::json& j);
};

const std::vector<std::string>& experiment_kinds();
std::string config_schema();

} // namespace boolperc
