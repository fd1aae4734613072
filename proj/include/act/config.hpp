#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace act {

// ACT tracker parameters, defaults as published.
struct TrackerConfig {
    int bag_count = 150;                 // c
    int templates_per_bag = 30;          // n
    int selected_per_bag = 5;            // k
    double confidence_threshold = 0.0;   // below this the tracker rectifies
    double template_threshold = 100.0;   // raw-center L2 change that triggers a blend
    int search_radius = 25;              // dense scan disc, px
    int positive_radius = 2;             // positive sample disc, px
    int negative_inner = 4;              // negative annulus, px
    int negative_outer = 15;
    int positive_count = 40;
    int negative_count = 40;
    double template_ratio = 0.05;        // blend weight of the fresh center
    double learning_rate = 0.85;         // classifier forgetting factor
    int selection_period = 1;            // reselect templates every Nth update
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
    bool operator==(const TrackerConfig&) const = default;
};

// Original-CT baseline parameters, defaults from its published implementation.
struct CtConfig {
    int feature_count = 50;
    int search_radius = 25;
    int positive_radius = 4;
    int negative_inner = 8;
    int negative_outer = 30;
    int negative_count = 50;
    double learning_rate = 0.85;
    std::uint64_t seed = 1;

    void validate() const;
    bool operator==(const CtConfig&) const = default;
};

// Everything a parameter file can carry. CT keys wear a ct_ prefix.
struct Config {
    TrackerConfig act;
    CtConfig ct;

    void validate() const;
    bool operator==(const Config&) const = default;
};

// key=value lines, # comments, unknown keys rejected. Starts from `base` so a
// file only needs the keys it wants to change.
Config parse_config(std::istream& in, const Config& base = {});
Config load_config(const std::string& path, const Config& base = {});

// Emits every key. parse_config(dump_config(c)) == c exactly; doubles are
// printed with %.17g so they round-trip bit for bit.
std::string dump_config(const Config& config);

}  // namespace act
