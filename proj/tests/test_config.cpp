#include <doctest.h>

#include <sstream>
#include <string>

#include "act/config.hpp"
#include "act/error.hpp"
#include "helpers.hpp"

using namespace act;

TEST_CASE("defaults carry the published parameter set") {
    Config cfg;
    CHECK(cfg.act.bag_count == 150);
    CHECK(cfg.act.templates_per_bag == 30);
    CHECK(cfg.act.selected_per_bag == 5);
    CHECK(cfg.act.confidence_threshold == 0.0);
    CHECK(cfg.act.template_threshold == 100.0);
    CHECK(cfg.act.search_radius == 25);
    CHECK(cfg.act.positive_radius == 2);
    CHECK(cfg.act.negative_inner == 4);
    CHECK(cfg.act.negative_outer == 15);
    CHECK(cfg.act.positive_count == 40);
    CHECK(cfg.act.negative_count == 40);
    CHECK(cfg.act.template_ratio == 0.05);
    CHECK(cfg.act.learning_rate == 0.85);
    CHECK(cfg.act.selection_period == 1);
    CHECK(cfg.act.seed == 1);

    CHECK(cfg.ct.feature_count == 50);
    CHECK(cfg.ct.search_radius == 25);
    CHECK(cfg.ct.positive_radius == 4);
    CHECK(cfg.ct.negative_inner == 8);
    CHECK(cfg.ct.negative_outer == 30);
    CHECK(cfg.ct.negative_count == 50);
    CHECK(cfg.ct.learning_rate == 0.85);
    CHECK(cfg.ct.seed == 1);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config overlays only the keys present") {
    std::istringstream in(
        "# tuning\n"
        "learning_rate = 0.5\n"
        "\n"
        "ct_seed=9\n"
        "search_radius = 12\n");
    Config cfg = parse_config(in);
    CHECK(cfg.act.learning_rate == 0.5);
    CHECK(cfg.act.search_radius == 12);
    CHECK(cfg.ct.seed == 9);
    // Untouched keys keep their defaults.
    CHECK(cfg.act.bag_count == 150);
    CHECK(cfg.ct.search_radius == 25);
}

TEST_CASE("parse_config starts from the provided base") {
    Config base;
    base.act.bag_count = 10;
    std::istringstream in("seed = 4\n");
    Config cfg = parse_config(in, base);
    CHECK(cfg.act.bag_count == 10);
    CHECK(cfg.act.seed == 4);
}

TEST_CASE("unknown keys and bad values name their line") {
    std::istringstream bad_key("bag_count = 5\nwat = 1\n");
    try {
        parse_config(bad_key);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::istringstream bad_value("bag_count = soon\n");
    CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
    std::istringstream no_sep("bag_count\n");
    CHECK_THROWS_AS(parse_config(no_sep), ConfigError);
    std::istringstream trailing("bag_count = 5 extra\n");
    CHECK_THROWS_AS(parse_config(trailing), ConfigError);
}

TEST_CASE("dump and parse round-trip exactly") {
    Config cfg;
    cfg.act.learning_rate = 0.1 + 0.2;       // deliberately unrepresentable-looking
    cfg.act.template_ratio = 1.0 / 3.0;
    cfg.act.confidence_threshold = -2.5e-7;
    cfg.act.seed = 0xdeadbeefcafeULL;
    cfg.ct.learning_rate = 2.0 / 7.0;
    cfg.ct.seed = 123456789012345ULL;
    const std::string text = dump_config(cfg);
    std::istringstream in(text);
    Config back = parse_config(in);
    CHECK(back == cfg);
    // Dumping the round-tripped config reproduces the text too.
    CHECK(dump_config(back) == text);
}

TEST_CASE("validate rejects inconsistent radii and rates") {
    Config cfg;
    cfg.act.negative_inner = 20;  // >= negative_outer
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.act.positive_radius = 4;  // == negative_inner
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.act.learning_rate = 1.0;
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.act.template_ratio = 0.0;
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.act.selected_per_bag = 31;  // > templates_per_bag
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.act.selection_period = 0;
    CHECK_THROWS_AS(cfg.act.validate(), ConfigError);

    cfg = Config{};
    cfg.ct.negative_inner = 40;
    CHECK_THROWS_AS(cfg.ct.validate(), ConfigError);

    cfg = Config{};
    cfg.ct.learning_rate = -0.1;
    CHECK_THROWS_AS(cfg.ct.validate(), ConfigError);
}

TEST_CASE("load_config reads files and reports missing ones") {
    act::testing::TempDir tmp("cfg");
    const std::string path = tmp.file("run.cfg");
    act::testing::write_text(path, "bag_count = 25\nct_feature_count = 10\n");
    Config cfg = load_config(path);
    CHECK(cfg.act.bag_count == 25);
    CHECK(cfg.ct.feature_count == 10);
    CHECK_THROWS_AS(load_config(tmp.file("missing.cfg")), ConfigError);
}
