#include "act/config.hpp"

#include <cerrno>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "act/error.hpp"

namespace act {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

long long parse_ll(const std::string& v, int line) {
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0') fail(line, "bad integer '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line) {
    const long long x = parse_ll(v, line);
    if (x < INT_MIN || x > INT_MAX) fail(line, "integer out of range '" + v + "'");
    return static_cast<int>(x);
}

std::uint64_t parse_u64(const std::string& v, int line) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0' || v[0] == '-') {
        fail(line, "bad unsigned integer '" + v + "'");
    }
    return x;
}

double parse_double(const std::string& v, int line) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0') fail(line, "bad number '" + v + "'");
    return x;
}

bool set_key(Config& c, const std::string& key, const std::string& value, int line) {
    const auto iv = [&] { return parse_int(value, line); };
    const auto dv = [&] { return parse_double(value, line); };

    if (key == "bag_count") c.act.bag_count = iv();
    else if (key == "templates_per_bag") c.act.templates_per_bag = iv();
    else if (key == "selected_per_bag") c.act.selected_per_bag = iv();
    else if (key == "confidence_threshold") c.act.confidence_threshold = dv();
    else if (key == "template_threshold") c.act.template_threshold = dv();
    else if (key == "search_radius") c.act.search_radius = iv();
    else if (key == "positive_radius") c.act.positive_radius = iv();
    else if (key == "negative_inner") c.act.negative_inner = iv();
    else if (key == "negative_outer") c.act.negative_outer = iv();
    else if (key == "positive_count") c.act.positive_count = iv();
    else if (key == "negative_count") c.act.negative_count = iv();
    else if (key == "template_ratio") c.act.template_ratio = dv();
    else if (key == "learning_rate") c.act.learning_rate = dv();
    else if (key == "selection_period") c.act.selection_period = iv();
    else if (key == "seed") c.act.seed = parse_u64(value, line);
    else if (key == "ct_feature_count") c.ct.feature_count = iv();
    else if (key == "ct_search_radius") c.ct.search_radius = iv();
    else if (key == "ct_positive_radius") c.ct.positive_radius = iv();
    else if (key == "ct_negative_inner") c.ct.negative_inner = iv();
    else if (key == "ct_negative_outer") c.ct.negative_outer = iv();
    else if (key == "ct_negative_count") c.ct.negative_count = iv();
    else if (key == "ct_learning_rate") c.ct.learning_rate = dv();
    else if (key == "ct_seed") c.ct.seed = parse_u64(value, line);
    else return false;
    return true;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require(bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

void TrackerConfig::validate() const {
    require(bag_count >= 1, "bag_count must be >= 1");
    require(templates_per_bag >= 1, "templates_per_bag must be >= 1");
    require(selected_per_bag >= 1 && selected_per_bag <= templates_per_bag,
            "selected_per_bag must be in [1, templates_per_bag]");
    require(template_threshold >= 0.0, "template_threshold must be >= 0");
    require(search_radius >= 1, "search_radius must be >= 1");
    require(positive_radius >= 1, "positive_radius must be >= 1");
    require(positive_radius < negative_inner && negative_inner < negative_outer,
            "need positive_radius < negative_inner < negative_outer");
    require(positive_count >= 1 && negative_count >= 1, "sample counts must be >= 1");
    require(template_ratio > 0.0 && template_ratio <= 1.0, "template_ratio must be in (0, 1]");
    require(learning_rate >= 0.0 && learning_rate < 1.0, "learning_rate must be in [0, 1)");
    require(selection_period >= 1, "selection_period must be >= 1");
}

void CtConfig::validate() const {
    require(feature_count >= 1, "ct_feature_count must be >= 1");
    require(search_radius >= 1, "ct_search_radius must be >= 1");
    require(positive_radius >= 1, "ct_positive_radius must be >= 1");
    require(positive_radius < negative_inner && negative_inner < negative_outer,
            "need ct_positive_radius < ct_negative_inner < ct_negative_outer");
    require(negative_count >= 1, "ct_negative_count must be >= 1");
    require(learning_rate >= 0.0 && learning_rate < 1.0, "ct_learning_rate must be in [0, 1)");
}

void Config::validate() const {
    act.validate();
    ct.validate();
}

Config parse_config(std::istream& in, const Config& base) {
    Config out = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value, got '" + text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (!set_key(out, key, value, lineno)) fail(lineno, "unknown key '" + key + "'");
    }
    out.validate();
    return out;
}

Config load_config(const std::string& path, const Config& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, base);
}

std::string dump_config(const Config& c) {
    std::ostringstream out;
    out << "bag_count=" << c.act.bag_count << '\n'
        << "templates_per_bag=" << c.act.templates_per_bag << '\n'
        << "selected_per_bag=" << c.act.selected_per_bag << '\n'
        << "confidence_threshold=" << fmt(c.act.confidence_threshold) << '\n'
        << "template_threshold=" << fmt(c.act.template_threshold) << '\n'
        << "search_radius=" << c.act.search_radius << '\n'
        << "positive_radius=" << c.act.positive_radius << '\n'
        << "negative_inner=" << c.act.negative_inner << '\n'
        << "negative_outer=" << c.act.negative_outer << '\n'
        << "positive_count=" << c.act.positive_count << '\n'
        << "negative_count=" << c.act.negative_count << '\n'
        << "template_ratio=" << fmt(c.act.template_ratio) << '\n'
        << "learning_rate=" << fmt(c.act.learning_rate) << '\n'
        << "selection_period=" << c.act.selection_period << '\n'
        << "seed=" << c.act.seed << '\n'
        << "ct_feature_count=" << c.ct.feature_count << '\n'
        << "ct_search_radius=" << c.ct.search_radius << '\n'
        << "ct_positive_radius=" << c.ct.positive_radius << '\n'
        << "ct_negative_inner=" << c.ct.negative_inner << '\n'
        << "ct_negative_outer=" << c.ct.negative_outer << '\n'
        << "ct_negative_count=" << c.ct.negative_count << '\n'
        << "ct_learning_rate=" << fmt(c.ct.learning_rate) << '\n'
        << "ct_seed=" << c.ct.seed << '\n';
    return out.str();
}

}  // namespace act
