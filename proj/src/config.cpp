#include "hofer/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hofer {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

KeyValueTree KeyValueTree::parse_text(const std::string& text) {
    KeyValueTree tree;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        tree.values_[section.empty() ? key : section + "." + key] = value;
    }
    return tree;
}

KeyValueTree KeyValueTree::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str());
}

std::string KeyValueTree::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueTree::get_number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (trim(it->second.substr(used)).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: " + it->second);
    }
}

int KeyValueTree::get_int(const std::string& key, int fallback) const {
    double v = get_number(key, fallback);
    int i = static_cast<int>(v);
    if (v != i) throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

std::vector<double> KeyValueTree::get_numbers(const std::string& key) const {
    std::vector<double> out;
    auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::string s = it->second;
    for (auto& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

std::vector<std::vector<long long>> KeyValueTree::get_int_groups(const std::string& key) const {
    std::vector<std::vector<long long>> out;
    auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::istringstream groups(it->second);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<long long> coeffs;
        for (auto& c : group)
            if (c == ',') c = ' ';
        std::istringstream in(group);
        long long v;
        while (in >> v) coeffs.push_back(v);
        if (!coeffs.empty()) out.push_back(std::move(coeffs));
    }
    return out;
}

SurfaceSpec RunConfig::surface() const {
    SurfaceSpec s;
    s.genus = tree.get_int("surface.genus", 0);
    s.punctures = tree.get_int("surface.punctures", 1);
    s.area = tree.get_number("surface.area", 1.0);
    auto pos = tree.get_numbers("surface.positions");
    if (pos.size() % 2 != 0) throw ConfigError("surface.positions needs x y pairs");
    for (std::size_t i = 0; i + 1 < pos.size(); i += 2) s.puncture_positions.push_back({pos[i], pos[i + 1]});
    s.validate();
    return s;
}

Chart RunConfig::chart() const {
    std::string kind = tree.get_string("field.chart", "annulus");
    if (kind == "annulus") return Chart{ChartKind::Annulus};
    if (kind == "square" || kind == "planar") return Chart{ChartKind::PlanarSquare};
    throw ConfigError("field.chart must be 'annulus' or 'square'");
}

FieldOptions RunConfig::field_options() const {
    FieldOptions o;
    o.grid_x = grid;
    o.grid_y = grid;
    o.collar = tree.get_number("field.collar", 0.02);
    o.time_knots = tree.get_int("field.time_knots", 1);
    return o;
}

ScalarField RunConfig::load_field(const std::string& name) const {
    std::string key = name.empty() ? "field.expression" : "field." + name + ".expression";
    std::string expr = tree.get_string(key);
    if (expr.empty()) throw ConfigError("missing config key: " + key);
    return ScalarField::from_expression(chart(), expr, field_options());
}

void RunConfig::validate() const {
    if (grid < 8) throw ConfigError("grid too small");
    if (slabs < 8) throw ConfigError("slabs too small");
    if (!(A > 0 && A < 1)) throw ConfigError("A must satisfy 0 < A < 1 (normalized area)");
    if (s2 >= 0 && !(s1 >= 0 && s1 < s2 && s2 <= 2 * A - 1 + 1e-12))
        throw ConfigError("need 0 <= s1 < s2 <= 2A-1");
}

RunConfig make_run_config(const std::string& config_path, const KeyValueTree& overrides) {
    RunConfig cfg;
    if (!config_path.empty()) cfg.tree = KeyValueTree::parse_file(config_path);
    for (const auto& [k, v] : overrides.entries()) cfg.tree.set(k, v);

    cfg.out_dir = cfg.tree.get_string("output.dir", cfg.out_dir);
    cfg.seed = static_cast<uint64_t>(cfg.tree.get_number("output.seed", 1));
    cfg.grid = cfg.tree.get_int("field.grid", 512);
    cfg.slabs = cfg.tree.get_int("field.slabs", 256);
    cfg.step = cfg.tree.get_number("simulate.step", 0.0);
    cfg.A = cfg.tree.get_number("params.A", 0.75);
    cfg.s1 = cfg.tree.get_number("params.s1", 0.0);
    cfg.s2 = cfg.tree.get_number("params.s2", 2 * cfg.A - 1);
    return cfg;
}

}  // namespace hofer
