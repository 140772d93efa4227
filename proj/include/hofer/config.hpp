#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hofer/common.hpp"
#include "hofer/field.hpp"

namespace hofer {

// Key-value tree: `[section]` headers followed by `key = value` lines,
// '#' comments. Keys are addressed as "section.key". Flags given on the
// command line override file values.
class KeyValueTree {
public:
    static KeyValueTree parse_file(const std::string& path);
    static KeyValueTree parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const;
    double get_number(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    // Comma- or space-separated list of numbers.
    std::vector<double> get_numbers(const std::string& key) const;
    // Semicolon-separated groups of comma-separated integers.
    std::vector<std::vector<long long>> get_int_groups(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Resolved run configuration shared by the CLI commands.
struct RunConfig {
    KeyValueTree tree;

    std::string out_dir = "out";
    uint64_t seed = 1;
    int grid = 512;
    int slabs = 256;
    double step = 0.0;
    double A = 0.75;
    double s1 = 0.0;
    double s2 = -1.0;  // negative = default 2A-1

    SurfaceSpec surface() const;
    Chart chart() const;
    FieldOptions field_options() const;
    // The [field] expression, or the named one ("field.<name>.expression").
    ScalarField load_field(const std::string& name = "") const;

    void validate() const;
};

RunConfig make_run_config(const std::string& config_path, const KeyValueTree& overrides);

}  // namespace hofer
