#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irsim/harness.hpp"
#include "irsim/scenario.hpp"

namespace irsim {

// Where a resolved config value came from; `validate` echoes this per key.
enum class value_source { builtin_default, config_file, override_flag };

const char *to_string(value_source s);

struct key_descriptor {
    std::string key;
    std::string type_name;     // double | int | uint | bool | enum | positions
    std::string default_text;  // rendered default
    std::string doc;           // one-line description, notes reference-deployment values
};

// The full key schema, in canonical order.
const std::vector<key_descriptor> &config_schema();

struct parsed_config {
    scenario_config scenario;
    sweep_variable variable = sweep_variable::none;
    std::vector<double> sweep_values;
    std::map<std::string, value_source> sources; // only keys that were set

    bool has_sweep() const { return variable != sweep_variable::none; }
    sweep_spec sweep() const; // validates; throws config_error when no sweep is set
};

// Strict parse of a key=value config document ('#' starts a comment, unknown
// or duplicate keys are errors). Missing path -> config_error(missing_file).
parsed_config parse_config_file(const std::string &path);

// Defaults only, nothing set.
parsed_config default_config();

// Applies one KEY=VALUE override (same keys and syntax as the file).
void apply_override(parsed_config &config, const std::string &key, const std::string &value);
void apply_override_expr(parsed_config &config, const std::string &key_equals_value);

// Constraint checks shared by file parse and overrides (K <= L, K <= N, ...).
void validate_config(const parsed_config &config);

// Rendered key = value lines of the resolved config, annotated with sources.
std::string describe_config(const parsed_config &config);

} // namespace irsim
