#include "irsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "irsim/errors.hpp"

namespace irsim {

const char *to_string(config_error::kind k) {
    switch (k) {
    case config_error::kind::missing_file:
        return "missing file";
    case config_error::kind::unknown_key:
        return "unknown key";
    case config_error::kind::type_mismatch:
        return "type mismatch";
    case config_error::kind::constraint:
        return "constraint violation";
    case config_error::kind::duplicate_key:
        return "duplicate key";
    }
    return "?";
}

const char *to_string(value_source s) {
    switch (s) {
    case value_source::builtin_default:
        return "default";
    case value_source::config_file:
        return "config";
    case value_source::override_flag:
        return "override";
    }
    return "?";
}

namespace {

std::string trim(const std::string &s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

[[noreturn]] void type_fail(const std::string &key, const std::string &value, const std::string &want) {
    throw config_error(config_error::kind::type_mismatch,
                       "key '" + key + "': value '" + value + "' is not a valid " + want);
}

double parse_double(const std::string &key, const std::string &value) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        type_fail(key, value, "number");
    return out;
}

long long parse_int(const std::string &key, const std::string &value) {
    const std::string v = trim(value);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        type_fail(key, value, "integer");
    return out;
}

std::uint64_t parse_uint(const std::string &key, const std::string &value) {
    const std::string v = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        type_fail(key, value, "unsigned integer");
    return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    type_fail(key, value, "bool (true/false)");
}

// "x,y,z; x,y,z; ..." -> positions. Empty string -> empty list.
std::vector<position> parse_positions(const std::string &key, const std::string &value) {
    std::vector<position> out;
    const std::string v = trim(value);
    if (v.empty())
        return out;
    std::stringstream groups(v);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::stringstream coords(group);
        std::string coord;
        std::vector<double> xyz;
        while (std::getline(coords, coord, ','))
            xyz.push_back(parse_double(key, coord));
        if (xyz.size() != 3)
            type_fail(key, group, "x,y,z triple");
        out.push_back({xyz[0], xyz[1], xyz[2]});
    }
    return out;
}

std::vector<double> parse_double_list(const std::string &key, const std::string &value) {
    std::vector<double> out;
    const std::string v = trim(value);
    if (v.empty())
        return out;
    std::stringstream items(v);
    std::string item;
    while (std::getline(items, item, ','))
        out.push_back(parse_double(key, item));
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_positions(const std::vector<position> &ps) {
    std::string out;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i)
            out += "; ";
        out += format_double(ps[i].x) + "," + format_double(ps[i].y) + "," + format_double(ps[i].z);
    }
    return out;
}

struct key_entry {
    key_descriptor desc;
    std::function<void(parsed_config &, const std::string &)> set;
    std::function<std::string(const parsed_config &)> get;
};

const std::vector<key_entry> &registry() {
    static const std::vector<key_entry> entries = [] {
        std::vector<key_entry> r;
        auto add = [&r](std::string key, std::string type, std::string def, std::string doc, auto set,
                        auto get) {
            r.push_back({{std::move(key), std::move(type), std::move(def), std::move(doc)}, set, get});
        };

        add("radio.carrier_frequency_ghz", "double", "15", "carrier frequency in GHz (reference deployment: 15)",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.carrier_frequency_hz = parse_double("radio.carrier_frequency_ghz", v) * 1e9;
            },
            [](const parsed_config &c) { return format_double(c.scenario.radio.carrier_frequency_hz / 1e9); });
        add("radio.bandwidth_mhz", "double", "400", "channel bandwidth in MHz",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.bandwidth_hz = parse_double("radio.bandwidth_mhz", v) * 1e6;
            },
            [](const parsed_config &c) { return format_double(c.scenario.radio.bandwidth_hz / 1e6); });
        add("radio.noise_density_dbm_per_hz", "double", "-174", "noise power density",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.noise_density_dbm_per_hz = parse_double("radio.noise_density_dbm_per_hz", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.radio.noise_density_dbm_per_hz); });
        add("radio.noise_figure_db", "double", "10", "receiver noise figure",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.noise_figure_db = parse_double("radio.noise_figure_db", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.radio.noise_figure_db); });
        add("radio.ap_power_dbm", "double", "43.2", "AP transmit power budget",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.ap_power_budget_dbm = parse_double("radio.ap_power_dbm", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.radio.ap_power_budget_dbm); });
        add("radio.ap_antennas", "int", "16", "AP antenna count (desk scale; full scale uses 256)",
            [](parsed_config &c, const std::string &v) {
                c.scenario.radio.num_ap_antennas = static_cast<int>(parse_int("radio.ap_antennas", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.radio.num_ap_antennas); });

        add("network.k_users", "int", "4", "number of single-antenna users",
            [](parsed_config &c, const std::string &v) {
                c.scenario.k_users = static_cast<int>(parse_int("network.k_users", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.k_users); });
        add("network.l_irs", "int", "4", "number of reflecting surfaces (terrestrial panels + 1 aerial)",
            [](parsed_config &c, const std::string &v) {
                c.scenario.l_irs = static_cast<int>(parse_int("network.l_irs", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.l_irs); });
        add("network.area_side_m", "double", "200", "square service-area side length",
            [](parsed_config &c, const std::string &v) {
                c.scenario.area_side_m = parse_double("network.area_side_m", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.area_side_m); });
        add("network.user_height_m", "double", "1.5", "user antenna height",
            [](parsed_config &c, const std::string &v) {
                c.scenario.user_height_m = parse_double("network.user_height_m", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.user_height_m); });
        add("network.ap_height_m", "double", "25", "AP mast height",
            [](parsed_config &c, const std::string &v) {
                c.scenario.ap_height_m = parse_double("network.ap_height_m", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.ap_height_m); });

        add("irs.reflectors_per_side", "int", "20",
            "elements per panel side, M = side^2 (desk scale; full scale uses 100)",
            [](parsed_config &c, const std::string &v) {
                c.scenario.reflectors_per_side = static_cast<int>(parse_int("irs.reflectors_per_side", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.reflectors_per_side); });
        add("irs.tirs_height_m", "double", "15", "terrestrial panel mounting height",
            [](parsed_config &c, const std::string &v) {
                c.scenario.tirs_height_m = parse_double("irs.tirs_height_m", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.tirs_height_m); });
        add("irs.airs_altitude_m", "double", "120", "aerial panel altitude",
            [](parsed_config &c, const std::string &v) {
                c.scenario.airs_altitude_m = parse_double("irs.airs_altitude_m", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.airs_altitude_m); });
        add("irs.tirs_positions", "positions", "",
            "explicit terrestrial panel centers 'x,y,z; x,y,z'; empty auto-places them on the perimeter",
            [](parsed_config &c, const std::string &v) {
                c.scenario.tirs_positions = parse_positions("irs.tirs_positions", v);
            },
            [](const parsed_config &c) { return format_positions(c.scenario.tirs_positions); });
        add("irs.airs_position", "positions", "",
            "explicit aerial panel center 'x,y,z'; empty hovers over the area center",
            [](parsed_config &c, const std::string &v) {
                const auto ps = parse_positions("irs.airs_position", v);
                if (ps.size() > 1)
                    type_fail("irs.airs_position", v, "single x,y,z triple");
                c.scenario.airs_position = ps.empty() ? std::nullopt : std::optional<position>(ps.front());
            },
            [](const parsed_config &c) {
                return c.scenario.airs_position ? format_positions({*c.scenario.airs_position}) : std::string();
            });

        add("channel.center_phase_approx", "bool", "false",
            "use panel-center distances for entry phases instead of per-element distances",
            [](parsed_config &c, const std::string &v) {
                c.scenario.channel.center_phase_approx = parse_bool("channel.center_phase_approx", v);
            },
            [](const parsed_config &c) { return c.scenario.channel.center_phase_approx ? "true" : "false"; });
        add("channel.rician_enabled", "bool", "false", "add complex-Gaussian fading on top of the LoS term",
            [](parsed_config &c, const std::string &v) {
                c.scenario.channel.rician_enabled = parse_bool("channel.rician_enabled", v);
            },
            [](const parsed_config &c) { return c.scenario.channel.rician_enabled ? "true" : "false"; });
        add("channel.rician_k_factor_db", "double", "10", "Rician K-factor",
            [](parsed_config &c, const std::string &v) {
                c.scenario.channel.rician_k_factor_db = parse_double("channel.rician_k_factor_db", v);
            },
            [](const parsed_config &c) { return format_double(c.scenario.channel.rician_k_factor_db); });

        add("sim.objective", "enum", "clean_zf", "sum-rate objective: clean_zf | literal_interference",
            [](parsed_config &c, const std::string &v) {
                const std::string t = trim(v);
                if (t == "clean_zf")
                    c.scenario.objective = objective_mode::clean_zf;
                else if (t == "literal_interference")
                    c.scenario.objective = objective_mode::literal_interference;
                else
                    type_fail("sim.objective", v, "one of clean_zf, literal_interference");
            },
            [](const parsed_config &c) {
                return c.scenario.objective == objective_mode::clean_zf ? "clean_zf" : "literal_interference";
            });
        add("sim.power_policy", "enum", "equal_power", "power split: equal_power | equal_rate",
            [](parsed_config &c, const std::string &v) {
                const std::string t = trim(v);
                if (t == "equal_power")
                    c.scenario.policy = power_policy::equal_power;
                else if (t == "equal_rate")
                    c.scenario.policy = power_policy::equal_rate;
                else
                    type_fail("sim.power_policy", v, "one of equal_power, equal_rate");
            },
            [](const parsed_config &c) {
                return c.scenario.policy == power_policy::equal_power ? "equal_power" : "equal_rate";
            });
        add("sim.trials", "int", "10000", "Monte-Carlo trials per grid point",
            [](parsed_config &c, const std::string &v) {
                c.scenario.trials = static_cast<int>(parse_int("sim.trials", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.trials); });
        add("sim.master_seed", "uint", "1", "master seed; per-trial streams derive from it",
            [](parsed_config &c, const std::string &v) {
                c.scenario.master_seed = parse_uint("sim.master_seed", v);
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.master_seed); });
        add("sim.max_iters", "int", "10", "beamforming/association alternation cap",
            [](parsed_config &c, const std::string &v) {
                c.scenario.max_iters = static_cast<int>(parse_int("sim.max_iters", v));
            },
            [](const parsed_config &c) { return std::to_string(c.scenario.max_iters); });

        add("sweep.variable", "enum", "none",
            "grid variable: none | ap_power_dbm | reflectors_per_side | area_side_m",
            [](parsed_config &c, const std::string &v) {
                const std::string t = trim(v);
                if (t == "none")
                    c.variable = sweep_variable::none;
                else if (t == "ap_power_dbm")
                    c.variable = sweep_variable::ap_power_dbm;
                else if (t == "reflectors_per_side")
                    c.variable = sweep_variable::reflectors_per_side;
                else if (t == "area_side_m")
                    c.variable = sweep_variable::area_side_m;
                else
                    type_fail("sweep.variable", v,
                              "one of none, ap_power_dbm, reflectors_per_side, area_side_m");
            },
            [](const parsed_config &c) { return to_string(c.variable); });
        add("sweep.values", "list", "", "comma-separated strictly increasing grid values",
            [](parsed_config &c, const std::string &v) { c.sweep_values = parse_double_list("sweep.values", v); },
            [](const parsed_config &c) {
                std::string out;
                for (size_t i = 0; i < c.sweep_values.size(); ++i) {
                    if (i)
                        out += ",";
                    out += format_double(c.sweep_values[i]);
                }
                return out;
            });

        return r;
    }();
    return entries;
}

const key_entry *find_key(const std::string &key) {
    for (const auto &entry : registry())
        if (entry.desc.key == key)
            return &entry;
    return nullptr;
}

} // namespace

const std::vector<key_descriptor> &config_schema() {
    static const std::vector<key_descriptor> descs = [] {
        std::vector<key_descriptor> out;
        for (const auto &entry : registry())
            out.push_back(entry.desc);
        return out;
    }();
    return descs;
}

parsed_config default_config() { return parsed_config{}; }

void validate_config(const parsed_config &config) {
    config.scenario.validate();
    if (config.has_sweep() || !config.sweep_values.empty()) {
        sweep_spec spec{config.variable, config.sweep_values, config.scenario};
        if (config.variable == sweep_variable::none)
            throw config_error(config_error::kind::constraint,
                               "sweep.values given but sweep.variable is none");
        spec.validate();
    }
}

sweep_spec parsed_config::sweep() const {
    sweep_spec spec{variable, sweep_values, scenario};
    spec.validate();
    return spec;
}

parsed_config parse_config_file(const std::string &path) {
    std::ifstream stream(path);
    if (!stream)
        throw config_error(config_error::kind::missing_file, "cannot open config file '" + path + "'");

    parsed_config config;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw config_error(config_error::kind::type_mismatch,
                               "line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const key_entry *entry = find_key(key);
        if (entry == nullptr)
            throw config_error(config_error::kind::unknown_key,
                               "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw config_error(config_error::kind::duplicate_key,
                               "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        entry->set(config, value);
        config.sources[key] = value_source::config_file;
    }
    validate_config(config);
    return config;
}

void apply_override(parsed_config &config, const std::string &key, const std::string &value) {
    const key_entry *entry = find_key(trim(key));
    if (entry == nullptr)
        throw config_error(config_error::kind::unknown_key, "unknown key '" + trim(key) + "'");
    entry->set(config, value);
    config.sources[entry->desc.key] = value_source::override_flag;
}

void apply_override_expr(parsed_config &config, const std::string &key_equals_value) {
    const size_t eq = key_equals_value.find('=');
    if (eq == std::string::npos)
        throw config_error(config_error::kind::type_mismatch,
                           "override '" + key_equals_value + "': expected KEY=VALUE");
    apply_override(config, key_equals_value.substr(0, eq), key_equals_value.substr(eq + 1));
}

std::string describe_config(const parsed_config &config) {
    std::string out;
    for (const auto &entry : registry()) {
        const auto it = config.sources.find(entry.desc.key);
        const value_source src = it == config.sources.end() ? value_source::builtin_default : it->second;
        out += entry.desc.key + " = " + entry.get(config) + "    # " + to_string(src) + "; " +
               entry.desc.doc + "\n";
    }
    return out;
}

} // namespace irsim
