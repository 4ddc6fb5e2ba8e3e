#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "irsim/scenario.hpp"

namespace irsim {

enum class scheme { exhaustive, jbua, greedy, random };

inline constexpr std::array<scheme, 4> all_schemes = {scheme::exhaustive, scheme::jbua, scheme::greedy,
                                                      scheme::random};

const char *to_string(scheme s);

// Per-trial RNG substreams. A trial's stream seed is
//   derive_seed(derive_seed(derive_seed(master_seed, trial), attempt), stream)
// so results are a pure function of (config, trial index) no matter how many
// workers run or in which order.
enum class trial_stream : std::uint64_t { user_drop = 0, fading = 1, greedy = 2, random = 3 };

std::uint64_t trial_stream_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt,
                                trial_stream stream);

struct trial_result {
    bool degenerate = false; // every resample attempt hit a singular channel
    int attempt = 0;         // attempt that produced the result
    bool es_skipped = false; // candidate count above the exhaustive guard

    Eigen::MatrixXd rate_table; // L x K per-pair table the schemes ranked on
    std::array<double, 4> sum_rate{};         // indexed by scheme, bps/Hz
    std::array<std::vector<int>, 4> user_map; // chosen assignment per scheme
    int jbua_iterations = 0;
    bool jbua_converged = false;
    bool jbua_monotone = true;
};

// Maximum resamples after the initial attempt when a scene is singular.
inline constexpr int max_resamples = 3;

trial_result run_trial(const scenario_config &config, int trial_index);

struct scheme_aggregate {
    bool evaluated = true;
    double mean = 0.0;
    double stderr_ = 0.0;
    int trials = 0;
    int degenerate = 0;
};

struct point_result {
    double value = 0.0; // grid value, 0 for single-point runs
    std::array<scheme_aggregate, 4> per_scheme{};
    int monotone_violations = 0; // JBUA iteration-history decreases observed
};

// Runs config.trials trials (in parallel on `threads` workers, 0 = hardware
// concurrency) and aggregates per scheme. Aggregation order is by trial
// index, so the result is independent of the worker count.
point_result run_point(const scenario_config &config, int threads = 1);

std::vector<point_result> run_sweep(const sweep_spec &spec, int threads = 1,
                                    const std::function<void(int, const point_result &)> &on_point = {});

// mean and standard error (sample std / sqrt(n)) in index order.
std::pair<double, double> aggregate(const std::vector<double> &values);

// CSV with header sweep_var,value,scheme,mean_sumrate_bpshz,stderr,trials,degenerate
// and one row per (grid value, scheme); skipped exhaustive cells stay empty.
std::string csv_table(const std::string &sweep_var, const std::vector<point_result> &points);

// Write-temp-then-rename so readers never observe a partial file.
void write_csv_atomic(const std::string &path, const std::string &content);

} // namespace irsim
