#include "irsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "irsim/errors.hpp"

namespace irsim {

const char *to_string(scheme s) {
    switch (s) {
    case scheme::exhaustive:
        return "es";
    case scheme::jbua:
        return "jbua";
    case scheme::greedy:
        return "gs";
    case scheme::random:
        return "rs";
    }
    return "?";
}

std::uint64_t trial_stream_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt,
                                trial_stream stream) {
    return derive_seed(derive_seed(derive_seed(master_seed, trial), attempt),
                       static_cast<std::uint64_t>(stream));
}

namespace {

size_t idx(scheme s) { return static_cast<size_t>(s); }

trial_result attempt_trial(const scenario_config &config, int trial_index, int attempt) {
    const std::uint64_t master = config.master_seed;
    const auto tr = static_cast<std::uint64_t>(trial_index);
    const auto at = static_cast<std::uint64_t>(attempt);

    network_geometry geom = build_geometry(config);
    rng_stream drop_rng(trial_stream_seed(master, tr, at, trial_stream::user_drop));
    drop_users(geom, config, drop_rng);

    rng_stream fading_rng(trial_stream_seed(master, tr, at, trial_stream::fading));
    const channel_set channels = build_channels(geom, config.radio, config.channel,
                                                config.channel.rician_enabled ? &fading_rng : nullptr);

    trial_result result;
    result.attempt = attempt;
    result.rate_table = pair_rate_table(channels, config.radio);

    const solve_options opts{config.max_iters, config.objective, config.policy};
    auto score = [&](const assignment &a) {
        return evaluate_assignment(channels, a, config.radio, config.objective, config.policy)
            .metrics.sum_rate_bps_hz;
    };

    const jbua_solution jb = solve(channels, geom, config.radio, opts);
    result.sum_rate[idx(scheme::jbua)] = jb.metrics.sum_rate_bps_hz;
    result.user_map[idx(scheme::jbua)] = jb.matched.user_to_irs;
    result.jbua_iterations = jb.iterations;
    result.jbua_converged = jb.converged;
    result.jbua_monotone = jb.monotone;

    if (exhaustive_candidate_count(config.k_users, config.l_irs) <= exhaustive_guard_limit) {
        const assignment es = exhaustive_search(
            [&](const assignment &a) { return table_sum_rate(result.rate_table, a); }, config.k_users,
            config.l_irs);
        result.sum_rate[idx(scheme::exhaustive)] = score(es);
        result.user_map[idx(scheme::exhaustive)] = es.user_to_irs;
    } else {
        result.es_skipped = true;
    }

    rng_stream greedy_rng(trial_stream_seed(master, tr, at, trial_stream::greedy));
    const assignment gs = greedy_search(result.rate_table, greedy_rng);
    result.sum_rate[idx(scheme::greedy)] = score(gs);
    result.user_map[idx(scheme::greedy)] = gs.user_to_irs;

    rng_stream random_rng(trial_stream_seed(master, tr, at, trial_stream::random));
    const assignment rs = random_search(config.k_users, config.l_irs, random_rng);
    result.sum_rate[idx(scheme::random)] = score(rs);
    result.user_map[idx(scheme::random)] = rs.user_to_irs;

    return result;
}

} // namespace

trial_result run_trial(const scenario_config &config, int trial_index) {
    for (int attempt = 0; attempt <= max_resamples; ++attempt) {
        try {
            return attempt_trial(config, trial_index, attempt);
        } catch (const singular_channel_error &) {
            // resample with a fresh attempt seed
        }
    }
    trial_result degenerate;
    degenerate.degenerate = true;
    degenerate.attempt = max_resamples;
    return degenerate;
}

std::pair<double, double> aggregate(const std::vector<double> &values) {
    const size_t n = values.size();
    if (n == 0)
        return {0.0, 0.0};
    // Compensated summation keeps the aggregate independent of any upstream
    // parallelism (values arrive in trial order regardless of workers).
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const double mean = sum / static_cast<double>(n);
    if (n == 1)
        return {mean, 0.0};
    double sq = 0.0;
    for (double v : values)
        sq += (v - mean) * (v - mean);
    const double sample_std = std::sqrt(sq / static_cast<double>(n - 1));
    return {mean, sample_std / std::sqrt(static_cast<double>(n))};
}

point_result run_point(const scenario_config &config, int threads) {
    config.validate();
    const int trials = config.trials;
    std::vector<trial_result> results(static_cast<size_t>(trials));

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1)
        workers = 1;
    workers = std::min(workers, trials);

    std::atomic<int> next{0};
    auto pump = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= trials)
                return;
            results[static_cast<size_t>(i)] = run_trial(config, i);
        }
    };
    if (workers == 1) {
        pump();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers - 1));
        for (int w = 0; w < workers - 1; ++w)
            pool.emplace_back(pump);
        pump();
        for (auto &t : pool)
            t.join();
    }

    point_result point;
    const bool es_feasible = exhaustive_candidate_count(config.k_users, config.l_irs) <= exhaustive_guard_limit;
    int degenerate = 0;
    std::array<std::vector<double>, 4> series;
    for (const auto &r : results) {
        if (r.degenerate) {
            ++degenerate;
            continue;
        }
        for (scheme s : all_schemes) {
            if (s == scheme::exhaustive && r.es_skipped)
                continue;
            series[idx(s)].push_back(r.sum_rate[idx(s)]);
        }
        if (!r.jbua_monotone)
            ++point.monotone_violations;
    }
    for (scheme s : all_schemes) {
        auto &agg = point.per_scheme[idx(s)];
        agg.evaluated = s != scheme::exhaustive || es_feasible;
        agg.degenerate = degenerate;
        agg.trials = static_cast<int>(series[idx(s)].size());
        if (agg.evaluated) {
            const auto [mean, se] = aggregate(series[idx(s)]);
            agg.mean = mean;
            agg.stderr_ = se;
        } else {
            agg.trials = 0;
        }
    }
    return point;
}

std::vector<point_result> run_sweep(const sweep_spec &spec, int threads,
                                    const std::function<void(int, const point_result &)> &on_point) {
    spec.validate();
    std::vector<point_result> points;
    points.reserve(spec.values.size());
    for (size_t i = 0; i < spec.values.size(); ++i) {
        const scenario_config config = with_sweep_value(spec.base, spec.variable, spec.values[i]);
        point_result point = run_point(config, threads);
        point.value = spec.values[i];
        if (on_point)
            on_point(static_cast<int>(i), point);
        points.push_back(std::move(point));
    }
    return points;
}

namespace {

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::string csv_table(const std::string &sweep_var, const std::vector<point_result> &points) {
    std::string out = "sweep_var,value,scheme,mean_sumrate_bpshz,stderr,trials,degenerate\n";
    for (const auto &point : points) {
        for (scheme s : all_schemes) {
            const auto &agg = point.per_scheme[static_cast<size_t>(s)];
            out += sweep_var;
            out += ',';
            out += format_g9(point.value);
            out += ',';
            out += to_string(s);
            out += ',';
            if (agg.evaluated) {
                out += format_g9(agg.mean);
                out += ',';
                out += format_g9(agg.stderr_);
            } else {
                out += ','; // guard tripped: empty mean and stderr cells
            }
            out += ',';
            out += std::to_string(agg.trials);
            out += ',';
            out += std::to_string(agg.degenerate);
            out += '\n';
        }
    }
    return out;
}

void write_csv_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream)
            throw std::runtime_error("write_csv_atomic: cannot open " + tmp);
        stream.write(content.data(), static_cast<std::streamsize>(content.size()));
        stream.flush();
        if (!stream)
            throw std::runtime_error("write_csv_atomic: short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("write_csv_atomic: rename failed: " + ec.message());
}

} // namespace irsim
