#include "irsim/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "irsim/errors.hpp"

namespace irsim {

assignment::assignment(int l_irs, std::vector<int> user_map)
    : num_irs(l_irs), user_to_irs(std::move(user_map)) {
    if (num_irs < 1)
        throw std::invalid_argument("assignment: need at least one surface");
    std::vector<char> taken(static_cast<size_t>(num_irs), 0);
    for (int l : user_to_irs) {
        if (l == -1)
            continue; // explicitly unassigned user
        if (l < 0 || l >= num_irs)
            throw invalid_assignment_error("assignment: surface index out of range");
        if (taken[static_cast<size_t>(l)])
            throw invalid_assignment_error("assignment: surface assigned to two users");
        taken[static_cast<size_t>(l)] = 1;
    }
}

std::optional<int> assignment::user_of(int irs) const {
    for (int k = 0; k < num_users(); ++k)
        if (user_to_irs[static_cast<size_t>(k)] == irs)
            return k;
    return std::nullopt;
}

bool assignment::fully_assigned() const {
    return std::all_of(user_to_irs.begin(), user_to_irs.end(), [](int l) { return l >= 0; });
}

Eigen::MatrixXd assignment::matrix() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(num_irs, num_users());
    for (int k = 0; k < num_users(); ++k)
        if (user_to_irs[static_cast<size_t>(k)] >= 0)
            m(user_to_irs[static_cast<size_t>(k)], k) = 1.0;
    return m;
}

namespace {

// Descending by rate, ties to the lower index.
std::vector<int> sorted_desc(const Eigen::VectorXd &scores) {
    std::vector<int> order(static_cast<size_t>(scores.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores(a) != scores(b))
            return scores(a) > scores(b);
        return a < b;
    });
    return order;
}

std::vector<int> ranks_of(const std::vector<int> &order) {
    std::vector<int> rank(order.size());
    for (size_t pos = 0; pos < order.size(); ++pos)
        rank[static_cast<size_t>(order[pos])] = static_cast<int>(pos);
    return rank;
}

} // namespace

preference_matrix build_preferences(const Eigen::MatrixXd &rate_table) {
    const int l_irs = static_cast<int>(rate_table.rows());
    const int k_users = static_cast<int>(rate_table.cols());
    if (l_irs < 1 || k_users < 1)
        throw std::invalid_argument("build_preferences: empty rate table");
    if (!rate_table.allFinite() || (rate_table.array() < 0.0).any())
        throw std::invalid_argument("build_preferences: rates must be finite and non-negative");

    preference_matrix prefs;
    prefs.rates = rate_table;
    prefs.user_pref.reserve(static_cast<size_t>(k_users));
    prefs.user_rank.reserve(static_cast<size_t>(k_users));
    for (int k = 0; k < k_users; ++k) {
        prefs.user_pref.push_back(sorted_desc(rate_table.col(k)));
        prefs.user_rank.push_back(ranks_of(prefs.user_pref.back()));
    }
    prefs.irs_pref.reserve(static_cast<size_t>(l_irs));
    prefs.irs_rank.reserve(static_cast<size_t>(l_irs));
    for (int l = 0; l < l_irs; ++l) {
        prefs.irs_pref.push_back(sorted_desc(rate_table.row(l).transpose()));
        prefs.irs_rank.push_back(ranks_of(prefs.irs_pref.back()));
    }
    return prefs;
}

match_result deferred_acceptance(const preference_matrix &prefs) {
    const int k_users = prefs.num_users();
    const int l_irs = prefs.num_irs();
    if (k_users > l_irs)
        throw infeasible_matching_error("deferred_acceptance: more users than surfaces");

    std::vector<int> next_choice(static_cast<size_t>(k_users), 0);
    std::vector<int> holder(static_cast<size_t>(l_irs), -1);
    std::queue<int> unmatched;
    for (int k = 0; k < k_users; ++k)
        unmatched.push(k);

    int proposals = 0;
    while (!unmatched.empty()) {
        const int k = unmatched.front();
        unmatched.pop();
        // With K <= L a free surface always exists, so no list runs out.
        const int l = prefs.user_pref[static_cast<size_t>(k)][static_cast<size_t>(next_choice[static_cast<size_t>(k)]++)];
        ++proposals;
        const int current = holder[static_cast<size_t>(l)];
        if (current == -1) {
            holder[static_cast<size_t>(l)] = k;
        } else if (prefs.irs_rank[static_cast<size_t>(l)][static_cast<size_t>(k)] <
                   prefs.irs_rank[static_cast<size_t>(l)][static_cast<size_t>(current)]) {
            holder[static_cast<size_t>(l)] = k;
            unmatched.push(current);
        } else {
            unmatched.push(k);
        }
    }

    std::vector<int> user_map(static_cast<size_t>(k_users), -1);
    for (int l = 0; l < l_irs; ++l)
        if (holder[static_cast<size_t>(l)] >= 0)
            user_map[static_cast<size_t>(holder[static_cast<size_t>(l)])] = l;
    return {assignment(l_irs, std::move(user_map)), proposals};
}

stability_report is_stable(const assignment &matched, const preference_matrix &prefs) {
    stability_report report;
    const int k_users = prefs.num_users();
    const int l_irs = prefs.num_irs();
    for (int k = 0; k < k_users; ++k) {
        const int own = matched.irs_of(k);
        for (int l = 0; l < l_irs; ++l) {
            if (l == own)
                continue;
            const bool user_wants = own < 0 || prefs.user_rank[static_cast<size_t>(k)][static_cast<size_t>(l)] <
                                                   prefs.user_rank[static_cast<size_t>(k)][static_cast<size_t>(own)];
            if (!user_wants)
                continue;
            const auto held = matched.user_of(l);
            const bool irs_wants = !held || prefs.irs_rank[static_cast<size_t>(l)][static_cast<size_t>(k)] <
                                                prefs.irs_rank[static_cast<size_t>(l)][static_cast<size_t>(*held)];
            if (irs_wants)
                report.blocking_pairs.emplace_back(k, l);
        }
    }
    report.stable = report.blocking_pairs.empty();
    return report;
}

double exhaustive_candidate_count(int num_users, int num_irs) {
    double count = 1.0;
    for (int i = 0; i < num_users; ++i)
        count *= static_cast<double>(num_irs - i);
    return count;
}

assignment exhaustive_search(const std::function<double(const assignment &)> &rate_fn, int num_users,
                             int num_irs) {
    if (num_users < 1 || num_irs < num_users)
        throw infeasible_matching_error("exhaustive_search: need 1 <= K <= L");
    if (exhaustive_candidate_count(num_users, num_irs) > exhaustive_guard_limit)
        throw size_guard_error("exhaustive_search: candidate count exceeds guard of 1e7");

    std::vector<int> current(static_cast<size_t>(num_users), -1);
    std::vector<char> used(static_cast<size_t>(num_irs), 0);
    std::vector<int> best_map;
    double best_rate = -std::numeric_limits<double>::infinity();

    // Depth-first in ascending surface order: candidates are visited in
    // lexicographic user_to_irs order, so keeping strict improvements makes
    // the lexicographically smallest optimum win ties.
    auto visit = [&](auto &&self, int user) -> void {
        if (user == num_users) {
            const double value = rate_fn(assignment(num_irs, current));
            if (value > best_rate) {
                best_rate = value;
                best_map = current;
            }
            return;
        }
        for (int l = 0; l < num_irs; ++l) {
            if (used[static_cast<size_t>(l)])
                continue;
            used[static_cast<size_t>(l)] = 1;
            current[static_cast<size_t>(user)] = l;
            self(self, user + 1);
            used[static_cast<size_t>(l)] = 0;
        }
    };
    visit(visit, 0);
    return assignment(num_irs, std::move(best_map));
}

assignment greedy_search(const Eigen::MatrixXd &rate_table, rng_stream &rng) {
    const preference_matrix prefs = build_preferences(rate_table);
    const int k_users = prefs.num_users();
    const int l_irs = prefs.num_irs();
    if (k_users > l_irs)
        throw infeasible_matching_error("greedy_search: more users than surfaces");

    std::vector<int> matched(static_cast<size_t>(k_users), -1);
    std::vector<char> available(static_cast<size_t>(l_irs), 1);
    std::vector<int> next_choice(static_cast<size_t>(k_users), 0);

    int remaining = k_users;
    while (remaining > 0) {
        // Everyone unmatched proposes to their best still-available surface.
        std::vector<std::vector<int>> proposers(static_cast<size_t>(l_irs));
        for (int k = 0; k < k_users; ++k) {
            if (matched[static_cast<size_t>(k)] >= 0)
                continue;
            int &choice = next_choice[static_cast<size_t>(k)];
            while (!available[static_cast<size_t>(prefs.user_pref[static_cast<size_t>(k)][static_cast<size_t>(choice)])])
                ++choice;
            proposers[static_cast<size_t>(prefs.user_pref[static_cast<size_t>(k)][static_cast<size_t>(choice)])].push_back(k);
        }
        // Contested surfaces pick a winner uniformly at random.
        for (int l = 0; l < l_irs; ++l) {
            const auto &cands = proposers[static_cast<size_t>(l)];
            if (cands.empty())
                continue;
            const int winner = cands.size() == 1
                                   ? cands.front()
                                   : cands[static_cast<size_t>(rng.below(cands.size()))];
            matched[static_cast<size_t>(winner)] = l;
            available[static_cast<size_t>(l)] = 0;
            --remaining;
        }
    }
    return assignment(l_irs, std::move(matched));
}

assignment random_search(int num_users, int num_irs, rng_stream &rng) {
    if (num_users < 1 || num_irs < num_users)
        throw infeasible_matching_error("random_search: need 1 <= K <= L");
    // Partial Fisher-Yates: the first K entries are a uniform K-permutation.
    std::vector<int> pool(static_cast<size_t>(num_irs));
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < num_users; ++k) {
        const auto j = static_cast<size_t>(k) + static_cast<size_t>(rng.below(static_cast<std::uint64_t>(num_irs - k)));
        std::swap(pool[static_cast<size_t>(k)], pool[j]);
    }
    pool.resize(static_cast<size_t>(num_users));
    return assignment(num_irs, std::move(pool));
}

double table_sum_rate(const Eigen::MatrixXd &rate_table, const assignment &matched) {
    double total = 0.0;
    for (int k = 0; k < matched.num_users(); ++k) {
        const int l = matched.irs_of(k);
        if (l >= 0)
            total += rate_table(l, k);
    }
    return total;
}

} // namespace irsim
