#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "irsim/rng.hpp"

namespace irsim {

// One-to-one user -> surface map. user_to_irs[k] is the surface serving user
// k, or -1 when user k is explicitly unassigned. Assigned indices are unique.
struct assignment {
    int num_irs = 0;
    std::vector<int> user_to_irs;

    assignment() = default;
    assignment(int l_irs, std::vector<int> user_map); // validates, throws

    int num_users() const { return static_cast<int>(user_to_irs.size()); }
    int irs_of(int user) const { return user_to_irs[static_cast<size_t>(user)]; }
    std::optional<int> user_of(int irs) const;
    bool fully_assigned() const;

    // Binary association matrix, L x K.
    Eigen::MatrixXd matrix() const;

    bool operator==(const assignment &other) const = default;
};

// Rate table plus both sides' descending preference orders. Ties break toward
// the lower index, which keeps every solver deterministic.
struct preference_matrix {
    Eigen::MatrixXd rates;                      // L x K
    std::vector<std::vector<int>> user_pref;    // [K][L], surface ids, best first
    std::vector<std::vector<int>> irs_pref;     // [L][K], user ids, best first
    std::vector<std::vector<int>> user_rank;    // [K][L], rank of surface l for user k
    std::vector<std::vector<int>> irs_rank;     // [L][K]

    int num_users() const { return static_cast<int>(rates.cols()); }
    int num_irs() const { return static_cast<int>(rates.rows()); }
};

preference_matrix build_preferences(const Eigen::MatrixXd &rate_table);

struct match_result {
    assignment matched;
    int proposals = 0; // total proposal events; at most K*L
};

// User-proposing deferred acceptance. Requires K <= L; returns a stable
// matching with every user assigned.
match_result deferred_acceptance(const preference_matrix &prefs);

struct stability_report {
    bool stable = true;
    std::vector<std::pair<int, int>> blocking_pairs; // (user, irs)
};

// Scans all user-surface pairs for blocking pairs under the tie-broken
// preference order.
stability_report is_stable(const assignment &matched, const preference_matrix &prefs);

// Enumerates every injection of K users into L surfaces and returns the one
// maximizing rate_fn; ties go to the lexicographically smallest user_to_irs.
// Guard: refuses instances with more than `exhaustive_guard_limit` candidates.
inline constexpr double exhaustive_guard_limit = 1e7;
assignment exhaustive_search(const std::function<double(const assignment &)> &rate_fn, int num_users, int num_irs);

// Number of feasible one-to-one assignments, L!/(L-K)!, as a double.
double exhaustive_candidate_count(int num_users, int num_irs);

// Each user proposes to its best still-free surface; a surface with several
// proposers keeps one uniformly at random, losers retry next round.
assignment greedy_search(const Eigen::MatrixXd &rate_table, rng_stream &rng);

// Uniform random injection of users into surfaces.
assignment random_search(int num_users, int num_irs, rng_stream &rng);

// Sum of table entries along an assignment's pairs.
double table_sum_rate(const Eigen::MatrixXd &rate_table, const assignment &matched);

} // namespace irsim
