#pragma once

#include <stdexcept>
#include <string>

namespace irsim {

// Channel matrix too ill-conditioned for zero-forcing (condition number above
// threshold). The Monte-Carlo harness reacts by resampling the trial.
class singular_channel_error : public std::runtime_error {
  public:
    explicit singular_channel_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Coincident transmitter/reflector/user positions.
class degenerate_geometry_error : public std::runtime_error {
  public:
    explicit degenerate_geometry_error(const std::string &msg) : std::runtime_error(msg) {}
};

// One-to-one matching impossible (more users than reflecting surfaces).
class infeasible_matching_error : public std::runtime_error {
  public:
    explicit infeasible_matching_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Exhaustive enumeration would exceed the instance-size guard.
class size_guard_error : public std::runtime_error {
  public:
    explicit size_guard_error(const std::string &msg) : std::runtime_error(msg) {}
};

// An operation required a fully assigned user that has no surface.
class invalid_assignment_error : public std::runtime_error {
  public:
    explicit invalid_assignment_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Scenario/sweep configuration faults. `kind` distinguishes the failure class;
// the CLI maps all of them to exit code 2.
class config_error : public std::runtime_error {
  public:
    enum class kind { missing_file, unknown_key, type_mismatch, constraint, duplicate_key };

    config_error(kind k, const std::string &msg) : std::runtime_error(msg), fault(k) {}

    kind fault;
};

const char *to_string(config_error::kind k);

} // namespace irsim
