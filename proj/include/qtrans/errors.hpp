#pragma once

#include <stdexcept>
#include <string>

namespace qtrans {

// Requested efficiency target lies above the reachable peak.
class no_solution_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter regime the model is not derived for.
class unsupported_regime_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A populated Fock basis state exceeds the truncation of the engine.
class cutoff_overflow_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Teleportation resource count does not match the ebits to teleport.
class resource_mismatch_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A simulated distribution round ended with at least one link missing.
class distribution_incomplete_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Config file rejected; carries the offending 1-based line number.
class config_parse_error : public std::runtime_error {
public:
    config_parse_error(const std::string& what, int line)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace qtrans
