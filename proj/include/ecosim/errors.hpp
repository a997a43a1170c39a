#pragma once

#include <stdexcept>
#include <string>

namespace ecosim {

// Exact/brute-force operation asked to run above its configured size cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A fixed-point or certificate iteration failed to converge.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Which precondition of the contraction machinery failed.
enum class EligibilityReason {
    NotLipschitzZeroAtOne,
    BetaLTooLarge,
    EpsTooLarge,
};

inline const char* eligibility_code(EligibilityReason r) {
    switch (r) {
        case EligibilityReason::NotLipschitzZeroAtOne: return "NOT_LIPSCHITZ_ZERO_AT_ONE";
        case EligibilityReason::BetaLTooLarge: return "BETA_L_TOO_LARGE";
        case EligibilityReason::EpsTooLarge: return "EPS_TOO_LARGE";
    }
    return "UNKNOWN";
}

class EligibilityError : public std::runtime_error {
public:
    EligibilityError(EligibilityReason reason, const std::string& what)
        : std::runtime_error(std::string(eligibility_code(reason)) + ": " + what),
          reason_(reason) {}

    EligibilityReason reason() const { return reason_; }
    const char* code() const { return eligibility_code(reason_); }

private:
    EligibilityReason reason_;
};

// Config-file parsing failure, carrying the offending line and field.
class ConfigError : public std::runtime_error {
public:
    enum class Code { BadSyntax, UnknownKey, TypeMismatch, InvalidValue };

    ConfigError(Code code, int line, std::string field, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what),
          code_(code), line_(line), field_(std::move(field)) {}

    Code code() const { return code_; }
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    Code code_;
    int line_;
    std::string field_;
};

}  // namespace ecosim
