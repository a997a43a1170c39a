#pragma once

#include "ecosim/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ecosim {

/// How the scheme for a run is chosen.
struct SchemeSpec {
    enum class Kind {
        Bits,          // explicit bit string
        Cyclic,        // cyclic:k
        Alternating,   // alternating:a1:a2
        OptimalBrute,  // optimal:brute
        OptimalArms,   // optimal:arms:eps
        WelfareOpt,    // welfare-opt
        NoTraining,    // none:x0, trains only in round 1
    };

    Kind kind = Kind::NoTraining;
    std::string bits;
    int k = 0, a1 = 0, a2 = 0;
    double eps = 0.0;

    static SchemeSpec parse(const std::string& text);
    std::string str() const;
};

struct RunConfig {
    Instance instance;
    SchemeSpec scheme;
    std::optional<int> delta;
    std::optional<double> eps;
    std::optional<double> p_hat;
    std::optional<int> k_max;
    std::vector<double> p1_list;  // initial proportions swept by figure2
};

/// Parses the flat `key = value` config format. Raises ConfigError with the
/// line and field on unknown keys, malformed values, and instance invariant
/// violations.
RunConfig parse_config(const std::string& text);

/// Canonical form; parse(emit(cfg)) reproduces cfg and emit is idempotent.
std::string emit_config(const RunConfig& cfg);

/// Materializes the scheme for an instance, running the optimizers when the
/// spec calls for them.
TrainingScheme resolve_scheme(const Instance& inst, const SchemeSpec& spec);

}  // namespace ecosim
