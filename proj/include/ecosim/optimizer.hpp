#pragma once

#include "ecosim/dynamics.hpp"
#include "ecosim/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ecosim {

enum class Optimality { Exact, ApproxEps };

struct OptimizationResult {
    TrainingScheme scheme;
    double objective;  // re-simulated V (or U) of the scheme
    Optimality optimality;
    double eps = 0.0;        // grid step, ApproxEps only
    long long ties = 1;      // schemes attaining the optimum, Exact only
    bool guaranteed = true;  // approximation bound applies, ApproxEps only
};

struct BruteForceOptions {
    int max_horizon = 24;  // enumeration cap; 2^(T-1) schemes
    int threads = 1;       // chunked enumeration, merged in chunk order
};

/// Enumerates every scheme that trains in round 1 and returns the
/// revenue-maximizing one. Exact ties resolve to the lexicographically
/// smallest bit vector and are counted.
OptimizationResult brute_force_revenue_opt(const Instance& inst, const BruteForceOptions& opts = {});

/// Same enumeration with cumulative welfare as the objective.
OptimizationResult brute_force_welfare_opt(const Instance& inst, const BruteForceOptions& opts = {});

/// Backward-induction table over (proportion cell, round, pending gap).
/// Rounds run 1..T+1 (the T+1 row is the zero terminal), pending gaps 0..T.
/// The pending gap is the training gap that applies at the round if the
/// platform skips; on a train action it is 0.
class DpTable {
public:
    DpTable(int cells, int horizon, double eps);

    int cells() const { return cells_; }
    int horizon() const { return horizon_; }
    double eps() const { return eps_; }

    double value(int cell, int t, int s) const { return value_[index(cell, t, s)]; }
    bool train_action(int cell, int t, int s) const { return action_[index(cell, t, s)]; }

    double& value_ref(int cell, int t, int s) { return value_[index(cell, t, s)]; }
    void set_action(int cell, int t, int s, bool train) { action_[index(cell, t, s)] = train; }

private:
    std::size_t index(int cell, int t, int s) const;

    int cells_;
    int horizon_;
    double eps_;
    std::vector<double> value_;
    std::vector<uint8_t> action_;
};

DpTable arms_table(const Instance& inst, double eps);

/// Largest eps for which the approximation guarantee of the DP holds on this
/// instance, or nullopt when the instance itself is ineligible (R^s not zero
/// at one, or beta*L too large).
std::optional<double> arms_eps_bound(const Instance& inst);

/// Approximate revenue maximization on the eps-discretized proportion grid.
/// The returned objective is the true, re-simulated average revenue of the
/// extracted scheme. `guaranteed` is set when the instance and eps satisfy
/// the formal approximation preconditions.
OptimizationResult arms(const Instance& inst, double eps);

/// max welfare over all schemes divided by the worst welfare among
/// revenue-maximizing schemes (the full exact tie set). Returns +infinity
/// when the denominator is zero.
double price_of_anarchy(const Instance& inst, const BruteForceOptions& opts = {});

/// Certificate that optimal schemes cannot leave more than t0 rounds between
/// trainings (except possibly in the last t0 rounds).
struct GapCertificate {
    int t0;                      // bound on the training gap
    int decrease_onset;          // first t with p_t >= p_{t+1} under no training
    double fixed_point;          // limit proportion of the no-training dynamic
    TrainingScheme cert_scheme;  // scheme with non-negative revenue on the p1=0 variant
    double cert_revenue;         // its cumulative revenue, maintenance cost excluded
};

std::optional<GapCertificate> training_gap_bound(const Instance& inst);

}  // namespace ecosim
