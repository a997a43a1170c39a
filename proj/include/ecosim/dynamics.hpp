#pragma once

#include "ecosim/model.hpp"

#include <vector>

namespace ecosim {

/// Per-round record of a simulation. Arrays are indexed 0-based for round t+1.
struct Trajectory {
    std::vector<double> p;   // proportion on the trained platform
    std::vector<int> gamma;  // rounds since last training
    std::vector<double> u;   // instantaneous welfare
    std::vector<double> v;   // revenue
    double total_welfare = 0.0;     // U = sum of u
    double average_revenue = 0.0;   // V = (1/T) sum of v
    double counterfactual = 0.0;    // T * R^s(0)

    int horizon() const { return static_cast<int>(p.size()); }
    double welfare_between(int t, int t2) const;  // inclusive, 1-indexed
};

/// One step of the softmax user dynamic: the proportion choosing the trained
/// platform next round, given the current proportion and the training gap.
/// Computed as 1/(1 + e^{beta (R^s(p) - R^c(gap))}) so large exponents
/// saturate instead of overflowing. Infinite sensitivity resolves to the
/// strict best response (ties split evenly).
double transition(const Instance& inst, double p, int gap);

Trajectory simulate(const Instance& inst, const TrainingScheme& scheme);

double counterfactual_welfare(const Instance& inst);

bool is_socially_beneficial(const Instance& inst, const TrainingScheme& scheme);

double welfare_between(const Instance& inst, const TrainingScheme& scheme, int t, int t2);

}  // namespace ecosim
