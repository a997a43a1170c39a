#pragma once

#include "ecosim/model.hpp"

#include <vector>

namespace ecosim {

/// Proportion recursion seeded at alpha: q_0 = alpha and q_t follows the user
/// dynamic with gap t-1, so seeding at the proportion of a training round
/// reproduces the trajectory across the following window.
std::vector<double> aux_sequence(const Instance& inst, double alpha, int len);

enum class BoundsMode { Crude, Noisy };

/// Per-offset proportion and welfare sandwiches across a training window.
struct WelfareBounds {
    int delta;
    BoundsMode mode;
    double p_hat = 0.0;  // Noisy only
    double eps = 0.0;    // Noisy only
    std::vector<double> q_lo, q_hi, u_lo, u_hi;  // offsets 0..delta-1
    bool prop6_guaranteed = true;  // eps below the stricter threshold

    double sum_lo() const;
    double sum_hi() const;
};

/// Bounds from the extreme seeds alpha = 0 and alpha = 1; valid for any
/// scheme and training round.
WelfareBounds crude_welfare_bounds(const Instance& inst, int delta);

/// Window welfare lower bound meets the per-round forum baseline.
bool check_sufficient(const Instance& inst, int delta);

/// Window welfare upper bound meets the per-round forum baseline.
bool check_necessary(const Instance& inst, int delta);

/// Closed-form per-step contraction factor of the user dynamic for seeds
/// within eps. Requires R^s(1) = 0, beta * L < 16/7, and eps below the
/// eligibility threshold; violations raise EligibilityError with the failed
/// condition's code.
double contraction_factor(const Instance& inst, double eps);

/// Bounds from seeds p_hat -/+ eps (clamped to [0,1]); valid when the true
/// window-start proportion lies within eps of p_hat.
WelfareBounds noisy_welfare_bounds(const Instance& inst, double p_hat, double eps, int delta);

/// Worst-case spread between the noisy upper and lower window welfare sums:
/// 4 eps * sum_t gamma^t (R^c(t) + 2L).
double bound_gap(const Instance& inst, double eps, int delta);

bool check_sufficient_noisy(const Instance& inst, double p_hat, double eps, int delta);
bool check_necessary_noisy(const Instance& inst, double p_hat, double eps, int delta);

}  // namespace ecosim
