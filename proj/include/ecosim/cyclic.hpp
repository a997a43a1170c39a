#pragma once

#include "ecosim/model.hpp"

#include <span>
#include <vector>

namespace ecosim {

struct BoundedValue {
    double value;
    double radius;  // certified half-width of the enclosure
};

enum class CertificateKind {
    Analytic,   // contraction factor from the closed-form neighborhood bound
    Empirical,  // factor estimated from successive iterate ratios
};

/// Limit proportions of a periodic scheme, one per within-period step, with
/// certified radii, plus the per-period contraction factor that backed the
/// stopping rule.
struct CycleFixedPoint {
    int k;  // period length
    std::vector<BoundedValue> q_star;
    double contraction_gamma;
    CertificateKind certificate;
    double anchor;  // final period-start iterate
    int iterations;
};

struct RevenueInterval {
    double lower;
    double upper;
    bool per_round;  // true: encloses the limit average revenue per round
};

/// Trains exactly when t = 1 mod k; k = 1 trains every round.
TrainingScheme cyclic_scheme(int k, int T);

/// Trains at 1, 1+a1, 1+a1+a2, 1+2*a1+a2, ... up to T.
TrainingScheme alternating_scheme(int a1, int a2, int T);

/// Folds the transition over a gap sequence. An empty sequence is identity;
/// gaps {0, 1, ..., t-1} advance a freshly-trained platform t rounds.
double transition_compose(const Instance& inst, std::span<const int> gaps, double p);

/// Iterates the period map of the k-cyclic scheme to its fixed point. Stops
/// once the vicinity bound |a_i - a*| <= |a_{i+1} - a_i| / (1 - gamma_k)
/// certifies a radius within tol.
CycleFixedPoint cycle_fixed_point(const Instance& inst, int k, double tol = 1e-9);

RevenueInterval asymptotic_cycle_revenue(const Instance& inst, int k, double tol = 1e-9);
RevenueInterval asymptotic_alternating_revenue(const Instance& inst, int a1, int a2,
                                               double tol = 1e-9);

/// Both the within-period proportion sum interval and the limit revenue
/// interval, as exported in the asymptotic table.
struct CycleAsymptotics {
    RevenueInterval sum;    // sum of limit proportions over one period
    RevenueInterval lim_v;  // limit average revenue per round
    CycleFixedPoint fp;
};

CycleAsymptotics cycle_asymptotics(const Instance& inst, int k, double tol = 1e-9);
CycleAsymptotics alternating_asymptotics(const Instance& inst, int a1, int a2,
                                         double tol = 1e-9);

struct BestCycle {
    int k;
    RevenueInterval interval;
    bool undecided;  // another cycle's interval overlaps the winner's
};

/// Argmax over k <= k_max of the limit revenue, by interval lower bound.
BestCycle best_cycle(const Instance& inst, int k_max, double tol = 1e-9);

/// Lower bound of the alternating scheme's limit revenue minus the best
/// cyclic upper bound; positive certifies the separation.
double noncyclic_beats_cyclic(const Instance& inst, int a1, int a2, int k_max,
                              double tol = 1e-9);

}  // namespace ecosim
