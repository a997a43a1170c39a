#pragma once

#include "ecosim/config.hpp"
#include "ecosim/dynamics.hpp"
#include "ecosim/optimizer.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace ecosim {

/// Floats in reports carry 12 significant digits; output is byte-stable for a
/// fixed config.
std::string format_double(double x);

/// Header: round,p,gamma,u,v,U_cum,V_cum,counterfactual_cum
void write_trajectory_csv(std::ostream& out, const Instance& inst, const TrainingScheme& scheme);

/// Cumulative welfare of the no-training, revenue-optimal, and
/// welfare-optimal schemes against the no-platform baseline.
void write_figure1_csv(std::ostream& out, const Instance& inst);

/// Proportion paths of the no-training scheme for several initial
/// proportions.
void write_figure2_csv(std::ostream& out, const Instance& inst, std::span<const double> p1s);

/// Asymptotic per-period proportion sums and limit revenues for cycle lengths
/// 1..k_max, plus an alternating row when a1, a2 > 0.
void write_cycle_table_csv(std::ostream& out, const Instance& inst, int k_max, int a1 = 0,
                           int a2 = 0);

void write_optimization_report(std::ostream& out, const OptimizationResult& result);

/// Verdicts and the per-offset sandwich; the noisy variant is used when p_hat
/// and eps are both present.
void write_regulator_report(std::ostream& out, const Instance& inst, int delta,
                            std::optional<double> p_hat, std::optional<double> eps);

void write_poa(std::ostream& out, const Instance& inst);

}  // namespace ecosim
