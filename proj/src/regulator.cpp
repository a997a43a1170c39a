#include "ecosim/regulator.hpp"

#include "ecosim/dynamics.hpp"
#include "ecosim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecosim {

namespace {

double beta_lipschitz(const Instance& inst) {
    if (inst.beta.is_infinite()) return std::numeric_limits<double>::infinity();
    return inst.beta.value() * inst.rs.lipschitz_constant();
}

void check_instance_eligibility(const Instance& inst) {
    if (!inst.rs.zero_at_one())
        throw EligibilityError(EligibilityReason::NotLipschitzZeroAtOne,
                               "requires R^s(1) = 0");
    double bl = beta_lipschitz(inst);
    if (!(bl < 16.0 / 7.0))
        throw EligibilityError(EligibilityReason::BetaLTooLarge,
                               "requires beta * L < 16/7");
}

// Largest admissible eps for the contraction statement.
double eps_threshold(double bl) {
    return (16.0 - 7.0 * bl) / (14.0 * bl * std::exp(bl));
}

WelfareBounds bounds_from_seeds(const Instance& inst, double alpha_lo, double alpha_hi,
                                int delta) {
    WelfareBounds b;
    b.delta = delta;
    b.q_lo = aux_sequence(inst, alpha_lo, delta);
    b.q_hi = aux_sequence(inst, alpha_hi, delta);
    b.u_lo.resize(delta);
    b.u_hi.resize(delta);
    for (int t = 0; t < delta; ++t) {
        double rc = inst.rc(t);
        b.u_lo[t] = b.q_lo[t] * rc + (1.0 - b.q_hi[t]) * inst.rs(b.q_hi[t]);
        b.u_hi[t] = b.q_hi[t] * rc + (1.0 - b.q_lo[t]) * inst.rs(b.q_lo[t]);
    }
    return b;
}

}  // namespace

std::vector<double> aux_sequence(const Instance& inst, double alpha, int len) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("aux sequence: alpha must be in [0, 1]");
    if (len < 1) throw std::invalid_argument("aux sequence: len must be >= 1");
    std::vector<double> q(len);
    q[0] = alpha;
    for (int t = 1; t < len; ++t) q[t] = transition(inst, q[t - 1], t - 1);
    return q;
}

double WelfareBounds::sum_lo() const {
    double s = 0.0;
    for (double x : u_lo) s += x;
    return s;
}

double WelfareBounds::sum_hi() const {
    double s = 0.0;
    for (double x : u_hi) s += x;
    return s;
}

WelfareBounds crude_welfare_bounds(const Instance& inst, int delta) {
    if (delta < 1) throw std::invalid_argument("welfare bounds: delta must be >= 1");
    WelfareBounds b = bounds_from_seeds(inst, 0.0, 1.0, delta);
    b.mode = BoundsMode::Crude;
    return b;
}

bool check_sufficient(const Instance& inst, int delta) {
    return crude_welfare_bounds(inst, delta).sum_lo() >= delta * inst.rs(0.0);
}

bool check_necessary(const Instance& inst, int delta) {
    return crude_welfare_bounds(inst, delta).sum_hi() >= delta * inst.rs(0.0);
}

double contraction_factor(const Instance& inst, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("contraction factor: eps must be > 0");
    check_instance_eligibility(inst);
    double bl = beta_lipschitz(inst);
    if (bl == 0.0) return 0.0;  // insensitive users: the window collapses in one step
    double threshold = eps_threshold(bl);
    if (!(eps < threshold))
        throw EligibilityError(EligibilityReason::EpsTooLarge,
                               "requires eps < (16 - 7 beta L) / (14 beta L e^{beta L})");
    double delta = threshold - eps;
    return 1.0 / (1.0 + 2.0 * std::exp(bl) * delta);
}

WelfareBounds noisy_welfare_bounds(const Instance& inst, double p_hat, double eps, int delta) {
    if (delta < 1) throw std::invalid_argument("welfare bounds: delta must be >= 1");
    if (!(p_hat >= 0.0 && p_hat <= 1.0))
        throw std::invalid_argument("welfare bounds: p_hat must be in [0, 1]");
    if (!(eps >= 0.0)) throw std::invalid_argument("welfare bounds: eps must be >= 0");
    check_instance_eligibility(inst);
    double bl = beta_lipschitz(inst);
    if (eps > 0.0 && bl > 0.0 && !(eps < eps_threshold(bl)))
        throw EligibilityError(EligibilityReason::EpsTooLarge,
                               "requires eps < (16 - 7 beta L) / (14 beta L e^{beta L})");

    double lo = std::clamp(p_hat - eps, 0.0, 1.0);
    double hi = std::clamp(p_hat + eps, 0.0, 1.0);
    WelfareBounds b = bounds_from_seeds(inst, lo, hi, delta);
    b.mode = BoundsMode::Noisy;
    b.p_hat = p_hat;
    b.eps = eps;
    b.prop6_guaranteed = bl == 0.0 || eps < eps_threshold(bl) / 2.0;
    return b;
}

double bound_gap(const Instance& inst, double eps, int delta) {
    if (delta < 1) throw std::invalid_argument("bound gap: delta must be >= 1");
    if (!(eps >= 0.0)) throw std::invalid_argument("bound gap: eps must be >= 0");
    if (eps == 0.0) return 0.0;
    double gamma = contraction_factor(inst, eps);
    double L = inst.rs.lipschitz_constant();
    double sum = 0.0;
    double g = 1.0;
    for (int t = 0; t < delta; ++t) {
        sum += g * (inst.rc(t) + 2.0 * L);
        g *= gamma;
    }
    return 4.0 * eps * sum;
}

bool check_sufficient_noisy(const Instance& inst, double p_hat, double eps, int delta) {
    return noisy_welfare_bounds(inst, p_hat, eps, delta).sum_lo() >= delta * inst.rs(0.0);
}

bool check_necessary_noisy(const Instance& inst, double p_hat, double eps, int delta) {
    return noisy_welfare_bounds(inst, p_hat, eps, delta).sum_hi() >= delta * inst.rs(0.0);
}

}  // namespace ecosim
