#include "ecosim/cyclic.hpp"

#include "ecosim/dynamics.hpp"
#include "ecosim/errors.hpp"
#include "ecosim/regulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecosim {

namespace {

// Interval endpoints are widened outward after every operation so the
// enclosures stay sound at the table's 4-5 digit precision.
constexpr double kOutward = 1e-12;

struct Interval {
    double lo, hi;

    Interval widened() const { return {lo - kOutward, hi + kOutward}; }
    Interval add(double x) const { return Interval{lo + x, hi + x}.widened(); }
    Interval sub(double x) const { return Interval{lo - x, hi - x}.widened(); }
    Interval mul_pos(double x) const { return Interval{lo * x, hi * x}.widened(); }
    Interval div_pos(double x) const { return Interval{lo / x, hi / x}.widened(); }
};

struct FixedPointRun {
    double anchor;
    double radius;
    double gamma;
    CertificateKind kind;
    int iterations;
};

// Iterates p -> compose(gaps, p) from the instance's p1 until the vicinity
// bound certifies a radius within tol. The per-period factor is the analytic
// neighborhood constant raised to the period length when the instance is
// eligible and the iterates are inside the neighborhood, otherwise the
// largest recently observed ratio of successive differences.
FixedPointRun iterate_period_map(const Instance& inst, const std::vector<int>& gaps, double tol) {
    const int period = static_cast<int>(gaps.size());
    constexpr double kNeighborhood = 0.002;
    constexpr double kNoiseFloor = 1e-15;
    constexpr int kMaxIters = 1000000;

    double gamma_analytic = -1.0;
    try {
        gamma_analytic = std::pow(contraction_factor(inst, kNeighborhood), period);
    } catch (const EligibilityError&) {
        // fall back to the empirical ratio
    }

    double a = inst.p1;
    double prev_diff = -1.0;
    std::vector<double> ratios;
    int non_contracting = 0;
    for (int iter = 1; iter <= kMaxIters; ++iter) {
        double next = transition_compose(inst, gaps, a);
        double diff = std::abs(next - a);
        if (diff == 0.0) {
            double g = gamma_analytic > 0.0 ? gamma_analytic : 0.0;
            return {a, 0.0, g, gamma_analytic > 0.0 ? CertificateKind::Analytic
                                                    : CertificateKind::Empirical,
                    iter};
        }
        if (prev_diff > kNoiseFloor && diff > kNoiseFloor) {
            double ratio = diff / prev_diff;
            ratios.push_back(ratio);
            if (ratios.size() > 5) ratios.erase(ratios.begin());
            non_contracting = ratio >= 1.0 ? non_contracting + 1 : 0;
            if (non_contracting >= 100)
                throw ConvergenceError("period map not contracting after 100 cycles");
        }

        double gamma = -1.0;
        CertificateKind kind = CertificateKind::Empirical;
        if (gamma_analytic > 0.0 && diff < kNeighborhood) {
            gamma = gamma_analytic;
            kind = CertificateKind::Analytic;
        } else if (!ratios.empty()) {
            double g = *std::max_element(ratios.begin(), ratios.end());
            if (g < 1.0) gamma = g;
        }
        if (gamma > 0.0 && gamma < 1.0) {
            double radius = diff / (1.0 - gamma);
            if (radius <= tol) return {a, radius, gamma, kind, iter};
        }
        prev_diff = diff;
        a = next;
    }
    throw ConvergenceError("period map fixed point did not reach tolerance");
}

std::vector<int> fresh_gaps(int len) {
    std::vector<int> gaps(len);
    std::iota(gaps.begin(), gaps.end(), 0);
    return gaps;
}

CycleFixedPoint fixed_point_from_run(const Instance& inst, const std::vector<int>& gaps,
                                     const FixedPointRun& run) {
    // Step radii: under the analytic certificate each composed step contracts
    // by the neighborhood constant; the empirical certificate keeps the base
    // radius for every step.
    double step_gamma = 1.0;
    if (run.kind == CertificateKind::Analytic) {
        step_gamma = contraction_factor(inst, 0.002);
    }
    CycleFixedPoint fp;
    fp.k = static_cast<int>(gaps.size());
    fp.contraction_gamma = run.gamma;
    fp.certificate = run.kind;
    fp.anchor = run.anchor;
    fp.iterations = run.iterations;
    double p = run.anchor;
    double scale = 1.0;
    for (int t = 0; t < fp.k; ++t) {
        p = transition(inst, p, gaps[t]);
        scale = run.kind == CertificateKind::Analytic ? scale * step_gamma : 1.0;
        fp.q_star.push_back({p, run.radius * scale});
    }
    return fp;
}

struct Asymptotics {
    Interval sum;
    Interval lim_v;
};

Asymptotics asymptotics_from_fp(const Instance& inst, const CycleFixedPoint& fp, int trainings) {
    double sum = 0.0;
    double slack = 0.0;
    for (const auto& q : fp.q_star) {
        sum += q.value;
        slack += q.radius + kOutward;
    }
    Interval s{sum - slack, sum + slack};
    Interval lim = s.mul_pos(inst.r).sub(trainings * inst.c_train).div_pos(fp.k).sub(inst.c_m);
    return {s, lim};
}

}  // namespace

TrainingScheme cyclic_scheme(int k, int T) {
    if (k < 1) throw std::invalid_argument("cyclic scheme: k must be >= 1");
    if (T < 1) throw std::invalid_argument("cyclic scheme: T must be >= 1");
    std::vector<bool> bits(T, false);
    for (int t = 1; t <= T; ++t) bits[t - 1] = (k == 1) || (t % k == 1);
    return TrainingScheme(std::move(bits));
}

TrainingScheme alternating_scheme(int a1, int a2, int T) {
    if (a1 < 1 || a2 < 1) throw std::invalid_argument("alternating scheme: periods must be >= 1");
    if (T < 1) throw std::invalid_argument("alternating scheme: T must be >= 1");
    std::vector<bool> bits(T, false);
    long long t = 1;
    bool use_a1 = true;
    while (t <= T) {
        bits[t - 1] = true;
        t += use_a1 ? a1 : a2;
        use_a1 = !use_a1;
    }
    return TrainingScheme(std::move(bits));
}

double transition_compose(const Instance& inst, std::span<const int> gaps, double p) {
    for (int g : gaps) p = transition(inst, p, g);
    return p;
}

CycleFixedPoint cycle_fixed_point(const Instance& inst, int k, double tol) {
    if (k < 1) throw std::invalid_argument("cycle fixed point: k must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("cycle fixed point: tol must be > 0");
    std::vector<int> gaps = fresh_gaps(k);
    FixedPointRun run = iterate_period_map(inst, gaps, tol);
    return fixed_point_from_run(inst, gaps, run);
}

CycleAsymptotics cycle_asymptotics(const Instance& inst, int k, double tol) {
    CycleFixedPoint fp = cycle_fixed_point(inst, k, tol);
    Asymptotics a = asymptotics_from_fp(inst, fp, 1);
    return {{a.sum.lo, a.sum.hi, false}, {a.lim_v.lo, a.lim_v.hi, true}, std::move(fp)};
}

RevenueInterval asymptotic_cycle_revenue(const Instance& inst, int k, double tol) {
    return cycle_asymptotics(inst, k, tol).lim_v;
}

CycleAsymptotics alternating_asymptotics(const Instance& inst, int a1, int a2, double tol) {
    if (a1 < 1 || a2 < 1)
        throw std::invalid_argument("alternating asymptotics: periods must be >= 1");
    // One period trains at offsets 0 and a1, so the gap pattern is two
    // freshly-trained stretches back to back.
    std::vector<int> gaps;
    for (int g = 0; g < a1; ++g) gaps.push_back(g);
    for (int g = 0; g < a2; ++g) gaps.push_back(g);
    FixedPointRun run = iterate_period_map(inst, gaps, tol);
    CycleFixedPoint fp = fixed_point_from_run(inst, gaps, run);
    Asymptotics a = asymptotics_from_fp(inst, fp, 2);
    return {{a.sum.lo, a.sum.hi, false}, {a.lim_v.lo, a.lim_v.hi, true}, std::move(fp)};
}

RevenueInterval asymptotic_alternating_revenue(const Instance& inst, int a1, int a2, double tol) {
    return alternating_asymptotics(inst, a1, a2, tol).lim_v;
}

BestCycle best_cycle(const Instance& inst, int k_max, double tol) {
    if (k_max < 1) throw std::invalid_argument("best cycle: k_max must be >= 1");
    std::vector<RevenueInterval> intervals;
    intervals.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) intervals.push_back(asymptotic_cycle_revenue(inst, k, tol));
    int best_k = 1;
    for (int k = 2; k <= k_max; ++k)
        if (intervals[k - 1].lower > intervals[best_k - 1].lower) best_k = k;
    bool undecided = false;
    for (int k = 1; k <= k_max; ++k)
        if (k != best_k && intervals[k - 1].upper >= intervals[best_k - 1].lower) undecided = true;
    return {best_k, intervals[best_k - 1], undecided};
}

double noncyclic_beats_cyclic(const Instance& inst, int a1, int a2, int k_max, double tol) {
    RevenueInterval alt = asymptotic_alternating_revenue(inst, a1, a2, tol);
    double best_cyclic_upper = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k)
        best_cyclic_upper =
            std::max(best_cyclic_upper, asymptotic_cycle_revenue(inst, k, tol).upper);
    return alt.lower - best_cyclic_upper;
}

}  // namespace ecosim
