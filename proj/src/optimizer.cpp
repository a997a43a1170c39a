#include "ecosim/optimizer.hpp"

#include "ecosim/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ecosim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct MaskEval {
    double revenue;  // V
    double welfare;  // U
};

// Evaluates one scheme given as a bit mask over rounds 2..T (round 1 always
// trains). The arithmetic mirrors simulate() operation-for-operation so that
// the reported optimum matches the re-simulated objective bit-exactly.
MaskEval eval_mask(const Instance& inst, const std::vector<double>& rc_tab, uint64_t mask) {
    const int T = inst.T;
    const bool inf_beta = inst.beta.is_infinite();
    const double beta = inf_beta ? 0.0 : inst.beta.value();

    double p = inst.p1;
    int gamma = 0;
    double rs_p = inst.rs(p);
    double sum_u = p * rc_tab[0] + (1.0 - p) * rs_p;
    double sum_v = p * inst.r - inst.c_m - inst.c_train;

    for (int t = 2; t <= T; ++t) {
        double rc = rc_tab[gamma];
        if (inf_beta) {
            p = rc > rs_p ? 1.0 : (rc < rs_p ? 0.0 : 0.5);
        } else {
            p = 1.0 / (1.0 + std::exp(beta * (rs_p - rc)));
        }
        bool train = (mask >> (t - 2)) & 1u;
        gamma = train ? 0 : gamma + 1;
        rs_p = inst.rs(p);
        sum_u += p * rc_tab[gamma] + (1.0 - p) * rs_p;
        sum_v += p * inst.r - inst.c_m - (train ? inst.c_train : 0.0);
    }
    return {sum_v / T, sum_u};
}

// First differing round decides; a 0 there is the smaller vector.
bool lex_less(uint64_t a, uint64_t b) {
    uint64_t diff = a ^ b;
    if (diff == 0) return false;
    int j = std::countr_zero(diff);
    return ((a >> j) & 1u) == 0;
}

enum class Objective { Revenue, Welfare };

struct EnumOutcome {
    double best = kNegInf;
    uint64_t lex_mask = 0;
    long long ties = 0;
    double min_welfare_at_best = std::numeric_limits<double>::infinity();
};

void merge_into(EnumOutcome& acc, const EnumOutcome& part) {
    if (part.ties == 0) return;
    if (acc.ties == 0 || part.best > acc.best) {
        acc = part;
    } else if (part.best == acc.best) {
        acc.ties += part.ties;
        if (lex_less(part.lex_mask, acc.lex_mask)) acc.lex_mask = part.lex_mask;
        acc.min_welfare_at_best = std::min(acc.min_welfare_at_best, part.min_welfare_at_best);
    }
}

EnumOutcome enumerate_range(const Instance& inst, const std::vector<double>& rc_tab,
                            Objective objective, uint64_t begin, uint64_t end) {
    EnumOutcome out;
    for (uint64_t mask = begin; mask < end; ++mask) {
        MaskEval e = eval_mask(inst, rc_tab, mask);
        double obj = objective == Objective::Revenue ? e.revenue : e.welfare;
        if (out.ties == 0 || obj > out.best) {
            out.best = obj;
            out.lex_mask = mask;
            out.ties = 1;
            out.min_welfare_at_best = e.welfare;
        } else if (obj == out.best) {
            ++out.ties;
            if (lex_less(mask, out.lex_mask)) out.lex_mask = mask;
            out.min_welfare_at_best = std::min(out.min_welfare_at_best, e.welfare);
        }
    }
    return out;
}

EnumOutcome enumerate_best(const Instance& inst, Objective objective, int threads) {
    std::vector<double> rc_tab(inst.T);
    for (int g = 0; g < inst.T; ++g) rc_tab[g] = inst.rc(g);

    const uint64_t n_masks = uint64_t{1} << (inst.T - 1);
    threads = std::clamp(threads, 1, 128);
    if (threads == 1 || n_masks < 4096) {
        return enumerate_range(inst, rc_tab, objective, 0, n_masks);
    }
    std::vector<EnumOutcome> parts(threads);
    std::vector<std::thread> pool;
    uint64_t chunk = (n_masks + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
        uint64_t b = chunk * i;
        uint64_t e = std::min(n_masks, b + chunk);
        pool.emplace_back([&, i, b, e] { parts[i] = enumerate_range(inst, rc_tab, objective, b, e); });
    }
    for (auto& th : pool) th.join();
    EnumOutcome out;
    for (const auto& part : parts) merge_into(out, part);
    return out;
}

TrainingScheme scheme_from_mask(int T, uint64_t mask) {
    std::vector<bool> bits(T, false);
    bits[0] = true;
    for (int t = 2; t <= T; ++t) bits[t - 1] = (mask >> (t - 2)) & 1u;
    return TrainingScheme(std::move(bits));
}

void check_capacity(const Instance& inst, const BruteForceOptions& opts) {
    if (inst.T > opts.max_horizon || inst.T > 62)
        throw CapacityError("brute force: horizon " + std::to_string(inst.T) +
                            " exceeds cap " + std::to_string(opts.max_horizon));
}

}  // namespace

OptimizationResult brute_force_revenue_opt(const Instance& inst, const BruteForceOptions& opts) {
    check_capacity(inst, opts);
    EnumOutcome out = enumerate_best(inst, Objective::Revenue, opts.threads);
    TrainingScheme scheme = scheme_from_mask(inst.T, out.lex_mask);
    double objective = simulate(inst, scheme).average_revenue;
    return {std::move(scheme), objective, Optimality::Exact, 0.0, out.ties, true};
}

OptimizationResult brute_force_welfare_opt(const Instance& inst, const BruteForceOptions& opts) {
    check_capacity(inst, opts);
    EnumOutcome out = enumerate_best(inst, Objective::Welfare, opts.threads);
    TrainingScheme scheme = scheme_from_mask(inst.T, out.lex_mask);
    double objective = simulate(inst, scheme).total_welfare;
    return {std::move(scheme), objective, Optimality::Exact, 0.0, out.ties, true};
}

DpTable::DpTable(int cells, int horizon, double eps)
    : cells_(cells), horizon_(horizon), eps_(eps),
      value_(static_cast<std::size_t>(horizon + 1) * (horizon + 1) * cells, 0.0),
      action_(static_cast<std::size_t>(horizon + 1) * (horizon + 1) * cells, 0) {}

std::size_t DpTable::index(int cell, int t, int s) const {
    return (static_cast<std::size_t>(t - 1) * (horizon_ + 1) + s) * cells_ + cell;
}

std::optional<double> arms_eps_bound(const Instance& inst) {
    if (!inst.rs.zero_at_one()) return std::nullopt;
    if (inst.beta.is_infinite()) return std::nullopt;
    double bl = inst.beta.value() * inst.rs.lipschitz_constant();
    if (bl == 0.0) return std::numeric_limits<double>::infinity();
    if (!(bl < 16.0 / 7.0)) return std::nullopt;
    return (16.0 - 7.0 * bl) / (14.0 * bl * std::exp(bl) * inst.T);
}

DpTable arms_table(const Instance& inst, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("arms: eps must be > 0");
    const int T = inst.T;
    double cells_d = std::floor(1.0 / eps) + 1.0;
    if (cells_d * (T + 1.0) * (T + 1.0) > 5e8)
        throw CapacityError("arms: table of " + std::to_string(cells_d * (T + 1) * (T + 1)) +
                            " entries exceeds memory budget");
    const int n = static_cast<int>(cells_d);

    DpTable table(n, T, eps);
    auto cell_of = [&](double p) {
        int i = static_cast<int>(std::floor(p / eps));
        return std::clamp(i, 0, n - 1);
    };

    // State (cell, t, s): proportion p = cell*eps at round t, with s the
    // training gap that applies if the platform skips at t (0 after a train).
    // Skipping advances the gap, training resets it; both use the next
    // proportion induced by the gap actually in effect this round.
    for (int t = T; t >= 1; --t) {
        for (int s = 0; s <= T - 1; ++s) {
            for (int i = 0; i < n; ++i) {
                double p = std::min(i * eps, 1.0);
                int cell_skip = cell_of(transition(inst, p, s));
                int cell_train = cell_of(transition(inst, p, 0));
                double v_skip = inst.r * p + table.value(cell_skip, t + 1, s + 1);
                double v_train =
                    inst.r * p - inst.c_train + table.value(cell_train, t + 1, 1);
                bool train = v_train > v_skip;  // skip preferred on exact ties
                table.value_ref(i, t, s) = train ? v_train : v_skip;
                table.set_action(i, t, s, train);
            }
        }
    }
    return table;
}

OptimizationResult arms(const Instance& inst, double eps) {
    DpTable table = arms_table(inst, eps);
    const int T = inst.T;
    const int n = table.cells();
    auto cell_of = [&](double p) {
        int i = static_cast<int>(std::floor(p / eps));
        return std::clamp(i, 0, n - 1);
    };
    auto cell_p = [&](int cell) { return std::min(cell * eps, 1.0); };

    std::vector<bool> bits(T, false);
    bits[0] = true;
    int ci = cell_of(inst.p1);
    ci = cell_of(transition(inst, cell_p(ci), 0));
    int s = 1;
    for (int t = 2; t <= T; ++t) {
        bool train = table.train_action(ci, t, s);
        bits[t - 1] = train;
        ci = cell_of(transition(inst, cell_p(ci), train ? 0 : s));
        s = train ? 1 : s + 1;
    }

    TrainingScheme scheme(std::move(bits));
    double objective = simulate(inst, scheme).average_revenue;
    auto bound = arms_eps_bound(inst);
    bool guaranteed = bound.has_value() && eps < *bound;
    return {std::move(scheme), objective, Optimality::ApproxEps, eps, 1, guaranteed};
}

double price_of_anarchy(const Instance& inst, const BruteForceOptions& opts) {
    check_capacity(inst, opts);
    EnumOutcome welfare = enumerate_best(inst, Objective::Welfare, opts.threads);
    EnumOutcome revenue = enumerate_best(inst, Objective::Revenue, opts.threads);
    double worst = revenue.min_welfare_at_best;
    if (worst == 0.0) return std::numeric_limits<double>::infinity();
    return welfare.best / worst;
}

namespace {

// Fixed point of the transition with the decay utility pinned at its limit,
// approached by iterating from p = 1.
std::optional<double> no_training_limit(const Instance& inst) {
    double rc_inf = inst.rc.limit();
    double p = 1.0;
    for (int i = 0; i < 100000; ++i) {
        double rs = inst.rs(p);
        double next;
        if (inst.beta.is_infinite()) {
            next = rc_inf > rs ? 1.0 : (rc_inf < rs ? 0.0 : 0.5);
        } else {
            next = 1.0 / (1.0 + std::exp(inst.beta.value() * (rs - rc_inf)));
        }
        if (std::abs(next - p) < 1e-13) return next;
        p = next;
    }
    return std::nullopt;
}

// Cumulative revenue of a length-T scheme on the p1 = 0 variant, with the
// constant maintenance cost dropped (it cancels against the no-training
// baseline in the certificate argument).
double cert_revenue_from_zero(const Instance& inst, int T, uint64_t mask) {
    double p = 0.0;
    int gamma = 0;
    double sum = p * inst.r - inst.c_train;
    for (int t = 2; t <= T; ++t) {
        p = transition(inst, p, gamma);
        bool train = (mask >> (t - 2)) & 1u;
        gamma = train ? 0 : gamma + 1;
        sum += p * inst.r - (train ? inst.c_train : 0.0);
    }
    return sum;
}

}  // namespace

std::optional<GapCertificate> training_gap_bound(const Instance& inst) {
    auto fixed = no_training_limit(inst);
    if (!fixed) return std::nullopt;
    double threshold = inst.c_m / inst.r;  // +inf when r == 0 and c_m > 0
    if (!(*fixed < threshold)) return std::nullopt;

    // Walk the no-training dynamic from the worst start p1 = 1 until its
    // cumulative revenue has gone negative for good.
    const int kMaxHorizon = 200000;
    double p = 1.0;
    int decrease_onset = 0;
    double cum = 1.0 * inst.r - inst.c_m - inst.c_train;
    int last_nonneg = cum >= 0.0 ? 1 : 0;
    int t = 1;
    while (t < kMaxHorizon) {
        double next = transition(inst, p, t - 1);  // gap at round t is t-1
        if (decrease_onset == 0 && p >= next) decrease_onset = t;
        ++t;
        p = next;
        cum += p * inst.r - inst.c_m;
        if (cum >= 0.0) last_nonneg = t;
        if (decrease_onset > 0 && p < threshold && cum < 0.0) break;
    }
    if (t >= kMaxHorizon) return std::nullopt;
    int t0 = last_nonneg + 1;

    // A scheme with non-negative revenue within t0 rounds from the cold-start
    // variant certifies the bound.
    Instance cold = inst.with_p1(0.0);
    double best = kNegInf;
    uint64_t best_mask = 0;
    if (t0 <= 21) {
        uint64_t n_masks = uint64_t{1} << (t0 - 1);
        for (uint64_t mask = 0; mask < n_masks; ++mask) {
            double rev = cert_revenue_from_zero(cold, t0, mask);
            if (rev > best) {
                best = rev;
                best_mask = mask;
            }
        }
    } else {
        for (int k = 1; k <= t0; ++k) {
            uint64_t mask = 0;
            for (int round = 2; round <= t0; ++round)
                if (k == 1 || round % k == 1) mask |= uint64_t{1} << (round - 2);
            double rev = cert_revenue_from_zero(cold, t0, mask);
            if (rev > best) {
                best = rev;
                best_mask = mask;
            }
        }
    }
    if (!(best >= 0.0)) return std::nullopt;

    std::vector<bool> bits(t0, false);
    bits[0] = true;
    for (int round = 2; round <= t0; ++round) bits[round - 1] = (best_mask >> (round - 2)) & 1u;
    return GapCertificate{t0, decrease_onset, *fixed, TrainingScheme(std::move(bits)), best};
}

}  // namespace ecosim
