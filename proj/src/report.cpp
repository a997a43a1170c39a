#include "ecosim/report.hpp"

#include "ecosim/cyclic.hpp"
#include "ecosim/regulator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ecosim {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {
std::string f(double x) { return format_double(x); }
}  // namespace

void write_trajectory_csv(std::ostream& out, const Instance& inst, const TrainingScheme& scheme) {
    Trajectory traj = simulate(inst, scheme);
    out << "round,p,gamma,u,v,U_cum,V_cum,counterfactual_cum\n";
    double u_cum = 0.0, v_cum = 0.0;
    double rs0 = inst.rs(0.0);
    for (int t = 1; t <= inst.T; ++t) {
        u_cum += traj.u[t - 1];
        v_cum += traj.v[t - 1];
        out << t << ',' << f(traj.p[t - 1]) << ',' << traj.gamma[t - 1] << ','
            << f(traj.u[t - 1]) << ',' << f(traj.v[t - 1]) << ',' << f(u_cum) << ','
            << f(v_cum) << ',' << f(t * rs0) << '\n';
    }
}

void write_figure1_csv(std::ostream& out, const Instance& inst) {
    std::vector<bool> none(inst.T, false);
    none[0] = true;
    Trajectory x0 = simulate(inst, TrainingScheme(none));
    Trajectory xr = simulate(inst, brute_force_revenue_opt(inst).scheme);
    Trajectory xw = simulate(inst, brute_force_welfare_opt(inst).scheme);
    double rs0 = inst.rs(0.0);

    out << "round,U_x0,U_xr,U_xw,counterfactual\n";
    double c0 = 0.0, cr = 0.0, cw = 0.0;
    for (int t = 1; t <= inst.T; ++t) {
        c0 += x0.u[t - 1];
        cr += xr.u[t - 1];
        cw += xw.u[t - 1];
        out << t << ',' << f(c0) << ',' << f(cr) << ',' << f(cw) << ',' << f(t * rs0) << '\n';
    }
}

void write_figure2_csv(std::ostream& out, const Instance& inst, std::span<const double> p1s) {
    std::vector<bool> none(inst.T, false);
    none[0] = true;
    TrainingScheme x0(none);
    std::vector<Trajectory> trajs;
    trajs.reserve(p1s.size());
    for (double p1 : p1s) trajs.push_back(simulate(inst.with_p1(p1), x0));

    out << "round";
    for (double p1 : p1s) out << ",p_" << f(p1);
    out << '\n';
    for (int t = 1; t <= inst.T; ++t) {
        out << t;
        for (const auto& traj : trajs) out << ',' << f(traj.p[t - 1]);
        out << '\n';
    }
}

void write_cycle_table_csv(std::ostream& out, const Instance& inst, int k_max, int a1, int a2) {
    out << "scheme,sum_lo,sum_hi,limv_lo,limv_hi\n";
    for (int k = 1; k <= k_max; ++k) {
        CycleAsymptotics a = cycle_asymptotics(inst, k);
        out << "k=" << k << ',' << f(a.sum.lower) << ',' << f(a.sum.upper) << ','
            << f(a.lim_v.lower) << ',' << f(a.lim_v.upper) << '\n';
    }
    if (a1 > 0 && a2 > 0) {
        CycleAsymptotics a = alternating_asymptotics(inst, a1, a2);
        out << "alt=" << a1 << ':' << a2 << ',' << f(a.sum.lower) << ',' << f(a.sum.upper) << ','
            << f(a.lim_v.lower) << ',' << f(a.lim_v.upper) << '\n';
    }
}

void write_optimization_report(std::ostream& out, const OptimizationResult& result) {
    out << "objective = " << f(result.objective) << '\n';
    if (result.optimality == Optimality::Exact) {
        out << "optimality = exact\n";
        out << "ties = " << result.ties << '\n';
    } else {
        out << "optimality = approx(eps=" << f(result.eps) << ")\n";
        out << "guaranteed = " << (result.guaranteed ? "true" : "false") << '\n';
    }
    out << "training_rounds =";
    for (int t : result.scheme.training_rounds()) out << ' ' << t;
    out << '\n';
    out << "scheme = " << result.scheme.bit_string() << '\n';
}

void write_regulator_report(std::ostream& out, const Instance& inst, int delta,
                            std::optional<double> p_hat, std::optional<double> eps) {
    bool noisy = p_hat.has_value() && eps.has_value();
    WelfareBounds b = noisy ? noisy_welfare_bounds(inst, *p_hat, *eps, delta)
                            : crude_welfare_bounds(inst, delta);
    double baseline = delta * inst.rs(0.0);
    out << "delta = " << delta << '\n';
    if (noisy) {
        out << "mode = noisy(p_hat=" << f(*p_hat) << ", eps=" << f(*eps) << ")\n";
    } else {
        out << "mode = crude\n";
    }
    out << "sufficient = " << (b.sum_lo() >= baseline ? "true" : "false") << '\n';
    out << "necessary = " << (b.sum_hi() >= baseline ? "true" : "false") << '\n';
    if (noisy) {
        out << "bound_gap = " << f(bound_gap(inst, *eps, delta)) << '\n';
        out << "guaranteed = " << (b.prop6_guaranteed ? "true" : "false") << '\n';
    }
    out << "offset,q_lo,q_hi,u_lo,u_hi\n";
    for (int t = 0; t < delta; ++t) {
        out << t << ',' << f(b.q_lo[t]) << ',' << f(b.q_hi[t]) << ',' << f(b.u_lo[t]) << ','
            << f(b.u_hi[t]) << '\n';
    }
}

void write_poa(std::ostream& out, const Instance& inst) {
    double ratio = price_of_anarchy(inst);
    if (std::isinf(ratio)) {
        out << "poa = inf\n";
    } else {
        out << "poa = " << f(ratio) << '\n';
    }
}

}  // namespace ecosim
