#include "ecosim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ecosim {

double transition(const Instance& inst, double p, int gap) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("transition: p must be in [0, 1]");
    if (gap < 0) throw std::invalid_argument("transition: gap must be >= 0");
    double rc = inst.rc(gap);
    double rs = inst.rs(p);
    if (inst.beta.is_infinite()) {
        if (rc > rs) return 1.0;
        if (rc < rs) return 0.0;
        return 0.5;
    }
    return 1.0 / (1.0 + std::exp(inst.beta.value() * (rs - rc)));
}

Trajectory simulate(const Instance& inst, const TrainingScheme& scheme) {
    if (scheme.horizon() != inst.T)
        throw std::invalid_argument("simulate: scheme length must equal instance horizon");
    const int T = inst.T;
    Trajectory traj;
    traj.p.resize(T);
    traj.gamma.resize(T);
    traj.u.resize(T);
    traj.v.resize(T);

    double sum_u = 0.0, sum_v = 0.0;
    int last_train = 1;
    for (int t = 1; t <= T; ++t) {
        double p;
        if (t == 1) {
            p = inst.p1;
        } else {
            p = transition(inst, traj.p[t - 2], traj.gamma[t - 2]);
        }
        if (scheme.trains_at(t)) last_train = t;
        int gamma = t - last_train;
        double u = p * inst.rc(gamma) + (1.0 - p) * inst.rs(p);
        double v = p * inst.r - inst.c_m - (scheme.trains_at(t) ? inst.c_train : 0.0);
        traj.p[t - 1] = p;
        traj.gamma[t - 1] = gamma;
        traj.u[t - 1] = u;
        traj.v[t - 1] = v;
        sum_u += u;
        sum_v += v;
    }
    traj.total_welfare = sum_u;
    traj.average_revenue = sum_v / T;
    traj.counterfactual = T * inst.rs(0.0);
    return traj;
}

double Trajectory::welfare_between(int t, int t2) const {
    if (t < 1 || t2 > horizon() || t > t2)
        throw std::out_of_range("welfare_between: need 1 <= t <= t2 <= T");
    double s = 0.0;
    for (int i = t; i <= t2; ++i) s += u[i - 1];
    return s;
}

double counterfactual_welfare(const Instance& inst) { return inst.T * inst.rs(0.0); }

bool is_socially_beneficial(const Instance& inst, const TrainingScheme& scheme) {
    return simulate(inst, scheme).total_welfare >= counterfactual_welfare(inst);
}

double welfare_between(const Instance& inst, const TrainingScheme& scheme, int t, int t2) {
    return simulate(inst, scheme).welfare_between(t, t2);
}

}  // namespace ecosim
