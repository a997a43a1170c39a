#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ecosim {

/// Platform utility that decays with the number of rounds since the last
/// training. Two families: a*b^t + c exponential decay, or an explicit table
/// with a constant tail. Values are non-increasing in t and non-negative.
class DecayUtility {
public:
    static DecayUtility exp_decay(double a, double b, double c);
    static DecayUtility tabulated(std::vector<double> values, double tail);

    double operator()(int t) const;  // value after t rounds without training
    double limit() const;            // inf over t (c, resp. tail)

    bool is_exp_decay() const { return kind_ == Kind::ExpDecay; }
    std::string describe() const;  // canonical spec string, e.g. "exp_decay(3, 0.5, 0)"

private:
    enum class Kind { ExpDecay, Tabulated };

    DecayUtility() = default;

    Kind kind_ = Kind::ExpDecay;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    std::vector<double> values_;
    double tail_ = 0.0;
};

/// Forum-side utility as a function of the proportion p of users on the other
/// platform. Non-increasing on [0,1]; the Lipschitz constant is derivable for
/// each family.
class NetworkUtility {
public:
    static NetworkUtility linear(double u0, double s, bool allow_negative = false);
    static NetworkUtility logistic(double k, double m);
    // Grid of (p, value) pairs, linearly interpolated; must span [0, 1].
    static NetworkUtility tabulated(std::vector<std::pair<double, double>> points);

    double operator()(double p) const;  // p in [0,1], otherwise std::out_of_range
    double lipschitz_constant() const;
    bool zero_at_one(double tol = 1e-6) const;

    std::string describe() const;

private:
    enum class Kind { Linear, Logistic, Tabulated };

    NetworkUtility() = default;

    Kind kind_ = Kind::Linear;
    double u0_ = 0.0, s_ = 0.0;  // linear
    double k_ = 0.0, m_ = 0.0;   // logistic
    std::vector<std::pair<double, double>> points_;
};

/// User decision sensitivity: the softmax temperature, or the strict
/// best-response limit.
class Sensitivity {
public:
    static Sensitivity finite(double beta);
    static Sensitivity infinite();

    bool is_infinite() const { return infinite_; }
    double value() const { return beta_; }  // meaningful only when finite

    std::string describe() const;

private:
    Sensitivity(double beta, bool inf) : beta_(beta), infinite_(inf) {}
    double beta_ = 0.0;
    bool infinite_ = false;
};

/// Full problem tuple. Construction validates the attractiveness assumption:
/// R^s(0) < R^c(0), and R^c eventually falls below R^s(0) (exact via the
/// family limit, which both supported decay families attain or approach
/// monotonically).
struct Instance {
    double r;        // reward per user per round
    double c_m;      // maintenance cost per round
    double c_train;  // cost per training round
    DecayUtility rc;
    NetworkUtility rs;
    Sensitivity beta;
    double p1;  // initial proportion on the trained platform
    int T;      // horizon, rounds are 1-indexed

    Instance(double r, double c_m, double c_train, DecayUtility rc, NetworkUtility rs,
             Sensitivity beta, double p1, int T);

    Instance with_p1(double new_p1) const;
    Instance with_horizon(int new_T) const;
};

/// Binary training-decision vector over rounds 1..T. Round 1 always trains.
class TrainingScheme {
public:
    explicit TrainingScheme(std::vector<bool> bits);

    int horizon() const { return static_cast<int>(bits_.size()); }
    bool trains_at(int t) const;  // 1-indexed, throws std::out_of_range
    int gap_at(int t) const;      // rounds since last training at or before t
    int max_gap() const;          // max window, sentinel training round at T+1
    std::vector<int> training_rounds() const;
    const std::vector<bool>& bits() const { return bits_; }
    std::string bit_string() const;

    bool operator==(const TrainingScheme& other) const { return bits_ == other.bits_; }

private:
    std::vector<bool> bits_;
};

}  // namespace ecosim
