#include "ecosim/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ecosim {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

DecayUtility DecayUtility::exp_decay(double a, double b, double c) {
    if (!(a > 0.0)) throw std::invalid_argument("exp_decay: a must be > 0");
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("exp_decay: b must be in (0, 1)");
    if (!(c >= 0.0)) throw std::invalid_argument("exp_decay: c must be >= 0");
    DecayUtility u;
    u.kind_ = Kind::ExpDecay;
    u.a_ = a;
    u.b_ = b;
    u.c_ = c;
    return u;
}

DecayUtility DecayUtility::tabulated(std::vector<double> values, double tail) {
    if (values.empty()) throw std::invalid_argument("tabulated decay: empty value list");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0)) throw std::invalid_argument("tabulated decay: negative value");
        if (i > 0 && values[i] > values[i - 1])
            throw std::invalid_argument("tabulated decay: values must be non-increasing");
    }
    if (!(tail >= 0.0) || tail > values.back())
        throw std::invalid_argument("tabulated decay: tail must be in [0, last value]");
    DecayUtility u;
    u.kind_ = Kind::Tabulated;
    u.values_ = std::move(values);
    u.tail_ = tail;
    return u;
}

double DecayUtility::operator()(int t) const {
    if (t < 0) throw std::out_of_range("decay utility: t must be >= 0");
    if (kind_ == Kind::ExpDecay) return a_ * std::pow(b_, t) + c_;
    if (static_cast<std::size_t>(t) < values_.size()) return values_[t];
    return tail_;
}

double DecayUtility::limit() const {
    return kind_ == Kind::ExpDecay ? c_ : tail_;
}

std::string DecayUtility::describe() const {
    if (kind_ == Kind::ExpDecay)
        return "exp_decay(" + num(a_) + ", " + num(b_) + ", " + num(c_) + ")";
    std::string s = "table(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ", ";
        s += num(values_[i]);
    }
    s += "; " + num(tail_) + ")";
    return s;
}

NetworkUtility NetworkUtility::linear(double u0, double s, bool allow_negative) {
    if (!(s > 0.0)) throw std::invalid_argument("linear network utility: slope must be > 0");
    if (!allow_negative && u0 - s < 0.0)
        throw std::invalid_argument(
            "linear network utility: negative at p=1 (set allow_negative to permit)");
    NetworkUtility u;
    u.kind_ = Kind::Linear;
    u.u0_ = u0;
    u.s_ = s;
    return u;
}

NetworkUtility NetworkUtility::logistic(double k, double m) {
    if (!(k > 0.0)) throw std::invalid_argument("logistic network utility: slope must be > 0");
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("logistic network utility: midpoint must be in [0, 1]");
    NetworkUtility u;
    u.kind_ = Kind::Logistic;
    u.k_ = k;
    u.m_ = m;
    return u;
}

NetworkUtility NetworkUtility::tabulated(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("tabulated network utility: need >= 2 points");
    std::sort(points.begin(), points.end());
    if (points.front().first != 0.0 || points.back().first != 1.0)
        throw std::invalid_argument("tabulated network utility: grid must span [0, 1]");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].second >= 0.0))
            throw std::invalid_argument("tabulated network utility: negative value");
        if (i > 0) {
            if (points[i].first == points[i - 1].first)
                throw std::invalid_argument("tabulated network utility: duplicate grid point");
            if (points[i].second > points[i - 1].second)
                throw std::invalid_argument("tabulated network utility: values must be non-increasing");
        }
    }
    NetworkUtility u;
    u.kind_ = Kind::Tabulated;
    u.points_ = std::move(points);
    return u;
}

double NetworkUtility::operator()(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("network utility: p must be in [0, 1]");
    switch (kind_) {
        case Kind::Linear:
            return u0_ - s_ * p;
        case Kind::Logistic:
            return 1.0 / (1.0 + std::exp(-k_ * (m_ - p)));
        case Kind::Tabulated: {
            auto it = std::upper_bound(points_.begin(), points_.end(), p,
                                       [](double x, const auto& pt) { return x < pt.first; });
            if (it == points_.begin()) return points_.front().second;
            if (it == points_.end()) return points_.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            double w = (p - lo.first) / (hi.first - lo.first);
            return lo.second + w * (hi.second - lo.second);
        }
    }
    return 0.0;
}

double NetworkUtility::lipschitz_constant() const {
    switch (kind_) {
        case Kind::Linear:
            return s_;
        case Kind::Logistic:
            return k_ / 4.0;  // max slope of the logistic, attained at the midpoint
        case Kind::Tabulated: {
            double L = 0.0;
            for (std::size_t i = 1; i < points_.size(); ++i) {
                double dp = points_[i].first - points_[i - 1].first;
                double dv = std::abs(points_[i].second - points_[i - 1].second);
                L = std::max(L, dv / dp);
            }
            return L;
        }
    }
    return 0.0;
}

bool NetworkUtility::zero_at_one(double tol) const {
    return std::abs((*this)(1.0)) <= tol;
}

std::string NetworkUtility::describe() const {
    switch (kind_) {
        case Kind::Linear:
            return "linear(" + num(u0_) + ", " + num(s_) + ")";
        case Kind::Logistic:
            return "logistic(" + num(k_) + ", " + num(m_) + ")";
        case Kind::Tabulated: {
            std::string s = "grid(";
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (i) s += ", ";
                s += num(points_[i].first) + ":" + num(points_[i].second);
            }
            return s + ")";
        }
    }
    return "";
}

Sensitivity Sensitivity::finite(double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("sensitivity: beta must be >= 0");
    return Sensitivity(beta, false);
}

Sensitivity Sensitivity::infinite() { return Sensitivity(0.0, true); }

std::string Sensitivity::describe() const { return infinite_ ? "inf" : num(beta_); }

Instance::Instance(double r_, double c_m_, double c_train_, DecayUtility rc_, NetworkUtility rs_,
                   Sensitivity beta_, double p1_, int T_)
    : r(r_), c_m(c_m_), c_train(c_train_), rc(std::move(rc_)), rs(std::move(rs_)),
      beta(beta_), p1(p1_), T(T_) {
    if (!(r >= 0.0)) throw std::invalid_argument("instance: r must be >= 0");
    if (!(c_m >= 0.0)) throw std::invalid_argument("instance: c_m must be >= 0");
    if (!(c_train >= 0.0)) throw std::invalid_argument("instance: c_train must be >= 0");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("instance: p1 must be in [0, 1]");
    if (T < 1) throw std::invalid_argument("instance: T must be >= 1");
    double rs0 = rs(0.0);
    double rc0 = rc(0);
    if (!(rs0 < rc0))
        throw std::invalid_argument("instance: requires R^s(0) < R^c(0)");
    // Exact witness check: both decay families approach their limit
    // monotonically, so a round with R^c below R^s(0) exists iff the limit
    // lies strictly below it.
    if (!(rc.limit() < rs0))
        throw std::invalid_argument("instance: requires some t with R^c(t) < R^s(0)");
}

Instance Instance::with_p1(double new_p1) const {
    return Instance(r, c_m, c_train, rc, rs, beta, new_p1, T);
}

Instance Instance::with_horizon(int new_T) const {
    return Instance(r, c_m, c_train, rc, rs, beta, p1, new_T);
}

TrainingScheme::TrainingScheme(std::vector<bool> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("training scheme: empty");
    if (!bits_[0]) throw std::invalid_argument("training scheme: round 1 must train");
}

bool TrainingScheme::trains_at(int t) const {
    if (t < 1 || t > horizon()) throw std::out_of_range("training scheme: round out of range");
    return bits_[t - 1];
}

int TrainingScheme::gap_at(int t) const {
    if (t < 1 || t > horizon()) throw std::out_of_range("training scheme: round out of range");
    for (int s = t; s >= 1; --s)
        if (bits_[s - 1]) return t - s;
    return t - 1;  // unreachable, round 1 trains
}

int TrainingScheme::max_gap() const {
    int delta = 0;
    int last = 1;
    for (int t = 2; t <= horizon(); ++t) {
        if (bits_[t - 1]) {
            delta = std::max(delta, t - last);
            last = t;
        }
    }
    return std::max(delta, horizon() + 1 - last);
}

std::vector<int> TrainingScheme::training_rounds() const {
    std::vector<int> out;
    for (int t = 1; t <= horizon(); ++t)
        if (bits_[t - 1]) out.push_back(t);
    return out;
}

std::string TrainingScheme::bit_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s += b ? '1' : '0';
    return s;
}

}  // namespace ecosim
