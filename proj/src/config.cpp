#include "ecosim/config.hpp"

#include "ecosim/cyclic.hpp"
#include "ecosim/errors.hpp"
#include "ecosim/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace ecosim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_number(const std::string& s, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(ConfigError::Code::TypeMismatch, line, field,
                          "expected a number, got '" + s + "'");
    }
}

int parse_int(const std::string& s, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(ConfigError::Code::TypeMismatch, line, field,
                          "expected an integer, got '" + s + "'");
    }
}

// Splits "name(arg1, arg2, ...)" into name and raw argument list.
bool parse_call(const std::string& s, std::string& name, std::string& args) {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return false;
    name = trim(s.substr(0, open));
    args = s.substr(open + 1, s.size() - open - 2);
    return true;
}

DecayUtility parse_rc(const std::string& s, int line) {
    std::string name, args;
    if (!parse_call(s, name, args))
        throw ConfigError(ConfigError::Code::TypeMismatch, line, "rc",
                          "expected exp_decay(a, b, c) or table(v, ...; tail)");
    try {
        if (name == "exp_decay") {
            auto parts = split(args, ',');
            if (parts.size() != 3)
                throw std::invalid_argument("exp_decay takes 3 arguments");
            return DecayUtility::exp_decay(parse_number(parts[0], line, "rc"),
                                           parse_number(parts[1], line, "rc"),
                                           parse_number(parts[2], line, "rc"));
        }
        if (name == "table") {
            auto halves = split(args, ';');
            if (halves.size() != 2)
                throw std::invalid_argument("table takes values; tail");
            std::vector<double> values;
            for (const auto& v : split(halves[0], ','))
                values.push_back(parse_number(v, line, "rc"));
            return DecayUtility::tabulated(std::move(values),
                                           parse_number(halves[1], line, "rc"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(ConfigError::Code::InvalidValue, line, "rc", e.what());
    }
    throw ConfigError(ConfigError::Code::TypeMismatch, line, "rc",
                      "unknown decay utility '" + name + "'");
}

NetworkUtility parse_rs(const std::string& s, int line, bool allow_negative) {
    std::string name, args;
    if (!parse_call(s, name, args))
        throw ConfigError(ConfigError::Code::TypeMismatch, line, "rs",
                          "expected linear(u0, s), logistic(k, m) or grid(p:v, ...)");
    try {
        if (name == "linear") {
            auto parts = split(args, ',');
            if (parts.size() != 2) throw std::invalid_argument("linear takes 2 arguments");
            return NetworkUtility::linear(parse_number(parts[0], line, "rs"),
                                          parse_number(parts[1], line, "rs"), allow_negative);
        }
        if (name == "logistic") {
            auto parts = split(args, ',');
            if (parts.size() != 2) throw std::invalid_argument("logistic takes 2 arguments");
            return NetworkUtility::logistic(parse_number(parts[0], line, "rs"),
                                            parse_number(parts[1], line, "rs"));
        }
        if (name == "grid") {
            std::vector<std::pair<double, double>> pts;
            for (const auto& pair : split(args, ',')) {
                auto pv = split(pair, ':');
                if (pv.size() != 2) throw std::invalid_argument("grid points are p:value");
                pts.emplace_back(parse_number(pv[0], line, "rs"),
                                 parse_number(pv[1], line, "rs"));
            }
            return NetworkUtility::tabulated(std::move(pts));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(ConfigError::Code::InvalidValue, line, "rs", e.what());
    }
    throw ConfigError(ConfigError::Code::TypeMismatch, line, "rs",
                      "unknown network utility '" + name + "'");
}

}  // namespace

SchemeSpec SchemeSpec::parse(const std::string& text) {
    SchemeSpec spec;
    if (text.empty()) throw std::invalid_argument("scheme: empty spec");
    if (text.find_first_not_of("01") == std::string::npos) {
        spec.kind = Kind::Bits;
        spec.bits = text;
        return spec;
    }
    auto parts = split(text, ':');
    const std::string& head = parts[0];
    if (head == "bits" && parts.size() == 2) {
        if (parts[1].find_first_not_of("01") != std::string::npos)
            throw std::invalid_argument("scheme: bit string must be 0/1");
        spec.kind = Kind::Bits;
        spec.bits = parts[1];
        return spec;
    }
    if (head == "cyclic" && parts.size() == 2) {
        spec.kind = Kind::Cyclic;
        spec.k = std::stoi(parts[1]);
        return spec;
    }
    if (head == "alternating" && parts.size() == 3) {
        spec.kind = Kind::Alternating;
        spec.a1 = std::stoi(parts[1]);
        spec.a2 = std::stoi(parts[2]);
        return spec;
    }
    if (head == "optimal" && parts.size() >= 2) {
        if (parts[1] == "brute" && parts.size() == 2) {
            spec.kind = Kind::OptimalBrute;
            return spec;
        }
        if (parts[1] == "arms" && parts.size() == 3) {
            spec.kind = Kind::OptimalArms;
            spec.eps = std::stod(parts[2]);
            return spec;
        }
    }
    if (head == "welfare-opt" && parts.size() == 1) {
        spec.kind = Kind::WelfareOpt;
        return spec;
    }
    if (head == "none" && parts.size() == 2 && parts[1] == "x0") {
        spec.kind = Kind::NoTraining;
        return spec;
    }
    throw std::invalid_argument("scheme: unrecognized spec '" + text + "'");
}

std::string SchemeSpec::str() const {
    switch (kind) {
        case Kind::Bits: return "bits:" + bits;
        case Kind::Cyclic: return "cyclic:" + std::to_string(k);
        case Kind::Alternating:
            return "alternating:" + std::to_string(a1) + ":" + std::to_string(a2);
        case Kind::OptimalBrute: return "optimal:brute";
        case Kind::OptimalArms: return "optimal:arms:" + num(eps);
        case Kind::WelfareOpt: return "welfare-opt";
        case Kind::NoTraining: return "none:x0";
    }
    return "";
}

RunConfig parse_config(const std::string& text) {
    std::optional<double> r, c_m, c_train, p1;
    std::optional<DecayUtility> rc;
    std::optional<std::string> rs_raw;
    int rs_line = 0;
    std::optional<Sensitivity> beta;
    std::optional<int> T;
    bool allow_negative = false;

    SchemeSpec scheme;
    std::optional<int> delta, k_max;
    std::optional<double> eps, p_hat;
    std::vector<double> p1_list;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ConfigError::Code::BadSyntax, line_no, "",
                              "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(ConfigError::Code::BadSyntax, line_no, key,
                              "expected 'key = value'");

        try {
            if (key == "r") r = parse_number(value, line_no, key);
            else if (key == "c_m") c_m = parse_number(value, line_no, key);
            else if (key == "c_train") c_train = parse_number(value, line_no, key);
            else if (key == "rc") rc = parse_rc(value, line_no);
            else if (key == "rs") { rs_raw = value; rs_line = line_no; }
            else if (key == "rs_allow_negative") allow_negative = (value == "true" || value == "1");
            else if (key == "beta") {
                if (value == "inf") beta = Sensitivity::infinite();
                else beta = Sensitivity::finite(parse_number(value, line_no, key));
            }
            else if (key == "p1") p1 = parse_number(value, line_no, key);
            else if (key == "T") T = parse_int(value, line_no, key);
            else if (key == "scheme") scheme = SchemeSpec::parse(value);
            else if (key == "delta") delta = parse_int(value, line_no, key);
            else if (key == "eps") eps = parse_number(value, line_no, key);
            else if (key == "p_hat") p_hat = parse_number(value, line_no, key);
            else if (key == "k_max") k_max = parse_int(value, line_no, key);
            else if (key == "p1_list") {
                p1_list.clear();
                for (const auto& v : split(value, ','))
                    p1_list.push_back(parse_number(v, line_no, key));
            }
            else
                throw ConfigError(ConfigError::Code::UnknownKey, line_no, key,
                                  "unknown key");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(ConfigError::Code::InvalidValue, line_no, key, e.what());
        }
    }

    auto require = [&](bool ok, const char* field) {
        if (!ok)
            throw ConfigError(ConfigError::Code::BadSyntax, line_no, field,
                              std::string("missing required key '") + field + "'");
    };
    require(r.has_value(), "r");
    require(c_m.has_value(), "c_m");
    require(c_train.has_value(), "c_train");
    require(rc.has_value(), "rc");
    require(rs_raw.has_value(), "rs");
    require(beta.has_value(), "beta");
    require(p1.has_value(), "p1");
    require(T.has_value(), "T");

    NetworkUtility rs = parse_rs(*rs_raw, rs_line, allow_negative);
    try {
        Instance inst(*r, *c_m, *c_train, std::move(*rc), std::move(rs), *beta, *p1, *T);
        return RunConfig{std::move(inst), scheme, delta, eps, p_hat, k_max, std::move(p1_list)};
    } catch (const std::exception& e) {
        throw ConfigError(ConfigError::Code::InvalidValue, line_no, "instance", e.what());
    }
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    const Instance& inst = cfg.instance;
    out << "r = " << num(inst.r) << "\n";
    out << "c_m = " << num(inst.c_m) << "\n";
    out << "c_train = " << num(inst.c_train) << "\n";
    out << "rc = " << inst.rc.describe() << "\n";
    out << "rs = " << inst.rs.describe() << "\n";
    out << "beta = " << inst.beta.describe() << "\n";
    out << "p1 = " << num(inst.p1) << "\n";
    out << "T = " << inst.T << "\n";
    out << "scheme = " << cfg.scheme.str() << "\n";
    if (cfg.delta) out << "delta = " << *cfg.delta << "\n";
    if (cfg.eps) out << "eps = " << num(*cfg.eps) << "\n";
    if (cfg.p_hat) out << "p_hat = " << num(*cfg.p_hat) << "\n";
    if (cfg.k_max) out << "k_max = " << *cfg.k_max << "\n";
    if (!cfg.p1_list.empty()) {
        out << "p1_list = ";
        for (std::size_t i = 0; i < cfg.p1_list.size(); ++i) {
            if (i) out << ", ";
            out << num(cfg.p1_list[i]);
        }
        out << "\n";
    }
    return out.str();
}

TrainingScheme resolve_scheme(const Instance& inst, const SchemeSpec& spec) {
    switch (spec.kind) {
        case SchemeSpec::Kind::Bits: {
            if (static_cast<int>(spec.bits.size()) != inst.T)
                throw std::invalid_argument("scheme: bit string length must equal T");
            std::vector<bool> bits(inst.T);
            for (int i = 0; i < inst.T; ++i) bits[i] = spec.bits[i] == '1';
            return TrainingScheme(std::move(bits));
        }
        case SchemeSpec::Kind::Cyclic:
            return cyclic_scheme(spec.k, inst.T);
        case SchemeSpec::Kind::Alternating:
            return alternating_scheme(spec.a1, spec.a2, inst.T);
        case SchemeSpec::Kind::OptimalBrute:
            return brute_force_revenue_opt(inst).scheme;
        case SchemeSpec::Kind::OptimalArms:
            return arms(inst, spec.eps).scheme;
        case SchemeSpec::Kind::WelfareOpt:
            return brute_force_welfare_opt(inst).scheme;
        case SchemeSpec::Kind::NoTraining: {
            std::vector<bool> bits(inst.T, false);
            bits[0] = true;
            return TrainingScheme(std::move(bits));
        }
    }
    throw std::invalid_argument("scheme: unresolved spec");
}

}  // namespace ecosim
