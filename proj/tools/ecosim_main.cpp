#include "ecosim/config.hpp"
#include "ecosim/errors.hpp"
#include "ecosim/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// Exit codes by error class.
constexpr int kExitParse = 2;
constexpr int kExitEligibility = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitConvergence = 5;

int env_thread_cap() {
    const char* v = std::getenv("ECOSIM_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::string scheme;
    double eps = -1.0;
    int delta = -1;
    double p_hat = -1.0;
    int k_max = -1;
    std::string p1_list;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "instance config file")->required();
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--scheme", opt.scheme, "scheme spec, overrides the config");
    cmd->add_option("--eps", opt.eps, "grid step / estimate radius");
    cmd->add_option("--delta", opt.delta, "window length");
    cmd->add_option("--p-hat", opt.p_hat, "proportion estimate");
    cmd->add_option("--k-max", opt.k_max, "largest cycle length");
    cmd->add_option("--p1-list", opt.p1_list, "comma-separated initial proportions");
}

ecosim::RunConfig load(const Options& opt) {
    ecosim::RunConfig cfg = ecosim::parse_config(read_file(opt.config_path));
    if (!opt.scheme.empty()) cfg.scheme = ecosim::SchemeSpec::parse(opt.scheme);
    if (opt.eps >= 0.0) cfg.eps = opt.eps;
    if (opt.delta >= 0) cfg.delta = opt.delta;
    if (opt.p_hat >= 0.0) cfg.p_hat = opt.p_hat;
    if (opt.k_max >= 0) cfg.k_max = opt.k_max;
    if (!opt.p1_list.empty()) {
        cfg.p1_list.clear();
        std::istringstream ss(opt.p1_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.p1_list.push_back(std::stod(tok));
    }
    return cfg;
}

int with_output(const Options& opt, const std::function<void(std::ostream&)>& fn) {
    if (opt.out_path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    fn(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation, optimization and regulation toolkit for two-platform "
                 "training-scheme dynamics"};
    app.require_subcommand(1);

    Options opt;
    auto* sim = app.add_subcommand("simulate", "write the trajectory CSV for a scheme");
    auto* optimize = app.add_subcommand("optimize", "report the revenue-maximizing scheme");
    auto* cyc = app.add_subcommand("cyclic", "write the asymptotic cycle revenue table");
    auto* reg = app.add_subcommand("regulate", "write the social-benefit verdict report");
    auto* poa = app.add_subcommand("poa", "print the price of anarchy");
    auto* fig1 = app.add_subcommand("figure1", "write cumulative welfare of the canonical schemes");
    auto* fig2 = app.add_subcommand("figure2", "write proportion paths for several starts");
    for (auto* cmd : {sim, optimize, cyc, reg, poa, fig1, fig2}) add_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        ecosim::RunConfig cfg = load(opt);
        const ecosim::Instance& inst = cfg.instance;
        ecosim::BruteForceOptions bf;
        bf.threads = env_thread_cap();

        if (sim->parsed()) {
            ecosim::TrainingScheme scheme = ecosim::resolve_scheme(inst, cfg.scheme);
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_trajectory_csv(out, inst, scheme);
            });
        }
        if (optimize->parsed()) {
            ecosim::OptimizationResult result =
                cfg.scheme.kind == ecosim::SchemeSpec::Kind::OptimalArms
                    ? ecosim::arms(inst, cfg.scheme.eps)
                : cfg.scheme.kind == ecosim::SchemeSpec::Kind::WelfareOpt
                    ? ecosim::brute_force_welfare_opt(inst, bf)
                    : ecosim::brute_force_revenue_opt(inst, bf);
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_optimization_report(out, result);
            });
        }
        if (cyc->parsed()) {
            int k_max = cfg.k_max.value_or(8);
            int a1 = 0, a2 = 0;
            if (cfg.scheme.kind == ecosim::SchemeSpec::Kind::Alternating) {
                a1 = cfg.scheme.a1;
                a2 = cfg.scheme.a2;
            }
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_cycle_table_csv(out, inst, k_max, a1, a2);
            });
        }
        if (reg->parsed()) {
            if (!cfg.delta) throw std::runtime_error("regulate: delta is required");
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_regulator_report(out, inst, *cfg.delta, cfg.p_hat, cfg.eps);
            });
        }
        if (poa->parsed()) {
            return with_output(opt, [&](std::ostream& out) { ecosim::write_poa(out, inst); });
        }
        if (fig1->parsed()) {
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_figure1_csv(out, inst);
            });
        }
        if (fig2->parsed()) {
            std::vector<double> p1s = cfg.p1_list;
            if (p1s.empty()) p1s = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
            return with_output(opt, [&](std::ostream& out) {
                ecosim::write_figure2_csv(out, inst, p1s);
            });
        }
    } catch (const ecosim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ecosim::EligibilityError& e) {
        std::cerr << "eligibility error: " << e.what() << "\n";
        return kExitEligibility;
    } catch (const ecosim::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ecosim::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
