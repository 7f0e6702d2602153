// Command-line front end: parses a family config, dispatches to the library
// and renders JSON reports plus CSV tables.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xygibbs/ergodic.hpp"
#include "xygibbs/ldp.hpp"
#include "xygibbs/measure.hpp"
#include "xygibbs/potential.hpp"
#include "xygibbs/quadrature.hpp"
#include "xygibbs/report.hpp"
#include "xygibbs/transfer.hpp"

namespace {

using nlohmann::json;
using namespace xygibbs;

struct Options {
    std::string config_path;
    std::string command;
    std::string beta_arg;
    std::string cylinder_arg;
    std::string out_path;
    std::uint64_t seed = 1770;
    double tol = 1e-10;
    std::size_t count = 10000;
};

struct TableOutput {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::vector<double> parse_betas(const std::string& arg) {
    std::vector<double> betas;
    if (arg.empty()) return betas;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            betas.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("cannot parse beta value '" + item + "'");
        }
    }
    return betas;
}

Cylinder parse_cylinder(const std::string& arg) {
    try {
        const json j = json::parse(arg);
        std::vector<Interval> boxes;
        for (const auto& b : j) {
            if (!b.is_array() || b.size() != 2)
                throw ConfigError("cylinder boxes must be [lo, hi] pairs");
            boxes.emplace_back(b[0].get<double>(), b[1].get<double>());
        }
        return Cylinder(std::move(boxes));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot parse cylinder: ") + e.what());
    }
}

double require_single_beta(const std::vector<double>& betas) {
    if (betas.size() != 1)
        throw ConfigError("this command needs exactly one --beta value");
    return betas[0];
}

void require_positive(const std::vector<double>& betas) {
    for (double b : betas)
        if (!(b > 0.0)) throw ConfigError("this command needs beta > 0");
}

std::vector<EventuallyConstantPoint> random_points(const Interval& dom,
                                                   std::uint64_t seed,
                                                   std::size_t count,
                                                   std::size_t max_prefix) {
    std::mt19937_64 rng(seed);
    auto unif = [&rng, &dom]() {
        return dom.lo + dom.width() * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<EventuallyConstantPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = rng() % (max_prefix + 1);
        std::vector<double> prefix(n);
        for (double& v : prefix) v = unif();
        points.emplace_back(std::move(prefix), unif());
    }
    return points;
}

json peaks_to_json(const MaximaReport& report) {
    json peaks = json::array();
    for (const Peak& p : report.peaks) {
        peaks.push_back({{"location", p.location},
                         {"second_derivative", p.second_derivative},
                         {"interior", p.interior}});
    }
    return peaks;
}

json run_command(const Options& opt, const PotentialFamily& family,
                 const std::vector<double>& betas, TableOutput& table) {
    json out;

    if (opt.command == "pressure") {
        require_positive(betas);
        if (betas.empty()) throw ConfigError("pressure needs --beta");
        table.columns = {"beta", "log_lambda", "pressure_over_beta"};
        double err = 0.0;
        for (double beta : betas) {
            const auto part = log_partition(family, beta, opt.tol);
            table.rows.push_back(
                {beta, part.log_value, part.log_value / beta});
            err = std::max(err,
                           part.raw.abs_error_estimate / part.raw.value);
        }
        out["log_error_estimate"] = err;
        return out;
    }

    if (opt.command == "entropy") {
        if (betas.empty()) throw ConfigError("entropy needs --beta");
        table.columns = {"beta", "entropy", "mean_f", "log_lambda",
                         "variational_residual"};
        for (double beta : betas) {
            const double h = entropy(family, beta);
            const double m = mean_f(family, beta);
            const double ll = log_partition(family, beta, opt.tol).log_value;
            table.rows.push_back(
                {beta, h, m, ll, std::abs(ll - h - beta * m)});
        }
        return out;
    }

    if (opt.command == "density") {
        const double beta = require_single_beta(betas);
        const MarginalSpec spec = MarginalSpec::tilde(family, beta, opt.tol);
        const Interval dom = family.domain();
        table.columns = {"a", "density"};
        const int n = 1025;
        for (int i = 0; i < n; ++i) {
            const double a =
                dom.lo + dom.width() * static_cast<double>(i) / (n - 1);
            table.rows.push_back({a, std::exp(spec.log_density(a))});
        }
        out["log_lambda"] = spec.eigen().log_lambda;
        return out;
    }

    if (opt.command == "cylinder") {
        const double beta = require_single_beta(betas);
        if (opt.cylinder_arg.empty()) throw ConfigError("cylinder needs --cylinder");
        const Cylinder D = parse_cylinder(opt.cylinder_arg);
        const MarginalSpec spec = MarginalSpec::tilde(family, beta, opt.tol);
        const double log_mass = cylinder_mass(spec, D);
        out["log_mass"] = log_mass;
        out["mass"] = std::exp(log_mass);
        return out;
    }

    if (opt.command == "eigencheck") {
        if (betas.empty()) throw ConfigError("eigencheck needs --beta");
        const auto points = random_points(family.domain(), opt.seed, 10, 5);
        table.columns = {"beta", "max_eigen_residual", "dual_residual_depth1",
                         "dual_residual_depth2"};
        for (double beta : betas) {
            const EigenData eig = compute_eigendata(family, beta, opt.tol);
            double worst = 0.0;
            for (const auto& x : points)
                worst = std::max(worst, eigen_residual(eig, x, opt.tol));
            const double d1 = dual_fixed_point_residual(
                eig, {[](double t) { return t * t; }}, opt.tol);
            const double d2 = dual_fixed_point_residual(
                eig, {[](double t) { return t; }, [](double t) { return t; }},
                opt.tol);
            table.rows.push_back({beta, worst, d1, d2});
        }
        return out;
    }

    if (opt.command == "subaction") {
        const auto points = random_points(family.domain(), opt.seed, 20, 5);
        const MaximaReport report = find_maxima(family);
        double worst = 0.0;
        json pts = json::array();
        for (const auto& x : points) {
            const double res = calibration_residual(family, x);
            worst = std::max(worst, res);
            pts.push_back({{"prefix", x.prefix()},
                           {"tail", x.tail_value()},
                           {"u", eval_u(family, x).value},
                           {"residual", res}});
        }
        out["m_f"] = report.m_f;
        out["max_calibration_residual"] = worst;
        out["points"] = pts;
        return out;
    }

    if (opt.command == "maximize") {
        const MaximaReport report = find_maxima(family, opt.tol);
        out["m_f"] = report.m_f;
        out["peaks"] = peaks_to_json(report);
        return out;
    }

    if (opt.command == "select") {
        const SelectionReport sel = selection_weights(find_maxima(family, opt.tol));
        out["m_f"] = sel.report.m_f;
        out["peaks"] = peaks_to_json(sel.report);
        out["weights"] = sel.weights;
        return out;
    }

    if (opt.command == "sweep") {
        if (opt.cylinder_arg.empty()) throw ConfigError("sweep needs --cylinder");
        const Cylinder D = parse_cylinder(opt.cylinder_arg);
        const auto rows = beta_sweep(family, D, betas);
        table.columns = {"beta", "log_mass", "pressure_over_beta"};
        for (const auto& r : rows)
            table.rows.push_back({r.beta, r.log_mass, r.pressure_over_beta});
        return out;
    }

    if (opt.command == "ldp") {
        if (opt.cylinder_arg.empty()) throw ConfigError("ldp needs --cylinder");
        const Cylinder D = parse_cylinder(opt.cylinder_arg);
        const auto rows = ldp_residual(family, D, betas);
        table.columns = {"beta", "log_mass_over_beta", "neg_inf_I", "residual"};
        for (const auto& r : rows)
            table.rows.push_back(
                {r.beta, r.log_mass_over_beta, r.neg_inf_I, r.residual});
        out["neg_inf_I"] = rows.empty() ? 0.0 : rows.front().neg_inf_I;
        return out;
    }

    if (opt.command == "laplace") {
        require_positive(betas);
        if (betas.empty()) throw ConfigError("laplace needs --beta");
        const MaximaReport report = find_maxima(family, opt.tol);
        if (report.peaks.size() != 1)
            throw XygibbsError(ErrorCode::unsupported_multiplicity,
                               "laplace: needs exactly one maximizing peak");
        const Peak& p = report.peaks.front();
        if (!p.interior)
            throw XygibbsError(ErrorCode::endpoint_peak,
                               "laplace: the maximum sits on the boundary");
        table.columns = {"beta", "log_quadrature", "log_laplace",
                         "ratio_minus_1"};
        for (double beta : betas) {
            const double lq = log_partition(family, beta, opt.tol).log_value;
            const double la =
                laplace_approx(report.m_f, p.second_derivative, beta);
            table.rows.push_back({beta, lq, la, std::expm1(lq - la)});
        }
        return out;
    }

    if (opt.command == "sample") {
        const double beta = require_single_beta(betas);
        const MarginalSpec spec = MarginalSpec::tilde(family, beta, opt.tol);
        const auto draws = sample_marginal(spec, opt.seed, opt.count);
        table.columns = {"sample"};
        double mean = 0.0;
        for (double d : draws) {
            table.rows.push_back({d});
            mean += d;
        }
        out["empirical_mean"] = draws.empty() ? 0.0 : mean / draws.size();
        return out;
    }

    throw ConfigError("unknown command '" + opt.command + "'");
}

int run(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();

    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot read config file: " + opt.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string config_text = buf.str();
    const PotentialFamily family = PotentialFamily::from_config_text(config_text);

    Options opt_resolved = opt;
    if (opt_resolved.cylinder_arg.empty()) {
        // the cylinder may come from the config file instead of the flag
        try {
            const json cfg = json::parse(config_text);
            if (cfg.contains("cylinder"))
                opt_resolved.cylinder_arg = cfg.at("cylinder").dump();
        } catch (...) {
        }
    }
    const Options& ropt = opt_resolved;

    const std::vector<double> betas = parse_betas(ropt.beta_arg);

    TableOutput table;
    json outputs = run_command(ropt, family, betas, table);

    json report;
    report["schema"] = 1;
    report["command"] = ropt.command;
    report["config"] = json::parse(family.config_echo());
    report["inputs"] = {{"beta", betas},
                        {"seed", ropt.seed},
                        {"tol", ropt.tol},
                        {"count", ropt.count}};
    if (!ropt.cylinder_arg.empty())
        report["inputs"]["cylinder"] = json::parse(ropt.cylinder_arg);
    report["outputs"] = outputs;
    if (!table.columns.empty() && (ropt.out_path.size() < 4 ||
                                   ropt.out_path.substr(ropt.out_path.size() - 4) !=
                                       ".csv")) {
        report["outputs"]["columns"] = table.columns;
        report["outputs"]["rows"] = table.rows;
    }

    const auto t1 = std::chrono::steady_clock::now();
    report["wall_time_seconds"] =
        std::chrono::duration<double>(t1 - t0).count();

    if (!ropt.out_path.empty() &&
        ropt.out_path.size() >= 4 &&
        ropt.out_path.substr(ropt.out_path.size() - 4) == ".csv") {
        if (table.columns.empty())
            throw ConfigError("command '" + ropt.command +
                              "' produces no CSV table");
        std::ofstream csv(ropt.out_path, std::ios::binary);
        if (!csv) throw ConfigError("cannot write " + ropt.out_path);
        csv << render_csv(table.columns, table.rows);
        std::cout << report.dump(2) << "\n";
    } else if (!ropt.out_path.empty()) {
        std::ofstream jf(ropt.out_path, std::ios::binary);
        if (!jf) throw ConfigError("cannot write " + ropt.out_path);
        jf << report.dump(2) << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return 0;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::config_parse: return 2;
        case ErrorCode::domain:
        case ErrorCode::divergence:
        case ErrorCode::accuracy: return 3;
        default: return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"thermodynamic formalism for product-type potentials on the XY model"};
    app.add_option("--config", opt.config_path, "family configuration file (JSON)")
        ->required();
    app.add_option("--command", opt.command,
                   "pressure|entropy|density|cylinder|eigencheck|subaction|"
                   "maximize|select|sweep|ldp|laplace|sample")
        ->required();
    app.add_option("--beta", opt.beta_arg, "inverse temperature(s), comma separated");
    app.add_option("--cylinder", opt.cylinder_arg, "cylinder JSON [[lo,hi],...]");
    app.add_option("--out", opt.out_path,
                   "output path; *.csv selects the tabular output");
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--tol", opt.tol, "quadrature tolerance");
    app.add_option("--count", opt.count, "sample count for the sample command");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        return run(opt);
    } catch (const XygibbsError& e) {
        nlohmann::json err = {{"error", error_code_name(e.code())},
                              {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", "config_parse"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
