// udwf: rate, coherence and two-point-function sweeps, plus the verification suite.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udwf/udwf.hpp"

#ifndef UDWF_CONFIG_DIR
#define UDWF_CONFIG_DIR "configs"
#endif

namespace {

enum Exit : int { Ok = 0, VerifyFailed = 1, Usage = 2, Numerical = 3 };

struct SweepFlags {
    std::optional<std::string> config;
    std::optional<std::string> regime;
    std::vector<std::string> sweeps;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> form;
    std::optional<std::int64_t> kmax;
    std::optional<double> theta_deg;
    std::vector<std::pair<std::string, std::optional<double>>> params{
        {"abar", {}}, {"mbar", {}},  {"sigma", {}}, {"lambda_bar", {}}, {"theta", {}},
        {"phi", {}},  {"omega", {}}, {"dtau", {}},  {"epsilon", {}}};
    bool strict = false;
    bool compare_scalar = false;
    bool finite_rates = false;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--config", f.config, "config file; flags override its values")->check(CLI::ExistingFile);
    cmd->add_option("--regime", f.regime, "massless | small-mass | large-mass | scalar");
    cmd->add_option("--sweep", f.sweeps, "name:start:stop:count[:log], repeatable; first varies fastest");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_flag("--strict", f.strict, "fail with exit 3 on validity or perturbativity violations");
    for (auto& [name, value] : f.params) {
        std::string flag = "--" + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        cmd->add_option(flag, value);
    }
    cmd->add_option("--theta-deg", f.theta_deg, "theta in degrees");
}

udwf::SweepConfig build_config(const SweepFlags& f, udwf::Quantity q) {
    udwf::SweepConfig c = f.config ? udwf::load_config(*f.config) : udwf::SweepConfig{};
    const bool is_rate = c.quantity == udwf::Quantity::RateMinus || c.quantity == udwf::Quantity::RatePlus;
    if (!(q == udwf::Quantity::RateMinus && is_rate)) c.quantity = q;
    if (f.regime) udwf::apply_setting(c, "regime", *f.regime, 0);
    for (const std::string& s : f.sweeps) udwf::apply_setting(c, "sweep", s, 0);
    for (const auto& [name, value] : f.params) {
        if (value) udwf::set_parameter(c, name, *value);
    }
    if (f.theta_deg) udwf::set_parameter(c, "theta", *f.theta_deg * std::numbers::pi / 180.0);
    if (f.out) c.output_path = *f.out;
    if (f.format) c.format = udwf::parse_format(*f.format);
    if (f.form) udwf::apply_setting(c, "form", *f.form, 0);
    if (f.kmax) udwf::apply_setting(c, "kmax", std::to_string(*f.kmax), 0);
    c.strict = c.strict || f.strict;
    c.compare_scalar = c.compare_scalar || f.compare_scalar;
    c.finite_rates = c.finite_rates || f.finite_rates;
    return c;
}

void check_required(const udwf::SweepConfig& c, const std::vector<std::string>& names) {
    for (const std::string& n : names) {
        const bool swept = std::any_of(c.grid.begin(), c.grid.end(), [&](const udwf::GridAxis& a) { return a.name == n; });
        if (!swept && c.fixed.count(n) == 0) throw udwf::DomainError("missing required parameter --" + n);
    }
}

int run_table(const udwf::SweepConfig& c) {
    const udwf::SweepTable t = udwf::run_sweep(c);
    if (c.output_path.empty()) {
        udwf::write_table(std::cout, t, c.format);
    } else {
        std::ofstream os(c.output_path, std::ios::binary);
        if (!os) throw udwf::DomainError("cannot write '" + c.output_path + "'");
        udwf::write_table(os, t, c.format);
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unruh-DeWitt detectors coupled to a fermionic field: rates, qubit coherence, verification"};
    app.require_subcommand(1);

    SweepFlags rate_flags, coh_flags, w_flags;
    CLI::App* rate = app.add_subcommand("rate", "excitation and de-excitation rates over a grid");
    add_sweep_flags(rate, rate_flags);

    CLI::App* coh = app.add_subcommand("coherence", "l1 coherence of the detector qubit over a grid");
    add_sweep_flags(coh, coh_flags);
    coh->add_flag("--compare-scalar", coh_flags.compare_scalar, "add the scalar-reference coherence column");
    coh->add_flag("--finite-rates", coh_flags.finite_rates, "use the sigma^-2 corrected rates");

    CLI::App* wcmd = app.add_subcommand("wightman", "worldline two-point function");
    add_sweep_flags(wcmd, w_flags);
    wcmd->add_option("--form", w_flags.form, "exact | series");
    wcmd->add_option("--kmax", w_flags.kmax, "pole-series truncation");

    CLI::App* ver = app.add_subcommand("verify", "closed forms against independent numerical oracles");
    std::vector<std::string> only;
    std::optional<std::string> json_path;
    std::string config_dir = UDWF_CONFIG_DIR;
    ver->add_option("--only", only, "comma-separated groups")->delimiter(',');
    ver->add_option("--json", json_path, "write the report as JSON");
    ver->add_option("--config-dir", config_dir, "directory holding fig2.cfg ... fig8.cfg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*rate) return run_table(build_config(rate_flags, udwf::Quantity::RateMinus));
        if (*coh) {
            const udwf::SweepConfig c = build_config(coh_flags, udwf::Quantity::Coherence);
            check_required(c, {"abar", "sigma", "lambda_bar"});
            return run_table(c);
        }
        if (*wcmd) {
            const udwf::SweepConfig c = build_config(w_flags, udwf::Quantity::Wightman);
            check_required(c, {"abar", "dtau"});
            return run_table(c);
        }
        if (*ver) {
            udwf::VerifyOptions opt;
            opt.config_dir = config_dir;
            const auto results = udwf::run_verify(only, opt);
            udwf::print_reports(std::cout, results);
            const auto j = udwf::reports_to_json(results);
            if (json_path) {
                std::ofstream os(*json_path);
                if (!os) throw udwf::DomainError("cannot write '" + *json_path + "'");
                os << j.dump(2) << '\n';
            }
            return j["pass"].get<bool>() ? Ok : VerifyFailed;
        }
    } catch (const udwf::PerturbativityError& e) {
        std::cerr << "udwf: " << e.what() << '\n';
        return Numerical;
    } catch (const udwf::ConvergenceError& e) {
        std::cerr << "udwf: " << e.what() << '\n';
        return Numerical;
    } catch (const udwf::AccuracyError& e) {
        std::cerr << "udwf: " << e.what() << '\n';
        return Numerical;
    } catch (const udwf::Error& e) {
        std::cerr << "udwf: " << e.what() << '\n';
        return Usage;
    }
    return Usage;
}
