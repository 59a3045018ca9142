#pragma once

// Parameter sweeps: config files, Cartesian grids, parallel evaluation and CSV/JSON output.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "udwf/errors.hpp"
#include "udwf/qubit.hpp"
#include "udwf/rates.hpp"
#include "udwf/wightman.hpp"

namespace udwf {

enum class Quantity { RateMinus, RatePlus, Coherence, Wightman };
enum class OutputFormat { Csv, Json };
enum class Expectation { Decreasing, Increasing, BelowScalar };

struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    bool log = false;

    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            v[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start))) : start + f * (stop - start);
        }
        v.front() = start;
        v.back() = stop;
        return v;
    }
};

struct SweepConfig {
    std::string regime = "massless";
    Quantity quantity = Quantity::RateMinus;
    std::vector<GridAxis> grid;
    std::map<std::string, double> fixed;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    std::string form = "exact";
    std::int64_t kmax = default_kmax;
    bool compare_scalar = false;
    bool finite_rates = false;
    bool strict = false;
    std::vector<Expectation> expect;
    std::string title;
};

inline const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names{"abar", "mbar", "sigma", "lambda_bar", "theta",
                                                "phi",  "omega", "dtau", "epsilon"};
    return names;
}

inline bool is_parameter(const std::string& s) {
    const auto& n = parameter_names();
    return std::find(n.begin(), n.end(), s) != n.end();
}

// ---------------------------------------------------------------------------------------
// Parsing

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || s.empty()) return std::nullopt;
    return v;
}

inline bool to_bool(const std::string& s, int line) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParseError("expected a boolean, got '" + s + "'", line);
}

}  // namespace detail

/// "name:start:stop:count[:log]"
inline GridAxis parse_sweep(const std::string& spec, int line = 0) {
    const std::vector<std::string> f = detail::split(spec, ':');
    if (f.size() != 4 && f.size() != 5) throw ParseError("sweep must be name:start:stop:count[:log], got '" + spec + "'", line);
    if (!is_parameter(f[0])) throw UnknownParameterError(f[0]);
    GridAxis ax;
    ax.name = f[0];
    const auto a = detail::to_double(f[1]);
    const auto b = detail::to_double(f[2]);
    const auto c = detail::to_double(f[3]);
    if (!a || !b || !c) throw ParseError("bad number in sweep '" + spec + "'", line);
    if (*c != std::floor(*c) || *c < 2) throw ParseError("sweep count must be an integer >= 2", line);
    ax.start = *a;
    ax.stop = *b;
    ax.count = static_cast<int>(*c);
    if (f.size() == 5) {
        if (f[4] == "log") ax.log = true;
        else if (f[4] == "linear" || f[4] == "lin") ax.log = false;
        else throw ParseError("sweep spacing must be 'log' or 'linear'", line);
    }
    if (ax.log && !(ax.start > 0.0 && ax.stop > 0.0)) throw ParseError("log sweep needs positive bounds", line);
    return ax;
}

inline Quantity parse_quantity(const std::string& s, int line = 0) {
    if (s == "rate" || s == "rate_minus") return Quantity::RateMinus;
    if (s == "rate_plus") return Quantity::RatePlus;
    if (s == "coherence") return Quantity::Coherence;
    if (s == "wightman") return Quantity::Wightman;
    throw ParseError("unknown quantity '" + s + "'", line);
}

inline std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::RateMinus: return "rate";
        case Quantity::RatePlus: return "rate_plus";
        case Quantity::Coherence: return "coherence";
        case Quantity::Wightman: return "wightman";
    }
    return "unknown";
}

inline OutputFormat parse_format(const std::string& s, int line = 0) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ParseError("format must be csv or json", line);
}

inline Expectation parse_expectation(const std::string& s, int line = 0) {
    if (s == "decreasing") return Expectation::Decreasing;
    if (s == "increasing") return Expectation::Increasing;
    if (s == "below_scalar") return Expectation::BelowScalar;
    throw ParseError("unknown expectation '" + s + "'", line);
}

inline std::string to_string(Expectation e) {
    switch (e) {
        case Expectation::Decreasing: return "decreasing";
        case Expectation::Increasing: return "increasing";
        case Expectation::BelowScalar: return "below_scalar";
    }
    return "unknown";
}

/// Fix a parameter, dropping any grid axis over it.
inline void set_parameter(SweepConfig& c, const std::string& name, double value) {
    if (!is_parameter(name)) throw UnknownParameterError(name);
    c.fixed[name] = value;
    std::erase_if(c.grid, [&](const GridAxis& a) { return a.name == name; });
}

inline void apply_setting(SweepConfig& c, const std::string& key, const std::string& value, int line) {
    if (key == "regime") {
        c.regime = value;
    } else if (key == "quantity") {
        c.quantity = parse_quantity(value, line);
    } else if (key == "sweep") {
        GridAxis ax = parse_sweep(value, line);
        std::erase_if(c.grid, [&](const GridAxis& a) { return a.name == ax.name; });
        c.fixed.erase(ax.name);
        c.grid.push_back(std::move(ax));
    } else if (key == "out" || key == "output") {
        c.output_path = value;
    } else if (key == "format") {
        c.format = parse_format(value, line);
    } else if (key == "form") {
        if (value != "exact" && value != "series") throw ParseError("form must be exact or series", line);
        c.form = value;
    } else if (key == "kmax") {
        const auto v = detail::to_double(value);
        if (!v || *v < 1 || *v != std::floor(*v)) throw ParseError("kmax must be a positive integer", line);
        c.kmax = static_cast<std::int64_t>(*v);
    } else if (key == "compare_scalar") {
        c.compare_scalar = detail::to_bool(value, line);
    } else if (key == "finite_rates") {
        c.finite_rates = detail::to_bool(value, line);
    } else if (key == "strict") {
        c.strict = detail::to_bool(value, line);
    } else if (key == "expect") {
        for (const std::string& e : detail::split(value, ',')) c.expect.push_back(parse_expectation(e, line));
    } else if (key == "title") {
        c.title = value;
    } else if (key == "theta_deg") {
        const auto v = detail::to_double(value);
        if (!v) throw ParseError("bad number for theta_deg", line);
        set_parameter(c, "theta", *v * std::numbers::pi / 180.0);
    } else if (is_parameter(key)) {
        const auto v = detail::to_double(value);
        if (!v) throw ParseError("bad number for " + key + ": '" + value + "'", line);
        set_parameter(c, key, *v);
    } else {
        throw UnknownParameterError(key);
    }
}

/// `key = value` lines, '#' starts a comment. `sweep` and `expect` may repeat.
inline SweepConfig parse_config(std::istream& in, SweepConfig c = {}) {
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line);
        if (value.empty()) throw ParseError("empty value for '" + key + "'", line);
        try {
            apply_setting(c, key, value, line);
        } catch (const UnknownParameterError&) {
            throw;
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), line);
        }
    }
    return c;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
    return parse_config(in);
}

// ---------------------------------------------------------------------------------------
// Evaluation

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // numeric columns
    std::vector<std::string> validity;      // one per row; empty when the table has no flag column
    bool has_validity = false;
    std::size_t x_axis_count = 0;           // length of the first grid axis
};

struct GridPoint {
    std::map<std::string, double> values;
};

/// Cartesian product; the first axis varies fastest.
inline std::vector<GridPoint> expand_grid(const SweepConfig& c) {
    std::vector<std::vector<double>> axes;
    std::size_t total = 1;
    for (const GridAxis& ax : c.grid) {
        if (ax.count < 2) throw DomainError("grid count must be >= 2 for " + ax.name);
        axes.push_back(ax.values());
        total *= axes.back().size();
    }
    std::vector<GridPoint> pts(total, GridPoint{c.fixed});
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        for (std::size_t d = 0; d < axes.size(); ++d) {
            pts[i].values[c.grid[d].name] = axes[d][rem % axes[d].size()];
            rem /= axes[d].size();
        }
    }
    return pts;
}

inline unsigned thread_count() {
    if (const char* env = std::getenv("UDWF_THREADS")) {
        const auto v = detail::to_double(env);
        if (!v || *v < 1 || *v != std::floor(*v)) throw DomainError("UDWF_THREADS must be a positive integer");
        return static_cast<unsigned>(*v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) on up to thread_count() threads. Results land in index order;
/// if any call throws, the exception from the smallest index is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1)));
    std::mutex m;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(m);
                if (next >= n) return;
                i = next++;
            }
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

namespace detail {

inline double get(const GridPoint& p, const std::string& name, std::optional<double> fallback = std::nullopt) {
    const auto it = p.values.find(name);
    if (it != p.values.end()) return it->second;
    if (fallback) return *fallback;
    throw DomainError("missing parameter '" + name + "'");
}

inline DetectorParams detector_params(const GridPoint& p, bool need_sigma, bool need_lambda) {
    DetectorParams d;
    d.omega = get(p, "omega", 1.0);
    d.abar = get(p, "abar");
    d.mbar = get(p, "mbar", 0.0);
    d.sigma = need_sigma ? get(p, "sigma") : get(p, "sigma", std::numeric_limits<double>::infinity());
    d.lambda_bar = need_lambda ? get(p, "lambda_bar") : get(p, "lambda_bar", 1.0);
    return d;
}

struct Row {
    std::vector<double> values;
    std::string validity;
};

inline std::vector<std::string> param_columns(const SweepConfig& c, const std::vector<std::string>& relevant) {
    std::vector<std::string> cols;
    for (const std::string& n : parameter_names()) {
        const bool present = c.fixed.count(n) > 0 ||
                             std::any_of(c.grid.begin(), c.grid.end(), [&](const GridAxis& a) { return a.name == n; });
        const bool wanted = std::find(relevant.begin(), relevant.end(), n) != relevant.end();
        if (wanted || present) cols.push_back(n);
    }
    return cols;
}

}  // namespace detail

/// Coherence for one regime through the closed forms (or the density-matrix path with
/// finite-time rates when requested).
inline double regime_coherence(Regime regime, const BlochState& s, const DetectorParams& d, bool finite_rates) {
    if (finite_rates && regime != Regime::ScalarReference) {
        return qubit_state(regime, Horizon::FiniteTime, s, d).coherence_l1;
    }
    switch (regime) {
        case Regime::Massless: return coherence_massless(s, d);
        case Regime::SmallMass: return coherence_small_mass(s, d);
        case Regime::LargeMass: return coherence_large_mass(s, d);
        case Regime::ScalarReference: return coherence_scalar_reference(s, d);
    }
    throw DomainError("unknown regime");
}

/// Worldline two-point function for a regime name: massless | small-mass | large-mass | massive | scalar.
inline Complex wightman_value(const std::string& regime, const std::string& form, const RindlerPoint& p, double m,
                              std::int64_t kmax) {
    const bool series = form == "series";
    if (regime == "massless") return series ? fermion_massless_series(p, kmax) : fermion_massless_rindler(p);
    if (regime == "small-mass") return series ? wightman_small_mass_series(p, m, kmax) : wightman_small_mass(p, m);
    if (regime == "large-mass") return series ? wightman_large_mass_series(p, m, kmax) : wightman_large_mass(p, m);
    if (regime == "massive") {
        if (series) throw DomainError("the exact massive form has no series representation");
        return fermion_massive_rindler(p, m);
    }
    if (regime == "scalar") {
        if (series) throw DomainError("series form is not available for the scalar");
        return scalar_massless_rindler(p);
    }
    throw DomainError("unknown regime '" + regime + "'");
}

/// Evaluates a sweep into a table. PerturbativityError rows become NaN with validity
/// "nonperturbative" unless strict is set, in which case the error propagates.
inline SweepTable run_sweep(const SweepConfig& c) {
    const std::vector<GridPoint> pts = expand_grid(c);
    SweepTable t;
    t.x_axis_count = c.grid.empty() ? pts.size() : static_cast<std::size_t>(c.grid.front().count);

    std::vector<std::string> params;
    std::function<detail::Row(const GridPoint&)> eval;

    if (c.quantity == Quantity::Wightman) {
        t.columns = {"dtau", "re", "im"};
        eval = [&](const GridPoint& g) {
            const double a = detail::get(g, "abar") * detail::get(g, "omega", 1.0);
            const double m = detail::get(g, "mbar", 0.0) * detail::get(g, "omega", 1.0);
            const RindlerPoint p{a, detail::get(g, "dtau"), detail::get(g, "epsilon", default_epsilon(a))};
            const Complex w = wightman_value(c.regime, c.form, p, m, c.kmax);
            return detail::Row{{p.dtau, w.real(), w.imag()}, {}};
        };
    } else if (c.quantity == Quantity::Coherence) {
        const Regime regime = parse_regime(c.regime);
        params = detail::param_columns(c, {"abar", "mbar", "sigma", "lambda_bar", "theta", "phi"});
        t.columns = params;
        t.columns.push_back("coherence");
        if (c.compare_scalar) t.columns.push_back("coherence_scalar");
        t.has_validity = true;
        eval = [&, regime](const GridPoint& g) {
            const DetectorParams d = detail::detector_params(g, true, true);
            const BlochState s{detail::get(g, "theta", std::numbers::pi / 2.0), detail::get(g, "phi", 0.0)};
            detail::Row row;
            for (const std::string& n : params) {
                row.values.push_back(n == "mbar" ? d.mbar : n == "theta" ? s.theta : n == "phi" ? s.phi : detail::get(g, n));
            }
            Validity v = rate(regime, Horizon::InfiniteTime, d).validity;
            if (d.sigma < 5.0) v |= Validity::ShortInteraction;
            bool nonpert = false;
            auto eval_or_nan = [&](Regime r) {
                try {
                    return regime_coherence(r, s, d, c.finite_rates);
                } catch (const PerturbativityError&) {
                    if (c.strict) throw;
                    nonpert = true;
                    return std::numeric_limits<double>::quiet_NaN();
                }
            };
            row.values.push_back(eval_or_nan(regime));
            if (c.compare_scalar) row.values.push_back(eval_or_nan(Regime::ScalarReference));
            row.validity = nonpert ? (v.ok() ? "nonperturbative" : v.str() + "|nonperturbative") : v.str();
            if (c.strict && !v.ok()) throw PerturbativityError("validity flag '" + v.str() + "' under --strict");
            return row;
        };
    } else {
        const Regime regime = parse_regime(c.regime);
        params = detail::param_columns(c, {"abar", "mbar", "sigma", "lambda_bar"});
        t.columns = params;
        t.columns.push_back("r_minus_reported");
        t.columns.push_back("r_plus_reported");
        t.has_validity = true;
        eval = [&, regime](const GridPoint& g) {
            const DetectorParams d = detail::detector_params(g, false, false);
            const Horizon h = std::isinf(d.sigma) || regime == Regime::ScalarReference ? Horizon::InfiniteTime
                                                                                       : Horizon::FiniteTime;
            const RatePair r = rate(regime, h, d);
            const ReportedRates rep = report_rate(r, d);
            detail::Row row;
            for (const std::string& n : params) {
                row.values.push_back(n == "mbar" ? d.mbar : n == "sigma" ? d.sigma
                                                          : n == "lambda_bar" ? d.lambda_bar
                                                                              : detail::get(g, n));
            }
            row.values.push_back(rep.r_minus);
            row.values.push_back(rep.r_plus);
            row.validity = r.validity.str();
            if (c.strict && !r.validity.ok()) throw PerturbativityError("validity flag '" + row.validity + "' under --strict");
            return row;
        };
    }
    if (t.has_validity) t.columns.push_back("validity_flag");

    const std::vector<detail::Row> rows = parallel_map<detail::Row>(pts.size(), [&](std::size_t i) { return eval(pts[i]); });
    for (const detail::Row& r : rows) {
        t.rows.push_back(r.values);
        if (t.has_validity) t.validity.push_back(r.validity);
    }
    return t;
}

// ---------------------------------------------------------------------------------------
// Output

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline void write_csv(std::ostream& os, const SweepTable& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? "," : "") << format_number(t.rows[r][i]);
        if (t.has_validity) os << ',' << t.validity[r];
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const SweepTable& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            const double v = t.rows[r][i];
            if (std::isfinite(v)) row[t.columns[i]] = v;
            else row[t.columns[i]] = nullptr;
        }
        if (t.has_validity) row["validity_flag"] = t.validity[r];
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = std::move(rows);
    return j;
}

inline void write_table(std::ostream& os, const SweepTable& t, OutputFormat f) {
    if (f == OutputFormat::Csv) write_csv(os, t);
    else os << to_json(t).dump(2) << '\n';
}

/// Parses CSV written by write_csv back into a table (validity column kept as text).
inline SweepTable read_csv(std::istream& in) {
    SweepTable t;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
    t.columns = detail::split(line, ',');
    t.has_validity = !t.columns.empty() && t.columns.back() == "validity_flag";
    const std::size_t numeric = t.columns.size() - (t.has_validity ? 1 : 0);
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        const std::vector<std::string> f = detail::split(line, ',');
        if (f.size() != t.columns.size()) throw ParseError("column count mismatch", n);
        std::vector<double> row;
        for (std::size_t i = 0; i < numeric; ++i) {
            const std::string& s = f[i];
            if (s == "nan" || s == "-nan") row.push_back(std::numeric_limits<double>::quiet_NaN());
            else if (s == "inf") row.push_back(std::numeric_limits<double>::infinity());
            else if (const auto v = detail::to_double(s)) row.push_back(*v);
            else throw ParseError("bad number '" + s + "'", n);
        }
        t.rows.push_back(std::move(row));
        if (t.has_validity) t.validity.push_back(f.back());
    }
    return t;
}

// ---------------------------------------------------------------------------------------
// Trend checks

struct TrendCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Checks each expectation family by family along the first grid axis.
inline std::vector<TrendCheck> check_expectations(const SweepConfig& c, const SweepTable& t) {
    std::vector<TrendCheck> out;
    if (c.expect.empty()) return out;
    const std::size_t nx = t.x_axis_count;
    const std::string primary = c.quantity == Quantity::Coherence ? "coherence"
                                : c.quantity == Quantity::RatePlus ? "r_plus_reported"
                                                                   : "r_minus_reported";
    auto col = [&](const std::string& n) -> std::ptrdiff_t {
        const auto it = std::find(t.columns.begin(), t.columns.end(), n);
        return it == t.columns.end() ? -1 : it - t.columns.begin();
    };
    const std::ptrdiff_t ip = col(primary);
    const std::ptrdiff_t is = col("coherence_scalar");
    const std::string axis = c.grid.empty() ? "" : c.grid.front().name;
    const std::ptrdiff_t ia = std::max<std::ptrdiff_t>(col(axis), 0);

    for (Expectation e : c.expect) {
        TrendCheck chk;
        chk.name = to_string(e) + " in " + axis;
        chk.pass = nx >= 20 && ip >= 0;
        std::ostringstream why;
        if (nx < 20) why << "only " << nx << " points along " << axis << "; ";
        std::size_t violations = 0;
        std::string first;
        for (std::size_t start = 0; ip >= 0 && start + nx <= t.rows.size(); start += nx) {
            for (std::size_t i = 0; i < nx; ++i) {
                const auto& row = t.rows[start + i];
                bool bad = false;
                if (e == Expectation::BelowScalar) {
                    bad = is < 0 || !(row[ip] < row[is]);
                } else if (i > 0) {
                    const double prev = t.rows[start + i - 1][ip];
                    bad = e == Expectation::Decreasing ? !(row[ip] < prev) : !(row[ip] > prev);
                }
                if (bad) {
                    ++violations;
                    if (first.empty()) {
                        std::ostringstream f;
                        f << "row " << (start + i + 1) << " (" << axis << "=" << format_number(row[ia]) << ")";
                        first = f.str();
                    }
                }
            }
        }
        if (violations > 0) {
            chk.pass = false;
            why << violations << " violation(s), first at " << first;
        }
        chk.detail = why.str().empty() ? "ok" : why.str();
        out.push_back(std::move(chk));
    }
    return out;
}

}  // namespace udwf
