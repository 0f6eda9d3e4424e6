#pragma once

// Command-line front end. Every subcommand streams OutputRecords as CSV
// (header row, 17 significant digits) or JSON lines. stdout carries data,
// stderr diagnostics. Exit codes: 0 all ok, 1 a check failed or a record
// carries status "error", 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nbtail/nbtail.hpp"

namespace nbtail::cli {

enum class Status { ok, failed, error };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::failed: return "failed";
        case Status::error: return "error";
    }
    return "error";
}

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using Fields = std::vector<std::pair<std::string, Value>>;

struct OutputRecord {
    std::string command;
    Fields inputs;
    Fields outputs;
    Status status = Status::ok;
};

enum class Format { csv, json };

/// Raised for bad flag values; maps to exit code 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_cell(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string quoted = "\"";
            for (char c : s) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            return quoted + "\"";
        }
    };
    return std::visit(Visitor{}, v);
}

inline nlohmann::ordered_json json_value(const Value& v) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
        nlohmann::ordered_json operator()(double d) const {
            if (!std::isfinite(d)) return nullptr;
            return d;
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

/// Writes records against a fixed column schema so identical inputs give identical bytes.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format, std::vector<std::string> input_keys,
                 std::vector<std::string> output_keys)
        : out_(out), format_(format), input_keys_(std::move(input_keys)),
          output_keys_(std::move(output_keys)) {}

    void write(const OutputRecord& rec) {
        worst_ = std::max(worst_, rec.status == Status::ok ? 0 : 1);
        if (format_ == Format::json) {
            nlohmann::ordered_json obj;
            obj["command"] = rec.command;
            obj["inputs"] = section(rec.inputs, input_keys_);
            obj["outputs"] = section(rec.outputs, output_keys_);
            obj["status"] = to_string(rec.status);
            out_ << obj.dump() << '\n';
            return;
        }
        if (!header_written_) {
            out_ << "command";
            for (const auto& k : input_keys_) out_ << ',' << k;
            for (const auto& k : output_keys_) out_ << ',' << k;
            out_ << ",status\n";
            header_written_ = true;
        }
        out_ << rec.command;
        for (const auto& k : input_keys_) out_ << ',' << csv_cell(lookup(rec.inputs, k));
        for (const auto& k : output_keys_) out_ << ',' << csv_cell(lookup(rec.outputs, k));
        out_ << ',' << to_string(rec.status) << '\n';
    }

    /// 0 when every record so far had status ok, else 1.
    [[nodiscard]] int exit_code() const { return worst_; }

private:
    static Value lookup(const Fields& fields, const std::string& key) {
        for (const auto& [k, v] : fields) {
            if (k == key) return v;
        }
        return std::monostate{};
    }

    static nlohmann::ordered_json section(const Fields& fields, const std::vector<std::string>& keys) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& k : keys) {
            const Value v = lookup(fields, k);
            if (!std::holds_alternative<std::monostate>(v)) obj[k] = json_value(v);
        }
        return obj;
    }

    std::ostream& out_;
    Format format_;
    std::vector<std::string> input_keys_;
    std::vector<std::string> output_keys_;
    bool header_written_ = false;
    int worst_ = 0;
};

// --- flag parsing ---------------------------------------------------------

/// A numeric flag value kept both exactly and as the nearest double.
struct Number {
    Rational exact;
    double value = 0.0;
    std::string text;
};

inline Number parse_number(const std::string& flag, const std::string& text) {
    try {
        Number n{parse_rational(text), 0.0, text};
        n.value = to_double(n.exact);
        return n;
    } catch (const domain_error&) {
        throw usage_error("--" + flag + ": cannot parse '" + text + "'");
    }
}

inline std::vector<Number> parse_list(const std::string& flag, const std::string& text) {
    std::vector<Number> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(flag, item));
    if (out.empty()) throw usage_error("--" + flag + ": empty list");
    return out;
}

inline std::vector<Number> parse_shapes(const std::string& text) {
    std::vector<Number> rs = parse_list("r", text);
    for (const auto& r : rs) {
        if (!(r.exact > 0) || !std::isfinite(r.value)) throw usage_error("--r must be positive");
    }
    return rs;
}

inline Number check_probability(Number p) {
    if (!(p.exact > 0 && p.exact <= 1)) throw usage_error("--p must lie in (0, 1], got " + p.text);
    return p;
}

/// Inclusive grid start:stop:count. A p = 0 endpoint is moved to the first
/// positive grid step.
inline std::vector<Number> parse_p_grid(const std::string& text, std::ostream& err) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw usage_error("--grid expects start:stop:count");
    const Number start = parse_number("grid", parts[0]);
    const Number stop = parse_number("grid", parts[1]);
    long long count = 0;
    try {
        std::size_t used = 0;
        count = std::stoll(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw usage_error("--grid count must be an integer");
    }
    if (count < 1) throw usage_error("--grid count must be at least 1");
    if (count == 1 && start.exact != stop.exact) throw usage_error("--grid with count 1 needs start == stop");
    if (stop.exact < start.exact) throw usage_error("--grid needs start <= stop");

    std::vector<Number> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const Rational step = count > 1 ? Rational(stop.exact - start.exact) / (count - 1) : Rational(0);
    for (long long i = 0; i < count; ++i) {
        Rational x = start.exact + step * i;
        if (x == 0) {
            if (step == 0) throw usage_error("--grid: p = 0 is outside (0, 1]");
            err << "warning: p = 0 is outside (0, 1]; using " << format_double(to_double(step))
                << " instead\n";
            x = step;
        }
        Number n{x, to_double(x), x.str()};
        grid.push_back(check_probability(n));
    }
    return grid;
}

inline bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

struct Options {
    std::string r = "1";
    std::optional<std::string> p;
    std::optional<std::string> grid;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> n_max;
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::uint64_t draws = 1000000;
    std::string format = "csv";
    std::string suite = "all";
    bool r_given = false;
};

inline std::vector<Number> p_values(const Options& o, std::ostream& err) {
    if (o.grid && o.p) throw usage_error("give either --p or --grid, not both");
    if (o.grid) return parse_p_grid(*o.grid, err);
    if (!o.p) throw usage_error("--p or --grid is required");
    std::vector<Number> ps;
    for (auto& p : parse_list("p", *o.p)) ps.push_back(check_probability(p));
    return ps;
}

// --- subcommands ----------------------------------------------------------

template <class Fn>
void guarded(RecordWriter& w, OutputRecord rec, Fn&& compute) {
    try {
        compute(rec);
    } catch (const std::exception& e) {
        rec.status = Status::error;
        rec.outputs.emplace_back("detail", std::string(e.what()));
    }
    w.write(rec);
}

inline int cmd_pmf(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    const auto rs = parse_shapes(o.r);
    const auto ps = p_values(o, err);
    std::uint64_t lo = 0;
    std::uint64_t hi = o.n_max.value_or(0);
    if (o.n) lo = hi = *o.n;
    RecordWriter w(out, f, {"r", "p", "l"}, {"pmf", "detail"});
    for (const auto& r : rs) {
        for (const auto& p : ps) {
            for (std::uint64_t l = lo; l <= hi; ++l) {
                guarded(w, {"pmf", {{"r", r.value}, {"p", p.value}, {"l", as_int(l)}}, {}, Status::ok},
                        [&](OutputRecord& rec) {
                            rec.outputs.emplace_back("pmf", nb_pmf({r.value, p.value}, l).value);
                        });
            }
        }
    }
    return w.exit_code();
}

inline int cmd_cdf(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    const auto rs = parse_shapes(o.r);
    const auto ps = p_values(o, err);
    std::uint64_t lo = 0;
    std::uint64_t hi = o.n_max.value_or(0);
    if (o.n) lo = hi = *o.n;
    RecordWriter w(out, f, {"r", "p", "n"},
                   {"cdf_sum", "cdf_beta", "abs_diff", "exact", "exact_value", "detail"});
    for (const auto& r : rs) {
        for (const auto& p : ps) {
            for (std::uint64_t n = lo; n <= hi; ++n) {
                guarded(w, {"cdf", {{"r", r.value}, {"p", p.value}, {"n", as_int(n)}}, {}, Status::ok},
                        [&](OutputRecord& rec) {
                            const NBParams params(r.value, p.value);
                            const double s = nb_cdf_sum(params, n).value;
                            const double b = nb_cdf_beta(params, n).value;
                            rec.outputs.emplace_back("cdf_sum", s);
                            rec.outputs.emplace_back("cdf_beta", b);
                            rec.outputs.emplace_back("abs_diff", std::abs(s - b));
                            if (is_integer(r.exact)) {
                                const Rational exact = exact_cdf_rational(
                                    r.exact.convert_to<std::uint64_t>(), p.exact, n);
                                rec.outputs.emplace_back("exact", exact.str());
                                rec.outputs.emplace_back("exact_value", to_double(exact));
                            }
                        });
            }
        }
    }
    return w.exit_code();
}

inline int cmd_mean_tail(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    const auto rs = parse_shapes(o.r);
    const auto ps = p_values(o, err);
    RecordWriter w(out, f, {"r", "p"}, {"n", "mean", "value", "infimum", "detail"});
    for (const auto& r : rs) {
        for (const auto& p : ps) {
            guarded(w, {"mean-tail", {{"r", r.value}, {"p", p.value}}, {}, Status::ok},
                    [&](OutputRecord& rec) {
                        const NBParams params(r.value, p.value);
                        const std::uint64_t n = mean_interval_index(r.exact, p.exact).n;
                        rec.outputs.emplace_back("n", as_int(n));
                        rec.outputs.emplace_back("mean", nb_mean(params));
                        rec.outputs.emplace_back("value", nb_cdf_sum(params, n).value);
                        rec.outputs.emplace_back("infimum", global_infimum(r.value).value);
                    });
        }
    }
    return w.exit_code();
}

inline int cmd_inf(const Options& o, Format f, std::ostream& out, std::ostream&) {
    RecordWriter w(out, f, {"r"}, {"value", "attained", "detail"});
    for (const auto& r : parse_shapes(o.r)) {
        guarded(w, {"inf", {{"r", r.value}}, {}, Status::ok}, [&](OutputRecord& rec) {
            const Infimum inf = global_infimum(r.value);
            rec.outputs.emplace_back("value", inf.value);
            rec.outputs.emplace_back("attained", inf.attained);
        });
    }
    return w.exit_code();
}

inline int cmd_a_seq(const Options& o, Format f, std::ostream& out, std::ostream&) {
    std::uint64_t lo = 0;
    std::uint64_t hi = o.n_max.value_or(10);
    if (o.n) lo = hi = *o.n;
    RecordWriter w(out, f, {"r", "n"}, {"sum", "integral", "rel_diff", "detail"});
    for (const auto& r : parse_shapes(o.r)) {
        for (std::uint64_t n = lo; n <= hi; ++n) {
            guarded(w, {"a-seq", {{"r", r.value}, {"n", as_int(n)}}, {}, Status::ok},
                    [&](OutputRecord& rec) {
                        const double s = a_seq_sum(r.value, n).value;
                        rec.outputs.emplace_back("sum", s);
                        const double i = a_seq_integral(r.value, n).value;
                        rec.outputs.emplace_back("integral", i);
                        rec.outputs.emplace_back("rel_diff", std::abs(s - i) / s);
                    });
        }
    }
    return w.exit_code();
}

// Default grids of the verification suites.
inline const std::vector<double> kFormGridR = {0.3, 0.5, 1.0, 2.0, 2.7, 5.0, 10.0};
inline const std::vector<double> kTailGridR = {0.5, 1.0, 3.0, 8.0};
inline const std::vector<double> kCoeffGridR = {0.5, 1.0, 2.0, 3.3};

inline int cmd_verify(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> kSuites = {"lemma21", "lemma22",  "coeff",           "monotone",
                                                     "bound222", "chvatal-binomial"};
    std::vector<std::string> suites;
    if (o.suite == "all") {
        suites = kSuites;
    } else if (std::find(kSuites.begin(), kSuites.end(), o.suite) != kSuites.end()) {
        suites = {o.suite};
    } else {
        throw usage_error("--suite must be one of lemma21, lemma22, coeff, monotone, bound222, "
                          "chvatal-binomial, all");
    }
    std::optional<std::vector<double>> r_override;
    if (o.r_given) {
        r_override.emplace();
        for (const auto& r : parse_shapes(o.r)) r_override->push_back(r.value);
    }
    const double tol = o.tol.value_or(1e-10);
    if (!(tol > 0.0)) throw usage_error("--tol must be positive");

    RecordWriter w(out, f, {"suite", "check", "r", "n", "m"},
                   {"lhs", "rhs", "abs_err", "rel_err", "tolerance", "passed", "detail"});
    std::vector<std::string> failures;

    auto emit = [&](const std::string& suite, const std::string& check, std::optional<double> r,
                    std::uint64_t n, std::optional<std::uint64_t> m, const VerifyReport& rep,
                    std::string detail = {}) {
        OutputRecord rec{"verify", {{"suite", suite}, {"check", check}}, {}, Status::ok};
        rec.inputs.emplace_back("r", r ? Value(*r) : Value(std::monostate{}));
        rec.inputs.emplace_back("n", as_int(n));
        if (m) rec.inputs.emplace_back("m", as_int(*m));
        rec.outputs = {{"lhs", rep.lhs},           {"rhs", rep.rhs},
                       {"abs_err", rep.abs_err},   {"rel_err", rep.rel_err},
                       {"tolerance", rep.tolerance}, {"passed", rep.passed}};
        if (!rep.error.empty()) detail = rep.error;
        if (!detail.empty()) rec.outputs.emplace_back("detail", detail);
        rec.status = !rep.error.empty() ? Status::error : rep.passed ? Status::ok : Status::failed;
        if (rec.status != Status::ok) {
            std::ostringstream line;
            line << suite << '/' << check << " r=" << (r ? format_double(*r) : "-") << " n=" << n;
            if (m) line << " m=" << *m;
            failures.push_back(line.str());
        }
        w.write(rec);
    };

    for (const auto& suite : suites) {
        if (suite == "lemma21") {
            for (double r : r_override.value_or(kFormGridR)) {
                for (std::uint64_t n = 0; n <= o.n_max.value_or(100); ++n) {
                    emit(suite, "sum-vs-integral", r, n, std::nullopt, integral_form_check(r, n, tol));
                }
            }
        } else if (suite == "lemma22") {
            for (double r : r_override.value_or(kTailGridR)) {
                for (std::uint64_t n = 0; n <= o.n_max.value_or(30); ++n) {
                    emit(suite, "tail-integral", r, n, std::nullopt, tail_integral_check(r, n, tol));
                }
            }
        } else if (suite == "coeff") {
            for (double r : r_override.value_or(kCoeffGridR)) {
                for (std::uint64_t n = 1; n <= o.n_max.value_or(25); ++n) {
                    for (std::uint64_t m = 1; m <= n; ++m) {
                        emit(suite, "coefficient", r, n, m, coefficient_identity_check(r, n, m, tol));
                    }
                }
            }
        } else if (suite == "monotone") {
            for (double r : r_override.value_or(kFormGridR)) {
                const auto reps = monotonicity_check(r, std::max<std::uint64_t>(1, o.n_max.value_or(300)));
                for (std::uint64_t n = 0; n < reps.size(); ++n) emit(suite, "increasing", r, n, std::nullopt, reps[n]);
            }
        } else if (suite == "bound222") {
            for (double r : r_override.value_or(kTailGridR)) {
                for (std::uint64_t n = 0; n <= o.n_max.value_or(30); ++n) {
                    emit(suite, "slab-bound", r, n, std::nullopt, slab_bound_check(r, n));
                    emit(suite, "g-decreasing", r, n, std::nullopt, slab_integrand_decreasing_check(r, n));
                }
            }
        } else if (suite == "chvatal-binomial") {
            for (std::uint64_t n = 2; n <= std::max<std::uint64_t>(2, o.n_max.value_or(30)); ++n) {
                const auto argmin = binomial_chvatal_argmin(n);
                std::string set = "argmin={";
                for (std::size_t i = 0; i < argmin.size(); ++i) set += (i ? ";" : "") + std::to_string(argmin[i]);
                set += "} nearest=" + std::to_string(chvatal_nearest(n));
                emit(suite, "argmin", std::nullopt, n, argmin.front(), binomial_chvatal_check(n), set);
            }
        }
    }
    if (!failures.empty()) {
        err << failures.size() << " check(s) did not pass:\n";
        for (const auto& line : failures) err << "  " << line << '\n';
    }
    return w.exit_code();
}

inline int cmd_sweep(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    const auto rs = parse_shapes(o.r);
    const auto ps = p_values(o, err);
    RecordWriter w(out, f, {"kind", "r", "p"},
                   {"n", "value", "grid_min", "argmin_p", "global_infimum", "above_infimum", "detail"});
    for (const auto& r : rs) {
        const double inf = global_infimum(r.value).value;
        double best = 2.0;
        double best_p = 0.0;
        for (const auto& p : ps) {
            OutputRecord rec{"sweep", {{"kind", std::string("point")}, {"r", r.value}, {"p", p.value}}, {}, Status::ok};
            guarded(w, rec, [&](OutputRecord& row) {
                const std::uint64_t n = mean_interval_index(r.exact, p.exact).n;
                const double v = nb_cdf_sum({r.value, p.value}, n).value;
                row.outputs.emplace_back("n", as_int(n));
                row.outputs.emplace_back("value", v);
                if (v < best) {
                    best = v;
                    best_p = p.value;
                }
            });
        }
        OutputRecord summary{"sweep", {{"kind", std::string("summary")}, {"r", r.value}}, {}, Status::ok};
        summary.outputs = {{"grid_min", best}, {"argmin_p", best_p}, {"global_infimum", inf},
                           {"above_infimum", best > inf}};
        summary.status = best > inf ? Status::ok : Status::failed;
        w.write(summary);
    }
    return w.exit_code();
}

inline int cmd_sample(const Options& o, Format f, std::ostream& out, std::ostream& err) {
    const auto rs = parse_shapes(o.r);
    const auto ps = p_values(o, err);
    if (o.draws < 1) throw usage_error("--draws must be at least 1");
    RecordWriter w(out, f, {"r", "p", "n", "draws", "seed"},
                   {"estimate", "std_error", "analytic", "within_4se", "sample_mean", "mean", "detail"});
    for (const auto& r : rs) {
        for (const auto& p : ps) {
            const NBParams params(r.value, p.value);
            const std::uint64_t n = o.n ? *o.n : mean_interval_index(r.exact, p.exact).n;
            OutputRecord rec{"sample",
                             {{"r", r.value}, {"p", p.value}, {"n", as_int(n)},
                              {"draws", as_int(o.draws)}, {"seed", as_int(o.seed)}},
                             {},
                             Status::ok};
            guarded(w, rec, [&](OutputRecord& row) {
                const McEstimate est = mc_cdf_estimate(r.value, p.value, n, o.draws, o.seed);
                const double analytic = nb_cdf_sum(params, n).value;
                const bool inside = std::abs(est.estimate - analytic) <= 4.0 * est.std_error;
                row.outputs = {{"estimate", est.estimate},   {"std_error", est.std_error},
                               {"analytic", analytic},       {"within_4se", inside},
                               {"sample_mean", est.sample_mean}, {"mean", nb_mean(params)}};
                if (!inside) row.status = Status::failed;
            });
        }
    }
    return w.exit_code();
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Negative binomial mean-tail probabilities and their infimum over p"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--r", o.r, "shape r > 0; comma list allowed; accepts a/b");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_p = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "success probability in (0,1]; comma list allowed; accepts a/b");
        sub->add_option("--grid", o.grid, "inclusive p grid start:stop:count");
    };
    auto add_n = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "single index");
        sub->add_option("--n-max", o.n_max, "rows for indices 0..n-max");
    };

    std::map<std::string, std::function<int(const Options&, Format, std::ostream&, std::ostream&)>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, auto handler) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s);
        handlers[name] = handler;
        return s;
    };

    CLI::App* pmf = sub("pmf", "P(X = l)", cmd_pmf);
    add_p(pmf);
    add_n(pmf);
    CLI::App* cdf = sub("cdf", "P(X <= n) by both routes, exact for integer r", cmd_cdf);
    add_p(cdf);
    add_n(cdf);
    CLI::App* mt = sub("mean-tail", "P(X <= r(1-p)/p)", cmd_mean_tail);
    add_p(mt);
    sub("inf", "(r/(r+1))^r, the infimum over p", cmd_inf);
    CLI::App* aseq = sub("a-seq", "per-interval infimum sequence a_r(n)", cmd_a_seq);
    add_n(aseq);
    CLI::App* verify = sub("verify", "run identity checks", cmd_verify);
    verify->add_option("--suite", o.suite, "lemma21|lemma22|coeff|monotone|bound222|chvatal-binomial|all");
    verify->add_option("--n-max", o.n_max, "largest n of the grid");
    verify->add_option("--tol", o.tol, "relative tolerance (default 1e-10)");
    CLI::App* sweep = sub("sweep", "mean-tail probability over a p grid with per-r summary", cmd_sweep);
    add_p(sweep);
    CLI::App* sample = sub("sample", "Monte Carlo CDF estimate by Gamma-Poisson sampling", cmd_sample);
    add_p(sample);
    sample->add_option("--n", o.n, "CDF argument (default: interval index of the mean)");
    sample->add_option("--draws", o.draws, "number of variates");
    sample->add_option("--seed", o.seed, "64-bit seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return 2;
    }

    const Format format = o.format == "json" ? Format::json : Format::csv;
    for (CLI::App* s : app.get_subcommands()) {
        o.r_given = s->count("--r") > 0;
        try {
            return handlers.at(s->get_name())(o, format, out, err);
        } catch (const usage_error& e) {
            err << "usage error: " << e.what() << '\n';
            return 2;
        }
    }
    return 2;
}

}  // namespace nbtail::cli
