// fracgreen: evaluate the Green function of the killed fractional Laplacian
// on the periodic domain, verify its structural properties, run Monte Carlo
// estimators, and scan for zeros.
//
// Exit codes: 0 success, 1 verification failure, 2 domain error,
//             3 tolerance/instability failure.

#include "fracgreen/analysis.hpp"
#include "fracgreen/core.hpp"
#include "fracgreen/periodic_green.hpp"
#include "fracgreen/stochastic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;
using namespace fracgreen;

namespace {

// shortest round-trip decimal, locale independent
std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_scalar(const std::string& tok) {
    if (tok == "pi") return pi;
    if (tok == "-pi") return -pi;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw OutOfDomainError("cannot parse number: '" + tok + "'");
    return v;
}

// token: plain number, 'pi', or range a:b:n (n points, both ends included)
std::vector<double> parse_range(const std::string& tok) {
    const auto c1 = tok.find(':');
    if (c1 == std::string::npos) return {parse_scalar(tok)};
    const auto c2 = tok.find(':', c1 + 1);
    if (c2 == std::string::npos) throw OutOfDomainError("range must be a:b:n: '" + tok + "'");
    const double a = parse_scalar(tok.substr(0, c1));
    const double b = parse_scalar(tok.substr(c1 + 1, c2 - c1 - 1));
    const long n = std::stol(tok.substr(c2 + 1));
    if (n < 1) throw OutOfDomainError("range needs n >= 1: '" + tok + "'");
    std::vector<double> out;
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    for (long i = 0; i < n; ++i) out.push_back(a + (b - a) * static_cast<double>(i) / (n - 1));
    out.back() = b;
    return out;
}

std::vector<double> parse_values(const std::vector<std::string>& toks) {
    std::vector<double> out;
    for (const auto& t : toks) {
        auto v = parse_range(t);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::optional<Method> parse_method(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "series") return Method::Series;
    if (name == "periodized") return Method::Periodized;
    if (name == "ml") return Method::MlIntegral;
    if (name == "closed2") return Method::ClosedForm2;
    throw OutOfDomainError("--method must be one of series|periodized|ml|closed2, got '" +
                           name + "'");
}

struct OutputRecord {
    double alpha, c, x;
    double value = 0.0, error_bound = 0.0;
    std::string method;
    bool rigorous = false;
    std::string error; // empty on success
};

json record_to_json(const OutputRecord& r) {
    json j{{"alpha", r.alpha},   {"c", r.c},
           {"x", r.x},           {"value", r.value},
           {"error_bound", r.error_bound}, {"method", r.method},
           {"rigorous", r.rigorous}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

constexpr const char* kCsvHeader = "alpha,c,x,value,error_bound,method,rigorous";

std::string record_to_csv(const OutputRecord& r, bool with_error_col) {
    std::string line = fmt_double(r.alpha) + "," + fmt_double(r.c) + "," + fmt_double(r.x) + "," +
                       (r.error.empty() ? fmt_double(r.value) : "") + "," +
                       (r.error.empty() ? fmt_double(r.error_bound) : "") + "," + r.method + "," +
                       (r.rigorous ? "true" : "false");
    if (with_error_col) line += "," + r.error;
    return line;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::OutOfDomain:
        case ErrorCode::Divergent: return 2;
        case ErrorCode::ToleranceUnreachable:
        case ErrorCode::NumericalInstability: return 3;
    }
    return 2;
}

OutputRecord evaluate_one(double alpha, double c, double x, std::optional<Method> method,
                          double tol) {
    OutputRecord rec;
    rec.alpha = alpha;
    rec.c = c;
    rec.x = x;
    try {
        const GreenValue g = g_eval(KernelParams{alpha, c}, x, method, tol);
        rec.value = g.value;
        rec.error_bound = g.error_bound;
        rec.method = method_name(g.method);
        rec.rigorous = g.rigorous;
    } catch (const Error& e) {
        rec.error = e.what();
        rec.method = "";
    }
    return rec;
}

json report_to_json(const PropertyReport& r) {
    json details = json::array();
    for (const auto& d : r.details)
        details.push_back({{"x", d.x}, {"value", d.value}, {"margin", d.margin}, {"note", d.note}});
    json j{{"property", property_name(r.property)},
           {"alpha", r.params.alpha},
           {"c", r.params.c},
           {"pass", r.pass},
           {"worst_margin", r.worst_margin},
           {"threshold", r.threshold},
           {"p_max", r.p_max},
           {"seed", r.seed},
           {"grid", r.grid.points},
           {"details", details}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

json zeros_to_json(const ZeroScanResult& z) {
    json brackets = json::array();
    for (const auto& b : z.bracketing_intervals) brackets.push_back({b.first, b.second});
    return json{{"alpha", z.alpha},
                {"c", z.c},
                {"sign_changes", z.sign_changes},
                {"bracketing_intervals", brackets},
                {"refined_roots", z.refined_roots},
                {"smallest_certified_x", z.smallest_certified_x},
                {"uncertified_points", z.uncertified_points}};
}

int worker_count(int requested) {
    if (const char* env = std::getenv("FRACGREEN_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return requested >= 1 ? requested : 1;
}

// ---------------------------------------------------------------------------

int cmd_eval(const std::vector<std::string>& xs, double alpha, double c,
             const std::string& method_name_, double tol, const std::string& format) {
    const auto method = parse_method(method_name_);
    const auto x_values = parse_values(xs);
    std::vector<OutputRecord> recs;
    for (double x : x_values) {
        try {
            const GreenValue g = g_eval(KernelParams{alpha, c}, x, method, tol);
            OutputRecord rec;
            rec.alpha = alpha;
            rec.c = c;
            rec.x = x;
            rec.value = g.value;
            rec.error_bound = g.error_bound;
            rec.method = method_name(g.method);
            rec.rigorous = g.rigorous;
            recs.push_back(rec);
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return exit_code_for(e);
        }
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : recs) arr.push_back(record_to_json(r));
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << kCsvHeader << "\n";
        for (const auto& r : recs) std::cout << record_to_csv(r, false) << "\n";
    }
    return 0;
}

int cmd_table(const std::vector<std::string>& alphas, const std::vector<std::string>& cs,
              const std::vector<std::string>& xs, const std::string& method_name_, double tol,
              const std::string& format, const std::string& out_path, int parallel) {
    const auto method = parse_method(method_name_);
    const auto av = parse_values(alphas);
    const auto cv = parse_values(cs);
    const auto xv = parse_values(xs);

    struct Task {
        double alpha, c, x;
    };
    std::vector<Task> tasks;
    for (double a : av)
        for (double cc : cv)
            for (double x : xv) tasks.push_back({a, cc, x});

    std::vector<OutputRecord> recs(tasks.size());
    const int nw = std::min<int>(worker_count(parallel), static_cast<int>(tasks.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            recs[i] = evaluate_one(tasks[i].alpha, tasks[i].c, tasks[i].x, method, tol);
        }
    };
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::size_t ok = 0;
    for (const auto& r : recs)
        if (r.error.empty()) ++ok;

    std::ostringstream body;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : recs) arr.push_back(record_to_json(r));
        body << arr.dump(2) << "\n";
    } else {
        body << kCsvHeader << ",error\n";
        for (const auto& r : recs) body << record_to_csv(r, true) << "\n";
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        f << body.str();
    }
    return ok > 0 ? 0 : 1;
}

int cmd_verify(double alpha, double c, const std::string& suite, int grid_points, int p_max,
               std::uint64_t seed, double tol, const std::string& out_path) {
    const KernelParams params{alpha, c};
    const bool all = suite == "all";
    if (!(all || suite == "cm" || suite == "unimodal" || suite == "boundary" ||
          suite == "cross" || suite == "factorization"))
        throw OutOfDomainError("--suite must be cm|unimodal|boundary|cross|factorization|all");

    std::vector<PropertyReport> reports;
    const Grid grid = Grid::uniform_open(grid_points);
    if (all || suite == "cm")
        reports.push_back(check_complete_monotonicity(params, grid, p_max, tol));
    if (all || suite == "unimodal") reports.push_back(check_unimodality(params, grid, tol));
    if (all || suite == "boundary")
        reports.push_back(check_boundary_derivative(params, {0.1, 0.01, 0.001}, tol));
    if (all || suite == "cross") {
        const Grid small = Grid::uniform_open(std::min(grid_points, 10));
        reports.push_back(check_cross_method(params, small, 1e-6));
    }
    if (all || suite == "factorization")
        reports.push_back(check_h_factorization(params, 10000, RngStream(seed, 0), 0.02));

    json arr = json::array();
    bool pass = true;
    for (const auto& r : reports) {
        arr.push_back(report_to_json(r));
        if (!r.pass) {
            pass = false;
            std::cerr << "FAIL " << property_name(r.property) << ": " << r.failure << "\n";
        }
    }
    const std::string text = arr.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        f << text;
    }
    return pass ? 0 : 1;
}

int cmd_mc(double alpha, double c, double x, const std::string& estimator, long n,
           std::uint64_t seed) {
    const KernelParams params{alpha, c};
    McEstimate est;
    if (estimator == "jtp") {
        est = mc_g_jtp(params, x, n, RngStream(seed, 0));
    } else if (estimator == "poisson") {
        est = mc_g_poisson(params, x, n, RngStream(seed, 0));
    } else {
        throw OutOfDomainError("--estimator must be jtp or poisson, got '" + estimator + "'");
    }
    const GreenValue ref = g_eval(params, x, std::nullopt, 1e-8);
    const double dev = est.std_error > 0.0 ? (est.mean - ref.value) / est.std_error : 0.0;
    json j{{"mean", est.mean},
           {"std_error", est.std_error},
           {"n_samples", est.n_samples},
           {"seed", est.seed},
           {"estimator", estimator},
           {"reference", ref.value},
           {"reference_method", method_name(ref.method)},
           {"standardized_deviation", dev}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_zeros(double alpha, double c, int resolution, const std::string& format) {
    const ZeroScanResult z = scan_zeros(KernelParams{alpha, c}, resolution);
    if (format == "csv") {
        std::cout << "alpha,c,sign_changes,smallest_certified_x,uncertified_points\n"
                  << fmt_double(z.alpha) << "," << fmt_double(z.c) << "," << z.sign_changes << ","
                  << fmt_double(z.smallest_certified_x) << "," << z.uncertified_points << "\n";
    } else {
        std::cout << zeros_to_json(z).dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green function of the killed fractional Laplacian on the periodic domain"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file presetting options");

    std::vector<std::string> xs, alphas, cs;
    double alpha = 1.0, c = 1.0, x = 1.0, tol = 1e-8;
    std::string method, format = "csv", out_path, suite = "all", estimator = "jtp";
    int grid_points = 50, p_max = 6, resolution = 2000, parallel = 1;
    long n_samples = 100000;
    std::uint64_t seed = 0;

    auto* eval = app.add_subcommand("eval", "evaluate G at points");
    eval->add_option("--alpha", alpha, "stability index in (0,4]")->required();
    eval->add_option("--c", c, "killing rate, > 0")->required();
    eval->add_option("--x", xs, "evaluation points; number, 'pi', or a:b:n")->required();
    eval->add_option("--method", method, "series|periodized|ml|closed2 (default: auto)");
    eval->add_option("--tol", tol, "absolute tolerance (default 1e-8)");
    eval->add_option("--format", format, "csv|json (default csv)");

    auto* table = app.add_subcommand("table", "tabulate G over a parameter grid");
    table->add_option("--alpha", alphas, "alpha values or ranges")->required();
    table->add_option("--c", cs, "c values or ranges")->required();
    table->add_option("--x", xs, "x values or ranges")->required();
    table->add_option("--method", method, "series|periodized|ml|closed2 (default: auto)");
    table->add_option("--tol", tol, "absolute tolerance (default 1e-8)");
    table->add_option("--format", format, "csv|json (default csv)");
    table->add_option("--out", out_path, "output file (default stdout)");
    table->add_option("--parallel", parallel, "worker threads (FRACGREEN_THREADS overrides)");

    auto* verify = app.add_subcommand("verify", "run property verification suites");
    verify->add_option("--alpha", alpha)->required();
    verify->add_option("--c", c)->required();
    verify->add_option("--suite", suite, "cm|unimodal|boundary|cross|factorization|all");
    verify->add_option("--grid-points", grid_points, "grid size (default 50)");
    verify->add_option("--p-max", p_max, "max derivative order for cm (default 6)");
    verify->add_option("--seed", seed, "RNG seed for stochastic checks");
    verify->add_option("--tol", tol, "evaluator tolerance");
    verify->add_option("--out", out_path, "write the JSON report here");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of G");
    mc->add_option("--alpha", alpha)->required();
    mc->add_option("--c", c)->required();
    mc->add_option("--x", x)->required();
    mc->add_option("--estimator", estimator, "jtp|poisson (default jtp)");
    mc->add_option("--n", n_samples, "sample count (default 100000)");
    mc->add_option("--seed", seed, "RNG seed");

    auto* zeros = app.add_subcommand("zeros", "certified sign-change scan for alpha in (2,4]");
    zeros->add_option("--alpha", alpha)->required();
    zeros->add_option("--c", c)->required();
    zeros->add_option("--resolution", resolution, "grid resolution (default 2000)");
    zeros->add_option("--format", format, "json|csv (default json)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(xs, alpha, c, method, tol, format);
        if (table->parsed())
            return cmd_table(alphas, cs, xs, method, tol, format, out_path, parallel);
        if (verify->parsed())
            return cmd_verify(alpha, c, suite, grid_points, p_max, seed, tol, out_path);
        if (mc->parsed()) return cmd_mc(alpha, c, x, estimator, n_samples, seed);
        if (zeros->parsed()) return cmd_zeros(alpha, c, resolution, format);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
