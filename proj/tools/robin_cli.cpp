// Command-line front end: delta-Robin constants for intervals and p-adic
// balls, global height lower bounds, and the discrete-oracle verification
// suites. stdout carries only the requested payload; diagnostics go to
// stderr; failures are reported through exit codes:
//   0 ok, 1 verification failure, 2 usage/config error,
//   3 quadrature failure, 4 duplicate primes.

#include <robin/cli_support.hpp>
#include <robin/discrete_oracle.hpp>
#include <robin/height_bounds.hpp>
#include <robin/padic_equilibrium.hpp>
#include <robin/quadrature.hpp>
#include <robin/real_equilibrium.hpp>
#include <robin/verify.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitDuplicatePrimes = 4;

double quad_tolerance() {
    if (const char* env = std::getenv("ROBIN_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && tol >= 1e-14) return tol;
        std::cerr << "ignoring invalid ROBIN_TOL '" << env << "'\n";
    }
    return robin::kDefaultQuadTol;
}

struct RealArgs {
    double r = 0.0;
    int density_samples = 0;
    std::string out_path;
    std::string format = "human";
};

int cmd_real(const RealArgs& args) {
    using robin::cli::format_double;
    const robin::RealIntervalSpec spec(args.r);
    const double tol = quad_tolerance();
    const double v = robin::robin_constant_real(spec, tol);
    const char* regime = spec.wide() ? "r>=1" : "r<1";

    if (args.format == "json") {
        robin::cli::ordered_json j = robin::cli::ordered_json::object();
        j["schema_version"] = "1";
        j["r"] = spec.r;
        j["regime"] = regime;
        j["v_delta"] = v;
        std::cout << robin::cli::dump_canonical(j);
    } else if (args.format == "csv") {
        std::cout << "r,regime,v_delta\n"
                  << format_double(spec.r) << "," << regime << "," << format_double(v) << "\n";
    } else {
        std::cout << "V_delta([-" << format_double(spec.r) << ", " << format_double(spec.r)
                  << "]) = " << format_double(v) << "  (regime " << regime << ", halved "
                  << format_double(0.5 * v) << ")\n";
    }

    if (args.density_samples > 0) {
        std::ofstream out(args.out_path);
        if (!out) {
            std::cerr << "cannot open " << args.out_path << " for writing\n";
            return kExitUsage;
        }
        out << "x,density\n";
        const int n = args.density_samples;
        for (int i = 0; i < n; ++i) {
            const double x = -spec.r + (i + 0.5) * 2.0 * spec.r / n;
            out << format_double(x) << "," << format_double(robin::density_at(spec, x)) << "\n";
        }
    }
    return 0;
}

struct PAdicArgs {
    long p = 0;
    int e = 1, f = 1;
    int n = 0;
    std::string format = "human";
};

int cmd_padic(const PAdicArgs& args) {
    const robin::LocalFieldSpec field(args.p, args.e, args.f);
    const robin::ScaledLog v = robin::robin_constant_padic(field, args.n);
    std::optional<robin::PAdicEquilibriumMeasure> measure;
    if (args.n < 0) measure = robin::equilibrium_coefficients(field, args.n);

    if (args.format == "json") {
        robin::cli::ordered_json j = robin::cli::ordered_json::object();
        j["schema_version"] = "1";
        j["p"] = field.p;
        j["e"] = field.e;
        j["f"] = field.f;
        j["q"] = field.q();
        j["n"] = args.n;
        j["v_delta_exact"] = robin::cli::scaled_log_to_json(v);
        j["v_delta_float"] = v.to_double();
        if (measure) {
            robin::cli::ordered_json coeffs = robin::cli::ordered_json::object();
            for (int k = 0; k >= args.n; --k)
                coeffs["c_" + std::to_string(k)] = robin::rat_to_string(measure->c(k));
            j["coefficients"] = coeffs;
        }
        std::cout << robin::cli::dump_canonical(j);
    } else if (args.format == "csv") {
        std::cout << "quantity,exact,float\n";
        std::cout << "v_delta," << robin::rat_to_string(v.coeff) << "*log" << field.p << ","
                  << robin::cli::format_double(v.to_double()) << "\n";
        if (measure)
            for (int k = 0; k >= args.n; --k)
                std::cout << "c_" << k << "," << robin::rat_to_string(measure->c(k)) << ",\n";
    } else {
        std::cout << "V_delta(pi^" << args.n << " O_K) = " << v.str() << " = "
                  << robin::cli::format_double(v.to_double()) << "\n";
        if (measure) {
            std::cout << "equilibrium coefficients:";
            for (int k = 0; k >= args.n; --k)
                std::cout << " c_" << k << "=" << robin::rat_to_string(measure->c(k));
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_global(const std::string& spec_path, const std::string& format) {
    std::ifstream in(spec_path);
    if (!in) {
        std::cerr << "cannot read place config '" << spec_path << "'\n";
        return kExitUsage;
    }
    std::vector<robin::PlaceSpec> places;
    try {
        places = robin::cli::parse_place_config(in);
    } catch (const robin::cli::ConfigParseError& e) {
        std::cerr << spec_path << ": " << e.what() << "\n";
        return kExitUsage;
    }
    if (places.empty()) {
        std::cerr << spec_path << ": no places defined\n";
        return kExitUsage;
    }
    robin::BoundReport report;
    try {
        report = robin::global_lower_bound(places, quad_tolerance());
    } catch (const robin::DuplicatePrimes& e) {
        std::cerr << e.what() << "\n";
        return kExitDuplicatePrimes;
    }
    if (format == "json")
        std::cout << robin::cli::dump_canonical(robin::cli::report_to_json(places, report));
    else if (format == "csv")
        std::cout << robin::cli::report_to_csv(report);
    else
        std::cout << robin::cli::report_to_human(report);
    return 0;
}

struct VerifyArgs {
    std::string suite = "all";
    std::size_t m = 2000;
    int depth = 2;
    std::string minimizer_out;
};

int cmd_verify(const VerifyArgs& args) {
    std::vector<robin::CheckResult> checks;
    if (args.suite == "padic" || args.suite == "all") {
        std::vector<int> depths;
        for (int d = 1; d <= args.depth; ++d) depths.push_back(d);
        auto padic = robin::verify_padic_oracle({2, 3}, {-1, -2, -3}, depths);
        checks.insert(checks.end(), padic.begin(), padic.end());
    }
    if (args.suite == "real" || args.suite == "all") {
        auto real = robin::verify_real_oracle({1.0, 2.0}, args.m);
        checks.insert(checks.end(), real.begin(), real.end());

        if (!args.minimizer_out.empty()) {
            std::ofstream out(args.minimizer_out);
            if (!out) {
                std::cerr << "cannot open " << args.minimizer_out << " for writing\n";
                return kExitUsage;
            }
            out << "r,cell_lo,cell_hi,midpoint,weight\n";
            for (double r : {1.0, 2.0}) {
                const robin::RealIntervalSpec spec(r);
                auto model = robin::build_real_energy_matrix(spec, args.m);
                auto min = robin::minimize_energy(model);
                for (std::size_t i = 0; i < min.measure.midpoints.size(); ++i) {
                    const double mid = min.measure.midpoints[i];
                    const double hw = 0.5 * min.measure.cell_width;
                    out << robin::cli::format_double(r) << ","
                        << robin::cli::format_double(mid - hw) << ","
                        << robin::cli::format_double(mid + hw) << ","
                        << robin::cli::format_double(mid) << ","
                        << robin::cli::format_double(min.measure.weights[i]) << "\n";
                }
            }
        }
    }
    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name << ": observed " << c.observed
                  << ", expected " << c.expected << "\n";
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-Robin constants, equilibrium measures and Weil height lower bounds"};
    app.require_subcommand(1);

    RealArgs real_args;
    auto* real = app.add_subcommand("real", "V_delta of the interval [-r, r]");
    real->add_option("--r", real_args.r, "interval radius r > 0")->required();
    real->add_option("--density-samples", real_args.density_samples,
                     "write (x, density) CSV with this many samples");
    real->add_option("--out", real_args.out_path, "output path for the density CSV");
    real->add_option("--format", real_args.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));

    PAdicArgs padic_args;
    auto* padic = app.add_subcommand("padic", "V_delta of the ball pi^n O_K over K/Q_p");
    padic->add_option("--p", padic_args.p, "residue characteristic (prime)")->required();
    padic->add_option("--e", padic_args.e, "ramification index (default 1)");
    padic->add_option("--f", padic_args.f, "residue degree (default 1)");
    padic->add_option("--n", padic_args.n, "ball exponent n")->required();
    padic->add_option("--format", padic_args.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));

    std::string global_spec, global_format = "human";
    auto* global = app.add_subcommand("global", "height lower bound over a list of places");
    global->add_option("--spec", global_spec, "place config file (one place per line)")
        ->required();
    global->add_option("--format", global_format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "discrete-oracle verification suites");
    verify->add_option("--suite", verify_args.suite, "real | padic | all")
        ->check(CLI::IsMember({"real", "padic", "all"}));
    verify->add_option("--m", verify_args.m, "real-mode cell count (default 2000)");
    verify->add_option("--depth", verify_args.depth, "max p-adic leaf depth (default 2)");
    verify->add_option("--minimizer-out", verify_args.minimizer_out,
                       "write the real minimizer as CSV (cell, weight)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (real->parsed()) {
            if (real_args.density_samples > 0 && real_args.out_path.empty()) {
                std::cerr << "--density-samples requires --out\n";
                return kExitUsage;
            }
            return cmd_real(real_args);
        }
        if (padic->parsed()) return cmd_padic(padic_args);
        if (global->parsed()) return cmd_global(global_spec, global_format);
        if (verify->parsed()) return cmd_verify(verify_args);
    } catch (const robin::ToleranceNotMet& e) {
        std::cerr << e.what() << "\n";
        return kExitQuadrature;
    } catch (const robin::UndeclaredSingularity& e) {
        std::cerr << e.what() << "\n";
        return kExitQuadrature;
    } catch (const robin::OptimizationFailure& e) {
        std::cerr << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
