#include <CLI11.hpp>

#include <iostream>

#include "iqk/sweep.hpp"

using namespace iqk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInternal = 3;

Int disc_from(long disc, long radicand, bool have_disc, bool have_rad) {
    if (have_disc == have_rad)
        throw std::invalid_argument("provide exactly one of --disc and --radicand");
    if (have_disc) return Int(disc);
    Int m(radicand);
    if (m >= 0) throw std::invalid_argument("--radicand must be negative");
    return (mod_canonical(m, 4) == 1) ? m : 4 * m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pro-p invariants of imaginary quadratic fields unramified outside p"};
    app.require_subcommand(1);

    long disc = 0, radicand = 0, prime = 0;
    long ray_depth = 6, precision = 0;
    std::string format = "text";

    auto* classify = app.add_subcommand("classify", "full invariant report for one field");
    auto* c_disc = classify->add_option("--disc", disc, "fundamental discriminant (negative)");
    auto* c_rad = classify->add_option("--radicand", radicand, "squarefree radicand m of Q(sqrt(m))");
    classify->add_option("--prime", prime, "odd prime p")->required();
    classify->add_option("--ray-depth", ray_depth, "ray class levels for the oracle");
    classify->add_option("--precision", precision, "local unit precision override");
    classify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* verify = app.add_subcommand("verify", "run the formula-vs-oracle cross checks");
    auto* v_disc = verify->add_option("--disc", disc, "fundamental discriminant (negative)");
    auto* v_rad = verify->add_option("--radicand", radicand, "squarefree radicand m of Q(sqrt(m))");
    verify->add_option("--prime", prime, "odd prime p")->required();
    verify->add_option("--ray-depth", ray_depth, "ray class levels for the oracle");

    long dmin = 0, dmax = 0;
    int jobs = 1;
    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "classify every fundamental discriminant in [dmin, dmax)");
    sweep->add_option("--dmin", dmin)->required();
    sweep->add_option("--dmax", dmax)->required();
    sweep->add_option("--prime", prime)->required();
    sweep->add_option("--out", out_path, "CSV output path (resumable)")->required();
    sweep->add_option("--jobs", jobs, "worker threads");
    sweep->add_option("--ray-depth", ray_depth);

    std::string poly, mode = "weierstrass";
    long lam_prime = 3;
    auto* lambda = app.add_subcommand("lambda", "truncated Iwasawa-algebra toolkit");
    lambda->add_option("--poly", poly, "polynomial in S, T with + - * ^")->required();
    lambda->add_option("--prime", lam_prime, "p (default 3)");
    lambda->add_option("--mode", mode)->check(CLI::IsMember({"weierstrass", "quotient"}));

    CLI11_PARSE(app, argc, argv);

    try {
        Options opts;
        opts.ray_depth = ray_depth;
        opts.precision = precision;

        if (classify->parsed()) {
            Int d = disc_from(disc, radicand, c_disc->count() > 0, c_rad->count() > 0);
            ClassificationReport rep = invariants_report(d, Int(prime), opts);
            std::cout << (format == "json" ? report_json(rep) : report_text(rep)) << "\n";
            return kExitOk;
        }
        if (verify->parsed()) {
            Int d = disc_from(disc, radicand, v_disc->count() > 0, v_rad->count() > 0);
            auto checks = cross_verify(d, Int(prime), opts);
            bool fail = false;
            for (const CheckResult& c : checks) {
                std::cout << c.name << ": " << (c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL")) << " ("
                          << c.detail << ")\n";
                if (!c.pass && !c.skipped) fail = true;
            }
            return fail ? kExitVerifyFail : kExitOk;
        }
        if (sweep->parsed()) {
            if (!(dmin <= dmax && dmax <= 0)) throw std::invalid_argument("need dmin <= dmax <= 0");
            sweep_to_file(out_path, Int(dmin), Int(dmax), Int(prime), opts, jobs);
            return kExitOk;
        }
        if (lambda->parsed()) {
            TruncSeries f = parse_series(poly, Int(lam_prime));
            if (mode == "weierstrass") {
                WeierstrassData w = weierstrass_data(f);
                std::cout << "mu=" << w.mu << " lambda=" << w.lambda
                          << " certified=" << (w.unit_ok ? "yes" : "no") << "\n";
            } else {
                std::cout << "quotient_is_Zp: " << to_string(quotient_is_zp(f)) << "\n";
            }
            return kExitOk;
        }
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const SeriesParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInvalidInput;
}
