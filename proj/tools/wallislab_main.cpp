// wallislab CLI: convergence tables, certified enclosures of pi / sqrt(pi),
// the verification suites, and probability-integral evaluation, emitted as
// JSON (default) or CSV. Exit codes: 0 ok, 1 verification FAILS (or internal
// error), 2 usage error, 3 UNDECIDED results only.

#include "wallislab/wallislab.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace wallislab;

namespace {

std::uint64_t quad_budget_from_env() {
    if (const char* s = std::getenv("WALLISLAB_MAX_EVALS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return v;
    }
    return default_max_evals();
}

void emit(const ReportEnvelope& env, const std::string& format, const std::string& out_path) {
    std::string text = format == "csv" ? to_csv(env) : to_json(env).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path target(out_path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        f << text;
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

ReportEnvelope make_envelope(std::string command, std::map<std::string, std::string> params) {
    ReportEnvelope env;
    env.command = std::move(command);
    env.parameters = std::move(params);
    env.parameters["decimal_policy"] = "round-toward-zero";
    env.generated_at = rfc3339_utc_now();
    return env;
}

struct VerifyCounts {
    std::size_t holds = 0, fails = 0, undecided = 0;

    void add(const CheckOutcome& o) {
        switch (o.verdict) {
            case Verdict::Holds: ++holds; break;
            case Verdict::Fails: ++fails; break;
            case Verdict::Undecided: ++undecided; break;
        }
    }
};

CheckOutcome conservation_outcome(const ConservationReport& r) {
    CheckOutcome o;
    o.name = "conservation";
    o.n = 0;
    o.grade = Grade::Numeric;
    o.witness = "t=" + r.t.str(6) + " |F+G-pi/4|=" + r.sum_deviation.str(3) +
                " allowed=" + r.allowed_deviation.str(3);
    o.verdict = (r.within_tolerance && r.decay_bound_ok) ? Verdict::Holds : Verdict::Fails;
    return o;
}

int run_pi(std::uint64_t terms, const std::string& method, unsigned digits,
           const std::string& format, const std::string& out) {
    auto env = make_envelope("pi", {{"terms", std::to_string(terms)},
                                    {"method", method},
                                    {"digits", std::to_string(digits)},
                                    {"format", format}});
    if (method == "wallis") {
        env.results = results_json(std::vector<Enclosure>{pi_enclosure_wallis(terms)}, digits);
    } else if (method == "variation4") {
        BigRational estimate = BigRational(2) / variation_term(VariationId::V4, terms).rational_part;
        env.results = point_estimate_json(estimate, digits,
                                          "lower bound of pi, increasing in terms (inverted even-square product)");
    } else {  // machin
        PiEnclosure enc = pi_enclosure(digits);
        Enclosure e;
        e.target = Enclosure::Target::Pi;
        e.n = static_cast<std::int64_t>(digits);
        e.lo = enc.interval.lo();
        e.hi = enc.interval.hi();
        env.results = results_json(std::vector<Enclosure>{e}, digits + 2);
    }
    emit(env, format, out);
    return 0;
}

int run_table(const std::string& sequence, std::uint64_t max_n, std::uint64_t step, unsigned digits,
              const std::string& format, const std::string& out) {
    auto env = make_envelope("table", {{"sequence", sequence},
                                       {"max_n", std::to_string(max_n)},
                                       {"step", std::to_string(step)},
                                       {"digits", std::to_string(digits)},
                                       {"format", format}});
    env.results = results_json(make_seq_table(parse_sequence_id(sequence), max_n, step, digits));
    emit(env, format, out);
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t max_n, double tol_d, unsigned enc_digits,
               const std::string& format, const std::string& out) {
    Real tol(tol_d);
    std::uint64_t budget = quad_budget_from_env();
    PiEnclosure enc = pi_enclosure(enc_digits);
    std::vector<CheckOutcome> outcomes;
    std::vector<ConservationReport> conservation;
    VerifyCounts counts;

    auto push = [&](CheckOutcome o) {
        counts.add(o);
        outcomes.push_back(std::move(o));
    };

    if (suite == "stieltjes" || suite == "all")
        for (std::uint64_t n = 1; n <= max_n; ++n) push(check_stieltjes(n, enc));
    if (suite == "squeeze" || suite == "all") {
        for (std::uint64_t n = 1; n <= max_n; ++n) push(check_moment_squeeze(n, enc));
        for (std::uint64_t n = 1; n <= max_n; ++n) push(check_sqrt_limit_bounds(n, enc));
    }
    if (suite == "wallis" || suite == "all") {
        for (std::uint64_t n = 0; n <= max_n; ++n) push(check_wallis_monotone(n, enc));
        for (std::uint64_t n = 1; n <= max_n; ++n) push(check_product_identity(n));
    }
    if (suite == "disguise" || suite == "all")
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            push(check_disguise_reciprocal(n, tol, budget));
            push(check_disguise_poly(n, tol, budget));
        }
    if (suite == "sandwich" || suite == "all")
        for (std::uint64_t n = 1; n <= max_n; ++n) push(check_spivak_sandwich(n, tol, budget));
    if (suite == "conservation" || suite == "all")
        for (const Real& t : conservation_grid()) {
            ConservationReport r = check_conservation(t, tol, budget);
            counts.add(conservation_outcome(r));
            conservation.push_back(std::move(r));
        }

    auto env = make_envelope("verify", {{"suite", suite},
                                        {"max_n", std::to_string(max_n)},
                                        {"tol", Real(tol).str(6)},
                                        {"enc_digits", std::to_string(enc_digits)},
                                        {"max_evals", std::to_string(budget)},
                                        {"format", format}});
    if (suite == "conservation") {
        env.results = results_json(conservation);
    } else {
        for (const auto& r : conservation) outcomes.push_back(conservation_outcome(r));
        env.results = results_json(outcomes);
    }
    emit(env, format, out);
    std::cerr << "verify: " << counts.holds << " HOLDS, " << counts.fails << " FAILS, "
              << counts.undecided << " UNDECIDED\n";
    return verify_exit_code(counts.fails, counts.undecided);
}

int run_erf(const std::string& t_str, double tol_d, const std::string& method,
            const std::string& format, const std::string& out) {
    Real tol(tol_d);
    std::uint64_t budget = quad_budget_from_env();
    Real t;
    if (t_str == "inf") {
        t = std::numeric_limits<Real>::infinity();
    } else {
        try {
            t = Real(t_str);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--t", "expected a nonnegative number or 'inf'");
        }
        if (t < 0) throw CLI::ValidationError("--t", "t must be >= 0");
    }
    QuadResult q;
    if (method == "borwein") {
        if (boost::multiprecision::isinf(t))
            throw CLI::ValidationError("--method", "borwein requires finite t <= 40");
        q = probability_integral_via_F(t, tol, budget);
    } else {
        q = gauss_truncated(t, tol, budget);
    }
    auto env = make_envelope("erf", {{"t", t_str},
                                     {"tol", Real(tol).str(6)},
                                     {"method", method},
                                     {"format", format}});
    env.results = integral_results_json(q, method);
    emit(env, format, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wallislab: exact Wallis products, Wallis/moment integrals, certified pi and "
                 "sqrt(pi) enclosures, and verification suites"};
    app.require_subcommand(1);
    app.fallthrough();  // --format/--out may appear before or after the subcommand

    std::string format = "json";
    std::string out;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out, "Write the report to this path (atomic: temp file + rename)");

    auto* pi_cmd = app.add_subcommand("pi", "Enclosure or point estimate of pi");
    std::uint64_t pi_terms = 100;
    std::string pi_method = "wallis";
    unsigned pi_digits = 12;
    pi_cmd->add_option("--terms", pi_terms, "Product terms n")->check(CLI::PositiveNumber);
    pi_cmd->add_option("--method", pi_method, "Source of the estimate")
        ->check(CLI::IsMember({"wallis", "variation4", "machin"}));
    pi_cmd->add_option("--digits", pi_digits, "Decimal digits")->check(CLI::Range(1u, 1000u));

    auto* table_cmd = app.add_subcommand("table", "Convergence table of a sequence");
    std::string table_sequence;
    std::uint64_t table_max_n = 0;
    std::uint64_t table_step = 1;
    unsigned table_digits = 10;
    table_cmd->add_option("--sequence", table_sequence, "a_n|I_n|E_n|v1..v5|binom_ratio")
        ->required()
        ->check(CLI::IsMember({"a_n", "I_n", "E_n", "v1", "v2", "v3", "v4", "v5", "binom_ratio"}));
    table_cmd->add_option("--max-n", table_max_n, "Last index")->required()->check(CLI::PositiveNumber);
    table_cmd->add_option("--step", table_step, "Index stride")->check(CLI::PositiveNumber);
    table_cmd->add_option("--digits", table_digits, "Decimal digits")->check(CLI::Range(1u, 100u));

    auto* verify_cmd = app.add_subcommand("verify", "Run checker suites");
    std::string verify_suite = "all";
    std::uint64_t verify_max_n = 20;
    double verify_tol = 1e-9;
    unsigned verify_digits = 10;
    verify_cmd->add_option("--suite", verify_suite, "Checker family")
        ->check(CLI::IsMember(
            {"stieltjes", "squeeze", "wallis", "disguise", "sandwich", "conservation", "all"}));
    verify_cmd->add_option("--max-n", verify_max_n, "Largest index")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tol", verify_tol, "Quadrature tolerance (>= 1e-14)")
        ->check(CLI::Range(1e-14, 1e3));
    verify_cmd->add_option("--enc-digits", verify_digits, "Starting enclosure digits")
        ->check(CLI::Range(1u, 1000u));

    auto* erf_cmd = app.add_subcommand("erf", "int_0^t e^{-x^2} dx");
    std::string erf_t;
    double erf_tol = 1e-10;
    std::string erf_method = "direct";
    erf_cmd->add_option("--t", erf_t, "Upper limit (nonnegative, or 'inf')")->required();
    erf_cmd->add_option("--tol", erf_tol, "Tolerance (>= 1e-14)")->check(CLI::Range(1e-14, 1e3));
    erf_cmd->add_option("--method", erf_method, "direct quadrature or the F(t) route")
        ->check(CLI::IsMember({"direct", "borwein"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (pi_cmd->parsed()) return run_pi(pi_terms, pi_method, pi_digits, format, out);
        if (table_cmd->parsed())
            return run_table(table_sequence, table_max_n, table_step, table_digits, format, out);
        if (verify_cmd->parsed())
            return run_verify(verify_suite, verify_max_n, verify_tol, verify_digits, format, out);
        if (erf_cmd->parsed()) return run_erf(erf_t, erf_tol, erf_method, format, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
