// Command-line front end: reads a JSON problem file and writes a JSON certificate.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>

#include <CLI11.hpp>

#include <padyn/dml.hpp>
#include <padyn/linearizer.hpp>
#include <padyn/problem_io.hpp>
#include <padyn/sml.hpp>
#include <padyn/uniformizer.hpp>

using namespace padyn;

namespace {

enum Exit { ok = 0, malformed = 1, precision = 2, bad_prime = 3, obstruction = 4, mismatch = 5 };

struct Flags {
    std::string input;
    std::string certificate;
    std::string out;
    std::uint64_t prime = 5;
    long precision = 32;
    unsigned degree = 16;
    std::uint64_t horizon = 50;
    int retries = 3;

    CLI::Option *prime_opt = nullptr;
    CLI::Option *precision_opt = nullptr;
    CLI::Option *degree_opt = nullptr;
    CLI::Option *horizon_opt = nullptr;
};

// Command line beats the problem's options block, which beats the defaults.
struct Settings {
    std::uint64_t prime_start;
    long precision;
    unsigned degree;
    std::uint64_t horizon;
    int retries;

    Json to_json() const
    {
        return {{"prime_start", prime_start},
                {"precision", precision},
                {"degree", degree},
                {"horizon", horizon},
                {"retries", retries}};
    }

    PrecisionPolicy policy() const
    {
        PrecisionPolicy p;
        p.working_precision = precision;
        p.max_retries = retries;
        return p;
    }

    DmlOptions dml() const
    {
        DmlOptions o;
        o.policy = policy();
        o.prime_start = prime_start;
        o.horizon = horizon;
        return o;
    }

    UniformizeOptions uniformize() const
    {
        UniformizeOptions o;
        o.policy = policy();
        o.prime_start = prime_start;
        o.horizon = horizon;
        return o;
    }
};

long default_precision()
{
    if (const char *env = std::getenv("PADYN_PRECISION")) {
        try {
            long v = std::stol(env);
            if (v > 0) {
                return v;
            }
        } catch (const std::exception &) {
        }
        std::cerr << "warning: ignoring PADYN_PRECISION=" << env << "\n";
    }
    return 32;
}

Settings resolve(const Flags &f, const Problem &problem, unsigned default_degree)
{
    Settings s;
    s.prime_start = f.prime_opt->count() ? f.prime : problem.options.prime.value_or(5);
    s.precision = f.precision_opt->count() ? f.precision : problem.options.precision.value_or(default_precision());
    s.degree = f.degree_opt->count() ? f.degree : problem.options.degree.value_or(default_degree);
    s.horizon = f.horizon_opt->count() ? f.horizon : problem.options.horizon.value_or(50);
    s.retries = f.retries;
    return s;
}

Problem read_problem(const std::string &path)
{
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return parse_problem(text);
    }
    return load_problem(path);
}

void require(const Problem &p, Problem::Kind kind, const std::string &command)
{
    if (p.kind != kind) {
        throw ParseError(1, 1, command + " needs a problem of kind \"" + to_string(kind) + "\", got \"" +
                                   to_string(p.kind) + "\"");
    }
}

void emit(const Flags &f, const std::string &command, const Problem &problem, const Settings &settings,
          Json result, std::chrono::steady_clock::time_point started)
{
    Json cert;
    cert["tool"] = tool_name;
    cert["version"] = tool_version;
    cert["command"] = command;
    cert["problem"] = problem.source;
    cert["parameters"] = settings.to_json();
    cert["result"] = std::move(result);
    auto elapsed = std::chrono::steady_clock::now() - started;
    cert["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    std::string text = cert.dump(2) + "\n";
    if (f.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(f.out, std::ios::binary);
        if (!out) {
            throw Error("cannot write " + f.out);
        }
        out << text;
    }
}

std::string exponents(const std::vector<std::uint32_t> &e)
{
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        s += (i ? "," : "") + std::to_string(e[i]);
    }
    return s + ")";
}

// Period of the subvariety over the sample points, or "NotPeriodic".
Json period_json(const Problem &problem, const Settings &s)
{
    auto l = subvariety_period(*problem.map, *problem.subvariety, problem.samples, s.dml());
    return l ? Json(*l) : Json("NotPeriodic");
}

int run_command(const std::string &command, const Flags &f)
{
    auto started = std::chrono::steady_clock::now();
    Problem problem = read_problem(f.input);
    const unsigned default_degree = command == "linearize" ? 10 : 16;
    Settings s = resolve(f, problem, default_degree);
    s.policy().validate();
    Json result;

    if (command == "smzl") {
        require(problem, Problem::Kind::recurrence, command);
        ZeroSetOptions o;
        o.policy = s.policy();
        o.prime_start = s.prime_start;
        o.horizon = s.horizon;
        result = to_json(zero_set(problem.recurrence, o));
    } else if (command == "dml") {
        require(problem, Problem::Kind::selfmap, command);
        if (!problem.subvariety) {
            throw ParseError(1, 1, "dml needs a \"subvariety\" field");
        }
        result = to_json(return_set(*problem.map, problem.point, *problem.subvariety, s.dml()));
        if (!problem.samples.empty()) {
            result["subvariety_period"] = period_json(problem, s);
        }
    } else if (command == "preperiodic") {
        require(problem, Problem::Kind::selfmap, command);
        result = to_json(not_preperiodic_witness(*problem.map, problem.point, s.dml()));
    } else if (command == "uniformize") {
        require(problem, Problem::Kind::selfmap, command);
        result = to_json(uniformize_orbit(*problem.map, problem.point, s.uniformize()));
    } else if (command == "linearize") {
        require(problem, Problem::Kind::germ, command);
        result = to_json(formal_linearize(problem.germ(s.degree), s.degree));
    } else if (command == "resonance") {
        require(problem, Problem::Kind::germ, command);
        result = to_json(find_resonances(problem.eigenvalues, s.degree));
        result["multiplicative"] = to_json(multiplicative_rank(problem.eigenvalues));
        if (f.prime_opt->count() || problem.options.prime) {
            try {
                result["small_divisors"] = to_json(siegel_report(problem.eigenvalues, Prime{s.prime_start}, s.degree));
            } catch (const BadPrime &e) {
                result["small_divisors"] = {{"error", e.what()}};
            }
        }
    }
    emit(f, command, problem, s, std::move(result), started);
    return ok;
}

int report_mismatch(const std::string &where)
{
    std::cerr << "verify: mismatch at " << where << "\n";
    return mismatch;
}

int verify_uniformize(const Problem &problem, const Json &r, std::uint64_t horizon)
{
    const PolySelfMap &f = *problem.map;
    Prime p{r.at("prime").get<std::uint64_t>()};
    const long precision = r.at("precision").get<long>();
    const std::uint64_t tail = r.at("tail").get<std::uint64_t>();
    const std::uint64_t stride = r.at("stride").get<std::uint64_t>();
    const Rational decay = parse_rational(r.at("decay").get<std::string>());
    const Integer &modulus = prime_power(p.value(), precision);
    const Json &thetas = r.at("thetas");
    if (thetas.size() != stride) {
        return report_mismatch("class count");
    }
    ModMap fw(f, modulus);
    std::vector<ResiduePoint> orbit{reduce_point(problem.point, modulus)};
    while (orbit.size() < tail + stride * (horizon + 1)) {
        orbit.push_back(fw(orbit.back()));
    }
    for (std::uint64_t i = 0; i < stride; ++i) {
        MahlerFunction g{p, f.num_vars(), {}, decay};
        for (const auto &row : thetas[i].at("coefficients")) {
            std::vector<PadicNumber> a;
            for (const auto &c : row) {
                a.push_back(PadicNumber::from_residue(Integer{c.get<std::string>()}, p, precision));
            }
            g.coefficients.push_back(std::move(a));
        }
        try {
            check_decay(g);
        } catch (const DecayViolation &) {
            return report_mismatch("class " + std::to_string(i) + " (decay)");
        }
        for (std::uint64_t k = 0; k <= horizon; ++k) {
            auto value = mahler_evaluate(g, k);
            const auto &expect = orbit[tail + i + stride * k];
            for (std::size_t c = 0; c < value.size(); ++c) {
                if (value[c].residue(std::min(value[c].abs_precision(), precision)) !=
                    mod(expect[c], prime_power(p.value(), std::min(value[c].abs_precision(), precision)))) {
                    return report_mismatch("class " + std::to_string(i) + ", k = " + std::to_string(k) +
                                           " (index " + std::to_string(tail + i + stride * k) + ")");
                }
            }
        }
    }
    return ok;
}

int verify_preperiodic(const Problem &problem, const Json &r, const Settings &s)
{
    const PolySelfMap &f = *problem.map;
    PreperiodicityVerdict v = verdict_from_json(r);
    std::vector<std::size_t> all(f.num_vars());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (v.kind == PreperiodicityVerdict::Kind::periodic_detected) {
        ExactOrbit exact(f, problem.point, all, std::size_t{1} << 22);
        std::vector<Rational> a = exact.at(v.preperiod);
        if (v.period == 0 || a != exact.at(v.preperiod + v.period)) {
            return report_mismatch("index " + std::to_string(v.preperiod + v.period));
        }
        return ok;
    }
    if (v.kind == PreperiodicityVerdict::Kind::not_preperiodic) {
        UniformizeOptions o = s.uniformize();
        o.prime_start = v.prime;
        o.prime_cap = v.prime;
        o.horizon = 0;
        OrbitInterpolation orb = uniformize_orbit_at(f, problem.point, o, v.precision);
        if (v.witness_class >= orb.thetas.size() ||
            v.witness_index >= orb.thetas[v.witness_class].coefficients.size() || v.witness_index == 0) {
            return report_mismatch("witness class " + std::to_string(v.witness_class));
        }
        const PadicNumber &a = orb.thetas[v.witness_class].coefficients[v.witness_index].at(v.witness_coordinate);
        if (a.is_zero() || a.valuation() != v.witness_valuation || a.valuation() > v.precision - 2) {
            return report_mismatch("witness coefficient a_" + std::to_string(v.witness_index));
        }
        try {
            ExactOrbit exact(f, problem.point, all, std::size_t{1} << 20);
            std::map<std::vector<Rational>, std::uint64_t> seen;
            for (std::uint64_t n = 0; n <= 2 * (v.tail + v.stride); ++n) {
                if (!seen.emplace(exact.at(n), n).second) {
                    return report_mismatch("index " + std::to_string(n) + " (orbit repeats)");
                }
            }
        } catch (const HeightBudgetExceeded &) {
        }
    }
    return ok;
}

int run_verify(const Flags &f)
{
    Problem problem = read_problem(f.input);
    Json cert;
    std::string text = read_file(f.certificate);
    try {
        cert = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(1, 1, std::string("certificate: ") + e.what());
    }
    if (!cert.is_object() || !cert.contains("command") || !cert.contains("result")) {
        throw ParseError(1, 1, "certificate lacks \"command\" or \"result\"");
    }
    // Key order is irrelevant to the echo.
    auto unordered = [](const Json &j) { return nlohmann::json::parse(j.dump()); };
    if (cert.contains("problem") && unordered(cert.at("problem")) != unordered(problem.source)) {
        std::cerr << "verify: certificate was produced for a different problem\n";
        return mismatch;
    }
    const std::string command = cert.at("command").get<std::string>();
    const Json &r = cert.at("result");
    const unsigned default_degree = command == "linearize" ? 10 : 16;
    Settings s = resolve(f, problem, default_degree);
    std::uint64_t horizon = f.horizon_opt->count() ? f.horizon : r.value("verified_bound", s.horizon);
    if (horizon == 0) {
        std::cerr << "warning: horizon 0, nothing to check\n";
        return ok;
    }

    if (command == "smzl") {
        require(problem, Problem::Kind::recurrence, command);
        if (auto bad = first_mismatch(problem.recurrence, zero_set_from_json(r), horizon)) {
            return report_mismatch("n = " + std::to_string(*bad));
        }
        return ok;
    }
    if (command == "dml") {
        require(problem, Problem::Kind::selfmap, command);
        if (!problem.subvariety) {
            throw ParseError(1, 1, "dml needs a \"subvariety\" field");
        }
        if (auto bad = first_mismatch(*problem.map, problem.point, *problem.subvariety, return_set_from_json(r),
                                      horizon)) {
            return report_mismatch("n = " + std::to_string(*bad));
        }
        if (r.contains("subvariety_period") && r.at("subvariety_period") != period_json(problem, s)) {
            return report_mismatch("subvariety period");
        }
        return ok;
    }
    if (command == "preperiodic") {
        require(problem, Problem::Kind::selfmap, command);
        return verify_preperiodic(problem, r, s);
    }
    if (command == "uniformize") {
        require(problem, Problem::Kind::selfmap, command);
        return verify_uniformize(problem, r, horizon);
    }
    if (command == "linearize") {
        require(problem, Problem::Kind::germ, command);
        unsigned degree = r.at("solved_degree").get<unsigned>();
        std::size_t n = problem.eigenvalues.size();
        std::vector<RationalSeries> h;
        for (const auto &hj : r.at("h")) {
            h.push_back(series_from_json(hj, n, degree));
        }
        if (h.size() != n) {
            return report_mismatch("component count");
        }
        auto defect = conjugacy_defect(problem.germ(degree), h);
        for (std::size_t j = 0; j < defect.size(); ++j) {
            if (!defect[j].empty()) {
                return report_mismatch("component " + std::to_string(j + 1) + ", degree " +
                                       std::to_string(defect[j].min_degree()));
            }
        }
        return ok;
    }
    if (command == "resonance") {
        require(problem, Problem::Kind::germ, command);
        unsigned degree = cert.at("parameters").at("degree").get<unsigned>();
        Json fresh = to_json(find_resonances(problem.eigenvalues, degree));
        if (fresh.at("resonances") != r.at("resonances")) {
            const Json &a = fresh.at("resonances");
            const Json &b = r.at("resonances");
            std::size_t i = 0;
            while (i < a.size() && i < b.size() && a[i] == b[i]) {
                ++i;
            }
            return report_mismatch("resonance entry " + std::to_string(i));
        }
        return ok;
    }
    throw ParseError(1, 1, "unknown certificate command \"" + command + "\"");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"p-adic dynamics toolkit: zero sets of recurrences, orbit return sets, formal linearization"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("input", f.input, "Problem file (JSON), or - for stdin")->required();
        sub->add_option("--prime", f.prime, "Start the prime search here (default 5)");
        sub->add_option("--precision", f.precision, "Working precision in p-adic digits (default 32, or $PADYN_PRECISION)");
        sub->add_option("--degree", f.degree, "Truncation degree (default 16; linearize 10)");
        sub->add_option("--horizon", f.horizon, "Verification horizon (default 50)");
        sub->add_option("--retries", f.retries, "Precision doublings on exhaustion (default 3)");
    };

    std::map<std::string, CLI::App *> subs;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"smzl", "Zero set of a linear recurrence"},
        {"dml", "Return set of an orbit to a subvariety"},
        {"preperiodic", "Certify that a point is not preperiodic"},
        {"uniformize", "Analytic interpolation of an orbit"},
        {"linearize", "Formal linearization of a germ"},
        {"resonance", "Resonances and multiplicative rank of eigenvalues"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--out", f.out, "Write the certificate here instead of stdout");
        subs[name] = sub;
    }
    CLI::App *verify = app.add_subcommand("verify", "Check a certificate against its problem");
    add_common(verify);
    verify->add_option("certificate", f.certificate, "Certificate file")->required();
    subs["verify"] = verify;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? ok : malformed;
    }

    std::string command;
    for (const auto &[name, sub] : subs) {
        if (sub->parsed()) {
            command = name;
            f.prime_opt = sub->get_option("--prime");
            f.precision_opt = sub->get_option("--precision");
            f.degree_opt = sub->get_option("--degree");
            f.horizon_opt = sub->get_option("--horizon");
        }
    }

    try {
        return command == "verify" ? run_verify(f) : run_command(command, f);
    } catch (const ParseError &e) {
        std::cerr << f.input << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
        return malformed;
    } catch (const PrecisionExhausted &e) {
        std::cerr << "error: precision exhausted: " << e.what() << "\n";
        return precision;
    } catch (const HeightBudgetExceeded &e) {
        std::cerr << "error: exact iteration too large at n = " << e.index() << ": " << e.what() << "\n";
        return precision;
    } catch (const BadPrime &e) {
        std::cerr << "error: bad prime: " << e.what() << "\n";
        return bad_prime;
    } catch (const NoPrimeFound &e) {
        std::cerr << "error: no good prime: " << e.what() << "\n";
        return bad_prime;
    } catch (const ResonanceObstruction &e) {
        std::cerr << "error: resonance obstruction in component " << e.target() + 1 << " at exponent "
                  << exponents(e.exponents()) << ": " << e.what() << "\n";
        return obstruction;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return malformed;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed certificate: " << e.what() << "\n";
        return malformed;
    }
}
