#include <padyn/problem_io.hpp>

#include <fstream>
#include <sstream>

namespace padyn {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// JSON values carry no positions, so semantic errors point at the first occurrence of the key.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string &key, const std::string &message) const
    {
        std::size_t pos = text_.find("\"" + key + "\"");
        auto [line, column] = line_column(text_, pos == std::string_view::npos ? 0 : pos);
        throw ParseError(line, column, "'" + key + "': " + message);
    }

    const Json &field(const Json &obj, const std::string &key) const
    {
        if (!obj.contains(key)) {
            fail(key, "missing field");
        }
        return obj.at(key);
    }

    Rational rational(const Json &v, const std::string &key) const
    {
        try {
            if (v.is_string()) {
                return parse_rational(v.get<std::string>());
            }
            if (v.is_number_integer()) {
                return Rational{std::to_string(v.get<long long>())};
            }
        } catch (const DomainError &e) {
            fail(key, e.what());
        }
        fail(key, "expected a rational as a string \"a/b\" or an integer");
    }

    std::vector<Rational> rationals(const Json &v, const std::string &key) const
    {
        if (!v.is_array()) {
            fail(key, "expected an array of rationals");
        }
        std::vector<Rational> out;
        for (const auto &x : v) {
            out.push_back(rational(x, key));
        }
        return out;
    }

    Polynomial polynomial(const Json &v, std::size_t num_vars, const std::string &key) const
    {
        if (!v.is_array()) {
            fail(key, "expected a polynomial as a list of [exponents, numerator, denominator]");
        }
        Polynomial out(num_vars);
        for (const auto &mono : v) {
            if (!mono.is_array() || mono.size() != 3 || !mono[0].is_array()) {
                fail(key, "monomial must be [exponent-vector, numerator, denominator]");
            }
            if (mono[0].size() != num_vars) {
                fail(key, "exponent vector length differs from the number of variables");
            }
            Exponent e;
            for (const auto &k : mono[0]) {
                if (!k.is_number_unsigned()) {
                    fail(key, "exponents must be nonnegative integers");
                }
                e.push_back(k.get<std::uint32_t>());
            }
            Rational num = rational(mono[1], key);
            Rational den = rational(mono[2], key);
            if (den == 0) {
                fail(key, "zero denominator");
            }
            out.add_term(e, num / den);
        }
        return out;
    }

    std::vector<Polynomial> polynomials(const Json &v, std::size_t num_vars, const std::string &key) const
    {
        if (!v.is_array()) {
            fail(key, "expected a list of polynomials");
        }
        std::vector<Polynomial> out;
        for (const auto &p : v) {
            out.push_back(polynomial(p, num_vars, key));
        }
        return out;
    }

    template <class T>
    T natural(const Json &v, const std::string &key) const
    {
        if (v.is_number_unsigned()) {
            return v.get<T>();
        }
        if (v.is_string()) {
            try {
                return static_cast<T>(std::stoull(v.get<std::string>()));
            } catch (const std::exception &) {
            }
        }
        fail(key, "expected a nonnegative integer");
    }

private:
    std::string_view text_;
};

Json integer_list(const std::vector<std::uint64_t> &v)
{
    Json out = Json::array();
    for (auto x : v) {
        out.push_back(x);
    }
    return out;
}

std::vector<std::uint64_t> integer_list_from(const Json &j)
{
    std::vector<std::uint64_t> out;
    for (const auto &x : j) {
        out.push_back(x.get<std::uint64_t>());
    }
    return out;
}

Json long_list(const std::vector<long> &v)
{
    Json out = Json::array();
    for (auto x : v) {
        out.push_back(x);
    }
    return out;
}

std::vector<long> long_list_from(const Json &j)
{
    return j.is_array() ? j.get<std::vector<long>>() : std::vector<long>{};
}

Json exponent_json(const Exponent &e)
{
    Json out = Json::array();
    for (auto k : e) {
        out.push_back(k);
    }
    return out;
}

} // namespace

std::string to_string(Problem::Kind kind)
{
    switch (kind) {
    case Problem::Kind::recurrence:
        return "recurrence";
    case Problem::Kind::selfmap:
        return "selfmap";
    case Problem::Kind::germ:
        return "germ";
    }
    return "unknown";
}

MapGerm Problem::germ(unsigned degree) const
{
    MapGerm g;
    g.eigenvalues = eigenvalues;
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        if (j < higher_terms.size()) {
            g.higher_terms.push_back(to_series(higher_terms[j], degree));
        } else {
            g.higher_terms.emplace_back(eigenvalues.size(), degree);
        }
    }
    return g;
}

Problem parse_problem(std::string_view text)
{
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw ParseError(1, 1, "empty input");
    }
    Problem out;
    try {
        out.source = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        auto pos = what.find("; ");
        throw ParseError(line, column, pos == std::string::npos ? what : what.substr(pos + 2));
    }
    Reader r(text);
    const Json &root = out.source;
    if (!root.is_object()) {
        throw ParseError(1, 1, "problem file must be a JSON object");
    }
    const Json &kind = r.field(root, "kind");
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "recurrence") {
        out.kind = Problem::Kind::recurrence;
        out.recurrence.coefficients = r.rationals(r.field(root, "coefficients"), "coefficients");
        out.recurrence.initial = r.rationals(r.field(root, "initial"), "initial");
        if (out.recurrence.coefficients.empty()) {
            r.fail("coefficients", "recurrence needs at least one coefficient");
        }
        if (out.recurrence.initial.size() != out.recurrence.coefficients.size()) {
            r.fail("initial", "need as many initial terms as coefficients");
        }
    } else if (k == "selfmap") {
        out.kind = Problem::Kind::selfmap;
        out.point = r.rationals(r.field(root, "point"), "point");
        std::size_t n = out.point.size();
        if (root.contains("vars")) {
            n = r.natural<std::size_t>(root.at("vars"), "vars");
            if (n != out.point.size()) {
                r.fail("point", "point has " + std::to_string(out.point.size()) + " coordinates, expected " +
                                    std::to_string(n));
            }
        }
        if (n == 0) {
            r.fail("point", "need at least one coordinate");
        }
        auto comps = r.polynomials(r.field(root, "map"), n, "map");
        if (comps.size() != n) {
            r.fail("map", "need one component per variable");
        }
        out.map.emplace(std::move(comps));
        if (root.contains("subvariety")) {
            Subvariety v{r.polynomials(root.at("subvariety"), n, "subvariety")};
            if (v.equations.empty()) {
                r.fail("subvariety", "need at least one equation");
            }
            out.subvariety = std::move(v);
        }
        if (root.contains("samples")) {
            const Json &s = root.at("samples");
            if (!s.is_array()) {
                r.fail("samples", "expected a list of points");
            }
            for (const auto &pt : s) {
                out.samples.push_back(r.rationals(pt, "samples"));
                if (out.samples.back().size() != n) {
                    r.fail("samples", "sample has the wrong number of coordinates");
                }
            }
        }
    } else if (k == "germ") {
        out.kind = Problem::Kind::germ;
        out.eigenvalues = r.rationals(r.field(root, "eigenvalues"), "eigenvalues");
        std::size_t n = out.eigenvalues.size();
        if (n == 0) {
            r.fail("eigenvalues", "need at least one eigenvalue");
        }
        for (const auto &l : out.eigenvalues) {
            if (l == 0) {
                r.fail("eigenvalues", "eigenvalues must be nonzero");
            }
        }
        if (root.contains("higher_terms")) {
            out.higher_terms = r.polynomials(root.at("higher_terms"), n, "higher_terms");
            if (out.higher_terms.size() != n) {
                r.fail("higher_terms", "need one polynomial per eigenvalue");
            }
            for (const auto &h : out.higher_terms) {
                for (const auto &[e, c] : h.terms()) {
                    if (total_degree(e) < 2) {
                        r.fail("higher_terms", "terms of degree below 2 are not allowed");
                    }
                }
            }
        }
    } else {
        r.fail("kind", "expected \"recurrence\", \"selfmap\" or \"germ\"");
    }
    if (root.contains("options")) {
        const Json &o = root.at("options");
        if (!o.is_object()) {
            r.fail("options", "expected an object");
        }
        if (o.contains("prime")) {
            out.options.prime = r.natural<std::uint64_t>(o.at("prime"), "prime");
        }
        if (o.contains("precision")) {
            out.options.precision = r.natural<long>(o.at("precision"), "precision");
        }
        if (o.contains("horizon")) {
            out.options.horizon = r.natural<std::uint64_t>(o.at("horizon"), "horizon");
        }
        if (o.contains("degree")) {
            out.options.degree = r.natural<unsigned>(o.at("degree"), "degree");
        }
    }
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Problem load_problem(const std::string &path)
{
    return parse_problem(read_file(path));
}

Json polynomial_to_json(const Polynomial &poly)
{
    Json out = Json::array();
    for (const auto &[e, c] : poly.terms()) {
        out.push_back(Json::array({exponent_json(e), to_string(Integer{c.get_num()}), to_string(Integer{c.get_den()})}));
    }
    return out;
}

Json rationals_to_json(std::span<const Rational> values)
{
    Json out = Json::array();
    for (const auto &q : values) {
        out.push_back(to_string(q));
    }
    return out;
}

Json to_json(const ZeroSetCertificate &cert)
{
    Json j;
    j["prime"] = cert.prime;
    j["precision"] = cert.precision;
    j["modulus"] = cert.modulus;
    j["progressions"] = integer_list(cert.progressions);
    j["sporadic"] = integer_list(cert.sporadic);
    j["verified_bound"] = cert.verified_bound;
    j["companion_order"] = cert.companion_order;
    j["class_bounds"] = long_list(cert.class_bounds);
    j["scan_bound"] = cert.scan_bound;
    j["complete"] = cert.complete;
    return j;
}

ZeroSetCertificate zero_set_from_json(const Json &j)
{
    ZeroSetCertificate c;
    c.prime = j.at("prime").get<std::uint64_t>();
    c.precision = j.value("precision", 0L);
    c.modulus = j.at("modulus").get<std::uint64_t>();
    c.progressions = integer_list_from(j.at("progressions"));
    c.sporadic = integer_list_from(j.at("sporadic"));
    c.verified_bound = j.at("verified_bound").get<std::uint64_t>();
    c.companion_order = j.value("companion_order", std::uint64_t{0});
    c.class_bounds = long_list_from(j.value("class_bounds", Json::array()));
    c.scan_bound = j.value("scan_bound", std::uint64_t{0});
    c.complete = j.value("complete", false);
    return c;
}

Json to_json(const ReturnSetCertificate &cert)
{
    Json j;
    j["prime"] = cert.prime;
    j["precision"] = cert.precision;
    j["tail"] = cert.tail;
    j["uniformizer_stride"] = cert.uniformizer_stride;
    j["stride"] = cert.stride;
    j["progressions"] = integer_list(cert.progressions);
    j["sporadic"] = integer_list(cert.sporadic);
    j["verified_bound"] = cert.verified_bound;
    j["class_bounds"] = long_list(cert.class_bounds);
    j["scan_bound"] = cert.scan_bound;
    j["complete"] = cert.complete;
    return j;
}

ReturnSetCertificate return_set_from_json(const Json &j)
{
    ReturnSetCertificate c;
    c.prime = j.at("prime").get<std::uint64_t>();
    c.precision = j.value("precision", 0L);
    c.tail = j.value("tail", std::uint64_t{0});
    c.uniformizer_stride = j.value("uniformizer_stride", std::uint64_t{1});
    c.stride = j.at("stride").get<std::uint64_t>();
    c.progressions = integer_list_from(j.at("progressions"));
    c.sporadic = integer_list_from(j.at("sporadic"));
    c.verified_bound = j.at("verified_bound").get<std::uint64_t>();
    c.class_bounds = long_list_from(j.value("class_bounds", Json::array()));
    c.scan_bound = j.value("scan_bound", std::uint64_t{0});
    c.complete = j.value("complete", false);
    return c;
}

std::string to_string(PreperiodicityVerdict::Kind kind)
{
    switch (kind) {
    case PreperiodicityVerdict::Kind::not_preperiodic:
        return "NotPreperiodic";
    case PreperiodicityVerdict::Kind::periodic_detected:
        return "PeriodicDetected";
    case PreperiodicityVerdict::Kind::inconclusive:
        return "Inconclusive";
    }
    return "Inconclusive";
}

Json to_json(const PreperiodicityVerdict &v)
{
    Json j;
    j["verdict"] = to_string(v.kind);
    j["prime"] = v.prime;
    j["precision"] = v.precision;
    j["tail"] = v.tail;
    j["stride"] = v.stride;
    if (v.kind == PreperiodicityVerdict::Kind::not_preperiodic) {
        j["witness"] = {{"class", v.witness_class},
                        {"index", v.witness_index},
                        {"coordinate", v.witness_coordinate},
                        {"valuation", v.witness_valuation}};
    }
    if (v.kind == PreperiodicityVerdict::Kind::periodic_detected) {
        j["preperiod"] = v.preperiod;
        j["period"] = v.period;
    }
    return j;
}

PreperiodicityVerdict verdict_from_json(const Json &j)
{
    PreperiodicityVerdict v;
    std::string kind = j.at("verdict").get<std::string>();
    if (kind == "NotPreperiodic") {
        v.kind = PreperiodicityVerdict::Kind::not_preperiodic;
        const Json &w = j.at("witness");
        v.witness_class = w.at("class").get<std::uint64_t>();
        v.witness_index = w.at("index").get<std::uint64_t>();
        v.witness_coordinate = w.at("coordinate").get<std::uint64_t>();
        v.witness_valuation = w.at("valuation").get<long>();
    } else if (kind == "PeriodicDetected") {
        v.kind = PreperiodicityVerdict::Kind::periodic_detected;
        v.preperiod = j.at("preperiod").get<std::uint64_t>();
        v.period = j.at("period").get<std::uint64_t>();
    } else if (kind == "Inconclusive") {
        v.kind = PreperiodicityVerdict::Kind::inconclusive;
    } else {
        throw DomainError("unknown verdict " + kind);
    }
    v.prime = j.at("prime").get<std::uint64_t>();
    v.precision = j.at("precision").get<long>();
    v.tail = j.value("tail", std::uint64_t{0});
    v.stride = j.value("stride", std::uint64_t{1});
    return v;
}

Json to_json(const OrbitInterpolation &orbit)
{
    Json j;
    j["prime"] = orbit.prime.value();
    j["precision"] = orbit.precision;
    j["tail"] = orbit.tail_length;
    j["cycle_length"] = orbit.cycle_length;
    j["linear_order"] = orbit.linear_order;
    j["stride"] = orbit.stride;
    j["congruent_to_identity"] = orbit.global;
    j["decay"] = to_string(orbit.thetas.empty() ? Rational{1} : orbit.thetas[0].decay);
    Json thetas = Json::array();
    for (std::size_t i = 0; i < orbit.thetas.size(); ++i) {
        const MahlerFunction &g = orbit.thetas[i];
        Json coeffs = Json::array();
        Json vals = Json::array();
        for (const auto &row : g.coefficients) {
            Json c = Json::array();
            Json v = Json::array();
            for (const auto &a : row) {
                c.push_back(to_string(a.residue(orbit.precision)));
                if (a.is_zero()) {
                    v.push_back(nullptr);
                } else {
                    v.push_back(a.valuation());
                }
            }
            coeffs.push_back(std::move(c));
            vals.push_back(std::move(v));
        }
        thetas.push_back({{"class", i}, {"coefficients", std::move(coeffs)}, {"valuations", std::move(vals)}});
    }
    j["thetas"] = std::move(thetas);
    j["agreement"] = {{"horizon", orbit.verified_horizon}, {"digits", orbit.verified_digits}};
    return j;
}

Json to_json(const ResonanceReport &report)
{
    Json j;
    Json list = Json::array();
    for (const auto &r : report.resonances) {
        list.push_back({{"target", r.target + 1}, {"exponents", exponent_json(r.exponents)}});
    }
    j["resonant"] = !report.resonances.empty();
    j["resonances"] = std::move(list);
    if (report.fibered_nonresonant) {
        j["fibered_nonresonant"] = *report.fibered_nonresonant;
    }
    return j;
}

Json series_to_json(const RationalSeries &s)
{
    Json out = Json::array();
    for (const auto &[e, c] : s.terms()) {
        out.push_back(Json::array({exponent_json(e), to_string(Integer{c.get_num()}), to_string(Integer{c.get_den()})}));
    }
    return out;
}

RationalSeries series_from_json(const Json &j, std::size_t num_vars, unsigned degree_cap)
{
    RationalSeries out(num_vars, degree_cap);
    for (const auto &mono : j) {
        Exponent e;
        for (const auto &k : mono.at(0)) {
            e.push_back(k.get<std::uint32_t>());
        }
        if (e.size() != num_vars) {
            throw DomainError("series term has the wrong number of variables");
        }
        out.add_term(e, parse_rational(mono.at(1).get<std::string>()) / parse_rational(mono.at(2).get<std::string>()));
    }
    return out;
}

Json to_json(const ConjugacyResult &result)
{
    Json j;
    j["solved_degree"] = result.solved_degree;
    Json h = Json::array();
    for (const auto &s : result.h) {
        h.push_back(series_to_json(s));
    }
    j["h"] = std::move(h);
    return j;
}

Json to_json(const SiegelReport &report)
{
    Json j;
    Json rows = Json::array();
    for (const auto &r : report.rows) {
        Json row{{"degree", r.degree}, {"min_norm", to_string(r.min_norm)}};
        if (r.max_valuation) {
            row["valuation"] = *r.max_valuation;
        } else {
            row["valuation"] = nullptr;
            row["resonant"] = true;
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["min_norm"] = to_string(report.min_norm);
    j["resonant"] = report.resonant;
    return j;
}

Json to_json(const RankReport &report)
{
    Json j;
    j["rank"] = report.rank;
    Json rel = Json::array();
    for (const auto &r : report.relations) {
        Json v = Json::array();
        for (const auto &x : r) {
            v.push_back(to_string(x));
        }
        rel.push_back(std::move(v));
    }
    j["relations"] = std::move(rel);
    Json basis = Json::array();
    for (const auto &b : report.basis) {
        basis.push_back(to_string(b));
    }
    j["basis"] = std::move(basis);
    return j;
}

} // namespace padyn
