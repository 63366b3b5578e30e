#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <padyn/dml.hpp>
#include <padyn/linearizer.hpp>
#include <padyn/polynomial.hpp>
#include <padyn/sml.hpp>
#include <padyn/uniformizer.hpp>

namespace padyn {

using Json = nlohmann::ordered_json;

inline constexpr const char *tool_name = "padyn";
inline constexpr const char *tool_version = "0.1.0";

struct ProblemOptions {
    std::optional<std::uint64_t> prime;
    std::optional<long> precision;
    std::optional<std::uint64_t> horizon;
    std::optional<unsigned> degree;
};

struct Problem {
    enum class Kind { recurrence, selfmap, germ };
    Kind kind = Kind::recurrence;

    LinearRecurrence recurrence;

    std::optional<PolySelfMap> map;
    std::vector<Rational> point;
    std::optional<Subvariety> subvariety;
    std::vector<std::vector<Rational>> samples;

    std::vector<Rational> eigenvalues;
    /// Higher-order terms as polynomials; turned into series at the requested degree.
    std::vector<Polynomial> higher_terms;

    ProblemOptions options;
    /// The parsed document, echoed into certificates.
    Json source;

    MapGerm germ(unsigned degree) const;
};

std::string to_string(Problem::Kind kind);

/// Throws ParseError with a 1-based line and column.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string &path);
/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string &path);

Json polynomial_to_json(const Polynomial &poly);
Json rationals_to_json(std::span<const Rational> values);

Json to_json(const ZeroSetCertificate &cert);
ZeroSetCertificate zero_set_from_json(const Json &j);
Json to_json(const ReturnSetCertificate &cert);
ReturnSetCertificate return_set_from_json(const Json &j);
Json to_json(const PreperiodicityVerdict &verdict);
PreperiodicityVerdict verdict_from_json(const Json &j);
Json to_json(const OrbitInterpolation &orbit);
Json to_json(const ResonanceReport &report);
Json to_json(const ConjugacyResult &result);
Json to_json(const SiegelReport &report);
Json to_json(const RankReport &report);
Json series_to_json(const RationalSeries &s);
RationalSeries series_from_json(const Json &j, std::size_t num_vars, unsigned degree_cap);

std::string to_string(PreperiodicityVerdict::Kind kind);

} // namespace padyn
