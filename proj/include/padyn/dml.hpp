#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <padyn/modular.hpp>
#include <padyn/padic.hpp>
#include <padyn/polynomial.hpp>
#include <padyn/uniformizer.hpp>

namespace padyn {

/// Zero locus of finitely many polynomials in affine n-space.
struct Subvariety {
    std::vector<Polynomial> equations;

    /// Throws DomainError when there are no equations or the variable counts disagree.
    void validate(std::size_t num_vars) const;
    bool contains(std::span<const Rational> point) const;
    std::vector<Rational> coefficients() const;
    /// Coordinates some equation depends on.
    std::vector<std::size_t> support() const;
};

/// Exact rational iteration of a map on the coordinates it needs, with a size guard.
class ExactOrbit {
public:
    /// Tracks the dependency closure of `coordinates`; throws HeightBudgetExceeded once the
    /// tracked point needs more than `bit_budget` bits.
    ExactOrbit(const PolySelfMap &f, std::span<const Rational> x, std::vector<std::size_t> coordinates,
               std::size_t bit_budget);

    /// Coordinates kept, in increasing order.
    const std::vector<std::size_t> &coordinates() const noexcept { return coords_; }
    /// f^n(x) restricted to coordinates(); sequential access is cheapest.
    const std::vector<Rational> &at(std::uint64_t n);
    /// Evaluates a polynomial in the original variables at f^n(x).
    Rational evaluate(const Polynomial &poly, std::uint64_t n);

private:
    PolySelfMap map_;
    std::vector<Rational> start_;
    std::vector<std::size_t> coords_;
    std::vector<std::size_t> position_;
    std::size_t budget_;
    std::uint64_t index_ = 0;
    std::vector<Rational> current_;
};

struct ReturnSetCertificate {
    std::uint64_t prime = 0;
    long precision = 0;
    std::uint64_t tail = 0;
    /// Stride of the orbit interpolation.
    std::uint64_t uniformizer_stride = 1;
    /// Common difference of the reported progressions (a divisor of uniformizer_stride).
    std::uint64_t stride = 1;
    /// Offsets o, each meaning {o + stride k : k >= 0}.
    std::vector<std::uint64_t> progressions;
    std::vector<std::uint64_t> sporadic;
    std::uint64_t verified_bound = 0;

    /// Per class j < uniformizer_stride: smallest Strassmann bound, or -1 when the class lies in V.
    std::vector<long> class_bounds;
    std::uint64_t scan_bound = 0;
    /// True when every class reached its Strassmann bound.
    bool complete = false;

    bool covers(std::uint64_t n) const;
    bool covered_by_progression(std::uint64_t n) const;
};

struct DmlOptions {
    PrecisionPolicy policy;
    std::uint64_t prime_start = 5;
    std::uint64_t prime_cap = 1000;
    std::uint64_t horizon = 50;
    std::uint64_t max_stride = 1024;
    std::size_t bit_budget = std::size_t{1} << 20;
};

/// {n : f^n(x) in V} as finitely many progressions plus a finite set.
ReturnSetCertificate return_set(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                                const DmlOptions &options = {});

struct PreperiodicityVerdict {
    enum class Kind { not_preperiodic, periodic_detected, inconclusive };
    Kind kind = Kind::inconclusive;
    std::uint64_t prime = 0;
    long precision = 0;
    std::uint64_t tail = 0;
    std::uint64_t stride = 1;
    // Witness for not_preperiodic: theta_class has a nonzero Mahler coefficient a_index.
    std::uint64_t witness_class = 0;
    std::uint64_t witness_index = 0;
    std::uint64_t witness_coordinate = 0;
    long witness_valuation = 0;
    // For periodic_detected: f^(preperiod + period)(x) = f^preperiod(x).
    std::uint64_t period = 0;
    std::uint64_t preperiod = 0;
};

PreperiodicityVerdict not_preperiodic_witness(const PolySelfMap &f, std::span<const Rational> x,
                                              const DmlOptions &options = {});

/// Smallest l dividing the interpolation stride with f^(lk)(y) in Y for all k, lcm over the samples;
/// nullopt when some sample has no such l.
std::optional<std::uint64_t> subvariety_period(const PolySelfMap &f, const Subvariety &y,
                                               const std::vector<std::vector<Rational>> &samples,
                                               const DmlOptions &options = {});

/// First n <= horizon where membership of f^n(x) in V disagrees with the certificate.
std::optional<std::uint64_t> first_mismatch(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                                            const ReturnSetCertificate &cert, std::uint64_t horizon,
                                            std::size_t bit_budget = std::size_t{1} << 20);
bool check_certificate(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                       const ReturnSetCertificate &cert, std::uint64_t horizon);

} // namespace padyn
