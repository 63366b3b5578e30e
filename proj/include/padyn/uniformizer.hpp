#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <padyn/modular.hpp>
#include <padyn/padic.hpp>
#include <padyn/polynomial.hpp>
#include <padyn/series.hpp>

namespace padyn {

struct CycleData {
    std::uint64_t tail_length = 0;
    std::uint64_t cycle_length = 1;
    std::vector<ResiduePoint> cycle_points;
};

/// Brent cycle detection on the finite set (Z/m)^n.
CycleData find_cycle(const ModMap &map, const ResiduePoint &x);

/// Smallest prime p >= max(5, start) at which map, x and extra are p-integral and the
/// Jacobian determinant is a unit along the whole mod-p forward orbit of x.
Prime good_prime(const PolySelfMap &map, std::span<const Rational> x, std::span<const Rational> extra,
                 std::uint64_t start = 5, std::uint64_t cap = 1000);

/// H(Y) = (map(x + pY) - x) / p for x fixed by the map modulo p.
struct RescaledMap {
    Prime prime;
    PolySelfMap map;
    /// H == id (mod p^c) coefficientwise; infinite_precision when H is the identity.
    long congruence_exponent = 0;
    /// H is the original rescaled map raised to this power.
    std::uint64_t power = 1;
};

RescaledMap rescale_at_point(const PolySelfMap &map, std::span<const Rational> x, Prime p);

/// Order of the reduced affine map Y -> C + L Y.
std::uint64_t linear_order_mod_p(const RescaledMap &h);

/// Replaces F by F^(p^k) until the congruence exponent reaches target.
RescaledMap boost_congruence(const RescaledMap &f, const Rational &target);

/// Forward differences a_m = sum_j (-1)^(m-j) C(m, j) y_j, checked against v(a_m) >= m c.
std::vector<std::vector<PadicNumber>> finite_differences(const std::vector<std::vector<PadicNumber>> &orbit,
                                                         const Rational &decay = Rational{1});

struct OrbitInterpolation {
    Prime prime;
    std::vector<Rational> base_point;
    std::uint64_t tail_length = 0;
    std::uint64_t cycle_length = 1;
    std::uint64_t linear_order = 1;
    std::uint64_t stride = 1;
    /// Digits of every orbit residue and Mahler coefficient.
    long precision = 0;
    /// True when the map itself is congruent to the identity mod p, so no rescaling was needed.
    bool global = false;
    /// thetas[i](k) = f^(T + i + s k)(x).
    std::vector<MahlerFunction> thetas;
    /// Residues mod p^precision of f^n(x) for n < orbit.size().
    std::vector<ResiduePoint> orbit;
    /// Largest k for which every theta_i(k) was checked against the orbit.
    std::uint64_t verified_horizon = 0;
    /// Digits to which the check was made.
    long verified_digits = 0;
};

struct UniformizeOptions {
    PrecisionPolicy policy;
    std::uint64_t prime_start = 5;
    std::uint64_t prime_cap = 1000;
    std::uint64_t horizon = 50;
    std::uint64_t max_stride = 1024;
    /// Extra rational data that must be p-integral (e.g. subvariety coefficients).
    std::vector<Rational> extra;
};

/// Analytic interpolation of the orbit of x at a single precision.
OrbitInterpolation uniformize_orbit_at(const PolySelfMap &f, std::span<const Rational> x,
                                       const UniformizeOptions &options, long precision);

/// As above, retrying with more digits per the policy.
OrbitInterpolation uniformize_orbit(const PolySelfMap &f, std::span<const Rational> x,
                                    const UniformizeOptions &options = {});

} // namespace padyn
