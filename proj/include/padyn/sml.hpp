#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <padyn/arith.hpp>
#include <padyn/padic.hpp>

namespace padyn {

/// a_{n+r} = c_0 a_n + c_1 a_{n+1} + ... + c_{r-1} a_{n+r-1}.
struct LinearRecurrence {
    std::vector<Rational> coefficients;
    std::vector<Rational> initial;

    std::size_t order() const noexcept { return coefficients.size(); }
    /// Throws BadRecurrence on mismatched lengths, empty data or c_0 = 0.
    void validate() const;
    /// Companion matrix acting on (a_n, ..., a_{n+r-1}).
    std::vector<std::vector<Rational>> companion() const;
};

/// a_0, ..., a_{count-1}.
std::vector<Rational> recurrence_terms(const LinearRecurrence &rec, std::uint64_t count);
/// a_n by repeated squaring of the companion matrix.
Rational recurrence_term(const LinearRecurrence &rec, std::uint64_t n);

struct ZeroSetCertificate {
    std::uint64_t prime = 0;
    long precision = 0;
    std::uint64_t modulus = 1;
    /// Offsets m, each meaning {m + modulus k : k >= 0}.
    std::vector<std::uint64_t> progressions;
    std::vector<std::uint64_t> sporadic;
    std::uint64_t verified_bound = 0;

    // Diagnostics from the p-adic analysis (not needed to check the zero pattern).
    std::uint64_t companion_order = 0;
    /// Per residue class mod companion_order: Strassmann bound, or -1 for vanishing classes.
    std::vector<long> class_bounds;
    /// Sporadic zeros were searched up to here.
    std::uint64_t scan_bound = 0;
    /// True when every class reached its Strassmann bound, so no zero lies beyond the scan.
    bool complete = false;

    bool covers(std::uint64_t n) const;
};

/// Smallest N' with M^N' == I mod p; BadPrime when p divides a denominator or c_0.
std::uint64_t companion_order_mod_p(const LinearRecurrence &rec, Prime p);

struct ZeroSetOptions {
    PrecisionPolicy policy;
    std::uint64_t prime_start = 5;
    std::uint64_t horizon = 200;
};

ZeroSetCertificate zero_set(const LinearRecurrence &rec, const ZeroSetOptions &options = {});

/// First n <= horizon where the exact zero pattern disagrees with the certificate.
std::optional<std::uint64_t> first_mismatch(const LinearRecurrence &rec, const ZeroSetCertificate &cert,
                                            std::uint64_t horizon);
bool verify_certificate(const LinearRecurrence &rec, const ZeroSetCertificate &cert, std::uint64_t horizon);

} // namespace padyn
