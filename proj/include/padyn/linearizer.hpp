#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <padyn/arith.hpp>
#include <padyn/padic.hpp>
#include <padyn/series.hpp>

namespace padyn {

/// f(x) = Λx + higher terms at a fixed point, with Λ = diag(eigenvalues).
struct MapGerm {
    std::vector<Rational> eigenvalues;
    /// One series per component, no constant or linear terms.
    std::vector<RationalSeries> higher_terms;

    std::size_t num_vars() const noexcept { return eigenvalues.size(); }
    void validate() const;
};

/// λ^m = λ_target with |m| >= 2.
struct Resonance {
    std::size_t target = 0;
    Exponent exponents;

    friend bool operator==(const Resonance &, const Resonance &) = default;
};

struct ResonanceReport {
    std::vector<Resonance> resonances;
    /// Present when some eigenvalue is 1: whether the block of the other eigenvalues is
    /// free of resonances among themselves.
    std::optional<bool> fibered_nonresonant;
};

/// All resonances with 2 <= |m| <= max_degree, ordered by degree, exponent, target.
ResonanceReport find_resonances(std::span<const Rational> lambda, unsigned max_degree);

struct ConjugacyResult {
    /// h with identity linear part and h(Λx) = f(h(x)) through solved_degree.
    std::vector<RationalSeries> h;
    unsigned solved_degree = 0;
};

ConjugacyResult formal_linearize(const MapGerm &f, unsigned degree);

/// Coefficients of h(Λx) - f(h(x)) through the smaller degree cap; empty series mean the identity holds.
std::vector<RationalSeries> conjugacy_defect(const MapGerm &f, const std::vector<RationalSeries> &h);

struct SiegelRow {
    unsigned degree = 0;
    /// Largest v_p(λ^m - λ_j) over |m| = degree (the smallest divisor); nullopt when one is exactly zero.
    std::optional<long> max_valuation;
    /// p^(-min_valuation), or 0 for a vanishing divisor.
    Rational min_norm;
};

struct SiegelReport {
    std::vector<SiegelRow> rows;
    Rational min_norm;
    bool resonant = false;
};

/// Small divisors |λ^m - λ_j|_p for 2 <= |m| <= max_degree; BadPrime unless every λ_i is a p-adic unit.
SiegelReport siegel_report(std::span<const Rational> lambda, Prime p, unsigned max_degree);

struct RankReport {
    std::size_t rank = 0;
    /// Primitive integer vectors r with prod λ_i^r_i = ±1, a basis of all such relations.
    std::vector<std::vector<Integer>> relations;
    /// Multiplicative basis used for the exponent matrix (pairwise coprime, > 1).
    std::vector<Integer> basis;
};

RankReport multiplicative_rank(std::span<const Rational> lambda);

} // namespace padyn
