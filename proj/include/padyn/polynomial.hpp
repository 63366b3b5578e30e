#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <padyn/arith.hpp>

namespace padyn {

using Exponent = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponent &e);

/// Multivariate polynomial with rational coefficients; zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Exponent, Rational>;

    explicit Polynomial(std::size_t num_vars = 1) : num_vars_(num_vars) {}

    static Polynomial constant(std::size_t num_vars, const Rational &c);
    static Polynomial variable(std::size_t num_vars, std::size_t index);

    std::size_t num_vars() const noexcept { return num_vars_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint32_t degree() const;
    Rational coefficient(const Exponent &e) const;

    void add_term(const Exponent &e, const Rational &c);

    Rational evaluate(std::span<const Rational> point) const;
    Polynomial derivative(std::size_t var) const;
    /// Substitutes polynomials (all in the same number of variables) for the variables.
    Polynomial substitute(std::span<const Polynomial> values) const;
    /// Indices of variables that appear with positive exponent.
    std::vector<std::size_t> support() const;

    /// All coefficients, for prime screening.
    std::vector<Rational> coefficients() const;

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(const Rational &c, const Polynomial &a);
    friend bool operator==(const Polynomial &a, const Polynomial &b) = default;

    std::string to_string() const;

private:
    std::size_t num_vars_;
    TermMap terms_;
};

Polynomial pow(const Polynomial &a, std::uint32_t k);

/// Polynomial self-map of affine n-space.
class PolySelfMap {
public:
    explicit PolySelfMap(std::vector<Polynomial> components);

    std::size_t num_vars() const noexcept { return components_.size(); }
    const std::vector<Polynomial> &components() const noexcept { return components_; }
    std::uint32_t degree() const;

    std::vector<Rational> operator()(std::span<const Rational> point) const;
    /// Matrix of partial derivatives, row i = gradient of component i.
    std::vector<std::vector<Polynomial>> jacobian() const;
    /// this ∘ inner.
    PolySelfMap compose(const PolySelfMap &inner) const;
    PolySelfMap iterate(std::uint64_t times) const;
    std::vector<Rational> coefficients() const;

    /// Smallest set of coordinates containing `seed` on which the map restricts.
    std::vector<std::size_t> dependency_closure(std::vector<std::size_t> seed) const;

    friend bool operator==(const PolySelfMap &a, const PolySelfMap &b) = default;

private:
    std::vector<Polynomial> components_;
};

PolySelfMap identity_map(std::size_t num_vars);
/// X -> M X for a square rational matrix.
PolySelfMap linear_map(const std::vector<std::vector<Rational>> &matrix);

} // namespace padyn
