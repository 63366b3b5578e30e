#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <padyn/arith.hpp>
#include <padyn/polynomial.hpp>

namespace padyn {

using ResiduePoint = std::vector<Integer>;
using ResidueMatrix = std::vector<std::vector<Integer>>;

/// Polynomial with coefficients reduced into Z / m.
class ModPoly {
public:
    /// Requires every coefficient to have a denominator invertible modulo m.
    ModPoly(const Polynomial &poly, const Integer &modulus);

    const Integer &modulus() const noexcept { return modulus_; }
    Integer operator()(std::span<const Integer> point) const;

private:
    std::size_t num_vars_;
    std::uint32_t max_exp_ = 0;
    Integer modulus_;
    std::vector<std::pair<Exponent, Integer>> terms_;
};

/// Polynomial self-map reduced modulo m (a prime or a prime power).
class ModMap {
public:
    ModMap(const PolySelfMap &map, const Integer &modulus);

    const Integer &modulus() const noexcept { return modulus_; }
    std::size_t num_vars() const noexcept { return components_.size(); }
    ResiduePoint operator()(std::span<const Integer> point) const;

private:
    Integer modulus_;
    std::vector<ModPoly> components_;
};

/// Jacobian of a map reduced modulo a prime.
class ModJacobian {
public:
    ModJacobian(const PolySelfMap &map, const Integer &modulus);
    ResidueMatrix operator()(std::span<const Integer> point) const;

private:
    Integer modulus_;
    std::vector<std::vector<ModPoly>> entries_;
};

ResiduePoint reduce_point(std::span<const Rational> point, const Integer &modulus);
ResiduePoint reduce_point(std::span<const Integer> point, const Integer &modulus);

/// Determinant over the field Z/p (p prime).
Integer det_mod(ResidueMatrix a, const Integer &p);
ResidueMatrix mat_mul_mod(const ResidueMatrix &a, const ResidueMatrix &b, const Integer &m);
ResiduePoint mat_vec_mod(const ResidueMatrix &a, std::span<const Integer> v, const Integer &m);
ResidueMatrix identity_matrix(std::size_t n);
bool is_identity(const ResidueMatrix &a);

/// |GL_n(F_p)|.
Integer general_linear_order(std::size_t n, unsigned long p);

/// Multiplicative order of an invertible matrix mod p; throws SingularLinearPart when det = 0.
std::uint64_t matrix_order_mod_p(const ResidueMatrix &a, unsigned long p);

/// Order of the affine map Y -> C + L Y on F_p^n; throws SingularLinearPart when det L = 0.
std::uint64_t affine_order_mod_p(const ResidueMatrix &linear, std::span<const Integer> constant, unsigned long p);

} // namespace padyn
