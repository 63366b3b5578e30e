#include <padyn/uniformizer.hpp>

#include <algorithm>

namespace padyn {

namespace {

bool all_integral(std::span<const Rational> values, unsigned long p)
{
    return std::all_of(values.begin(), values.end(), [p](const Rational &q) { return is_integral_at(q, p); });
}

// Smallest valuation of a coefficient of map - id; infinite_precision for the identity.
long identity_congruence(const PolySelfMap &map, unsigned long p)
{
    long c = PadicNumber::infinite_precision;
    for (std::size_t i = 0; i < map.num_vars(); ++i) {
        Polynomial diff = map.components()[i] - Polynomial::variable(map.num_vars(), i);
        for (const auto &[e, q] : diff.terms()) {
            c = std::min(c, valuation(q, p));
        }
    }
    return c;
}

} // namespace

CycleData find_cycle(const ModMap &map, const ResiduePoint &x)
{
    std::uint64_t power = 1;
    std::uint64_t lam = 1;
    ResiduePoint tortoise = x;
    ResiduePoint hare = map(x);
    while (tortoise != hare) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = map(hare);
        ++lam;
    }
    std::uint64_t mu = 0;
    tortoise = x;
    hare = x;
    for (std::uint64_t i = 0; i < lam; ++i) {
        hare = map(hare);
    }
    while (tortoise != hare) {
        tortoise = map(tortoise);
        hare = map(hare);
        ++mu;
    }
    CycleData out;
    out.tail_length = mu;
    out.cycle_length = lam;
    out.cycle_points.reserve(lam);
    for (std::uint64_t i = 0; i < lam; ++i) {
        out.cycle_points.push_back(tortoise);
        tortoise = map(tortoise);
    }
    return out;
}

Prime good_prime(const PolySelfMap &map, std::span<const Rational> x, std::span<const Rational> extra,
                 std::uint64_t start, std::uint64_t cap)
{
    if (x.size() != map.num_vars()) {
        throw DomainError("point dimension does not match the map");
    }
    std::vector<Rational> coeffs = map.coefficients();
    for (std::uint64_t p = next_prime(std::max<std::uint64_t>(start, 5) - 1); p <= cap; p = next_prime(p)) {
        if (!all_integral(coeffs, p) || !all_integral(x, p) || !all_integral(extra, p)) {
            continue;
        }
        Integer modulus{static_cast<unsigned long>(p)};
        ModMap fp(map, modulus);
        ModJacobian jac(map, modulus);
        ResiduePoint y = reduce_point(x, modulus);
        CycleData cycle = find_cycle(fp, y);
        bool ok = true;
        for (std::uint64_t n = 0; ok && n < cycle.tail_length + cycle.cycle_length; ++n) {
            ok = det_mod(jac(y), modulus) != 0;
            y = fp(y);
        }
        if (ok) {
            return Prime{p};
        }
    }
    throw NoPrimeFound("no good prime below " + std::to_string(cap));
}

RescaledMap rescale_at_point(const PolySelfMap &map, std::span<const Rational> x, Prime p)
{
    const std::size_t n = map.num_vars();
    if (x.size() != n) {
        throw DomainError("point dimension does not match the map");
    }
    const unsigned long pv = p.value();
    if (!all_integral(map.coefficients(), pv) || !all_integral(x, pv)) {
        throw DomainError("rescaling needs p-integral data");
    }
    std::vector<Rational> image = map(x);
    Integer modulus{pv};
    for (std::size_t i = 0; i < n; ++i) {
        if (reduce_mod(image[i] - x[i], modulus) != 0) {
            throw NotFixedModP("point is not fixed modulo " + std::to_string(pv));
        }
    }
    std::vector<Polynomial> shifted;
    shifted.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        shifted.push_back(Polynomial::constant(n, x[i]) + Rational{modulus} * Polynomial::variable(n, i));
    }
    std::vector<Polynomial> h;
    h.reserve(n);
    Rational inv_p{Integer{1}, modulus};
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial g = map.components()[i].substitute(shifted) - Polynomial::constant(n, x[i]);
        h.push_back(inv_p * g);
    }
    PolySelfMap hm(std::move(h));
    long c = identity_congruence(hm, pv);
    return RescaledMap{p, std::move(hm), c, 1};
}

std::uint64_t linear_order_mod_p(const RescaledMap &h)
{
    const std::size_t n = h.map.num_vars();
    Integer modulus{h.prime.value()};
    Exponent zero(n, 0);
    ResiduePoint constant(n);
    ResidueMatrix linear(n, ResiduePoint(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Polynomial &hi = h.map.components()[i];
        constant[i] = reduce_mod(hi.coefficient(zero), modulus);
        for (std::size_t j = 0; j < n; ++j) {
            Exponent e(n, 0);
            e[j] = 1;
            linear[i][j] = reduce_mod(hi.coefficient(e), modulus);
        }
    }
    return affine_order_mod_p(linear, constant, h.prime.value());
}

RescaledMap boost_congruence(const RescaledMap &f, const Rational &target)
{
    if (f.congruence_exponent <= 0) {
        throw DomainError("boosting needs a map congruent to the identity mod p");
    }
    RescaledMap out = f;
    const unsigned long p = f.prime.value();
    while (out.congruence_exponent < PadicNumber::infinite_precision && Rational{out.congruence_exponent} < target) {
        out.map = out.map.iterate(p);
        out.power *= p;
        out.congruence_exponent = identity_congruence(out.map, p);
    }
    return out;
}

std::vector<std::vector<PadicNumber>> finite_differences(const std::vector<std::vector<PadicNumber>> &orbit,
                                                         const Rational &decay)
{
    if (orbit.empty()) {
        return {};
    }
    std::vector<std::vector<PadicNumber>> work = orbit;
    std::vector<std::vector<PadicNumber>> out;
    out.reserve(orbit.size());
    for (std::size_t m = 0; m < orbit.size(); ++m) {
        out.push_back(work[0]);
        for (std::size_t j = 0; j + 1 < work.size(); ++j) {
            for (std::size_t i = 0; i < work[j].size(); ++i) {
                work[j][i] = work[j + 1][i] - work[j][i];
            }
        }
        work.pop_back();
    }
    MahlerFunction g{orbit[0].at(0).prime(), orbit[0].size(), out, decay};
    check_decay(g);
    return out;
}

OrbitInterpolation uniformize_orbit_at(const PolySelfMap &f, std::span<const Rational> x,
                                       const UniformizeOptions &options, long precision)
{
    if (precision < 4) {
        throw DomainError("working precision must be at least 4");
    }
    const std::size_t n = f.num_vars();
    std::uint64_t start = options.prime_start;
    for (;;) {
        Prime p = good_prime(f, x, options.extra, start, options.prime_cap);
        const unsigned long pv = p.value();
        Integer prime{pv};
        OrbitInterpolation out{p};
        out.base_point.assign(x.begin(), x.end());
        out.precision = precision;
        out.global = identity_congruence(f, pv) >= 1;
        if (!out.global) {
            ModMap fp(f, prime);
            CycleData cycle = find_cycle(fp, reduce_point(x, prime));
            out.tail_length = cycle.tail_length;
            out.cycle_length = cycle.cycle_length;

            // Affine reduction of the rescaled f^l at f^T(x), by the chain rule.
            Integer p2 = prime * prime;
            ModMap f2(f, p2);
            ModJacobian jac(f, prime);
            ResiduePoint y = reduce_point(x, p2);
            for (std::uint64_t k = 0; k < out.tail_length; ++k) {
                y = f2(y);
            }
            ResiduePoint base = y;
            ResidueMatrix linear = identity_matrix(n);
            for (std::uint64_t k = 0; k < out.cycle_length; ++k) {
                linear = mat_mul_mod(jac(reduce_point(y, prime)), linear, prime);
                y = f2(y);
            }
            ResiduePoint constant(n);
            for (std::size_t i = 0; i < n; ++i) {
                Integer d = mod(y[i] - base[i], p2);
                constant[i] = Integer{d / prime};
            }
            out.linear_order = affine_order_mod_p(linear, constant, pv);
        }
        out.stride = out.cycle_length * out.linear_order;
        if (out.stride > options.max_stride) {
            start = pv + 1;
            continue;
        }

        const std::uint64_t big_m = static_cast<std::uint64_t>(precision);
        const std::uint64_t kmax = std::max<std::uint64_t>(big_m, options.horizon);
        const std::uint64_t length = out.tail_length + out.stride * (kmax + 1);
        const Integer &modulus = prime_power(pv, precision);
        ModMap fw(f, modulus);
        out.orbit.reserve(length);
        out.orbit.push_back(reduce_point(x, modulus));
        while (out.orbit.size() < length) {
            out.orbit.push_back(fw(out.orbit.back()));
        }

        out.thetas.reserve(out.stride);
        std::vector<ResiduePoint> values(big_m + 1);
        for (std::uint64_t i = 0; i < out.stride; ++i) {
            for (std::uint64_t k = 0; k <= big_m; ++k) {
                values[k] = out.orbit[out.tail_length + i + out.stride * k];
            }
            out.thetas.push_back(mahler_from_residues(p, values, precision));
        }

        for (std::uint64_t i = 0; i < out.stride; ++i) {
            for (std::uint64_t k = 0; k <= options.horizon; ++k) {
                auto value = mahler_evaluate(out.thetas[i], k);
                const ResiduePoint &expect = out.orbit[out.tail_length + i + out.stride * k];
                for (std::size_t c = 0; c < n; ++c) {
                    if (value[c].residue(precision) != expect[c]) {
                        throw PrecisionExhausted("interpolation disagrees with iteration at class " +
                                                 std::to_string(i) + ", k = " + std::to_string(k));
                    }
                }
            }
        }
        out.verified_horizon = options.horizon;
        out.verified_digits = precision;
        return out;
    }
}

OrbitInterpolation uniformize_orbit(const PolySelfMap &f, std::span<const Rational> x,
                                    const UniformizeOptions &options)
{
    return with_retries(options.policy,
                        [&](long precision) { return uniformize_orbit_at(f, x, options, precision); });
}

} // namespace padyn
