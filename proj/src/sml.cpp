#include <padyn/sml.hpp>

#include <algorithm>

#include <padyn/modular.hpp>
#include <padyn/polynomial.hpp>
#include <padyn/series.hpp>
#include <padyn/uniformizer.hpp>

namespace padyn {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix mat_mul(const RationalMatrix &a, const RationalMatrix &b)
{
    std::size_t n = a.size();
    RationalMatrix out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

// Residues of a_n mod m, extended on demand.
class ResidueSequence {
public:
    ResidueSequence(const LinearRecurrence &rec, const Integer &modulus) : modulus_(modulus)
    {
        for (const auto &c : rec.coefficients) {
            coeffs_.push_back(reduce_mod(c, modulus));
        }
        for (const auto &a : rec.initial) {
            terms_.push_back(reduce_mod(a, modulus));
        }
    }

    const Integer &operator[](std::uint64_t n)
    {
        const std::size_t r = coeffs_.size();
        while (terms_.size() <= n) {
            std::size_t base = terms_.size() - r;
            Integer acc = 0;
            for (std::size_t i = 0; i < r; ++i) {
                acc += coeffs_[i] * terms_[base + i];
            }
            terms_.push_back(mod(acc, modulus_));
        }
        return terms_[n];
    }

private:
    Integer modulus_;
    std::vector<Integer> coeffs_;
    std::vector<Integer> terms_;
};

// Exact a_n with a sequential prefix cache and repeated squaring beyond it.
class ExactSequence {
public:
    ExactSequence(const LinearRecurrence &rec, std::uint64_t prefix) : rec_(rec), terms_(recurrence_terms(rec, prefix))
    {
    }

    Rational operator()(std::uint64_t n) const
    {
        return n < terms_.size() ? terms_[n] : recurrence_term(rec_, n);
    }

private:
    const LinearRecurrence &rec_;
    std::vector<Rational> terms_;
};

ZeroSetCertificate zero_set_at(const LinearRecurrence &rec, const ZeroSetOptions &options, Prime p,
                               std::uint64_t order, long precision)
{
    const std::size_t r = rec.order();
    const unsigned long pv = p.value();
    ZeroSetCertificate cert;
    cert.prime = pv;
    cert.precision = precision;
    cert.companion_order = order;
    cert.verified_bound = options.horizon;
    cert.complete = true;

    ResidueSequence residues(rec, prime_power(pv, precision));
    ExactSequence exact(rec, std::max<std::uint64_t>(order * r, options.horizon + 1));

    std::vector<bool> vanishing(order, false);
    cert.class_bounds.assign(order, -1);
    std::vector<std::vector<Integer>> values(precision + 1, std::vector<Integer>(1));
    for (std::uint64_t m = 0; m < order; ++m) {
        // The class satisfies an order-r recurrence, so r exact zeros force it to vanish.
        bool zero = true;
        for (std::uint64_t k = 0; zero && k < r; ++k) {
            zero = exact(m + order * k) == 0;
        }
        if (zero) {
            vanishing[m] = true;
            continue;
        }
        for (long k = 0; k <= precision; ++k) {
            values[k][0] = residues[m + order * static_cast<std::uint64_t>(k)];
        }
        MahlerFunction g = mahler_from_residues(p, values, precision);
        ZeroStructure zs = zero_structure(g, 0);
        if (zs.kind == ZeroStructure::Kind::identically_zero) {
            throw PrecisionExhausted("class " + std::to_string(m) + " is not separated from zero at " +
                                     std::to_string(precision) + " digits");
        }
        cert.class_bounds[m] = static_cast<long>(zs.bound);
        const std::uint64_t limit = std::max<std::uint64_t>(options.horizon, 4 * zs.bound * order + 64);
        cert.scan_bound = std::max(cert.scan_bound, limit);
        std::size_t found = 0;
        for (std::uint64_t n = m; n <= limit && found < zs.bound; n += order) {
            if (residues[n] == 0 && exact(n) == 0) {
                cert.sporadic.push_back(n);
                ++found;
            }
        }
        cert.complete = cert.complete && found == zs.bound;
    }

    auto [d, offsets] = coarsen_classes(vanishing);
    if (offsets.empty()) {
        cert.modulus = order;
    } else {
        cert.modulus = d;
        cert.progressions = std::move(offsets);
    }
    std::sort(cert.sporadic.begin(), cert.sporadic.end());
    if (auto bad = first_mismatch(rec, cert, cert.verified_bound)) {
        throw Error("zero-set certificate fails exact check at n = " + std::to_string(*bad));
    }
    return cert;
}

} // namespace

void LinearRecurrence::validate() const
{
    if (coefficients.empty()) {
        throw BadRecurrence("recurrence needs at least one coefficient");
    }
    if (initial.size() != coefficients.size()) {
        throw BadRecurrence("need exactly r initial terms for an order-r recurrence");
    }
    if (coefficients[0] == 0) {
        throw BadRecurrence("trailing coefficient c_0 must be nonzero");
    }
}

std::vector<std::vector<Rational>> LinearRecurrence::companion() const
{
    const std::size_t r = order();
    RationalMatrix m(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i + 1 < r; ++i) {
        m[i][i + 1] = 1;
    }
    for (std::size_t j = 0; j < r; ++j) {
        m[r - 1][j] = coefficients[j];
    }
    return m;
}

std::vector<Rational> recurrence_terms(const LinearRecurrence &rec, std::uint64_t count)
{
    rec.validate();
    const std::size_t r = rec.order();
    std::vector<Rational> out(rec.initial.begin(), rec.initial.end());
    out.reserve(std::max<std::uint64_t>(count, r));
    while (out.size() < count) {
        std::size_t base = out.size() - r;
        Rational acc = 0;
        for (std::size_t i = 0; i < r; ++i) {
            acc += rec.coefficients[i] * out[base + i];
        }
        out.push_back(acc);
    }
    out.resize(std::min<std::uint64_t>(out.size(), count), Rational{0});
    return out;
}

Rational recurrence_term(const LinearRecurrence &rec, std::uint64_t n)
{
    rec.validate();
    const std::size_t r = rec.order();
    if (n < r) {
        return rec.initial[n];
    }
    RationalMatrix result(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i) {
        result[i][i] = 1;
    }
    RationalMatrix base = rec.companion();
    for (std::uint64_t e = n; e > 0; e >>= 1) {
        if (e & 1) {
            result = mat_mul(result, base);
        }
        if (e > 1) {
            base = mat_mul(base, base);
        }
    }
    Rational acc = 0;
    for (std::size_t j = 0; j < r; ++j) {
        acc += result[0][j] * rec.initial[j];
    }
    return acc;
}

bool ZeroSetCertificate::covers(std::uint64_t n) const
{
    if (std::binary_search(sporadic.begin(), sporadic.end(), n)) {
        return true;
    }
    return std::any_of(progressions.begin(), progressions.end(),
                       [&](std::uint64_t m) { return n >= m && (n - m) % modulus == 0; });
}

std::uint64_t companion_order_mod_p(const LinearRecurrence &rec, Prime p)
{
    rec.validate();
    const unsigned long pv = p.value();
    for (const auto &c : rec.coefficients) {
        if (!is_integral_at(c, pv)) {
            throw BadPrime(std::to_string(pv) + " divides a coefficient denominator");
        }
    }
    if (valuation(rec.coefficients[0], pv) > 0) {
        throw BadPrime(std::to_string(pv) + " divides c_0");
    }
    Integer modulus{pv};
    ResidueMatrix m;
    for (const auto &row : rec.companion()) {
        m.push_back(reduce_point(row, modulus));
    }
    return matrix_order_mod_p(m, pv);
}

ZeroSetCertificate zero_set(const LinearRecurrence &rec, const ZeroSetOptions &options)
{
    rec.validate();
    PolySelfMap shift = linear_map(rec.companion());
    Prime p = good_prime(shift, rec.initial, rec.coefficients, options.prime_start);
    std::uint64_t order = companion_order_mod_p(rec, p);
    return with_retries(options.policy,
                        [&](long precision) { return zero_set_at(rec, options, p, order, precision); });
}

std::optional<std::uint64_t> first_mismatch(const LinearRecurrence &rec, const ZeroSetCertificate &cert,
                                            std::uint64_t horizon)
{
    if (cert.modulus == 0) {
        return 0;
    }
    std::vector<std::uint64_t> sporadic = cert.sporadic;
    std::sort(sporadic.begin(), sporadic.end());
    ZeroSetCertificate sorted = cert;
    sorted.sporadic = std::move(sporadic);
    std::vector<Rational> terms = recurrence_terms(rec, horizon + 1);
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        if ((terms[n] == 0) != sorted.covers(n)) {
            return n;
        }
    }
    return std::nullopt;
}

bool verify_certificate(const LinearRecurrence &rec, const ZeroSetCertificate &cert, std::uint64_t horizon)
{
    return !first_mismatch(rec, cert, horizon).has_value();
}

} // namespace padyn
