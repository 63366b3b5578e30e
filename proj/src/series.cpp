#include <padyn/series.hpp>

namespace padyn {

namespace {

long ceil_rational(const Rational &q)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out.get_si();
}

} // namespace

RationalSeries to_series(const Polynomial &poly, unsigned degree_cap)
{
    RationalSeries out(poly.num_vars(), degree_cap);
    for (const auto &[e, c] : poly.terms()) {
        out.add_term(e, c);
    }
    return out;
}

TruncatedSeries to_padic_series(const RationalSeries &s, Prime p, long precision)
{
    TruncatedSeries out(s.num_vars(), s.degree_cap());
    for (const auto &[e, c] : s.terms()) {
        out.add_term(e, from_rational(c, p, precision));
    }
    return out;
}

TruncatedSeries to_padic_series(const Polynomial &poly, unsigned degree_cap, Prime p, long precision)
{
    return to_padic_series(to_series(poly, degree_cap), p, precision);
}

RationalSeries rational_variable(std::size_t num_vars, unsigned cap, std::size_t index)
{
    return to_series(Polynomial::variable(num_vars, index), cap);
}

TruncatedSeries padic_variable(std::size_t num_vars, unsigned cap, std::size_t index, Prime p, long precision)
{
    return to_padic_series(Polynomial::variable(num_vars, index), cap, p, precision);
}

long MahlerFunction::tail_valuation() const
{
    return ceil_rational(Rational{static_cast<long>(truncation() + 1)} * decay);
}

MahlerFunction mahler_from_residues(Prime p, const std::vector<std::vector<Integer>> &values, long precision,
                                    const Rational &decay)
{
    const std::size_t n = values.empty() ? 0 : values[0].size();
    const std::size_t count = values.size();
    const Integer &modulus = prime_power(p.value(), precision);
    MahlerFunction g{p, n, {}, decay};
    g.coefficients.assign(count, std::vector<PadicNumber>(n, PadicNumber::exact_zero(p)));
    std::vector<Integer> diff(count);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t k = 0; k < count; ++k) {
            diff[k] = values[k][c];
        }
        for (std::size_t m = 0; m < count; ++m) {
            g.coefficients[m][c] = PadicNumber::from_residue(mod(diff[0], modulus), p, precision);
            for (std::size_t j = 0; j + 1 + m < count; ++j) {
                diff[j] = diff[j + 1] - diff[j];
            }
        }
    }
    check_decay(g);
    return g;
}

void check_decay(const MahlerFunction &g)
{
    for (std::size_t m = 0; m < g.coefficients.size(); ++m) {
        long need = ceil_rational(Rational{static_cast<long>(m)} * g.decay);
        for (std::size_t i = 0; i < g.coefficients[m].size(); ++i) {
            const PadicNumber &a = g.coefficients[m][i];
            if (a.is_exact_zero()) {
                continue;
            }
            // For zeros valuation() is the certified lower bound.
            if (a.valuation() < need) {
                throw DecayViolation("Mahler coefficient a_" + std::to_string(m) + "[" + std::to_string(i) +
                                     "] has valuation " + std::to_string(a.valuation()) + " < " +
                                     std::to_string(need));
            }
        }
    }
}

std::vector<PadicNumber> mahler_evaluate(const MahlerFunction &g, std::uint64_t k)
{
    const std::size_t big_m = g.truncation();
    const std::size_t last = static_cast<std::size_t>(std::min<std::uint64_t>(k, big_m));
    const unsigned long p = g.prime.value();
    const bool truncated = k > big_m;
    std::vector<PadicNumber> out;
    out.reserve(g.dimension);
    for (std::size_t i = 0; i < g.dimension; ++i) {
        bool integral = true;
        bool all_exact_zero = true;
        long precision = truncated ? g.tail_valuation() : PadicNumber::infinite_precision;
        for (std::size_t m = 0; m <= last; ++m) {
            const PadicNumber &a = g.coefficients[m][i];
            if (a.is_exact_zero()) {
                continue;
            }
            all_exact_zero = false;
            integral = integral && a.valuation() >= 0;
            precision = std::min(precision, a.abs_precision());
        }
        if (all_exact_zero) {
            out.push_back(truncated ? PadicNumber::zero_to(g.prime, g.tail_valuation())
                                    : PadicNumber::exact_zero(g.prime));
            continue;
        }
        if (integral) {
            const Integer &modulus = prime_power(p, precision);
            Integer acc = 0;
            Integer binom = 1;
            for (std::size_t m = 0; m <= last; ++m) {
                if (m > 0) {
                    // C(k, m) = C(k, m-1) (k - m + 1) / m
                    binom *= static_cast<unsigned long>(k - m + 1);
                    binom /= static_cast<unsigned long>(m);
                }
                const PadicNumber &a = g.coefficients[m][i];
                if (!a.is_exact_zero()) {
                    acc += binom * a.residue(precision);
                }
            }
            out.push_back(PadicNumber::from_residue(mod(acc, modulus), g.prime, precision));
            continue;
        }
        PadicNumber acc = PadicNumber::exact_zero(g.prime);
        for (std::size_t m = 0; m <= last; ++m) {
            acc += mul_exact(g.coefficients[m][i], binomial(k, m));
        }
        out.push_back(truncated ? acc.truncated(g.tail_valuation()) : acc);
    }
    return out;
}

std::vector<PadicNumber> mahler_evaluate(const MahlerFunction &g, const PadicNumber &t)
{
    if (!t.is_zero() && t.valuation() < 0) {
        throw DomainError("Mahler series are evaluated on Z_p only");
    }
    std::vector<PadicNumber> out(g.dimension, PadicNumber::exact_zero(g.prime));
    for (std::size_t m = 0; m < g.coefficients.size(); ++m) {
        PadicNumber b = binom_padic(t, m);
        for (std::size_t i = 0; i < g.dimension; ++i) {
            out[i] += b * g.coefficients[m][i];
        }
    }
    for (auto &x : out) {
        x = x.truncated(g.tail_valuation());
    }
    return out;
}

std::vector<std::vector<Integer>> stirling_first_kind(std::size_t max_m)
{
    std::vector<std::vector<Integer>> s(max_m + 1);
    s[0] = {Integer{1}};
    for (std::size_t m = 0; m < max_m; ++m) {
        s[m + 1].assign(m + 2, Integer{0});
        for (std::size_t j = 0; j <= m + 1; ++j) {
            Integer v = 0;
            if (j >= 1) {
                v += s[m][j - 1];
            }
            if (j <= m) {
                v -= static_cast<unsigned long>(m) * s[m][j];
            }
            s[m + 1][j] = v;
        }
    }
    return s;
}

PowerSeriesForm mahler_to_powerseries(const MahlerFunction &g)
{
    const unsigned long p = g.prime.value();
    Rational threshold{1, static_cast<unsigned long>(p - 1)};
    if (g.decay <= threshold) {
        throw DomainError("power-series form needs decay c > 1/(p-1)");
    }
    const std::size_t big_m = g.truncation();
    auto s = stirling_first_kind(big_m);
    PowerSeriesForm out;
    out.tail_valuation = ceil_rational(Rational{static_cast<long>(big_m + 1)} * g.decay -
                                       Rational{static_cast<long>(big_m), static_cast<unsigned long>(p - 1)});
    out.coefficients.assign(big_m + 1, std::vector<PadicNumber>(g.dimension, PadicNumber::exact_zero(g.prime)));
    for (std::size_t m = 0; m <= big_m; ++m) {
        Integer fact = factorial(m);
        for (std::size_t i = 0; i < g.dimension; ++i) {
            const PadicNumber &a = g.coefficients[m][i];
            if (a.is_exact_zero()) {
                continue;
            }
            PadicNumber scaled = div_exact(a, fact);
            for (std::size_t j = 0; j <= m; ++j) {
                if (s[m][j] == 0) {
                    continue;
                }
                out.coefficients[j][i] += mul_exact(scaled, s[m][j]);
            }
        }
    }
    return out;
}

ZeroStructure strassmann_zero_structure(std::span<const PadicNumber> b, long tail_valuation, long min_threshold)
{
    const bool exact_tail = tail_valuation >= PadicNumber::infinite_precision;
    std::vector<long> effective(b.size());
    bool all_exact_zero = true;
    long vstar = PadicNumber::infinite_precision;
    for (std::size_t j = 0; j < b.size(); ++j) {
        effective[j] = std::min(b[j].abs_precision(), tail_valuation);
        all_exact_zero = all_exact_zero && b[j].is_exact_zero();
        if (!b[j].is_zero() && b[j].valuation() < effective[j]) {
            vstar = std::min(vstar, b[j].valuation());
        }
    }

    ZeroStructure out;
    if (vstar == PadicNumber::infinite_precision) {
        out.kind = ZeroStructure::Kind::identically_zero;
        if (all_exact_zero && exact_tail) {
            out.threshold = PadicNumber::infinite_precision;
            return out;
        }
        long threshold = tail_valuation;
        for (long e : effective) {
            threshold = std::min(threshold, e);
        }
        if (threshold < min_threshold) {
            throw PrecisionExhausted("all power-series coefficients vanish only to " + std::to_string(threshold) +
                                     " digits");
        }
        out.needs_confirmation = true;
        out.threshold = threshold;
        return out;
    }

    std::size_t bound = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b[j].is_zero() && b[j].valuation() == vstar && vstar < effective[j]) {
            bound = j;
        }
    }
    // Coefficients not resolved at this precision must provably stay below the maximum.
    for (std::size_t j = 0; j < b.size(); ++j) {
        bool known = !b[j].is_zero() && b[j].valuation() < effective[j];
        if (known) {
            continue;
        }
        if ((j < bound && effective[j] < vstar) || (j > bound && effective[j] <= vstar)) {
            throw PrecisionExhausted("maximal-norm index ambiguous at coefficient " + std::to_string(j));
        }
    }
    if (!exact_tail && tail_valuation <= vstar) {
        throw PrecisionExhausted("tail bound does not dominate the maximal coefficient");
    }
    out.kind = ZeroStructure::Kind::finitely_many;
    out.bound = bound;
    out.threshold = vstar;
    return out;
}

ZeroStructure zero_structure(const MahlerFunction &g, std::size_t coordinate, long min_threshold)
{
    if (coordinate >= g.dimension) {
        throw DomainError("coordinate out of range");
    }
    check_decay(g);
    PowerSeriesForm ps = mahler_to_powerseries(g);
    std::vector<PadicNumber> column;
    column.reserve(ps.coefficients.size());
    for (const auto &row : ps.coefficients) {
        column.push_back(row[coordinate].truncated(ps.tail_valuation));
    }
    return strassmann_zero_structure(column, ps.tail_valuation, min_threshold);
}

} // namespace padyn
