#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <padyn/arith.hpp>
#include <padyn/errors.hpp>
#include <padyn/padic.hpp>
#include <padyn/polynomial.hpp>

namespace padyn {

namespace detail {

inline bool is_exact_zero(const Rational &c)
{
    return c == 0;
}
inline bool is_exact_zero(const PadicNumber &c)
{
    return c.is_exact_zero();
}

// Inner series of a composition must have a constant term of positive valuation.
inline bool admissible_constant(const Rational &c)
{
    return c == 0;
}
inline bool admissible_constant(const PadicNumber &c)
{
    return c.is_exact_zero() || c.valuation() >= 1;
}

inline Rational tail_capped(const Rational &value, std::span<const Rational>, unsigned)
{
    return value;
}

// The neglected terms of degree > cap are assumed p-integral, so they contribute
// at valuation >= (cap + 1) * min v(point).
inline PadicNumber tail_capped(const PadicNumber &value, std::span<const PadicNumber> point, unsigned cap)
{
    long vmin = PadicNumber::infinite_precision;
    for (const auto &x : point) {
        if (!x.is_exact_zero()) {
            vmin = std::min(vmin, x.valuation());
        }
    }
    if (vmin == PadicNumber::infinite_precision) {
        return value;
    }
    return value.truncated(static_cast<long>(cap + 1) * vmin);
}

inline void check_point(std::span<const Rational>) {}
inline void check_point(std::span<const PadicNumber> point)
{
    for (const auto &x : point) {
        if (!x.is_exact_zero() && x.valuation() < 1) {
            throw DomainError("series evaluation needs every coordinate to have valuation >= 1");
        }
    }
}

} // namespace detail

/// Multivariate power series truncated at total degree `degree_cap`.
template <class Coeff>
class BasicSeries {
public:
    using TermMap = std::map<Exponent, Coeff>;

    BasicSeries(std::size_t num_vars, unsigned degree_cap) : num_vars_(num_vars), degree_cap_(degree_cap) {}

    std::size_t num_vars() const noexcept { return num_vars_; }
    unsigned degree_cap() const noexcept { return degree_cap_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Accumulates c into the coefficient of x^e; terms above the cap are dropped.
    void add_term(const Exponent &e, const Coeff &c)
    {
        if (e.size() != num_vars_) {
            throw DomainError("exponent vector length does not match the series");
        }
        if (total_degree(e) > degree_cap_ || detail::is_exact_zero(c)) {
            return;
        }
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (detail::is_exact_zero(it->second)) {
            terms_.erase(it);
        }
    }

    std::optional<Coeff> coefficient(const Exponent &e) const
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Lowest total degree carrying a stored term (cap + 1 for an empty series).
    unsigned min_degree() const
    {
        unsigned d = degree_cap_ + 1;
        for (const auto &[e, c] : terms_) {
            d = std::min(d, static_cast<unsigned>(total_degree(e)));
        }
        return d;
    }

    BasicSeries truncated(unsigned cap) const
    {
        BasicSeries out(num_vars_, std::min(cap, degree_cap_));
        for (const auto &[e, c] : terms_) {
            out.add_term(e, c);
        }
        return out;
    }

    BasicSeries scaled(const Coeff &k) const
    {
        BasicSeries out(num_vars_, degree_cap_);
        for (const auto &[e, c] : terms_) {
            out.add_term(e, c * k);
        }
        return out;
    }

    friend BasicSeries operator+(const BasicSeries &a, const BasicSeries &b)
    {
        check_compatible(a, b);
        BasicSeries out(a.num_vars_, std::min(a.degree_cap_, b.degree_cap_));
        for (const auto &[e, c] : a.terms_) {
            out.add_term(e, c);
        }
        for (const auto &[e, c] : b.terms_) {
            out.add_term(e, c);
        }
        return out;
    }

    friend BasicSeries operator-(const BasicSeries &a, const BasicSeries &b)
    {
        check_compatible(a, b);
        BasicSeries out(a.num_vars_, std::min(a.degree_cap_, b.degree_cap_));
        for (const auto &[e, c] : a.terms_) {
            out.add_term(e, c);
        }
        for (const auto &[e, c] : b.terms_) {
            out.add_term(e, -c);
        }
        return out;
    }

    friend BasicSeries operator*(const BasicSeries &a, const BasicSeries &b)
    {
        check_compatible(a, b);
        unsigned cap = std::min(a.degree_cap_, b.degree_cap_);
        BasicSeries out(a.num_vars_, cap);
        Exponent e(a.num_vars_);
        for (const auto &[ea, ca] : a.terms_) {
            unsigned da = total_degree(ea);
            for (const auto &[eb, cb] : b.terms_) {
                if (da + total_degree(eb) > cap) {
                    continue;
                }
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    /// Evaluates the stored truncation at a point.
    Coeff evaluate(std::span<const Coeff> point, const Coeff &zero) const
    {
        if (point.size() != num_vars_) {
            throw DomainError("point dimension does not match the series");
        }
        detail::check_point(point);
        Coeff acc = zero;
        std::vector<std::vector<Coeff>> powers(num_vars_);
        for (const auto &[e, c] : terms_) {
            Coeff t = c;
            for (std::size_t i = 0; i < num_vars_; ++i) {
                if (e[i] == 0) {
                    continue;
                }
                auto &pw = powers[i];
                if (pw.empty()) {
                    pw.push_back(point[i]);
                }
                while (pw.size() < e[i]) {
                    pw.push_back(pw.back() * point[i]);
                }
                t = t * pw[e[i] - 1];
            }
            acc = acc + t;
        }
        return detail::tail_capped(acc, point, degree_cap_);
    }

    friend bool operator==(const BasicSeries &a, const BasicSeries &b) = default;

private:
    static void check_compatible(const BasicSeries &a, const BasicSeries &b)
    {
        if (a.num_vars_ != b.num_vars_) {
            throw DomainError("series in different numbers of variables");
        }
    }

    std::size_t num_vars_;
    unsigned degree_cap_;
    TermMap terms_;
};

/// f(g_1, ..., g_n), truncated at the smallest cap involved.
template <class Coeff>
BasicSeries<Coeff> series_compose(const BasicSeries<Coeff> &f, std::span<const BasicSeries<Coeff>> inner)
{
    if (inner.size() != f.num_vars()) {
        throw DomainError("composition needs one inner series per variable");
    }
    if (inner.empty()) {
        return f;
    }
    std::size_t m = inner[0].num_vars();
    unsigned cap = f.degree_cap();
    for (const auto &g : inner) {
        if (g.num_vars() != m) {
            throw DomainError("inner series live in different numbers of variables");
        }
        cap = std::min(cap, g.degree_cap());
        auto c0 = g.coefficient(Exponent(m, 0));
        if (c0 && !detail::admissible_constant(*c0)) {
            throw CompositionDomain("inner series has a constant term of valuation 0");
        }
    }
    BasicSeries<Coeff> out(m, cap);
    std::vector<std::vector<BasicSeries<Coeff>>> powers(inner.size());
    for (const auto &[e, c] : f.terms()) {
        std::optional<BasicSeries<Coeff>> product;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            auto &pw = powers[i];
            if (pw.empty()) {
                pw.push_back(inner[i].truncated(cap));
            }
            while (pw.size() < e[i]) {
                pw.push_back(pw.back() * pw.front());
            }
            product = product ? (*product) * pw[e[i] - 1] : pw[e[i] - 1];
        }
        if (!product) {
            out.add_term(Exponent(m, 0), c);
            continue;
        }
        for (const auto &[pe, pc] : product->terms()) {
            out.add_term(pe, pc * c);
        }
    }
    return out;
}

template <class Coeff>
BasicSeries<Coeff> series_compose(const BasicSeries<Coeff> &f, const std::vector<BasicSeries<Coeff>> &inner)
{
    return series_compose(f, std::span<const BasicSeries<Coeff>>(inner));
}

using TruncatedSeries = BasicSeries<PadicNumber>;
using RationalSeries = BasicSeries<Rational>;

RationalSeries to_series(const Polynomial &poly, unsigned degree_cap);
TruncatedSeries to_padic_series(const RationalSeries &s, Prime p, long precision);
TruncatedSeries to_padic_series(const Polynomial &poly, unsigned degree_cap, Prime p, long precision);

/// The coordinate functions x_1..x_n as series.
RationalSeries rational_variable(std::size_t num_vars, unsigned cap, std::size_t index);
TruncatedSeries padic_variable(std::size_t num_vars, unsigned cap, std::size_t index, Prime p, long precision);

/// Analytic function on Z_p in Mahler form: G(t) = sum_m binom(t, m) a_m, a_m in Q_p^n.
struct MahlerFunction {
    Prime prime;
    std::size_t dimension = 0;
    /// coefficients[m][i] is coordinate i of a_m.
    std::vector<std::vector<PadicNumber>> coefficients;
    /// Decay witness c: v(a_m) >= m c.
    Rational decay{1};

    std::size_t truncation() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    /// Lower bound on the valuation of every dropped term, ceil((M + 1) c).
    long tail_valuation() const;
};

/// Mahler data of k -> values[k] (k = 0..M) by forward differences of residues mod p^precision.
MahlerFunction mahler_from_residues(Prime p, const std::vector<std::vector<Integer>> &values, long precision,
                                    const Rational &decay = Rational{1});

/// Throws DecayViolation unless v(a_m) >= m c is certified for every stored m.
void check_decay(const MahlerFunction &g);

/// Exact finite reconstruction for k <= M; beyond M the result is capped by the tail bound.
std::vector<PadicNumber> mahler_evaluate(const MahlerFunction &g, std::uint64_t k);
std::vector<PadicNumber> mahler_evaluate(const MahlerFunction &g, const PadicNumber &t);

struct PowerSeriesForm {
    /// coefficients[j][i]: coordinate i of the coefficient of t^j, j = 0..M.
    std::vector<std::vector<PadicNumber>> coefficients;
    /// Every contribution from Mahler indices beyond M has valuation >= this.
    long tail_valuation = 0;
};

/// Expands binom(t, m) through signed Stirling numbers of the first kind. Needs c > 1/(p-1).
PowerSeriesForm mahler_to_powerseries(const MahlerFunction &g);

/// Signed Stirling numbers of the first kind s(m, j), 0 <= j <= m <= max_m.
std::vector<std::vector<Integer>> stirling_first_kind(std::size_t max_m);

struct ZeroStructure {
    enum class Kind { identically_zero, finitely_many };
    Kind kind = Kind::finitely_many;
    /// Strassmann bound (largest index of maximal coefficient norm); meaningful for finitely_many.
    std::size_t bound = 0;
    /// Set when identically_zero rests on a precision threshold instead of exact zeros;
    /// the caller must then confirm vanishing at point evaluations.
    bool needs_confirmation = false;
    /// Smallest effective precision among the coefficients.
    long threshold = 0;
};

/// Strassmann-type classification of sum_j b_j t^j on Z_p.
/// Each b_j is known to its own precision, and to at most `tail_valuation` digits;
/// coefficients beyond the list are only known to be divisible by p^tail_valuation.
ZeroStructure strassmann_zero_structure(std::span<const PadicNumber> b, long tail_valuation, long min_threshold = 4);

ZeroStructure zero_structure(const MahlerFunction &g, std::size_t coordinate, long min_threshold = 4);

} // namespace padyn
