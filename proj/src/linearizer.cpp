#include <padyn/linearizer.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace padyn {

namespace {

// Calls fn(m) for every exponent vector with total degree d, in lexicographically decreasing order.
void for_each_exponent(std::size_t n, unsigned d, const std::function<void(const Exponent &)> &fn)
{
    Exponent e(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            e[i] = left;
            fn(e);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    if (n > 0) {
        rec(0, d);
    }
}

class MonomialValues {
public:
    MonomialValues(std::span<const Rational> lambda, unsigned max_degree) : powers_(lambda.size())
    {
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            powers_[i].push_back(Rational{1});
            for (unsigned k = 1; k <= max_degree; ++k) {
                powers_[i].push_back(powers_[i].back() * lambda[i]);
            }
        }
    }

    Rational operator()(const Exponent &e) const
    {
        Rational out = 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            out *= powers_[i][e[i]];
        }
        return out;
    }

private:
    std::vector<std::vector<Rational>> powers_;
};

std::string exponent_string(const Exponent &e)
{
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        out += (i ? "," : "") + std::to_string(e[i]);
    }
    return out + ")";
}

RationalSeries scale_by_lambda(const RationalSeries &s, const MonomialValues &values)
{
    RationalSeries out(s.num_vars(), s.degree_cap());
    for (const auto &[e, c] : s.terms()) {
        out.add_term(e, c * values(e));
    }
    return out;
}

std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][c] == 0) {
            ++sel;
        }
        if (sel == a.size()) {
            continue;
        }
        std::swap(a[sel], a[row]);
        Rational inv = 1 / a[row][c];
        for (auto &x : a[row]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r != row && a[r][c] != 0) {
                Rational factor = a[r][c];
                for (std::size_t k = 0; k < cols; ++k) {
                    a[r][k] -= factor * a[row][k];
                }
            }
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) {
            continue;
        }
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -a[r][free];
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

void MapGerm::validate() const
{
    if (eigenvalues.empty()) {
        throw DomainError("germ needs at least one variable");
    }
    if (higher_terms.size() != eigenvalues.size()) {
        throw DomainError("germ needs one higher-order series per component");
    }
    for (const auto &l : eigenvalues) {
        if (l == 0) {
            throw DomainError("eigenvalues must be nonzero");
        }
    }
    for (const auto &s : higher_terms) {
        if (s.num_vars() != eigenvalues.size()) {
            throw DomainError("higher-order series has the wrong number of variables");
        }
        if (!s.empty() && s.min_degree() < 2) {
            throw DomainError("higher-order terms must start in degree 2");
        }
    }
}

ResonanceReport find_resonances(std::span<const Rational> lambda, unsigned max_degree)
{
    for (const auto &l : lambda) {
        if (l == 0) {
            throw DomainError("eigenvalues must be nonzero");
        }
    }
    const std::size_t n = lambda.size();
    MonomialValues values(lambda, max_degree);
    ResonanceReport out;
    for (unsigned d = 2; d <= max_degree; ++d) {
        for_each_exponent(n, d, [&](const Exponent &e) {
            Rational v = values(e);
            for (std::size_t j = 0; j < n; ++j) {
                if (v == lambda[j]) {
                    out.resonances.push_back({j, e});
                }
            }
        });
    }
    if (std::any_of(lambda.begin(), lambda.end(), [](const Rational &l) { return l == 1; })) {
        bool clean = true;
        for (const auto &r : out.resonances) {
            bool inside = lambda[r.target] != 1;
            for (std::size_t i = 0; inside && i < n; ++i) {
                inside = r.exponents[i] == 0 || lambda[i] != 1;
            }
            clean = clean && !inside;
        }
        out.fibered_nonresonant = clean;
    }
    return out;
}

ConjugacyResult formal_linearize(const MapGerm &f, unsigned degree)
{
    f.validate();
    const std::size_t n = f.num_vars();
    MonomialValues values(f.eigenvalues, degree);
    ConjugacyResult out;
    out.solved_degree = degree;
    for (std::size_t j = 0; j < n; ++j) {
        out.h.push_back(rational_variable(n, degree, j));
    }
    std::vector<RationalSeries> g;
    for (const auto &s : f.higher_terms) {
        g.push_back(s.truncated(degree));
    }
    for (unsigned d = 2; d <= degree; ++d) {
        std::vector<RationalSeries> inner;
        for (const auto &hj : out.h) {
            inner.push_back(hj.truncated(d));
        }
        std::vector<std::vector<std::pair<Exponent, Rational>>> updates(n);
        for (std::size_t j = 0; j < n; ++j) {
            RationalSeries rhs = series_compose(g[j].truncated(d), inner);
            for_each_exponent(n, d, [&](const Exponent &e) {
                Rational num = rhs.coefficient(e).value_or(Rational{0});
                Rational den = values(e) - f.eigenvalues[j];
                if (den == 0) {
                    if (num != 0) {
                        throw ResonanceObstruction(j, e,
                                                   "resonant term x^" + exponent_string(e) + " in component " +
                                                       std::to_string(j + 1) + " has nonzero coefficient " +
                                                       to_string(num));
                    }
                    return;
                }
                if (num != 0) {
                    updates[j].emplace_back(e, num / den);
                }
            });
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto &[e, c] : updates[j]) {
                out.h[j].add_term(e, c);
            }
        }
    }
    for (const auto &s : conjugacy_defect(f, out.h)) {
        if (!s.empty()) {
            throw Error("linearizing series failed its conjugacy check");
        }
    }
    return out;
}

std::vector<RationalSeries> conjugacy_defect(const MapGerm &f, const std::vector<RationalSeries> &h)
{
    f.validate();
    const std::size_t n = f.num_vars();
    if (h.size() != n) {
        throw DomainError("conjugacy needs one series per component");
    }
    unsigned cap = h[0].degree_cap();
    for (const auto &s : h) {
        cap = std::min(cap, s.degree_cap());
    }
    MonomialValues values(f.eigenvalues, cap);
    std::vector<RationalSeries> out;
    for (std::size_t j = 0; j < n; ++j) {
        RationalSeries lhs = scale_by_lambda(h[j].truncated(cap), values);
        RationalSeries rhs = h[j].truncated(cap).scaled(f.eigenvalues[j]) +
                             series_compose(f.higher_terms[j].truncated(cap), h);
        out.push_back(lhs - rhs);
    }
    return out;
}

SiegelReport siegel_report(std::span<const Rational> lambda, Prime p, unsigned max_degree)
{
    const unsigned long pv = p.value();
    for (const auto &l : lambda) {
        if (l == 0 || valuation(l, pv) != 0) {
            throw BadPrime("eigenvalue " + to_string(l) + " is not a " + std::to_string(pv) + "-adic unit");
        }
    }
    const std::size_t n = lambda.size();
    MonomialValues values(lambda, max_degree);
    SiegelReport out;
    bool first = true;
    for (unsigned d = 2; d <= max_degree; ++d) {
        SiegelRow row;
        row.degree = d;
        bool zero = false;
        std::optional<long> vmax;
        for_each_exponent(n, d, [&](const Exponent &e) {
            Rational v = values(e);
            for (std::size_t j = 0; j < n; ++j) {
                Rational diff = v - lambda[j];
                if (diff == 0) {
                    zero = true;
                } else {
                    long val = valuation(diff, pv);
                    vmax = vmax ? std::max(*vmax, val) : val;
                }
            }
        });
        if (zero) {
            out.resonant = true;
            row.min_norm = 0;
        } else {
            row.max_valuation = vmax;
            row.min_norm = *vmax >= 0 ? Rational{Integer{1}, prime_power(pv, *vmax)}
                                      : Rational{prime_power(pv, -*vmax)};
        }
        if (first || row.min_norm < out.min_norm) {
            out.min_norm = row.min_norm;
        }
        first = false;
        out.rows.push_back(row);
    }
    return out;
}

RankReport multiplicative_rank(std::span<const Rational> lambda)
{
    std::set<Integer> basis;
    for (const auto &l : lambda) {
        if (l == 0) {
            throw DomainError("eigenvalues must be nonzero");
        }
        for (Integer a : {Integer{abs(l.get_num())}, Integer{l.get_den()}}) {
            if (a > 1) {
                basis.insert(a);
            }
        }
    }
    // Refine to a pairwise coprime set generating the same numbers.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto i = basis.begin(); i != basis.end() && !changed; ++i) {
            for (auto j = std::next(i); j != basis.end() && !changed; ++j) {
                Integer g = gcd(*i, *j);
                if (g > 1) {
                    Integer a = *i / g;
                    Integer b = *j / g;
                    basis.erase(*j);
                    basis.erase(*i);
                    for (const Integer &x : {a, b, g}) {
                        if (x > 1) {
                            basis.insert(x);
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    RankReport out;
    out.basis.assign(basis.begin(), basis.end());
    const std::size_t n = lambda.size();
    const std::size_t k = out.basis.size();
    auto multiplicity = [](Integer a, const Integer &b) {
        long e = 0;
        while (mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
            a /= b;
            ++e;
        }
        return e;
    };
    // Row i of the transpose holds the exponents of basis element i across the eigenvalues.
    std::vector<std::vector<Rational>> transposed(k, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j) {
        Integer num = abs(lambda[j].get_num());
        Integer den = lambda[j].get_den();
        for (std::size_t i = 0; i < k; ++i) {
            transposed[i][j] = multiplicity(num, out.basis[i]) - multiplicity(den, out.basis[i]);
        }
    }
    auto kernel = kernel_basis(transposed, n);
    out.rank = n - kernel.size();
    for (auto &v : kernel) {
        Integer den = 1;
        for (const auto &x : v) {
            den = lcm(den, Integer{x.get_den()});
        }
        std::vector<Integer> r;
        Integer g = 0;
        for (const auto &x : v) {
            Integer xi = Integer{x * den};
            g = gcd(g, xi);
            r.push_back(xi);
        }
        for (auto &x : r) {
            x /= g;
        }
        out.relations.push_back(std::move(r));
    }
    return out;
}

} // namespace padyn
