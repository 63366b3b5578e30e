#include <padyn/polynomial.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <padyn/errors.hpp>

namespace padyn {

std::uint32_t total_degree(const Exponent &e)
{
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational &c)
{
    Polynomial out(num_vars);
    out.add_term(Exponent(num_vars, 0), c);
    return out;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index)
{
    if (index >= num_vars) {
        throw DomainError("variable index out of range");
    }
    Polynomial out(num_vars);
    Exponent e(num_vars, 0);
    e[index] = 1;
    out.add_term(e, Rational{1});
    return out;
}

std::uint32_t Polynomial::degree() const
{
    std::uint32_t d = 0;
    for (const auto &[e, c] : terms_) {
        d = std::max(d, total_degree(e));
    }
    return d;
}

Rational Polynomial::coefficient(const Exponent &e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational{0} : it->second;
}

void Polynomial::add_term(const Exponent &e, const Rational &c)
{
    if (e.size() != num_vars_) {
        throw DomainError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                          std::to_string(num_vars_));
    }
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Rational Polynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != num_vars_) {
        throw DomainError("point dimension does not match polynomial");
    }
    std::vector<std::vector<Rational>> powers(num_vars_, std::vector<Rational>{Rational{1}});
    Rational out = 0;
    for (const auto &[e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            auto &pw = powers[i];
            while (pw.size() <= e[i]) {
                pw.push_back(pw.back() * point[i]);
            }
            if (e[i] > 0) {
                t *= pw[e[i]];
            }
        }
        out += t;
    }
    return out;
}

Polynomial Polynomial::derivative(std::size_t var) const
{
    Polynomial out(num_vars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] == 0) {
            continue;
        }
        Exponent d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> values) const
{
    if (values.size() != num_vars_) {
        throw DomainError("substitution needs one polynomial per variable");
    }
    std::size_t target_vars = values.empty() ? 0 : values[0].num_vars();
    std::vector<std::vector<Polynomial>> powers(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
        powers[i].push_back(Polynomial::constant(target_vars, Rational{1}));
    }
    Polynomial out(target_vars);
    for (const auto &[e, c] : terms_) {
        Polynomial t = Polynomial::constant(target_vars, c);
        for (std::size_t i = 0; i < num_vars_; ++i) {
            auto &pw = powers[i];
            while (pw.size() <= e[i]) {
                pw.push_back(pw.back() * values[i]);
            }
            if (e[i] > 0) {
                t = t * pw[e[i]];
            }
        }
        out = out + t;
    }
    return out;
}

std::vector<std::size_t> Polynomial::support() const
{
    std::set<std::size_t> vars;
    for (const auto &[e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                vars.insert(i);
            }
        }
    }
    return {vars.begin(), vars.end()};
}

std::vector<Rational> Polynomial::coefficients() const
{
    std::vector<Rational> out;
    out.reserve(terms_.size());
    for (const auto &[e, c] : terms_) {
        out.push_back(c);
    }
    return out;
}

Polynomial operator+(const Polynomial &a, const Polynomial &b)
{
    Polynomial out = a;
    for (const auto &[e, c] : b.terms_) {
        out.add_term(e, c);
    }
    return out;
}

Polynomial operator-(const Polynomial &a, const Polynomial &b)
{
    Polynomial out = a;
    for (const auto &[e, c] : b.terms_) {
        out.add_term(e, -c);
    }
    return out;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    if (a.num_vars_ != b.num_vars_) {
        throw DomainError("multiplying polynomials in different numbers of variables");
    }
    Polynomial out(a.num_vars_);
    Exponent e(a.num_vars_);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial operator*(const Rational &c, const Polynomial &a)
{
    Polynomial out(a.num_vars_);
    if (c == 0) {
        return out;
    }
    for (const auto &[e, x] : a.terms_) {
        out.terms_.emplace(e, c * x);
    }
    return out;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            os << "-";
        }
        first = false;
        Rational a = abs(c);
        bool has_var = total_degree(e) > 0;
        if (!has_var || a != 1) {
            os << a.get_str();
        }
        bool first_var = !has_var || a != 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (first_var) {
                os << "*";
            }
            first_var = true;
            os << "x" << (i + 1);
            if (e[i] > 1) {
                os << "^" << e[i];
            }
        }
    }
    return os.str();
}

Polynomial pow(const Polynomial &a, std::uint32_t k)
{
    Polynomial out = Polynomial::constant(a.num_vars(), Rational{1});
    Polynomial base = a;
    while (k > 0) {
        if (k & 1U) {
            out = out * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return out;
}

PolySelfMap::PolySelfMap(std::vector<Polynomial> components) : components_(std::move(components))
{
    if (components_.empty()) {
        throw DomainError("a self-map needs at least one component");
    }
    for (const auto &c : components_) {
        if (c.num_vars() != components_.size()) {
            throw DomainError("self-map component has " + std::to_string(c.num_vars()) + " variables, expected " +
                              std::to_string(components_.size()));
        }
    }
}

std::uint32_t PolySelfMap::degree() const
{
    std::uint32_t d = 0;
    for (const auto &c : components_) {
        d = std::max(d, c.degree());
    }
    return d;
}

std::vector<Rational> PolySelfMap::operator()(std::span<const Rational> point) const
{
    std::vector<Rational> out;
    out.reserve(components_.size());
    for (const auto &c : components_) {
        out.push_back(c.evaluate(point));
    }
    return out;
}

std::vector<std::vector<Polynomial>> PolySelfMap::jacobian() const
{
    std::size_t n = num_vars();
    std::vector<std::vector<Polynomial>> jac(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            jac[i].push_back(components_[i].derivative(j));
        }
    }
    return jac;
}

PolySelfMap PolySelfMap::compose(const PolySelfMap &inner) const
{
    std::vector<Polynomial> out;
    out.reserve(components_.size());
    for (const auto &c : components_) {
        out.push_back(c.substitute(inner.components()));
    }
    return PolySelfMap{std::move(out)};
}

PolySelfMap PolySelfMap::iterate(std::uint64_t times) const
{
    PolySelfMap out = identity_map(num_vars());
    for (std::uint64_t i = 0; i < times; ++i) {
        out = compose(out);
    }
    return out;
}

std::vector<Rational> PolySelfMap::coefficients() const
{
    std::vector<Rational> out;
    for (const auto &c : components_) {
        auto cs = c.coefficients();
        out.insert(out.end(), cs.begin(), cs.end());
    }
    return out;
}

std::vector<std::size_t> PolySelfMap::dependency_closure(std::vector<std::size_t> seed) const
{
    std::set<std::size_t> closed(seed.begin(), seed.end());
    std::vector<std::size_t> work(closed.begin(), closed.end());
    while (!work.empty()) {
        std::size_t i = work.back();
        work.pop_back();
        for (std::size_t j : components_[i].support()) {
            if (closed.insert(j).second) {
                work.push_back(j);
            }
        }
    }
    return {closed.begin(), closed.end()};
}

PolySelfMap identity_map(std::size_t num_vars)
{
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < num_vars; ++i) {
        comps.push_back(Polynomial::variable(num_vars, i));
    }
    return PolySelfMap{std::move(comps)};
}

PolySelfMap linear_map(const std::vector<std::vector<Rational>> &matrix)
{
    std::size_t n = matrix.size();
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n) {
            throw DomainError("linear map needs a square matrix");
        }
        Polynomial row(n);
        for (std::size_t j = 0; j < n; ++j) {
            Exponent e(n, 0);
            e[j] = 1;
            row.add_term(e, matrix[i][j]);
        }
        comps.push_back(std::move(row));
    }
    return PolySelfMap{std::move(comps)};
}

} // namespace padyn
