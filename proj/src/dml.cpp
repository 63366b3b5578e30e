#include <padyn/dml.hpp>

#include <algorithm>
#include <map>
#include <numeric>

#include <padyn/series.hpp>

namespace padyn {

namespace {

Polynomial restrict_to(const Polynomial &poly, const std::vector<std::size_t> &position, std::size_t size)
{
    Polynomial out(size);
    for (const auto &[e, c] : poly.terms()) {
        Exponent r(size, 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (position[i] >= size) {
                throw DomainError("polynomial depends on an untracked coordinate");
            }
            r[position[i]] = e[i];
        }
        out.add_term(r, c);
    }
    return out;
}

bool integral_everywhere(std::span<const Rational> values, const Integer &q)
{
    return std::all_of(values.begin(), values.end(),
                       [&](const Rational &v) { return mpz_divisible_p(v.get_den_mpz_t(), q.get_mpz_t()) == 0; });
}

// Two primes near 2^62 at which all the data is integral.
std::vector<Integer> oracle_moduli(std::span<const Rational> data)
{
    std::vector<Integer> out;
    Integer q = Integer{1} << 62;
    while (out.size() < 2) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        if (integral_everywhere(data, q)) {
            out.push_back(q);
        }
    }
    return out;
}

std::size_t point_bits(const std::vector<Rational> &point)
{
    std::size_t bits = 0;
    for (const auto &q : point) {
        bits += height_bits(q);
    }
    return bits;
}

ReturnSetCertificate return_set_at(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                                   const DmlOptions &options, long precision)
{
    UniformizeOptions uopts;
    uopts.policy = options.policy;
    uopts.prime_start = options.prime_start;
    uopts.prime_cap = options.prime_cap;
    uopts.horizon = options.horizon;
    uopts.max_stride = options.max_stride;
    uopts.extra = v.coefficients();
    OrbitInterpolation orb = uniformize_orbit_at(f, x, uopts, precision);

    const Prime p = orb.prime;
    const std::uint64_t tail = orb.tail_length;
    const std::uint64_t s = orb.stride;
    const long big_m = precision;
    const Integer &modulus = prime_power(p.value(), precision);
    ModMap fw(f, modulus);
    std::vector<ResiduePoint> residues = std::move(orb.orbit);
    auto residue_at = [&](std::uint64_t n) -> const ResiduePoint & {
        while (residues.size() <= n) {
            residues.push_back(fw(residues.back()));
        }
        return residues[n];
    };
    std::vector<ModPoly> equations;
    for (const auto &eq : v.equations) {
        equations.emplace_back(eq, modulus);
    }
    auto residue_member = [&](std::uint64_t n) {
        const ResiduePoint &pt = residue_at(n);
        return std::all_of(equations.begin(), equations.end(), [&](const ModPoly &e) { return e(pt) == 0; });
    };

    ReturnSetCertificate cert;
    cert.prime = p.value();
    cert.precision = precision;
    cert.tail = tail;
    cert.uniformizer_stride = s;
    cert.stride = s;
    cert.verified_bound = options.horizon;
    cert.class_bounds.assign(s, -1);
    cert.scan_bound = options.horizon;

    // Residue screening first; membership candidates are confirmed exactly in one sequential pass.
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t n = 0; n < tail; ++n) {
        if (residue_member(n)) {
            candidates.push_back(n);
        }
    }
    std::vector<bool> vanishing(s, false);
    std::vector<std::vector<Integer>> values(big_m + 1, std::vector<Integer>(1));
    for (std::uint64_t j = 0; j < s; ++j) {
        bool all_zero = true;
        long bound = -1;
        for (const auto &eq : equations) {
            for (long k = 0; k <= big_m; ++k) {
                values[k][0] = eq(residue_at(tail + j + s * static_cast<std::uint64_t>(k)));
            }
            ZeroStructure zs = zero_structure(mahler_from_residues(p, values, precision), 0);
            if (zs.kind == ZeroStructure::Kind::finitely_many) {
                all_zero = false;
                long b = static_cast<long>(zs.bound);
                bound = bound < 0 ? b : std::min(bound, b);
            }
        }
        if (all_zero) {
            vanishing[j] = true;
            for (long k = 0; k <= big_m; ++k) {
                candidates.push_back(tail + j + s * static_cast<std::uint64_t>(k));
            }
            continue;
        }
        cert.class_bounds[j] = bound;
        if (bound == 0) {
            continue;
        }
        const std::uint64_t limit =
            std::max<std::uint64_t>(options.horizon, tail + 4 * static_cast<std::uint64_t>(bound) * s + 64);
        cert.scan_bound = std::max(cert.scan_bound, limit);
        for (std::uint64_t n = tail + j; n <= limit; n += s) {
            if (residue_member(n)) {
                candidates.push_back(n);
            }
        }
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    ExactOrbit exact(f, x, v.support(), options.bit_budget);
    std::vector<std::uint64_t> members;
    for (std::uint64_t n : candidates) {
        bool in = std::all_of(v.equations.begin(), v.equations.end(),
                              [&](const Polynomial &eq) { return exact.evaluate(eq, n) == 0; });
        if (in) {
            members.push_back(n);
        }
    }
    auto is_member = [&](std::uint64_t n) { return std::binary_search(members.begin(), members.end(), n); };

    for (std::uint64_t n = 0; n < tail; ++n) {
        if (is_member(n)) {
            cert.sporadic.push_back(n);
        }
    }
    cert.complete = true;
    for (std::uint64_t j = 0; j < s; ++j) {
        if (vanishing[j]) {
            for (long k = 0; k <= big_m; ++k) {
                if (!is_member(tail + j + s * static_cast<std::uint64_t>(k))) {
                    throw PrecisionExhausted("class " + std::to_string(j) +
                                             " vanishes to working precision but not exactly");
                }
            }
            continue;
        }
        std::uint64_t found = 0;
        for (std::uint64_t n = tail + j; n <= cert.scan_bound; n += s) {
            if (is_member(n)) {
                cert.sporadic.push_back(n);
                ++found;
            }
        }
        if (found > static_cast<std::uint64_t>(cert.class_bounds[j])) {
            throw PrecisionExhausted("class " + std::to_string(j) + " has more zeros than its Strassmann bound");
        }
        cert.complete = cert.complete && found == static_cast<std::uint64_t>(cert.class_bounds[j]);
    }

    auto [d, offsets] = coarsen_classes(vanishing);
    if (!offsets.empty()) {
        cert.stride = d;
        for (auto o : offsets) {
            cert.progressions.push_back(tail + o);
        }
    }
    std::sort(cert.sporadic.begin(), cert.sporadic.end());
    if (auto bad = first_mismatch(f, x, v, cert, cert.verified_bound, options.bit_budget)) {
        throw Error("return-set certificate fails exact check at n = " + std::to_string(*bad));
    }
    return cert;
}

} // namespace

void Subvariety::validate(std::size_t num_vars) const
{
    if (equations.empty()) {
        throw DomainError("subvariety needs at least one equation");
    }
    for (const auto &eq : equations) {
        if (eq.num_vars() != num_vars) {
            throw DomainError("subvariety equation has the wrong number of variables");
        }
    }
}

bool Subvariety::contains(std::span<const Rational> point) const
{
    return std::all_of(equations.begin(), equations.end(),
                       [&](const Polynomial &eq) { return eq.evaluate(point) == 0; });
}

std::vector<Rational> Subvariety::coefficients() const
{
    std::vector<Rational> out;
    for (const auto &eq : equations) {
        auto c = eq.coefficients();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<std::size_t> Subvariety::support() const
{
    std::vector<std::size_t> out;
    for (const auto &eq : equations) {
        auto s = eq.support();
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExactOrbit::ExactOrbit(const PolySelfMap &f, std::span<const Rational> x, std::vector<std::size_t> coordinates,
                       std::size_t bit_budget)
    : map_(f), budget_(bit_budget)
{
    if (x.size() != f.num_vars()) {
        throw DomainError("point dimension does not match the map");
    }
    coords_ = f.dependency_closure(std::move(coordinates));
    position_.assign(f.num_vars(), coords_.size());
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        position_[coords_[i]] = i;
    }
    for (std::size_t i : coords_) {
        start_.push_back(x[i]);
    }
    if (!coords_.empty()) {
        for (std::size_t i : coords_) {
            comps.push_back(restrict_to(f.components()[i], position_, coords_.size()));
        }
        map_ = PolySelfMap(std::move(comps));
    }
    current_ = start_;
}

const std::vector<Rational> &ExactOrbit::at(std::uint64_t n)
{
    if (n < index_) {
        index_ = 0;
        current_ = start_;
    }
    while (index_ < n && !coords_.empty()) {
        current_ = map_(current_);
        ++index_;
        if (point_bits(current_) > budget_) {
            throw HeightBudgetExceeded(index_, "exact iterate " + std::to_string(index_) + " exceeds " +
                                                   std::to_string(budget_) + " bits");
        }
    }
    index_ = std::max(index_, n);
    return current_;
}

Rational ExactOrbit::evaluate(const Polynomial &poly, std::uint64_t n)
{
    Polynomial local = restrict_to(poly, position_, coords_.size());
    if (coords_.empty()) {
        return local.coefficient(Exponent{});
    }
    return local.evaluate(at(n));
}

bool ReturnSetCertificate::covered_by_progression(std::uint64_t n) const
{
    return std::any_of(progressions.begin(), progressions.end(),
                       [&](std::uint64_t o) { return n >= o && (n - o) % stride == 0; });
}

bool ReturnSetCertificate::covers(std::uint64_t n) const
{
    return std::find(sporadic.begin(), sporadic.end(), n) != sporadic.end() || covered_by_progression(n);
}

ReturnSetCertificate return_set(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                                const DmlOptions &options)
{
    v.validate(f.num_vars());
    return with_retries(options.policy,
                        [&](long precision) { return return_set_at(f, x, v, options, precision); });
}

PreperiodicityVerdict not_preperiodic_witness(const PolySelfMap &f, std::span<const Rational> x,
                                              const DmlOptions &options)
{
    UniformizeOptions uopts;
    uopts.policy = options.policy;
    uopts.prime_start = options.prime_start;
    uopts.prime_cap = options.prime_cap;
    uopts.horizon = options.horizon;
    uopts.max_stride = options.max_stride;
    OrbitInterpolation orb = uniformize_orbit(f, x, uopts);

    PreperiodicityVerdict out;
    out.prime = orb.prime.value();
    out.precision = orb.precision;
    out.tail = orb.tail_length;
    out.stride = orb.stride;
    for (std::uint64_t i = 0; i < orb.thetas.size(); ++i) {
        const auto &coeffs = orb.thetas[i].coefficients;
        for (std::uint64_t m = 1; m < coeffs.size(); ++m) {
            for (std::uint64_t c = 0; c < coeffs[m].size(); ++c) {
                const PadicNumber &a = coeffs[m][c];
                if (!a.is_zero() && a.valuation() <= orb.precision - 2) {
                    out.kind = PreperiodicityVerdict::Kind::not_preperiodic;
                    out.witness_class = i;
                    out.witness_index = m;
                    out.witness_coordinate = c;
                    out.witness_valuation = a.valuation();
                    return out;
                }
            }
        }
    }

    std::vector<std::size_t> all(f.num_vars());
    std::iota(all.begin(), all.end(), std::size_t{0});
    try {
        ExactOrbit exact(f, x, all, options.bit_budget);
        std::map<std::vector<Rational>, std::uint64_t> seen;
        const std::uint64_t limit = 2 * (orb.tail_length + orb.stride);
        for (std::uint64_t n = 0; n <= limit; ++n) {
            auto [it, inserted] = seen.emplace(exact.at(n), n);
            if (!inserted) {
                out.kind = PreperiodicityVerdict::Kind::periodic_detected;
                out.preperiod = it->second;
                out.period = n - it->second;
                return out;
            }
        }
    } catch (const HeightBudgetExceeded &) {
    }
    out.kind = PreperiodicityVerdict::Kind::inconclusive;
    return out;
}

std::optional<std::uint64_t> subvariety_period(const PolySelfMap &f, const Subvariety &y,
                                               const std::vector<std::vector<Rational>> &samples,
                                               const DmlOptions &options)
{
    if (samples.empty()) {
        throw DomainError("subvariety_period needs at least one sample point");
    }
    std::uint64_t result = 1;
    for (const auto &sample : samples) {
        if (!y.contains(sample)) {
            throw DomainError("sample point does not lie on the subvariety");
        }
        ReturnSetCertificate cert = return_set(f, sample, y, options);
        std::optional<std::uint64_t> best;
        for (std::uint64_t l = 1; l <= cert.uniformizer_stride && !best; ++l) {
            if (cert.uniformizer_stride % l != 0 || cert.progressions.empty()) {
                continue;
            }
            bool ok = true;
            for (std::uint64_t n = 0; ok && n < cert.tail + l * cert.stride; n += l) {
                ok = n < cert.tail ? cert.covers(n) : cert.covered_by_progression(n);
            }
            if (ok) {
                best = l;
            }
        }
        if (!best) {
            return std::nullopt;
        }
        result = std::lcm(result, *best);
    }
    return result;
}

std::optional<std::uint64_t> first_mismatch(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                                            const ReturnSetCertificate &cert, std::uint64_t horizon,
                                            std::size_t bit_budget)
{
    v.validate(f.num_vars());
    std::vector<Rational> data = f.coefficients();
    data.insert(data.end(), x.begin(), x.end());
    auto vc = v.coefficients();
    data.insert(data.end(), vc.begin(), vc.end());

    struct Channel {
        ModMap map;
        std::vector<ModPoly> equations;
        ResiduePoint point;
    };
    std::vector<Channel> channels;
    for (const auto &q : oracle_moduli(data)) {
        Channel ch{ModMap(f, q), {}, reduce_point(x, q)};
        for (const auto &eq : v.equations) {
            ch.equations.emplace_back(eq, q);
        }
        channels.push_back(std::move(ch));
    }
    ExactOrbit exact(f, x, v.support(), bit_budget);
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        bool maybe = true;
        for (auto &ch : channels) {
            for (const auto &eq : ch.equations) {
                maybe = maybe && eq(ch.point) == 0;
            }
        }
        bool member = maybe && std::all_of(v.equations.begin(), v.equations.end(), [&](const Polynomial &eq) {
                          return exact.evaluate(eq, n) == 0;
                      });
        if (member != cert.covers(n)) {
            return n;
        }
        for (auto &ch : channels) {
            ch.point = ch.map(ch.point);
        }
    }
    return std::nullopt;
}

bool check_certificate(const PolySelfMap &f, std::span<const Rational> x, const Subvariety &v,
                       const ReturnSetCertificate &cert, std::uint64_t horizon)
{
    return !first_mismatch(f, x, v, cert, horizon).has_value();
}

} // namespace padyn
