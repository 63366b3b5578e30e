#include <padyn/modular.hpp>

#include <padyn/errors.hpp>

namespace padyn {

ModPoly::ModPoly(const Polynomial &poly, const Integer &modulus) : num_vars_(poly.num_vars()), modulus_(modulus)
{
    for (const auto &[e, c] : poly.terms()) {
        Integer r = reduce_mod(c, modulus);
        if (r != 0) {
            terms_.emplace_back(e, r);
            for (auto k : e) {
                max_exp_ = std::max(max_exp_, k);
            }
        }
    }
}

Integer ModPoly::operator()(std::span<const Integer> point) const
{
    if (terms_.empty()) {
        return Integer{0};
    }
    std::vector<std::vector<Integer>> powers(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
        powers[i].reserve(max_exp_ + 1);
        powers[i].emplace_back(1);
    }
    Integer acc = 0;
    Integer t;
    for (const auto &[e, c] : terms_) {
        t = c;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (e[i] == 0) {
                continue;
            }
            auto &pw = powers[i];
            while (pw.size() <= e[i]) {
                Integer next = pw.back() * point[i];
                mpz_mod(next.get_mpz_t(), next.get_mpz_t(), modulus_.get_mpz_t());
                pw.push_back(std::move(next));
            }
            t *= pw[e[i]];
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), modulus_.get_mpz_t());
        }
        acc += t;
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), modulus_.get_mpz_t());
    return acc;
}

ModMap::ModMap(const PolySelfMap &map, const Integer &modulus) : modulus_(modulus)
{
    components_.reserve(map.num_vars());
    for (const auto &c : map.components()) {
        components_.emplace_back(c, modulus);
    }
}

ResiduePoint ModMap::operator()(std::span<const Integer> point) const
{
    ResiduePoint out;
    out.reserve(components_.size());
    for (const auto &c : components_) {
        out.push_back(c(point));
    }
    return out;
}

ModJacobian::ModJacobian(const PolySelfMap &map, const Integer &modulus) : modulus_(modulus)
{
    for (const auto &row : map.jacobian()) {
        std::vector<ModPoly> r;
        for (const auto &entry : row) {
            r.emplace_back(entry, modulus);
        }
        entries_.push_back(std::move(r));
    }
}

ResidueMatrix ModJacobian::operator()(std::span<const Integer> point) const
{
    ResidueMatrix out;
    for (const auto &row : entries_) {
        std::vector<Integer> r;
        for (const auto &entry : row) {
            r.push_back(entry(point));
        }
        out.push_back(std::move(r));
    }
    return out;
}

ResiduePoint reduce_point(std::span<const Rational> point, const Integer &modulus)
{
    ResiduePoint out;
    out.reserve(point.size());
    for (const auto &q : point) {
        out.push_back(reduce_mod(q, modulus));
    }
    return out;
}

ResiduePoint reduce_point(std::span<const Integer> point, const Integer &modulus)
{
    ResiduePoint out;
    out.reserve(point.size());
    for (const auto &a : point) {
        out.push_back(mod(a, modulus));
    }
    return out;
}

Integer det_mod(ResidueMatrix a, const Integer &p)
{
    std::size_t n = a.size();
    Integer det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && mod(a[pivot][col], p) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Integer{0};
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det = mod(det * a[col][col], p);
        Integer inv = mod_inverse(a[col][col], p);
        for (std::size_t r = col + 1; r < n; ++r) {
            Integer f = mod(a[r][col] * inv, p);
            if (f == 0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] = mod(a[r][c] - f * a[col][c], p);
            }
        }
    }
    return mod(det, p);
}

ResidueMatrix mat_mul_mod(const ResidueMatrix &a, const ResidueMatrix &b, const Integer &m)
{
    std::size_t n = a.size();
    std::size_t k = b.size();
    std::size_t cols = b.empty() ? 0 : b[0].size();
    ResidueMatrix out(n, std::vector<Integer>(cols, Integer{0}));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            Integer s = 0;
            for (std::size_t l = 0; l < k; ++l) {
                s += a[i][l] * b[l][j];
            }
            out[i][j] = mod(s, m);
        }
    }
    return out;
}

ResiduePoint mat_vec_mod(const ResidueMatrix &a, std::span<const Integer> v, const Integer &m)
{
    ResiduePoint out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            s += a[i][j] * v[j];
        }
        out[i] = mod(s, m);
    }
    return out;
}

ResidueMatrix identity_matrix(std::size_t n)
{
    ResidueMatrix out(n, std::vector<Integer>(n, Integer{0}));
    for (std::size_t i = 0; i < n; ++i) {
        out[i][i] = 1;
    }
    return out;
}

bool is_identity(const ResidueMatrix &a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

Integer general_linear_order(std::size_t n, unsigned long p)
{
    Integer pn = pow_int(Integer{p}, static_cast<unsigned long>(n));
    Integer out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        out *= pn - pow_int(Integer{p}, static_cast<unsigned long>(i));
    }
    return out;
}

std::uint64_t matrix_order_mod_p(const ResidueMatrix &a, unsigned long p)
{
    Integer prime{p};
    ResidueMatrix base = a;
    for (auto &row : base) {
        for (auto &x : row) {
            x = mod(x, prime);
        }
    }
    if (det_mod(base, prime) == 0) {
        throw SingularLinearPart("matrix is singular modulo " + std::to_string(p));
    }
    Integer cap = general_linear_order(a.size(), p);
    ResidueMatrix cur = base;
    for (std::uint64_t k = 1;; ++k) {
        if (is_identity(cur)) {
            return k;
        }
        if (Integer{std::to_string(k)} > cap) {
            throw Error("matrix order exceeded |GL_n(F_p)|");
        }
        cur = mat_mul_mod(cur, base, prime);
    }
}

std::uint64_t affine_order_mod_p(const ResidueMatrix &linear, std::span<const Integer> constant, unsigned long p)
{
    Integer prime{p};
    std::size_t n = linear.size();
    ResidueMatrix l = linear;
    for (auto &row : l) {
        for (auto &x : row) {
            x = mod(x, prime);
        }
    }
    if (det_mod(l, prime) == 0) {
        throw SingularLinearPart("linear part is singular modulo " + std::to_string(p));
    }
    ResiduePoint c = reduce_point(constant, prime);
    // A^k(Y) = L^k Y + c_k with c_{k+1} = L c_k + C.
    ResidueMatrix lk = l;
    ResiduePoint ck = c;
    Integer cap = general_linear_order(n, p) * pow_int(prime, static_cast<unsigned long>(n));
    for (std::uint64_t k = 1;; ++k) {
        bool zero = true;
        for (const auto &x : ck) {
            zero = zero && x == 0;
        }
        if (zero && is_identity(lk)) {
            return k;
        }
        if (Integer{std::to_string(k)} > cap) {
            throw Error("affine order exceeded |AGL_n(F_p)|");
        }
        ResiduePoint next = mat_vec_mod(l, ck, prime);
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = mod(next[i] + c[i], prime);
        }
        ck = std::move(next);
        lk = mat_mul_mod(lk, l, prime);
    }
}

} // namespace padyn
