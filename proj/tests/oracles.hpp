#pragma once

// Slow, independent reference computations. Nothing here calls the library's
// scanning, continued-fraction or lattice code; only the number types are
// shared.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace oracle {

using dlab::BigInt;
using dlab::BigRational;
using dlab::RatVec;

inline BigRational babs(const BigRational& r) { return r.sign() < 0 ? -r : r; }

/// min over integers p of |x - p/q|, by trying the integers around q x.
inline BigRational coord_dist(const BigRational& x, const BigInt& q, BigInt* best_p = nullptr) {
    BigRational qx = x * BigRational(q);
    BigInt base = qx.floor();
    std::optional<BigRational> best;
    for (int k = -1; k <= 2; ++k) {
        BigInt p = base + k;
        BigRational d = babs(x - BigRational(p, q));
        // candidates ascend, so "<=" keeps the larger p on a tie (the residue
        // representative sits at +1/2)
        if (!best || d <= *best) {
            best = d;
            if (best_p) *best_p = p;
        }
    }
    return *best;
}

/// max_i min_p |x_i - p/q|.
inline BigRational dist(const RatVec& x, const BigInt& q) {
    BigRational m(0);
    for (std::size_t i = 0; i < x.dim(); ++i) m = dlab::max(m, coord_dist(x[i], q));
    return m;
}

/// Sign of q1^a d1 - q2^a d2 by raising both sides to the exponent
/// denominator.
inline int cmp_scaled(const BigInt& q1, const BigRational& d1, const BigInt& q2, const BigRational& d2,
                      const BigRational& a) {
    if (d1.is_zero() || d2.is_zero()) return d1.is_zero() ? (d2.is_zero() ? 0 : -1) : 1;
    const long v = a.den().get_si(), u = a.num().get_si();
    // (q1/q2)^u * (d1/d2)^v  vs  1
    BigRational lhs = dlab::pow(BigRational(q1) / BigRational(q2), u) * dlab::pow(d1 / d2, v);
    return lhs < BigRational(1) ? -1 : lhs == BigRational(1) ? 0 : 1;
}

struct Min {
    BigInt q;
    BigRational dist;
};

/// argmin over 1 <= q <= Q of q^a dist(x, q); ties to the smallest q.
inline Min min_scaled(const RatVec& x, std::uint64_t Q, const BigRational& a) {
    Min best{BigInt(1), dist(x, BigInt(1))};
    for (std::uint64_t q = 2; q <= Q; ++q) {
        BigRational d = dist(x, BigInt(q));
        if (cmp_scaled(BigInt(q), d, best.q, best.dist, a) < 0) best = {BigInt(q), d};
    }
    return best;
}

/// D_{a,A}(x, Q) as an exact power product.
inline dlab::PowerProduct D(const RatVec& x, std::uint64_t Q, const BigRational& a, const BigRational& A) {
    Min m = min_scaled(x, Q, a);
    dlab::PowerProduct v(m.dist);
    v.mul_power(BigRational(m.q), a);
    v.mul_power(BigRational(BigInt(Q)), A);
    return v;
}

/// f_d(a) straight from the piecewise definition.
inline BigRational f_d(unsigned d, const BigRational& a) {
    if (a.sign() <= 0) return BigRational(1) - a;
    if (a <= BigRational(1)) {
        BigRational s(0), t(1);
        for (unsigned i = 0; i < d; ++i) {
            s += t;
            t *= a;
        }
        return BigRational(1) / s;
    }
    BigRational edge = BigRational(1) + BigRational(BigInt(1), BigInt(d));
    if (a <= edge) return edge - a;
    return BigRational(0);
}

/// Value of [a0; w_1, ..., w_n] by evaluating from the tail.
inline BigRational cf_value(const BigInt& a0, const std::vector<BigInt>& w, std::size_t n) {
    if (n == 0) return BigRational(a0);
    BigRational t(w[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) t = BigRational(w[i]) + BigRational(1) / t;
    return BigRational(a0) + BigRational(1) / t;
}

/// Partial quotients of a rational by repeated floor and reciprocal.
inline std::vector<BigInt> cf_digits(BigRational x) {
    std::vector<BigInt> out;
    while (true) {
        BigInt f = x.floor();
        out.push_back(f);
        BigRational frac = x - BigRational(f);
        if (frac.is_zero()) break;
        x = BigRational(1) / frac;
    }
    return out;
}

/// Reduced fractions with denominator <= Q in [lo, hi].
inline std::vector<BigRational> farey(const BigRational& lo, const BigRational& hi, std::uint64_t Q) {
    std::vector<BigRational> out;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        BigInt plo = (lo * BigRational(BigInt(q))).ceil(), phi = (hi * BigRational(BigInt(q))).floor();
        for (BigInt p = plo; p <= phi; ++p) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), BigInt(q).get_mpz_t());
            if (g == 1) out.emplace_back(p, BigInt(q));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Is y strictly closer to 0 than to every non-zero integer combination of
/// basis with coefficients in [-N, N]? Plain enumeration.
inline bool in_domain_enum(const std::vector<RatVec>& basis, const RatVec& y, int N) {
    const std::size_t k = basis.size();
    if (k == 0) return true;
    const BigRational y2 = y.norm2_sq();
    std::vector<int> c(k, -N);
    while (true) {
        bool nonzero = std::any_of(c.begin(), c.end(), [](int v) { return v != 0; });
        if (nonzero) {
            RatVec l(y.dim());
            for (std::size_t i = 0; i < k; ++i) l += basis[i] * BigRational(c[i]);
            if ((y - l).norm2_sq() <= y2) return false;
        }
        std::size_t i = 0;
        while (i < k && c[i] == N) c[i++] = -N;
        if (i == k) break;
        ++c[i];
    }
    return true;
}

/// Exact rank by Gaussian elimination on a copy.
inline std::size_t rank(std::vector<RatVec> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].dim();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            BigRational f = rows[i][c] / rows[r][c];
            rows[i] -= rows[r] * f;
        }
        ++r;
    }
    return r;
}

}  // namespace oracle
