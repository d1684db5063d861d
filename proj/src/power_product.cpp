#include "dlab/power_product.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dlab {

namespace {

BigRational two_power(long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

// m * 2^k with m a 62-bit integer close to exp(log_value) * factor.
BigRational rational_near(long double log_value, long double factor, bool round_up) {
    long double l2 = log_value / std::log(2.0L);
    long k = static_cast<long>(std::floor(l2)) - 60;
    long double mant = std::exp2(l2 - static_cast<long double>(k)) * factor;
    mant = round_up ? std::ceil(mant) : std::floor(mant);
    if (mant < 1.0L) mant = 1.0L;
    BigInt m;
    mpz_set_ui(m.get_mpz_t(), static_cast<unsigned long>(mant));
    return BigRational(m) * two_power(k);
}

}  // namespace

PowerProduct::PowerProduct(const BigRational& coefficient) : coeff_(coefficient) {
    if (coefficient.sign() < 0) throw DomainError("PowerProduct coefficient must be non-negative");
}

PowerProduct PowerProduct::power(const BigRational& base, const BigRational& exponent) {
    PowerProduct p(BigRational(1));
    p.mul_power(base, exponent);
    return p;
}

void PowerProduct::mul_int_power(const BigInt& base, const BigRational& exponent) {
    if (base == 1 || exponent.is_zero() || coeff_.is_zero()) return;
    BigInt whole = exponent.floor();
    BigRational frac = exponent - BigRational(whole);
    if (whole != 0) {
        if (!whole.fits_slong_p()) throw DomainError("exponent too large");
        coeff_ *= pow(BigRational(base), whole.get_si());
    }
    if (frac.is_zero()) return;
    auto it = std::find_if(factors_.begin(), factors_.end(), [&](const auto& f) { return f.first == base; });
    if (it == factors_.end()) {
        factors_.emplace_back(base, frac);
        return;
    }
    it->second += frac;
    if (it->second >= BigRational(1)) {
        it->second -= BigRational(1);
        coeff_ *= BigRational(base);
    }
    if (it->second.is_zero()) factors_.erase(it);
}

PowerProduct& PowerProduct::mul_power(const BigRational& base, const BigRational& exponent) {
    if (base.sign() <= 0) throw DomainError("PowerProduct base must be positive");
    mul_int_power(base.num(), exponent);
    mul_int_power(base.den(), -exponent);
    return *this;
}

PowerProduct& PowerProduct::operator*=(const BigRational& c) {
    if (c.sign() < 0) throw DomainError("PowerProduct factor must be non-negative");
    coeff_ *= c;
    if (coeff_.is_zero()) factors_.clear();
    return *this;
}

PowerProduct& PowerProduct::operator*=(const PowerProduct& o) {
    coeff_ *= o.coeff_;
    if (coeff_.is_zero()) {
        factors_.clear();
        return *this;
    }
    for (const auto& [b, e] : o.factors_) mul_int_power(b, e);
    return *this;
}

PowerProduct PowerProduct::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    PowerProduct r(BigRational(1) / coeff_);
    for (const auto& [b, e] : factors_) {
        r.coeff_ /= BigRational(b);
        r.factors_.emplace_back(b, BigRational(1) - e);
    }
    return r;
}

long double PowerProduct::log() const {
    if (is_zero()) return -std::numeric_limits<long double>::infinity();
    long double l = log_rat(coeff_);
    for (const auto& [b, e] : factors_) l += e.to_long_double() * log_big(b);
    return l;
}

long double PowerProduct::to_long_double() const {
    if (is_zero()) return 0.0L;
    return std::exp(log());
}

std::optional<BigRational> PowerProduct::as_rational() const {
    if (factors_.empty()) return coeff_;
    BigInt L = 1;
    for (const auto& f : factors_) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), f.second.den().get_mpz_t());
    unsigned long l = to_ulong_checked(L, "exponent denominator");
    BigInt X = 1;
    for (const auto& [b, e] : factors_) {
        BigInt k = e.num() * (L / e.den());
        BigInt t;
        mpz_pow_ui(t.get_mpz_t(), b.get_mpz_t(), to_ulong_checked(k, "exponent"));
        X *= t;
    }
    BigInt r;
    if (!mpz_root(r.get_mpz_t(), X.get_mpz_t(), l)) return std::nullopt;
    return coeff_ * BigRational(r);
}

std::string PowerProduct::str() const {
    if (auto r = as_rational()) return r->str();
    std::string s;
    if (coeff_ != BigRational(1)) s = coeff_.str();
    for (const auto& [b, e] : factors_) {
        if (!s.empty()) s += '*';
        s += b.get_str() + "^(" + e.str() + ")";
    }
    return s;
}

std::string PowerProduct::decimal(int digits) const {
    if (auto r = as_rational()) return r->decimal(digits);
    // Irrational: round a verified rational bracket; the bracket is far
    // narrower than the printed precision.
    BigRational lo = rational_lower_bound();
    return lo.decimal(digits);
}

std::strong_ordering compare(const PowerProduct& x, const PowerProduct& y) {
    if (x.is_zero() || y.is_zero()) {
        if (x.is_zero() && y.is_zero()) return std::strong_ordering::equal;
        return x.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    PowerProduct ratio = x * y.inverse();
    if (ratio.factors_.empty()) return ratio.coeff_ <=> BigRational(1);

    long double lr = log_rat(ratio.coeff_);
    long double mag = std::fabs(lr);
    for (const auto& [b, e] : ratio.factors_) {
        long double t = e.to_long_double() * log_big(b);
        lr += t;
        mag += std::fabs(t);
    }
    const long double tol = 1e-12L * (1.0L + mag);
    if (lr > tol) return std::strong_ordering::greater;
    if (lr < -tol) return std::strong_ordering::less;

    BigInt L = 1;
    for (const auto& f : ratio.factors_) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), f.second.den().get_mpz_t());
    unsigned long l = to_ulong_checked(L, "exponent denominator");
    BigInt N, D;
    mpz_pow_ui(N.get_mpz_t(), ratio.coeff_.num().get_mpz_t(), l);
    mpz_pow_ui(D.get_mpz_t(), ratio.coeff_.den().get_mpz_t(), l);
    for (const auto& [b, e] : ratio.factors_) {
        BigInt k = e.num() * (L / e.den());
        BigInt t;
        mpz_pow_ui(t.get_mpz_t(), b.get_mpz_t(), to_ulong_checked(k, "exponent"));
        N *= t;
    }
    int c = cmp(N, D);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

BigRational PowerProduct::rational_upper_bound() const {
    if (is_zero()) return BigRational(0);
    if (auto r = as_rational()) return *r;
    BigRational cand = rational_near(log(), 1.0L + 1e-15L, true);
    while (compare(*this, PowerProduct(cand)) > 0) cand *= BigRational(2);
    return cand;
}

BigRational PowerProduct::rational_lower_bound() const {
    if (is_zero()) return BigRational(0);
    if (auto r = as_rational()) return *r;
    BigRational cand = rational_near(log(), 1.0L - 1e-15L, false);
    while (compare(*this, PowerProduct(cand)) < 0) cand /= BigRational(2);
    return cand;
}

}  // namespace dlab
