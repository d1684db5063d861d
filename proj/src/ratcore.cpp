#include "dlab/ratcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "dlab/power_product.hpp"

namespace dlab {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_uint(std::string_view s, std::string_view whole) {
    if (!all_digits(s)) throw DomainError("malformed rational: '" + std::string(whole) + "'");
    return BigInt(std::string(s), 10);
}

}  // namespace

BigRational::BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

BigRational BigRational::from_mpq(const mpq_class& q) {
    BigRational r;
    r.v_ = q;
    r.v_.canonicalize();
    return r;
}

BigRational BigRational::parse(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    BigRational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_uint(s.substr(0, slash), text);
        BigInt den = parse_uint(s.substr(slash + 1), text);
        out = BigRational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw DomainError("malformed rational: '" + std::string(text) + "'");
        BigInt i = ip.empty() ? BigInt(0) : parse_uint(ip, text);
        BigInt f = fp.empty() ? BigInt(0) : parse_uint(fp, text);
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        out = BigRational(i * scale + f, scale);
    } else {
        out = BigRational(parse_uint(s, text));
    }
    return neg ? -out : out;
}

BigInt BigRational::floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

BigInt BigRational::ceil() const {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

BigRational BigRational::abs() const { return sign() < 0 ? -*this : *this; }

long double BigRational::to_long_double() const {
    if (is_zero()) return 0.0L;
    return static_cast<long double>(sign()) * std::exp(log_rat(abs()));
}

std::string BigRational::str() const {
    if (den() == 1) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::string BigRational::decimal(int digits) const {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round half away from zero
    BigInt scaled_num = abs().num() * scale * 2 + den();
    BigInt q;
    BigInt twice_den = den() * 2;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), twice_den.get_mpz_t());
    std::string digits_str = q.get_str();
    if (digits > 0) {
        if (digits_str.size() <= static_cast<std::size_t>(digits))
            digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
        digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sign() < 0 && q != 0) digits_str.insert(0, "-");
    return digits_str;
}

BigRational& BigRational::operator+=(const BigRational& o) {
    v_ += o.v_;
    return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
    v_ -= o.v_;
    return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
    v_ *= o.v_;
    return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

BigRational BigRational::operator-() const {
    BigRational r;
    r.v_ = -v_;
    return r;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

BigRational reduce(const BigInt& num, const BigInt& den) { return BigRational(num, den); }

BigRational pow(const BigRational& base, long exponent) {
    if (exponent < 0) {
        if (base.is_zero()) throw DomainError("zero to a negative power");
        return pow(BigRational(1) / base, -exponent);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
    return BigRational(n, d);
}

BigRational min(const BigRational& a, const BigRational& b) { return b < a ? b : a; }
BigRational max(const BigRational& a, const BigRational& b) { return a < b ? b : a; }

RatVec::RatVec(std::vector<BigRational> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw DomainError("vector dimension must be at least 1");
}

RatVec::RatVec(std::size_t dim) : c_(dim) {
    if (dim == 0) throw DomainError("vector dimension must be at least 1");
}

RatVec RatVec::parse(std::string_view text) {
    std::vector<BigRational> coords;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        coords.push_back(BigRational::parse(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return RatVec(std::move(coords));
}

BigRational RatVec::norm_max() const {
    BigRational m;
    for (const auto& c : c_) m = max(m, c.abs());
    return m;
}

BigRational RatVec::norm2_sq() const { return dot(*this, *this); }

bool RatVec::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigRational& c) { return c.is_zero(); });
}

std::string RatVec::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += c_[i].str();
    }
    return s;
}

static void require_same_dim(const RatVec& x, const RatVec& y) {
    if (x.dim() != y.dim())
        throw DomainError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
}

RatVec& RatVec::operator+=(const RatVec& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

RatVec& RatVec::operator-=(const RatVec& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

RatVec& RatVec::operator*=(const BigRational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

BigRational dot(const RatVec& x, const RatVec& y) {
    require_same_dim(x, y);
    mpq_class acc;
    for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i].raw() * y[i].raw();
    return BigRational::from_mpq(acc);
}

BigRational dist_max(const RatVec& x, const RatVec& y) {
    require_same_dim(x, y);
    BigRational m;
    for (std::size_t i = 0; i < x.dim(); ++i) m = max(m, (x[i] - y[i]).abs());
    return m;
}

Residue nearest_rep(const RatVec& x, const BigInt& q) {
    if (q < 1) throw DomainError("nearest_rep needs q >= 1");
    Residue out{RatVec(x.dim()), BigRational(), std::vector<BigInt>(x.dim())};
    const BigRational half(BigInt(1), BigInt(2));
    for (std::size_t i = 0; i < x.dim(); ++i) {
        BigRational qx = x[i] * BigRational(q);
        // p = ceil(qx - 1/2) puts qx - p in (-1/2, 1/2]
        out.p[i] = (qx - half).ceil();
        out.rep[i] = qx - BigRational(out.p[i]);
    }
    out.norm = out.rep.norm_max();
    return out;
}

std::strong_ordering cmp_weighted(const BigInt& q, const BigInt& Q, const BigRational& dist, const ExponentPair& e,
                                  const BigRational& threshold) {
    if (dist.sign() < 0) throw DomainError("cmp_weighted needs dist >= 0");
    if (threshold.sign() <= 0) throw DomainError("cmp_weighted needs a positive threshold");
    if (q < 1 || Q < 1) throw DomainError("cmp_weighted needs q, Q >= 1");
    PowerProduct lhs(dist);
    lhs.mul_power(BigRational(q), e.a);
    lhs.mul_power(BigRational(Q), e.A);
    return compare(lhs, PowerProduct(threshold));
}

BigInt iroot_floor(const BigInt& n, unsigned long k) {
    if (n < 0) throw DomainError("root of a negative integer");
    if (k == 0) throw DomainError("zeroth root");
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

BigInt ceil_rational_power(const BigInt& base, const BigRational& exponent) {
    if (base < 1) throw DomainError("ceil_rational_power needs base >= 1");
    if (exponent.sign() < 0) throw DomainError("ceil_rational_power needs exponent >= 0");
    unsigned long u = to_ulong_checked(exponent.num(), "exponent numerator");
    unsigned long v = to_ulong_checked(exponent.den(), "exponent denominator");
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), u);
    BigInt r;
    int exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), v);
    if (!exact) r += 1;
    return r;
}

long double log_big(const BigInt& n) {
    if (n <= 0) throw DomainError("log of a non-positive integer");
    long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(static_cast<long double>(m)) + static_cast<long double>(e) * std::log(2.0L);
}

long double log_rat(const BigRational& r) {
    if (r.sign() <= 0) throw DomainError("log of a non-positive rational");
    return log_big(r.num()) - log_big(r.den());
}

unsigned long to_ulong_checked(const BigInt& n, const char* what) {
    if (n < 0 || !n.fits_ulong_p()) throw DomainError(std::string(what) + " out of range");
    return n.get_ui();
}

}  // namespace dlab
