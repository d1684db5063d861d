#include "dlab/contfrac.hpp"

#include <cctype>

namespace dlab {

CfRule CfRule::parse(std::string_view text) {
    auto arg = [&](std::string_view prefix) -> long {
        std::string_view rest = text.substr(prefix.size());
        BigRational v = BigRational::parse(rest);
        if (!v.is_integer() || v.sign() <= 0 || !v.num().fits_slong_p())
            throw DomainError("rule parameter must be a positive integer: '" + std::string(text) + "'");
        return v.num().get_si();
    };
    if (text == "golden") return golden();
    if (text.starts_with("constant:")) return constant(arg("constant:"));
    if (text.starts_with("power:")) return power(arg("power:"));
    throw DomainError("unknown CF rule '" + std::string(text) + "' (golden, constant:K, power:M)");
}

std::string CfRule::str() const {
    switch (kind) {
        case Kind::golden: return "golden";
        case Kind::constant: return "constant:" + std::to_string(k);
        case Kind::power: return "power:" + std::to_string(k);
    }
    return "?";
}

ContinuedFraction ContinuedFraction::parse(std::string_view text, CfKind kind) {
    auto bad = [&] { return DomainError("malformed continued fraction: '" + std::string(text) + "'"); };
    if (text.size() < 3 || text.front() != '[' || text.back() != ']') throw bad();
    std::string_view body = text.substr(1, text.size() - 2);
    ContinuedFraction cf;
    cf.kind = kind;
    auto semi = body.find(';');
    BigRational a0 = BigRational::parse(body.substr(0, semi));
    if (!a0.is_integer()) throw bad();
    cf.a0 = a0.num();
    if (semi != std::string_view::npos) {
        std::string_view rest = body.substr(semi + 1);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = rest.find(',', start);
            BigRational w = BigRational::parse(rest.substr(start, comma - start));
            if (!w.is_integer() || w.sign() <= 0) throw DomainError("partial quotients must be positive integers");
            cf.quotients.push_back(w.num());
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    if (kind == CfKind::exact_rational && !cf.quotients.empty() && cf.quotients.back() == 1) {
        // [..., w, 1] = [..., w + 1]
        cf.quotients.pop_back();
        if (cf.quotients.empty())
            cf.a0 += 1;
        else
            cf.quotients.back() += 1;
    }
    return cf;
}

std::string ContinuedFraction::str() const {
    std::string s = "[" + a0.get_str();
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        s += i == 0 ? ';' : ',';
        s += quotients[i].get_str();
    }
    return s + "]";
}

BigRational ContinuedFraction::prefix_value() const {
    BigInt p0 = 1, q0 = 0, p1 = a0, q1 = 1;
    for (const auto& w : quotients) {
        BigInt p2 = w * p1 + p0, q2 = w * q1 + q0;
        p0 = std::move(p1);
        q0 = std::move(q1);
        p1 = std::move(p2);
        q1 = std::move(q2);
    }
    return BigRational(p1, q1);
}

ContinuedFraction expand_rational(const BigRational& x) {
    ContinuedFraction cf;
    cf.kind = CfKind::exact_rational;
    BigInt num = x.num(), den = x.den();
    BigInt w;
    mpz_fdiv_qr(w.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.a0 = w;
    while (num != 0) {
        std::swap(num, den);
        mpz_fdiv_qr(w.get_mpz_t(), num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cf.quotients.push_back(w);
    }
    return cf;
}

ContinuedFraction generate_cf(const CfRule& rule, std::size_t N, std::size_t digit_cap) {
    if (N < 1) throw DomainError("generate_cf needs N >= 1");
    if (rule.k < 1) throw DomainError("rule parameter must be >= 1");
    ContinuedFraction cf;
    cf.a0 = 0;
    cf.kind = CfKind::prefix;
    cf.generator = rule;
    BigInt q_prev = 0, q = 1;  // q_{n-1}, q_n
    for (std::size_t n = 0; n < N; ++n) {
        BigInt w;
        switch (rule.kind) {
            case CfRule::Kind::golden: w = 1; break;
            case CfRule::Kind::constant: w = rule.k; break;
            case CfRule::Kind::power: mpz_pow_ui(w.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(rule.k)); break;
        }
        BigInt q_next = w * q + q_prev;
        if (mpz_sizeinbase(q_next.get_mpz_t(), 10) > digit_cap)
            throw CfHorizonError("q_" + std::to_string(n + 1) + " exceeds the digit cap of " +
                                     std::to_string(digit_cap) + " after " + std::to_string(n) + " quotients",
                                 cf);
        cf.quotients.push_back(std::move(w));
        q_prev = std::move(q);
        q = std::move(q_next);
    }
    return cf;
}

ConvergentTable convergents(const ContinuedFraction& cf, std::size_t rows) {
    if (rows == 0) return {};
    const ContinuedFraction* src = &cf;
    ContinuedFraction extended;
    if (rows - 1 > cf.quotients.size()) {
        if (!cf.generator)
            throw HorizonError("need " + std::to_string(rows - 1) + " partial quotients, only " +
                               std::to_string(cf.quotients.size()) + " stored and no generator");
        extended = generate_cf(*cf.generator, rows - 1);
        extended.a0 = cf.a0;
        src = &extended;
    }
    ConvergentTable t;
    t.reserve(rows);
    t.push_back({0, src->a0, src->a0, BigInt(1)});
    BigInt p_prev = 1, q_prev = 0;
    for (std::size_t n = 1; n < rows; ++n) {
        const BigInt& w = src->quotients[n - 1];
        const ConvergentRow& last = t.back();
        ConvergentRow row{n, w, w * last.p + p_prev, w * last.q + q_prev};
        p_prev = last.p;
        q_prev = last.q;
        t.push_back(std::move(row));
    }
    return t;
}

ConvergentTable convergents(const ContinuedFraction& cf) { return convergents(cf, cf.quotients.size() + 1); }

std::vector<IntermediateFraction> intermediate_fractions(const ConvergentTable& table, std::size_t n) {
    if (n + 1 >= table.size())
        throw DomainError("intermediate_fractions: row " + std::to_string(n + 1) + " not in table of " +
                          std::to_string(table.size()) + " rows");
    const BigInt p_prev = n == 0 ? BigInt(1) : table[n - 1].p;
    const BigInt q_prev = n == 0 ? BigInt(0) : table[n - 1].q;
    std::vector<IntermediateFraction> out;
    const BigInt& w = table[n + 1].w;
    if (!w.fits_ulong_p() || w > 1000000) throw DomainError("too many intermediate fractions to list (w = " + w.get_str() + ")");
    for (unsigned long r = 1; r <= w.get_ui(); ++r) {
        BigInt br(r);
        out.push_back({br, br * table[n].p + p_prev, br * table[n].q + q_prev});
    }
    return out;
}

Bracket bracket(const ContinuedFraction& cf) {
    ConvergentTable t = convergents(cf);
    const ConvergentRow& last = t.back();
    BigRational conv(last.p, last.q);
    if (cf.kind == CfKind::exact_rational) return {conv, conv};
    BigInt p_prev = t.size() > 1 ? t[t.size() - 2].p : BigInt(1);
    BigInt q_prev = t.size() > 1 ? t[t.size() - 2].q : BigInt(0);
    BigRational other(last.p + p_prev, last.q + q_prev);
    return conv < other ? Bracket{conv, other} : Bracket{other, conv};
}

Decision farther_than(const Bracket& x, const BigRational& r, const BigRational& t) {
    const BigRational lo = r - t, hi = r + t;
    if (x.exact()) return (x.lo < lo || x.lo > hi) ? Decision::yes : Decision::no;
    // x in the open interval (x.lo, x.hi)
    if (x.hi <= lo || x.lo >= hi) return Decision::yes;
    if (x.lo >= lo && x.hi <= hi) return Decision::no;
    return Decision::unknown;
}

LemmaWitness check_best_approx_lemma(const ContinuedFraction& x, const BigInt& p, const BigInt& q, std::size_t rows) {
    if (q < 1) throw DomainError("check_best_approx_lemma needs q >= 1");
    const Bracket br = bracket(x);
    const BigRational r(p, q);
    if (br.exact() && br.lo == r) throw DomainError("p/q equals x");
    ConvergentTable t = convergents(x, rows);
    std::size_t undecided = 0;
    for (std::size_t n = 0; n + 1 < t.size(); ++n) {
        if (!(2 * q > t[n].q)) continue;
        BigRational gap(BigInt(1), 2 * t[n].q * t[n + 1].q);
        switch (farther_than(br, r, gap)) {
            case Decision::yes: {
                BigRational lower = br.exact() ? (br.lo - r).abs() : min((br.lo - r).abs(), (br.hi - r).abs());
                return {n, gap, lower};
            }
            case Decision::unknown: ++undecided; break;
            case Decision::no: break;
        }
    }
    // a whole expansion ends at q_M with q_{M+1} = infinity: the bound is 0
    if (br.exact() && t.size() == x.quotients.size() + 1 && 2 * q > t.back().q)
        return {t.size() - 1, BigRational(0), (br.lo - r).abs()};
    throw HorizonError("no index within " + std::to_string(rows) + " rows certifies the best-approximation bound for " +
                       r.str() + " (" + std::to_string(undecided) + " undecided by the bracket)");
}

GrowthReport psi_growth_test(const ConvergentTable& table, const BigRational& c, const PowerProduct& K) {
    if (table.empty()) throw DomainError("psi_growth_test needs a non-empty table");
    if (c < BigRational(2)) throw DomainError("psi_growth_test needs c >= 2");
    if (K.is_zero()) throw DomainError("psi_growth_test needs K > 0");
    GrowthReport rep;
    rep.tested = table.size() - 1;
    rep.last_third_start = rep.tested - (rep.tested + 2) / 3;
    const BigRational cm1 = c - BigRational(1);
    for (std::size_t n = 0; n < rep.tested; ++n) {
        PowerProduct lhs = K * BigRational(table[n + 1].q);
        PowerProduct rhs = PowerProduct::power(BigRational(table[n].q), cm1);
        if (compare(lhs, rhs) >= 0) {
            rep.satisfying.push_back(n);
            if (n >= rep.last_third_start) rep.rich = true;
        }
    }
    return rep;
}

}  // namespace dlab
