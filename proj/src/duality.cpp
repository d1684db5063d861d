#include "dlab/duality.hpp"

#include <algorithm>

namespace dlab {

std::string to_string(Regime r) { return r == Regime::strict ? "strict" : "boundary"; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violation: return "violation";
        case Verdict::undecided: return "undecided-at-horizon";
    }
    return "?";
}

std::string to_string(Truth t) {
    switch (t) {
        case Truth::yes: return "true";
        case Truth::no: return "false";
        case Truth::unknown: return "unknown";
    }
    return "?";
}

DualityParams duality_params(const BigRational& a, const BigRational& A) {
    const BigRational one(1);
    if (!(a < one)) throw DomainError("a < 1 fails (a = " + a.str() + ")");
    const BigRational m = min(A, A + a);
    if (!(one < m)) throw DomainError("1 < min(A, A + a) fails (min = " + m.str() + ")");
    DualityParams p;
    p.a = a;
    p.A = A;
    p.b = m - one;
    p.c = (A - a.abs()) / p.b;
    if (p.c < BigRational(2)) throw DomainError("c >= 2 fails (c = " + p.c.str() + ")");
    p.regime = p.c == BigRational(2) ? Regime::boundary : Regime::strict;
    return p;
}

PowerProduct alpha_power(const BigRational& alpha, const BigRational& b) {
    if (alpha.sign() <= 0) throw DomainError("alpha must be positive");
    return PowerProduct::power(alpha, b);
}

GrowthBoundReport growth_bound_check(const ConvergentTable& table, const DualityParams& params,
                                     const BigRational& alpha) {
    if (table.empty()) throw DomainError("growth_bound_check needs a non-empty table");
    GrowthBoundReport rep;
    const PowerProduct ab = alpha_power(alpha, params.b);
    const BigRational cm1 = params.c - BigRational(1);
    for (std::size_t n = 0; n + 1 < table.size(); ++n) {
        PowerProduct bound = ab;
        bound.mul_power(BigRational(table[n].q), cm1);
        rep.rows.push_back({n, compare(PowerProduct(BigRational(table[n + 1].q)), bound) <= 0});
    }
    std::size_t n0 = rep.rows.size();
    while (n0 > 0 && rep.rows[n0 - 1].holds) --n0;
    if (n0 < rep.rows.size()) rep.n0 = n0;
    return rep;
}

namespace {

// floor of a positive power product, via a verified rational upper bound
BigInt floor_upper(const PowerProduct& v) { return v.rational_upper_bound().floor(); }

}  // namespace

CfQuotientEngine::CfQuotientEngine(const ContinuedFraction& cf, const ExponentPair& e)
    : cf_(cf), e_(e), table_(convergents(cf)) {
    const ConvergentRow& last = table_.back();
    proxy_ = BigRational(last.p, last.q);
    for (const auto& row : table_) eps_.push_back(BigRational(row.q) * proxy_ - BigRational(row.p));
    const std::size_t M = table_.size() - 1;
    if (cf_.kind == CfKind::exact_rational) {
        max_Q_ = last.q;
        return;
    }
    const BigInt q_prev = M >= 1 ? table_[M - 1].q : BigInt(0);
    delta_ = BigRational(BigInt(1), last.q * (last.q + q_prev));
    max_Q_ = M >= 1 ? table_[M - 1].q - 1 : BigInt(0);
    // Keep the margin Q^A max(1, Q^a) delta below 2^-32.
    const BigRational E = e_.A + max(e_.a, BigRational(0));
    if (E.sign() > 0) {
        BigInt R = (BigRational(1) / (delta_ * BigRational(BigInt(1) << 32))).floor();
        if (R < 1) {
            max_Q_ = 0;
        } else {
            BigInt Rv;
            mpz_pow_ui(Rv.get_mpz_t(), R.get_mpz_t(), to_ulong_checked(E.den(), "exponent denominator"));
            BigInt cap = iroot_floor(Rv, to_ulong_checked(E.num(), "exponent numerator"));
            if (cap < max_Q_) max_Q_ = cap;
        }
    }
    if (max_Q_ < 0) max_Q_ = 0;
}

CfQuotient CfQuotientEngine::evaluate(const BigInt& Q) const {
    if (Q < 1) throw DomainError("Q must be >= 1");
    CfQuotient out;
    out.Q = Q;
    const std::size_t M = table_.size() - 1;
    const BigRational bigQ(Q);
    if (cf_.kind == CfKind::exact_rational && Q >= table_[M].q) {
        out.q = table_[M].q;
        out.p = table_[M].p;
        return out;  // value and margin zero
    }
    if (cf_.kind == CfKind::prefix && Q > max_Q_)
        throw HorizonError("Q = " + Q.get_str() + " beyond the engine horizon " + max_Q_.get_str() + " of " +
                           cf_.str());

    // n with q_n <= Q < q_{n+1}
    std::size_t n = 0;
    while (n + 1 <= M && table_[n + 1].q <= Q) ++n;
    const BigInt& qn = table_[n].q;
    const BigInt& qn1 = table_[n + 1].q;
    const BigRational& en = eps_[n];
    const BigRational& en1 = eps_[n + 1];
    const BigRational am1 = e_.a - BigRational(1);

    bool have = false;
    PowerProduct best;
    BigInt best_q, best_s, best_t;
    auto consider = [&](const BigInt& s, const BigInt& t) {
        BigInt q = s * qn + t * qn1;
        if (q < 1 || q > Q) return;
        BigRational y = BigRational(s) * en + BigRational(t) * en1;
        PowerProduct g(y.abs());
        g.mul_power(BigRational(q), am1);
        if (!have) {
            have = true;
        } else {
            auto c = compare(g, best);
            if (c > 0 || (c == 0 && q >= best_q)) return;
        }
        best = std::move(g);
        best_q = q;
        best_s = s;
        best_t = t;
    };

    auto scan_row = [&](const BigInt& t) {
        const BigInt qt = t * qn1;
        const BigRational yt = BigRational(t) * en1;
        BigInt s_lo, s_hi;
        BigInt lo_num = 1 - qt, hi_num = Q - qt;
        mpz_cdiv_q(s_lo.get_mpz_t(), lo_num.get_mpz_t(), qn.get_mpz_t());
        mpz_fdiv_q(s_hi.get_mpz_t(), hi_num.get_mpz_t(), qn.get_mpz_t());
        if (s_lo > s_hi) return;
        // y(s) = yt + s en vanishes at s0; on each side q^(a-1)|y| has at most
        // one critical point s*, so endpoints and the integers around s* suffice.
        const BigRational s0 = -yt / en;
        std::vector<std::pair<BigInt, BigInt>> pieces;
        BigInt f0 = s0.floor(), c0 = s0.ceil();
        if (s_lo <= std::min(s_hi, f0)) pieces.emplace_back(s_lo, std::min(s_hi, f0));
        if (std::max(s_lo, c0) <= s_hi) pieces.emplace_back(std::max(s_lo, c0), s_hi);
        std::optional<BigRational> s_star;
        if (!e_.a.is_zero()) {
            BigRational num = -(am1 * BigRational(qn) * yt) - en * BigRational(qt);
            s_star = num / (e_.a * BigRational(qn) * en);
        }
        for (const auto& [lo, hi] : pieces) {
            consider(lo, t);
            consider(hi, t);
            if (s_star) {
                BigInt f = s_star->floor(), c = s_star->ceil();
                if (lo <= f && f <= hi) consider(f, t);
                if (lo <= c && c <= hi) consider(c, t);
            }
        }
    };

    // rows t with |t| <= qn * B * max(1, Q^(1-a)) + |en| Q can hold values <= B
    const bool grow = e_.a < BigRational(1);
    const PowerProduct q_pow = grow ? PowerProduct::power(bigQ, BigRational(1) - e_.a) : PowerProduct(BigRational(1));
    const BigInt extra = (en.abs() * bigQ).floor() + 1;
    auto row_bound = [&]() -> BigInt { return floor_upper(best * q_pow * BigRational(qn)) + extra; };

    scan_row(BigInt(0));
    scan_row(BigInt(1));
    scan_row(BigInt(-1));
    if (!have) throw InvariantViolation("PROOF VIOLATION", "no lattice point with 1 <= q <= Q for Q = " + Q.get_str());
    BigInt T = row_bound();
    const BigInt row_limit = 1000000;
    if (T > row_limit) throw HorizonError("lattice walk needs " + T.get_str() + " rows at Q = " + Q.get_str());
    for (BigInt t = 2; t <= T; ++t) {
        scan_row(t);
        scan_row(-t);
        T = std::min(T, row_bound());
    }

    out.q = best_q;
    out.p = best_s * table_[n].p + best_t * table_[n + 1].p;
    out.value = best;
    out.value.mul_power(bigQ, e_.A);
    if (cf_.kind == CfKind::prefix) {
        PowerProduct m = PowerProduct::power(bigQ, e_.A);
        if (e_.a.sign() > 0) m.mul_power(bigQ, e_.a);
        m *= delta_;
        out.margin = m.rational_upper_bound();
    }
    return out;
}

std::vector<BigInt> cf_q_grid(const ConvergentTable& table, const BigInt& max_Q, std::size_t geometric_points) {
    std::vector<BigInt> grid;
    if (max_Q < 1) return grid;
    const std::size_t bits = mpz_sizeinbase(max_Q.get_mpz_t(), 2);
    const std::size_t step = std::max<std::size_t>(1, (bits + geometric_points - 1) / std::max<std::size_t>(1, geometric_points));
    for (std::size_t j = 0; j < bits; j += step) {
        BigInt v = BigInt(1) << static_cast<mp_bitcnt_t>(j);
        if (v <= max_Q) grid.push_back(v);
    }
    grid.push_back(max_Q);
    auto add = [&](const BigInt& v) {
        if (v >= 1 && v <= max_Q) grid.push_back(v);
    };
    for (std::size_t n = 0; n + 1 < table.size(); ++n) {
        add(table[n].q);
        add(table[n + 1].q / 2);
        add(table[n + 1].q - 1);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

DProfile d_profile(const CfQuotientEngine& engine, std::size_t geometric_points) {
    DProfile prof;
    prof.max_Q = engine.max_Q();
    const BigInt max_sq = engine.max_Q() * engine.max_Q();
    for (const BigInt& Q : cf_q_grid(engine.table(), engine.max_Q(), geometric_points)) {
        ProfilePoint pt;
        pt.d = engine.evaluate(Q);
        pt.lo = pt.d.value.rational_lower_bound();
        pt.hi = pt.d.value.rational_upper_bound();
        pt.final_third = Q * Q * Q >= max_sq;
        prof.points.push_back(std::move(pt));
    }
    return prof;
}

namespace {

enum class Side { below, above, unknown };  // D < alpha, D >= alpha

// The short bracket [lo, hi] settles almost every point; the exact value is
// only consulted when alpha falls inside it.
Side locate(const ProfilePoint& pt, const BigRational& alpha) {
    const BigRational up = alpha + pt.d.margin, down = alpha - pt.d.margin;
    if (pt.lo >= up) return Side::above;
    if (down.sign() > 0 && pt.hi < down) return Side::below;
    if (pt.hi >= up && compare(pt.d.value, PowerProduct(up)) >= 0) return Side::above;
    if (down.sign() > 0 && pt.lo < down && compare(pt.d.value, PowerProduct(down)) < 0) return Side::below;
    return Side::unknown;
}

// Truth of "D(x, Q) < alpha for every Q in the final third", with the
// profile index that decided it.
std::pair<Truth, std::optional<std::size_t>> approximable(const DProfile& prof, const BigRational& alpha) {
    bool any = false, unknown = false;
    for (std::size_t i = 0; i < prof.points.size(); ++i) {
        if (!prof.points[i].final_third) continue;
        any = true;
        switch (locate(prof.points[i], alpha)) {
            case Side::above: return {Truth::no, i};
            case Side::unknown: unknown = true; break;
            case Side::below: break;
        }
    }
    if (!any || unknown) return {Truth::unknown, std::nullopt};
    return {Truth::yes, std::nullopt};
}

Truth negate(Truth t) { return t == Truth::yes ? Truth::no : t == Truth::no ? Truth::yes : Truth::unknown; }

Verdict judge(Truth lhs, Truth rhs) {
    if (lhs == Truth::no || rhs == Truth::yes) return Verdict::consistent;
    if (lhs == Truth::yes && rhs == Truth::no) return Verdict::violation;
    return Verdict::undecided;
}

constexpr std::size_t kMinGrowthRows = 3;

}  // namespace

ImplicationReport test_implication_i(const DProfile& profile, const ConvergentTable& table,
                                     const DualityParams& params, const BigRational& alpha, const BigRational& C) {
    if (C.sign() <= 0) throw DomainError("C must be positive");
    ImplicationReport rep;
    auto [lhs, witness] = approximable(profile, alpha);
    rep.lhs = lhs;
    rep.lhs_witness = witness;
    // not (C alpha^b)^-1 psi_c-approximable: growth-poor at q_{n+1} >= C alpha^b q_n^(c-1)
    rep.K = (alpha_power(alpha, params.b) * C).inverse();
    rep.growth = psi_growth_test(table, params.c, rep.K);
    rep.rhs = rep.growth.tested < kMinGrowthRows ? Truth::unknown : (rep.growth.rich ? Truth::no : Truth::yes);
    rep.verdict = judge(rep.lhs, rep.rhs);
    return rep;
}

ImplicationReport test_implication_ii(const DProfile& profile, const ConvergentTable& table,
                                      const DualityParams& params, const BigRational& alpha, const BigRational& C) {
    if (C.sign() <= 0) throw DomainError("C must be positive");
    ImplicationReport rep;
    auto [approx, witness] = approximable(profile, alpha);
    rep.lhs = negate(approx);
    rep.lhs_witness = witness;
    // C alpha^-b psi_c-approximable: growth-rich at q_{n+1} >= C^-1 alpha^b q_n^(c-1)
    rep.K = alpha_power(alpha, params.b).inverse() * C;
    rep.growth = psi_growth_test(table, params.c, rep.K);
    rep.rhs = rep.growth.tested < kMinGrowthRows ? Truth::unknown : (rep.growth.rich ? Truth::yes : Truth::no);
    rep.verdict = judge(rep.lhs, rep.rhs);
    return rep;
}

ImplicationReport test_implication_i(const ContinuedFraction& x, const DualityParams& params, const BigRational& alpha,
                                     const BigRational& C) {
    CfQuotientEngine engine(x, ExponentPair{params.a, params.A});
    return test_implication_i(d_profile(engine), engine.table(), params, alpha, C);
}

ImplicationReport test_implication_ii(const ContinuedFraction& x, const DualityParams& params,
                                      const BigRational& alpha, const BigRational& C) {
    CfQuotientEngine engine(x, ExponentPair{params.a, params.A});
    return test_implication_ii(d_profile(engine), engine.table(), params, alpha, C);
}

std::vector<BatteryMember> standard_battery(std::size_t golden_rows, std::size_t constant_rows, std::size_t digit_cap) {
    auto capped = [&](const CfRule& rule, std::size_t n) {
        try {
            return generate_cf(rule, n, digit_cap);
        } catch (const CfHorizonError& e) {
            return e.partial();
        }
    };
    return {
        {"golden", capped(CfRule::golden(), golden_rows)},
        {"constant:2", capped(CfRule::constant(2), constant_rows)},
        {"power:1", capped(CfRule::power(1), 1000)},
        {"power:2", capped(CfRule::power(2), 1000)},
    };
}

SweepOutcome sweep_C(const std::vector<BatteryMember>& battery, const std::vector<DualityParams>& params,
                     const std::vector<BigRational>& alphas, long max_log2) {
    if (max_log2 < 0) throw DomainError("max_log2 must be >= 0");
    SweepOutcome out;
    out.violations.assign(static_cast<std::size_t>(max_log2) + 1, 0);
    out.undecided.assign(static_cast<std::size_t>(max_log2) + 1, 0);
    for (const auto& member : battery) {
        for (const auto& p : params) {
            CfQuotientEngine engine(member.cf, ExponentPair{p.a, p.A});
            const DProfile prof = d_profile(engine);
            for (long k = 0; k <= max_log2; ++k) {
                const BigRational C(BigInt(1) << static_cast<mp_bitcnt_t>(k));
                for (const auto& alpha : alphas) {
                    for (const auto& r : {test_implication_i(prof, engine.table(), p, alpha, C),
                                          test_implication_ii(prof, engine.table(), p, alpha, C)}) {
                        if (r.verdict == Verdict::violation) ++out.violations[static_cast<std::size_t>(k)];
                        if (r.verdict == Verdict::undecided) ++out.undecided[static_cast<std::size_t>(k)];
                    }
                }
            }
        }
    }
    out.tests_per_C = battery.size() * params.size() * alphas.size() * 2;
    for (long k = 0; k <= max_log2; ++k) {
        if (out.violations[static_cast<std::size_t>(k)] == 0) {
            out.least_log2_C = k;
            break;
        }
    }
    return out;
}

}  // namespace dlab
