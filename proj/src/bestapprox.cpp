#include "dlab/bestapprox.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dlab {

ResidueWalker::ResidueWalker(const RatVec& x) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
        den_.push_back(x[i].den());
        BigInt step;
        mpz_fdiv_r(step.get_mpz_t(), x[i].num().get_mpz_t(), x[i].den().get_mpz_t());
        step_.push_back(step);
        s_.emplace_back(0);
        log_den_.push_back(log_big(x[i].den()));
    }
}

void ResidueWalker::advance() {
    ++q_;
    r_ = 0;
    arg_ = 0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        mpz_add(s_[i].get_mpz_t(), s_[i].get_mpz_t(), step_[i].get_mpz_t());
        if (mpz_cmp(s_[i].get_mpz_t(), den_[i].get_mpz_t()) >= 0)
            mpz_sub(s_[i].get_mpz_t(), s_[i].get_mpz_t(), den_[i].get_mpz_t());
        // folded numerator min(s, den - s)
        mpz_sub(t1_.get_mpz_t(), den_[i].get_mpz_t(), s_[i].get_mpz_t());
        const BigInt& folded = mpz_cmp(t1_.get_mpz_t(), s_[i].get_mpz_t()) < 0 ? t1_ : s_[i];
        if (i == 0) {
            r_ = folded;
            continue;
        }
        // folded/den_i > r_/den_arg ?
        mpz_mul(t2_.get_mpz_t(), folded.get_mpz_t(), den_[arg_].get_mpz_t());
        BigInt rhs = r_ * den_[i];
        if (mpz_cmp(t2_.get_mpz_t(), rhs.get_mpz_t()) > 0) {
            r_ = folded;
            arg_ = i;
        }
    }
}

long double ResidueWalker::log_norm() const {
    if (r_ == 0) return -std::numeric_limits<long double>::infinity();
    return log_big(r_) - log_den_[arg_];
}

BigRational ResidueWalker::norm() const { return BigRational(r_, den_[arg_]); }

MinimumTracker::MinimumTracker(const BigRational& a) : am1_(a - BigRational(1)), am1_ld_(am1_.to_long_double()) {}

void MinimumTracker::offer(const ResidueWalker& w) {
    if (best_q_ != 0 && best_zero_) return;
    if (w.zero()) {
        take(w, -std::numeric_limits<long double>::infinity(), BigRational(0));
        best_zero_ = true;
        return;
    }
    long double lg = am1_ld_ * std::log(static_cast<long double>(w.q())) + w.log_norm();
    if (best_q_ == 0) {
        take(w, lg, w.norm());
        return;
    }
    long double tol = 1e-9L * (1.0L + std::fabs(lg) + std::fabs(best_log_));
    if (lg < best_log_ - tol) {
        take(w, lg, w.norm());
    } else if (lg <= best_log_ + tol) {
        BigRational n = w.norm();
        PowerProduct cand(n);
        cand.mul_power(BigRational(BigInt(static_cast<unsigned long>(w.q()))), am1_);
        PowerProduct inc(best_norm_);
        inc.mul_power(BigRational(BigInt(static_cast<unsigned long>(best_q_))), am1_);
        if (compare(cand, inc) < 0) take(w, lg, std::move(n));
    }
}

void MinimumTracker::take(const ResidueWalker& w, long double lg, BigRational n) {
    best_q_ = w.q();
    best_log_ = lg;
    best_norm_ = std::move(n);
}

namespace {

BigRational big_q(std::uint64_t q) { return BigRational(BigInt(static_cast<unsigned long>(q))); }

}  // namespace

std::vector<PrefixMinimum> prefix_minima(const RatVec& x, const BigRational& a, const std::vector<std::uint64_t>& Qs) {
    std::vector<PrefixMinimum> out;
    if (Qs.empty()) return out;
    for (std::size_t i = 0; i < Qs.size(); ++i) {
        if (Qs[i] < 1) throw DomainError("Q must be >= 1");
        if (i && Qs[i] < Qs[i - 1]) throw DomainError("Q list must be sorted ascending");
    }
    ResidueWalker walker(x);
    MinimumTracker tracker(a);
    std::size_t next = 0;
    while (next < Qs.size()) {
        walker.advance();
        tracker.offer(walker);
        while (next < Qs.size() && Qs[next] == walker.q()) out.push_back(tracker.snapshot(Qs[next++]));
    }
    return out;
}

PowerProduct quotient_value(const PrefixMinimum& m, const ExponentPair& e) {
    PowerProduct v(m.norm);
    v.mul_power(big_q(m.q), e.a - BigRational(1));
    v.mul_power(big_q(m.Q), e.A);
    return v;
}

QuotientReport make_report(const RatVec& x, const PrefixMinimum& m, const ExponentPair& e) {
    QuotientReport r;
    r.Q = m.Q;
    r.exponents = e;
    r.minimizer = best_dist(x, BigInt(static_cast<unsigned long>(m.q)));
    r.value = quotient_value(m, e);
    r.minimizer.weighted = r.value;
    return r;
}

ApproximationRecord best_dist(const RatVec& x, const BigInt& q) {
    Residue res = nearest_rep(x, q);
    ApproximationRecord rec;
    rec.q = q;
    rec.p = res.p;
    rec.dist = res.norm / BigRational(q);
    rec.weighted = PowerProduct(rec.dist);
    return rec;
}

QuotientReport dirichlet_quotient(const RatVec& x, std::uint64_t Q, const ExponentPair& e) {
    if (Q < 1) throw DomainError("dirichlet_quotient needs Q >= 1");
    auto mins = prefix_minima(x, e.a, {Q});
    return make_report(x, mins.front(), e);
}

ApproximationRecord check_dirichlet(const RatVec& x, std::uint64_t Q) {
    if (Q < 1) throw DomainError("check_dirichlet needs Q >= 1");
    const long d = static_cast<long>(x.dim());
    const BigRational bigQ = big_q(Q);
    ResidueWalker walker(x);
    std::ostringstream dump;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        walker.advance();
        // ||x - p/q|| < q^-1 Q^-1/d  <=>  ||q x||^d * Q < 1
        BigRational n = walker.norm();
        if (pow(n, d) * bigQ < BigRational(1)) {
            ApproximationRecord rec = best_dist(x, BigInt(static_cast<unsigned long>(q)));
            rec.weighted = PowerProduct(rec.dist);
            rec.weighted.mul_power(BigRational(BigInt(static_cast<unsigned long>(q))), BigRational(1));
            rec.weighted.mul_power(bigQ, BigRational(BigInt(1), BigInt(d)));
            return rec;
        }
        dump << " q=" << q << ":||qx||=" << n.str();
    }
    throw InvariantViolation("THEOREM VIOLATION", "no q <= " + std::to_string(Q) + " satisfies Dirichlet's bound for x=" +
                                                      x.str() + "; scan:" + dump.str());
}

ApproximabilityVerdict is_approximable(const RatVec& x, const ExponentPair& e, const BigRational& kappa,
                                       std::uint64_t Q0, std::uint64_t Qmax) {
    if (Q0 < 1 || Q0 > Qmax) throw DomainError("is_approximable needs 1 <= Q0 <= Qmax");
    if (kappa.sign() <= 0) throw DomainError("kappa must be positive");
    ApproximabilityVerdict v;
    v.Q0 = Q0;
    v.Qmax = Qmax;
    const PowerProduct kap(kappa);
    ResidueWalker walker(x);
    MinimumTracker tracker(e.a);
    bool have_worst = false;
    for (std::uint64_t Q = 1; Q <= Qmax; ++Q) {
        walker.advance();
        tracker.offer(walker);
        if (Q < Q0) continue;
        PowerProduct D = quotient_value(tracker.snapshot(Q), e);
        if (!v.fails_at && compare(D, kap) >= 0) v.fails_at = Q;
        if (!have_worst || compare(D, v.worst_D) > 0) {
            v.worst_D = D;
            v.worst_Q = Q;
            have_worst = true;
        }
    }
    v.holds = !v.fails_at.has_value();
    return v;
}

SampleSup sup_over_sample(const std::vector<RatVec>& points, const ExponentPair& e, std::uint64_t Q) {
    if (points.empty()) throw DomainError("sup_over_sample needs a non-empty sample");
    SampleSup best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != points.front().dim()) throw DomainError("sample points must share a dimension");
        QuotientReport r = dirichlet_quotient(points[i], Q, e);
        if (i == 0 || compare(r.value, best.value) > 0) {
            best.value = r.value;
            best.argmax = i;
            best.report = std::move(r);
        }
    }
    return best;
}

}  // namespace dlab
