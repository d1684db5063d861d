#include "dlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dlab {

std::vector<ResidueEntry> residue_table(const RatVec& x, std::uint64_t Q) {
    if (Q < 1) throw DomainError("residue_table needs Q >= 1");
    std::vector<ResidueEntry> out;
    out.reserve(Q);
    for (std::uint64_t q = 1; q <= Q; ++q) {
        Residue r = nearest_rep(x, BigInt(static_cast<unsigned long>(q)));
        out.push_back({q, std::move(r.rep), std::move(r.norm)});
    }
    return out;
}

std::size_t rank_of(const std::vector<RatVec>& vs) {
    if (vs.empty()) return 0;
    std::vector<RatVec> m = vs;
    const std::size_t cols = m.front().dim();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][c].is_zero()) continue;
            BigRational f = m[r][c] / m[rank][c];
            m[r] -= m[rank] * f;
        }
        ++rank;
    }
    return rank;
}

void RationalLattice::add(const RatVec& v) {
    if (v.dim() != dim_) throw DomainError("lattice generator has the wrong dimension");
    if (dist2_to_span(v).is_zero()) throw DomainError("lattice generator is dependent on the current basis");
    basis_.push_back(v);
    reduce();
}

void RationalLattice::orthogonalize() {
    const std::size_t r = basis_.size();
    star_.assign(r, RatVec(dim_));
    B_.assign(r, BigRational());
    mu_.assign(r, std::vector<BigRational>(r));
    for (std::size_t i = 0; i < r; ++i) {
        star_[i] = basis_[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu_[i][j] = dot(basis_[i], star_[j]) / B_[j];
            star_[i] -= star_[j] * mu_[i][j];
        }
        B_[i] = star_[i].norm2_sq();
    }
}

void RationalLattice::reduce() {
    // textbook LLL with delta = 3/4, Gram-Schmidt recomputed after each change;
    // ranks here are at most 3
    const BigRational delta(BigInt(3), BigInt(4));
    const BigRational half(BigInt(1), BigInt(2));
    orthogonalize();
    std::size_t k = 1;
    while (k < basis_.size()) {
        for (std::size_t j = k; j-- > 0;) {
            if ((mu_[k][j].abs() <= half)) continue;
            BigInt m = (mu_[k][j] + half).floor();
            basis_[k] -= basis_[j] * BigRational(m);
            orthogonalize();
        }
        if (B_[k] >= (delta - mu_[k][k - 1] * mu_[k][k - 1]) * B_[k - 1]) {
            ++k;
        } else {
            std::swap(basis_[k], basis_[k - 1]);
            orthogonalize();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

BigRational RationalLattice::dist2_to_span(const RatVec& y) const {
    BigRational d2 = y.norm2_sq();
    for (std::size_t k = 0; k < star_.size(); ++k) {
        BigRational t = dot(y, star_[k]);
        d2 -= t * t / B_[k];
    }
    return d2;
}

namespace {

long double approx(const BigRational& r) { return r.to_long_double(); }

// integers n with (n - c)^2 <= rem, as [lo, hi]; empty when lo > hi
std::pair<BigInt, BigInt> integer_window(const BigRational& c, const BigRational& rem) {
    const long double s = std::sqrt(std::max(0.0L, approx(rem)));
    const long double cl = approx(c);
    auto fits = [&](const BigInt& n) {
        BigRational t = BigRational(n) - c;
        return t * t <= rem;
    };
    BigInt lo(static_cast<long>(std::floor(cl - s)) - 1);
    while (!fits(lo) && BigRational(lo) <= c) lo += 1;
    while (fits(lo - 1)) lo -= 1;
    BigInt hi(static_cast<long>(std::ceil(cl + s)) + 1);
    while (!fits(hi) && BigRational(hi) >= c) hi -= 1;
    while (fits(hi + 1)) hi += 1;
    return {lo, hi};
}

}  // namespace

bool RationalLattice::in_dirichlet_domain(const RatVec& y) const {
    const std::size_t r = basis_.size();
    if (r == 0) return true;
    // cheap rejections: l = +-b_i
    for (const auto& b : basis_) {
        if (BigRational(2) * dot(y, b).abs() >= b.norm2_sq()) return false;
    }
    std::vector<BigRational> beta(r);
    BigRational R2;
    for (std::size_t k = 0; k < r; ++k) {
        beta[k] = dot(y, star_[k]) / B_[k];
        R2 += B_[k] * beta[k] * beta[k];
    }
    if (R2.is_zero()) return true;

    // Fincke-Pohst: look for n != 0 with |Py - sum n_i b_i|^2 <= R2.
    std::vector<BigInt> n(r);
    bool found = false;
    auto search = [&](auto&& self, std::size_t level, const BigRational& used) -> void {
        BigRational c = beta[level];
        for (std::size_t i = level + 1; i < r; ++i) c -= mu_[i][level] * BigRational(n[i]);
        BigRational rem = (R2 - used) / B_[level];
        if (rem.sign() < 0) return;
        auto [lo, hi] = integer_window(c, rem);
        for (BigInt v = lo; v <= hi && !found; ++v) {
            n[level] = v;
            BigRational t = BigRational(v) - c;
            BigRational next = used + B_[level] * t * t;
            if (level == 0) {
                if (std::any_of(n.begin(), n.end(), [](const BigInt& z) { return z != 0; })) found = true;
            } else {
                self(self, level - 1, next);
            }
        }
    };
    search(search, r - 1, BigRational());
    return !found;
}

LatticeChain greedy_construct(const RatVec& x, std::uint64_t Q) {
    LatticeChain chain;
    chain.d = x.dim();
    chain.Q = Q;
    chain.x = x;
    std::vector<ResidueEntry> table = residue_table(x, Q);
    // zero residues can never join an independent set
    std::erase_if(table, [](const ResidueEntry& e) { return e.y.is_zero(); });

    RationalLattice lattice(x.dim());
    while (chain.k() <= chain.d) {
        std::vector<std::pair<BigRational, std::size_t>> order;
        order.reserve(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) order.emplace_back(lattice.dist2_to_span(table[i].y), i);
        // ties: smallest q, which is table order
        std::stable_sort(order.begin(), order.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        const ResidueEntry* pick = nullptr;
        BigRational pick_d2;
        for (const auto& [d2, i] : order) {
            if (lattice.in_dirichlet_domain(table[i].y)) {
                pick = &table[i];
                pick_d2 = d2;
                break;
            }
        }
        if (!pick) break;
        chain.steps.push_back({pick->q, pick->y, pick->norm, pick_d2});
        // A pick inside the current span would make the chain dependent;
        // verify_claim reports it.
        if (pick_d2.is_zero()) break;
        lattice.add(pick->y);
    }
    return chain;
}

ClaimReport verify_claim(const LatticeChain& chain) {
    ClaimReport rep;
    std::vector<RatVec> ys;
    for (const auto& s : chain.steps) ys.push_back(s.y);
    rep.independent = rank_of(ys) == ys.size();
    if (!rep.independent || chain.k() > chain.d)
        throw InvariantViolation("CLAIM VIOLATION", "chain of length " + std::to_string(chain.k()) +
                                                        " is not linearly independent for x=" + chain.x.str() +
                                                        ", Q=" + std::to_string(chain.Q));
    rep.product = BigRational(1);
    rep.decay_ok = rep.perp_ok = rep.radius_ok = true;
    const BigRational three_quarters(BigInt(3), BigInt(4));
    BigRational factor(1);
    for (std::size_t j = 0; j < chain.k(); ++j) {
        const ChainStep& s = chain.steps[j];
        rep.product *= s.r;
        if (s.perp_dist2 < factor * s.r * s.r) rep.decay_ok = false;
        if (s.perp_dist2 > s.y.norm2_sq()) rep.perp_ok = false;
        if (s.r > BigRational(BigInt(1), BigInt(2))) rep.radius_ok = false;
        factor *= three_quarters;
    }
    rep.ratio = rep.product * BigRational(BigInt(static_cast<unsigned long>(chain.Q)));
    return rep;
}

}  // namespace dlab
