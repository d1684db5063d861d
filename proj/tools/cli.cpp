#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dlab/sampling.hpp"
#include "json_report.hpp"

namespace dlab::cli {

namespace {

using report::Json;

constexpr const char* kCsvVersion = "# dirichlet-lab v1";

std::uint64_t default_q_cap(std::size_t d) {
    switch (d) {
        case 1: return 1000000;
        case 2: return 10000;
        default: return 1000;
    }
}

void check_q_cap(std::uint64_t Q, std::size_t d, std::uint64_t cap_override) {
    const std::uint64_t cap = cap_override ? cap_override : default_q_cap(d);
    if (Q > cap)
        throw HorizonError("Q = " + std::to_string(Q) + " exceeds the cap " + std::to_string(cap) + " for d = " +
                           std::to_string(d) + " (raise it with --max-Q)");
}

std::vector<BigRational> rational_range(const std::string& lo_s, const std::string& hi_s, const std::string& step_s) {
    const BigRational lo = BigRational::parse(lo_s), hi = BigRational::parse(hi_s), step = BigRational::parse(step_s);
    if (step.sign() <= 0) throw DomainError("grid step must be positive");
    if (hi < lo) throw DomainError("grid max below grid min");
    std::vector<BigRational> out;
    for (BigRational v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

std::vector<std::uint64_t> parse_q_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        BigRational v = BigRational::parse(item);
        if (!v.is_integer() || v.sign() <= 0) throw DomainError("Q values must be positive integers: '" + item + "'");
        out.push_back(to_ulong_checked(v.num(), "Q"));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw DomainError("empty Q list");
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + path + "'");
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- phase -----------------------------------------------------------------

struct PhaseOptions {
    std::size_t d = 1;
    std::string a_min = "0", a_max = "1", a_step = "1/4";
    std::string A_min = "1/2", A_max = "2", A_step = "1/4";
    std::string q_list;
    std::uint64_t q_max = 0;
    std::size_t samples = 20;
    std::uint64_t seed = 0;
    std::uint64_t den_cap = 10000;
    unsigned jobs = 1;
    std::string format = "csv";
    std::string out;
    std::uint64_t max_q = 0;
};

struct PhaseRow {
    BigRational a, A;
    std::uint64_t Q = 0;
    PowerProduct witness, sample;
};

std::vector<PhaseRow> phase_cell(const PhaseOptions& o, const BigRational& a, const std::vector<BigRational>& As,
                                 const std::vector<std::uint64_t>& Qs, const std::vector<RatVec>& points) {
    const BigRational a_w = std::clamp(a, BigRational(0), BigRational(1));
    // D at every Q of the grid for each sample point, one scan per point
    std::vector<std::vector<PrefixMinimum>> sample_mins;
    for (const auto& x : points) sample_mins.push_back(prefix_minima(x, a, Qs));
    std::vector<PrefixMinimum> witness_mins;
    for (std::uint64_t Q : Qs) {
        WitnessPoint w = build_witness(static_cast<unsigned>(o.d), a_w, Q);
        witness_mins.push_back(prefix_minima(w.x, a, {Q}).front());
    }
    std::vector<PhaseRow> rows;
    for (const auto& A : As) {
        const ExponentPair e{a, A};
        for (std::size_t k = 0; k < Qs.size(); ++k) {
            PhaseRow row{a, A, Qs[k], quotient_value(witness_mins[k], e), PowerProduct()};
            for (std::size_t i = 0; i < points.size(); ++i) {
                PowerProduct v = quotient_value(sample_mins[i][k], e);
                if (i == 0 || compare(v, row.sample) > 0) row.sample = v;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string run_phase(const PhaseOptions& o) {
    if (o.d < 1) throw DomainError("d must be >= 1");
    const auto as = rational_range(o.a_min, o.a_max, o.a_step);
    const auto As = rational_range(o.A_min, o.A_max, o.A_step);
    std::vector<std::uint64_t> Qs;
    if (!o.q_list.empty()) {
        Qs = parse_q_list(o.q_list);
    } else {
        const std::uint64_t top = o.q_max ? o.q_max : std::min<std::uint64_t>(default_q_cap(o.d), 1024);
        Qs = power_grid(2, 1, 63, top);
    }
    for (auto Q : Qs) {
        if (Q < 2) throw DomainError("phase needs Q >= 2 (the extremal point is defined from Q = 2)");
        check_q_cap(Q, o.d, o.max_q);
    }
    const auto points = random_points(o.seed, o.samples, o.d, o.den_cap);

    std::vector<std::vector<PhaseRow>> cells(as.size());
    std::vector<std::exception_ptr> errors(as.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < as.size(); i = next++) {
            try {
                cells[i] = phase_cell(o, as[i], As, Qs, points);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(as.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    // cells are indexed by a, rows inside by (A, Q): already the output order
    if (o.format == "json") {
        Json rows = Json::array();
        for (const auto& cell : cells)
            for (const auto& r : cell)
                rows.push_back(Json{{"a", r.a.str()},
                                    {"A", r.A.str()},
                                    {"Q", r.Q},
                                    {"supD_witness", report::exact(r.witness)},
                                    {"supD_sample", report::exact(r.sample)}});
        return dump(Json{{"schema", "dirichlet-lab v1"}, {"d", o.d}, {"seed", o.seed}, {"rows", rows}});
    }
    if (o.format != "csv") throw DomainError("format must be csv or json");
    std::ostringstream csv;
    csv << kCsvVersion << "\n";
    csv << "a,A,Q,supD_witness,supD_sample,supD_witness_exact,supD_sample_exact\n";
    for (const auto& cell : cells)
        for (const auto& r : cell)
            csv << r.a.str() << ',' << r.A.str() << ',' << r.Q << ',' << r.witness.decimal(12) << ','
                << r.sample.decimal(12) << ',' << r.witness.str() << ',' << r.sample.str() << "\n";
    return csv.str();
}

// ---- cf ----------------------------------------------------------------------

struct CfOptions {
    std::string quotients, rule, rational;
    std::size_t n = 10;
    bool exact = false;
    std::string op = "convergents";
    std::size_t index = 0;
    std::string p, q;
    std::string c = "3", K = "1";
    std::size_t digit_cap = kDefaultDigitCap;
};

ContinuedFraction cf_input(const CfOptions& o) {
    const int given = !o.quotients.empty() + !o.rule.empty() + !o.rational.empty();
    if (given != 1) throw DomainError("give exactly one of --quotients, --rule, --rational");
    if (!o.rational.empty()) return expand_rational(BigRational::parse(o.rational));
    if (!o.rule.empty()) return generate_cf(CfRule::parse(o.rule), o.n, o.digit_cap);
    return ContinuedFraction::parse(o.quotients, o.exact ? CfKind::exact_rational : CfKind::prefix);
}

std::string run_cf(const CfOptions& o) {
    const ContinuedFraction cf = cf_input(o);
    Json j{{"cf", cf.str()}, {"kind", cf.kind == CfKind::exact_rational ? "exact" : "prefix"}};
    const ConvergentTable table = convergents(cf);
    if (o.op == "convergents") {
        j["convergents"] = report::to_json(table);
    } else if (o.op == "intermediate") {
        Json list = Json::array();
        for (const auto& f : intermediate_fractions(table, o.index))
            list.push_back(Json{{"r", f.r.get_str()}, {"value", BigRational(f.p, f.q).str()}});
        j["index"] = o.index;
        j["intermediate"] = list;
    } else if (o.op == "bracket") {
        Bracket b = bracket(cf);
        j["lo"] = report::exact(b.lo);
        j["hi"] = report::exact(b.hi);
        j["exact"] = b.exact();
    } else if (o.op == "lemma") {
        if (o.p.empty() || o.q.empty()) throw DomainError("lemma needs --p and --q");
        BigRational p = BigRational::parse(o.p), q = BigRational::parse(o.q);
        if (!p.is_integer() || !q.is_integer()) throw DomainError("--p and --q must be integers");
        LemmaWitness w = check_best_approx_lemma(cf, p.num(), q.num(), table.size());
        j["fraction"] = BigRational(p.num(), q.num()).str();
        j["witness_n"] = w.n;
        j["gap"] = report::exact(w.gap);
        j["dist_lower"] = report::exact(w.dist_lower);
    } else if (o.op == "growth") {
        j["c"] = o.c;
        j["K"] = o.K;
        j["growth"] = report::to_json(psi_growth_test(table, BigRational::parse(o.c), BigRational::parse(o.K)));
    } else {
        throw DomainError("unknown --op '" + o.op + "' (convergents, intermediate, bracket, lemma, growth)");
    }
    return dump(j);
}

// ---- duality -----------------------------------------------------------------

std::string pow2(long k) { return pow(BigRational(2), k).str(); }

struct DualityOptions {
    std::string a, A;
    std::string rule;
    std::size_t n = 60;
    std::string alpha, C = "2";
    bool sweep = false;
    long max_log2 = 10;
};

std::string run_duality(const DualityOptions& o) {
    const DualityParams params = duality_params(BigRational::parse(o.a), BigRational::parse(o.A));
    Json j{{"params", report::to_json(params)}};
    if (!o.rule.empty()) {
        ContinuedFraction cf;
        try {
            cf = generate_cf(CfRule::parse(o.rule), o.n);
        } catch (const CfHorizonError& e) {
            cf = e.partial();
        }
        CfQuotientEngine engine(cf, ExponentPair{params.a, params.A});
        j["cf"] = cf.str();
        j["rows"] = engine.table().size();
        j["max_Q"] = engine.max_Q().get_str();
        if (!o.alpha.empty()) {
            const BigRational alpha = BigRational::parse(o.alpha), C = BigRational::parse(o.C);
            j["alpha"] = alpha.str();
            j["C"] = C.str();
            j["growth_bound"] = report::to_json(growth_bound_check(engine.table(), params, alpha));
            const DProfile prof = d_profile(engine);
            j["implication_i"] = report::to_json(test_implication_i(prof, engine.table(), params, alpha, C));
            j["implication_ii"] = report::to_json(test_implication_ii(prof, engine.table(), params, alpha, C));
        }
    }
    if (o.sweep) {
        std::vector<BigRational> alphas;
        for (int k = -6; k <= 2; ++k)
            alphas.push_back(pow(BigRational(2), k));
        SweepOutcome s = sweep_C(standard_battery(), {params}, alphas, o.max_log2);
        Json per = Json::array();
        for (std::size_t k = 0; k < s.violations.size(); ++k)
            per.push_back(Json{{"C", pow2(static_cast<long>(k))},
                               {"violations", s.violations[k]},
                               {"undecided", s.undecided[k]}});
        j["sweep"] = Json{{"tests_per_C", s.tests_per_C}, {"per_C", per}};
        j["sweep"]["least_C"] =
            s.least_log2_C ? Json(pow2(*s.least_log2_C)) : Json(nullptr);
    }
    return dump(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact experiments on two-parameter Dirichlet approximation"};
    app.require_subcommand(1);
    std::function<std::string()> action;
    std::string out_path;

    // fd
    auto* fd = app.add_subcommand("fd", "critical boundary f_d(a)");
    std::size_t fd_d = 1;
    std::string fd_a;
    bool fd_json = false;
    fd->add_option("--d", fd_d, "dimension")->required();
    fd->add_option("--a", fd_a, "exponent a (rational)")->required();
    fd->add_flag("--json", fd_json, "JSON output");
    fd->callback([&] {
        action = [&] {
            BoundaryValue v = f_d(static_cast<unsigned>(fd_d), BigRational::parse(fd_a));
            if (fd_json)
                return dump(Json{{"d", v.d}, {"a", v.a.str()}, {"value", report::exact(v.value)},
                                 {"segment", to_string(v.segment)}});
            return v.value.str() + " " + v.value.decimal(12) + "\n";
        };
    });

    // witness
    auto* wit = app.add_subcommand("witness", "extremal point x = (1/Q_1, ..., 1/Q_d)");
    std::size_t w_d = 1;
    std::string w_a;
    std::uint64_t w_Q = 0, w_cap = 0;
    bool w_verify = false;
    wit->add_option("--d", w_d)->required();
    wit->add_option("--a", w_a)->required();
    wit->add_option("--Q", w_Q)->required();
    wit->add_flag("--verify", w_verify, "measure epsilon and check the band floors");
    wit->add_option("--max-Q", w_cap, "override the default Q cap");
    wit->add_option("--out", out_path);
    wit->callback([&] {
        action = [&] {
            check_q_cap(w_Q, w_d, w_cap);
            WitnessPoint w = build_witness(static_cast<unsigned>(w_d), BigRational::parse(w_a), w_Q);
            Json j = report::to_json(w);
            if (w_verify) {
                Json r = report::to_json(verify_witness_bound(w));
                for (auto& [k, v] : r.items()) j[k] = v;
            }
            return dump(j);
        };
    });

    // phase
    auto* ph = app.add_subcommand("phase", "sample suprema of D over an (a, A, Q) grid");
    PhaseOptions po;
    ph->add_option("--d", po.d);
    ph->add_option("--a-min", po.a_min);
    ph->add_option("--a-max", po.a_max);
    ph->add_option("--a-step", po.a_step);
    ph->add_option("--A-min", po.A_min);
    ph->add_option("--A-max", po.A_max);
    ph->add_option("--A-step", po.A_step);
    ph->add_option("--Q", po.q_list, "comma-separated Q values (default: powers of two)");
    ph->add_option("--Q-max", po.q_max, "top of the default power-of-two grid");
    ph->add_option("--samples", po.samples);
    ph->add_option("--seed", po.seed);
    ph->add_option("--den-cap", po.den_cap, "largest denominator of random sample coordinates");
    ph->add_option("--jobs", po.jobs);
    ph->add_option("--format", po.format)->check(CLI::IsMember({"csv", "json"}));
    ph->add_option("--max-Q", po.max_q, "override the default Q cap");
    ph->add_option("--out", out_path);
    ph->callback([&] { action = [&] { return run_phase(po); }; });

    // dirichlet
    auto* di = app.add_subcommand("dirichlet", "Dirichlet witness, quotient D and approximability verdict");
    std::string di_x, di_a = "1", di_A = "1", di_kappa;
    std::uint64_t di_Q = 0, di_Q0 = 1, di_cap = 0;
    di->add_option("--x", di_x)->required();
    di->add_option("--Q", di_Q)->required();
    di->add_option("--a", di_a);
    di->add_option("--A", di_A);
    di->add_option("--kappa", di_kappa, "also decide (kappa Psi, Q0)-approximability up to Q");
    di->add_option("--Q0", di_Q0);
    di->add_option("--max-Q", di_cap);
    di->add_option("--out", out_path);
    di->callback([&] {
        action = [&] {
            const RatVec x = RatVec::parse(di_x);
            check_q_cap(di_Q, x.dim(), di_cap);
            const ExponentPair e{BigRational::parse(di_a), BigRational::parse(di_A)};
            Json j{{"x", x.str()}, {"Q", di_Q}};
            j["dirichlet"] = report::to_json(check_dirichlet(x, di_Q));
            j["quotient"] = report::to_json(dirichlet_quotient(x, di_Q, e));
            if (!di_kappa.empty())
                j["approximability"] = report::to_json(is_approximable(x, e, BigRational::parse(di_kappa), di_Q0, di_Q));
            return dump(j);
        };
    });

    // lattice
    auto* la = app.add_subcommand("lattice", "greedy independent residue chain");
    std::string la_x;
    std::uint64_t la_Q = 0, la_cap = 0;
    la->add_option("--x", la_x)->required();
    la->add_option("--Q", la_Q)->required();
    la->add_option("--max-Q", la_cap);
    la->add_option("--out", out_path);
    la->callback([&] {
        action = [&] {
            const RatVec x = RatVec::parse(la_x);
            check_q_cap(la_Q, x.dim(), la_cap);
            LatticeChain chain = greedy_construct(x, la_Q);
            Json j = report::to_json(chain);
            Json c = report::to_json(verify_claim(chain));
            for (auto& [k, v] : c.items()) j[k] = v;
            return dump(j);
        };
    });

    // cf
    auto* cf = app.add_subcommand("cf", "continued fractions");
    CfOptions co;
    cf->add_option("--quotients", co.quotients, "\"[a0;w1,w2,...]\"");
    cf->add_option("--rule", co.rule, "golden, constant:K or power:M");
    cf->add_option("--rational", co.rational, "expand p/q");
    cf->add_option("--n", co.n, "number of partial quotients for --rule");
    cf->add_flag("--exact", co.exact, "--quotients is a whole expansion, not a prefix");
    cf->add_option("--op", co.op)->check(CLI::IsMember({"convergents", "intermediate", "bracket", "lemma", "growth"}));
    cf->add_option("--index", co.index);
    cf->add_option("--p", co.p);
    cf->add_option("--q", co.q);
    cf->add_option("--c", co.c);
    cf->add_option("--K", co.K);
    cf->add_option("--digit-cap", co.digit_cap);
    cf->add_option("--out", out_path);
    cf->callback([&] { action = [&] { return run_cf(co); }; });

    // duality
    auto* du = app.add_subcommand("duality", "exponents b, c and finite-horizon implication tests");
    DualityOptions dop;
    du->add_option("--a", dop.a)->required();
    du->add_option("--A", dop.A)->required();
    du->add_option("--rule", dop.rule, "test number: golden, constant:K, power:M");
    du->add_option("--n", dop.n, "partial quotients of the test number");
    du->add_option("--alpha", dop.alpha);
    du->add_option("--C", dop.C);
    du->add_flag("--sweep", dop.sweep, "least C = 2^k with no violation over the standard battery");
    du->add_option("--max-log2-C", dop.max_log2);
    du->add_option("--out", out_path);
    du->callback([&] { action = [&] { return run_duality(dop); }; });

    // transport
    auto* tr = app.add_subcommand("transport", "transport non-approximability along x -> s x + shift");
    std::string t_x, t_s = "1", t_shift, t_a = "0", t_A = "1", t_kappa;
    std::uint64_t t_Q0 = 1, t_h = 1000;
    tr->add_option("--x", t_x)->required();
    tr->add_option("--scale", t_s);
    tr->add_option("--shift", t_shift, "default 0");
    tr->add_option("--a", t_a);
    tr->add_option("--A", t_A);
    tr->add_option("--kappa", t_kappa)->required();
    tr->add_option("--Q0", t_Q0);
    tr->add_option("--horizon", t_h);
    tr->add_option("--out", out_path);
    tr->callback([&] {
        action = [&] {
            const RatVec x = RatVec::parse(t_x);
            const RatVec shift = t_shift.empty() ? RatVec(x.dim()) : RatVec::parse(t_shift);
            AffineAutomorphism phi = make_affine(BigRational::parse(t_s), shift);
            const ExponentPair e{BigRational::parse(t_a), BigRational::parse(t_A)};
            Json j{{"x", x.str()}, {"automorphism", report::to_json(phi)}};
            Json r = report::to_json(transport_check(x, phi, e, BigRational::parse(t_kappa), t_Q0, t_h));
            for (auto& [k, v] : r.items()) j[k] = v;
            return dump(j);
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }

    try {
        emit(action(), out_path, out);
        return kOk;
    } catch (const InvariantViolation& e) {
        err << e.what() << "\n";
        return kInvariant;
    } catch (const HorizonError& e) {
        err << "horizon: " << e.what() << "\n";
        return kHorizon;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomain;
    }
}

}  // namespace dlab::cli
