#include "json_report.hpp"

namespace dlab::report {

Json exact(const BigRational& r) { return Json{{"exact", r.str()}, {"decimal", r.decimal(12)}}; }

Json exact(const PowerProduct& v) { return Json{{"exact", v.str()}, {"decimal", v.decimal(12)}}; }

Json ints(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(z.get_str());
    return a;
}

Json to_json(const ApproximationRecord& r) {
    return Json{{"q", r.q.get_str()}, {"p", ints(r.p)}, {"dist", exact(r.dist)}, {"weighted", exact(r.weighted)}};
}

Json to_json(const QuotientReport& r) {
    return Json{{"Q", r.Q},
                {"a", r.exponents.a.str()},
                {"A", r.exponents.A.str()},
                {"D", exact(r.value)},
                {"minimizer", to_json(r.minimizer)}};
}

Json to_json(const ApproximabilityVerdict& v) {
    Json j{{"Q0", v.Q0}, {"Qmax", v.Qmax}, {"holds", v.holds}};
    j["fails_at"] = v.fails_at ? Json(*v.fails_at) : Json(nullptr);
    j["worst_Q"] = v.worst_Q;
    j["worst_D"] = exact(v.worst_D);
    return j;
}

Json to_json(const WitnessPoint& w) {
    Json alphas = Json::array();
    for (const auto& a : w.alphas) alphas.push_back(a.str());
    return Json{{"d", w.d},     {"a", w.a.str()},     {"A", w.A.str()},         {"Q", w.Q},
                {"alphas", alphas}, {"n", ints(w.n)}, {"Qseq", ints(w.Qseq)}, {"x", w.x.str()}};
}

Json to_json(const WitnessReport& r) {
    Json bands = Json::array();
    for (const auto& b : r.bands) {
        Json jb{{"i", b.i}, {"q_lo", b.q_lo}, {"q_hi", b.q_hi}, {"floor", exact(b.floor)}};
        if (b.argmin_q) {
            jb["argmin_q"] = b.argmin_q;
            jb["band_min"] = exact(b.band_min);
        }
        bands.push_back(std::move(jb));
    }
    return Json{{"epsilon", exact(r.epsilon)}, {"minimizer_q", r.minimizer_q}, {"bands", bands}};
}

Json to_json(const ConvergentTable& t) {
    Json rows = Json::array();
    for (const auto& r : t)
        rows.push_back(Json{{"n", r.n}, {"w", r.w.get_str()}, {"p", r.p.get_str()}, {"q", r.q.get_str()},
                            {"value", BigRational(r.p, r.q).str()}});
    return rows;
}

Json to_json(const LatticeChain& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back(Json{{"q", s.q}, {"y", s.y.str()}, {"r", exact(s.r)}, {"perp_dist2", exact(s.perp_dist2)}});
    return Json{{"d", c.d}, {"Q", c.Q}, {"x", c.x.str()}, {"k", c.k()}, {"steps", steps}};
}

Json to_json(const ClaimReport& r) {
    return Json{{"product", exact(r.product)}, {"ratio", exact(r.ratio)},   {"independent", r.independent},
                {"decay_ok", r.decay_ok},      {"perp_ok", r.perp_ok},     {"radius_ok", r.radius_ok}};
}

Json to_json(const DualityParams& p) {
    return Json{{"a", p.a.str()}, {"A", p.A.str()}, {"b", p.b.str()}, {"c", p.c.str()}, {"regime", to_string(p.regime)}};
}

Json to_json(const GrowthBoundReport& r) {
    Json failing = Json::array();
    for (const auto& row : r.rows)
        if (!row.holds) failing.push_back(row.n);
    Json j{{"rows", r.rows.size()}, {"failing_rows", failing}};
    j["n0"] = r.n0 ? Json(*r.n0) : Json(nullptr);
    j["fails_cofinally"] = r.fails_cofinally();
    return j;
}

Json to_json(const GrowthReport& r) {
    return Json{{"tested", r.tested},
                {"last_third_start", r.last_third_start},
                {"satisfying", r.satisfying},
                {"verdict", r.rich ? "growth-rich" : "growth-poor"}};
}

Json to_json(const ImplicationReport& r) {
    Json j{{"verdict", to_string(r.verdict)}, {"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}};
    j["lhs_witness"] = r.lhs_witness ? Json(*r.lhs_witness) : Json(nullptr);
    j["K"] = exact(r.K);
    j["growth"] = to_json(r.growth);
    return j;
}

Json to_json(const AffineAutomorphism& phi) {
    return Json{{"scale", phi.scale.str()}, {"shift", phi.shift.str()}, {"C1", phi.C1.str()}, {"C2", phi.C2.get_str()}};
}

Json to_json(const TransportReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back(Json{{"Q", s.Q},
                             {"Q_image", s.Q_image.str()},
                             {"D_source", exact(s.D_source)},
                             {"D_image", exact(s.D_image)},
                             {"image_minimizer", s.image_minimizer.str()},
                             {"chain_ok", s.chain_ok},
                             {"image_fails", s.image_fails}});
    return Json{{"kappa_source", exact(r.kappa_source)},
                {"image", r.image.str()},
                {"failing_scales", r.steps.size()},
                {"passed", r.passed},
                {"steps", steps}};
}

}  // namespace dlab::report
