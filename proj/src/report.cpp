#include "otk/report.hpp"

#include <cstdio>

namespace otk {

Json json_poly(const ZPoly& p) {
    Json arr = Json::array();
    for (int i = 0; i <= p.degree(); ++i) {
        const Int& c = p.coeff(i);
        if (c.fits_slong_p())
            arr.push_back(c.get_si());
        else
            arr.push_back(to_string(c));
    }
    if (p.is_zero()) arr.push_back(0);
    return arr;
}

Json json_qpoly(const QPoly& p) {
    Json arr = Json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(to_string(p.coeff(i)));
    if (p.is_zero()) arr.push_back("0");
    return arr;
}

Json json_signature(Signature sig) { return Json{{"s", sig.s}, {"t", sig.t}}; }

Json json_interval(const QInterval& iv) {
    return Json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}};
}

Json json_galois(const GaloisCertificate& cert) {
    Json witnesses = Json::array();
    for (const auto& w : cert.witnesses) {
        Json roles = Json::array();
        for (const auto& r : w.roles) roles.push_back(r);
        witnesses.push_back(Json{{"p", w.p}, {"pattern", w.pattern}, {"roles", roles}});
    }
    return Json{
        {"conclusion",
         cert.conclusion == GaloisCertificate::Conclusion::full_symmetric
             ? "full_symmetric"
             : "inconclusive"},
        {"n", cert.n},
        {"prime_budget", cert.prime_budget},
        {"seed", cert.seed},
        {"witnesses", witnesses},
    };
}

Json json_subfield(const SubfieldCertificate& cert) {
    Json cof = Json::array();
    for (const auto& e : cert.cofactor) cof.push_back(json_qpoly(e));
    return Json{
        {"g", json_poly(cert.g)},
        {"g_text", cert.g.to_text()},
        {"generator", json_qpoly(cert.generator)},
        {"quadratic_factor", Json{{"b", json_qpoly(cert.quad_b)},
                                  {"c", json_qpoly(cert.quad_c)}}},
        {"cofactor", cof},
    };
}

Json json_exhaustion(const ExhaustionProof& proof) {
    Json fails = Json::array();
    for (const auto& f : proof.failures) {
        Json pairs = Json::array();
        for (auto& [i, j] : f.real_pairs) pairs.push_back(Json::array({i, j}));
        fails.push_back(
            Json{{"real_pairs", pairs}, {"combo", f.combo}, {"reason", f.reason}});
    }
    return Json{{"matchings_tried", proof.matchings_tried}, {"failures", fails}};
}

Json json_rank_report(const RankReport& report) {
    Json j;
    j["field"] = Json{{"poly", json_poly(report.field)}, {"text", report.field.to_text()}};
    j["signature"] = Json{{"s", report.s}, {"t", report.t}};
    j["degree"] = report.n;
    j["betti1"] = report.b1;
    j["dim_C"] = report.dim_c;
    if (report.rank)
        j["lck_rank"] = *report.rank;
    else
        j["lck_rank"] = nullptr;
    switch (report.kase) {
        case RankReport::Case::maximal: j["case"] = "maximal"; break;
        case RankReport::Case::half: j["case"] = "half"; break;
        case RankReport::Case::undecided: j["case"] = "undecided"; break;
    }
    Json cert;
    switch (report.cert_kind) {
        case RankReport::CertKind::odd_degree:
            cert["kind"] = "odd_degree";
            cert["data"] = Json{{"n", report.n}};
            break;
        case RankReport::CertKind::no_proper_subfield:
            cert["kind"] = "no_proper_subfield";
            cert["data"] = json_galois(*report.galois);
            break;
        case RankReport::CertKind::matching_exhausted:
            cert["kind"] = "matching_exhausted";
            cert["data"] = json_exhaustion(*report.exhaustion);
            break;
        case RankReport::CertKind::subfield:
            cert["kind"] = "subfield";
            cert["data"] = json_subfield(*report.subfield);
            break;
        case RankReport::CertKind::none:
            cert["kind"] = "none";
            cert["data"] = Json{{"reason", report.undecided_reason}};
            break;
    }
    j["certificate"] = cert;
    Json witnesses = Json::array();
    if (report.galois) {
        for (const auto& w : report.galois->witnesses) {
            Json roles = Json::array();
            for (const auto& r : w.roles) roles.push_back(r);
            witnesses.push_back(
                Json{{"p", w.p}, {"pattern", w.pattern}, {"roles", roles}});
        }
    }
    j["witnesses"] = witnesses;
    if (report.crosscheck_ran) {
        j["unit_crosscheck"] =
            Json{{"found_unimodular_unit", report.crosscheck_found_unimodular_unit},
                 {"consistent", report.crosscheck_consistent}};
    }
    return j;
}

Json json_unit(const UnitElement& u) {
    return Json{{"coords", u.element.to_text()},
                {"norm", u.norm_sign},
                {"totally_positive", u.totally_positive}};
}

std::string fixed_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json json_geometry(const GeometrySuiteReport& report) {
    return Json{
        {"samples", report.samples},
        {"seed", report.seed},
        {"tolerance", fixed_digits(report.tol)},
        {"tolerance_tight", fixed_digits(report.tol_tight)},
        {"hessian_positive_definite", report.hessian_pd},
        {"units_tested", report.units_tested},
        {"homothety_worst", fixed_digits(report.homothety_worst)},
        {"homothety_pass", report.homothety_pass},
        {"translation_invariance_worst", fixed_digits(report.translation_worst)},
        {"translation_invariance_pass", report.translation_pass},
        {"group_law_worst", fixed_digits(report.group_worst)},
        {"group_law_pass", report.group_pass},
        {"fixed_point_residual", fixed_digits(report.fixed_point_residual)},
        {"fixed_point_pass", report.fixed_point_pass},
        {"log_constancy_worst", fixed_digits(report.log_constancy_worst)},
        {"log_constancy_pass", report.log_constancy_pass},
        {"lattice_rank", report.lattice},
        {"lattice_pass", report.lattice_pass},
        {"dilation_rank_exhibited", report.dilation_rank},
        {"dilation_rank_certified", report.dilation_certified},
        {"pass", report.pass()},
    };
}

std::string render(const Json& j, bool pretty) {
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

}  // namespace otk
