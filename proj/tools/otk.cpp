#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "otk/report.hpp"

using namespace otk;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitGate = 3;
constexpr int kExitUndecided = 4;
constexpr int kExitConstruct = 5;
constexpr int kExitGeometry = 6;

struct Output {
    bool pretty = false;
    void emit(const Json& j) const { std::cout << render(j, pretty); }
};

int fail(const Output& out, int code, const std::string& command,
         const std::string& message, Json extra = Json::object()) {
    Json j;
    j["command"] = command;
    j["error"] = message;
    for (auto& [k, v] : extra.items()) j[k] = v;
    out.emit(j);
    std::cerr << "error: " << message << "\n";
    return code;
}

struct GateFailure {
    std::string message;
};

FieldPtr open_field(const ZPoly& poly, GateFailure& why) {
    try {
        return NumberField::create(poly);
    } catch (const Error& e) {
        why.message = e.what();
        return nullptr;
    }
}

Json units_section(const FieldPtr& F, long bound) {
    Json out;
    out["bound"] = bound;
    auto units = unit_search_bounded(F, bound);
    Json list = Json::array();
    bool complex_place = F->sig().t == 1;
    for (const auto& u : units) {
        Json ju = json_unit(u);
        if (complex_place && !u.element.is_rational()) {
            auto um = is_unimodular_at_complex_place(u);
            ju["unimodular_at_complex_place"] = um.unimodular;
            ju["min_poly"] = json_qpoly(um.minimal_polynomial);
            ju["reciprocal_min_poly"] = um.reciprocal;
            if (u.totally_positive) {
                auto d = dilation_factor(u, Rat(1, Int(1) << 40));
                ju["dilation_factor"] = fixed_digits(d.value.mid().get_d());
            }
        }
        list.push_back(ju);
    }
    out["count"] = units.size();
    out["units"] = list;
    auto pr = positive_unit_rank(F, bound);
    out["positive_unit_rank"] =
        Json{{"rank", pr.rank}, {"exhibited", pr.exhibited}};
    return out;
}

bool recheck_report(const FieldPtr& F, const RankReport& report) {
    if (!recheck_irreducibility(F->defining(), F->irreducibility())) return false;
    if (report.galois && !recheck_galois(F->defining(), *report.galois)) return false;
    if (report.subfield && !verify_subfield_certificate(F, *report.subfield))
        return false;
    return true;
}

int run_analyze(const Output& out, const std::string& poly_text, long prime_budget,
                long units_bound, bool verify_geometry, int samples, uint64_t seed,
                double tol, bool recheck) {
    ZPoly poly;
    try {
        poly = parse_zpoly(poly_text);
    } catch (const Error& e) {
        return fail(out, kExitParse, "analyze", e.what());
    }
    GateFailure gate;
    FieldPtr F = open_field(poly, gate);
    if (!F) return fail(out, kExitGate, "analyze", gate.message);
    const auto sig = F->sig();
    if (sig.t != 1 || sig.s < 1) {
        return fail(out, kExitGate, "analyze",
                    "signature gate requires (s, 1) with s >= 1",
                    Json{{"signature", json_signature(sig)}});
    }

    RankReport report;
    try {
        report = classify(F, ClassifyOptions{prime_budget, units_bound});
    } catch (const Error& e) {
        return fail(out, kExitGate, "analyze", e.what());
    }

    Json j;
    j["command"] = "analyze";
    j["inputs"] = Json{{"poly", poly_text},
                       {"prime_budget", prime_budget},
                       {"units_bound", units_bound},
                       {"seed", seed}};
    Json body = json_rank_report(report);
    for (auto& [k, v] : body.items()) j[k] = v;
    j["irreducibility"] = F->irreducibility().describe();

    if (units_bound > 0) j["units"] = units_section(F, units_bound);

    int exit_code = 0;
    if (report.kase == RankReport::Case::undecided) exit_code = kExitUndecided;

    if (verify_geometry && exit_code == 0) {
        auto geo = run_geometry_suite(F, samples, seed, tol, 1e-12);
        j["geometry"] = json_geometry(geo);
        if (!geo.pass()) {
            std::cerr << "geometry check failed: " << geo.worst_offender() << "\n";
            exit_code = kExitGeometry;
        }
    }
    if (recheck) {
        bool ok = recheck_report(F, report);
        j["recheck"] = ok ? "pass" : "fail";
        if (!ok) exit_code = 1;
    }
    j["seed"] = seed;
    out.emit(j);
    return exit_code;
}

Json analysis_or_gate(const ZPoly& poly, long prime_budget, bool recheck) {
    GateFailure gate;
    FieldPtr F = open_field(poly, gate);
    if (!F) return Json{{"error", gate.message}};
    const auto sig = F->sig();
    if (sig.t != 1 || sig.s < 1)
        return Json{{"error", "signature gate requires (s, 1) with s >= 1"},
                    {"signature", json_signature(sig)}};
    try {
        RankReport report = classify(F, ClassifyOptions{prime_budget, 0});
        Json j = json_rank_report(report);
        if (recheck) j["recheck"] = recheck_report(F, report) ? "pass" : "fail";
        return j;
    } catch (const Undecided& e) {
        return Json{{"error", e.what()}, {"case", "undecided"}};
    } catch (const Error& e) {
        return Json{{"error", e.what()}};
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of Oeljeklaus-Toma manifolds from number fields"};
    app.require_subcommand(1);

    Output out;
    bool pretty = false, json_flag = false, recheck = false;
    uint64_t seed = 20260809;
    app.add_flag("--pretty", pretty, "indent the JSON report");
    app.add_flag("--json", json_flag, "compact JSON (default)");
    app.add_flag("--recheck", recheck, "re-run the exact verification steps");
    app.add_option("--seed", seed, "seed for randomized steps and sampling");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "classify the LCK rank of M(F, U_F^+)");
    analyze->fallthrough();
    std::string poly_text;
    long prime_budget = 200, units_bound = 0;
    bool verify_geometry = false;
    int samples = 1000;
    double tol = 1e-9;
    analyze->add_option("poly", poly_text, "defining polynomial, e.g. \"x^4-2\" or [-2,0,0,0,1]")
        ->required();
    analyze->add_option("--prime-budget", prime_budget, "prime budget for S_n certification");
    analyze->add_option("--units-bound", units_bound, "coefficient box for the unit search");
    analyze->add_flag("--verify-geometry", verify_geometry, "run the geometric checks");
    analyze->add_option("--samples", samples, "sample count for the geometric checks");
    analyze->add_option("--tol", tol, "tolerance for the geometric checks");

    // construct
    auto* construct = app.add_subcommand("construct", "build the example families");
    construct->fallthrough();
    construct->require_subcommand(1);
    auto* maximal = construct->add_subcommand("maximal", "-15 f1 + 10 f2 + 6 f3 + 30 g");
    maximal->fallthrough();
    int max_n = 2;
    std::string f1t, f2t, f3t, gt = "0";
    bool search_g = false;
    long g_bound = 0;
    maximal->add_option("--n", max_n, "half the degree")->required();
    maximal->add_option("--f1", f1t, "irreducible mod 2")->required();
    maximal->add_option("--f2", f2t, "linear times irreducible mod 3")->required();
    maximal->add_option("--f3", f3t, "quadratic times two odd mod 5")->required();
    maximal->add_option("--g", gt, "free term (default 0)");
    maximal->add_flag("--search-g", search_g, "scan g for signature (2n-2, 1)");
    maximal->add_option("--g-bound", g_bound, "coefficient box for the g scan");

    auto* half = construct->add_subcommand("half", "E(sqrt(alpha - q)) with rank b1/2");
    half->fallthrough();
    std::string subfield_text, q_text = "auto";
    half->add_option("--subfield", subfield_text, "totally real defining polynomial")
        ->required();
    half->add_option("--q", q_text, "rational shift or 'auto'");

    auto* totally_real = construct->add_subcommand("totally-real",
                                                   "degree-n field from Gaussian periods");
    totally_real->fallthrough();
    int tr_n = 2;
    totally_real->add_option("--n", tr_n, "degree")->required();

    // verify-geometry
    auto* verify = app.add_subcommand("verify-geometry", "potential / action checks");
    verify->fallthrough();
    std::string vg_poly;
    int vg_samples = 1000;
    double vg_tol = 1e-9, vg_tol_tight = 1e-12;
    verify->add_option("poly", vg_poly, "defining polynomial")->required();
    verify->add_option("--samples", vg_samples, "sample count");
    verify->add_option("--tol", vg_tol, "tolerance for potential identities");
    verify->add_option("--tol-tight", vg_tol_tight, "tolerance for algebraic identities");

    // units
    auto* units_cmd = app.add_subcommand("units", "bounded unit search and Dirichlet rank");
    units_cmd->fallthrough();
    std::string u_poly;
    long u_bound = 10;
    units_cmd->add_option("poly", u_poly, "defining polynomial")->required();
    units_cmd->add_option("--bound", u_bound, "coefficient box bound");

    CLI11_PARSE(app, argc, argv);
    out.pretty = pretty;
    auto started = std::chrono::steady_clock::now();
    int code = 0;

    try {
        if (*analyze) {
            code = run_analyze(out, poly_text, prime_budget, units_bound,
                               verify_geometry, samples, seed, tol, recheck);
        } else if (*maximal) {
            try {
                MaximalFamilySpec spec;
                spec.n = max_n;
                spec.f1 = parse_zpoly(f1t);
                spec.f2 = parse_zpoly(f2t);
                spec.f3 = parse_zpoly(f3t);
                spec.g = parse_zpoly(gt);
                Json j;
                j["command"] = "construct";
                j["subcommand"] = "maximal";
                if (search_g) {
                    auto found = search_g_for_signature(spec, g_bound);
                    if (!found) {
                        code = fail(out, kExitConstruct, "construct",
                                    "no g with signature (2n-2, 1) in the box");
                    } else {
                        j["g"] = json_poly(found->g);
                        j["constructed"] = Json{{"poly", json_poly(found->f)},
                                                {"text", found->f.to_text()}};
                        j["analysis"] = analysis_or_gate(found->f, prime_budget, recheck);
                        j["seed"] = seed;
                        out.emit(j);
                    }
                } else {
                    auto built = make_maximal(spec);
                    j["constructed"] = Json{{"poly", json_poly(built.f)},
                                            {"text", built.f.to_text()}};
                    j["witnesses"] = Json::array(
                        {Json{{"p", 2}, {"pattern", built.witness2.degrees}},
                         Json{{"p", 3}, {"pattern", built.witness3.degrees}},
                         Json{{"p", 5}, {"pattern", built.witness5.degrees}}});
                    j["analysis"] = analysis_or_gate(built.f, prime_budget, recheck);
                    j["seed"] = seed;
                    out.emit(j);
                }
            } catch (const Error& e) {
                code = fail(out, kExitConstruct, "construct", e.what());
            }
        } else if (*half) {
            try {
                ZPoly E_poly = parse_zpoly(subfield_text);
                std::optional<Rat> q;
                if (q_text != "auto") q = parse_rat(q_text);
                auto built = make_half(E_poly, q);
                Json j;
                j["command"] = "construct";
                j["subcommand"] = "half";
                j["constructed"] = Json{{"poly", json_poly(built.f)},
                                        {"text", built.f.to_text()}};
                j["q"] = to_string(built.q);
                j["generator_scale"] = to_string(built.scale);
                j["scaled_subfield"] = json_poly(built.scaled_subfield);
                j["analysis"] = analysis_or_gate(built.f, prime_budget, recheck);
                j["seed"] = seed;
                out.emit(j);
            } catch (const Error& e) {
                code = fail(out, kExitConstruct, "construct", e.what());
            }
        } else if (*totally_real) {
            try {
                ZPoly built = make_totally_real(tr_n);
                Json j;
                j["command"] = "construct";
                j["subcommand"] = "totally-real";
                j["constructed"] =
                    Json{{"poly", json_poly(built)}, {"text", built.to_text()}};
                j["degree"] = built.degree();
                j["totally_real"] = true;
                j["seed"] = seed;
                out.emit(j);
            } catch (const Error& e) {
                code = fail(out, kExitConstruct, "construct", e.what());
            }
        } else if (*verify) {
            ZPoly poly;
            try {
                poly = parse_zpoly(vg_poly);
            } catch (const Error& e) {
                return fail(out, kExitParse, "verify-geometry", e.what());
            }
            GateFailure gate;
            FieldPtr F = open_field(poly, gate);
            if (!F) return fail(out, kExitGate, "verify-geometry", gate.message);
            const auto sig = F->sig();
            if (sig.t != 1 || sig.s < 1)
                return fail(out, kExitGate, "verify-geometry",
                            "signature gate requires (s, 1) with s >= 1",
                            Json{{"signature", json_signature(sig)}});
            auto geo = run_geometry_suite(F, vg_samples, seed, vg_tol, vg_tol_tight);
            Json j;
            j["command"] = "verify-geometry";
            j["field"] = Json{{"poly", json_poly(poly)}, {"text", poly.to_text()}};
            j["signature"] = json_signature(sig);
            j["geometry"] = json_geometry(geo);
            j["seed"] = seed;
            out.emit(j);
            if (!geo.pass()) {
                std::cerr << "geometry check failed: " << geo.worst_offender() << "\n";
                code = kExitGeometry;
            }
        } else if (*units_cmd) {
            ZPoly poly;
            try {
                poly = parse_zpoly(u_poly);
            } catch (const Error& e) {
                return fail(out, kExitParse, "units", e.what());
            }
            GateFailure gate;
            FieldPtr F = open_field(poly, gate);
            if (!F) return fail(out, kExitGate, "units", gate.message);
            if (F->sig().s < 1)
                return fail(out, kExitGate, "units", "unit machinery needs s >= 1",
                            Json{{"signature", json_signature(F->sig())}});
            Json j;
            j["command"] = "units";
            j["field"] = Json{{"poly", json_poly(poly)}, {"text", poly.to_text()}};
            j["signature"] = json_signature(F->sig());
            j["units"] = units_section(F, u_bound);
            j["seed"] = seed;
            out.emit(j);
        }
    } catch (const Undecided& e) {
        return fail(out, kExitUndecided, "otk", e.what());
    } catch (const Error& e) {
        return fail(out, 1, "otk", e.what());
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "total " << elapsed << " ms\n";
    return code;
}
