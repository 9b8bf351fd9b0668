#include "otk/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "otk/parallel.hpp"

namespace otk {

EmbeddedElement embed_element(const FieldElement& x) {
    const auto sig = x.field()->sig();
    EmbeddedElement out;
    Rat eps(1, Int(1) << 60);
    for (int i = 0; i < sig.s; ++i)
        out.real_values.push_back(real_embedding_value(x, i, eps).mid().get_d());
    if (sig.t >= 1) {
        CBox v = complex_embedding_value(x, eps);
        out.complex_value = {v.re.mid().get_d(), v.im.mid().get_d()};
    }
    return out;
}

ActionElement make_translation(const FieldElement& a) {
    return ActionElement{ActionElement::Kind::translation, a, embed_element(a)};
}

ActionElement make_rotation(const UnitElement& u) {
    if (!u.totally_positive)
        throw Error("rotation requires a totally positive unit");
    return ActionElement{ActionElement::Kind::rotation, u.element,
                         embed_element(u.element)};
}

double potential(const GeomPoint& p) {
    int s = p.s();
    double phi1 = 1.0;
    for (int j = 0; j < s; ++j) {
        double im = p.z[j].imag();
        if (!(im > 0)) throw Error("point outside H^s");
        phi1 /= 2.0 * im;
    }
    return phi1 + std::norm(p.z[s]);
}

CMatrix hessian(const GeomPoint& p) {
    int s = p.s();
    double phi1 = 1.0;
    for (int j = 0; j < s; ++j) {
        double im = p.z[j].imag();
        if (!(im > 0)) throw Error("point outside H^s");
        phi1 /= 2.0 * im;
    }
    CMatrix H(s + 1, std::vector<std::complex<double>>(s + 1, 0.0));
    for (int k = 0; k < s; ++k) {
        std::complex<double> dk = p.z[k] - std::conj(p.z[k]);  // 2i Im
        for (int l = 0; l < s; ++l) {
            if (l == k) continue;
            std::complex<double> dl = p.z[l] - std::conj(p.z[l]);
            H[k][l] = -phi1 / (dk * dl);
        }
        H[k][k] = -2.0 * phi1 / (dk * dk);
    }
    H[s][s] = 2.0;
    return H;
}

bool is_positive_definite(const CMatrix& H) {
    size_t n = H.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double scale = std::abs(H[i][j]) + std::abs(H[j][i]) + 1.0;
            if (std::abs(H[i][j] - std::conj(H[j][i])) > 1e-9 * scale)
                throw Error("matrix is not Hermitian");
        }
    // Cholesky with positive pivots
    CMatrix L(n, std::vector<std::complex<double>>(n, 0.0));
    for (size_t j = 0; j < n; ++j) {
        std::complex<double> sum = H[j][j];
        for (size_t k = 0; k < j; ++k) sum -= L[j][k] * std::conj(L[j][k]);
        double diag = sum.real();
        if (!(diag > 0)) return false;
        L[j][j] = std::sqrt(diag);
        for (size_t i = j + 1; i < n; ++i) {
            std::complex<double> v = H[i][j];
            for (size_t k = 0; k < j; ++k) v -= L[i][k] * std::conj(L[j][k]);
            L[i][j] = v / L[j][j];
        }
    }
    return true;
}

GeomPoint act(const ActionElement& e, const GeomPoint& p) {
    int s = p.s();
    if (static_cast<int>(e.emb.real_values.size()) != s)
        throw Error("action and point have different signatures");
    GeomPoint out = p;
    if (e.kind == ActionElement::Kind::translation) {
        for (int j = 0; j < s; ++j) out.z[j] += e.emb.real_values[j];
        out.z[s] += e.emb.complex_value;
    } else {
        for (int j = 0; j < s; ++j) out.z[j] *= e.emb.real_values[j];
        out.z[s] *= e.emb.complex_value;
    }
    return out;
}

GeomPoint sample_point(int s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> box(-10.0, 10.0);
    std::uniform_real_distribution<double> logim(std::log(1e-2), std::log(1e2));
    GeomPoint p;
    for (int j = 0; j < s; ++j)
        p.z.emplace_back(box(rng), std::exp(logim(rng)));
    p.z.emplace_back(box(rng), box(rng));
    return p;
}

CheckReport check_homothety(const UnitElement& u,
                            const std::optional<FieldElement>& translation,
                            const std::vector<GeomPoint>& samples, double tol) {
    CheckReport report;
    report.what = "homothety";
    ActionElement rot = make_rotation(u);
    double c = dilation_factor(u, Rat(1, Int(1) << 60)).value.mid().get_d();
    std::optional<ActionElement> tra;
    if (translation) tra = make_translation(*translation);
    for (size_t i = 0; i < samples.size(); ++i) {
        const GeomPoint& z = samples[i];
        double phi = potential(z);
        double rel = std::abs(potential(act(rot, z)) - c * phi) / std::abs(phi);
        if (rel > report.worst) {
            report.worst = rel;
            report.worst_index = i;
        }
        if (tra) {
            CMatrix before = hessian(z);
            CMatrix after = hessian(act(*tra, z));
            for (size_t r = 0; r < before.size(); ++r)
                for (size_t col = 0; col < before.size(); ++col) {
                    double d = std::abs(after[r][col] - before[r][col]) /
                               (1.0 + std::abs(before[r][col]));
                    if (d > report.worst) {
                        report.worst = d;
                        report.worst_index = i;
                    }
                }
        }
    }
    report.pass = report.worst <= tol;
    return report;
}

namespace {

// long-double embedding for the composition checks: units with lopsided
// conjugates produce large intermediate coordinates, and the extra mantissa
// bits keep the algebraic-identity residuals near rounding level
struct EmbeddedL {
    std::vector<long double> real_values;
    std::complex<long double> complex_value;
};

EmbeddedL embed_ld(const FieldElement& x) {
    const auto sig = x.field()->sig();
    EmbeddedL out;
    Rat eps(1, Int(1) << 80);
    for (int i = 0; i < sig.s; ++i)
        out.real_values.push_back(rat_to_ld(real_embedding_value(x, i, eps).mid()));
    if (sig.t >= 1) {
        CBox v = complex_embedding_value(x, eps);
        out.complex_value = {rat_to_ld(v.re.mid()), rat_to_ld(v.im.mid())};
    }
    return out;
}

using PointL = std::vector<std::complex<long double>>;

PointL to_ld(const GeomPoint& p) {
    PointL out;
    for (auto& z : p.z) out.emplace_back(z.real(), z.imag());
    return out;
}

PointL translate(const EmbeddedL& e, const PointL& p) {
    PointL out = p;
    size_t s = p.size() - 1;
    for (size_t j = 0; j < s; ++j) out[j] += e.real_values[j];
    out[s] += e.complex_value;
    return out;
}

PointL rotate(const EmbeddedL& e, const PointL& p) {
    PointL out = p;
    size_t s = p.size() - 1;
    for (size_t j = 0; j < s; ++j) out[j] *= e.real_values[j];
    out[s] *= e.complex_value;
    return out;
}

double distance_ld(const PointL& a, const PointL& b) {
    long double d = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        long double rel = std::abs(a[i] - b[i]) / (1.0L + std::abs(a[i]));
        d = std::max(d, rel);
    }
    return static_cast<double>(d);
}

}  // namespace

CheckReport check_group_law(const FieldElement& a, const FieldElement& b,
                            const UnitElement& u, const UnitElement& v,
                            const std::vector<GeomPoint>& samples, double tol) {
    CheckReport report;
    report.what = "group law";
    if (!u.totally_positive || !v.totally_positive)
        throw Error("group law check needs totally positive units");
    EmbeddedL Ta = embed_ld(a);
    EmbeddedL Tb = embed_ld(b);
    EmbeddedL Ru = embed_ld(u.element);
    EmbeddedL Rv = embed_ld(v.element);
    // (a,u)(b,v) = (a + u b, u v)
    EmbeddedL Tab = embed_ld(a + u.element * b);
    EmbeddedL Ruv = embed_ld(u.element * v.element);
    // [T_a, R_u] = T_{(1-u) a}
    FieldElement one = FieldElement::one(a.field());
    EmbeddedL Tcomm = embed_ld((one - u.element) * a);
    EmbeddedL Tminus = embed_ld(-a);
    EmbeddedL Ruinv = embed_ld(u.element.inverse());

    for (size_t i = 0; i < samples.size(); ++i) {
        PointL z = to_ld(samples[i]);
        PointL lhs = translate(Ta, rotate(Ru, translate(Tb, rotate(Rv, z))));
        PointL rhs = translate(Tab, rotate(Ruv, z));
        double d = distance_ld(lhs, rhs);
        PointL comm = translate(Ta, rotate(Ru, translate(Tminus, rotate(Ruinv, z))));
        PointL expect = translate(Tcomm, z);
        d = std::max(d, distance_ld(comm, expect));
        if (d > report.worst) {
            report.worst = d;
            report.worst_index = i;
        }
    }
    report.pass = report.worst <= tol;
    return report;
}

int lattice_rank(const FieldPtr& F) {
    int n = F->degree();
    const auto sig = F->sig();
    Rat eps(1, Int(1) << 40);
    for (int round = 0; round < 20; ++round, eps = eps / (Int(1) << 40)) {
        auto emb = F->embeddings(eps);
        // rows: flattened embeddings of 1, alpha, ..., alpha^(n-1)
        std::vector<std::vector<QInterval>> M(n);
        for (int i = 0; i < n; ++i) {
            std::vector<QInterval> row;
            for (int j = 0; j < sig.s; ++j) {
                QInterval p(Rat(1));
                for (int k = 0; k < i; ++k) p = p * emb.real_roots[j];
                row.push_back(p);
            }
            for (int j = 0; j < sig.t; ++j) {
                CBox p(QInterval(Rat(1)), QInterval(Rat(0)));
                CBox zbox = emb.complex_roots[j].box();
                for (int k = 0; k < i; ++k) p = p * zbox;
                row.push_back(p.re);
                row.push_back(p.im);
            }
            M[i] = std::move(row);
        }
        auto det = interval_det(std::move(M));
        if (det && !det->contains_zero()) return n;
    }
    throw Error("lattice determinant could not be certified nonzero");
}

FixedPointReport check_fixed_point(const FieldElement& a, const UnitElement& u) {
    FieldElement one = FieldElement::one(a.field());
    FieldElement denom = one - u.element;
    if (denom.is_zero()) throw Error("fixed point needs u != 1");
    FieldElement x = a * denom.inverse();
    EmbeddedElement ex = embed_element(x);
    FixedPointReport report;
    int s = a.field()->sig().s;
    for (int j = 0; j < s; ++j) report.point.emplace_back(ex.real_values[j], 0.0);
    report.point.push_back(ex.complex_value);
    report.max_h_imag = 0.0;  // real embeddings are exactly real
    GeomPoint p{report.point};
    ActionElement Ta = make_translation(a);
    ActionElement Ru = make_rotation(u);
    GeomPoint moved = act(Ta, act(Ru, p));
    double worst = 0;
    for (size_t i = 0; i < p.z.size(); ++i)
        worst = std::max(worst,
                         std::abs(moved.z[i] - p.z[i]) / (1.0 + std::abs(p.z[i])));
    report.residual = worst;
    return report;
}

DilationRankReport dilation_rank_numeric(const std::vector<UnitElement>& units,
                                         long coeff_bound) {
    DilationRankReport report;
    report.coefficient_bound = coeff_bound;
    // exact zeros never contribute to the rank
    std::vector<UnitElement> live;
    for (const auto& u : units) {
        if (u.element.is_rational()) continue;
        auto cert = is_unimodular_at_complex_place(u);
        if (!cert.unimodular) live.push_back(u);
    }
    size_t k = live.size();
    if (k == 0) {
        report.rank = 0;
        report.certified = true;
        return report;
    }

    mpfr_prec_t prec = 192;
    auto log_of = [&](const UnitElement& u, const Rat& width) {
        Rat eps = width;
        for (int round = 0;; ++round) {
            if (round > 80) throw Error("dilation log refinement failed");
            QInterval v = dilation_factor(u, eps).value;
            if (!v.strictly_positive()) {
                eps /= 256;
                continue;
            }
            QInterval lg = log_enclosure(v, prec);
            if (lg.width() <= width) return lg;
            eps /= 256;
        }
    };

    if (k == 1) {
        // nonzero log certified by the exact unimodularity rejection
        report.rank = 1;
        report.certified = true;
        return report;
    }
    if (k == 2) {
        // relation m1 L1 = -m2 L2 <=> L1/L2 is rational with small height
        Rat width(1, Int(1) << 80);
        for (int round = 0; round < 12; ++round, width = width / (Int(1) << 40)) {
            QInterval L1 = log_of(live[0], width);
            QInterval L2 = log_of(live[1], width);
            if (L2.contains_zero()) continue;
            QInterval ratio = L1 * L2.reciprocal();
            Rat cand = simplest_rational_in(ratio);
            Int num = cand.get_num(), den = cand.get_den();
            if (abs_rat(Rat(num)) > coeff_bound || den > coeff_bound) {
                report.rank = 2;
                report.certified = true;
                return report;
            }
            // candidate relation: den * L1 - num * L2 = 0
            if (!num.fits_slong_p() || !den.fits_slong_p()) continue;
            FieldElement prod = live[0].element.pow(den.get_si()) *
                                live[1].element.pow(-num.get_si());
            if (prod.is_rational()) {
                // dilation of a rational unit is 1: exact relation
                report.rank = 1;
                report.certified = true;
                report.relations.push_back({den.get_si(), -num.get_si()});
                return report;
            }
            UnitElement pu{prod, 1, false};
            auto cert = is_unimodular_at_complex_place(pu);
            if (cert.unimodular) {
                report.rank = 1;
                report.certified = true;
                report.relations.push_back({den.get_si(), -num.get_si()});
                return report;
            }
            // rejected candidate: refine until the interval excludes it
        }
        report.rank = 2;
        report.certified = false;
        return report;
    }

    // k >= 3: exhaustive screen with a desk-scale coefficient cap
    long cap = std::min<long>(coeff_bound, 60);
    report.coefficient_bound = cap;
    Rat width(1, Int(1) << 80);
    std::vector<QInterval> logs;
    for (auto& u : live) logs.push_back(log_of(u, width));
    std::vector<double> log_mid;
    for (auto& lg : logs) log_mid.push_back(lg.mid().get_d());
    std::vector<std::vector<long>> verified;
    std::function<void(size_t, std::vector<long>&)> scan = [&](size_t idx,
                                                               std::vector<long>& m) {
        if (idx == k) {
            bool all_zero = true;
            for (long v : m) all_zero = all_zero && v == 0;
            if (all_zero) return;
            // cheap double screen; the interval check confirms survivors
            double approx = 0;
            for (size_t i = 0; i < k; ++i) approx += log_mid[i] * m[i];
            if (std::abs(approx) > 1e-9) return;
            QInterval sum(Rat(0));
            for (size_t i = 0; i < k; ++i) sum = sum + logs[i] * Rat(m[i]);
            if (!sum.contains_zero()) return;
            FieldElement prod = FieldElement::one(live[0].element.field());
            for (size_t i = 0; i < k; ++i)
                prod = prod * live[i].element.pow(m[i]);
            bool relation = prod.is_rational();
            if (!relation) {
                UnitElement pu{prod, 1, false};
                relation = is_unimodular_at_complex_place(pu).unimodular;
            }
            if (relation) verified.push_back(m);
            return;
        }
        for (long v = -cap; v <= cap; ++v) {
            m[idx] = v;
            scan(idx + 1, m);
        }
    };
    std::vector<long> m(k, 0);
    scan(0, m);
    // rank of the verified relation lattice by rational elimination
    int relrank = 0;
    {
        std::vector<std::vector<Rat>> rows;
        for (auto& r : verified) {
            std::vector<Rat> row;
            for (long v : r) row.emplace_back(v);
            rows.push_back(std::move(row));
        }
        for (size_t col = 0; col < k && !rows.empty(); ++col) {
            size_t pr = rows.size();
            for (size_t r = relrank; r < rows.size(); ++r)
                if (rows[r][col] != 0) {
                    pr = r;
                    break;
                }
            if (pr == rows.size()) continue;
            std::swap(rows[pr], rows[relrank]);
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == static_cast<size_t>(relrank) || rows[r][col] == 0) continue;
                Rat f = rows[r][col] / rows[relrank][col];
                for (size_t c = 0; c < k; ++c) rows[r][c] -= f * rows[relrank][c];
            }
            ++relrank;
            if (static_cast<size_t>(relrank) >= rows.size()) break;
        }
    }
    report.relations = verified;
    report.rank = static_cast<int>(k) - relrank;
    report.certified = true;  // at the recorded (capped) coefficient bound
    return report;
}

std::string GeometrySuiteReport::worst_offender() const {
    if (!hessian_pd) return "hessian positive definiteness";
    if (!homothety_pass) return "homothety identity";
    if (!translation_pass) return "translation invariance of the Hessian";
    if (!group_pass) return "group law / commutator";
    if (!fixed_point_pass) return "fixed point";
    if (!log_constancy_pass) return "log-potential constancy";
    if (!lattice_pass) return "lattice rank";
    return "";
}

GeometrySuiteReport run_geometry_suite(const FieldPtr& F, int samples, uint64_t seed,
                                       double tol, double tol_tight) {
    const auto sig = F->sig();
    if (sig.t != 1 || sig.s < 1)
        throw Error("geometry suite needs signature (s, 1) with s >= 1");
    GeometrySuiteReport report;
    report.samples = samples;
    report.seed = seed;
    report.tol = tol;
    report.tol_tight = tol_tight;

    std::mt19937_64 rng(seed);
    std::vector<GeomPoint> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) pts.push_back(sample_point(sig.s, rng));

    // positive definiteness, parallel over samples
    std::vector<char> pd(pts.size(), 0);
    parallel_for(pts.size(), [&](size_t i) { pd[i] = is_positive_definite(hessian(pts[i])); });
    report.hessian_pd = std::all_of(pd.begin(), pd.end(), [](char c) { return c != 0; });

    // units for the rotation checks; squares of found units are always
    // totally positive
    std::vector<UnitElement> tp_units;
    for (long bound = 2; bound <= 6 && tp_units.empty(); ++bound) {
        for (auto& u : unit_search_bounded(F, bound)) {
            if (u.element.is_rational()) continue;
            if (u.totally_positive) {
                tp_units.push_back(u);
            } else {
                tp_units.push_back(UnitElement{u.element * u.element, 1, true});
            }
        }
    }
    if (tp_units.empty()) throw Error("no totally positive unit found for the suite");
    if (tp_units.size() > 3) tp_units.erase(tp_units.begin() + 3, tp_units.end());
    // a dilation factor above 1 amplifies double rounding against the
    // phi(z)-normalized tolerance; the inverse states the same homothety
    for (auto& u : tp_units) {
        QInterval c = dilation_factor(u, Rat(1, 1 << 20)).value;
        if (c.lo > 1)
            u = UnitElement{u.element.inverse(), u.norm_sign, true};
    }
    report.units_tested = static_cast<int>(tp_units.size());

    FieldElement alpha = FieldElement::generator(F);
    report.homothety_pass = true;
    for (auto& u : tp_units) {
        auto hr = check_homothety(u, std::nullopt, pts, tol);
        report.homothety_worst = std::max(report.homothety_worst, hr.worst);
        report.homothety_pass = report.homothety_pass && hr.pass;
    }
    {
        // Hessian entries depend only on Im z_j, which real translations keep
        ActionElement tra = make_translation(alpha);
        double worst = 0;
        for (auto& z : pts) {
            CMatrix before = hessian(z);
            CMatrix after = hessian(act(tra, z));
            for (size_t r = 0; r < before.size(); ++r)
                for (size_t c = 0; c < before.size(); ++c)
                    worst = std::max(worst, std::abs(after[r][c] - before[r][c]) /
                                                (1.0 + std::abs(before[r][c])));
        }
        report.translation_worst = worst;
        report.translation_pass = worst <= tol_tight;
    }

    {
        FieldElement a = alpha;
        FieldElement b = alpha * alpha - FieldElement::one(F);
        const UnitElement& u = tp_units[0];
        const UnitElement& v = tp_units.size() > 1 ? tp_units[1] : tp_units[0];
        auto gr = check_group_law(a, b, u, v, pts, tol_tight);
        report.group_worst = gr.worst;
        report.group_pass = gr.pass;
    }

    {
        auto fr = check_fixed_point(alpha, tp_units[0]);
        report.fixed_point_residual = fr.residual;
        report.fixed_point_pass = fr.residual <= 1e-10 && fr.max_h_imag == 0;
    }

    {
        // log phi(R_u z) - log phi(z) is the same constant at every sample
        const UnitElement& u = tp_units[0];
        ActionElement rot = make_rotation(u);
        double lo = 0, hi = 0;
        bool first = true;
        for (auto& z : pts) {
            double d = std::log(potential(act(rot, z))) - std::log(potential(z));
            if (first) {
                lo = hi = d;
                first = false;
            } else {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
        report.log_constancy_worst = hi - lo;
        report.log_constancy_pass = (hi - lo) <= tol;
    }

    report.lattice = lattice_rank(F);
    report.lattice_pass = report.lattice == F->degree();

    {
        auto pr = positive_unit_rank(F, 6);
        auto dr = dilation_rank_numeric(pr.independent);
        report.dilation_rank = dr.rank;
        report.dilation_certified = dr.certified;
    }
    return report;
}

}  // namespace otk
