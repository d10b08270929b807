#pragma once

#include <set>
#include <sstream>

#include "avgeo/affspace.hpp"
#include "avgeo/avbundle.hpp"

namespace avgeo {

/// Section of the algebroid of invariant first-order operators on an
/// AV-bundle, stored in the decomposed form: the operator
///   f_a(x) d/dx^a - (alpha(x) s + beta(x)) d/ds + gamma(x).
struct RZSection {
    AVChart bundle;
    std::vector<Poly> X; // base coefficients f_a
    Poly alpha, beta, gamma;

    RZSection(AVChart b, std::vector<Poly> x, Poly a, Poly be, Poly g)
        : bundle(std::move(b)), X(std::move(x)), alpha(std::move(a)), beta(std::move(be)),
          gamma(std::move(g)) {
        if ((int)X.size() != bundle.base.dim())
            throw std::invalid_argument("RZSection: wrong number of X coefficients");
        for (const auto& p : X) require_same_chart(p.chart(), bundle.base, "RZSection");
        require_same_chart(alpha.chart(), bundle.base, "RZSection");
        require_same_chart(beta.chart(), bundle.base, "RZSection");
        require_same_chart(gamma.chart(), bundle.base, "RZSection");
    }

    static RZSection zero(const AVChart& b) {
        return RZSection(b, std::vector<Poly>(b.base.dim(), Poly::zero(b.base)),
                         Poly::zero(b.base), Poly::zero(b.base), Poly::zero(b.base));
    }

    PolyTensor anchor() const {
        PolyTensor x(bundle.base, 1, Variance::multivector);
        for (int a = 0; a < bundle.base.dim(); ++a) x.add_component({a}, X[a]);
        return x;
    }

    /// The represented operator applied to a function on the total chart.
    Poly apply(const Poly& h) const {
        require_same_chart(h.chart(), bundle.chart, "RZSection::apply");
        int si = bundle.fiber_index();
        Poly s = Poly::variable(bundle.chart, si);
        Poly r = Poly::zero(bundle.chart);
        for (int a = 0; a < bundle.base.dim(); ++a)
            r += bundle.lift(X[a]) * h.derivative(a);
        r -= (bundle.lift(alpha) * s + bundle.lift(beta)) * h.derivative(si);
        r += bundle.lift(gamma) * h;
        return r;
    }

    Poly x_apply(const Poly& f_base) const {
        Poly r = Poly::zero(bundle.base);
        for (int a = 0; a < bundle.base.dim(); ++a) r += X[a] * f_base.derivative(a);
        return r;
    }

    RZSection operator+(const RZSection& o) const {
        std::vector<Poly> xs;
        for (size_t a = 0; a < X.size(); ++a) xs.push_back(X[a] + o.X[a]);
        return RZSection(bundle, xs, alpha + o.alpha, beta + o.beta, gamma + o.gamma);
    }
    RZSection operator-(const RZSection& o) const {
        std::vector<Poly> xs;
        for (size_t a = 0; a < X.size(); ++a) xs.push_back(X[a] - o.X[a]);
        return RZSection(bundle, xs, alpha - o.alpha, beta - o.beta, gamma - o.gamma);
    }
    RZSection operator*(const Rational& c) const {
        std::vector<Poly> xs;
        for (const auto& x : X) xs.push_back(x * c);
        return RZSection(bundle, xs, alpha * c, beta * c, gamma * c);
    }

    bool operator==(const RZSection& o) const {
        return X == o.X && alpha == o.alpha && beta == o.beta && gamma == o.gamma;
    }

    std::string str() const {
        std::ostringstream os;
        os << "(X: [";
        for (size_t a = 0; a < X.size(); ++a) os << (a ? ", " : "") << X[a];
        os << "], alpha: " << alpha << ", beta: " << beta << ", gamma: " << gamma << ")";
        return os.str();
    }
};

/// Commutator bracket in the decomposed components.
inline RZSection rz_bracket(const RZSection& r1, const RZSection& r2) {
    if (!(r1.bundle == r2.bundle)) throw std::invalid_argument("rz_bracket: chart mismatch");
    std::vector<Poly> xs;
    for (int a = 0; a < r1.bundle.base.dim(); ++a)
        xs.push_back(r1.x_apply(r2.X[a]) - r2.x_apply(r1.X[a]));
    Poly alpha = r1.x_apply(r2.alpha) - r2.x_apply(r1.alpha);
    Poly beta = r1.x_apply(r2.beta) - r2.x_apply(r1.beta) + r1.alpha * r2.beta -
                r2.alpha * r1.beta;
    Poly gamma = r1.x_apply(r2.gamma) - r2.x_apply(r1.gamma);
    return RZSection(r1.bundle, xs, alpha, beta, gamma);
}

/// The two canonical closed 1-forms.
inline Poly phi0(const RZSection& r) { return r.alpha; }
inline Poly phi1(const RZSection& r) { return r.gamma; }

enum class Subbundle { TtildeZ, LbreveZ, LtildeZ, TbarZ, LbarZ, Zdagger };

inline const char* subbundle_name(Subbundle s) {
    switch (s) {
        case Subbundle::TtildeZ: return "TtildeZ";
        case Subbundle::LbreveZ: return "LbreveZ";
        case Subbundle::LtildeZ: return "LtildeZ";
        case Subbundle::TbarZ: return "TbarZ";
        case Subbundle::LbarZ: return "LbarZ";
        case Subbundle::Zdagger: return "Zdagger";
    }
    return "?";
}

/// Membership tags, decided by exact evaluation of the alpha/gamma
/// constraints. The affine subbundle of derivations with values in sections
/// sits at phi0 = -1 (the level forced by F_{D(sigma)} = D(F_sigma)), the one
/// of first-order operators at phi1 - phi0 = 1.
inline std::set<Subbundle> subbundle_membership(const RZSection& r) {
    std::set<Subbundle> tags;
    bool a0 = r.alpha.is_zero();
    bool g0 = r.gamma.is_zero();
    bool x0 = true;
    for (const auto& x : r.X)
        if (!x.is_zero()) x0 = false;
    if (a0 && g0) tags.insert(Subbundle::TtildeZ);
    if (g0) tags.insert(Subbundle::LbreveZ);
    if (r.gamma == r.alpha) tags.insert(Subbundle::LtildeZ);
    if (g0 && r.alpha == -Poly::one(r.bundle.base)) tags.insert(Subbundle::TbarZ);
    if (r.gamma - r.alpha == Poly::one(r.bundle.base)) tags.insert(Subbundle::LbarZ);
    if (x0 && g0) tags.insert(Subbundle::Zdagger);
    return tags;
}

/// Action on sections through F_{D(sigma)} = D(F_sigma). Members of the
/// function-valued subbundles return a base function; members of the
/// section-valued ones return a section.
struct SectionAction {
    bool is_section; // otherwise a base function
    Poly value;      // on the base chart
};

inline SectionAction act_on_section(const RZSection& d, const AVSection& sigma) {
    if (!(d.bundle == sigma.bundle))
        throw std::invalid_argument("act_on_section: chart mismatch");
    Poly G = d.apply(f_map(sigma));
    int si = d.bundle.fiber_index();
    Poly xg = -G.derivative(si); // X_Z(G)
    if (xg.is_zero()) return {false, d.bundle.drop(G)};
    if (xg == Poly::one(d.bundle.chart)) {
        Poly value = G + Poly::variable(d.bundle.chart, si);
        return {true, d.bundle.drop(value)};
    }
    throw std::domain_error(
        "act_on_section: operator is not valued in functions or sections "
        "(membership violation)");
}

struct ClosureReport {
    bool closed = true;
    bool forms_closed = true;
    std::vector<std::string> violations;
};

/// Checks that pairwise brackets of the generators land where they should
/// (vector subbundles close on themselves; the affine ones close into their
/// model), and that phi0/phi1 satisfy the cocycle identity.
inline ClosureReport closure_check(Subbundle tag, const std::vector<RZSection>& gens) {
    ClosureReport rep;
    auto model_of = [](Subbundle t) {
        if (t == Subbundle::TbarZ) return Subbundle::TtildeZ;
        if (t == Subbundle::LbarZ) return Subbundle::LtildeZ;
        return t;
    };
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!subbundle_membership(gens[i]).count(tag)) {
            rep.closed = false;
            rep.violations.push_back("generator " + std::to_string(i) + " not in " +
                                     subbundle_name(tag));
        }
        for (size_t j = 0; j < gens.size(); ++j) {
            RZSection b = rz_bracket(gens[i], gens[j]);
            if (!subbundle_membership(b).count(model_of(tag))) {
                rep.closed = false;
                rep.violations.push_back("bracket (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") leaves " +
                                         subbundle_name(model_of(tag)));
            }
            // cocycle identity for both canonical 1-forms
            Poly d0 = phi0(b) - (gens[i].x_apply(phi0(gens[j])) - gens[j].x_apply(phi0(gens[i])));
            Poly d1 = phi1(b) - (gens[i].x_apply(phi1(gens[j])) - gens[j].x_apply(phi1(gens[i])));
            if (!d0.is_zero() || !d1.is_zero()) {
                rep.forms_closed = false;
                rep.violations.push_back("cocycle defect at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Affgebroids over a chart with a constant fiber.
// ---------------------------------------------------------------------------

/// A Lie affgebroid presented over generators: the fiber is a constant affine
/// space given through its hull, the generators are the hull basis elements
/// (points of the fiber when the basis is an affine basis), the bracket table
/// holds [e_i, e_j] as model-valued sections, and the anchor table holds
/// anchor vector fields of the generators. Sections are hull-coefficient
/// vectors of base polynomials; the bracket extends by bilinearity and the
/// anchor Leibniz rule.
struct AffgebroidSpec {
    Chart base;
    HullSpace fiber;
    std::vector<std::vector<std::vector<Poly>>> bracket; // [i][j] -> hull coefficients
    std::vector<std::vector<Poly>> anchor;               // [i] -> base vector field coeffs
    std::string label;

    int rank() const { return fiber.hull_dim; }

    void validate() const {
        int n = rank();
        fiber.validate();
        if ((int)bracket.size() != n || (int)anchor.size() != n)
            throw std::invalid_argument("AffgebroidSpec: table sizes");
        for (const auto& row : bracket)
            if ((int)row.size() != n)
                throw std::invalid_argument("AffgebroidSpec: bracket table shape");
    }

    static AffgebroidSpec empty(Chart base, HullSpace fiber, std::string label) {
        AffgebroidSpec s;
        s.base = base;
        s.fiber = std::move(fiber);
        s.label = std::move(label);
        int n = s.rank();
        s.bracket.assign(
            n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly::zero(base))));
        s.anchor.assign(n, std::vector<Poly>(base.dim(), Poly::zero(base)));
        s.base = base;
        return s;
    }
};

using AffSectionCoeffs = std::vector<Poly>; // hull coefficients over the base

inline Poly one_weight(const AffgebroidSpec& spec, const AffSectionCoeffs& u) {
    Poly r = Poly::zero(spec.base);
    for (int i = 0; i < spec.rank(); ++i) r += (*spec.fiber.one)[i] * u[i];
    return r;
}

inline PolyTensor anchor_of(const AffgebroidSpec& spec, const AffSectionCoeffs& u) {
    PolyTensor x(spec.base, 1, Variance::multivector);
    for (int a = 0; a < spec.base.dim(); ++a) {
        Poly c = Poly::zero(spec.base);
        for (int i = 0; i < spec.rank(); ++i) c += u[i] * spec.anchor[i][a];
        x.add_component({a}, c);
    }
    return x;
}

inline Poly anchor_apply(const AffgebroidSpec& spec, const AffSectionCoeffs& u, const Poly& f) {
    Poly r = Poly::zero(spec.base);
    for (int i = 0; i < spec.rank(); ++i)
        for (int a = 0; a < spec.base.dim(); ++a)
            r += u[i] * spec.anchor[i][a] * f.derivative(a);
    return r;
}

/// Bilinear extension of the generator table with the anchor Leibniz rule.
inline AffSectionCoeffs hull_bracket(const AffgebroidSpec& spec, const AffSectionCoeffs& u,
                                     const AffSectionCoeffs& v) {
    int n = spec.rank();
    AffSectionCoeffs r(n, Poly::zero(spec.base));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!u[i].is_zero() && !v[j].is_zero())
                for (int k = 0; k < n; ++k) r[k] += u[i] * v[j] * spec.bracket[i][j][k];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // u_i rho_i(v_j) e_j - v_j rho_j(u_i) e_i
            Poly a = Poly::zero(spec.base), b = Poly::zero(spec.base);
            for (int c = 0; c < spec.base.dim(); ++c) {
                a += spec.anchor[i][c] * v[j].derivative(c);
                b += spec.anchor[j][c] * u[i].derivative(c);
            }
            r[j] += u[i] * a;
            r[i] -= v[j] * b;
        }
    return r;
}

struct AffgebroidReport {
    bool values_in_model = true;
    bool skew = true;
    bool jacobi = true;
    bool anchor_compatible = true;
    bool quasi_derivation = true;
    bool one_form_closed = true;
    std::vector<std::string> violations;

    bool ok() const {
        return values_in_model && skew && jacobi && anchor_compatible && quasi_derivation &&
               one_form_closed;
    }
};

/// Checks the affgebroid axioms symbolically over the generator set and
/// polynomial-coefficient combinations.
inline AffgebroidReport affgebroid_axioms(const AffgebroidSpec& spec) {
    AffgebroidReport rep;
    spec.validate();
    int n = spec.rank();
    auto gen = [&](int i) {
        AffSectionCoeffs u(n, Poly::zero(spec.base));
        u[i] = Poly::one(spec.base);
        return u;
    };
    // skew and model-valued table
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k)
                if (spec.bracket[i][j][k] != -spec.bracket[j][i][k]) {
                    rep.skew = false;
                    rep.violations.push_back("table not skew at (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
                }
            if (!one_weight(spec, spec.bracket[i][j]).is_zero()) {
                rep.values_in_model = false;
                rep.violations.push_back("bracket (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") not model-valued");
            }
        }
    // Jacobi on generator triples (vector part; generators are constant, so
    // the plain cyclic sum of double brackets must vanish)
    for (int i = 0; i < n && rep.jacobi; ++i)
        for (int j = 0; j < n && rep.jacobi; ++j)
            for (int k = 0; k < n; ++k) {
                AffSectionCoeffs s1 =
                    hull_bracket(spec, gen(i), hull_bracket(spec, gen(j), gen(k)));
                AffSectionCoeffs s2 =
                    hull_bracket(spec, gen(j), hull_bracket(spec, gen(k), gen(i)));
                AffSectionCoeffs s3 =
                    hull_bracket(spec, gen(k), hull_bracket(spec, gen(i), gen(j)));
                bool zero = true;
                for (int m = 0; m < n; ++m)
                    if (!(s1[m] + s2[m] + s3[m]).is_zero()) zero = false;
                if (!zero) {
                    rep.jacobi = false;
                    rep.violations.push_back("Jacobi defect on triple (" + std::to_string(i) +
                                             "," + std::to_string(j) + "," + std::to_string(k) +
                                             ")");
                    break;
                }
            }
    // anchor compatibility on generators
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyTensor lhs = anchor_of(spec, hull_bracket(spec, gen(i), gen(j)));
            PolyTensor rhs =
                PolyTensor::schouten(anchor_of(spec, gen(i)), anchor_of(spec, gen(j)));
            if (!(lhs == rhs)) {
                rep.anchor_compatible = false;
                rep.violations.push_back("anchor defect at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            }
        }
    // quasi-derivation in the second slot against coordinate coefficients
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < spec.base.dim(); ++c) {
                Poly f = Poly::variable(spec.base, c);
                AffSectionCoeffs fX = gen(j);
                for (auto& p : fX) p *= f;
                AffSectionCoeffs lhs = hull_bracket(spec, gen(i), fX);
                AffSectionCoeffs rhs = hull_bracket(spec, gen(i), gen(j));
                Poly rho_f = anchor_apply(spec, gen(i), f);
                for (int m = 0; m < n; ++m) rhs[m] = rhs[m] * f + (m == j ? rho_f : Poly::zero(spec.base));
                bool same = true;
                for (int m = 0; m < n; ++m)
                    if (lhs[m] != rhs[m]) same = false;
                if (!same) {
                    rep.quasi_derivation = false;
                    rep.violations.push_back("quasi-derivation defect");
                }
            }
    // closedness of the constant-one form over the hull extension; the
    // anchors act on constant pairings, so only the bracket term remains
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly d = -one_weight(spec, hull_bracket(spec, gen(i), gen(j)));
            if (!d.is_zero()) {
                rep.one_form_closed = false;
                rep.violations.push_back("one-form not closed at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            }
        }
    return rep;
}

/// The hull of the affgebroid: the same generator data regarded as a Lie
/// algebroid on the vector hull of the fiber; verifies the extension is
/// consistent and returns the report.
struct HullAlgebroid {
    AffgebroidSpec spec;
    AffgebroidReport report;
};

inline HullAlgebroid algebroid_hull(const AffgebroidSpec& spec) {
    HullAlgebroid h{spec, affgebroid_axioms(spec)};
    if (!h.report.ok())
        throw std::domain_error("algebroid_hull: inconsistent bracket table for " + spec.label);
    return h;
}

// ---------------------------------------------------------------------------
// Canonical affgebroids over an AV-chart.
// ---------------------------------------------------------------------------

/// The canonical affgebroid of an AV-bundle: fiber Z, bracket of points
/// [p, q] = p - q, zero anchor.
inline AffgebroidSpec canonical_av_affgebroid(const Chart& base) {
    HullSpace fiber;
    fiber.hull_dim = 2;
    fiber.one = RatVec{Rational(1), Rational(1)}; // basis = two points of Z
    fiber.v0 = RatVec{Rational(-1), Rational(1)}; // the +1 translation p1 - p0
    fiber.label = "Z";
    AffgebroidSpec s = AffgebroidSpec::empty(base, fiber, "canonical(Z)");
    // [p0, p1] = p0 - p1
    s.bracket[0][1] = {Poly::one(base), -Poly::one(base)};
    s.bracket[1][0] = {-Poly::one(base), Poly::one(base)};
    return s;
}

/// The algebroid of invariant derivations, seen as an affgebroid on its own
/// special vector bundle: generators are the zero operator, the coordinate
/// derivations, and the fundamental direction u; all brackets vanish.
inline AffgebroidSpec derivations_affgebroid(const AVChart& Z) {
    int n = Z.base.dim();
    HullSpace fiber;
    fiber.hull_dim = n + 2; // points: 0, d/dx^a, u
    fiber.one = RatVec(n + 2, Rational(1));
    RatVec v0(n + 2);
    v0[0] = -1;
    v0[n + 1] = 1; // u - 0
    fiber.v0 = v0;
    fiber.label = "TtildeZ";
    AffgebroidSpec s = AffgebroidSpec::empty(Z.base, fiber, "TtildeZ(" + Z.fiber + ")");
    for (int a = 0; a < n; ++a) s.anchor[1 + a][a] = Poly::one(Z.base);
    return s;
}

/// The affgebroid of derivations valued in sections: generators are the
/// operators s d/ds, d/dx^a + s d/ds and (s-1) d/ds; the commutator table
/// follows from the decomposed bracket.
inline AffgebroidSpec sections_derivations_affgebroid(const AVChart& Z) {
    int n = Z.base.dim();
    const Chart& base = Z.base;
    HullSpace fiber;
    fiber.hull_dim = n + 2; // points: (f, beta) in {(0,0), (e_a, 0), (0,1)}
    fiber.one = RatVec(n + 2, Rational(1));
    RatVec v0(n + 2);
    v0[0] = -1;
    v0[n + 1] = 1; // X_Z = (0,1)-point minus (0,0)-point
    fiber.v0 = v0;
    fiber.label = "TbarZ";
    AffgebroidSpec s = AffgebroidSpec::empty(base, fiber, "TbarZ(" + Z.fiber + ")");
    for (int a = 0; a < n; ++a) s.anchor[1 + a][a] = Poly::one(base);
    // decomposed bracket of (X,-1,b,0)-type generators:
    // [(X,b), (X',b')] has model value (X b' - X' b + b - b') in the
    // fundamental direction; for the constant generators only b - b' remains.
    auto set_pair = [&](int i, int j, const Rational& bi, const Rational& bj) {
        Poly val = Poly::constant(base, bi - bj);
        // model element val * (X_Z-direction) = val * (e_{n+1} - e_0)
        s.bracket[i][j][n + 1] = val;
        s.bracket[i][j][0] = -val;
        s.bracket[j][i][n + 1] = -val;
        s.bracket[j][i][0] = val;
    };
    // generator beta-values: p_0 -> 0, p_a -> 0, p_{n+1} -> 1
    for (int i = 0; i <= n; ++i) set_pair(i, n + 1, Rational(0), Rational(1));
    return s;
}

/// The affgebroid of first-order operators valued in sections: generators are
/// the operators s d/ds, d/dx^a + s d/ds, the unit operator, and (s-1) d/ds.
inline AffgebroidSpec sections_operators_affgebroid(const AVChart& Z) {
    int n = Z.base.dim();
    const Chart& base = Z.base;
    HullSpace fiber;
    fiber.hull_dim = n + 3; // points (f, alpha, beta) over {0, e_a, unit, beta-shift}
    fiber.one = RatVec(n + 3, Rational(1));
    RatVec v0(n + 3);
    v0[0] = -1;
    v0[n + 2] = 1; // X_Z = beta-shift point minus the zero point
    fiber.v0 = v0;
    fiber.label = "LbarZ";
    AffgebroidSpec s = AffgebroidSpec::empty(base, fiber, "LbarZ(" + Z.fiber + ")");
    for (int a = 0; a < n; ++a) s.anchor[1 + a][a] = Poly::one(base);
    // constant generators carry (alpha_i, beta_i); the decomposed bracket
    // leaves only (alpha_i - 1) beta_j - (alpha_j - 1) beta_i in the
    // fundamental direction
    std::vector<std::pair<Rational, Rational>> ab(n + 3, {Rational(0), Rational(0)});
    ab[n + 1] = {Rational(1), Rational(0)};  // the unit operator
    ab[n + 2] = {Rational(0), Rational(1)};  // the beta shift
    for (int i = 0; i < n + 3; ++i)
        for (int j = i + 1; j < n + 3; ++j) {
            Rational val = (ab[i].first - 1) * ab[j].second - (ab[j].first - 1) * ab[i].second;
            if (val.is_zero()) continue;
            // value = val * X_Z = val * (e_{n+2} - e_0)
            s.bracket[i][j][n + 2] = Poly::constant(base, val);
            s.bracket[i][j][0] = Poly::constant(base, -val);
            s.bracket[j][i][n + 2] = Poly::constant(base, -val);
            s.bracket[j][i][0] = Poly::constant(base, val);
        }
    return s;
}

/// Linear map sending hull coefficients of the first-order-operators
/// affgebroid to operator sections.
inline RZSection lbar_to_rz(const AVChart& Z, const AffSectionCoeffs& u) {
    int n = Z.base.dim();
    std::vector<Poly> X(n, Poly::zero(Z.base));
    Poly total = Poly::zero(Z.base);
    for (int a = 0; a < n; ++a) X[a] = u[1 + a];
    for (int i = 0; i < n + 3; ++i) total += u[i];
    // points map to (X, alpha - w, beta, alpha) with w the one-weight
    Poly alpha = u[n + 1];
    Poly beta = u[n + 2];
    return RZSection(Z, X, alpha - total, beta, alpha);
}

/// Linear map sending hull coefficients of the section-derivations
/// affgebroid to the corresponding operator sections.
inline RZSection tbar_to_rz(const AVChart& Z, const AffSectionCoeffs& u) {
    int n = Z.base.dim();
    std::vector<Poly> X(n, Poly::zero(Z.base));
    Poly total = Poly::zero(Z.base), beta = Poly::zero(Z.base);
    for (int a = 0; a < n; ++a) X[a] = u[1 + a];
    for (int i = 0; i < n + 2; ++i) total += u[i];
    beta = u[n + 1];
    // (X, -1, beta, 0) scaled by the one-weight of u
    return RZSection(Z, X, -total, beta, Poly::zero(Z.base));
}

} // namespace avgeo
