#pragma once

#include <string>
#include <vector>

#include "avgeo/tensor.hpp"

namespace avgeo {

/// An AV-bundle in a local affine trivialization: base coordinates x^a plus
/// one fiber coordinate s. The fundamental field is X_Z = -d/ds; changing the
/// trivialization acts by s -> s + g(x).
struct AVChart {
    Chart base;
    std::string fiber;
    Chart chart; // base coordinates followed by the fiber coordinate

    AVChart() = default;
    AVChart(Chart base_chart, std::string fiber_coord)
        : base(std::move(base_chart)), fiber(std::move(fiber_coord)) {
        if (base.has(fiber)) throw std::invalid_argument("AVChart: fiber coordinate in base");
        chart = base.extended({fiber});
    }

    int fiber_index() const { return base.dim(); }

    PolyTensor fundamental_field() const {
        return -PolyTensor::basis_vector(chart, fiber_index());
    }

    /// Lifts a polynomial on the base to the total chart.
    Poly lift(const Poly& f) const {
        require_same_chart(f.chart(), base, "AVChart::lift");
        std::vector<Poly> images;
        for (int i = 0; i < base.dim(); ++i) images.push_back(Poly::variable(chart, i));
        return f.rewrite(chart, images);
    }

    /// Restricts an s-free polynomial on the total chart to the base.
    Poly drop(const Poly& f) const {
        require_same_chart(f.chart(), chart, "AVChart::drop");
        if (f.depends_on(fiber_index()))
            throw std::domain_error("AVChart::drop: polynomial depends on the fiber");
        std::vector<Poly> images;
        for (int i = 0; i < base.dim(); ++i) images.push_back(Poly::variable(base, i));
        images.push_back(Poly::zero(base));
        return f.rewrite(base, images);
    }

    /// Phase chart (x^a, p_a) with momentum names derived from the base.
    Chart phase_chart() const {
        std::vector<std::string> names = base.names();
        for (const auto& n : base.names()) names.push_back("p_" + n);
        return Chart(names);
    }

    /// Contact chart (x^a, p_a, s).
    Chart contact_chart() const { return phase_chart().extended({fiber}); }

    bool operator==(const AVChart& o) const { return chart == o.chart && fiber == o.fiber; }
};

/// Section of an AV-bundle: s = sigma(x) in the trivialization.
struct AVSection {
    AVChart bundle;
    Poly value; // on the base chart

    AVSection(AVChart b, Poly v) : bundle(std::move(b)), value(std::move(v)) {
        require_same_chart(value.chart(), bundle.base, "AVSection");
    }
};

/// Change of trivialization s -> s + g(x); composition adds the g's.
struct GaugeChange {
    AVChart bundle;
    Poly g; // on the base chart

    GaugeChange(AVChart b, Poly gg) : bundle(std::move(b)), g(std::move(gg)) {
        require_same_chart(g.chart(), bundle.base, "GaugeChange");
    }
};

/// Affine 1-form: a section of the phase bundle; coefficients alpha_a(x) on
/// the base. Differences of two affine 1-forms are ordinary base 1-forms.
struct AffOneForm {
    AVChart bundle;
    std::vector<Poly> coeffs; // one per base coordinate

    AffOneForm(AVChart b, std::vector<Poly> c) : bundle(std::move(b)), coeffs(std::move(c)) {
        if ((int)coeffs.size() != bundle.base.dim())
            throw std::invalid_argument("AffOneForm: coefficient count");
        for (const auto& p : coeffs) require_same_chart(p.chart(), bundle.base, "AffOneForm");
    }

    PolyTensor base_form() const {
        PolyTensor w(bundle.base, 1, Variance::form);
        for (int a = 0; a < bundle.base.dim(); ++a) w.add_component({a}, coeffs[a]);
        return w;
    }
};

/// F_sigma(x, s) = sigma(x) - s; the affine fiber function with X_Z(F) = 1
/// vanishing on the graph of sigma.
inline Poly f_map(const AVSection& sigma) {
    const AVChart& b = sigma.bundle;
    return b.lift(sigma.value) - Poly::variable(b.chart, b.fiber_index());
}

/// The vertical Jacobi bracket {f,g} = f X_Z(g) - g X_Z(f) on the total chart.
inline Poly vertical_jacobi(const AVChart& b, const Poly& f, const Poly& g) {
    require_same_chart(f.chart(), b.chart, "vertical_jacobi");
    require_same_chart(g.chart(), b.chart, "vertical_jacobi");
    int s = b.fiber_index();
    return g * f.derivative(s) - f * g.derivative(s);
}

/// The differential of a section as an affine 1-form: coefficients are the
/// partials of sigma.
inline AffOneForm affine_differential(const AVSection& sigma) {
    std::vector<Poly> coeffs;
    for (int a = 0; a < sigma.bundle.base.dim(); ++a)
        coeffs.push_back(sigma.value.derivative(a));
    return AffOneForm(sigma.bundle, std::move(coeffs));
}

/// The differential of an affine 1-form: an ordinary base 2-form, independent
/// of the trivialization.
inline PolyTensor affine_differential(const AffOneForm& alpha) {
    return alpha.base_form().de_rham();
}

/// Principal connection form of an affine 1-form: alpha_a dx^a - ds on the
/// total chart; satisfies nu(X_Z) = 1 and is X_Z-invariant.
inline PolyTensor connection_form(const AffOneForm& alpha) {
    const AVChart& b = alpha.bundle;
    PolyTensor nu(b.chart, 1, Variance::form);
    for (int a = 0; a < b.base.dim(); ++a) nu.add_component({a}, b.lift(alpha.coeffs[a]));
    nu.add_component({b.fiber_index()}, -Poly::one(b.chart));
    return nu;
}

/// Pullback of a base form to the total chart.
inline PolyTensor pullback_to_total(const AVChart& b, const PolyTensor& base_form) {
    require_same_chart(base_form.chart(), b.base, "pullback_to_total");
    PolyTensor r(b.chart, base_form.degree(), base_form.variance());
    for (const auto& [I, c] : base_form.components()) r.add_component(I, b.lift(c));
    return r;
}

/// Canonical symplectic form dp_a ^ dx^a on the phase chart.
inline PolyTensor phase_symplectic(const AVChart& b) {
    Chart pc = b.phase_chart();
    int n = b.base.dim();
    PolyTensor w(pc, 2, Variance::form);
    for (int a = 0; a < n; ++a) w.add_component({a, n + a}, -Poly::one(pc));
    return w; // dp ^ dx = -(dx ^ dp)
}

/// Gauge action s -> s + g on tensors over the total chart. Old coordinates
/// expressed in the new trivialization: x = x, s = s' - g(x).
inline PolyTensor gauge_transform(const GaugeChange& gc, const PolyTensor& t) {
    const AVChart& b = gc.bundle;
    require_same_chart(t.chart(), b.chart, "gauge_transform");
    std::vector<Poly> old_in_new, new_in_old;
    for (int i = 0; i < b.base.dim(); ++i) {
        old_in_new.push_back(Poly::variable(b.chart, i));
        new_in_old.push_back(Poly::variable(b.chart, i));
    }
    Poly s = Poly::variable(b.chart, b.fiber_index());
    old_in_new.push_back(s - b.lift(gc.g));
    new_in_old.push_back(s + b.lift(gc.g));
    return t.change_chart(b.chart, old_in_new, new_in_old);
}

/// Induced gauge action on the phase chart: p_a -> p_a + dg/dx^a.
inline PolyTensor gauge_transform_phase(const GaugeChange& gc, const PolyTensor& t) {
    const AVChart& b = gc.bundle;
    Chart pc = b.phase_chart();
    require_same_chart(t.chart(), pc, "gauge_transform_phase");
    int n = b.base.dim();
    std::vector<Poly> base_images;
    for (int i = 0; i < n; ++i) base_images.push_back(Poly::variable(pc, i));
    std::vector<Poly> old_in_new, new_in_old;
    for (int i = 0; i < n; ++i) {
        old_in_new.push_back(Poly::variable(pc, i));
        new_in_old.push_back(Poly::variable(pc, i));
    }
    for (int a = 0; a < n; ++a) {
        Poly dg = gc.g.derivative(a).rewrite(pc, base_images);
        old_in_new.push_back(Poly::variable(pc, n + a) - dg);
        new_in_old.push_back(Poly::variable(pc, n + a) + dg);
    }
    return t.change_chart(pc, old_in_new, new_in_old);
}

/// Induced gauge action on the contact chart: first-jet translation
/// (x, p, s) -> (x, p + dg, s + g).
inline PolyTensor gauge_transform_contact(const GaugeChange& gc, const PolyTensor& t) {
    const AVChart& b = gc.bundle;
    Chart cc = b.contact_chart();
    require_same_chart(t.chart(), cc, "gauge_transform_contact");
    int n = b.base.dim();
    std::vector<Poly> base_images;
    for (int i = 0; i < n; ++i) base_images.push_back(Poly::variable(cc, i));
    std::vector<Poly> old_in_new, new_in_old;
    for (int i = 0; i < n; ++i) {
        old_in_new.push_back(Poly::variable(cc, i));
        new_in_old.push_back(Poly::variable(cc, i));
    }
    for (int a = 0; a < n; ++a) {
        Poly dg = gc.g.derivative(a).rewrite(cc, base_images);
        old_in_new.push_back(Poly::variable(cc, n + a) - dg);
        new_in_old.push_back(Poly::variable(cc, n + a) + dg);
    }
    Poly g = gc.g.rewrite(cc, base_images);
    old_in_new.push_back(Poly::variable(cc, 2 * n) - g);
    new_in_old.push_back(Poly::variable(cc, 2 * n) + g);
    return t.change_chart(cc, old_in_new, new_in_old);
}

/// The contact data of an AV-bundle on the chart (x, p, s): Liouville form
/// theta = p_a dx^a over the phase bundle, contact form eta = p_a dx^a - ds,
/// and the invariant Jacobi pair (Lambda, Gamma).
struct ContactStructure {
    Chart phase;                 // (x, p)
    Chart contact;               // (x, p, s)
    std::vector<Poly> theta;     // Liouville coefficients p_a on the phase chart
    PolyTensor eta;              // contact 1-form on the contact chart
    PolyTensor lambda;           // bivector d/dp ^ d/dx + p d/dp ^ d/ds
    PolyTensor gamma;            // -d/ds
};

inline ContactStructure contact_structure(const AVChart& b) {
    ContactStructure cs;
    cs.phase = b.phase_chart();
    cs.contact = b.contact_chart();
    int n = b.base.dim();
    // theta = p_a dx^a: one coefficient for every phase coordinate
    for (int a = 0; a < n; ++a) cs.theta.push_back(Poly::variable(cs.phase, n + a));
    for (int a = 0; a < n; ++a) cs.theta.push_back(Poly::zero(cs.phase));
    cs.eta = PolyTensor(cs.contact, 1, Variance::form);
    for (int a = 0; a < n; ++a) cs.eta.add_component({a}, Poly::variable(cs.contact, n + a));
    cs.eta.add_component({2 * n}, -Poly::one(cs.contact));
    cs.lambda = PolyTensor(cs.contact, 2, Variance::multivector);
    for (int a = 0; a < n; ++a) {
        // d/dp_a ^ d/dx^a
        cs.lambda.add_component({a, n + a}, -Poly::one(cs.contact));
        // p_a d/dp_a ^ d/ds
        cs.lambda.add_component({n + a, 2 * n}, Poly::variable(cs.contact, n + a));
    }
    cs.gamma = -PolyTensor::basis_vector(cs.contact, 2 * n);
    return cs;
}

/// Bracket of the contact form: the first-order expansion in the (x, p, s)
/// trivialization.
inline Poly contact_jacobi(const ContactStructure& cs, const Poly& f, const Poly& g) {
    require_same_chart(f.chart(), cs.contact, "contact_jacobi");
    require_same_chart(g.chart(), cs.contact, "contact_jacobi");
    int n = (cs.contact.dim() - 1) / 2;
    const Chart& c = cs.contact;
    Poly r = Poly::zero(c);
    Poly fs = f.derivative(2 * n), gs = g.derivative(2 * n);
    Poly pf = Poly::zero(c), pg = Poly::zero(c);
    for (int a = 0; a < n; ++a) {
        r += f.derivative(n + a) * g.derivative(a) - g.derivative(n + a) * f.derivative(a);
        pf += Poly::variable(c, n + a) * f.derivative(n + a);
        pg += Poly::variable(c, n + a) * g.derivative(n + a);
    }
    r += (pf - f) * gs - (pg - g) * fs;
    return r;
}

/// Bracket induced by an invariant Jacobi pair: {f,g} = Lambda(df,dg)
/// + f Gamma(g) - g Gamma(f).
inline Poly pair_bracket(const PolyTensor& lambda, const PolyTensor& gamma, const Poly& f,
                         const Poly& g) {
    return PolyTensor::bivector_eval(lambda, f, g) + f * PolyTensor::apply_vector(gamma, g) -
           g * PolyTensor::apply_vector(gamma, f);
}

/// Defect of the Jacobi-pair condition in this module's fixed convention:
/// [[Lambda,Lambda]] + 2 Gamma ^ Lambda and [[Gamma,Lambda]]; both vanish
/// exactly when (Lambda, Gamma) is a Jacobi structure.
inline std::pair<PolyTensor, PolyTensor> jacobi_pair_defect(const PolyTensor& lambda,
                                                            const PolyTensor& gamma) {
    PolyTensor d1 = PolyTensor::schouten(lambda, lambda) +
                    gamma.wedge(lambda) * Rational(2);
    PolyTensor d2 = PolyTensor::schouten(gamma, lambda);
    return {d1, d2};
}

/// The adjoint bundle swaps the sign of the fiber action; on the phase chart
/// the identification flips the momenta, so omega changes sign.
inline PolyTensor adjoint_phase_form(const AVChart& b) {
    Chart pc = b.phase_chart();
    int n = b.base.dim();
    PolyTensor w = phase_symplectic(b);
    std::vector<Poly> old_in_new, new_in_old;
    for (int i = 0; i < n; ++i) {
        old_in_new.push_back(Poly::variable(pc, i));
        new_in_old.push_back(Poly::variable(pc, i));
    }
    for (int a = 0; a < n; ++a) {
        old_in_new.push_back(-Poly::variable(pc, n + a));
        new_in_old.push_back(-Poly::variable(pc, n + a));
    }
    return w.change_chart(pc, old_in_new, new_in_old);
}

} // namespace avgeo
