#pragma once

#include "avgeo/algebroids.hpp"
#include "avgeo/frame_algebroid.hpp"

namespace avgeo {

enum class StructKind { poisson, jacobi };

/// An aff-Poisson or aff-Jacobi structure in decomposed form relative to a
/// trivialization: the bracket of sections is
///   {sigma, sigma'} = (X0 + f0)(sigma' - sigma) + Lambda0(d sigma, d sigma')
///                     + sigma Gamma0(sigma') - sigma' Gamma0(sigma).
/// For the Poisson kind Gamma0 = 0 and f0 = 0.
struct AffStructure {
    AVChart bundle;
    PolyTensor lambda0; // bivector on the base
    PolyTensor gamma0;  // vector field on the base
    PolyTensor x0;      // vector field on the base
    Poly f0;            // function on the base
    StructKind kind = StructKind::jacobi;

    static AffStructure make(const AVChart& b, PolyTensor lambda0, PolyTensor gamma0,
                             PolyTensor x0, Poly f0, StructKind kind) {
        AffStructure s{b, std::move(lambda0), std::move(gamma0), std::move(x0), std::move(f0),
                       kind};
        require_same_chart(s.lambda0.chart(), b.base, "AffStructure");
        require_same_chart(s.gamma0.chart(), b.base, "AffStructure");
        require_same_chart(s.x0.chart(), b.base, "AffStructure");
        if (kind == StructKind::poisson && (!s.gamma0.is_zero() || !s.f0.is_zero()))
            throw std::invalid_argument("AffStructure: poisson kind requires Gamma0 = f0 = 0");
        return s;
    }

    static AffStructure poisson(const AVChart& b, PolyTensor lambda0, PolyTensor x0) {
        return make(b, std::move(lambda0), PolyTensor(b.base, 1, Variance::multivector),
                    std::move(x0), Poly::zero(b.base), StructKind::poisson);
    }
};

/// Vector part of the bracket on base functions.
inline Poly vector_bracket(const AffStructure& s, const Poly& f, const Poly& g) {
    return PolyTensor::bivector_eval(s.lambda0, f, g) +
           f * PolyTensor::apply_vector(s.gamma0, g) -
           g * PolyTensor::apply_vector(s.gamma0, f);
}

/// The full affine bracket of two sections.
inline Poly aff_bracket(const AffStructure& s, const AVSection& a, const AVSection& b) {
    if (!(a.bundle == s.bundle) || !(b.bundle == s.bundle))
        throw std::invalid_argument("aff_bracket: bundle mismatch");
    Poly diff = b.value - a.value;
    return PolyTensor::apply_vector(s.x0, diff) + s.f0 * diff +
           vector_bracket(s, a.value, b.value);
}

/// Hamiltonian vector field of a section (Poisson kind): the derivation part
/// of sigma' -> {sigma, sigma'}.
inline PolyTensor hamiltonian_field(const AffStructure& s, const AVSection& sigma) {
    if (s.kind != StructKind::poisson)
        throw std::invalid_argument("hamiltonian_field: needs a Poisson structure");
    const Chart& base = s.bundle.base;
    PolyTensor x(base, 1, Variance::multivector);
    for (int b = 0; b < base.dim(); ++b)
        x.add_component({b}, PolyTensor::bivector_eval(s.lambda0, sigma.value,
                                                       Poly::variable(base, b)));
    return x + s.x0;
}

/// Invariant tensors on the total chart of the bundle.
struct InvariantTensorPair {
    PolyTensor pi;    // bivector on the total chart
    PolyTensor gamma; // vector field on the total chart
};

namespace detail_structures {

/// Lift of a base multivector to the total chart (same component indices).
inline PolyTensor lift_tensor(const AVChart& b, const PolyTensor& t) {
    PolyTensor r(b.chart, t.degree(), t.variance());
    for (const auto& [I, c] : t.components()) r.add_component(I, b.lift(c));
    return r;
}

} // namespace detail_structures

inline InvariantTensorPair to_invariant_tensors(const AffStructure& s) {
    using detail_structures::lift_tensor;
    const AVChart& b = s.bundle;
    Poly sv = Poly::variable(b.chart, b.fiber_index());
    PolyTensor xz = b.fundamental_field();
    PolyTensor pi = lift_tensor(b, s.lambda0) +
                    xz.wedge(lift_tensor(b, s.x0) + lift_tensor(b, s.gamma0) * sv);
    PolyTensor gamma = lift_tensor(b, s.gamma0) - xz * b.lift(s.f0);
    return {pi, gamma};
}

/// Decomposes an invariant pair back into structure data; throws when the
/// invariance conditions fail.
inline AffStructure from_invariant_tensors(const AVChart& b, const InvariantTensorPair& p) {
    PolyTensor xz = b.fundamental_field();
    // invariance conditions
    if (!PolyTensor::lie_derivative(xz, p.gamma).is_zero())
        throw std::domain_error("from_invariant_tensors: Gamma not invariant");
    if (!(PolyTensor::lie_derivative(xz, p.pi) == p.gamma.wedge(xz)))
        throw std::domain_error("from_invariant_tensors: Pi breaks the invariance identity");
    int si = b.fiber_index();
    int n = b.base.dim();
    PolyTensor lambda0(b.base, 2, Variance::multivector);
    PolyTensor gamma0(b.base, 1, Variance::multivector);
    PolyTensor x0(b.base, 1, Variance::multivector);
    Poly f0 = Poly::zero(b.base);
    for (const auto& [I, c] : p.pi.components()) {
        if (I[1] < n)
            lambda0.add_component(I, b.drop(c));
        else // component (a, s) carries X0^a + s Gamma0^a; take the s = 0 part
            x0.add_component({I[0]}, b.drop(c.substitute(si, Poly::zero(b.chart))));
    }
    for (const auto& [I, c] : p.gamma.components()) {
        if (I[0] < n)
            gamma0.add_component(I, b.drop(c));
        else
            f0 = b.drop(c); // Gamma = Gamma0 + f0 d/ds
    }
    StructKind kind =
        (p.gamma.is_zero() && gamma0.is_zero() && f0.is_zero()) ? StructKind::poisson
                                                                : StructKind::jacobi;
    AffStructure s = AffStructure::make(b, lambda0, gamma0, x0, f0, kind);
    // round-trip safety: the pair must be reproduced exactly
    InvariantTensorPair back = to_invariant_tensors(s);
    if (!(back.pi == p.pi) || !(back.gamma == p.gamma))
        throw std::domain_error("from_invariant_tensors: pair is not in invariant form");
    return s;
}

struct CanonReport {
    bool canonical = false;
    std::string detail;
};

/// Canonicality of the structure data: for the Poisson kind both Schouten
/// brackets vanish; for the Jacobi kind (Lambda0, Gamma0) must satisfy the
/// Jacobi-pair conditions and (X0, f0) must be a bracket derivation, checked
/// on the separating family {1, x^a} per slot.
inline CanonReport canonicality_check(const AffStructure& s) {
    CanonReport rep;
    const Chart& base = s.bundle.base;
    if (s.kind == StructKind::poisson) {
        bool c1 = PolyTensor::schouten(s.lambda0, s.lambda0).is_zero();
        bool c2 = PolyTensor::schouten(s.lambda0, s.x0).is_zero();
        rep.canonical = c1 && c2;
        rep.detail = std::string("[[L0,L0]] ") + (c1 ? "= 0" : "!= 0") + "; [[L0,X0]] " +
                     (c2 ? "= 0" : "!= 0");
        return rep;
    }
    auto [d1, d2] = jacobi_pair_defect(s.lambda0, s.gamma0);
    bool pair_ok = d1.is_zero() && d2.is_zero();
    // derivation defect of D = X0 + f0 over the separating family
    std::vector<Poly> fam{Poly::one(base)};
    for (int a = 0; a < base.dim(); ++a) fam.push_back(Poly::variable(base, a));
    auto D = [&](const Poly& h) {
        return PolyTensor::apply_vector(s.x0, h) + s.f0 * h;
    };
    bool der_ok = true;
    for (const auto& f : fam)
        for (const auto& g : fam) {
            Poly defect = D(vector_bracket(s, f, g)) - vector_bracket(s, D(f), g) -
                          vector_bracket(s, f, D(g));
            if (!defect.is_zero()) der_ok = false;
        }
    rep.canonical = pair_ok && der_ok;
    rep.detail = std::string("Jacobi pair ") + (pair_ok ? "ok" : "violated") +
                 "; derivation defect " + (der_ok ? "zero" : "nonzero");
    return rep;
}

// ---------------------------------------------------------------------------
// Frame tensors of a structure and the induced (co)homology operators.
// ---------------------------------------------------------------------------

/// The bivector of the structure over the derivations frame (d/dx^a, u):
/// Lambda = Lambda0 + u ^ X0.
inline FrameTensor poisson_frame_tensor(const AffStructure& s, const FramePtr& fr) {
    FrameTensor L(fr, 2, Variance::multivector);
    for (const auto& [I, c] : s.lambda0.components()) L.add_component(I, c);
    int ui = fr->rank() - 1;
    FrameTensor u = FrameTensor::generator(fr, ui);
    FrameTensor X0(fr, 1, Variance::multivector);
    for (const auto& [I, c] : s.x0.components()) X0.add_component(I, c);
    return L + u.wedge(X0);
}

/// The bisection of the structure over the operators frame (d/dx^a, u, w):
/// J = Lambda0 + w ^ Gamma0 + u ^ (X0 + f0 w).
inline FrameTensor jacobi_frame_tensor(const AffStructure& s, const FramePtr& fr) {
    int n = s.bundle.base.dim();
    FrameTensor J(fr, 2, Variance::multivector);
    for (const auto& [I, c] : s.lambda0.components()) J.add_component(I, c);
    FrameTensor u = FrameTensor::generator(fr, n), w = FrameTensor::generator(fr, n + 1);
    FrameTensor G0(fr, 1, Variance::multivector), X0(fr, 1, Variance::multivector);
    for (const auto& [I, c] : s.gamma0.components()) G0.add_component(I, c);
    for (const auto& [I, c] : s.x0.components()) X0.add_component(I, c);
    return J + w.wedge(G0) + u.wedge(X0 + w * s.f0);
}

/// Degree-raising operator of the structure: [[Lambda, .]] for the Poisson
/// kind on the derivations frame, the twisted bracket version with parameter
/// t for the Jacobi kind on the operators frame.
inline FrameTensor cohomology_operator(const AffStructure& s, const Rational& t,
                                       const FrameTensor& Y) {
    if (s.kind == StructKind::poisson &&
        Y.frame()->rank() == s.bundle.base.dim() + 1) {
        FrameTensor L = poisson_frame_tensor(s, Y.frame());
        return FrameTensor::schouten(L, Y);
    }
    FrameTensor J = jacobi_frame_tensor(s, Y.frame());
    FrameTensor phi = operators_phi0(Y.frame());
    FrameTensor r = schouten_twisted(J, Y, phi);
    if (!t.is_zero()) r += J.contract_form(phi).wedge(Y) * t;
    return r;
}

/// Degree-lowering operator on frame forms: the Lie differential of the
/// structure tensor, with the twisted correction terms in the Jacobi case.
/// The contraction term enters with the sign dictated by the interior-product
/// convention i_{P ^ Q} = i_P o i_Q; the squared-zero tests pin it.
inline FrameTensor homology_operator(const AffStructure& s, const Rational& t,
                                     const FrameTensor& omega) {
    if (s.kind == StructKind::poisson &&
        omega.frame()->rank() == s.bundle.base.dim() + 1) {
        FrameTensor L = poisson_frame_tensor(s, omega.frame());
        return FrameTensor::lie_differential(L, omega);
    }
    if (omega.degree() == 0) return FrameTensor(omega.frame(), 0, Variance::form);
    FrameTensor J = jacobi_frame_tensor(s, omega.frame());
    FrameTensor phi = operators_phi0(omega.frame());
    FrameTensor r = FrameTensor::lie_differential(J, omega);
    FrameTensor iphiJ = J.contract_form(phi);
    r -= iphiJ.interior(omega) * (Rational(omega.degree()) + t);
    if (omega.degree() >= 2) r += phi.wedge(J.interior(omega));
    return r;
}

// ---------------------------------------------------------------------------
// Structures induced by an affgebroid on the duals of its fiber.
// ---------------------------------------------------------------------------

/// Both bracket structures induced by a Lie affgebroid: the linear aff-Poisson
/// structure on the AV-bundle of the vector dual, and the affine aff-Jacobi
/// structure on the AV-bundle of the special dual (Poisson exactly when the
/// distinguished vector is central).
struct InducedStructures {
    AffStructure dagger;
    bool has_sharp = false;
    AffStructure sharp;
    bool sharp_is_poisson = false;

    Chart ambient;                    // (x, zeta): base plus dual fiber coordinates
    std::vector<Poly> dag_amb_in_av;  // each ambient coordinate on the dagger AV chart
    std::vector<Poly> sharp_amb_in_av; // each ambient coordinate on the sharp AV chart

    InducedStructures(AffStructure d, AffStructure sh)
        : dagger(std::move(d)), sharp(std::move(sh)) {}
};

namespace detail_structures {

/// Splits a linear space with distinguished direction w into quotient
/// coordinates eta and the fiber coordinate of the AV-chart (s = -t where w
/// moves t). Returns the substitution zeta_i -> eta-expression on the AV chart.
struct AVSplit {
    AVChart av;                    // base (x, eta...), fiber s
    std::vector<Poly> zeta_in_av;  // per original zeta coordinate
};

inline AVSplit av_split(const Chart& base, const std::vector<std::string>& zeta_names,
                        const RatVec& w, const std::string& fiber_name) {
    int m = (int)zeta_names.size();
    int pivot = -1;
    for (int i = 0; i < m && pivot < 0; ++i)
        if (!w[i].is_zero()) pivot = i;
    if (pivot < 0) throw std::invalid_argument("av_split: zero direction");
    std::vector<std::string> av_base = base.names();
    for (int i = 0; i < m; ++i)
        if (i != pivot) av_base.push_back(zeta_names[i]);
    AVSplit sp{AVChart(Chart(av_base), fiber_name), {}};
    const Chart& total = sp.av.chart;
    // zeta_pivot = -w_pivot s; zeta_i = eta_i - w_i s
    Poly s = Poly::variable(total, sp.av.fiber_index());
    int eta_pos = base.dim();
    for (int i = 0; i < m; ++i) {
        if (i == pivot) {
            sp.zeta_in_av.push_back(-(s * w[pivot]));
        } else {
            sp.zeta_in_av.push_back(Poly::variable(total, eta_pos++) - s * w[i]);
        }
    }
    return sp;
}

} // namespace detail_structures

inline InducedStructures from_affgebroid(const AffgebroidSpec& spec) {
    using detail_structures::av_split;
    AffgebroidReport axioms = affgebroid_axioms(spec);
    if (!axioms.ok())
        throw std::domain_error("from_affgebroid: affgebroid axioms fail for " + spec.label);
    int n = spec.rank();
    int nx = spec.base.dim();

    // ambient chart (x, zeta) of the vector dual
    std::vector<std::string> names = spec.base.names();
    std::vector<std::string> zeta_names;
    for (int i = 0; i < n; ++i) zeta_names.push_back("zeta" + std::to_string(i));
    for (const auto& z : zeta_names) names.push_back(z);
    Chart ambient(names);
    std::vector<Poly> base_lift;
    for (int a = 0; a < nx; ++a) base_lift.push_back(Poly::variable(ambient, a));

    // linear bracket tensor on the dual: {zeta_i, zeta_j} = iota([e_i, e_j]),
    // {zeta_i, f} = rho_i(f)
    PolyTensor Pi(ambient, 2, Variance::multivector);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Poly v = Poly::zero(ambient);
            for (int k = 0; k < n; ++k)
                v += spec.bracket[i][j][k].rewrite(ambient, base_lift) *
                     Poly::variable(ambient, nx + k);
            Pi.add_component({nx + i, nx + j}, v);
        }
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < nx; ++a) {
            // Pi(d zeta_i, d x^a) = rho_i^a, stored on the sorted tuple (a, i)
            Pi.add_component({a, nx + i}, -spec.anchor[i][a].rewrite(ambient, base_lift));
        }

    // ----- dagger branch: quotient by the direction of the one-functional
    RatVec w = *spec.fiber.one;
    auto dag = av_split(spec.base, zeta_names, w, "sdag");
    std::vector<Poly> old_in_new, new_in_old;
    for (int a = 0; a < nx; ++a) old_in_new.push_back(Poly::variable(dag.av.chart, a));
    for (const auto& z : dag.zeta_in_av) old_in_new.push_back(z);
    // inverse map: x = x, eta_i = zeta_i - (w_i / w_p) zeta_p, s = -zeta_p / w_p
    {
        int pivot = -1;
        for (int i = 0; i < n && pivot < 0; ++i)
            if (!w[i].is_zero()) pivot = i;
        for (int a = 0; a < nx; ++a) new_in_old.push_back(Poly::variable(ambient, a));
        for (int i = 0; i < n; ++i) {
            if (i == pivot) continue;
            new_in_old.push_back(Poly::variable(ambient, nx + i) -
                                 Poly::variable(ambient, nx + pivot) * (w[i] / w[pivot]));
        }
        new_in_old.push_back(Poly::variable(ambient, nx + pivot) * (Rational(-1) / w[pivot]));
    }
    PolyTensor Pi_dag = Pi.change_chart(dag.av.chart, old_in_new, new_in_old);
    AffStructure dagger = from_invariant_tensors(
        dag.av, {Pi_dag, PolyTensor(dag.av.chart, 1, Variance::multivector)});

    // ----- sharp branch
    if (!spec.fiber.v0) {
        InducedStructures out(dagger, dagger);
        out.ambient = ambient;
        out.dag_amb_in_av = old_in_new;
        return out;
    }
    const RatVec& v0 = *spec.fiber.v0;
    // Gamma = hamiltonian field of ell = sum v0_i zeta_i; Delta = Euler field
    Poly ell = Poly::zero(ambient);
    for (int i = 0; i < n; ++i) ell += Poly::variable(ambient, nx + i) * v0[i];
    PolyTensor Gamma(ambient, 1, Variance::multivector);
    for (int c = 0; c < ambient.dim(); ++c)
        Gamma.add_component({c}, PolyTensor::bivector_eval(Pi, ell, Poly::variable(ambient, c)));
    PolyTensor Delta(ambient, 1, Variance::multivector);
    for (int i = 0; i < n; ++i)
        Delta.add_component({nx + i}, Poly::variable(ambient, nx + i));
    PolyTensor Pi_J = Pi + Gamma.wedge(Delta);

    // centrality of v0 decides the Poisson tag
    bool central = true;
    {
        AffSectionCoeffs v0c(n, Poly::zero(spec.base));
        for (int i = 0; i < n; ++i) v0c[i] = Poly::constant(spec.base, v0[i]);
        if (!anchor_of(spec, v0c).is_zero()) central = false;
        for (int i = 0; i < n && central; ++i) {
            AffSectionCoeffs gi(n, Poly::zero(spec.base));
            gi[i] = Poly::one(spec.base);
            for (const auto& c : hull_bracket(spec, gi, v0c))
                if (!c.is_zero()) central = false;
        }
    }

    // restrict to the affine hyperplane ell = 1: coordinates (theta_{i != k},
    // c = ell), then substitute c = 1
    int kpiv = -1;
    for (int i = 0; i < n && kpiv < 0; ++i)
        if (!v0[i].is_zero()) kpiv = i;
    std::vector<std::string> theta_names = spec.base.names();
    for (int i = 0; i < n; ++i)
        if (i != kpiv) theta_names.push_back(zeta_names[i]);
    theta_names.push_back("c_level");
    Chart theta_chart(theta_names);
    // maps between (x, zeta) and (x, theta, c)
    std::vector<Poly> zeta_in_theta, theta_in_zeta;
    {
        for (int a = 0; a < nx; ++a) zeta_in_theta.push_back(Poly::variable(theta_chart, a));
        // zeta_i = theta_i (i != k); zeta_k = (c - sum_{i != k} v0_i theta_i)/v0_k
        Poly zk = Poly::variable(theta_chart, theta_chart.dim() - 1);
        int pos = nx;
        std::vector<Poly> theta_vars;
        for (int i = 0; i < n; ++i) {
            if (i == kpiv) continue;
            theta_vars.push_back(Poly::variable(theta_chart, pos));
            zk -= Poly::variable(theta_chart, pos) * v0[i];
            ++pos;
        }
        zk = zk * (Rational(1) / v0[kpiv]);
        pos = 0;
        for (int i = 0; i < n; ++i) {
            if (i == kpiv)
                zeta_in_theta.push_back(zk);
            else
                zeta_in_theta.push_back(theta_vars[pos++]);
        }
        for (int a = 0; a < nx; ++a) theta_in_zeta.push_back(Poly::variable(ambient, a));
        for (int i = 0; i < n; ++i)
            if (i != kpiv) theta_in_zeta.push_back(Poly::variable(ambient, nx + i));
        theta_in_zeta.push_back(ell);
    }
    PolyTensor PiJ_theta = Pi_J.change_chart(theta_chart, zeta_in_theta, theta_in_zeta);
    PolyTensor Gamma_theta = Gamma.change_chart(theta_chart, zeta_in_theta, theta_in_zeta);
    int ci = theta_chart.dim() - 1;
    // drop the c coordinate on the level set c = 1
    std::vector<std::string> slice_names(theta_names.begin(), theta_names.end() - 1);
    Chart slice(slice_names);
    std::vector<Poly> slice_imgs;
    for (int i = 0; i < ci; ++i) slice_imgs.push_back(Poly::variable(slice, i));
    slice_imgs.push_back(Poly::one(slice));
    auto restrict_tensor = [&](const PolyTensor& t) {
        PolyTensor r(slice, t.degree(), t.variance());
        for (const auto& [I, c] : t.components()) {
            bool tangent = true;
            for (int idx : I)
                if (idx == ci) tangent = false;
            Poly val = c.rewrite(slice, slice_imgs);
            if (!tangent) {
                if (!val.is_zero())
                    throw std::domain_error(
                        "from_affgebroid: tensors not tangent to the level set");
                continue;
            }
            r.add_component(I, val);
        }
        return r;
    };
    PolyTensor PiJ_slice = restrict_tensor(PiJ_theta);
    PolyTensor Gamma_slice = restrict_tensor(Gamma_theta);

    // AV split of the slice along the one-direction; theta_i = zeta_i, so the
    // direction simply keeps its components away from the pivot (it is
    // tangent to the level set since one(v0) = 0)
    RatVec w_theta;
    for (int i = 0; i < n; ++i)
        if (i != kpiv) w_theta.push_back(w[i]);
    std::vector<std::string> slice_zeta(slice_names.begin() + nx, slice_names.end());
    auto sh = av_split(spec.base, slice_zeta, w_theta, "ssharp");
    std::vector<Poly> sh_new_in_old, sh_old_in_new;
    {
        int m = (int)slice_zeta.size();
        int pivot = -1;
        for (int i = 0; i < m && pivot < 0; ++i)
            if (!w_theta[i].is_zero()) pivot = i;
        if (pivot < 0) throw std::domain_error("from_affgebroid: one-direction lost");
        for (int a = 0; a < nx; ++a) sh_new_in_old.push_back(Poly::variable(slice, a));
        for (int i = 0; i < m; ++i) {
            if (i == pivot) continue;
            sh_new_in_old.push_back(Poly::variable(slice, nx + i) -
                                    Poly::variable(slice, nx + pivot) *
                                        (w_theta[i] / w_theta[pivot]));
        }
        sh_new_in_old.push_back(Poly::variable(slice, nx + pivot) *
                                (Rational(-1) / w_theta[pivot]));
        for (int a = 0; a < nx; ++a) sh_old_in_new.push_back(Poly::variable(sh.av.chart, a));
        for (const auto& z : sh.zeta_in_av) sh_old_in_new.push_back(z);
    }
    PolyTensor Pi_sharp = PiJ_slice.change_chart(sh.av.chart, sh_old_in_new, sh_new_in_old);
    PolyTensor Gamma_sharp = Gamma_slice.change_chart(sh.av.chart, sh_old_in_new, sh_new_in_old);
    AffStructure sharp = from_invariant_tensors(sh.av, {Pi_sharp, Gamma_sharp});

    InducedStructures out(dagger, sharp);
    out.has_sharp = true;
    out.sharp_is_poisson = central;
    if (central && sharp.kind != StructKind::poisson)
        throw std::domain_error("from_affgebroid: central v0 must induce a Poisson structure");
    out.ambient = ambient;
    out.dag_amb_in_av = old_in_new;
    // ambient -> sharp chart: through the theta coordinates and the slice
    {
        std::vector<Poly> theta_to_av;
        for (int a = 0; a < nx; ++a) theta_to_av.push_back(Poly::variable(sh.av.chart, a));
        for (const auto& z : sh.zeta_in_av) theta_to_av.push_back(z);
        theta_to_av.push_back(Poly::one(sh.av.chart)); // the level c = 1
        std::vector<Poly> amb_in_sharp;
        for (int a = 0; a < nx; ++a) amb_in_sharp.push_back(Poly::variable(sh.av.chart, a));
        for (int i = 0; i < n; ++i)
            amb_in_sharp.push_back(zeta_in_theta[nx + i].rewrite(sh.av.chart, theta_to_av));
        out.sharp_amb_in_av = amb_in_sharp;
    }
    return out;
}

} // namespace avgeo
