#pragma once

#include <cmath>
#include <fstream>
#include <functional>

#include "avgeo/avbrackets.hpp"

namespace avgeo {

/// Newtonian spacetime data: the absolute-time covector tau on the model
/// space of a 4-dimensional affine spacetime, a euclidean metric g on
/// ker(tau) expressed in a chosen basis, and a particle mass.
struct NewtonSpacetime {
    RatVec tau;      // covector on Q^4
    RatMat e0_basis; // 4 x 3 basis of ker(tau)
    RatMat g;        // 3 x 3 symmetric positive definite
    Rational mass;

    void validate() const {
        if (tau.size() != 4 || e0_basis.rows() != 4 || e0_basis.cols() != 3 ||
            g.rows() != 3 || g.cols() != 3)
            throw std::invalid_argument("NewtonSpacetime: shape mismatch");
        if (is_zero(tau)) throw std::invalid_argument("NewtonSpacetime: tau vanishes");
        if (!(mass > Rational(0))) throw std::invalid_argument("NewtonSpacetime: mass <= 0");
        for (int j = 0; j < 3; ++j)
            if (!dot(tau, e0_basis.col(j)).is_zero())
                throw std::invalid_argument("NewtonSpacetime: basis not in ker(tau)");
        if (!(g == g.transpose()))
            throw std::invalid_argument("NewtonSpacetime: metric not symmetric");
        // leading principal minors positive (exact Sylvester test)
        RatMat m = g;
        Rational d1 = m(0, 0);
        Rational d2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        Rational d3 = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                      m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                      m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        if (!(d1 > Rational(0)) || !(d2 > Rational(0)) || !(d3 > Rational(0)))
            throw std::invalid_argument("NewtonSpacetime: metric not positive definite");
    }

    static NewtonSpacetime standard(const RatMat& metric, const Rational& mass) {
        NewtonSpacetime st;
        st.tau = RatVec{Rational(1), Rational(0), Rational(0), Rational(0)};
        st.e0_basis = RatMat(4, 3);
        for (int j = 0; j < 3; ++j) st.e0_basis(1 + j, j) = 1;
        st.g = metric;
        st.mass = mass;
        st.validate();
        return st;
    }

    /// Coordinates of a ker(tau) vector in the chosen basis.
    RatVec e0_coords(const RatVec& v) const {
        auto x = solve(e0_basis, v);
        if (!x) throw std::invalid_argument("NewtonSpacetime: vector not in ker(tau)");
        return *x;
    }
};

/// A momentum-plus-action value in a chosen inertial frame u (tau(u) = 1):
/// the covector p on ker(tau) and the scalar slot s.
struct FramedMomentum {
    RatVec u; // frame, tau(u) = 1
    RatVec p; // covector coordinates on the e0 basis
    Rational s;
};

/// Re-expresses a framed momentum in another inertial frame. The relation is
/// transitive and symmetric, and it keeps the standard kinetic-plus-potential
/// hamiltonian well defined as a section:
///   p' = p + m g(u - u'),  s' = s + <p, u - u'> + m/2 <g(u-u'), u-u'>.
inline FramedMomentum frame_change(const NewtonSpacetime& st, const FramedMomentum& fm,
                                   const RatVec& u_new) {
    if (!dot(st.tau, u_new).is_one())
        throw std::invalid_argument("frame_change: tau(u') != 1");
    RatVec delta = fm.u - u_new; // in ker(tau)
    RatVec w = st.e0_coords(delta);
    RatVec gw = st.g * w;
    FramedMomentum out;
    out.u = u_new;
    out.p = fm.p + st.mass * gw;
    out.s = fm.s + dot(fm.p, w) + Rational(1, 2) * st.mass * dot(gw, w);
    return out;
}

/// Adapted spacetime chart (x0, x1, x2, x3) of a frame.
inline Chart newton_base_chart() { return Chart({"x0", "x1", "x2", "x3"}); }

/// Phase chart (x0..x3, p1..p3) adapted to a frame.
inline Chart newton_phase_chart() {
    return Chart({"x0", "x1", "x2", "x3", "p1", "p2", "p3"});
}

/// The affgebroid of frame classes of velocity sections: generators are the
/// constant sections through u, u + b_i and the unit scalar slot; brackets of
/// the constant generators vanish and the anchors express the velocities in
/// the adapted chart.
inline AffgebroidSpec newton_affgebroid(const NewtonSpacetime& st) {
    st.validate();
    Chart base = newton_base_chart();
    HullSpace fiber;
    fiber.hull_dim = 5;
    fiber.one = RatVec(5, Rational(1));
    // The momentum classes pair to -1 against the scalar-slot direction, so
    // the distinguished vector carries the adjoint orientation; this puts the
    // momentum functionals on the +1 level where the dual machinery lives.
    RatVec v0(5);
    v0[0] = 1;
    v0[4] = -1;
    fiber.v0 = v0;
    fiber.label = "NewtonA";
    AffgebroidSpec s = AffgebroidSpec::empty(base, fiber, "newton");
    // anchors in the adapted chart where the frame is d/dx0 and b_i = d/dx^i
    s.anchor[0][0] = Poly::one(base);
    for (int i = 1; i <= 3; ++i) {
        s.anchor[i][0] = Poly::one(base);
        s.anchor[i][i] = Poly::one(base);
    }
    s.anchor[4][0] = Poly::one(base);
    return s;
}

/// Hull coefficients of the section [u, u + X^i b_i, r].
inline AffSectionCoeffs newton_section(const AffgebroidSpec& spec, const std::vector<Poly>& Xi,
                                       const Poly& r) {
    AffSectionCoeffs c(5, Poly::zero(spec.base));
    Poly rest = Poly::one(spec.base) - r;
    for (int i = 0; i < 3; ++i) {
        c[1 + i] = Xi[i];
        rest -= Xi[i];
    }
    c[0] = rest;
    c[4] = r;
    return c;
}

/// The equations-of-motion generator: the hamiltonian field of the section
/// determined by h(x, p) through the bracket structure the affgebroid induces
/// on the dual; returned on the (x0..x3, p1..p3) chart.
inline PolyTensor newton_dynamics(const NewtonSpacetime& st, const Poly& h) {
    Chart phase = newton_phase_chart();
    require_same_chart(h.chart(), phase, "newton_dynamics");
    AffgebroidSpec spec = newton_affgebroid(st);
    InducedStructures ind = from_affgebroid(spec);
    if (!ind.sharp_is_poisson)
        throw std::domain_error("newton_dynamics: scalar slot is not central");
    const AffStructure& S = ind.sharp;
    const AVChart& av = S.bundle;

    // Dictionary between the machine chart and (p, s): the dual coordinates
    // of the class [u, p, s] are zeta_0 = s, zeta_i = p_i + s, zeta_4 = s - 1.
    // Solve the affine system relating them to the machine AV coordinates.
    int n = 5, nx = spec.base.dim();
    int m_extra = av.chart.dim() - nx; // eta coordinates plus the fiber
    // machine side: zeta_i = A m + a with m the extra machine coordinates
    RatMat A(n, m_extra);
    RatVec a(n);
    for (int i = 0; i < n; ++i) {
        const Poly& zi = ind.sharp_amb_in_av[nx + i];
        for (const auto& [e, cc] : zi.terms()) {
            int which = -1, total = 0;
            for (int k = 0; k < av.chart.dim(); ++k) {
                total += e[k];
                if (e[k] == 1) which = k;
            }
            if (total == 0) {
                a[i] = cc;
            } else if (total == 1 && which >= nx) {
                A(i, which - nx) = cc;
            } else {
                throw std::domain_error("newton_dynamics: nonlinear dual coordinates");
            }
        }
    }
    // (p, s) side: zeta = B (p1,p2,p3,s) + b
    RatMat B(n, 4);
    RatVec bb(n);
    B(0, 3) = 1;
    for (int i = 1; i <= 3; ++i) {
        B(i, i - 1) = 1;
        B(i, 3) = 1;
    }
    B(4, 3) = 1;
    bb[4] = -1;
    // m = A^+ (B (p,s) + b - a): solve column by column
    RatMat M(m_extra, 4);
    RatVec mconst(m_extra);
    {
        for (int j = 0; j < 4; ++j) {
            auto x = solve(A, B.col(j));
            if (!x) throw std::domain_error("newton_dynamics: dictionary solve failed");
            for (int i = 0; i < m_extra; ++i) M(i, j) = (*x)[i];
        }
        auto x = solve(A, bb - a);
        if (!x) throw std::domain_error("newton_dynamics: dictionary solve failed");
        mconst = *x;
    }
    // base part of the machine coordinates as affine functions of (x, p):
    // eta_k = M[k] . (p, s) + const must be s-free for k < m_extra - 1
    Chart av_base = av.base;
    int n_eta = m_extra - 1;
    // p_i as affine functions of the eta's: invert the eta <-> p block
    RatMat E(n_eta, 3);
    RatVec e0(n_eta);
    for (int k = 0; k < n_eta; ++k) {
        if (!M(k, 3).is_zero())
            throw std::domain_error("newton_dynamics: eta coordinates depend on s");
        for (int j = 0; j < 3; ++j) E(k, j) = M(k, j);
        e0[k] = mconst[k];
    }
    RatMat Einv = inverse(E); // eta count equals 3
    // sigma_h: the fiber value as a polynomial on the machine base
    std::vector<Poly> p_of_eta(3, Poly::zero(av_base));
    for (int j = 0; j < 3; ++j) {
        Poly acc = Poly::zero(av_base);
        for (int k = 0; k < 3; ++k)
            acc += (Poly::variable(av_base, nx + k) - Poly::constant(av_base, e0[k])) *
                   Einv(j, k);
        p_of_eta[j] = acc;
    }
    std::vector<Poly> h_images;
    for (int a2 = 0; a2 < nx; ++a2) h_images.push_back(Poly::variable(av_base, a2));
    for (int j = 0; j < 3; ++j) h_images.push_back(p_of_eta[j]);
    Poly h_on_base = h.rewrite(av_base, h_images);
    Poly sigma_value = Poly::constant(av_base, mconst[n_eta]);
    for (int j = 0; j < 3; ++j) sigma_value += p_of_eta[j] * M(n_eta, j);
    // The scalar slot of a momentum class is an action-type variable: the
    // hamiltonian section fills it with the adjoint orientation, exactly as
    // the time-dependent setup stores -H in the extended momentum slot.
    sigma_value -= h_on_base * M(n_eta, 3);

    PolyTensor field = hamiltonian_field(S, AVSection(av, sigma_value));

    // transport the field to the (x, p) phase chart
    std::vector<Poly> old_in_new, new_in_old; // old = machine base, new = phase
    for (int a2 = 0; a2 < nx; ++a2) {
        old_in_new.push_back(Poly::variable(phase, a2));
        new_in_old.push_back(Poly::variable(av_base, a2));
    }
    for (int k = 0; k < n_eta; ++k) {
        Poly img = Poly::constant(phase, e0[k]);
        for (int j = 0; j < 3; ++j) img += Poly::variable(phase, nx + j) * E(k, j);
        old_in_new.push_back(img);
    }
    for (int j = 0; j < 3; ++j) new_in_old.push_back(p_of_eta[j]);
    return field.change_chart(phase, old_in_new, new_in_old);
}

/// The kinetic-plus-potential hamiltonian <p, g^{-1} p>/2m + phi(x) on the
/// adapted phase chart.
inline Poly newton_hamiltonian(const NewtonSpacetime& st, const Poly& potential) {
    Chart phase = newton_phase_chart();
    require_same_chart(potential.chart(), phase, "newton_hamiltonian");
    RatMat ginv = inverse(st.g);
    Poly h = potential;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            h += Poly::variable(phase, 4 + i) * Poly::variable(phase, 4 + j) *
                 (ginv(i, j) / (Rational(2) * st.mass));
    return h;
}

// ---------------------------------------------------------------------------
// Time-dependent mechanics over a product spacetime.
// ---------------------------------------------------------------------------

/// Chart (q..., p..., t) for n degrees of freedom.
inline Chart timedep_chart(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    names.push_back("t");
    return Chart(names);
}

/// Dynamics of a time-dependent hamiltonian, generated through the bracket
/// structure on the quotient of the extended cotangent chart (never by adding
/// the time direction by hand): the drift appears as the X0 part of the
/// structure.
inline PolyTensor timedep_dynamics(const Poly& H) {
    const Chart& c = H.chart();
    int n = (c.dim() - 1) / 2;
    if (c.dim() != 2 * n + 1) throw std::invalid_argument("timedep_dynamics: odd chart");
    AVChart Z(c, "neg_pt"); // fiber coordinate s = -p_t
    // the extended Poisson tensor in the AV coordinates
    PolyTensor pi(Z.chart, 2, Variance::multivector);
    for (int i = 0; i < n; ++i)
        pi.add_component({i, n + i}, -Poly::one(Z.chart)); // d/dp ^ d/dq
    // d/dp_t ^ d/dt = (-d/ds) ^ d/dt = +d/dt ^ d/ds
    pi.add_component({2 * n, 2 * n + 1}, Poly::one(Z.chart));
    AffStructure S =
        from_invariant_tensors(Z, {pi, PolyTensor(Z.chart, 1, Variance::multivector)});
    return hamiltonian_field(S, AVSection(Z, H));
}

/// Reference construction on the extended chart: the hamiltonian field of
/// H + p_t with respect to the full cotangent Poisson structure, projected to
/// (q, p, t). Used as the comparison oracle for timedep_dynamics.
inline PolyTensor timedep_extended_route(const Poly& H) {
    const Chart& c = H.chart();
    int n = (c.dim() - 1) / 2;
    std::vector<std::string> names = c.names();
    names.push_back("pt");
    Chart ext(names);
    std::vector<Poly> lift;
    for (int i = 0; i < c.dim(); ++i) lift.push_back(Poly::variable(ext, i));
    Poly F = H.rewrite(ext, lift) + Poly::variable(ext, 2 * n + 1);
    // X_F = Lambda(dF, .) with Lambda = d/dp ^ d/dq + d/dpt ^ d/dt
    PolyTensor lambda(ext, 2, Variance::multivector);
    for (int i = 0; i < n; ++i) lambda.add_component({i, n + i}, -Poly::one(ext));
    lambda.add_component({2 * n, 2 * n + 1}, -Poly::one(ext));
    PolyTensor X(ext, 1, Variance::multivector);
    for (int i = 0; i < ext.dim(); ++i)
        X.add_component({i}, PolyTensor::bivector_eval(lambda, F, Poly::variable(ext, i)));
    // project: F is affine in pt, so no component involves pt
    PolyTensor r(c, 1, Variance::multivector);
    std::vector<Poly> back;
    for (int i = 0; i < c.dim(); ++i) back.push_back(Poly::variable(c, i));
    back.push_back(Poly::zero(c));
    for (const auto& [I, v] : X.components()) {
        if (I[0] == 2 * n + 1) continue; // drop the pt direction
        if (v.depends_on(2 * n + 1))
            throw std::domain_error("timedep_extended_route: field not projectable");
        r.add_component(I, v.rewrite(c, back));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Charged-particle phase model.
// ---------------------------------------------------------------------------

struct ChargedSetup {
    Rational e;              // charge
    std::vector<Poly> alpha; // potential 1-form coefficients on the base chart
    Rational mass;
};

/// Phase model of a charged particle: the affine phase chart with its
/// symplectic form, the constraint cutting the reduced level set out of the
/// extended cotangent chart, and the scaling data of the charge map.
struct ChargedPhaseModel {
    AVChart bundle;   // (x, s)
    Chart phase;      // (x, p)
    PolyTensor omega; // dp ^ dx
    Chart tstar;      // (x, s, p_x..., p_s)
    Poly constraint;  // p_s - e; the level set of the momentum pairing
};

inline ChargedPhaseModel charged_phase_model(const ChargedSetup& cs, const Chart& base) {
    ChargedPhaseModel m;
    m.bundle = AVChart(base, "s");
    m.phase = m.bundle.phase_chart();
    m.omega = phase_symplectic(m.bundle);
    std::vector<std::string> names = m.bundle.chart.names();
    for (const auto& nme : m.bundle.chart.names()) names.push_back("p_" + nme);
    m.tstar = Chart(names);
    // <p, X_Z> = -p_s, so the level set is p_s = e
    m.constraint = Poly::variable(m.tstar, m.tstar.dim() - 1) - Poly::constant(m.tstar, cs.e);
    return m;
}

/// Fiber value of the pulled-back section on the charge-e quotient: for a
/// section with trivialized value sigma0, the function e (s - sigma0(x)) on Z
/// has fundamental derivative -e.
inline Poly charged_section_pullback(const ChargedSetup& cs, const AVChart& Z,
                                     const Poly& sigma0) {
    Poly s = Poly::variable(Z.chart, Z.fiber_index());
    return (s - Z.lift(sigma0)) * cs.e;
}

/// Relativistic lagrangian value <alpha_e, v> + m sqrt(g(v,v)); only defined
/// on timelike arguments g(v,v) > 0.
inline double charged_lagrangian(const ChargedSetup& cs, const std::vector<double>& alpha_at_x,
                                 const std::vector<std::vector<double>>& metric,
                                 const std::vector<double>& v) {
    double quad = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) quad += metric[i][j] * v[i] * v[j];
    if (!(quad > 0)) throw std::domain_error("charged_lagrangian: g(v,v) <= 0");
    double lin = 0;
    for (size_t i = 0; i < v.size(); ++i) lin += alpha_at_x[i] * v[i];
    return lin + cs.mass.to_double() * std::sqrt(quad);
}

// ---------------------------------------------------------------------------
// Fixed-step trajectory integration.
// ---------------------------------------------------------------------------

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

using FieldCallback = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Classical fourth-order Runge-Kutta with a fixed step.
inline Trajectory integrate(const FieldCallback& f, std::vector<double> state, double dt,
                            int steps) {
    if (!(dt > 0)) throw std::invalid_argument("integrate: dt must be positive");
    if (steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
    size_t dim = state.size();
    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(state);
    auto axpy = [&](const std::vector<double>& x, const std::vector<double>& k, double h) {
        std::vector<double> r(dim);
        for (size_t i = 0; i < dim; ++i) r[i] = x[i] + h * k[i];
        return r;
    };
    double t = 0;
    for (int n = 0; n < steps; ++n) {
        auto k1 = f(t, state);
        auto k2 = f(t + dt / 2, axpy(state, k1, dt / 2));
        auto k3 = f(t + dt / 2, axpy(state, k2, dt / 2));
        auto k4 = f(t + dt, axpy(state, k3, dt));
        for (size_t i = 0; i < dim; ++i)
            state[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += dt;
        for (double v : state)
            if (!std::isfinite(v)) throw std::domain_error("integrate: state not finite");
        tr.times.push_back(t);
        tr.states.push_back(state);
    }
    return tr;
}

/// Evaluates a polynomial vector field as a callback.
inline FieldCallback field_callback(const PolyTensor& field) {
    if (field.degree() != 1 || field.variance() != Variance::multivector)
        throw std::invalid_argument("field_callback: needs a vector field");
    int dim = field.chart().dim();
    std::vector<Poly> comps;
    for (int i = 0; i < dim; ++i) comps.push_back(field.component({i}));
    return [comps, dim](double, const std::vector<double>& x) {
        std::vector<double> r(dim);
        for (int i = 0; i < dim; ++i) r[i] = comps[i].eval_double(x);
        return r;
    };
}

inline void write_csv(std::ostream& os, const Chart& chart, const Trajectory& tr) {
    os << "t";
    for (const auto& n : chart.names()) os << "," << n;
    os << "\n";
    os.setf(std::ios::fmtflags(0), std::ios::floatfield);
    os.precision(15);
    for (size_t i = 0; i < tr.times.size(); ++i) {
        os << tr.times[i];
        for (double v : tr.states[i]) os << "," << v;
        os << "\n";
    }
}

} // namespace avgeo
