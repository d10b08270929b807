#pragma once

#include <filesystem>
#include <fstream>
#include <random>

#include "avgeo/engine.hpp"

namespace avgeo::verify {

namespace detail_verify {

inline Poly random_poly(const Chart& c, int deg, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    Poly p = Poly::zero(c);
    std::vector<int> e(c.dim());
    std::function<void(int, int)> walk = [&](int pos, int remaining) {
        if (pos == c.dim()) {
            int num = coef(rng);
            if (num != 0 && rng() % 3 == 0) p += Poly::monomial(c, e, Rational(num, den(rng)));
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[pos] = k;
            walk(pos + 1, remaining - k);
        }
        e[pos] = 0;
    };
    walk(0, deg);
    return p;
}

inline HullSpace sample_special_affine(int dim, const std::string& label) {
    HullSpace a;
    a.hull_dim = dim + 1;
    RatVec one(a.hull_dim);
    one[0] = 1;
    for (int j = 1; j < a.hull_dim; ++j) one[j] = Rational(j, 2);
    a.one = one;
    RatMat mb = [&] {
        RatMat row(1, a.hull_dim);
        for (int j = 0; j < a.hull_dim; ++j) row(0, j) = one[j];
        return kernel_basis(row);
    }();
    a.v0 = mb.col(mb.cols() - 1);
    a.label = label;
    a.validate();
    return a;
}

} // namespace detail_verify

/// Criterion 1: duality witnesses for all theorems, dims 1..4 round trips.
inline Report criterion_duality() {
    using detail_verify::sample_special_affine;
    Report rep;
    rep.suite = "duality";
    for (int dim = 1; dim <= 4; ++dim) {
        HullSpace a = sample_special_affine(dim, "A");
        HullSpace dd = vector_dual(vector_dual(a));
        bool ok1 = dd.hull_dim == a.hull_dim && *dd.one == *a.one && *dd.v0 == *a.v0;
        IsoWitness w1{{a, dd, RatMat::identity(a.hull_dim)},
                      {dd, a, RatMat::identity(a.hull_dim)}};
        rep.add("vector dual round trip, dim " + std::to_string(dim), ok1 && w1.verify());
        HullSpace ss = special_dual(special_dual(a));
        bool ok2 = *ss.one == *a.one && *ss.v0 == *a.v0;
        IsoWitness w2{{a, ss, RatMat::identity(a.hull_dim)},
                      {ss, a, RatMat::identity(a.hull_dim)}};
        rep.add("special dual round trip, dim " + std::to_string(dim), ok2 && w2.verify());
    }
    const char* names[] = {"product_hull",       "sum_hull",
                           "product_dual",       "sum_dual",
                           "reduced_product_dual", "sa_product_dual",
                           "sa_sum_dual",        "specialization_dual",
                           "specialization_hull", "specialization_sum",
                           "specialization_product"};
    DualityId ids[] = {DualityId::product_hull,         DualityId::sum_hull,
                       DualityId::product_dual,         DualityId::sum_dual,
                       DualityId::reduced_product_dual, DualityId::sa_product_dual,
                       DualityId::sa_sum_dual,          DualityId::specialization_dual,
                       DualityId::specialization_hull,  DualityId::specialization_sum,
                       DualityId::specialization_product};
    for (int d1 = 1; d1 <= 2; ++d1)
        for (int d2 = 1; d2 <= 2; ++d2) {
            HullSpace a1 = sample_special_affine(d1, "A1");
            HullSpace a2 = sample_special_affine(d2, "A2");
            for (int k = 0; k < 11; ++k) {
                DualityResult r = verify_duality(ids[k], a1, a2);
                rep.add(std::string(names[k]) + " dims " + std::to_string(d1) + "," +
                            std::to_string(d2),
                        r.ok, r.ok ? std::nullopt : std::optional(r.detail));
            }
        }
    return rep;
}

/// Criterion 2: tensor dimension formulas.
inline Report criterion_dimensions() {
    using detail_verify::sample_special_affine;
    Report rep;
    rep.suite = "dimensions";
    for (int d1 = 1; d1 <= 2; ++d1)
        for (int d2 = 1; d2 <= 2; ++d2) {
            HullSpace x = sample_special_affine(d1, "X");
            HullSpace y = sample_special_affine(d2, "Y");
            Construction t2 = categorial_construct(ConstructKind::a_tensor, x, y);
            rep.add("affine tensor dim " + std::to_string(d1) + "," + std::to_string(d2),
                    t2.space.dim() == (d1 + 1) * (d2 + 1) - 1);
            Construction s2 = categorial_construct(ConstructKind::sa_tensor, x, y);
            rep.add("special tensor dim " + std::to_string(d1) + "," + std::to_string(d2),
                    s2.space.dim() == d1 * d2);
            for (int d3 = 1; d3 <= 2; ++d3) {
                HullSpace z = sample_special_affine(d3, "Z");
                Construction t3 = categorial_construct(ConstructKind::a_tensor, t2.space, z);
                rep.add("affine tensor dim " + std::to_string(d1) + "," + std::to_string(d2) +
                            "," + std::to_string(d3),
                        t3.space.dim() == (d1 + 1) * (d2 + 1) * (d3 + 1) - 1);
                Construction s3 = categorial_construct(ConstructKind::sa_tensor, s2.space, z);
                rep.add("special tensor dim " + std::to_string(d1) + "," + std::to_string(d2) +
                            "," + std::to_string(d3),
                        s3.space.dim() == d1 * d2 * d3);
            }
        }
    return rep;
}

/// Criterion 3: fiberwise bracket identities on random polynomial data.
inline Report criterion_av_identities() {
    using detail_verify::random_poly;
    Report rep;
    rep.suite = "av-identities";
    AVChart Z(Chart({"x", "y"}), "s");
    std::mt19937 rng(101);
    Poly s = Poly::variable(Z.chart, Z.fiber_index());
    bool diff_ok = true, pairing = true, affine_fun = true;
    for (int rep_i = 0; rep_i < 50; ++rep_i) {
        Poly sig = random_poly(Z.base, 3, rng), sig2 = random_poly(Z.base, 3, rng);
        if (vertical_jacobi(Z, f_map({Z, sig}), f_map({Z, sig2})) != Z.lift(sig - sig2))
            diff_ok = false;
        Poly alpha = Z.lift(random_poly(Z.base, 3, rng));
        Poly beta = Z.lift(random_poly(Z.base, 3, rng));
        Poly c = Z.lift(random_poly(Z.base, 3, rng));
        Rational lam(int(rng() % 7) - 3, 1 + int(rng() % 2));
        if (vertical_jacobi(Z, alpha * s + beta, c - lam * s) != alpha * c + lam * beta)
            pairing = false;
        Poly a2 = Z.lift(random_poly(Z.base, 2, rng)), b2 = Z.lift(random_poly(Z.base, 2, rng));
        if (vertical_jacobi(Z, alpha * s + beta, a2 * s + b2) != alpha * b2 - a2 * beta)
            affine_fun = false;
    }
    rep.add("difference identity {F_sigma, F_sigma'} = sigma - sigma' (50 samples)", diff_ok);
    rep.add("pairing identity {phi, F_u} = <phi, u> (50 samples)", pairing);
    rep.add("affine-function bracket alpha beta' - alpha' beta (50 samples)", affine_fun);
    return rep;
}

/// Criterion 4: phase and contact structures.
inline Report criterion_phase_contact() {
    using detail_verify::random_poly;
    Report rep;
    rep.suite = "phase-contact";
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        AVChart Z(Chart(names), "s");
        ContactStructure cs = contact_structure(Z);
        AVChart over_phase(cs.phase, Z.fiber);
        rep.add("d theta = omega, base dim " + std::to_string(n),
                affine_differential(AffOneForm(over_phase, cs.theta)) == phase_symplectic(Z));
    }
    AVChart Z(Chart({"x1", "x2"}), "s");
    std::mt19937 rng(103);
    bool curvature = true;
    for (int i = 0; i < 20; ++i) {
        std::vector<Poly> cf;
        for (int a = 0; a < Z.base.dim(); ++a) cf.push_back(random_poly(Z.base, 2, rng));
        AffOneForm alpha(Z, cf);
        if (!(connection_form(alpha).de_rham() ==
              pullback_to_total(Z, affine_differential(alpha))))
            curvature = false;
    }
    rep.add("curvature identity dF_alpha = pullback(d alpha) (20 samples)", curvature);
    ContactStructure cs = contact_structure(Z);
    auto [d1, d2] = jacobi_pair_defect(cs.lambda, cs.gamma);
    rep.add("contact pair satisfies the Jacobi conditions (sign pin)",
            d1.is_zero() && d2.is_zero());
    bool cbr_ok = true;
    for (int i = 0; i < 50; ++i) {
        Poly f = random_poly(cs.contact, 2, rng), g = random_poly(cs.contact, 2, rng);
        if (contact_jacobi(cs, f, g) != pair_bracket(cs.lambda, cs.gamma, f, g)) cbr_ok = false;
    }
    rep.add("contact bracket matches the tensor pair (50 samples)", cbr_ok);
    return rep;
}

/// Criterion 5: operator algebroid identities.
inline Report criterion_algebroids() {
    using detail_verify::random_poly;
    Report rep;
    rep.suite = "algebroids";
    AVChart Z(Chart({"x", "y"}), "s");
    std::mt19937 rng(107);
    auto rnd_section = [&](int deg) {
        std::vector<Poly> X;
        for (int a = 0; a < Z.base.dim(); ++a) X.push_back(random_poly(Z.base, deg, rng));
        return RZSection(Z, X, random_poly(Z.base, deg, rng), random_poly(Z.base, deg, rng),
                         random_poly(Z.base, deg, rng));
    };
    // commutator oracle on the separating basis
    bool oracle_ok = true;
    for (int i = 0; i < 12; ++i) {
        RZSection r1 = rnd_section(2), r2 = rnd_section(2);
        RZSection b = rz_bracket(r1, r2);
        Poly one = Poly::one(Z.chart), s = Poly::variable(Z.chart, Z.fiber_index());
        std::vector<Poly> basis{one, s};
        for (int a = 0; a < Z.base.dim(); ++a) {
            basis.push_back(Poly::variable(Z.chart, a));
            basis.push_back(Poly::variable(Z.chart, a) * s);
        }
        for (const auto& h : basis) {
            Poly lhs = b.apply(h);
            Poly rhs = r1.apply(r2.apply(h)) - r2.apply(r1.apply(h));
            if (lhs != rhs) oracle_ok = false;
        }
    }
    rep.add("decomposed bracket equals the operator commutator on the separating basis",
            oracle_ok);
    bool jacobi_ok = true;
    for (int i = 0; i < 20; ++i) {
        RZSection a = rnd_section(2), b = rnd_section(2), c = rnd_section(2);
        RZSection jac = rz_bracket(a, rz_bracket(b, c)) + rz_bracket(b, rz_bracket(c, a)) +
                        rz_bracket(c, rz_bracket(a, b));
        if (!(jac == RZSection::zero(Z))) jacobi_ok = false;
    }
    rep.add("Jacobi identity on 20 random triples", jacobi_ok);
    bool ideal_ok = true;
    RZSection xrz(Z, {Poly::zero(Z.base), Poly::zero(Z.base)}, Poly::zero(Z.base),
                  Poly::one(Z.base), Poly::zero(Z.base));
    for (int i = 0; i < 10; ++i) {
        RZSection r = rnd_section(2);
        RZSection lhs = rz_bracket(r, xrz);
        RZSection rhs = xrz;
        RZSection scaled(Z, {Poly::zero(Z.base), Poly::zero(Z.base)}, Poly::zero(Z.base),
                         phi0(r), Poly::zero(Z.base));
        if (!(lhs == scaled)) ideal_ok = false;
        (void)rhs;
    }
    rep.add("ideal-section identity [R, X] = phi0(R) X", ideal_ok);
    // membership table under brackets
    bool table_ok = true;
    Poly zero = Poly::zero(Z.base), one = Poly::one(Z.base);
    for (int i = 0; i < 10; ++i) {
        RZSection t1(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, zero,
                     random_poly(Z.base, 2, rng), zero);
        RZSection t2(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, zero,
                     random_poly(Z.base, 2, rng), zero);
        if (!subbundle_membership(rz_bracket(t1, t2)).count(Subbundle::TtildeZ))
            table_ok = false;
        RZSection b1(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, -one,
                     random_poly(Z.base, 2, rng), zero);
        RZSection b2(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, -one,
                     random_poly(Z.base, 2, rng), zero);
        if (!subbundle_membership(rz_bracket(b1, b2)).count(Subbundle::TtildeZ))
            table_ok = false;
        Poly g1 = random_poly(Z.base, 2, rng), g2 = random_poly(Z.base, 2, rng);
        RZSection c1(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, g1 - one,
                     random_poly(Z.base, 2, rng), g1);
        RZSection c2(Z, {random_poly(Z.base, 2, rng), random_poly(Z.base, 2, rng)}, g2 - one,
                     random_poly(Z.base, 2, rng), g2);
        if (!subbundle_membership(rz_bracket(c1, c2)).count(Subbundle::LtildeZ))
            table_ok = false;
    }
    rep.add("membership table respected under brackets", table_ok);
    return rep;
}

/// Criterion 6: affgebroid/bracket correspondences and the Poisson tag.
inline Report criterion_correspondences() {
    using detail_verify::random_poly;
    Report rep;
    rep.suite = "correspondences";
    std::mt19937 rng(109);

    auto check_pairs = [&](const AffgebroidSpec& spec, const std::string& label) {
        InducedStructures ind = from_affgebroid(spec);
        int n = spec.rank();
        int nx = spec.base.dim();
        bool dag_ok = true, sharp_ok = true;
        auto lift_imgs = [&](const AVChart& av) {
            std::vector<Poly> imgs;
            for (int a = 0; a < nx; ++a) imgs.push_back(Poly::variable(av.chart, a));
            return imgs;
        };
        auto value_of = [&](const AffSectionCoeffs& a, const AffStructure& S,
                            const std::vector<Poly>& amb) {
            Poly F = Poly::zero(S.bundle.chart);
            auto imgs = lift_imgs(S.bundle);
            for (int i = 0; i < n; ++i)
                F += a[i].rewrite(S.bundle.chart, imgs) * amb[nx + i];
            return S.bundle.drop(F + Poly::variable(S.bundle.chart, S.bundle.fiber_index()));
        };
        auto iota_img = [&](const AffSectionCoeffs& w, const AffStructure& S,
                            const std::vector<Poly>& amb) {
            Poly r = Poly::zero(S.bundle.chart);
            auto imgs = lift_imgs(S.bundle);
            for (int i = 0; i < n; ++i) r += w[i].rewrite(S.bundle.chart, imgs) * amb[nx + i];
            return S.bundle.drop(r);
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                AffSectionCoeffs a(n, Poly::zero(spec.base)), b(n, Poly::zero(spec.base));
                // point sections: pad with the first generator to weight 1
                a[i] = Poly::one(spec.base);
                if (!one_weight(spec, a).is_constant() ||
                    one_weight(spec, a).constant_value() != Rational(1))
                    a[0] = a[0] + Poly::one(spec.base) - one_weight(spec, a);
                b[j] = Poly::one(spec.base);
                if (!one_weight(spec, b).is_constant() ||
                    one_weight(spec, b).constant_value() != Rational(1))
                    b[0] = b[0] + Poly::one(spec.base) - one_weight(spec, b);
                AffSectionCoeffs br = hull_bracket(spec, a, b);
                Poly dag = aff_bracket(ind.dagger,
                                       {ind.dagger.bundle, value_of(a, ind.dagger, ind.dag_amb_in_av)},
                                       {ind.dagger.bundle, value_of(b, ind.dagger, ind.dag_amb_in_av)});
                if (dag != iota_img(br, ind.dagger, ind.dag_amb_in_av)) dag_ok = false;
                if (ind.has_sharp) {
                    Poly shp = aff_bracket(
                        ind.sharp, {ind.sharp.bundle, value_of(a, ind.sharp, ind.sharp_amb_in_av)},
                        {ind.sharp.bundle, value_of(b, ind.sharp, ind.sharp_amb_in_av)});
                    if (shp != iota_img(br, ind.sharp, ind.sharp_amb_in_av)) sharp_ok = false;
                }
            }
        rep.add(label + ": linear bracket correspondence on generators", dag_ok);
        rep.add(label + ": affine bracket correspondence on generators", sharp_ok);
        return ind;
    };

    check_pairs(canonical_av_affgebroid(Chart({"x"})), "canonical Z");
    AVChart Z(Chart({"x"}), "s");
    InducedStructures deriv = check_pairs(derivations_affgebroid(Z), "derivations");
    rep.add("derivations induce a Poisson structure (central direction)",
            deriv.sharp_is_poisson && deriv.sharp.kind == StructKind::poisson);
    NewtonSpacetime st = NewtonSpacetime::standard(
        [&] {
            RatMat g(3, 3);
            g(0, 0) = 1;
            g(1, 1) = 2;
            g(2, 2) = 3;
            return g;
        }(),
        Rational(2));
    InducedStructures newton = check_pairs(newton_affgebroid(st), "newton");
    rep.add("newton scalar slot is central: Poisson tag set",
            newton.sharp_is_poisson && newton.sharp.kind == StructKind::poisson);
    // negative control: the canonical affgebroid has a non-central direction
    InducedStructures canon = from_affgebroid(canonical_av_affgebroid(Chart({"x"})));
    rep.add("non-central control yields a Jacobi (not Poisson) structure",
            !canon.sharp_is_poisson && canon.sharp.kind == StructKind::jacobi);
    return rep;
}

/// Criterion 7: canonical structures and squared-zero operators.
inline Report criterion_operators() {
    Report rep;
    rep.suite = "operators";
    AVChart Z(Chart({"q", "p"}), "s");
    Poly q = Poly::variable(Z.base, 0), p = Poly::variable(Z.base, 1), one = Poly::one(Z.base);

    PolyTensor sympl(Z.base, 2, Variance::multivector);
    sympl.add_component({0, 1}, -one); // d/dp ^ d/dq
    PolyTensor drift(Z.base, 1, Variance::multivector);
    drift.add_component({0}, one);
    AffStructure symplectic = AffStructure::poisson(Z, sympl, drift);

    PolyTensor zero1(Z.base, 1, Variance::multivector);
    PolyTensor px0(Z.base, 1, Variance::multivector);
    px0.add_component({1}, p);
    AffStructure contact =
        AffStructure::make(Z, sympl, zero1, px0, -one, StructKind::jacobi);
    AffStructure difference = AffStructure::make(
        Z, PolyTensor(Z.base, 2, Variance::multivector), zero1, zero1, -one, StructKind::jacobi);

    rep.add("symplectic structure is canonical", canonicality_check(symplectic).canonical);
    rep.add("contact structure is canonical", canonicality_check(contact).canonical);
    rep.add("difference structure is canonical", canonicality_check(difference).canonical);

    FramePtr dfr = derivations_frame(Z.base);
    FramePtr ofr = operators_frame(Z.base);
    auto monomials = [&](const FramePtr& fr, Variance var) {
        std::vector<FrameTensor> ms;
        for (int deg = 0; deg <= 2; ++deg) {
            std::vector<int> idx(deg);
            std::function<void(int, int)> walk = [&](int pos, int start) {
                if (pos == deg) {
                    for (const Poly& c : {one, q, p, q * p}) {
                        FrameTensor t(fr, deg, var);
                        t.add_component(idx, c);
                        ms.push_back(t);
                    }
                    return;
                }
                for (int i = start; i < fr->rank(); ++i) {
                    idx[pos] = i;
                    walk(pos + 1, i + 1);
                }
            };
            walk(0, 0);
        }
        return ms;
    };

    bool d_poisson = true, l_poisson = true;
    for (const auto& Y : monomials(dfr, Variance::multivector))
        if (!cohomology_operator(symplectic, Rational(0),
                                 cohomology_operator(symplectic, Rational(0), Y))
                 .is_zero())
            d_poisson = false;
    for (const auto& w : monomials(dfr, Variance::form))
        if (!homology_operator(symplectic, Rational(0),
                               homology_operator(symplectic, Rational(0), w))
                 .is_zero())
            l_poisson = false;
    rep.add("degree-raising operator squares to zero (symplectic)", d_poisson);
    rep.add("degree-lowering operator squares to zero (symplectic)", l_poisson);

    for (const AffStructure* S : {&contact, &difference}) {
        std::string nm = S == &contact ? "contact" : "difference";
        bool d_ok = true, l_ok = true;
        for (const Rational& t : {Rational(0), Rational(1), Rational(-1), Rational(2)}) {
            for (const auto& Y : monomials(ofr, Variance::multivector))
                if (!cohomology_operator(*S, t, cohomology_operator(*S, t, Y)).is_zero())
                    d_ok = false;
            for (const auto& w : monomials(ofr, Variance::form))
                if (!homology_operator(*S, t, homology_operator(*S, t, w)).is_zero())
                    l_ok = false;
        }
        rep.add("degree-raising operator squares to zero, all t (" + nm + ")", d_ok);
        rep.add("degree-lowering operator squares to zero, all t (" + nm + ")", l_ok);
    }

    // negative controls
    PolyTensor bad(Z.base, 1, Variance::multivector);
    bad.add_component({0}, q * p);
    AffStructure sbad = AffStructure::poisson(Z, sympl, bad);
    bool violated = false;
    for (const auto& Y : monomials(dfr, Variance::multivector))
        if (!cohomology_operator(sbad, Rational(0), cohomology_operator(sbad, Rational(0), Y))
                 .is_zero())
            violated = true;
    rep.add("non-canonical control violates the raising square", violated);
    bool lviolated = false;
    FrameTensor Lbad = poisson_frame_tensor(sbad, dfr);
    FrameTensor LL = FrameTensor::schouten(Lbad, Lbad);
    bool defect_identity = !LL.is_zero();
    for (const auto& w : monomials(dfr, Variance::form)) {
        FrameTensor twice =
            homology_operator(sbad, Rational(0), homology_operator(sbad, Rational(0), w)) *
            Rational(2);
        if (!twice.is_zero()) lviolated = true;
        if (!(twice == FrameTensor::lie_differential(LL, w))) defect_identity = false;
    }
    rep.add("non-canonical control violates the lowering square", lviolated);
    rep.add("squared lowering operator is controlled by the self-bracket", defect_identity);
    AffStructure cbad = contact;
    cbad.f0 = Rational(-2) * one;
    bool jviolated = false;
    for (const auto& Y : monomials(ofr, Variance::multivector))
        if (!cohomology_operator(cbad, Rational(1), cohomology_operator(cbad, Rational(1), Y))
                 .is_zero())
            jviolated = true;
    rep.add("non-canonical Jacobi control violates the raising square", jviolated);
    bool jlviolated = false;
    for (const Rational& t : {Rational(0), Rational(1)})
        for (const auto& w : monomials(ofr, Variance::form))
            if (!homology_operator(cbad, t, homology_operator(cbad, t, w)).is_zero())
                jlviolated = true;
    rep.add("non-canonical Jacobi control violates the lowering square", jlviolated);
    return rep;
}

/// Criterion 8: mechanics.
inline Report criterion_mechanics() {
    using detail_verify::random_poly;
    Report rep;
    rep.suite = "mechanics";
    Chart phase = newton_phase_chart();
    std::mt19937 rng(113);
    auto diag = [](Rational a, Rational b, Rational c) {
        RatMat m(3, 3);
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        return m;
    };
    for (const RatMat& metric : {diag(1, 1, 1), diag(1, 2, 3)})
        for (const Rational& mass : {Rational(1), Rational(2)}) {
            NewtonSpacetime st = NewtonSpacetime::standard(metric, mass);
            Poly phi = Poly::zero(phase);
            for (int i = 0; i < 3; ++i)
                phi += Poly::variable(phase, 1 + i).pow(2) * Rational(1, 2);
            Poly h = newton_hamiltonian(st, phi);
            PolyTensor field = newton_dynamics(st, h);
            RatMat ginv = inverse(st.g);
            bool ok = field.component({0}) == Poly::one(phase);
            for (int i = 0; i < 3; ++i) {
                Poly expect = Poly::zero(phase);
                for (int j = 0; j < 3; ++j)
                    expect += Poly::variable(phase, 4 + j) * (ginv(i, j) / mass);
                if (field.component({1 + i}) != expect) ok = false;
                if (field.component({4 + i}) != -phi.derivative(1 + i)) ok = false;
            }
            std::ostringstream os;
            os << "phase equations, metric " << metric(0, 0) << "," << metric(1, 1) << ","
               << metric(2, 2) << " mass " << mass;
            rep.add(os.str(), ok);
        }
    // frame independence under 5 random rational frame changes
    {
        NewtonSpacetime st = NewtonSpacetime::standard(diag(1, 2, 3), Rational(2));
        Poly phi = Poly::variable(phase, 1).pow(2) * Rational(1, 2) +
                   Poly::variable(phase, 2) * Poly::variable(phase, 3);
        PolyTensor field_u = newton_dynamics(st, newton_hamiltonian(st, phi));
        bool ok = true;
        for (int rep_i = 0; rep_i < 5; ++rep_i) {
            RatVec w{Rational(int(rng() % 5) - 2, 2), Rational(int(rng() % 5) - 2, 3),
                     Rational(int(rng() % 3) - 1)};
            if (is_zero(w)) w[0] = Rational(1, 2);
            RatVec gw = st.g * w;
            std::vector<Poly> y_in_x, x_in_y;
            y_in_x.push_back(Poly::variable(phase, 0));
            x_in_y.push_back(Poly::variable(phase, 0));
            for (int i = 0; i < 3; ++i) {
                y_in_x.push_back(Poly::variable(phase, 1 + i) - Poly::variable(phase, 0) * w[i]);
                x_in_y.push_back(Poly::variable(phase, 1 + i) + Poly::variable(phase, 0) * w[i]);
            }
            for (int i = 0; i < 3; ++i) {
                y_in_x.push_back(Poly::variable(phase, 4 + i) -
                                 Poly::constant(phase, st.mass * gw[i]));
                x_in_y.push_back(Poly::variable(phase, 4 + i) +
                                 Poly::constant(phase, st.mass * gw[i]));
            }
            Poly phi_new = phi.rewrite(phase, x_in_y);
            PolyTensor field_new = newton_dynamics(st, newton_hamiltonian(st, phi_new));
            if (!(field_new.change_chart(phase, y_in_x, x_in_y) == field_u)) ok = false;
        }
        rep.add("frame independence under 5 random rational frame changes", ok);
    }
    // timedep: bracket route equals the extended route for 10 random H
    {
        Chart c = timedep_chart(1);
        bool ok = true;
        for (int i = 0; i < 10; ++i) {
            Poly H = random_poly(c, 3, rng);
            if (!(timedep_dynamics(H) == timedep_extended_route(H))) ok = false;
        }
        rep.add("time-dependent dynamics agrees with the extended-chart route (10 samples)",
                ok);
    }
    // RK4 free particle against the closed form
    {
        NewtonSpacetime st = NewtonSpacetime::standard(diag(1, 2, 3), Rational(2));
        PolyTensor field = newton_dynamics(st, newton_hamiltonian(st, Poly::zero(phase)));
        std::vector<double> x0{0, 1, -1, 0.5, 0.4, -0.2, 0.6};
        Trajectory tr = integrate(field_callback(field), x0, 1e-3, 1000);
        RatMat ginv = inverse(st.g);
        double m = st.mass.to_double();
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            double v = (i == 0) ? 1.0 : 0.0;
            if (i > 0)
                for (int j = 0; j < 3; ++j) v += ginv(i - 1, j).to_double() * x0[4 + j] / m;
            double expect = x0[i] + v;
            if (std::abs(tr.states.back()[i] - expect) >
                1e-10 * std::max(1.0, std::abs(expect)))
                ok = false;
        }
        rep.add("free-particle trajectory matches the closed form at 1e-10", ok);
    }
    return rep;
}

/// Criterion 9: golden scripts and parse-error positions; needs the source
/// tree for the script and golden files.
inline Report criterion_cli(const std::string& source_dir) {
    namespace fs = std::filesystem;
    Report rep;
    rep.suite = "cli";
    const char* demos[] = {"polynomials", "spaces", "bundles", "operators", "structures",
                           "newton"};
    for (const char* name : demos) {
        fs::path script = fs::path(source_dir) / "demos" / (std::string(name) + ".avg");
        fs::path golden_txt =
            fs::path(source_dir) / "tests" / "golden" / (std::string(name) + ".txt");
        fs::path golden_json =
            fs::path(source_dir) / "tests" / "golden" / (std::string(name) + ".json");
        std::ifstream in(script);
        if (!in) {
            rep.add(std::string("golden ") + name, false, "missing script");
            continue;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            Report r = dsl::run_script(buf.str());
            std::string text = render_text(r);
            std::ifstream gt(golden_txt);
            std::stringstream gbuf;
            gbuf << gt.rdbuf();
            bool text_ok = gt.good() && gbuf.str() == text;
            // json: schema shape plus golden comparison with timings stripped
            nlohmann::json j = render_json(r);
            bool schema_ok = j.contains("suite") && j.contains("results") &&
                             j["results"].is_array();
            for (auto& e : j["results"]) {
                schema_ok = schema_ok && e.contains("id") && e.contains("status") &&
                            e.contains("ms");
                e.erase("ms");
            }
            std::ifstream gj(golden_json);
            nlohmann::json gold;
            bool json_ok = false;
            if (gj) {
                gj >> gold;
                for (auto& e : gold["results"]) e.erase("ms");
                json_ok = gold == j;
            }
            rep.add(std::string("golden ") + name, text_ok && schema_ok && json_ok,
                    text_ok && schema_ok && json_ok
                        ? std::nullopt
                        : std::optional<std::string>(!text_ok ? "text mismatch"
                                                              : "json mismatch"));
        } catch (const std::exception& e) {
            rep.add(std::string("golden ") + name, false, std::string(e.what()));
        }
    }
    // malformed scripts with expected positions
    struct Bad {
        const char* text;
        int line;
        int col;
    };
    Bad bads[] = {
        {"section = 3\n", 1, 9},
        {"avbundle Z base(x fiber(s)\n", 1, 19},
        {"space A affine dim\n", 1, 19},
        {"avbundle Z base(x) fiber(s)\nsection s1 on Z = x +\n", 2, 22},
        {"check canonical\n", 1, 16},
    };
    int idx = 0;
    for (const Bad& b : bads) {
        ++idx;
        bool ok = false;
        std::string note;
        try {
            dsl::parse(b.text);
            note = "parsed without error";
        } catch (const dsl::ParseError& e) {
            ok = e.line == b.line && e.col == b.col;
            if (!ok)
                note = "position " + std::to_string(e.line) + ":" + std::to_string(e.col) +
                       " (wanted " + std::to_string(b.line) + ":" + std::to_string(b.col) + ")";
        }
        rep.add("malformed script " + std::to_string(idx) + " reports " +
                    std::to_string(b.line) + ":" + std::to_string(b.col),
                ok, ok ? std::nullopt : std::optional(note));
    }
    return rep;
}

inline Report run_suite(const std::string& name) {
    if (name == "affspace") {
        Report r = criterion_duality();
        r.merge(criterion_dimensions());
        r.suite = "affspace";
        return r;
    }
    if (name == "avbundle") {
        Report r = criterion_av_identities();
        r.merge(criterion_phase_contact());
        r.suite = "avbundle";
        return r;
    }
    if (name == "algebroids") return criterion_algebroids();
    if (name == "avbrackets") {
        Report r = criterion_correspondences();
        r.merge(criterion_operators());
        r.suite = "avbrackets";
        return r;
    }
    if (name == "mechanics") return criterion_mechanics();
    if (name == "all") {
        Report r;
        r.suite = "all";
        r.merge(criterion_duality());
        r.merge(criterion_dimensions());
        r.merge(criterion_av_identities());
        r.merge(criterion_phase_contact());
        r.merge(criterion_algebroids());
        r.merge(criterion_correspondences());
        r.merge(criterion_operators());
        r.merge(criterion_mechanics());
        return r;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace avgeo::verify
