#pragma once

#include <chrono>
#include <fstream>
#include <map>

#include "avgeo/dsl.hpp"
#include "avgeo/mechanics.hpp"
#include "avgeo/report.hpp"

namespace avgeo::dsl {

struct EvalError : std::runtime_error {
    int line, col;
    EvalError(int l, int c, const std::string& msg)
        : std::runtime_error("error at " + std::to_string(l) + ":" + std::to_string(c) + ": " +
                             msg),
          line(l), col(c) {}
};

/// Values the engine can bind to names.
using Value = std::variant<HullSpace, Chart, AVChart, AVSection, GaugeChange, Poly, PolyTensor,
                           RZSection, AffStructure, AffgebroidSpec, NewtonSpacetime>;

class Engine {
  public:
    Report run(const Script& script) {
        Report rep;
        rep.suite = "script";
        for (const auto& st : script.statements) {
            size_t before = rep.results.size();
            auto t0 = std::chrono::steady_clock::now();
            execute(st, rep);
            auto t1 = std::chrono::steady_clock::now();
            long long ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            for (size_t i = before; i < rep.results.size(); ++i) rep.results[i].ms = ms;
        }
        return rep;
    }

    const std::map<std::string, Value>& environment() const { return env_; }

  private:
    std::map<std::string, Value> env_;

    [[noreturn]] void fail(const Statement& st, const std::string& msg) const {
        throw EvalError(st.line, st.col, msg);
    }

    template <class T>
    const T& get(const Statement& st, const std::string& name) const {
        auto it = env_.find(name);
        if (it == env_.end()) fail(st, "undefined name '" + name + "'");
        const T* v = std::get_if<T>(&it->second);
        if (!v) fail(st, "name '" + name + "' has the wrong kind for this command");
        return *v;
    }

    bool defined(const std::string& name) const { return env_.count(name) > 0; }

    void bind(const Statement& st, const std::string& name, Value v) {
        if (defined(name)) fail(st, "name '" + name + "' is already defined");
        env_.emplace(name, std::move(v));
    }

    // ---------------------------------------------------------------- values

    struct EvalValue {
        bool is_poly = true;
        Poly poly;
        PolyTensor tensor;

        static EvalValue of(Poly p) { return {true, std::move(p), {}}; }
        static EvalValue of(PolyTensor t) { return {false, {}, std::move(t)}; }

        PolyTensor as_tensor(Variance var) const {
            if (!is_poly) return tensor;
            return PolyTensor::from_poly(poly, var);
        }
    };

    EvalValue eval(const ExprPtr& e, const Chart& chart) const {
        switch (e->kind) {
            case Expr::Kind::number:
                return EvalValue::of(Poly::constant(chart, e->value));
            case Expr::Kind::name: {
                auto it = env_.find(e->name);
                if (it != env_.end()) {
                    if (const Poly* p = std::get_if<Poly>(&it->second)) {
                        if (p->chart() == chart) return EvalValue::of(*p);
                        // sections lift onto larger charts when names permit
                        return EvalValue::of(rebase(*p, chart, e));
                    }
                    if (const PolyTensor* t = std::get_if<PolyTensor>(&it->second)) {
                        if (t->chart() == chart) return EvalValue::of(*t);
                        throw EvalError(e->line, e->col,
                                        "tensor '" + e->name + "' lives on another chart");
                    }
                    if (const AVSection* s = std::get_if<AVSection>(&it->second)) {
                        if (s->bundle.chart == chart) return EvalValue::of(s->bundle.lift(s->value));
                        if (s->bundle.base == chart) return EvalValue::of(s->value);
                        throw EvalError(e->line, e->col,
                                        "section '" + e->name + "' lives on another chart");
                    }
                    if (const GaugeChange* g = std::get_if<GaugeChange>(&it->second)) {
                        if (g->bundle.base == chart) return EvalValue::of(g->g);
                        if (g->bundle.chart == chart) return EvalValue::of(g->bundle.lift(g->g));
                    }
                    throw EvalError(e->line, e->col,
                                    "name '" + e->name + "' is not usable in an expression");
                }
                if (chart.has(e->name))
                    return EvalValue::of(Poly::variable(chart, e->name));
                if (e->name.size() > 1 && e->name[0] == 'd' && chart.has(e->name.substr(1)))
                    return EvalValue::of(
                        PolyTensor::basis_form(chart, chart.index(e->name.substr(1))));
                throw EvalError(e->line, e->col, "undefined name '" + e->name + "'");
            }
            case Expr::Kind::deriv: {
                if (!chart.has(e->name))
                    throw EvalError(e->line, e->col, "unknown coordinate '" + e->name + "'");
                return EvalValue::of(PolyTensor::basis_vector(chart, chart.index(e->name)));
            }
            case Expr::Kind::call: {
                if (e->name == "F") {
                    if (e->args.size() != 1 || e->args[0]->kind != Expr::Kind::name)
                        throw EvalError(e->line, e->col, "F takes one section name");
                    auto it = env_.find(e->args[0]->name);
                    if (it == env_.end() || !std::get_if<AVSection>(&it->second))
                        throw EvalError(e->args[0]->line, e->args[0]->col,
                                        "'" + e->args[0]->name + "' is not a section");
                    const AVSection& s = std::get<AVSection>(it->second);
                    if (!(s.bundle.chart == chart))
                        throw EvalError(e->line, e->col, "section bundle chart mismatch");
                    return EvalValue::of(f_map(s));
                }
                if (e->name == "d") {
                    if (e->args.size() != 1)
                        throw EvalError(e->line, e->col, "d takes one argument");
                    EvalValue v = eval(e->args[0], chart);
                    if (v.is_poly) return EvalValue::of(PolyTensor::differential(v.poly));
                    return EvalValue::of(v.tensor.de_rham());
                }
                throw EvalError(e->line, e->col, "unknown function '" + e->name + "'");
            }
            case Expr::Kind::unary_minus: {
                EvalValue v = eval(e->args[0], chart);
                if (v.is_poly) return EvalValue::of(-v.poly);
                return EvalValue::of(-v.tensor);
            }
            case Expr::Kind::add:
            case Expr::Kind::sub: {
                EvalValue a = eval(e->args[0], chart), b = eval(e->args[1], chart);
                bool sub = e->kind == Expr::Kind::sub;
                if (a.is_poly && b.is_poly)
                    return EvalValue::of(sub ? a.poly - b.poly : a.poly + b.poly);
                if (!a.is_poly && !b.is_poly)
                    return EvalValue::of(sub ? a.tensor - b.tensor : a.tensor + b.tensor);
                throw EvalError(e->line, e->col, "cannot add polynomials and tensors");
            }
            case Expr::Kind::mul: {
                EvalValue a = eval(e->args[0], chart), b = eval(e->args[1], chart);
                if (a.is_poly && b.is_poly) return EvalValue::of(a.poly * b.poly);
                if (a.is_poly) return EvalValue::of(b.tensor * a.poly);
                if (b.is_poly) return EvalValue::of(a.tensor * b.poly);
                throw EvalError(e->line, e->col, "use ^ to combine tensors");
            }
            case Expr::Kind::pow_or_wedge: {
                EvalValue a = eval(e->args[0], chart);
                // integer exponent on a polynomial base
                if (a.is_poly && e->args[1]->kind == Expr::Kind::number) {
                    const Rational& r = e->args[1]->value;
                    if (!r.is_integer() || r < Rational(0))
                        throw EvalError(e->line, e->col, "exponent must be a natural number");
                    return EvalValue::of(a.poly.pow((int)r.num()));
                }
                EvalValue b = eval(e->args[1], chart);
                if (a.is_poly || b.is_poly)
                    throw EvalError(e->line, e->col, "wedge needs tensor operands");
                return EvalValue::of(a.tensor.wedge(b.tensor));
            }
        }
        throw EvalError(e->line, e->col, "unreachable expression kind");
    }

    Poly rebase(const Poly& p, const Chart& chart, const ExprPtr& e) const {
        std::vector<Poly> images;
        for (const auto& n : p.chart().names()) {
            if (!chart.has(n))
                throw EvalError(e->line, e->col,
                                "value mentions coordinate '" + n + "' missing from the chart");
            images.push_back(Poly::variable(chart, n));
        }
        return p.rewrite(chart, images);
    }

    Poly eval_poly(const Statement& st, const ExprPtr& e, const Chart& chart) const {
        EvalValue v = eval(e, chart);
        if (!v.is_poly) fail(st, "expected a polynomial expression");
        return v.poly;
    }

    PolyTensor eval_tensor(const Statement& st, const ExprPtr& e, const Chart& chart,
                           Variance var) const {
        EvalValue v = eval(e, chart);
        if (v.is_poly) return PolyTensor::from_poly(v.poly, var);
        if (v.tensor.variance() != var) fail(st, "expression has the wrong variance");
        return v.tensor;
    }

    const AVChart& bundle_of(const Statement& st, const std::string& name) const {
        return get<AVChart>(st, name);
    }

    /// The sole declared bundle, for statements without an 'on' clause.
    const AVChart& sole_bundle(const Statement& st) const {
        const AVChart* found = nullptr;
        for (const auto& [name, v] : env_)
            if (const AVChart* b = std::get_if<AVChart>(&v)) {
                if (found) fail(st, "several bundles declared; use 'on <name>'");
                found = b;
            }
        if (!found) fail(st, "no bundle declared");
        return *found;
    }

    // -------------------------------------------------------------- execute

    void execute(const Statement& st, Report& rep) {
        const std::string& k = st.kind;
        if (k == "space") return decl_space(st);
        if (k == "chart") return bind(st, st.name, Chart(st.words));
        if (k == "avbundle") return decl_avbundle(st);
        if (k == "section" || k == "gauge") return decl_section(st);
        if (k == "tensor") return decl_tensor(st);
        if (k == "rzsection") return decl_rzsection(st);
        if (k == "affpoisson" || k == "affjacobi") return decl_structure(st);
        if (k == "affgebroid") return decl_affgebroid(st);
        if (k == "newton") return decl_newton(st);
        if (k == "check") return cmd_check(st, rep);
        if (k == "bracket") return cmd_bracket(st, rep);
        if (k == "dual") return cmd_dual(st, rep);
        if (k == "construct") return cmd_construct(st, rep);
        if (k == "dynamics") return cmd_dynamics(st, rep);
        if (k == "integrate") return cmd_integrate(st, rep);
        if (k == "report") return;
        fail(st, "unknown statement kind '" + k + "'");
    }

    void decl_space(const Statement& st) {
        int dim = (int)st.numbers[0].num();
        if (dim < 1) fail(st, "dimension must be positive");
        HullSpace h;
        h.label = st.name;
        if (st.words[0] == "affine") {
            h.hull_dim = dim + 1;
            RatVec one(h.hull_dim);
            one[0] = 1;
            h.one = one;
            if (st.numbers.size() > 1) {
                long long cnt = st.numbers[1].num();
                if (cnt != h.hull_dim) fail(st, "v0 must list hull coordinates (dim + 1)");
                RatVec v0(h.hull_dim);
                for (int i = 0; i < h.hull_dim; ++i) v0[i] = st.numbers[2 + i];
                h.v0 = v0;
            }
        } else { // special vector space
            h.hull_dim = dim;
            if (st.numbers.size() <= 1) fail(st, "special spaces need v0=[...]");
            long long cnt = st.numbers[1].num();
            if (cnt != dim) fail(st, "v0 must have one entry per dimension");
            RatVec v0(dim);
            for (int i = 0; i < dim; ++i) v0[i] = st.numbers[2 + i];
            h.v0 = v0;
        }
        try {
            h.validate();
        } catch (const std::exception& e) {
            fail(st, e.what());
        }
        bind(st, st.name, h);
    }

    void decl_avbundle(const Statement& st) {
        std::vector<std::string> base(st.words.begin(), st.words.end() - 1);
        try {
            bind(st, st.name, AVChart(Chart(base), st.words.back()));
        } catch (const std::exception& e) {
            fail(st, e.what());
        }
    }

    void decl_section(const Statement& st) {
        const AVChart& b = st.words.empty() ? sole_bundle(st) : bundle_of(st, st.words[0]);
        Poly v = eval_poly(st, st.exprs[0], b.base);
        if (st.kind == "gauge")
            bind(st, st.name, GaugeChange(b, v));
        else
            bind(st, st.name, AVSection(b, v));
    }

    void decl_tensor(const Statement& st) {
        Chart chart;
        if (!st.words.empty()) {
            auto it = env_.find(st.words[0]);
            if (it == env_.end()) fail(st, "undefined name '" + st.words[0] + "'");
            if (const AVChart* b = std::get_if<AVChart>(&it->second))
                chart = b->chart;
            else if (const Chart* c = std::get_if<Chart>(&it->second))
                chart = *c;
            else
                fail(st, "'" + st.words[0] + "' is neither a chart nor a bundle");
        } else {
            chart = sole_bundle(st).chart;
        }
        EvalValue v = eval(st.exprs[0], chart);
        if (v.is_poly)
            bind(st, st.name, v.poly);
        else
            bind(st, st.name, v.tensor);
    }

    void decl_rzsection(const Statement& st) {
        const AVChart& b = st.words.empty() ? sole_bundle(st) : bundle_of(st, st.words[0]);
        PolyTensor X = eval_tensor(st, st.fields[0].second, b.base, Variance::multivector);
        if (X.degree() != 1) fail(st, "X must be a vector field");
        std::vector<Poly> coeffs;
        for (int a = 0; a < b.base.dim(); ++a) coeffs.push_back(X.component({a}));
        bind(st, st.name,
             RZSection(b, coeffs, eval_poly(st, st.fields[1].second, b.base),
                       eval_poly(st, st.fields[2].second, b.base),
                       eval_poly(st, st.fields[3].second, b.base)));
    }

    void decl_structure(const Statement& st) {
        const AVChart& b = st.words.empty() ? sole_bundle(st) : bundle_of(st, st.words[0]);
        PolyTensor lambda0(b.base, 2, Variance::multivector);
        PolyTensor gamma0(b.base, 1, Variance::multivector);
        PolyTensor x0(b.base, 1, Variance::multivector);
        Poly f0 = Poly::zero(b.base);
        for (const auto& [field, expr] : st.fields) {
            if (field == "lambda0")
                lambda0 = eval_tensor(st, expr, b.base, Variance::multivector);
            else if (field == "gamma0")
                gamma0 = eval_tensor(st, expr, b.base, Variance::multivector);
            else if (field == "x0")
                x0 = eval_tensor(st, expr, b.base, Variance::multivector);
            else if (field == "f0")
                f0 = eval_poly(st, expr, b.base);
            else
                fail(st, "unknown field '" + field + "'");
        }
        StructKind kind = st.kind == "affpoisson" ? StructKind::poisson : StructKind::jacobi;
        try {
            bind(st, st.name, AffStructure::make(b, lambda0, gamma0, x0, f0, kind));
        } catch (const std::exception& e) {
            fail(st, e.what());
        }
    }

    void decl_affgebroid(const Statement& st) {
        const std::string& builder = st.words[0];
        if (builder == "canonical") {
            const AVChart& b = bundle_of(st, st.words[1]);
            bind(st, st.name, canonical_av_affgebroid(b.base));
        } else if (builder == "derivations") {
            bind(st, st.name, derivations_affgebroid(bundle_of(st, st.words[1])));
        } else if (builder == "sections_derivations") {
            bind(st, st.name, sections_derivations_affgebroid(bundle_of(st, st.words[1])));
        } else if (builder == "newton") {
            bind(st, st.name, newton_affgebroid(get<NewtonSpacetime>(st, st.words[1])));
        } else {
            fail(st, "unknown affgebroid builder '" + builder + "'");
        }
    }

    void decl_newton(const Statement& st) {
        RatMat g(3, 3);
        for (int i = 0; i < 3; ++i) g(i, i) = st.numbers[i];
        try {
            bind(st, st.name, NewtonSpacetime::standard(g, st.numbers[3]));
        } catch (const std::exception& e) {
            fail(st, e.what());
        }
    }

    void cmd_check(const Statement& st, Report& rep) {
        const std::string& what = st.words[0];
        std::string id = st.render().substr(0, 80);
        if (what == "canonical") {
            CanonReport r = canonicality_check(get<AffStructure>(st, st.name));
            rep.add(id, r.canonical, r.canonical ? std::nullopt : std::optional(r.detail));
        } else if (what == "axioms") {
            AffgebroidReport r = affgebroid_axioms(get<AffgebroidSpec>(st, st.name));
            std::optional<std::string> witness;
            if (!r.ok()) witness = r.violations.empty() ? "axioms fail" : r.violations.front();
            rep.add(id, r.ok(), witness);
        } else if (what == "contact") {
            const AVChart& b = bundle_of(st, st.name);
            ContactStructure cs = contact_structure(b);
            AVChart over_phase(cs.phase, b.fiber);
            bool liouville = affine_differential(AffOneForm(over_phase, cs.theta)) ==
                             phase_symplectic(b);
            auto [d1, d2] = jacobi_pair_defect(cs.lambda, cs.gamma);
            bool pair_ok = d1.is_zero() && d2.is_zero();
            rep.add(id, liouville && pair_ok,
                    liouville && pair_ok
                        ? std::nullopt
                        : std::optional<std::string>(!liouville ? "d theta != omega"
                                                                : "Jacobi pair defect"));
        } else if (what == "closure") {
            Subbundle tag = parse_tag(st, st.name);
            std::vector<RZSection> gens;
            for (size_t i = 1; i < st.words.size(); ++i)
                gens.push_back(get<RZSection>(st, st.words[i]));
            ClosureReport r = closure_check(tag, gens);
            bool ok = r.closed && r.forms_closed;
            rep.add(id, ok,
                    ok ? std::nullopt
                       : std::optional(r.violations.empty() ? std::string("not closed")
                                                            : r.violations.front()));
        } else if (what == "duality") {
            DualityId did = parse_duality(st, st.name);
            if (st.words.size() < 3) fail(st, "duality checks take two operand spaces");
            DualityResult r = verify_duality(did, get<HullSpace>(st, st.words[1]),
                                             get<HullSpace>(st, st.words[2]));
            rep.add(id, r.ok, r.ok ? std::nullopt : std::optional(r.detail));
        }
    }

    void cmd_bracket(const Statement& st, Report& rep) {
        const std::string& what = st.words[0];
        std::string id = st.render().substr(0, 80);
        if (what == "vertical") {
            const AVChart& b = bundle_of(st, st.name);
            Poly r = vertical_jacobi(b, eval_poly(st, st.exprs[0], b.chart),
                                     eval_poly(st, st.exprs[1], b.chart));
            rep.add(id, true, r.str());
        } else if (what == "contact") {
            const AVChart& b = bundle_of(st, st.name);
            ContactStructure cs = contact_structure(b);
            Poly r = contact_jacobi(cs, eval_poly(st, st.exprs[0], cs.contact),
                                    eval_poly(st, st.exprs[1], cs.contact));
            rep.add(id, true, r.str());
        } else if (what == "aff") {
            const AffStructure& s = get<AffStructure>(st, st.name);
            Poly a = eval_poly(st, st.exprs[0], s.bundle.base);
            Poly b = eval_poly(st, st.exprs[1], s.bundle.base);
            Poly r = aff_bracket(s, AVSection(s.bundle, a), AVSection(s.bundle, b));
            rep.add(id, true, r.str());
        } else if (what == "schouten") {
            if (st.exprs[0]->kind != Expr::Kind::name || st.exprs[1]->kind != Expr::Kind::name)
                fail(st, "schouten bracket takes tensor names");
            const PolyTensor& a = get<PolyTensor>(st, st.exprs[0]->name);
            const PolyTensor& b = get<PolyTensor>(st, st.exprs[1]->name);
            rep.add(id, true, PolyTensor::schouten(a, b).str());
        } else if (what == "rz") {
            if (st.exprs[0]->kind != Expr::Kind::name || st.exprs[1]->kind != Expr::Kind::name)
                fail(st, "rz bracket takes section names");
            RZSection r = rz_bracket(get<RZSection>(st, st.exprs[0]->name),
                                     get<RZSection>(st, st.exprs[1]->name));
            rep.add(id, true, r.str());
        }
    }

    void cmd_dual(const Statement& st, Report& rep) {
        const HullSpace& a = get<HullSpace>(st, st.name);
        std::string id = st.render();
        try {
            HullSpace d = st.words.empty() ? vector_dual(a) : special_dual(a);
            std::ostringstream os;
            os << d.label << ": hull dim " << d.hull_dim << ", dim " << d.dim();
            rep.add(id, true, os.str());
        } catch (const std::exception& e) {
            rep.add(id, false, std::string(e.what()));
        }
    }

    void cmd_construct(const Statement& st, Report& rep) {
        static const std::map<std::string, ConstructKind> kinds{
            {"a_times", ConstructKind::a_times},     {"a_oplus", ConstructKind::a_oplus},
            {"sv_times", ConstructKind::sv_times},   {"sv_oplus", ConstructKind::sv_oplus},
            {"cv_times", ConstructKind::cv_times},   {"cv_oplus", ConstructKind::cv_oplus},
            {"sa_times", ConstructKind::sa_times},   {"sa_oplus", ConstructKind::sa_oplus},
            {"boxtimes", ConstructKind::boxtimes},   {"a_tensor", ConstructKind::a_tensor},
            {"sa_tensor", ConstructKind::sa_tensor}, {"specialization", ConstructKind::specialization}};
        auto it = kinds.find(st.words[0]);
        if (it == kinds.end()) fail(st, "unknown construction '" + st.words[0] + "'");
        std::string id = st.render();
        try {
            Construction c = categorial_construct(it->second, get<HullSpace>(st, st.words[1]),
                                                  get<HullSpace>(st, st.words[2]));
            c.space.label = st.name;
            bind(st, st.name, c.space);
            std::ostringstream os;
            os << "hull dim " << c.space.hull_dim << ", dim " << c.space.dim();
            rep.add(id, true, os.str());
        } catch (const std::exception& e) {
            rep.add(id, false, std::string(e.what()));
        }
    }

    void cmd_dynamics(const Statement& st, Report& rep) {
        std::string id = st.render().substr(0, 100);
        if (st.words[0] == "newton") {
            const NewtonSpacetime& n = get<NewtonSpacetime>(st, st.words[1]);
            Chart phase = newton_phase_chart();
            Poly phi = eval_poly(st, st.exprs[0], phase);
            PolyTensor field = newton_dynamics(n, newton_hamiltonian(n, phi));
            bind(st, st.name, field);
            rep.add(id, true, field.str());
        } else {
            int dof = (int)st.numbers[0].num();
            Chart c = timedep_chart(dof);
            Poly H = eval_poly(st, st.exprs[0], c);
            PolyTensor field = timedep_dynamics(H);
            bind(st, st.name, field);
            rep.add(id, true, field.str());
        }
    }

    void cmd_integrate(const Statement& st, Report& rep) {
        const PolyTensor& field = get<PolyTensor>(st, st.name);
        int dim = field.chart().dim();
        std::vector<double> x0(dim, 0.0);
        if (!st.numbers.empty()) {
            if ((int)st.numbers.size() != dim) fail(st, "start vector has the wrong size");
            for (int i = 0; i < dim; ++i) x0[i] = st.numbers[i].to_double();
        }
        std::string id = st.render().substr(0, 100);
        try {
            Trajectory tr = integrate(field_callback(field), x0, st.real1, (int)st.real2);
            if (!st.words.empty()) {
                std::ofstream out(st.words[0]);
                if (!out) fail(st, "cannot open output file " + st.words[0]);
                write_csv(out, field.chart(), tr);
            }
            std::ostringstream os;
            os.precision(12);
            os << "final [";
            for (int i = 0; i < dim; ++i) os << (i ? ", " : "") << tr.states.back()[i];
            os << "]";
            rep.add(id, true, os.str());
        } catch (const std::exception& e) {
            rep.add(id, false, std::string(e.what()));
        }
    }

    Subbundle parse_tag(const Statement& st, const std::string& tag) const {
        if (tag == "TtildeZ") return Subbundle::TtildeZ;
        if (tag == "LbreveZ") return Subbundle::LbreveZ;
        if (tag == "LtildeZ") return Subbundle::LtildeZ;
        if (tag == "TbarZ") return Subbundle::TbarZ;
        if (tag == "LbarZ") return Subbundle::LbarZ;
        if (tag == "Zdagger") return Subbundle::Zdagger;
        fail(st, "unknown subbundle tag '" + tag + "'");
    }

    DualityId parse_duality(const Statement& st, const std::string& id) const {
        if (id == "product_hull") return DualityId::product_hull;
        if (id == "sum_hull") return DualityId::sum_hull;
        if (id == "product_dual") return DualityId::product_dual;
        if (id == "sum_dual") return DualityId::sum_dual;
        if (id == "reduced_product_dual") return DualityId::reduced_product_dual;
        if (id == "sa_product_dual") return DualityId::sa_product_dual;
        if (id == "sa_sum_dual") return DualityId::sa_sum_dual;
        if (id == "specialization_dual") return DualityId::specialization_dual;
        if (id == "specialization_hull") return DualityId::specialization_hull;
        if (id == "specialization_sum") return DualityId::specialization_sum;
        if (id == "specialization_product") return DualityId::specialization_product;
        fail(st, "unknown duality id '" + id + "'");
    }
};

inline Report run_script(const std::string& text) {
    Script s = parse(text);
    Engine e;
    return e.run(s);
}

} // namespace avgeo::dsl
