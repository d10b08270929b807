#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "avgeo/chart.hpp"
#include "avgeo/rational.hpp"

namespace avgeo {

/// Sparse multivariate polynomial with exact rational coefficients over a
/// named coordinate chart. No zero coefficients are stored; exponent vectors
/// always have length chart.dim(). Values are immutable in spirit: all
/// operations return new polynomials.
class Poly {
  public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    Poly() = default;
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly constant(const Chart& chart, const Rational& c) {
        Poly p(chart);
        if (!c.is_zero()) p.terms_[Exponents(chart.dim())] = c;
        return p;
    }
    static Poly zero(const Chart& chart) { return Poly(chart); }
    static Poly one(const Chart& chart) { return constant(chart, 1); }

    static Poly variable(const Chart& chart, int i) {
        Poly p(chart);
        Exponents e(chart.dim());
        e.at(i) = 1;
        p.terms_[e] = 1;
        return p;
    }
    static Poly variable(const Chart& chart, const std::string& name) {
        return variable(chart, chart.index(name));
    }

    static Poly monomial(const Chart& chart, Exponents e, const Rational& c) {
        Poly p(chart);
        if ((int)e.size() != chart.dim()) throw std::invalid_argument("Poly: exponent size");
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first == Exponents(chart_.dim());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        auto it = terms_.find(Exponents(chart_.dim()));
        if (it == terms_.end() || terms_.size() != 1)
            throw std::domain_error("Poly: not a constant");
        return it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    bool depends_on(int var) const { return degree_in(var) > 0; }

    Poly operator-() const {
        Poly r(chart_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        require_same_chart(chart_, o.chart_, "Poly::add");
        Poly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        require_same_chart(chart_, o.chart_, "Poly::mul");
        Poly r(chart_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e(e1.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    Poly operator*(const Rational& s) const {
        Poly r(chart_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return chart_ == o.chart_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(int e) const {
        if (e < 0) throw std::domain_error("Poly: negative power");
        Poly r = one(chart_);
        for (int k = 0; k < e; ++k) r *= *this;
        return r;
    }

    /// Formal partial derivative.
    Poly derivative(int var) const {
        Poly r(chart_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, c * Rational(e[var]));
        }
        return r;
    }
    Poly derivative(const std::string& coord) const { return derivative(chart_.index(coord)); }

    /// Substitutes `value` (a polynomial on the same chart) for coordinate `var`.
    Poly substitute(int var, const Poly& value) const {
        require_same_chart(chart_, value.chart(), "Poly::substitute");
        Poly r(chart_);
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            int k = rest[var];
            rest[var] = 0;
            Poly term = monomial(chart_, rest, c) * value.pow(k);
            r += term;
        }
        return r;
    }

    /// Rewrites this polynomial on another chart; each old coordinate i maps to
    /// images[i], a polynomial on the new chart.
    Poly rewrite(const Chart& target, const std::vector<Poly>& images) const {
        if ((int)images.size() != chart_.dim())
            throw std::invalid_argument("Poly::rewrite: wrong image count");
        Poly r = zero(target);
        for (const auto& [e, c] : terms_) {
            Poly term = constant(target, c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term *= images[i].pow(e[i]);
            r += term;
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        if ((int)point.size() != chart_.dim()) throw std::invalid_argument("Poly::eval: size");
        Rational r;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < e.size(); ++i) t *= point[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    double eval_double(const std::vector<double>& point) const {
        double r = 0;
        for (const auto& [e, c] : terms_) {
            double t = c.to_double();
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            r += t;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        // Print highest total degree first, lexicographically largest exponent
        // first within a degree; stable across runs.
        std::vector<const TermMap::value_type*> ts;
        for (const auto& t : terms_) ts.push_back(&t);
        std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
            int da = 0, db = 0;
            for (int k : a->first) da += k;
            for (int k : b->first) db += k;
            if (da != db) return da > db;
            return a->first > b->first;
        });
        std::ostringstream os;
        bool first = true;
        for (auto* t : ts) {
            Rational c = t->second;
            bool neg = c < Rational(0);
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            Rational ac = c.abs();
            std::string mono = monomial_str(t->first);
            if (mono.empty())
                os << ac.str();
            else if (ac.is_one())
                os << mono;
            else
                os << ac.str() << "*" << mono;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

  private:
    std::string monomial_str(const Exponents& e) const {
        std::string s;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += chart_.name((int)i);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Chart chart_;
    TermMap terms_;
};

inline Poly operator*(const Rational& s, const Poly& p) { return p * s; }

} // namespace avgeo
