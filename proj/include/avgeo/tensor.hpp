#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "avgeo/poly.hpp"

namespace avgeo {

enum class Variance { multivector, form };

namespace detail {

using IndexTuple = std::vector<int>;

/// Merges two strictly increasing tuples; returns the permutation sign, or
/// nullopt when an index repeats.
inline std::optional<int> merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining elements of a.
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
}

/// Removes position l (0-based) from a tuple.
inline IndexTuple remove_at(const IndexTuple& t, size_t l) {
    IndexTuple r;
    r.reserve(t.size() - 1);
    for (size_t i = 0; i < t.size(); ++i)
        if (i != l) r.push_back(t[i]);
    return r;
}

inline int parity_sign(long long k) { return (k % 2 == 0) ? 1 : -1; }

} // namespace detail

/// Antisymmetric tensor of one variance (multivector field or differential
/// form) with Poly coefficients. Components are keyed by strictly increasing
/// index tuples; zero components are never stored.
class PolyTensor {
  public:
    using IndexTuple = detail::IndexTuple;
    using CompMap = std::map<IndexTuple, Poly>;

    PolyTensor() : degree_(0), var_(Variance::multivector) {}
    // Degrees above the chart dimension are allowed as types; such tensors are
    // identically zero since no strictly increasing tuple of that length exists.
    PolyTensor(Chart chart, int degree, Variance var)
        : chart_(std::move(chart)), degree_(degree), var_(var) {
        if (degree < 0) throw std::invalid_argument("PolyTensor: negative degree");
    }

    static PolyTensor from_poly(const Poly& p, Variance var) {
        PolyTensor t(p.chart(), 0, var);
        if (!p.is_zero()) t.comps_[{}] = p;
        return t;
    }
    static PolyTensor zero(const Chart& chart, int degree, Variance var) {
        return PolyTensor(chart, degree, var);
    }
    static PolyTensor basis_vector(const Chart& chart, int i) {
        PolyTensor t(chart, 1, Variance::multivector);
        t.comps_[{i}] = Poly::one(chart);
        return t;
    }
    static PolyTensor basis_form(const Chart& chart, int i) {
        PolyTensor t(chart, 1, Variance::form);
        t.comps_[{i}] = Poly::one(chart);
        return t;
    }
    /// The 1-form df.
    static PolyTensor differential(const Poly& f) {
        PolyTensor t(f.chart(), 1, Variance::form);
        for (int i = 0; i < f.chart().dim(); ++i) t.add_component({i}, f.derivative(i));
        return t;
    }
    /// Vector field with given coefficient polynomials.
    static PolyTensor vector_field(const Chart& chart, const std::vector<Poly>& coeffs) {
        if ((int)coeffs.size() != chart.dim())
            throw std::invalid_argument("vector_field: coefficient count");
        PolyTensor t(chart, 1, Variance::multivector);
        for (int i = 0; i < chart.dim(); ++i) t.add_component({i}, coeffs[i]);
        return t;
    }

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    Variance variance() const { return var_; }
    const CompMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Poly component(const IndexTuple& idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? Poly::zero(chart_) : it->second;
    }

    void add_component(const IndexTuple& idx, const Poly& c) {
        if ((int)idx.size() != degree_) throw std::invalid_argument("PolyTensor: index arity");
        for (size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] >= idx[i + 1]) throw std::invalid_argument("PolyTensor: indices not sorted");
        if (c.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_[idx] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    Poly to_poly() const {
        if (degree_ != 0) throw std::domain_error("PolyTensor: not degree 0");
        return component({});
    }

    PolyTensor operator-() const {
        PolyTensor r(chart_, degree_, var_);
        for (const auto& [i, c] : comps_) r.comps_[i] = -c;
        return r;
    }
    PolyTensor operator+(const PolyTensor& o) const {
        // Identically zero tensors act as the neutral element of any degree.
        if (is_zero() && degree_ != o.degree_) {
            require_same_chart(chart_, o.chart_, "PolyTensor::add");
            return o;
        }
        if (o.is_zero() && degree_ != o.degree_) {
            require_same_chart(chart_, o.chart_, "PolyTensor::add");
            return *this;
        }
        check_compatible(o, "PolyTensor::add");
        PolyTensor r = *this;
        for (const auto& [i, c] : o.comps_) r.add_component(i, c);
        return r;
    }
    PolyTensor operator-(const PolyTensor& o) const { return *this + (-o); }
    PolyTensor operator*(const Poly& f) const {
        PolyTensor r(chart_, degree_, var_);
        for (const auto& [i, c] : comps_) r.add_component(i, c * f);
        return r;
    }
    PolyTensor operator*(const Rational& s) const {
        PolyTensor r(chart_, degree_, var_);
        for (const auto& [i, c] : comps_) r.add_component(i, c * s);
        return r;
    }
    PolyTensor& operator+=(const PolyTensor& o) { return *this = *this + o; }
    PolyTensor& operator-=(const PolyTensor& o) { return *this = *this - o; }

    bool operator==(const PolyTensor& o) const {
        if (is_zero() && o.is_zero()) return chart_ == o.chart_ && var_ == o.var_;
        return chart_ == o.chart_ && degree_ == o.degree_ && var_ == o.var_ && comps_ == o.comps_;
    }
    bool operator!=(const PolyTensor& o) const { return !(*this == o); }

    /// Wedge product; graded commutative within one variance.
    PolyTensor wedge(const PolyTensor& o) const {
        require_same_chart(chart_, o.chart_, "wedge");
        if (var_ != o.var_) throw std::invalid_argument("wedge: variance mismatch");
        PolyTensor r(chart_, degree_ + o.degree_, var_);
        IndexTuple merged;
        for (const auto& [i1, c1] : comps_)
            for (const auto& [i2, c2] : o.comps_) {
                auto sign = detail::merge_tuples(i1, i2, merged);
                if (!sign) continue;
                r.add_component(merged, c1 * c2 * Rational(*sign));
            }
        return r;
    }

    /// Interior product of a multivector into a form, first-slot convention
    /// i_X(dx_i ∧ dx_j) = X^i dx_j − X^j dx_i, extended by i_{P∧Q} = i_P ∘ i_Q.
    PolyTensor interior(const PolyTensor& omega) const {
        require_same_chart(chart_, omega.chart_, "interior");
        if (var_ != Variance::multivector || omega.var_ != Variance::form)
            throw std::invalid_argument("interior: needs multivector into form");
        if (degree_ > omega.degree_)
            throw std::domain_error("interior: degree underflow");
        PolyTensor r(chart_, omega.degree_ - degree_, Variance::form);
        for (const auto& [I, f] : comps_)
            for (const auto& [K, w] : omega.comps_) {
                // i_{∂_I} applied right to left; each ∂_i contracts the first slot.
                IndexTuple k = K;
                int sign = 1;
                bool ok = true;
                for (auto it = I.rbegin(); it != I.rend() && ok; ++it) {
                    ok = false;
                    for (size_t pos = 0; pos < k.size(); ++pos) {
                        if (k[pos] == *it) {
                            sign *= detail::parity_sign(pos);
                            k = detail::remove_at(k, pos);
                            ok = true;
                            break;
                        }
                    }
                }
                if (!ok) continue;
                r.add_component(k, f * w * Rational(sign));
            }
        return r;
    }

    /// Exterior derivative of a form.
    PolyTensor de_rham() const {
        if (var_ != Variance::form) throw std::invalid_argument("de_rham: needs a form");
        PolyTensor r(chart_, degree_ + 1, Variance::form);
        IndexTuple merged;
        for (const auto& [K, w] : comps_)
            for (int a = 0; a < chart_.dim(); ++a) {
                Poly dw = w.derivative(a);
                if (dw.is_zero()) continue;
                auto sign = detail::merge_tuples({a}, K, merged);
                if (!sign) continue;
                r.add_component(merged, dw * Rational(*sign));
            }
        return r;
    }

    /// Schouten–Nijenhuis bracket of multivector fields. Convention: [[X,Y]]
    /// is the Lie bracket on vector fields, [[X,f]] = X(f), and
    /// [[P,Q]] = −(−1)^{(p−1)(q−1)} [[Q,P]].
    static PolyTensor schouten(const PolyTensor& P, const PolyTensor& Q) {
        require_same_chart(P.chart_, Q.chart_, "schouten");
        if (P.var_ != Variance::multivector || Q.var_ != Variance::multivector)
            throw std::invalid_argument("schouten: needs multivectors");
        int p = P.degree_, q = Q.degree_;
        int deg = p + q - 1;
        if (deg < 0) return from_poly(Poly::zero(P.chart_), Variance::multivector);
        PolyTensor r(P.chart_, deg, Variance::multivector);
        int swap_sign = detail::parity_sign((p - 1) * (q - 1));
        IndexTuple merged;
        for (const auto& [I, f] : P.comps_)
            for (const auto& [J, g] : Q.comps_) {
                // f * [[∂_I, g]] ∧ ∂_J
                for (size_t l = 0; l < I.size(); ++l) {
                    Poly dg = g.derivative(I[l]);
                    if (dg.is_zero()) continue;
                    auto sign = detail::merge_tuples(detail::remove_at(I, l), J, merged);
                    if (!sign) continue;
                    int s = *sign * detail::parity_sign(I.size() - 1 - l);
                    r.add_component(merged, f * dg * Rational(s));
                }
                // −(−1)^{(p−1)(q−1)} g * [[∂_J, f]] ∧ ∂_I
                for (size_t l = 0; l < J.size(); ++l) {
                    Poly df = f.derivative(J[l]);
                    if (df.is_zero()) continue;
                    auto sign = detail::merge_tuples(detail::remove_at(J, l), I, merged);
                    if (!sign) continue;
                    int s = -swap_sign * *sign * detail::parity_sign(J.size() - 1 - l);
                    r.add_component(merged, g * df * Rational(s));
                }
            }
        return r;
    }

    /// Lie derivative along a vector field: Schouten bracket on multivectors,
    /// homotopy formula i_X d + d i_X on forms.
    static PolyTensor lie_derivative(const PolyTensor& X, const PolyTensor& T) {
        if (X.degree_ != 1 || X.var_ != Variance::multivector)
            throw std::invalid_argument("lie_derivative: X must be a vector field");
        require_same_chart(X.chart_, T.chart_, "lie_derivative");
        if (T.var_ == Variance::multivector) return schouten(X, T);
        PolyTensor a = X.interior(T.de_rham());
        if (T.degree_ == 0) return a;
        return a + X.interior(T).de_rham();
    }

    /// Full pairing ⟨ω, P⟩ of a form and a multivector of equal degree,
    /// determinant convention ⟨dx_I, ∂_J⟩ = δ_IJ.
    static Poly pair(const PolyTensor& omega, const PolyTensor& P) {
        require_same_chart(omega.chart_, P.chart_, "pair");
        if (omega.var_ != Variance::form || P.var_ != Variance::multivector ||
            omega.degree_ != P.degree_)
            throw std::invalid_argument("pair: degree/variance mismatch");
        Poly r = Poly::zero(omega.chart_);
        for (const auto& [I, w] : omega.comps_) {
            auto it = P.comps_.find(I);
            if (it != P.comps_.end()) r += w * it->second;
        }
        return r;
    }

    /// Λ(df, dg) for a bivector Λ, determinant convention.
    static Poly bivector_eval(const PolyTensor& L, const Poly& f, const Poly& g) {
        if (L.degree_ != 2 || L.var_ != Variance::multivector)
            throw std::invalid_argument("bivector_eval: needs a bivector");
        Poly r = Poly::zero(L.chart_);
        for (const auto& [I, c] : L.comps_) {
            int i = I[0], j = I[1];
            r += c * (f.derivative(i) * g.derivative(j) - f.derivative(j) * g.derivative(i));
        }
        return r;
    }

    /// P(df_1, ..., df_k) for a degree-k multivector, determinant convention.
    static Poly multivector_eval(const PolyTensor& P, const std::vector<Poly>& fs) {
        if (P.var_ != Variance::multivector || (int)fs.size() != P.degree_)
            throw std::invalid_argument("multivector_eval: arity mismatch");
        Poly r = Poly::zero(P.chart_);
        int k = P.degree_;
        for (const auto& [I, c] : P.comps_) {
            if (k == 0) {
                r += c;
                continue;
            }
            // det of the k x k matrix D[a][b] = ∂ fs[a] / ∂ x_{I[b]}, Laplace expansion.
            std::vector<std::vector<Poly>> D(k, std::vector<Poly>(k, Poly::zero(P.chart_)));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) D[a][b] = fs[a].derivative(I[b]);
            r += c * poly_det(D);
        }
        return r;
    }

    /// Vector field applied to a function.
    static Poly apply_vector(const PolyTensor& X, const Poly& f) {
        if (X.degree_ != 1 || X.var_ != Variance::multivector)
            throw std::invalid_argument("apply_vector: needs a vector field");
        require_same_chart(X.chart_, f.chart(), "apply_vector");
        Poly r = Poly::zero(X.chart_);
        for (const auto& [I, c] : X.comps_) r += c * f.derivative(I[0]);
        return r;
    }

    /// Rewrites the tensor on a new chart under a polynomial change of
    /// coordinates. `old_in_new[i]` expresses old coordinate i on the target
    /// chart. For multivectors `new_in_old[j]` (old-chart expression of new
    /// coordinate j) must be supplied as well.
    PolyTensor change_chart(const Chart& target, const std::vector<Poly>& old_in_new,
                            const std::vector<Poly>& new_in_old = {}) const {
        if ((int)old_in_new.size() != chart_.dim())
            throw std::invalid_argument("change_chart: old_in_new count");
        PolyTensor r(target, degree_, var_);
        if (degree_ == 0) {
            for (const auto& [I, c] : comps_) r.add_component(I, c.rewrite(target, old_in_new));
            return r;
        }
        // Basis images as degree-1 tensors on the target chart.
        std::vector<PolyTensor> images;
        if (var_ == Variance::form) {
            for (int i = 0; i < chart_.dim(); ++i) {
                PolyTensor im(target, 1, Variance::form);
                for (int j = 0; j < target.dim(); ++j)
                    im.add_component({j}, old_in_new[i].derivative(j));
                images.push_back(im);
            }
        } else {
            if ((int)new_in_old.size() != target.dim())
                throw std::invalid_argument("change_chart: new_in_old required for multivectors");
            for (int i = 0; i < chart_.dim(); ++i) {
                PolyTensor im(target, 1, Variance::multivector);
                for (int j = 0; j < target.dim(); ++j)
                    im.add_component({j}, new_in_old[j].derivative(i).rewrite(target, old_in_new));
                images.push_back(im);
            }
        }
        for (const auto& [I, c] : comps_) {
            PolyTensor term = from_poly(c.rewrite(target, old_in_new), var_);
            for (int idx : I) term = term.wedge(images[idx]);
            r += term;
        }
        return r;
    }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [I, c] : comps_) {
            std::string basis = basis_str(I);
            std::string coeff = c.str();
            if (!first) os << " + ";
            first = false;
            if (basis.empty()) {
                os << coeff;
            } else if (c == Poly::one(chart_)) {
                os << basis;
            } else if (c.terms().size() > 1) {
                os << "(" << coeff << ")*" << basis;
            } else {
                os << coeff << "*" << basis;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const PolyTensor& t) { return os << t.str(); }

  private:
    static Poly poly_det(const std::vector<std::vector<Poly>>& D) {
        size_t n = D.size();
        if (n == 0) return Poly();
        if (n == 1) return D[0][0];
        Poly r = Poly::zero(D[0][0].chart());
        for (size_t j = 0; j < n; ++j) {
            if (D[0][j].is_zero()) continue;
            std::vector<std::vector<Poly>> minor;
            for (size_t i = 1; i < n; ++i) {
                std::vector<Poly> row;
                for (size_t l = 0; l < n; ++l)
                    if (l != j) row.push_back(D[i][l]);
                minor.push_back(row);
            }
            Poly term = D[0][j] * poly_det(minor);
            r += (j % 2 == 0) ? term : -term;
        }
        return r;
    }

    std::string basis_str(const IndexTuple& I) const {
        std::string s;
        for (int i : I) {
            if (!s.empty()) s += "^";
            s += (var_ == Variance::form ? "d" + chart_.name(i) : "d/d" + chart_.name(i));
        }
        return s;
    }

    void check_compatible(const PolyTensor& o, const char* where) const {
        require_same_chart(chart_, o.chart_, where);
        if (degree_ != o.degree_ || var_ != o.var_)
            throw std::invalid_argument(std::string(where) + ": degree/variance mismatch");
    }

    Chart chart_;
    int degree_;
    Variance var_;
    CompMap comps_;
};

inline PolyTensor operator*(const Poly& f, const PolyTensor& t) { return t * f; }

} // namespace avgeo
