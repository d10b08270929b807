#pragma once

#include <functional>
#include <memory>

#include "avgeo/tensor.hpp"

namespace avgeo {

/// A Lie algebroid presented in a frame: generators e_1..e_r over a base
/// chart, structure functions [e_i, e_j] = sum_k c[i][j][k] e_k and anchor
/// vector fields rho(e_i) with polynomial coefficients. The coordinate frame
/// of a chart is the special case c = 0, rho(e_i) = d/dx^i.
struct AlgebroidFrame {
    Chart base;
    std::vector<std::string> gen;
    std::vector<std::vector<std::vector<Poly>>> c; // c[i][j][k]
    std::vector<std::vector<Poly>> anchor;         // anchor[i][a]

    int rank() const { return (int)gen.size(); }

    static std::shared_ptr<const AlgebroidFrame> make(Chart base,
                                                      std::vector<std::string> gen) {
        auto f = std::make_shared<AlgebroidFrame>();
        f->base = std::move(base);
        f->gen = std::move(gen);
        int r = f->rank();
        f->c.assign(r, std::vector<std::vector<Poly>>(
                           r, std::vector<Poly>(r, Poly::zero(f->base))));
        f->anchor.assign(r, std::vector<Poly>(f->base.dim(), Poly::zero(f->base)));
        return f;
    }

    void set_bracket(int i, int j, int k, const Poly& coeff) {
        c[i][j][k] = coeff;
        c[j][i][k] = -coeff;
    }

    /// Vector field rho(e_i) as a tensor on the base chart.
    PolyTensor anchor_field(int i) const {
        PolyTensor x(base, 1, Variance::multivector);
        for (int a = 0; a < base.dim(); ++a) x.add_component({a}, anchor[i][a]);
        return x;
    }

    /// rho(e_i) applied to a base function.
    Poly anchor_apply(int i, const Poly& f) const {
        Poly r = Poly::zero(base);
        for (int a = 0; a < base.dim(); ++a) r += anchor[i][a] * f.derivative(a);
        return r;
    }
};

using FramePtr = std::shared_ptr<const AlgebroidFrame>;

/// Antisymmetric tensor over an algebroid frame: a multisection of the k-th
/// exterior power (variance multivector) or an algebroid k-form.
class FrameTensor {
  public:
    using IndexTuple = detail::IndexTuple;
    using CompMap = std::map<IndexTuple, Poly>;

    FrameTensor() : degree_(0), var_(Variance::multivector) {}
    FrameTensor(FramePtr frame, int degree, Variance var)
        : frame_(std::move(frame)), degree_(degree), var_(var) {
        if (degree < 0) throw std::invalid_argument("FrameTensor: negative degree");
    }

    static FrameTensor from_poly(FramePtr frame, const Poly& p, Variance var) {
        FrameTensor t(frame, 0, var);
        if (!p.is_zero()) t.comps_[{}] = p;
        return t;
    }
    static FrameTensor generator(FramePtr frame, int i) {
        FrameTensor t(frame, 1, Variance::multivector);
        t.comps_[{i}] = Poly::one(frame->base);
        return t;
    }
    static FrameTensor coform(FramePtr frame, int i) {
        FrameTensor t(frame, 1, Variance::form);
        t.comps_[{i}] = Poly::one(frame->base);
        return t;
    }

    const FramePtr& frame() const { return frame_; }
    int degree() const { return degree_; }
    Variance variance() const { return var_; }
    const CompMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Poly component(const IndexTuple& idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? Poly::zero(frame_->base) : it->second;
    }

    void add_component(const IndexTuple& idx, const Poly& c) {
        if ((int)idx.size() != degree_) throw std::invalid_argument("FrameTensor: index arity");
        for (size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] >= idx[i + 1]) throw std::invalid_argument("FrameTensor: not sorted");
        if (c.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_[idx] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    FrameTensor operator-() const {
        FrameTensor r(frame_, degree_, var_);
        for (const auto& [i, c] : comps_) r.comps_[i] = -c;
        return r;
    }
    FrameTensor operator+(const FrameTensor& o) const {
        if (is_zero() && degree_ != o.degree_) return o;
        if (o.is_zero() && degree_ != o.degree_) return *this;
        check_compatible(o, "FrameTensor::add");
        FrameTensor r = *this;
        for (const auto& [i, c] : o.comps_) r.add_component(i, c);
        return r;
    }
    FrameTensor operator-(const FrameTensor& o) const { return *this + (-o); }
    FrameTensor operator*(const Poly& f) const {
        FrameTensor r(frame_, degree_, var_);
        for (const auto& [i, c] : comps_) r.add_component(i, c * f);
        return r;
    }
    FrameTensor operator*(const Rational& s) const {
        FrameTensor r(frame_, degree_, var_);
        for (const auto& [i, c] : comps_) r.add_component(i, c * s);
        return r;
    }
    FrameTensor& operator+=(const FrameTensor& o) { return *this = *this + o; }
    FrameTensor& operator-=(const FrameTensor& o) { return *this = *this - o; }

    bool operator==(const FrameTensor& o) const {
        if (is_zero() && o.is_zero()) return var_ == o.var_;
        return degree_ == o.degree_ && var_ == o.var_ && comps_ == o.comps_;
    }
    bool operator!=(const FrameTensor& o) const { return !(*this == o); }

    FrameTensor wedge(const FrameTensor& o) const {
        if (var_ != o.var_) throw std::invalid_argument("FrameTensor::wedge: variance");
        FrameTensor r(frame_, degree_ + o.degree_, var_);
        IndexTuple merged;
        for (const auto& [i1, c1] : comps_)
            for (const auto& [i2, c2] : o.comps_) {
                auto sign = detail::merge_tuples(i1, i2, merged);
                if (!sign) continue;
                r.add_component(merged, c1 * c2 * Rational(*sign));
            }
        return r;
    }

    /// Interior product of a multisection into an algebroid form,
    /// i_{P∧Q} = i_P ∘ i_Q with first-slot contraction.
    FrameTensor interior(const FrameTensor& omega) const {
        if (var_ != Variance::multivector || omega.var_ != Variance::form)
            throw std::invalid_argument("FrameTensor::interior: variance");
        if (degree_ > omega.degree_)
            throw std::domain_error("FrameTensor::interior: degree underflow");
        FrameTensor r(frame_, omega.degree_ - degree_, Variance::form);
        for (const auto& [I, f] : comps_)
            for (const auto& [K, w] : omega.comps_) {
                IndexTuple k = K;
                int sign = 1;
                bool ok = true;
                for (auto it = I.rbegin(); it != I.rend() && ok; ++it) {
                    ok = false;
                    for (size_t pos = 0; pos < k.size(); ++pos)
                        if (k[pos] == *it) {
                            sign *= detail::parity_sign(pos);
                            k = detail::remove_at(k, pos);
                            ok = true;
                            break;
                        }
                }
                if (!ok) continue;
                r.add_component(k, f * w * Rational(sign));
            }
        return r;
    }

    /// Contraction of an algebroid 1-form into a multisection (first slot).
    FrameTensor contract_form(const FrameTensor& phi) const {
        if (var_ != Variance::multivector || phi.var_ != Variance::form || phi.degree_ != 1)
            throw std::invalid_argument("FrameTensor::contract_form: needs a 1-form");
        FrameTensor r(frame_, degree_ - 1, Variance::multivector);
        if (degree_ == 0) throw std::domain_error("contract_form: degree underflow");
        for (const auto& [I, c] : comps_)
            for (size_t l = 0; l < I.size(); ++l) {
                Poly pv = phi.component({I[l]});
                if (pv.is_zero()) continue;
                r.add_component(detail::remove_at(I, l),
                                c * pv * Rational(detail::parity_sign(l)));
            }
        return r;
    }

    /// Schouten bracket of the algebroid: determined by the frame structure
    /// functions, the anchor action on coefficients, and the graded Leibniz
    /// rule; same sign conventions as the coordinate Schouten bracket.
    static FrameTensor schouten(const FrameTensor& P, const FrameTensor& Q) {
        if (P.var_ != Variance::multivector || Q.var_ != Variance::multivector)
            throw std::invalid_argument("FrameTensor::schouten: needs multivectors");
        const FramePtr& fr = P.frame_;
        int p = P.degree_, q = Q.degree_;
        int deg = p + q - 1;
        if (deg < 0) return from_poly(fr, Poly::zero(fr->base), Variance::multivector);
        FrameTensor r(fr, deg, Variance::multivector);
        int swap_sign = detail::parity_sign((p - 1) * (q - 1));
        IndexTuple merged;
        for (const auto& [I, f] : P.comps_)
            for (const auto& [J, g] : Q.comps_) {
                // f [[e_I, g]] ∧ e_J with [[e_I, g]] = sum_l ± rho(e_{i_l})(g) e_{I\l}
                for (size_t l = 0; l < I.size(); ++l) {
                    Poly dg = fr->anchor_apply(I[l], g);
                    if (dg.is_zero()) continue;
                    auto sign = detail::merge_tuples(detail::remove_at(I, l), J, merged);
                    if (!sign) continue;
                    int s = *sign * detail::parity_sign(I.size() - 1 - l);
                    r.add_component(merged, f * dg * Rational(s));
                }
                // − swap_sign * g [[e_J, f]] ∧ e_I
                for (size_t l = 0; l < J.size(); ++l) {
                    Poly df = fr->anchor_apply(J[l], f);
                    if (df.is_zero()) continue;
                    auto sign = detail::merge_tuples(detail::remove_at(J, l), I, merged);
                    if (!sign) continue;
                    int s = -swap_sign * *sign * detail::parity_sign(J.size() - 1 - l);
                    r.add_component(merged, g * df * Rational(s));
                }
                // fg sum_{k,l} (-1)^{k+l} [e_{i_k}, e_{j_l}] ∧ e_{I\k} ∧ e_{J\l}
                for (size_t k = 0; k < I.size(); ++k)
                    for (size_t l = 0; l < J.size(); ++l) {
                        int base_sign =
                            detail::parity_sign((long long)(k + 1) + (long long)(l + 1));
                        IndexTuple rest1 = detail::remove_at(I, k);
                        IndexTuple rest2 = detail::remove_at(J, l);
                        IndexTuple rest;
                        auto s12 = detail::merge_tuples(rest1, rest2, rest);
                        if (!s12) continue;
                        for (int m = 0; m < fr->rank(); ++m) {
                            Poly coeff = fr->c[I[k]][J[l]][m];
                            if (coeff.is_zero()) continue;
                            auto sm = detail::merge_tuples({m}, rest, merged);
                            if (!sm) continue;
                            // bracket factor stands leftmost: (-1)^{k+l}
                            // [e_ik, e_jl] ∧ rest, with k,l counted from 1
                            int s = base_sign * *s12 * *sm;
                            r.add_component(merged, f * g * coeff * Rational(s));
                        }
                    }
            }
        return r;
    }

    /// Algebroid exterior derivative of a form.
    FrameTensor de_rham() const {
        if (var_ != Variance::form) throw std::invalid_argument("FrameTensor::de_rham");
        const FramePtr& fr = frame_;
        int k = degree_;
        FrameTensor r(fr, k + 1, Variance::form);
        if (k + 1 > fr->rank()) return r;
        // iterate over sorted (k+1)-tuples
        IndexTuple idx(k + 1);
        std::function<void(int, int)> walk = [&](int pos, int start) {
            if (pos == k + 1) {
                Poly val = Poly::zero(fr->base);
                for (int j = 0; j <= k; ++j) {
                    Poly w = component(detail::remove_at(idx, j));
                    if (!w.is_zero())
                        val += Rational(detail::parity_sign(j)) * fr->anchor_apply(idx[j], w);
                }
                for (int a = 0; a <= k; ++a)
                    for (int b = a + 1; b <= k; ++b) {
                        // omega([e_a, e_b], rest)
                        IndexTuple rest = detail::remove_at(detail::remove_at(idx, b), a);
                        for (int m = 0; m < fr->rank(); ++m) {
                            Poly coeff = fr->c[idx[a]][idx[b]][m];
                            if (coeff.is_zero()) continue;
                            // insert m into rest
                            IndexTuple full;
                            auto sm = detail::merge_tuples({m}, rest, full);
                            if (!sm) continue;
                            Poly w = component(full);
                            if (w.is_zero()) continue;
                            val += Rational(detail::parity_sign(a + b) * *sm) * coeff * w;
                        }
                    }
                r.add_component(idx, val);
                return;
            }
            for (int i = start; i < fr->rank(); ++i) {
                idx[pos] = i;
                walk(pos + 1, i + 1);
            }
        };
        walk(0, 0);
        return r;
    }

    /// Lie differential along a multisection Y on forms:
    /// i_Y d - (-1)^{|Y|} d i_Y.
    static FrameTensor lie_differential(const FrameTensor& Y, const FrameTensor& omega) {
        int target = omega.degree_ - Y.degree_ + 1;
        FrameTensor r(Y.frame_, std::max(target, 0), Variance::form);
        if (target < 0) return r;
        if (Y.degree_ <= omega.degree_ + 1) r += Y.interior(omega.de_rham());
        if (Y.degree_ <= omega.degree_) {
            FrameTensor b = Y.interior(omega).de_rham();
            r += (Y.degree_ % 2 == 0) ? -b : b;
        }
        return r;
    }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [I, c] : comps_) {
            std::string basis;
            for (int i : I) {
                if (!basis.empty()) basis += "^";
                basis += (var_ == Variance::form ? frame_->gen[i] + "*" : frame_->gen[i]);
            }
            if (!first) os << " + ";
            first = false;
            if (basis.empty())
                os << c.str();
            else if (c == Poly::one(frame_->base))
                os << basis;
            else
                os << "(" << c.str() << ")*" << basis;
        }
        return os.str();
    }

  private:
    void check_compatible(const FrameTensor& o, const char* where) const {
        if (degree_ != o.degree_ || var_ != o.var_)
            throw std::invalid_argument(std::string(where) + ": degree/variance mismatch");
    }

    FramePtr frame_;
    int degree_;
    Variance var_;
    CompMap comps_;
};

inline FrameTensor operator*(const Poly& f, const FrameTensor& t) { return t * f; }

/// Frame of invariant derivations over a base chart: generators d/dx^a plus
/// the fundamental direction u with zero brackets and zero anchor for u.
inline FramePtr derivations_frame(const Chart& base) {
    std::vector<std::string> names;
    for (const auto& n : base.names()) names.push_back("d/d" + n);
    names.push_back("u");
    auto f = std::make_shared<AlgebroidFrame>();
    f->base = base;
    f->gen = names;
    int r = (int)names.size();
    f->c.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, Poly::zero(base))));
    f->anchor.assign(r, std::vector<Poly>(base.dim(), Poly::zero(base)));
    for (int i = 0; i < base.dim(); ++i) f->anchor[i][i] = Poly::one(base);
    return f;
}

/// Frame of invariant first-order operators: generators d/dx^a, u, w with
/// [u, w] = -u; the closed 1-form dual to w plays the role of phi0.
inline FramePtr operators_frame(const Chart& base) {
    std::vector<std::string> names;
    for (const auto& n : base.names()) names.push_back("d/d" + n);
    names.push_back("u");
    names.push_back("w");
    auto f = std::make_shared<AlgebroidFrame>();
    f->base = base;
    f->gen = names;
    int r = (int)names.size();
    f->c.assign(r, std::vector<std::vector<Poly>>(r, std::vector<Poly>(r, Poly::zero(base))));
    f->anchor.assign(r, std::vector<Poly>(base.dim(), Poly::zero(base)));
    int n = base.dim();
    for (int i = 0; i < n; ++i) f->anchor[i][i] = Poly::one(base);
    f->set_bracket(n, n + 1, n, -Poly::one(base));
    return f;
}

inline FrameTensor operators_phi0(const FramePtr& fr) {
    return FrameTensor::coform(fr, fr->rank() - 1);
}

/// Schouten bracket twisted by a closed algebroid 1-form phi:
/// [[P,Q]]^phi = [[P,Q]] + (p-1) P ∧ i_phi Q - (-1)^{(p-1)(q-1)} (q-1) Q ∧ i_phi P.
inline FrameTensor schouten_twisted(const FrameTensor& P, const FrameTensor& Q,
                                    const FrameTensor& phi) {
    FrameTensor r = FrameTensor::schouten(P, Q);
    int p = P.degree(), q = Q.degree();
    // i_phi of a degree-0 argument vanishes, so those corrections drop out.
    if (p != 1 && q >= 1) r += P.wedge(Q.contract_form(phi)) * Rational(p - 1);
    if (q != 1 && p >= 1) {
        int sign = -detail::parity_sign((p - 1) * (q - 1)) * (q - 1);
        r += Q.wedge(P.contract_form(phi)) * Rational(sign);
    }
    return r;
}

} // namespace avgeo
