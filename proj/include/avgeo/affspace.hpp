#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "avgeo/linalg.hpp"

namespace avgeo {

/// A finite-dimensional affine, special affine, or (bi)special vector space,
/// stored through its vector hull. Points of an affine space are the hull
/// vectors on the level-1 set of `one`; the model space is ker(one). A
/// distinguished model vector v0 makes the space special; a distinguished
/// covector phi0 (with phi0(v0) = 0) gives the bispecial presentation.
struct HullSpace {
    int hull_dim = 0;
    std::optional<RatVec> one;
    std::optional<RatVec> v0;
    std::optional<RatVec> phi0;
    std::string label;

    bool is_affine() const { return one.has_value(); }
    bool is_special_affine() const { return one && v0; }
    bool is_special_vector() const { return v0 && !one; }
    bool is_bispecial() const { return v0 && phi0 && !one; }

    /// Dimension of the space itself: hull_dim - 1 for affine kinds, hull_dim
    /// for plain vector kinds.
    int dim() const { return one ? hull_dim - 1 : hull_dim; }

    void validate() const {
        auto check_size = [&](const std::optional<RatVec>& v, const char* what) {
            if (v && (int)v->size() != hull_dim)
                throw std::invalid_argument(std::string("HullSpace: bad size for ") + what);
        };
        check_size(one, "one");
        check_size(v0, "v0");
        check_size(phi0, "phi0");
        if (one && is_zero(*one)) throw std::invalid_argument("HullSpace: one vanishes");
        if (v0 && is_zero(*v0)) throw std::invalid_argument("HullSpace: v0 vanishes");
        if (one && v0 && !dot(*one, *v0).is_zero())
            throw std::invalid_argument("HullSpace: one(v0) != 0");
        if (phi0 && v0 && !dot(*phi0, *v0).is_zero())
            throw std::invalid_argument("HullSpace: phi0(v0) != 0");
    }

    /// A particular point (hull vector with one = 1).
    RatVec base_point() const {
        if (!one) throw std::domain_error("HullSpace: not affine");
        RatMat row(1, hull_dim);
        for (int j = 0; j < hull_dim; ++j) row(0, j) = (*one)[j];
        auto x = solve(row, {Rational(1)});
        if (!x) throw std::domain_error("HullSpace: no points");
        return *x;
    }

    /// Basis of the model vector space ker(one).
    RatMat model_basis() const {
        if (!one) throw std::domain_error("HullSpace: not affine");
        RatMat row(1, hull_dim);
        for (int j = 0; j < hull_dim; ++j) row(0, j) = (*one)[j];
        return kernel_basis(row);
    }

    /// Affine basis: dim+1 points whose differences span the model space.
    std::vector<RatVec> affine_basis() const {
        RatVec p0 = base_point();
        RatMat mb = model_basis();
        std::vector<RatVec> pts{p0};
        for (int j = 0; j < mb.cols(); ++j) pts.push_back(p0 + mb.col(j));
        return pts;
    }
};

/// Linear map of hulls carrying a morphism of the represented spaces.
struct AffMorphism {
    HullSpace source;
    HullSpace target;
    RatMat matrix; // target.hull_dim x source.hull_dim

    RatVec apply(const RatVec& v) const { return matrix * v; }

    /// F*(one_target) == one_source; maps points to points.
    bool respects_one() const {
        if (!source.one || !target.one) return false;
        return matrix.transpose() * *target.one == *source.one;
    }
    bool respects_v0() const {
        if (!source.v0 || !target.v0) return false;
        return matrix * *source.v0 == *target.v0;
    }
    bool respects_phi0() const {
        if (!source.phi0 || !target.phi0) return false;
        return matrix.transpose() * *target.phi0 == *source.phi0;
    }

    /// Checks every structure field carried by both ends.
    bool is_structure_morphism() const {
        if (source.one && target.one && !respects_one()) return false;
        if (source.v0 && target.v0 && !respects_v0()) return false;
        if (source.phi0 && target.phi0 && !respects_phi0()) return false;
        return true;
    }
};

struct IsoWitness {
    AffMorphism forward;
    AffMorphism backward;

    bool verify() const {
        if (!(backward.matrix * forward.matrix).is_identity()) return false;
        if (!(forward.matrix * backward.matrix).is_identity()) return false;
        return forward.is_structure_morphism() && backward.is_structure_morphism();
    }
};

/// Barycentric / vector combination. Weight sum 1 gives a point, weight sum 0
/// gives a model vector; anything else is rejected.
inline RatVec combine(const HullSpace& space, const std::vector<RatVec>& points,
                      const std::vector<Rational>& weights) {
    if (points.size() != weights.size())
        throw std::invalid_argument("combine: arity mismatch");
    if (!space.one) throw std::invalid_argument("combine: space is not affine");
    Rational wsum;
    for (const auto& w : weights) wsum += w;
    if (!wsum.is_zero() && !wsum.is_one())
        throw std::invalid_argument("combine: weight sum must be 0 or 1, got " + wsum.str());
    RatVec r(space.hull_dim);
    for (size_t i = 0; i < points.size(); ++i) {
        if (!dot(*space.one, points[i]).is_one())
            throw std::invalid_argument("combine: operand is not a point of the space");
        r = r + weights[i] * points[i];
    }
    return r;
}

/// Vector dual: affine A -> special vector A^dag (v0 = one_A); special vector
/// (V, v0) -> its affine hyperspace in V* (one = v0). Applying it twice
/// returns to the original presentation.
inline HullSpace vector_dual(const HullSpace& a) {
    HullSpace d;
    d.hull_dim = a.hull_dim;
    d.label = a.label + "^dag";
    if (a.one) {
        d.v0 = a.one;
        if (a.v0) d.phi0 = a.v0;
    } else if (a.v0) {
        d.one = a.v0;
        if (a.phi0) d.v0 = a.phi0;
    } else {
        throw std::invalid_argument("vector_dual: no structure to dualize");
    }
    d.validate();
    return d;
}

/// Special affine dual A^# (swap of one and v0); on bispecial data swaps v0
/// and phi0. Involutive on the nose.
inline HullSpace special_dual(const HullSpace& a) {
    HullSpace d;
    d.hull_dim = a.hull_dim;
    d.label = a.label + "^#";
    if (a.one && a.v0) {
        d.one = a.v0;
        d.v0 = a.one;
    } else if (a.is_bispecial()) {
        d.v0 = a.phi0;
        d.phi0 = a.v0;
    } else {
        throw std::invalid_argument("special_dual: needs a special affine space");
    }
    d.validate();
    return d;
}

/// Adjoint space: same hull, distinguished vector negated.
inline HullSpace adjoint(const HullSpace& a) {
    HullSpace r = a;
    if (!r.v0) throw std::invalid_argument("adjoint: needs v0");
    r.v0 = Rational(-1) * *r.v0;
    r.label = a.label + "~";
    return r;
}

/// The canonical special pairing <a, phi> = phi(a) between A and A^#.
inline Rational special_pairing(const RatVec& point, const RatVec& dual_point) {
    return dot(point, dual_point);
}

/// For a one-dimensional special affine space Z, the difference map
/// sigma -> (sigma' -> sigma - sigma') extends to a linear isomorphism of the
/// hull with the vector dual, identifying Z with adjoint(Z)^#.
inline IsoWitness difference_iso(const HullSpace& z) {
    if (!z.is_special_affine() || z.hull_dim != 2)
        throw std::invalid_argument("difference_iso: needs a 1-dim special affine space");
    const RatVec& one = *z.one;
    const RatVec& v0 = *z.v0;
    int k = v0[0].is_zero() ? 1 : 0;
    // B(u,u') v0 = one(u') u - one(u) u'
    auto B = [&](const RatVec& u, const RatVec& u2) {
        RatVec w = dot(one, u2) * u - dot(one, u) * u2;
        Rational lam = w[k] / v0[k];
        if (!(w == lam * v0)) throw std::domain_error("difference_iso: degenerate data");
        return lam;
    };
    RatVec e0{Rational(1), Rational(0)}, e1{Rational(0), Rational(1)};
    RatMat M(2, 2);
    M(0, 0) = B(e0, e0);
    M(0, 1) = B(e1, e0);
    M(1, 0) = B(e0, e1);
    M(1, 1) = B(e1, e1);
    HullSpace target = special_dual(adjoint(z));
    IsoWitness w;
    w.forward = {z, target, M};
    w.backward = {target, z, inverse(M)};
    return w;
}

/// A constructed space together with its presentation: hull coordinates are
/// related to an ambient coordinate space by to_ambient/from_ambient with
/// from_ambient * to_ambient = id.
struct Construction {
    HullSpace space;
    RatMat to_ambient;
    RatMat from_ambient;
    int ambient_dim = 0;
    std::vector<AffMorphism> maps; // projections for products, embeddings for sums
};

namespace spaces {

inline RatVec concat(const RatVec& a, const RatVec& b) {
    RatVec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}
inline RatVec pad_left(const RatVec& a, int total) {
    RatVec r = a;
    r.resize(total);
    return r;
}

/// Left inverse of a full-column-rank matrix.
inline RatMat left_inverse(const RatMat& E) {
    RatMat Et = E.transpose();
    return inverse(Et * E) * Et;
}

/// Product of affine (or cospecial vector) spaces: the hull is the kernel of
/// one_1 - one_2 inside the ambient direct sum.
inline Construction product_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.one || !a2.one) throw std::invalid_argument("product: operands need one");
    int n1 = a1.hull_dim, n2 = a2.hull_dim, N = n1 + n2;
    RatMat row(1, N);
    for (int j = 0; j < n1; ++j) row(0, j) = (*a1.one)[j];
    for (int j = 0; j < n2; ++j) row(0, n1 + j) = -(*a2.one)[j];
    RatMat E = kernel_basis(row);
    RatMat F = left_inverse(E);
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = E;
    c.from_ambient = F;
    c.space.hull_dim = E.cols();
    c.space.one = E.transpose() * pad_left(*a1.one, N);
    c.space.label = a1.label + "*" + a2.label;
    if (a1.v0 && a2.v0) c.space.v0 = F * concat(*a1.v0, *a2.v0);
    c.space.validate();
    // projections
    RatMat p1(n1, N), p2(n2, N);
    for (int i = 0; i < n1; ++i) p1(i, i) = 1;
    for (int i = 0; i < n2; ++i) p2(i, n1 + i) = 1;
    c.maps.push_back({c.space, a1, p1 * E});
    c.maps.push_back({c.space, a2, p2 * E});
    return c;
}

/// Direct sum of affine (or cospecial) spaces: ambient direct sum with the
/// summed functional.
inline Construction sum_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.one || !a2.one) throw std::invalid_argument("sum: operands need one");
    int n1 = a1.hull_dim, n2 = a2.hull_dim, N = n1 + n2;
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = RatMat::identity(N);
    c.from_ambient = RatMat::identity(N);
    c.space.hull_dim = N;
    c.space.one = concat(*a1.one, *a2.one);
    c.space.label = a1.label + "+" + a2.label;
    if (a1.v0 && a2.v0) c.space.v0 = concat(*a1.v0, *a2.v0); // not canonical; rarely used
    c.space.validate();
    RatMat e1(N, n1), e2(N, n2);
    for (int i = 0; i < n1; ++i) e1(i, i) = 1;
    for (int i = 0; i < n2; ++i) e2(n1 + i, i) = 1;
    c.maps.push_back({a1, c.space, e1});
    c.maps.push_back({a2, c.space, e2});
    return c;
}

/// Product of special vector spaces.
inline Construction product_special_vector(const HullSpace& v1, const HullSpace& v2) {
    if (!v1.v0 || !v2.v0) throw std::invalid_argument("sv product: operands need v0");
    int n1 = v1.hull_dim, n2 = v2.hull_dim, N = n1 + n2;
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = RatMat::identity(N);
    c.from_ambient = RatMat::identity(N);
    c.space.hull_dim = N;
    c.space.v0 = concat(*v1.v0, *v2.v0);
    c.space.label = v1.label + "*" + v2.label;
    c.space.validate();
    RatMat p1(n1, N), p2(n2, N);
    for (int i = 0; i < n1; ++i) p1(i, i) = 1;
    for (int i = 0; i < n2; ++i) p2(i, n1 + i) = 1;
    c.maps.push_back({c.space, v1, p1});
    c.maps.push_back({c.space, v2, p2});
    return c;
}

/// Special direct sum: quotient by the span of (v0_1, -v0_2).
inline Construction sum_special_vector(const HullSpace& v1, const HullSpace& v2) {
    if (!v1.v0 || !v2.v0) throw std::invalid_argument("sv sum: operands need v0");
    int n1 = v1.hull_dim, n2 = v2.hull_dim, N = n1 + n2;
    RatMat line = RatMat::from_cols({concat(*v1.v0, Rational(-1) * *v2.v0)});
    QuotientMap q = quotient_by(line, N);
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = q.section;
    c.from_ambient = q.proj;
    c.space.hull_dim = N - 1;
    c.space.v0 = q.proj * pad_left(*v1.v0, N);
    c.space.label = v1.label + "+" + v2.label;
    c.space.validate();
    RatMat e1(N, n1), e2(N, n2);
    for (int i = 0; i < n1; ++i) e1(i, i) = 1;
    for (int i = 0; i < n2; ++i) e2(n1 + i, i) = 1;
    c.maps.push_back({v1, c.space, q.proj * e1});
    c.maps.push_back({v2, c.space, q.proj * e2});
    return c;
}

/// Product in the special affine category: affine product with paired v0.
inline Construction product_special_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.is_special_affine() || !a2.is_special_affine())
        throw std::invalid_argument("sa product: operands must be special affine");
    Construction c = product_affine(a1, a2);
    c.space.v0 = c.from_ambient * concat(*a1.v0, *a2.v0);
    c.space.validate();
    return c;
}

/// Direct sum in the special affine category: affine sum quotiented by the
/// span of (v0_1, -v0_2).
inline Construction sum_special_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.is_special_affine() || !a2.is_special_affine())
        throw std::invalid_argument("sa sum: operands must be special affine");
    int n1 = a1.hull_dim, n2 = a2.hull_dim, N = n1 + n2;
    RatMat line = RatMat::from_cols({concat(*a1.v0, Rational(-1) * *a2.v0)});
    QuotientMap q = quotient_by(line, N);
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = q.section;
    c.from_ambient = q.proj;
    c.space.hull_dim = N - 1;
    c.space.one = q.section.transpose() * concat(*a1.one, *a2.one);
    c.space.v0 = q.proj * pad_left(*a1.v0, N);
    c.space.label = a1.label + "+" + a2.label;
    c.space.validate();
    RatMat e1(N, n1), e2(N, n2);
    for (int i = 0; i < n1; ++i) e1(i, i) = 1;
    for (int i = 0; i < n2; ++i) e2(n1 + i, i) = 1;
    c.maps.push_back({a1, c.space, q.proj * e1});
    c.maps.push_back({a2, c.space, q.proj * e2});
    return c;
}

/// Reduced product: affine product quotiented by the span of (v0_1, -v0_2),
/// with distinguished vector the class of (v0_1, v0_2).
inline Construction reduced_product(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.is_special_affine() || !a2.is_special_affine())
        throw std::invalid_argument("reduced product: operands must be special affine");
    Construction p = product_affine(a1, a2);
    int d = p.space.hull_dim;
    RatVec line_amb = concat(*a1.v0, Rational(-1) * *a2.v0);
    RatVec line = p.from_ambient * line_amb;
    if (!(p.to_ambient * line == line_amb))
        throw std::domain_error("reduced product: v0 line not inside the product hull");
    QuotientMap q = quotient_by(RatMat::from_cols({line}), d);
    Construction c;
    c.ambient_dim = p.ambient_dim;
    c.to_ambient = p.to_ambient * q.section;
    c.from_ambient = q.proj * p.from_ambient;
    c.space.hull_dim = d - 1;
    c.space.one = c.to_ambient.transpose() * pad_left(*a1.one, p.ambient_dim);
    c.space.v0 = c.from_ambient * concat(*a1.v0, *a2.v0);
    c.space.label = a1.label + "#" + a2.label;
    c.space.validate();
    return c;
}

/// Affine tensor product: the hull is the Kronecker product of hulls with the
/// product functional.
inline Construction tensor_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.one || !a2.one) throw std::invalid_argument("a tensor: operands need one");
    int N = a1.hull_dim * a2.hull_dim;
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = RatMat::identity(N);
    c.from_ambient = RatMat::identity(N);
    c.space.hull_dim = N;
    RatMat o1(1, a1.hull_dim), o2(1, a2.hull_dim);
    for (int j = 0; j < a1.hull_dim; ++j) o1(0, j) = (*a1.one)[j];
    for (int j = 0; j < a2.hull_dim; ++j) o2(0, j) = (*a2.one)[j];
    c.space.one = o1.kron(o2).row(0);
    c.space.label = a1.label + "(x)" + a2.label;
    c.space.validate();
    return c;
}

inline RatVec kron_vec(const RatVec& a, const RatVec& b) {
    RatVec r(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

/// Special affine tensor product: quotient of the affine tensor product by
/// differences of point (x) v0 insertions.
inline Construction tensor_special_affine(const HullSpace& a1, const HullSpace& a2) {
    if (!a1.is_special_affine() || !a2.is_special_affine())
        throw std::invalid_argument("sa tensor: operands must be special affine");
    Construction t = tensor_affine(a1, a2);
    int N = t.space.hull_dim;
    std::vector<RatVec> gens;
    for (const auto& p : a1.affine_basis()) gens.push_back(kron_vec(p, *a2.v0));
    for (const auto& q : a2.affine_basis()) gens.push_back(kron_vec(*a1.v0, q));
    std::vector<RatVec> diffs;
    for (size_t i = 1; i < gens.size(); ++i) diffs.push_back(gens[i] - gens[0]);
    // prune to an independent spanning set
    std::vector<RatVec> basis;
    for (const auto& v : diffs) {
        basis.push_back(v);
        if (rank(RatMat::from_cols(basis)) != (int)basis.size()) basis.pop_back();
    }
    QuotientMap q = quotient_by(RatMat::from_cols(basis), N);
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = q.section;
    c.from_ambient = q.proj;
    c.space.hull_dim = N - (int)basis.size();
    c.space.one = q.section.transpose() * *t.space.one;
    c.space.v0 = q.proj * gens[0];
    c.space.label = a1.label + "(xsa)" + a2.label;
    c.space.validate();
    return c;
}

/// k-th affine wedge power, realized as the exterior power of the hull: a
/// plain vector space of dimension C(hull_dim, k).
inline Construction wedge_affine(const HullSpace& a, int k) {
    if (k < 1 || k > a.hull_dim) throw std::invalid_argument("wedge: bad degree");
    long long binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (a.hull_dim - i) / (i + 1);
    Construction c;
    c.ambient_dim = (int)binom;
    c.to_ambient = RatMat::identity((int)binom);
    c.from_ambient = RatMat::identity((int)binom);
    c.space.hull_dim = (int)binom;
    c.space.label = "wedge^" + std::to_string(k) + "(" + a.label + ")";
    return c;
}

/// Specialization of an affine space: S_A = (A x I, (0,1)); ambient is
/// hull(A) + coordinates (t, z) of the hull of the affine line I.
inline Construction specialize_affine(const HullSpace& a) {
    if (!a.one) throw std::invalid_argument("specialize: operand needs one");
    int n = a.hull_dim, N = n + 2;
    RatMat row(1, N);
    for (int j = 0; j < n; ++j) row(0, j) = (*a.one)[j];
    row(0, n + 1) = -1; // kernel of one_A - z
    RatMat E = kernel_basis(row);
    RatMat F = left_inverse(E);
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = E;
    c.from_ambient = F;
    c.space.hull_dim = E.cols();
    RatVec one_amb(N);
    for (int j = 0; j < n; ++j) one_amb[j] = (*a.one)[j];
    c.space.one = E.transpose() * one_amb;
    RatVec v0_amb(N);
    v0_amb[n] = 1; // the vector (0; 1, 0): direction t of I
    c.space.v0 = F * v0_amb;
    c.space.label = "S(" + a.label + ")";
    c.space.validate();
    return c;
}

/// Specialization of a (co)special-vector-space presentation: V x K with
/// v0 = (0,1); a cospecial input contributes phi0 = (phi, 0).
inline Construction specialize_vector(const HullSpace& v) {
    int n = v.hull_dim, N = n + 1;
    Construction c;
    c.ambient_dim = N;
    c.to_ambient = RatMat::identity(N);
    c.from_ambient = RatMat::identity(N);
    c.space.hull_dim = N;
    RatVec v0(N);
    v0[n] = 1;
    c.space.v0 = v0;
    if (v.one) c.space.phi0 = pad_left(*v.one, N);
    c.space.label = "S(" + v.label + ")";
    c.space.validate();
    return c;
}

/// The hull of an affine space viewed as a cospecial vector space.
inline HullSpace hull_cospecial(const HullSpace& a) {
    if (!a.one) throw std::invalid_argument("hull_cospecial: operand needs one");
    HullSpace h;
    h.hull_dim = a.hull_dim;
    h.one = a.one;
    h.label = "hull(" + a.label + ")";
    return h;
}

/// A vector-kind space promoted to its canonical affine presentation: hull
/// V + K with `one` reading off the new coordinate.
inline HullSpace affine_from_vector(const HullSpace& v) {
    HullSpace r;
    r.hull_dim = v.hull_dim + 1;
    RatVec one(r.hull_dim);
    one[v.hull_dim] = 1;
    r.one = one;
    if (v.v0) r.v0 = pad_left(*v.v0, r.hull_dim);
    r.label = v.label + "_aff";
    r.validate();
    return r;
}

} // namespace spaces

enum class ConstructKind {
    a_times,
    a_oplus,
    sv_times,
    sv_oplus,
    cv_times,
    cv_oplus,
    sa_times,
    sa_oplus,
    boxtimes,
    a_tensor,
    sa_tensor,
    specialization,
};

inline Construction categorial_construct(ConstructKind kind, const HullSpace& x,
                                         const HullSpace& y) {
    using namespace spaces;
    switch (kind) {
        case ConstructKind::a_times:
        case ConstructKind::cv_times: return product_affine(x, y);
        case ConstructKind::a_oplus:
        case ConstructKind::cv_oplus: return sum_affine(x, y);
        case ConstructKind::sv_times: return product_special_vector(x, y);
        case ConstructKind::sv_oplus: return sum_special_vector(x, y);
        case ConstructKind::sa_times: return product_special_affine(x, y);
        case ConstructKind::sa_oplus: return sum_special_affine(x, y);
        case ConstructKind::boxtimes: return reduced_product(x, y);
        case ConstructKind::a_tensor: return tensor_affine(x, y);
        case ConstructKind::sa_tensor: return tensor_special_affine(x, y);
        case ConstructKind::specialization: return specialize_affine(x);
    }
    throw std::invalid_argument("categorial_construct: unknown kind");
}

// ---------------------------------------------------------------------------
// Canonical duality isomorphisms, returned as verified witnesses.
// ---------------------------------------------------------------------------

enum class DualityId {
    product_hull,          // hull(A1 x A2) = hull(A1) x_cv hull(A2)
    sum_hull,              // hull(A1 + A2) = hull(A1) +_cv hull(A2)
    product_dual,          // (A1 x A2)^dag = A1^dag +_sv A2^dag
    sum_dual,              // (A1 + A2)^dag = A1^dag x_sv A2^dag
    reduced_product_dual,  // (A1 # A2)^# = A1^# # A2^#
    sa_product_dual,       // (A1 x_sa A2)^# = A1^# +_sa A2^#
    sa_sum_dual,           // (A1 +_sa A2)^# = A1^# x_sa A2^#
    specialization_dual,   // S_A^# = A^dag
    specialization_hull,   // hull(S_A) = S_{hull A}
    specialization_sum,    // S_{A1 + A2} = S_{A1} +_sa S_{A2}
    specialization_product // S_{A1 x A2} = S_{A1} # S_{A2}
};

struct DualityResult {
    HullSpace lhs;
    HullSpace rhs;
    IsoWitness witness; // forward: rhs -> lhs
    bool ok = false;
    std::string detail;
};

namespace detail_duality {

inline DualityResult finish(HullSpace lhs, HullSpace rhs, RatMat M, const std::string& name) {
    DualityResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.witness.forward = {rhs, lhs, M};
    try {
        r.witness.backward = {lhs, rhs, inverse(M)};
        r.ok = r.witness.verify();
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = name + ": canonical map is singular";
        return r;
    }
    r.detail = name + (r.ok ? ": verified" : ": FAILED");
    return r;
}

} // namespace detail_duality

inline DualityResult verify_duality(DualityId id, const HullSpace& a1, const HullSpace& a2) {
    using namespace spaces;
    using detail_duality::finish;
    switch (id) {
        case DualityId::product_hull: {
            Construction lhs = product_affine(a1, a2);
            Construction rhs = product_affine(hull_cospecial(a1), hull_cospecial(a2));
            RatMat M = rhs.from_ambient * lhs.to_ambient;
            return finish(hull_cospecial(lhs.space), rhs.space, M, "product_hull");
        }
        case DualityId::sum_hull: {
            Construction lhs = sum_affine(a1, a2);
            Construction rhs = sum_affine(hull_cospecial(a1), hull_cospecial(a2));
            RatMat M = rhs.from_ambient * lhs.to_ambient;
            return finish(hull_cospecial(lhs.space), rhs.space, M, "sum_hull");
        }
        case DualityId::product_dual: {
            Construction prod = product_affine(a1, a2);
            HullSpace lhs = vector_dual(prod.space);
            Construction rhs = sum_special_vector(vector_dual(a1), vector_dual(a2));
            // class of (xi1, xi2) restricts along the product hull embedding
            RatMat M = prod.to_ambient.transpose() * rhs.to_ambient;
            return finish(lhs, rhs.space, M, "product_dual");
        }
        case DualityId::sum_dual: {
            Construction sum = sum_affine(a1, a2);
            HullSpace lhs = vector_dual(sum.space);
            Construction rhs = product_special_vector(vector_dual(a1), vector_dual(a2));
            RatMat M = RatMat::identity(lhs.hull_dim);
            return finish(lhs, rhs.space, M, "sum_dual");
        }
        case DualityId::reduced_product_dual: {
            Construction box = reduced_product(a1, a2);
            HullSpace lhs = special_dual(box.space);
            Construction rhs = reduced_product(special_dual(a1), special_dual(a2));
            // The pairing of reduced products is the mean of the factor
            // pairings; the 1/2 is forced by the paired distinguished vectors
            // on both sides.
            RatMat M = (box.to_ambient.transpose() * rhs.to_ambient) * Rational(1, 2);
            return finish(lhs, rhs.space, M, "reduced_product_dual");
        }
        case DualityId::sa_product_dual: {
            Construction prod = product_special_affine(a1, a2);
            HullSpace lhs = special_dual(prod.space);
            Construction rhs = sum_special_affine(special_dual(a1), special_dual(a2));
            RatMat M = prod.to_ambient.transpose() * rhs.to_ambient;
            return finish(lhs, rhs.space, M, "sa_product_dual");
        }
        case DualityId::sa_sum_dual: {
            Construction sum = sum_special_affine(a1, a2);
            HullSpace lhs = special_dual(sum.space);
            Construction rhs = product_special_affine(special_dual(a1), special_dual(a2));
            RatMat M = sum.to_ambient.transpose() * rhs.to_ambient;
            return finish(lhs, rhs.space, M, "sa_sum_dual");
        }
        case DualityId::specialization_dual: {
            Construction s = specialize_affine(a1);
            HullSpace lhs = special_dual(s.space);
            HullSpace rhs = spaces::affine_from_vector(vector_dual(a1));
            // (psi, w) maps to the functional (u,(t,z)) -> psi(u) + w t on the
            // hull of S_A; in the dual coordinates its value on basis column i
            // is psi(u_i) + w t_i.
            int n = a1.hull_dim, d = s.space.hull_dim;
            RatMat Et = s.to_ambient.transpose(); // d x (n+2)
            RatMat M(d, n + 1);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < n; ++j) M(i, j) = Et(i, j);
                M(i, n) = Et(i, n); // the t-slot
            }
            return finish(lhs, rhs, M, "specialization_dual");
        }
        case DualityId::specialization_hull: {
            Construction s = specialize_affine(a1);
            HullSpace lhs; // the hull of S_A as a bispecial vector space
            lhs.hull_dim = s.space.hull_dim;
            lhs.v0 = s.space.v0;
            lhs.phi0 = s.space.one;
            lhs.label = "hull(S(" + a1.label + "))";
            HullSpace rhs = specialize_vector(hull_cospecial(a1)).space;
            // (u,(t,z)) -> (u, t)
            int n = a1.hull_dim, N = n + 2;
            RatMat P(n + 1, N);
            for (int i = 0; i < n; ++i) P(i, i) = 1;
            P(n, n) = 1;
            RatMat M = P * s.to_ambient;
            return finish(rhs, lhs, M, "specialization_hull");
        }
        case DualityId::specialization_sum: {
            Construction lhsS = specialize_affine(sum_affine(a1, a2).space);
            Construction rhs =
                sum_special_affine(specialize_affine(a1).space, specialize_affine(a2).space);
            // [(x1, x2)] -> (u1, u2, t1 + t2, z1 + z2)
            Construction s1 = specialize_affine(a1), s2 = specialize_affine(a2);
            int n1 = a1.hull_dim, n2 = a2.hull_dim;
            int N1 = n1 + 2, N2 = n2 + 2, NL = n1 + n2 + 2;
            RatMat B(NL, N1 + N2);
            for (int i = 0; i < n1; ++i) B(i, i) = 1;
            for (int i = 0; i < n2; ++i) B(n1 + i, N1 + i) = 1;
            B(n1 + n2, n1) = 1;
            B(n1 + n2, N1 + n2) = 1;
            B(n1 + n2 + 1, n1 + 1) = 1;
            B(n1 + n2 + 1, N1 + n2 + 1) = 1;
            RatMat EE(N1 + N2, s1.space.hull_dim + s2.space.hull_dim);
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < s1.space.hull_dim; ++j) EE(i, j) = s1.to_ambient(i, j);
            for (int i = 0; i < N2; ++i)
                for (int j = 0; j < s2.space.hull_dim; ++j)
                    EE(N1 + i, s1.space.hull_dim + j) = s2.to_ambient(i, j);
            RatMat M = lhsS.from_ambient * B * EE * rhs.to_ambient;
            return finish(lhsS.space, rhs.space, M, "specialization_sum");
        }
        case DualityId::specialization_product: {
            Construction prod = product_affine(a1, a2);
            Construction lhsS = specialize_affine(prod.space);
            Construction rhs =
                reduced_product(specialize_affine(a1).space, specialize_affine(a2).space);
            Construction s1 = specialize_affine(a1), s2 = specialize_affine(a2);
            int n1 = a1.hull_dim, n2 = a2.hull_dim;
            int N1 = n1 + 2, N2 = n2 + 2;
            int dP = prod.space.hull_dim;
            int NL = dP + 2;
            // ((u1,(t1,z)),(u2,(t2,z))) -> ((u1,u2)-coords, (t1 + t2)/2, z);
            // the mean in the t-slot matches the reduced product's paired
            // distinguished vector.
            RatMat B(NL, N1 + N2);
            for (int i = 0; i < dP; ++i) {
                // from_ambient of the product applied to (u1, u2)
                for (int j = 0; j < n1; ++j) B(i, j) = prod.from_ambient(i, j);
                for (int j = 0; j < n2; ++j) B(i, N1 + j) = prod.from_ambient(i, n1 + j);
            }
            B(dP, n1) = Rational(1, 2);
            B(dP, N1 + n2) = Rational(1, 2);
            B(dP + 1, n1 + 1) = 1;
            RatMat EE(N1 + N2, s1.space.hull_dim + s2.space.hull_dim);
            for (int i = 0; i < N1; ++i)
                for (int j = 0; j < s1.space.hull_dim; ++j) EE(i, j) = s1.to_ambient(i, j);
            for (int i = 0; i < N2; ++i)
                for (int j = 0; j < s2.space.hull_dim; ++j)
                    EE(N1 + i, s1.space.hull_dim + j) = s2.to_ambient(i, j);
            RatMat M = lhsS.from_ambient * B * EE * rhs.to_ambient;
            return finish(lhsS.space, rhs.space, M, "specialization_product");
        }
    }
    throw std::invalid_argument("verify_duality: unknown id");
}

} // namespace avgeo
