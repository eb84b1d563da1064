#pragma once

#include <cmath>
#include <utility>

#include "wfnn/errors.hpp"
#include "wfnn/tape.hpp"

namespace wfnn {

// 2-jet of a scalar with respect to the two chart coordinates (u, v):
// value, both first derivatives and the symmetric second derivatives. The
// mixed partial is stored once; consumers reading dvu receive the duv slot.
// S is double (plain evaluation) or TapeScalar (differentiable in the
// network weights).
template <class S>
struct Jet2 {
    S f{};
    S du{}, dv{};
    S duu{}, duv{}, dvv{};

    static Jet2 constant(double c) {
        Jet2 j;
        j.f = S(c);
        j.du = S(0.0); j.dv = S(0.0);
        j.duu = S(0.0); j.duv = S(0.0); j.dvv = S(0.0);
        return j;
    }
};

// Jets of the chart coordinates themselves.
template <class S = double>
std::pair<Jet2<S>, Jet2<S>> jet_seed(double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw InvalidSample("non-finite chart coordinate");
    Jet2<S> ju = Jet2<S>::constant(u);
    ju.du = S(1.0);
    Jet2<S> jv = Jet2<S>::constant(v);
    jv.dv = S(1.0);
    return {ju, jv};
}

template <class S>
Jet2<S> operator+(const Jet2<S>& a, const Jet2<S>& b) {
    return {a.f + b.f, a.du + b.du, a.dv + b.dv,
            a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}

template <class S>
Jet2<S> operator-(const Jet2<S>& a, const Jet2<S>& b) {
    return {a.f - b.f, a.du - b.du, a.dv - b.dv,
            a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
}

template <class S>
Jet2<S> operator-(const Jet2<S>& a) {
    return {-a.f, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv};
}

// Full second-order Leibniz rule.
template <class S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
    Jet2<S> r;
    r.f = a.f * b.f;
    r.du = a.du * b.f + a.f * b.du;
    r.dv = a.dv * b.f + a.f * b.dv;
    r.duu = a.duu * b.f + S(2.0) * (a.du * b.du) + a.f * b.duu;
    r.duv = a.duv * b.f + a.du * b.dv + a.dv * b.du + a.f * b.duv;
    r.dvv = a.dvv * b.f + S(2.0) * (a.dv * b.dv) + a.f * b.dvv;
    return r;
}

template <class S>
Jet2<S> operator*(double c, const Jet2<S>& a) {
    const S s(c);
    return {s * a.f, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
}

template <class S>
Jet2<S> operator+(const Jet2<S>& a, double c) {
    Jet2<S> r = a;
    r.f = a.f + S(c);
    return r;
}

// Composition with a scalar function g given its value and first two
// derivatives at a.f. Carries the cross term g'' * da * db.
template <class S>
Jet2<S> jet_chain(const Jet2<S>& a, const S& g0, const S& g1, const S& g2) {
    Jet2<S> r;
    r.f = g0;
    r.du = g1 * a.du;
    r.dv = g1 * a.dv;
    r.duu = g2 * (a.du * a.du) + g1 * a.duu;
    r.duv = g2 * (a.du * a.dv) + g1 * a.duv;
    r.dvv = g2 * (a.dv * a.dv) + g1 * a.dvv;
    return r;
}

template <class S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
    if (std::abs(value(b.f)) < 1e-300)
        throw DegenerateDivision("jet division by near-zero value");
    const S inv = S(1.0) / b.f;
    const S inv2 = inv * inv;
    return a * jet_chain(b, inv, -inv2, S(2.0) * (inv2 * inv));
}

template <class S>
Jet2<S> tanh(const Jet2<S>& a) {
    using std::tanh;
    const S t = tanh(a.f);
    const S s = S(1.0) - t * t;
    return jet_chain(a, t, s, S(-2.0) * (t * s));
}

template <class S>
Jet2<S> sin(const Jet2<S>& a) {
    using std::sin;
    using std::cos;
    const S s = sin(a.f);
    const S c = cos(a.f);
    return jet_chain(a, s, c, -s);
}

template <class S>
Jet2<S> cos(const Jet2<S>& a) {
    using std::sin;
    using std::cos;
    const S s = sin(a.f);
    const S c = cos(a.f);
    return jet_chain(a, c, -s, -c);
}

template <class S>
std::pair<Jet2<S>, Jet2<S>> jet_sin_cos(const Jet2<S>& a) {
    using std::sin;
    using std::cos;
    const S s = sin(a.f);
    const S c = cos(a.f);
    return {jet_chain(a, s, c, -s), jet_chain(a, c, -s, -c)};
}

template <class S>
Jet2<S> sqrt(const Jet2<S>& a) {
    using std::sqrt;
    const S r = sqrt(a.f);
    if (std::abs(value(r)) < 1e-300)
        throw DegenerateDivision("jet sqrt derivative at zero");
    const S g1 = S(0.5) / r;
    const S g2 = S(-0.5) * (g1 / a.f);
    return jet_chain(a, r, g1, g2);
}

// Embedding point with its full 2-jet: position, 3x2 Jacobian and 3x2x2
// Hessian with respect to the chart coordinates.
template <class S>
struct SurfaceJet {
    Jet2<S> x, y, z;
};

inline SurfaceJet<TapeScalar> as_tape_constants(const SurfaceJet<double>& s) {
    auto conv = [](const Jet2<double>& j) {
        return Jet2<TapeScalar>{Tape::constant(j.f), Tape::constant(j.du),
                                Tape::constant(j.dv), Tape::constant(j.duu),
                                Tape::constant(j.duv), Tape::constant(j.dvv)};
    };
    return {conv(s.x), conv(s.y), conv(s.z)};
}

inline const SurfaceJet<double>& as_value_jet(const SurfaceJet<double>& s) { return s; }

inline SurfaceJet<double> as_value_jet(const SurfaceJet<TapeScalar>& s) {
    auto conv = [](const Jet2<TapeScalar>& j) {
        return Jet2<double>{j.f.value, j.du.value, j.dv.value,
                            j.duu.value, j.duv.value, j.dvv.value};
    };
    return {conv(s.x), conv(s.y), conv(s.z)};
}

} // namespace wfnn
