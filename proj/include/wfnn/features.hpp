#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wfnn/errors.hpp"
#include "wfnn/jet.hpp"

namespace wfnn {

// Highest spherical-harmonic degree with precomputed closed forms.
inline constexpr int kMaxShDegree = 8;

struct FeatureConfig {
    int genus = 0;
    int sh_degree = 2;     // genus 0
    int fourier_modes = 2; // genus 1 and 2 (per chart)

    int count() const {
        if (genus == 0) return (sh_degree + 1) * (sh_degree + 1);
        return 4 * fourier_modes;
    }

    void validate() const {
        if (genus < 0 || genus > 2) throw ConfigError("genus must be 0, 1 or 2");
        if (genus == 0 && (sh_degree < 0 || sh_degree > kMaxShDegree))
            throw UnsupportedDegree("sh_degree out of supported range [0,8]");
        if (genus != 0 && fourier_modes < 1)
            throw ConfigError("fourier_modes must be >= 1");
    }
};

// One real spherical harmonic written as
//   Y_{l,m}(v,u) = norm * sin(v)^|m| * poly(cos v) * trig(|m| u),
// with trig = sin for m<0, 1 for m=0, cos for m>0. The polynomial factor is
// the |m|-th derivative of the Legendre polynomial P_l, so the whole feature
// is a polynomial in (cos v, sin v) times a single trig factor in u and its
// jets stay regular at the poles.
struct ShTerm {
    int l = 0;
    int m = 0;
    double norm = 0.0;
    std::vector<double> poly; // ascending coefficients in x = cos v
};

// Terms for all (l, m) with l <= degree, ordered by l then m ascending.
const std::vector<ShTerm>& sh_table(int degree);

namespace detail {

inline double positive_fmod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

// Shifts the value slot by an exact multiple of the period (derivative slots
// are untouched), so coordinates that differ by exactly representable
// multiples of 2*pi produce bitwise-identical features.
template <class S>
void reduce_angle(Jet2<S>& a) {
    const double old_value = value(a.f);
    const double reduced =
        positive_fmod(old_value, 2.0 * std::numbers::pi);
    const double shift = old_value - reduced;
    if (shift != 0.0) a.f = a.f - S(shift);
}

// x + 0.0 maps -0.0 to +0.0 and is the identity elsewhere; keeps feature
// values at the collapsed poles bitwise independent of u.
inline void canonicalize_zero(double& x) { x += 0.0; }
inline void canonicalize_zero(TapeScalar& x) {
    if (x.is_const()) x.value += 0.0;
}

template <class S>
void canonicalize_zero(Jet2<S>& j) {
    canonicalize_zero(j.f);
    canonicalize_zero(j.du);
    canonicalize_zero(j.dv);
    canonicalize_zero(j.duu);
    canonicalize_zero(j.duv);
    canonicalize_zero(j.dvv);
}

template <class S>
Jet2<S> horner(const std::vector<double>& coeffs, const Jet2<S>& x) {
    Jet2<S> acc = Jet2<S>::constant(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;)
        acc = acc * x + coeffs[k];
    return acc;
}

} // namespace detail

// Real orthonormal spherical harmonics Y_{l,m}(theta=v, phi=u) up to degree
// L, ordered (0,0),(1,-1),(1,0),(1,1),(2,-2),... All m != 0 features vanish
// exactly at v in {0, pi} so the network input collapses at the poles.
template <class S>
std::vector<Jet2<S>> sphere_features(const Jet2<S>& u, const Jet2<S>& v, int L) {
    if (L < 0 || L > kMaxShDegree)
        throw UnsupportedDegree("spherical harmonic degree must be in [0,8]");
    const auto& table = sh_table(L);

    const Jet2<S> x = cos(v);
    // sin computed on the reflected argument in the upper half-range, so the
    // value slot is exactly +0 at v = pi (float pi) as well as at v = 0.
    const Jet2<S> s = value(v.f) <= 0.5 * std::numbers::pi
                          ? sin(v)
                          : sin(Jet2<S>::constant(std::numbers::pi) - v);

    std::vector<Jet2<S>> s_pow(static_cast<std::size_t>(L) + 1);
    s_pow[0] = Jet2<S>::constant(1.0);
    for (int k = 1; k <= L; ++k) s_pow[k] = s_pow[k - 1] * s;

    std::vector<Jet2<S>> sin_mu(static_cast<std::size_t>(L) + 1);
    std::vector<Jet2<S>> cos_mu(static_cast<std::size_t>(L) + 1);
    for (int m = 1; m <= L; ++m) {
        auto [sm, cm] = jet_sin_cos(static_cast<double>(m) * u);
        sin_mu[m] = sm;
        cos_mu[m] = cm;
    }

    std::vector<Jet2<S>> out;
    out.reserve(table.size());
    for (const ShTerm& t : table) {
        const int am = std::abs(t.m);
        Jet2<S> y = t.norm * (s_pow[am] * detail::horner(t.poly, x));
        if (t.m < 0)
            y = y * sin_mu[am];
        else if (t.m > 0)
            y = y * cos_mu[am];
        detail::canonicalize_zero(y);
        out.push_back(y);
    }
    return out;
}

// Fourier features (sin ku, cos ku, sin kv, cos kv) for k = 1..N, exactly
// 2*pi-periodic in both coordinates.
template <class S>
std::vector<Jet2<S>> torus_features(Jet2<S> u, Jet2<S> v, int N) {
    if (N < 1) throw ConfigError("fourier_modes must be >= 1");
    detail::reduce_angle(u);
    detail::reduce_angle(v);
    std::vector<Jet2<S>> out;
    out.reserve(4 * static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        auto [su, cu] = jet_sin_cos(static_cast<double>(k) * u);
        auto [sv, cv] = jet_sin_cos(static_cast<double>(k) * v);
        out.push_back(su);
        out.push_back(cu);
        out.push_back(sv);
        out.push_back(cv);
    }
    return out;
}

template <class S>
std::vector<Jet2<S>> make_features(const FeatureConfig& cfg, const Jet2<S>& u,
                                   const Jet2<S>& v) {
    if (cfg.genus == 0) return sphere_features(u, v, cfg.sh_degree);
    return torus_features(u, v, cfg.fourier_modes);
}

} // namespace wfnn
