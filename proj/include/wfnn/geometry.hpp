#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>

#include "wfnn/errors.hpp"
#include "wfnn/jet.hpp"
#include "wfnn/model.hpp"

namespace wfnn {

// Metric determinants below this are treated as degenerate samples.
inline constexpr double kDetEpsilon = 1e-12;

// Floor added under sqrt on the degenerate branch so the area element and
// the log barrier stay finite while the regularity loss repairs the metric.
inline constexpr double kDegenerateFloor = 1e-18;

// First and second fundamental forms with the derived curvature quantities
// at one chart sample. Degenerate samples carry the metric slots only; the
// curvature slots are zero constants and `degenerate` is set.
template <class S>
struct FundamentalForms {
    S E{}, F{}, G{};
    S L{}, M{}, N{};
    S nx{}, ny{}, nz{};
    S det{};      // EG - F^2
    S sqrt_det{}; // area element
    S H{}, K{};
    bool degenerate = false;
};

template <class S>
FundamentalForms<S> fundamental_forms(const SurfaceJet<S>& sj) {
    using std::sqrt;
    FundamentalForms<S> ff;
    const Jet2<S>&x = sj.x, &y = sj.y, &z = sj.z;

    ff.E = x.du * x.du + y.du * y.du + z.du * z.du;
    ff.F = x.du * x.dv + y.du * y.dv + z.du * z.dv;
    ff.G = x.dv * x.dv + y.dv * y.dv + z.dv * z.dv;
    ff.det = ff.E * ff.G - ff.F * ff.F;

    if (value(ff.det) < kDetEpsilon) {
        ff.degenerate = true;
        ff.sqrt_det = sqrt(relu(ff.det) + S(kDegenerateFloor));
        ff.L = S(0.0); ff.M = S(0.0); ff.N = S(0.0);
        ff.nx = S(0.0); ff.ny = S(0.0); ff.nz = S(0.0);
        ff.H = S(0.0); ff.K = S(0.0);
        return ff;
    }
    ff.sqrt_det = sqrt(ff.det);

    const S cx = y.du * z.dv - z.du * y.dv;
    const S cy = z.du * x.dv - x.du * z.dv;
    const S cz = x.du * y.dv - y.du * x.dv;
    const S norm = sqrt(cx * cx + cy * cy + cz * cz);
    ff.nx = cx / norm;
    ff.ny = cy / norm;
    ff.nz = cz / norm;

    ff.L = x.duu * ff.nx + y.duu * ff.ny + z.duu * ff.nz;
    ff.M = x.duv * ff.nx + y.duv * ff.ny + z.duv * ff.nz;
    ff.N = x.dvv * ff.nx + y.dvv * ff.ny + z.dvv * ff.nz;

    ff.H = (ff.E * ff.N - S(2.0) * (ff.F * ff.M) + ff.G * ff.L) / (S(2.0) * ff.det);
    ff.K = (ff.L * ff.N - ff.M * ff.M) / ff.det;
    return ff;
}

// Willmore integrand H~^2 * sqrt(EG - F^2). With a Huber threshold c the
// squared curvature grows linearly above c, which bounds gradients at
// high-curvature junctions; the threshold is a detached constant.
template <class S>
S willmore_integrand(const FundamentalForms<S>& ff,
                     std::optional<double> huber_c = std::nullopt) {
    using std::abs;
    if (ff.degenerate)
        throw DegenerateMetric("willmore integrand on degenerate sample");
    const S h2 = ff.H * ff.H;
    if (huber_c && value(h2) > *huber_c) {
        const double c = *huber_c;
        return (2.0 * std::sqrt(c) * abs(ff.H) - S(c)) * ff.sqrt_det;
    }
    return h2 * ff.sqrt_det;
}

// Analytic starting surfaces for pretraining and for the quadrature oracle.
struct ReferenceSurface {
    enum class Kind { Ellipsoid, Torus, TwoTori };

    Kind kind = Kind::Ellipsoid;
    double a = 1.0, b = 1.0, c = 1.0;       // ellipsoid semi-axes
    std::complex<double> tau{0.0, 1.0};     // torus modulus, Im > 0
    std::complex<double> tau2{0.0, 1.0};    // second chart (two-tori)
    double r_shift = 1.0;                   // centre shift R (two-tori)

    static ReferenceSurface ellipsoid(double a, double b, double c);
    static ReferenceSurface torus(std::complex<double> tau);
    static ReferenceSurface two_tori(std::complex<double> tau1,
                                     std::complex<double> tau2,
                                     double r_shift = 1.0);

    int euler_characteristic() const {
        switch (kind) {
            case Kind::Ellipsoid: return 2;
            case Kind::Torus: return 0;
            default: return -2;
        }
    }
};

// Analytic embedding jet; exact values and (u, v) derivatives to second
// order, constant with respect to any tape.
SurfaceJet<double> reference_jet(const ReferenceSurface& ref, Chart chart,
                                 double u, double v);

// Chart v-range: [0, pi] for the sphere chart, [0, 2*pi] otherwise.
double chart_v_extent(const ReferenceSurface& ref);

// Deterministic tensor-product quadrature of H^2 dA over the chart of a
// connected reference surface. Azimuthal direction uses the periodic
// rectangle rule; the polar direction of the ellipsoid chart uses
// Gauss-Legendre nodes, which converge spectrally and never touch the
// degenerate poles.
double quadrature_willmore(const ReferenceSurface& ref, int n_u, int n_v);

// Same quadrature applied to K dA.
double quadrature_gauss_curvature(const ReferenceSurface& ref, int n_u, int n_v);

// Monte Carlo estimate of \int K dA minus 2*pi*chi.
double gauss_bonnet_defect(const ReferenceSurface& ref, std::size_t n,
                           std::uint64_t seed);
double gauss_bonnet_defect(const SurfaceModel& model, std::size_t n,
                           std::uint64_t seed, double glue_delta = 0.65);

// Gauss-Legendre nodes and weights on [lo, hi].
void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace wfnn
