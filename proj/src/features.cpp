#include "wfnn/features.hpp"

#include <array>
#include <mutex>
#include <numbers>

namespace wfnn {

namespace {

using Poly = std::vector<double>;

// Legendre polynomials P_0..P_degree via the three-term recurrence
// (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}. Coefficients through degree 8
// are small integers over small denominators, exact in double.
std::vector<Poly> legendre(int degree) {
    std::vector<Poly> p(static_cast<std::size_t>(degree) + 1);
    p[0] = {1.0};
    if (degree >= 1) p[1] = {0.0, 1.0};
    for (int l = 1; l < degree; ++l) {
        Poly next(static_cast<std::size_t>(l) + 2, 0.0);
        for (std::size_t k = 0; k < p[l].size(); ++k)
            next[k + 1] += (2.0 * l + 1.0) * p[l][k] / (l + 1.0);
        for (std::size_t k = 0; k < p[l - 1].size(); ++k)
            next[k] -= static_cast<double>(l) * p[l - 1][k] / (l + 1.0);
        p[l + 1] = std::move(next);
    }
    return p;
}

Poly differentiate(const Poly& poly) {
    if (poly.size() <= 1) return {0.0};
    Poly d(poly.size() - 1);
    for (std::size_t k = 1; k < poly.size(); ++k)
        d[k - 1] = static_cast<double>(k) * poly[k];
    return d;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Orthonormal real-harmonic constants without the Condon-Shortley phase.
double norm_constant(int l, int m) {
    const double base = (2.0 * l + 1.0) / (4.0 * std::numbers::pi);
    if (m == 0) return std::sqrt(base);
    return std::sqrt(2.0 * base * factorial(l - m) / factorial(l + m));
}

std::vector<ShTerm> build_table(int degree) {
    const auto p = legendre(degree);
    std::vector<ShTerm> table;
    table.reserve(static_cast<std::size_t>((degree + 1) * (degree + 1)));
    for (int l = 0; l <= degree; ++l) {
        // d^m/dx^m P_l for m = 0..l.
        std::vector<Poly> dm(static_cast<std::size_t>(l) + 1);
        dm[0] = p[l];
        for (int m = 1; m <= l; ++m) dm[m] = differentiate(dm[m - 1]);
        for (int m = -l; m <= l; ++m) {
            const int am = std::abs(m);
            table.push_back({l, m, norm_constant(l, am), dm[am]});
        }
    }
    return table;
}

} // namespace

const std::vector<ShTerm>& sh_table(int degree) {
    if (degree < 0 || degree > kMaxShDegree)
        throw UnsupportedDegree("spherical harmonic degree must be in [0,8]");
    static std::once_flag once;
    static std::array<std::vector<ShTerm>, kMaxShDegree + 1> tables;
    std::call_once(once, [] {
        for (int d = 0; d <= kMaxShDegree; ++d) tables[d] = build_table(d);
    });
    return tables[static_cast<std::size_t>(degree)];
}

} // namespace wfnn
