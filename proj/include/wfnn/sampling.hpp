#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "wfnn/errors.hpp"
#include "wfnn/model.hpp"
#include "wfnn/rng.hpp"

namespace wfnn {

enum class Zone : std::uint8_t { Bulk = 0, Annulus = 1 };

struct DomainSample {
    Chart chart = Chart::Main;
    double u = 0.0;
    double v = 0.0;
    Zone zone = Zone::Bulk;
};

// Matched parameter points on the two genus-2 charts under the radial
// reflection (r, theta) -> (2*delta - r, theta) across the glue circle.
struct GluePair {
    double r = 0.0;
    double theta = 0.0;
    double u1 = 0.0, v1 = 0.0; // on T1, around (0, 0)
    double u2 = 0.0, v2 = 0.0; // on T2, around (pi, 0)
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    double delta = 0.65;        // excluded-disc radius
    double annulus_alpha = 2.5; // annulus outer radius factor
    double glue_width = 0.1;    // glue band half-width fraction w

    void validate() const {
        if (delta <= 0.0) throw ConfigError("glue.delta must be positive");
        if (annulus_alpha * delta >= std::numbers::pi)
            throw ConfigError("annulus must fit inside the chart: alpha*delta < pi");
        if (glue_width <= 0.0 || glue_width >= 1.0)
            throw ConfigError("glue.width must be in (0, 1)");
    }
};

// Excluded-disc centres on the two charts.
inline constexpr double kCenterT1[2] = {0.0, 0.0};
inline constexpr double kCenterT2[2] = {std::numbers::pi, 0.0};

// Distance on the flat torus [0,2*pi)^2: min over wrap-around images of the
// raw offsets from the centre.
double periodic_disc_distance(double u, double v, double cu, double cv);

// Signed periodic displacement in (-pi, pi].
double periodic_offset(double x, double center);

// Bulk samples for one epoch. Genus 0: uniform on [0,2*pi]x[0,pi]; genus 1:
// uniform on [0,2*pi]^2; genus 2: uniform on each chart with the excluded
// discs removed by rejection, n split evenly (T1 gets the odd one).
std::vector<DomainSample> sample_bulk(int genus, const SamplerConfig& cfg,
                                      std::size_t n, std::uint64_t epoch);

// Uniform in (r, theta) over the annular transition zone of one chart.
std::vector<DomainSample> sample_annulus(Chart chart, const SamplerConfig& cfg,
                                         std::size_t n, std::uint64_t epoch);

// Matched pairs across the glue band, r ~ U[delta(1-w), delta(1+w)].
std::vector<GluePair> sample_glue_pairs(const SamplerConfig& cfg, std::size_t n,
                                        std::uint64_t epoch);

// Deterministic permutation of [0, n) keyed by (seed, epoch).
std::vector<std::uint32_t> epoch_shuffle(std::size_t n, std::uint64_t seed,
                                         std::uint64_t epoch);

} // namespace wfnn
