#include "wfnn/sampling.hpp"

#include <cmath>

namespace wfnn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_mod_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

// Sub-stream layout: each point owns a block of 64 counter slots, enough
// for 31 rejection attempts of two draws each.
constexpr std::uint64_t kSlotsPerPoint = 64;

} // namespace

double periodic_offset(double x, double center) {
    double d = std::fmod(x - center + std::numbers::pi, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    return d - std::numbers::pi;
}

double periodic_disc_distance(double u, double v, double cu, double cv) {
    const double du = u - cu;
    const double dv = v - cv;
    double best = std::numeric_limits<double>::infinity();
    for (int nu = -1; nu <= 1; ++nu)
        for (int nv = -1; nv <= 1; ++nv) {
            const double a = du - kTwoPi * nu;
            const double b = dv - kTwoPi * nv;
            best = std::min(best, std::hypot(a, b));
        }
    return best;
}

std::vector<DomainSample> sample_bulk(int genus, const SamplerConfig& cfg,
                                      std::size_t n, std::uint64_t epoch) {
    cfg.validate();
    std::vector<DomainSample> out;
    out.reserve(n);

    if (genus == 0 || genus == 1) {
        const double v_extent = genus == 0 ? std::numbers::pi : kTwoPi;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t base = i * kSlotsPerPoint;
            out.push_back({Chart::Main,
                           kTwoPi * rng::uniform(cfg.seed, epoch, rng::Tag::BulkMain, base),
                           v_extent * rng::uniform(cfg.seed, epoch, rng::Tag::BulkMain, base + 1),
                           Zone::Bulk});
        }
        return out;
    }
    if (genus != 2) throw ConfigError("genus must be 0, 1 or 2");

    // Rejection must keep a healthy acceptance rate; for the default delta
    // it is ~0.97.
    const double reject_fraction =
        std::numbers::pi * cfg.delta * cfg.delta / (kTwoPi * kTwoPi);
    if (reject_fraction > 0.5)
        throw ConfigError("excluded disc covers more than half the chart");

    const std::size_t n1 = (n + 1) / 2;
    for (int chart = 0; chart < 2; ++chart) {
        const std::size_t nc = chart == 0 ? n1 : n - n1;
        const rng::Tag tag = chart == 0 ? rng::Tag::BulkT1 : rng::Tag::BulkT2;
        const double cu = chart == 0 ? kCenterT1[0] : kCenterT2[0];
        const double cv = chart == 0 ? kCenterT1[1] : kCenterT2[1];
        for (std::size_t i = 0; i < nc; ++i) {
            const std::uint64_t base = i * kSlotsPerPoint;
            bool accepted = false;
            for (std::uint64_t attempt = 0; attempt < kSlotsPerPoint / 2; ++attempt) {
                const double u =
                    kTwoPi * rng::uniform(cfg.seed, epoch, tag, base + 2 * attempt);
                const double v =
                    kTwoPi * rng::uniform(cfg.seed, epoch, tag, base + 2 * attempt + 1);
                if (periodic_disc_distance(u, v, cu, cv) > cfg.delta) {
                    out.push_back({chart == 0 ? Chart::T1 : Chart::T2, u, v,
                                   Zone::Bulk});
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
                throw ConfigError("rejection sampling exhausted its attempt budget");
        }
    }
    return out;
}

std::vector<DomainSample> sample_annulus(Chart chart, const SamplerConfig& cfg,
                                         std::size_t n, std::uint64_t epoch) {
    cfg.validate();
    if (chart != Chart::T1 && chart != Chart::T2)
        throw ConfigError("annulus sampling is defined on charts T1/T2 only");
    const rng::Tag tag =
        chart == Chart::T1 ? rng::Tag::AnnulusT1 : rng::Tag::AnnulusT2;
    const double cu = chart == Chart::T1 ? kCenterT1[0] : kCenterT2[0];
    const double cv = chart == Chart::T1 ? kCenterT1[1] : kCenterT2[1];

    std::vector<DomainSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t base = i * kSlotsPerPoint;
        // Uniform in (r, theta), not uniform in area.
        const double r =
            cfg.delta +
            (cfg.annulus_alpha - 1.0) * cfg.delta *
                rng::uniform(cfg.seed, epoch, tag, base);
        const double theta =
            kTwoPi * rng::uniform(cfg.seed, epoch, tag, base + 1);
        out.push_back({chart, positive_mod_2pi(cu + r * std::cos(theta)),
                       positive_mod_2pi(cv + r * std::sin(theta)), Zone::Annulus});
    }
    return out;
}

std::vector<GluePair> sample_glue_pairs(const SamplerConfig& cfg, std::size_t n,
                                        std::uint64_t epoch) {
    cfg.validate();
    std::vector<GluePair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t base = i * kSlotsPerPoint;
        const double r =
            cfg.delta * (1.0 - cfg.glue_width) +
            2.0 * cfg.delta * cfg.glue_width *
                rng::uniform(cfg.seed, epoch, rng::Tag::Glue, base);
        const double theta =
            kTwoPi * rng::uniform(cfg.seed, epoch, rng::Tag::Glue, base + 1);
        const double r2 = 2.0 * cfg.delta - r;
        GluePair p;
        p.r = r;
        p.theta = theta;
        p.u1 = positive_mod_2pi(kCenterT1[0] + r * std::cos(theta));
        p.v1 = positive_mod_2pi(kCenterT1[1] + r * std::sin(theta));
        p.u2 = positive_mod_2pi(kCenterT2[0] + r2 * std::cos(theta));
        p.v2 = positive_mod_2pi(kCenterT2[1] + r2 * std::sin(theta));
        out.push_back(p);
    }
    return out;
}

std::vector<std::uint32_t> epoch_shuffle(std::size_t n, std::uint64_t seed,
                                         std::uint64_t epoch) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i) {
        const std::uint64_t j =
            rng::below(seed, epoch, rng::Tag::Shuffle, i, i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

} // namespace wfnn
