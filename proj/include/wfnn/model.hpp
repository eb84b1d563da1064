#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wfnn/errors.hpp"
#include "wfnn/features.hpp"
#include "wfnn/jet.hpp"
#include "wfnn/tape.hpp"

namespace wfnn {

enum class Chart : std::uint8_t { Main = 0, T1 = 1, T2 = 2 };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Main: return "main";
        case Chart::T1: return "T1";
        default: return "T2";
    }
}

// Dense tanh network shape: sizes runs from the feature count to the
// 3-dimensional embedding output. Parameters are laid out layer by layer,
// row-major weights followed by the bias vector.
struct MlpShape {
    std::vector<int> sizes;

    std::size_t param_count() const {
        std::size_t n = 0;
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
            n += static_cast<std::size_t>(sizes[l + 1]) * sizes[l] + sizes[l + 1];
        return n;
    }

    void validate() const {
        if (sizes.size() < 2) throw ConfigError("network needs at least two layers");
        for (int s : sizes)
            if (s <= 0) throw ConfigError("layer sizes must be positive");
        if (sizes.back() != 3)
            throw ConfigError("output layer must have size 3");
    }
};

// The trainable immersion. Genus 2 uses two charts with identical
// architecture but independent weights, stored back to back in one flat
// parameter vector so the optimizer and gradient clipping act jointly.
struct SurfaceModel {
    int genus = 0;
    FeatureConfig features;
    MlpShape shape;
    std::vector<double> params;

    int n_charts() const { return genus == 2 ? 2 : 1; }

    std::size_t chart_offset(Chart chart) const {
        validate_chart(chart);
        return chart == Chart::T2 ? shape.param_count() : 0;
    }

    void validate_chart(Chart chart) const {
        const bool main = chart == Chart::Main;
        if (main != (genus < 2))
            throw ConfigError(std::string("chart '") + chart_name(chart) +
                              "' is invalid for genus " + std::to_string(genus));
    }
};

// Glorot-uniform weights, zero biases, deterministic in the seed.
std::vector<double> init_params(std::uint64_t seed, const MlpShape& shape,
                                int chart_index = 0);

SurfaceModel make_model(int genus, const FeatureConfig& features,
                        const std::vector<int>& hidden_sizes, std::uint64_t seed);

// Checkpoint file I/O; the format is fixed and round-trips bit-exactly.
void save_checkpoint(const SurfaceModel& model, const std::string& path);
SurfaceModel load_checkpoint(const std::string& path);

// Scalar backends for the templated forward pass: plain evaluation and
// tape-recorded evaluation share one code path.
struct ValueBackend {
    using S = double;
    const double* params;

    S param(std::size_t id) const { return params[id]; }

    S dot_affine(std::size_t w_base, std::span<const S> x,
                 std::int64_t bias_id) const {
        double acc = bias_id >= 0 ? params[static_cast<std::size_t>(bias_id)] : 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += params[w_base + i] * x[i];
        return acc;
    }
};

struct TapeBackend {
    using S = TapeScalar;
    Tape* tape;

    S param(std::size_t id) const { return tape->param(id); }

    S dot_affine(std::size_t w_base, std::span<const S> x,
                 std::int64_t bias_id) const {
        return tape->dot_affine(w_base, x, bias_id);
    }
};

inline ValueBackend value_backend(const SurfaceModel& m) {
    return {m.params.data()};
}

// Reusable slot buffers for the layer-by-layer forward pass.
template <class S>
struct ForwardWorkspace {
    std::vector<S> in[6];
    std::vector<S> out[6];
};

namespace detail {

template <class S>
void load_slots(const std::vector<Jet2<S>>& jets, ForwardWorkspace<S>& ws) {
    for (auto& slot : ws.in) slot.clear();
    for (const Jet2<S>& j : jets) {
        ws.in[0].push_back(j.f);
        ws.in[1].push_back(j.du);
        ws.in[2].push_back(j.dv);
        ws.in[3].push_back(j.duu);
        ws.in[4].push_back(j.duv);
        ws.in[5].push_back(j.dvv);
    }
}

} // namespace detail

// Forward pass emitting the full 2-jet of the embedding at chart point
// (u, v). Linear layers act slot-wise (the jet slots of an affine map are
// independent); tanh mixes the slots through the second-order chain rule.
template <class B>
SurfaceJet<typename B::S> forward_jet(const SurfaceModel& model, Chart chart,
                                      double u, double v, const B& backend,
                                      ForwardWorkspace<typename B::S>& ws) {
    using S = typename B::S;
    model.validate_chart(chart);

    auto [ju, jv] = jet_seed<S>(u, v);
    detail::load_slots(make_features(model.features, ju, jv), ws);

    std::size_t p = model.chart_offset(chart);
    const auto& sizes = model.shape.sizes;
    for (std::size_t layer = 0; layer + 1 < sizes.size(); ++layer) {
        const auto n_in = static_cast<std::size_t>(sizes[layer]);
        const auto n_out = static_cast<std::size_t>(sizes[layer + 1]);
        const std::size_t w_base = p;
        const std::size_t b_base = p + n_out * n_in;
        p = b_base + n_out;

        for (auto& slot : ws.out) slot.clear();
        const bool hidden = layer + 2 < sizes.size();
        for (std::size_t j = 0; j < n_out; ++j) {
            const std::size_t row = w_base + j * n_in;
            const auto bias = static_cast<std::int64_t>(b_base + j);
            Jet2<S> unit{
                backend.dot_affine(row, std::span<const S>(ws.in[0]), bias),
                backend.dot_affine(row, std::span<const S>(ws.in[1]), -1),
                backend.dot_affine(row, std::span<const S>(ws.in[2]), -1),
                backend.dot_affine(row, std::span<const S>(ws.in[3]), -1),
                backend.dot_affine(row, std::span<const S>(ws.in[4]), -1),
                backend.dot_affine(row, std::span<const S>(ws.in[5]), -1)};
            if (hidden) unit = tanh(unit);
            ws.out[0].push_back(unit.f);
            ws.out[1].push_back(unit.du);
            ws.out[2].push_back(unit.dv);
            ws.out[3].push_back(unit.duu);
            ws.out[4].push_back(unit.duv);
            ws.out[5].push_back(unit.dvv);
        }
        for (int s = 0; s < 6; ++s) ws.in[s].swap(ws.out[s]);
    }

    auto unit = [&ws](std::size_t j) {
        return Jet2<S>{ws.in[0][j], ws.in[1][j], ws.in[2][j],
                       ws.in[3][j], ws.in[4][j], ws.in[5][j]};
    };
    return {unit(0), unit(1), unit(2)};
}

template <class B>
SurfaceJet<typename B::S> forward_jet(const SurfaceModel& model, Chart chart,
                                      double u, double v, const B& backend) {
    ForwardWorkspace<typename B::S> ws;
    return forward_jet(model, chart, u, v, backend, ws);
}

} // namespace wfnn
