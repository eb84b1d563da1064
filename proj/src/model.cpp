#include "wfnn/model.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wfnn/rng.hpp"

namespace wfnn {

std::vector<double> init_params(std::uint64_t seed, const MlpShape& shape,
                                int chart_index) {
    shape.validate();
    std::vector<double> params;
    params.reserve(shape.param_count());
    const rng::Tag tag =
        chart_index == 0 ? rng::Tag::InitChart0 : rng::Tag::InitChart1;
    std::uint64_t index = 0;
    for (std::size_t l = 0; l + 1 < shape.sizes.size(); ++l) {
        const double fan_in = shape.sizes[l];
        const double fan_out = shape.sizes[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        const std::size_t n_w =
            static_cast<std::size_t>(shape.sizes[l]) * shape.sizes[l + 1];
        for (std::size_t k = 0; k < n_w; ++k) {
            const double x = rng::uniform(seed, 0, tag, index++);
            params.push_back((2.0 * x - 1.0) * limit);
        }
        for (int k = 0; k < shape.sizes[l + 1]; ++k) params.push_back(0.0);
    }
    return params;
}

SurfaceModel make_model(int genus, const FeatureConfig& features,
                        const std::vector<int>& hidden_sizes,
                        std::uint64_t seed) {
    FeatureConfig fc = features;
    fc.genus = genus;
    fc.validate();

    SurfaceModel m;
    m.genus = genus;
    m.features = fc;
    m.shape.sizes.push_back(fc.count());
    for (int h : hidden_sizes) m.shape.sizes.push_back(h);
    m.shape.sizes.push_back(3);
    m.shape.validate();

    for (int chart = 0; chart < m.n_charts(); ++chart) {
        auto block = init_params(seed, m.shape, chart);
        m.params.insert(m.params.end(), block.begin(), block.end());
    }
    return m;
}

namespace {

constexpr char kMagic[4] = {'W', 'F', 'N', 'N'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& data;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > data.size())
            throw CorruptCheckpoint("checkpoint truncated");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos++])) << (8 * i);
        return v;
    }
    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data[pos++])) << (8 * i);
        return std::bit_cast<double>(v);
    }
};

} // namespace

void save_checkpoint(const SurfaceModel& model, const std::string& path) {
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    out.push_back(static_cast<char>(model.genus));
    put_u32(out, static_cast<std::uint32_t>(
                     model.genus == 0 ? model.features.sh_degree
                                      : model.features.fourier_modes));
    put_u32(out, static_cast<std::uint32_t>(model.shape.sizes.size()));
    for (int s : model.shape.sizes) put_u32(out, static_cast<std::uint32_t>(s));

    const std::size_t per_chart = model.shape.param_count();
    for (int chart = 0; chart < model.n_charts(); ++chart) {
        out.push_back(static_cast<char>(model.genus == 2 ? chart + 1 : 0));
        for (std::size_t i = 0; i < per_chart; ++i)
            put_f64(out, model.params[chart * per_chart + i]);
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open checkpoint for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error("checkpoint write failed: " + path);
}

SurfaceModel load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open checkpoint: " + path);
    std::string data((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());

    Reader r{data};
    r.need(4);
    if (data.compare(0, 4, kMagic, 4) != 0)
        throw CorruptCheckpoint("bad checkpoint magic");
    r.pos = 4;
    if (r.u32() != kVersion) throw CorruptCheckpoint("unsupported checkpoint version");

    SurfaceModel m;
    m.genus = r.u8();
    if (m.genus > 2) throw CorruptCheckpoint("invalid genus in checkpoint");
    const auto order = static_cast<int>(r.u32());
    m.features.genus = m.genus;
    if (m.genus == 0)
        m.features.sh_degree = order;
    else
        m.features.fourier_modes = order;
    m.features.validate();

    const std::uint32_t n_sizes = r.u32();
    if (n_sizes < 2 || n_sizes > 64) throw CorruptCheckpoint("invalid layer count");
    for (std::uint32_t i = 0; i < n_sizes; ++i) {
        const std::uint32_t s = r.u32();
        if (s == 0 || s > (1u << 20)) throw CorruptCheckpoint("invalid layer size");
        m.shape.sizes.push_back(static_cast<int>(s));
    }
    if (m.shape.sizes.front() != m.features.count() || m.shape.sizes.back() != 3)
        throw CorruptCheckpoint("layer sizes inconsistent with feature config");

    const std::size_t per_chart = m.shape.param_count();
    const int n_charts = m.genus == 2 ? 2 : 1;
    m.params.reserve(per_chart * n_charts);
    for (int chart = 0; chart < n_charts; ++chart) {
        const std::uint8_t tag = r.u8();
        const std::uint8_t expect = m.genus == 2 ? chart + 1 : 0;
        if (tag != expect) throw CorruptCheckpoint("unexpected chart tag");
        for (std::size_t i = 0; i < per_chart; ++i) m.params.push_back(r.f64());
    }
    if (r.pos != data.size())
        throw CorruptCheckpoint("checkpoint size mismatch");
    return m;
}

} // namespace wfnn
