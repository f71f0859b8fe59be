#include "hyperconv/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "hyperconv/errors.hpp"

namespace hyperconv {

namespace {

void check_conv_shapes(int img_h, int img_w, int img_c, int kh, int kw, int c,
                       Stride s, const char* what) {
    if (img_c != c)
        throw DimensionError(std::string(what) + ": image has " +
                             std::to_string(img_c) + " channels, bank expects " +
                             std::to_string(c));
    if (img_h < kh || img_w < kw)
        throw DimensionError(std::string(what) + ": image " +
                             std::to_string(img_h) + "x" + std::to_string(img_w) +
                             " smaller than kernel " + std::to_string(kh) + "x" +
                             std::to_string(kw));
    if (s.sy < 1 || s.sx < 1)
        throw DimensionError(std::string(what) + ": stride must be positive");
}

}  // namespace

RImage rconv(const RImage& img, const RFilterBank& bank, Stride stride) {
    check_conv_shapes(img.height, img.width, img.channels, bank.kh, bank.kw,
                      bank.channels, stride, "rconv");
    const int oh = (img.height - bank.kh) / stride.sy + 1;
    const int ow = (img.width - bank.kw) / stride.sx + 1;
    RImage out = RImage::zeros(oh, ow, bank.count);
    const int c = bank.channels;
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double* dst = &out.at(y, x, 0);
            for (int k = 0; k < bank.count; ++k) {
                double acc = 0.0;
                const double* w = &bank.weights[bank.index(k, 0, 0, 0)];
                for (int u = 0; u < bank.kh; ++u) {
                    for (int v = 0; v < bank.kw; ++v) {
                        const double* src =
                            &img.data[img.index(y * stride.sy + u,
                                                x * stride.sx + v, 0)];
                        for (int ch = 0; ch < c; ++ch) acc += src[ch] * w[ch];
                        w += c;
                    }
                }
                dst[k] = acc;
            }
        }
    }
    return out;
}

HImage hconv_direct(const HImage& img, const HFilterBank& bank,
                    const StructureTable& table, Stride stride) {
    check_conv_shapes(img.height, img.width, img.channels, bank.kh, bank.kw,
                      bank.channels, stride, "hconv_direct");
    const int oh = (img.height - bank.kh) / stride.sy + 1;
    const int ow = (img.width - bank.kw) / stride.sx + 1;
    HImage out = HImage::zeros(oh, ow, bank.count);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int k = 0; k < bank.count; ++k) {
                HNum acc;
                for (int u = 0; u < bank.kh; ++u)
                    for (int v = 0; v < bank.kw; ++v)
                        for (int ch = 0; ch < bank.channels; ++ch)
                            acc = hadd(acc, hmul(table,
                                                 img.at(y * stride.sy + u,
                                                        x * stride.sx + v, ch),
                                                 bank.at(k, u, v, ch)));
                out.at(y, x, k) = acc;
            }
    return out;
}

EmulationMap emulation_map(const StructureTable& t) {
    // Component d of (image * filter) as four real channel blocks; derived
    // from expanding the product against the unit table.
    EmulationMap m{};
    const int src[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int sgn[4][4] = {
        {+1, t.sign(1, 1), t.sign(2, 2), t.sign(3, 3)},
        {+1, +1, t.sign(2, 3), t.sign(3, 2)},
        {+1, t.sign(1, 3), +1, t.sign(3, 1)},
        {+1, t.sign(1, 2), t.sign(2, 1), +1},
    };
    for (int d = 0; d < 4; ++d)
        for (int b = 0; b < 4; ++b) {
            m.source[d][b] = src[d][b];
            m.sign[d][b] = sgn[d][b];
        }
    return m;
}

std::array<RFilterBank, 4> build_emulation_banks(const HFilterBank& bank,
                                                 const StructureTable& table) {
    const EmulationMap m = emulation_map(table);
    const int K = bank.count, C = bank.channels;
    std::array<RFilterBank, 4> banks;
    for (int d = 0; d < 4; ++d) {
        banks[d] = RFilterBank::zeros(K, bank.kh, bank.kw, 4 * C);
        for (int k = 0; k < K; ++k) {
            banks[d].bias[k] = bank.bias[k][d];
            for (int u = 0; u < bank.kh; ++u)
                for (int v = 0; v < bank.kw; ++v)
                    for (int b = 0; b < 4; ++b)
                        for (int c = 0; c < C; ++c)
                            banks[d].at(k, u, v, b * C + c) =
                                m.sign[d][b] * bank.at(k, u, v, c)[m.source[d][b]];
        }
    }
    return banks;
}

RImage hconv_emulated(const RImage& rimg, const std::array<RFilterBank, 4>& banks,
                      Stride stride) {
    for (int d = 0; d < 4; ++d)
        if (banks[d].channels != rimg.channels)
            throw DimensionError("hconv_emulated: packed image has " +
                                 std::to_string(rimg.channels) +
                                 " channels, bank expects " +
                                 std::to_string(banks[d].channels));
    const int K = banks[0].count;
    std::array<RImage, 4> parts;
    for (int d = 0; d < 4; ++d) parts[d] = rconv(rimg, banks[d], stride);
    RImage out = RImage::zeros(parts[0].height, parts[0].width, 4 * K);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c)
            for (int d = 0; d < 4; ++d)
                for (int k = 0; k < K; ++k)
                    out.at(r, c, d * K + k) = parts[d].at(r, c, k);
    return out;
}

RImage maxpool2(const RImage& img) {
    const int oh = img.height / 2, ow = img.width / 2;
    RImage out = RImage::zeros(oh, ow, img.channels);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int ch = 0; ch < img.channels; ++ch) {
                double m = img.at(2 * y, 2 * x, ch);
                m = std::max(m, img.at(2 * y, 2 * x + 1, ch));
                m = std::max(m, img.at(2 * y + 1, 2 * x, ch));
                m = std::max(m, img.at(2 * y + 1, 2 * x + 1, ch));
                out.at(y, x, ch) = m;
            }
    return out;
}

HImage maxpool2(const HImage& img) {
    const int oh = img.height / 2, ow = img.width / 2;
    HImage out = HImage::zeros(oh, ow, img.channels);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int ch = 0; ch < img.channels; ++ch)
                for (int d = 0; d < 4; ++d) {
                    double m = img.at(2 * y, 2 * x, ch)[d];
                    m = std::max(m, img.at(2 * y, 2 * x + 1, ch)[d]);
                    m = std::max(m, img.at(2 * y + 1, 2 * x, ch)[d]);
                    m = std::max(m, img.at(2 * y + 1, 2 * x + 1, ch)[d]);
                    out.at(y, x, ch)[d] = m;
                }
    return out;
}

double dense_sigmoid(std::span<const double> features,
                     std::span<const double> weights, double bias) {
    if (features.size() != weights.size())
        throw DimensionError("dense_sigmoid: " + std::to_string(features.size()) +
                             " features vs " + std::to_string(weights.size()) +
                             " weights");
    double z = bias;
    for (size_t i = 0; i < features.size(); ++i) z += features[i] * weights[i];
    return 1.0 / (1.0 + std::exp(-z));
}

NetworkShape reference_hvcnn(const AlgebraSpec& algebra) {
    NetworkShape s;
    s.algebra = algebra;
    s.input_h = s.input_w = 100;
    s.input_channels = 1;
    s.blocks = {{8}, {16}, {32}};
    return s;
}

NetworkShape reference_rvcnn() {
    NetworkShape s;
    s.input_h = s.input_w = 100;
    s.input_channels = 3;
    s.blocks = {{32}, {64}, {128}};
    return s;
}

Network build_network(const NetworkShape& shape) {
    if (shape.blocks.empty())
        throw ConfigError("network needs at least one conv block");
    if (shape.algebra && !shape.algebra->valid())
        throw ConfigError("network: invalid algebra");

    Network net;
    net.shape = shape;
    if (shape.algebra) net.table = build_table(*shape.algebra);

    const int comps = shape.is_hyper() ? 4 : 1;
    int h = shape.input_h, w = shape.input_w, ch = shape.input_channels;
    size_t off = 0;
    int idx = 0;
    for (const auto& blk : shape.blocks) {
        ++idx;
        Network::BlockInfo info;
        info.in_ch = ch;
        if (h < blk.kh || w < blk.kw)
            throw DimensionError("conv" + std::to_string(idx) + ": input " +
                                 std::to_string(h) + "x" + std::to_string(w) +
                                 " smaller than " + std::to_string(blk.kh) + "x" +
                                 std::to_string(blk.kw) + " kernel");
        info.conv_h = h - blk.kh + 1;
        info.conv_w = w - blk.kw + 1;
        info.out_h = blk.pool ? info.conv_h / 2 : info.conv_h;
        info.out_w = blk.pool ? info.conv_w / 2 : info.conv_w;
        if (info.out_h < 1 || info.out_w < 1)
            throw DimensionError("conv" + std::to_string(idx) +
                                 ": output collapses to zero size");
        info.weights_per_component =
            static_cast<size_t>(blk.filters) * blk.kh * blk.kw * ch;
        info.weights_off = off;
        off += info.weights_per_component * comps;
        info.bias_off = off;
        off += static_cast<size_t>(blk.filters) * comps;
        net.blocks.push_back(info);
        h = info.out_h;
        w = info.out_w;
        ch = blk.filters;
    }
    net.feature_len = h * w * ch * comps;
    net.dense_w_off = off;
    off += static_cast<size_t>(net.feature_len);
    net.dense_b_off = off;
    off += 1;
    net.params.assign(off, 0.0);
    return net;
}

ParamTable count_params(const Network& net) {
    ParamTable t;
    const bool hyper = net.shape.is_hyper();
    for (size_t b = 0; b < net.blocks.size(); ++b) {
        const auto& blk = net.shape.blocks[b];
        const auto& info = net.blocks[b];
        const long per_filter = hyper
                                    ? static_cast<long>(blk.kh) * blk.kw * info.in_ch * 4 + 4
                                    : static_cast<long>(blk.kh) * blk.kw * info.in_ch + 1;
        t.rows.push_back({"conv" + std::to_string(b + 1), blk.filters,
                          blk.filters * per_filter});
    }
    t.rows.push_back({"dense", 1, static_cast<long>(net.feature_len) + 1});
    for (const auto& r : t.rows) t.total += r.params;
    return t;
}

RFilterBank assemble_block_bank(const Network& net, int b) {
    const auto& blk = net.shape.blocks[b];
    const auto& info = net.blocks[b];
    const int K = blk.filters, C = info.in_ch;
    if (!net.shape.is_hyper()) {
        RFilterBank bank = RFilterBank::zeros(K, blk.kh, blk.kw, C);
        std::copy_n(net.params.begin() + info.weights_off,
                    info.weights_per_component, bank.weights.begin());
        std::copy_n(net.params.begin() + info.bias_off, K, bank.bias.begin());
        return bank;
    }
    const EmulationMap m = emulation_map(net.table);
    const size_t wpc = info.weights_per_component;
    RFilterBank bank = RFilterBank::zeros(4 * K, blk.kh, blk.kw, 4 * C);
    for (int d = 0; d < 4; ++d)
        for (int k = 0; k < K; ++k) {
            bank.bias[d * K + k] = net.params[info.bias_off + d * K + k];
            for (int u = 0; u < blk.kh; ++u)
                for (int v = 0; v < blk.kw; ++v)
                    for (int blkc = 0; blkc < 4; ++blkc)
                        for (int c = 0; c < C; ++c) {
                            const size_t src =
                                info.weights_off + m.source[d][blkc] * wpc +
                                ((static_cast<size_t>(k) * blk.kh + u) * blk.kw + v) * C + c;
                            bank.at(d * K + k, u, v, blkc * C + c) =
                                m.sign[d][blkc] * net.params[src];
                        }
        }
    return bank;
}

namespace {

void add_bias_relu(RImage& img, const std::vector<double>& bias,
                   RImage* preact) {
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            for (int ch = 0; ch < img.channels; ++ch) {
                const double z = img.at(r, c, ch) + bias[ch];
                if (preact) preact->at(r, c, ch) = z;
                img.at(r, c, ch) = z > 0.0 ? z : 0.0;
            }
}

}  // namespace

double forward(const Network& net, const RImage& input, ForwardTrace* trace) {
    if (input.height != net.shape.input_h || input.width != net.shape.input_w ||
        input.channels != net.shape.real_input_channels())
        throw DimensionError(
            "input: expected " + std::to_string(net.shape.input_h) + "x" +
            std::to_string(net.shape.input_w) + "x" +
            std::to_string(net.shape.real_input_channels()) + ", got " +
            std::to_string(input.height) + "x" + std::to_string(input.width) +
            "x" + std::to_string(input.channels));

    RImage x = input;
    for (size_t b = 0; b < net.blocks.size(); ++b) {
        const RFilterBank bank = assemble_block_bank(net, static_cast<int>(b));
        if (trace) trace->inputs.push_back(x);
        RImage conv = rconv(x, bank);
        RImage preact;
        if (trace) preact = RImage::zeros(conv.height, conv.width, conv.channels);
        add_bias_relu(conv, bank.bias, trace ? &preact : nullptr);
        if (trace) {
            trace->preacts.push_back(std::move(preact));
            trace->activations.push_back(conv);
        }
        x = net.shape.blocks[b].pool ? maxpool2(conv) : std::move(conv);
        if (trace) trace->outputs.push_back(x);
    }

    const double p = dense_sigmoid(
        std::span<const double>(x.data),
        std::span<const double>(net.params.data() + net.dense_w_off,
                                static_cast<size_t>(net.feature_len)),
        net.params[net.dense_b_off]);
    if (trace) {
        trace->features = x.data;
        trace->prob = p;
        const double q = std::clamp(p, 1e-15, 1.0 - 1e-15);
        trace->logit = std::log(q / (1.0 - q));
    }
    return p;
}

double forward_direct(const Network& net, const HImage& input) {
    if (!net.shape.is_hyper())
        throw ConfigError("forward_direct: network is real-valued");
    if (input.height != net.shape.input_h || input.width != net.shape.input_w ||
        input.channels != net.shape.input_channels)
        throw DimensionError("input: hypercomplex shape mismatch");

    HImage x = input;
    for (size_t b = 0; b < net.blocks.size(); ++b) {
        const auto& blk = net.shape.blocks[b];
        const auto& info = net.blocks[b];
        const int K = blk.filters, C = info.in_ch;
        HFilterBank bank = HFilterBank::zeros(K, blk.kh, blk.kw, C);
        const size_t wpc = info.weights_per_component;
        for (size_t i = 0; i < wpc; ++i)
            for (int d = 0; d < 4; ++d)
                bank.weights[i][d] = net.params[info.weights_off + d * wpc + i];
        for (int k = 0; k < K; ++k)
            for (int d = 0; d < 4; ++d)
                bank.bias[k][d] = net.params[info.bias_off + d * K + k];

        x = hconv_direct(x, bank, net.table);
        for (int r = 0; r < x.height; ++r)
            for (int c = 0; c < x.width; ++c)
                for (int k = 0; k < K; ++k)
                    for (int d = 0; d < 4; ++d) {
                        const double z = x.at(r, c, k)[d] + bank.bias[k][d];
                        x.at(r, c, k)[d] = z > 0.0 ? z : 0.0;
                    }
        if (blk.pool) x = maxpool2(x);
    }

    const RImage packed = pack_real(x);
    return dense_sigmoid(
        std::span<const double>(packed.data),
        std::span<const double>(net.params.data() + net.dense_w_off,
                                static_cast<size_t>(net.feature_len)),
        net.params[net.dense_b_off]);
}

void save_checkpoint(const std::string& path, const Network& net,
                     const std::string& encoding) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("checkpoint: cannot open " + path);
    f << "hyperconv-checkpoint 1\n";
    f << "algebra "
      << (net.shape.algebra ? algebra_name(*net.shape.algebra) : "real") << "\n";
    f << "encoding " << encoding << "\n";
    f << "input " << net.shape.input_h << " " << net.shape.input_w << " "
      << net.shape.input_channels << "\n";
    f << "blocks " << net.shape.blocks.size() << "\n";
    for (const auto& b : net.shape.blocks)
        f << "conv " << b.filters << " " << b.kh << " " << b.kw << " "
          << (b.pool ? 1 : 0) << "\n";
    f << "params " << net.params.size() << "\n";
    f << "data\n";
    f.write(reinterpret_cast<const char*>(net.params.data()),
            static_cast<std::streamsize>(net.params.size() * sizeof(double)));
    if (!f) throw IoError("checkpoint: write failed for " + path);
}

Network load_checkpoint(const std::string& path, std::string* encoding) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("checkpoint: cannot open " + path);
    std::string line;

    auto expect = [&](const std::string& key) -> std::string {
        if (!std::getline(f, line))
            throw IoError("checkpoint: truncated header in " + path);
        if (line.rfind(key + " ", 0) != 0)
            throw IoError("checkpoint: expected '" + key + "' line in " + path);
        return line.substr(key.size() + 1);
    };

    if (!std::getline(f, line) || line != "hyperconv-checkpoint 1")
        throw IoError("checkpoint: unrecognized format in " + path);

    NetworkShape shape;
    const std::string alg = expect("algebra");
    if (alg != "real") {
        const auto spec = parse_algebra_name(alg);
        if (!spec) throw IoError("checkpoint: unknown algebra '" + alg + "'");
        shape.algebra = *spec;
    }
    const std::string enc = expect("encoding");
    if (encoding) *encoding = enc;
    {
        std::istringstream ss(expect("input"));
        ss >> shape.input_h >> shape.input_w >> shape.input_channels;
        if (!ss) throw IoError("checkpoint: bad input line in " + path);
    }
    size_t nblocks = 0;
    {
        std::istringstream ss(expect("blocks"));
        ss >> nblocks;
        if (!ss || nblocks == 0) throw IoError("checkpoint: bad blocks line in " + path);
    }
    for (size_t i = 0; i < nblocks; ++i) {
        std::istringstream ss(expect("conv"));
        ConvBlockSpec b;
        int pool = 1;
        ss >> b.filters >> b.kh >> b.kw >> pool;
        if (!ss) throw IoError("checkpoint: bad conv line in " + path);
        b.pool = pool != 0;
        shape.blocks.push_back(b);
    }
    size_t nparams = 0;
    {
        std::istringstream ss(expect("params"));
        ss >> nparams;
        if (!ss) throw IoError("checkpoint: bad params line in " + path);
    }
    if (!std::getline(f, line) || line != "data")
        throw IoError("checkpoint: missing data marker in " + path);

    Network net = build_network(shape);
    if (net.params.size() != nparams)
        throw IoError("checkpoint: parameter count " + std::to_string(nparams) +
                      " does not match architecture (" +
                      std::to_string(net.params.size()) + ") in " + path);
    f.read(reinterpret_cast<char*>(net.params.data()),
           static_cast<std::streamsize>(nparams * sizeof(double)));
    if (!f) throw IoError("checkpoint: truncated data in " + path);
    return net;
}

}  // namespace hyperconv
