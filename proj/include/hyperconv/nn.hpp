#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperconv/algebra.hpp"
#include "hyperconv/tensor.hpp"

namespace hyperconv {

/// Bank of K hypercomplex filters over C input channels. Weights are laid
/// out (filter, kernel row, kernel col, channel).
struct HFilterBank {
    int count = 0, kh = 0, kw = 0, channels = 0;
    std::vector<HNum> weights;  // count * kh * kw * channels
    std::vector<HNum> bias;     // count

    static HFilterBank zeros(int k, int kh, int kw, int c) {
        HFilterBank b;
        b.count = k;
        b.kh = kh;
        b.kw = kw;
        b.channels = c;
        b.weights.assign(static_cast<size_t>(k) * kh * kw * c, HNum{});
        b.bias.assign(k, HNum{});
        return b;
    }

    size_t index(int k, int u, int v, int c) const {
        return ((static_cast<size_t>(k) * kh + u) * kw + v) * channels + c;
    }
    HNum& at(int k, int u, int v, int c) { return weights[index(k, u, v, c)]; }
    const HNum& at(int k, int u, int v, int c) const {
        return weights[index(k, u, v, c)];
    }
};

/// Real filter bank with the same layout.
struct RFilterBank {
    int count = 0, kh = 0, kw = 0, channels = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    static RFilterBank zeros(int k, int kh, int kw, int c) {
        RFilterBank b;
        b.count = k;
        b.kh = kh;
        b.kw = kw;
        b.channels = c;
        b.weights.assign(static_cast<size_t>(k) * kh * kw * c, 0.0);
        b.bias.assign(k, 0.0);
        return b;
    }

    size_t index(int k, int u, int v, int c) const {
        return ((static_cast<size_t>(k) * kh + u) * kw + v) * channels + c;
    }
    double& at(int k, int u, int v, int c) { return weights[index(k, u, v, c)]; }
    double at(int k, int u, int v, int c) const {
        return weights[index(k, u, v, c)];
    }
};

struct Stride {
    int sy = 1, sx = 1;
};

/// Valid-padding cross-correlation of the image by each filter; bias is not
/// added here. Output is floor((H-kh)/sy)+1 by floor((W-kw)/sx)+1 with K
/// channels.
RImage rconv(const RImage& img, const RFilterBank& bank, Stride stride = {});

/// Hypercomplex convolution evaluated directly in the algebra. Each term is
/// the product image-value * filter-value, in that order (the order matters
/// for the anticommutative algebras).
HImage hconv_direct(const HImage& img, const HFilterBank& bank,
                    const StructureTable& table, Stride stride = {});

/// For output component d and input component block b: which filter
/// component multiplies that block, and with which sign, when a
/// hypercomplex convolution is emulated by real ones.
struct EmulationMap {
    int source[4][4];
    int sign[4][4];
};
EmulationMap emulation_map(const StructureTable& table);

/// The four real banks over 4C packed channels that together emulate one
/// hypercomplex bank: bank d computes component d of the output, and its
/// channel block b carries the (signed) filter component that multiplies
/// input component b. Biases of bank d are the d-components of the
/// hypercomplex biases.
std::array<RFilterBank, 4> build_emulation_banks(const HFilterBank& bank,
                                                 const StructureTable& table);

/// Runs the four emulation banks on a packed image and concatenates the
/// outputs in packed component order (4K channels). Equals
/// pack_real(hconv_direct(unpack_real(rimg), bank, table)).
RImage hconv_emulated(const RImage& rimg, const std::array<RFilterBank, 4>& banks,
                      Stride stride = {});

/// 2x2 max pooling with stride 2; a trailing odd row/column is dropped.
RImage maxpool2(const RImage& img);
/// Same, applied independently to each of the four components.
HImage maxpool2(const HImage& img);

/// sigma(w . x + b).
double dense_sigmoid(std::span<const double> features,
                     std::span<const double> weights, double bias);

/// One convolution -> ReLU [-> 2x2 max-pool] block.
struct ConvBlockSpec {
    int filters = 8;
    int kh = 3, kw = 3;
    bool pool = true;
};

/// Architecture description. With an algebra set, convolutions are
/// hypercomplex: input_channels counts hypercomplex channels and the
/// network runs on the packed real representation (4x the real channels).
/// Without one, the network is an ordinary real CNN.
struct NetworkShape {
    std::optional<AlgebraSpec> algebra;
    int input_h = 100, input_w = 100;
    int input_channels = 1;
    std::vector<ConvBlockSpec> blocks;

    bool is_hyper() const { return algebra.has_value(); }
    int real_input_channels() const {
        return is_hyper() ? 4 * input_channels : input_channels;
    }
};

/// The two full-scale architectures: three 3x3 conv blocks with 2x2
/// pooling and a single sigmoid output neuron.
NetworkShape reference_hvcnn(const AlgebraSpec& algebra);  // 8/16/32 filters
NetworkShape reference_rvcnn();                            // 32/64/128 filters

/// A network instance: its shape plus one flat parameter vector.
///
/// Parameter layout, in declaration order (also the checkpoint order):
/// per conv block, hypercomplex nets store the four weight component arrays
/// (each K*kh*kw*C) followed by the four bias component arrays (each K);
/// real nets store the weight array then the K biases. The dense head
/// stores its weight vector then the single bias.
class Network {
  public:
    NetworkShape shape;
    StructureTable table;  // meaningful only when shape.algebra is set
    std::vector<double> params;

    struct BlockInfo {
        int in_ch = 0;              // channels in the network's own domain
        int conv_h = 0, conv_w = 0; // spatial size after the convolution
        int out_h = 0, out_w = 0;   // after optional pooling
        size_t weights_off = 0;     // start of the weight region
        size_t bias_off = 0;        // start of the bias region
        size_t weights_per_component = 0;  // K*kh*kw*in_ch
    };
    std::vector<BlockInfo> blocks;
    size_t dense_w_off = 0, dense_b_off = 0;
    int feature_len = 0;
};

/// Lays out a zero-initialized network; throws DimensionError naming the
/// block if the spatial size collapses.
Network build_network(const NetworkShape& shape);

struct LayerCount {
    std::string name;
    int filters = 0;  // 0 for the dense row
    long params = 0;
};
struct ParamTable {
    std::vector<LayerCount> rows;
    long total = 0;
};
/// Trainable scalar count per layer; hypercomplex filters count as their
/// four real components.
ParamTable count_params(const Network& net);

/// Intermediate activations of one forward pass, kept for backpropagation.
struct ForwardTrace {
    std::vector<RImage> inputs;       // per block
    std::vector<RImage> preacts;      // conv + bias, before ReLU
    std::vector<RImage> activations;  // after ReLU, before pooling
    std::vector<RImage> outputs;      // block output
    std::vector<double> features;     // flattened final output
    double logit = 0.0;
    double prob = 0.5;
};

/// Emulated forward pass (the production path): conv + bias -> ReLU
/// [-> pool] per block, flatten, dense sigmoid. The input must already be
/// in the network's real representation (packed for hypercomplex nets).
double forward(const Network& net, const RImage& input,
               ForwardTrace* trace = nullptr);

/// Forward pass running every convolution directly in the algebra;
/// retained as the oracle path for equivalence testing.
double forward_direct(const Network& net, const HImage& input);

/// Assembles the single real bank (4K filters over 4C channels for
/// hypercomplex blocks) the emulated forward uses for block b.
RFilterBank assemble_block_bank(const Network& net, int b);

// Checkpoint: a short text header (version, algebra, encoding, input shape,
// conv blocks, parameter count) followed by the raw parameter vector as
// little-endian float64 in declaration order.
void save_checkpoint(const std::string& path, const Network& net,
                     const std::string& encoding);
Network load_checkpoint(const std::string& path, std::string* encoding = nullptr);

}  // namespace hyperconv
