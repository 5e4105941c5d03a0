#pragma once

// Scalar Gaussian rate primitives and the layered dirty-paper transmission
// plan that realises the achievable region.

#include <array>
#include <vector>

#include "bcsi/config_algebra.hpp"
#include "bcsi/core.hpp"

namespace bcsi {

/// Y_i = X + Z_i with E[X^2] <= power and Z_i ~ N(0, noise[i-1]).
struct Channel {
    double power = 0.0;
    std::array<double, 3> noise{};
    LogBase base = LogBase::Two;

    double noise_of(int receiver) const { return noise[receiver - 1]; }

    /// Throws std::invalid_argument unless power > 0 and 0 < N1 < N2 < N3.
    void validate() const;
};

/// Nonnegative per-layer powers summing to the channel power.
class PowerSplit {
public:
    PowerSplit() = default;
    explicit PowerSplit(std::vector<double> parts);

    /// Throws std::invalid_argument on negative parts or a total that is not
    /// the channel power within 1e-12 relative.
    void validate(const Channel& ch) const;

    std::size_t size() const { return parts_.size(); }
    double operator[](std::size_t l) const { return parts_[l]; }
    const std::vector<double>& parts() const { return parts_; }
    double total() const;

    /// Power of the layers strictly below layer_index (0-based).
    double below(std::size_t layer_index) const;
    /// Power of the layers strictly above layer_index (0-based).
    double above(std::size_t layer_index) const;

private:
    std::vector<double> parts_;
};

/// (1/2) log_b (1 + snr). Throws std::domain_error for negative snr.
double cap(double snr, LogBase base = LogBase::Two);

/// Inverse of cap: the snr needed for a given rate.
double cap_inverse(double rate, LogBase base = LogBase::Two);

/// U = alpha S + X with X ~ N(0,signal_power) independent of S ~ N(0,interference_power)
/// and observation Y = X + S + Z, Z ~ N(0,noise).
struct DPCLayer {
    double signal_power = 0.0;
    double interference_power = 0.0;
    double noise = 1.0;
    double alpha = 0.0;
};

/// I(U;Y) - I(U;S), clamped at 0. Throws std::invalid_argument on noise <= 0
/// or negative powers.
double dpc_rate(const DPCLayer& layer, LogBase base = LogBase::Two);

/// I(U;Y|S) = cap(signal_power / noise): the receiver already knows S.
double dpc_rate_known_interference(const DPCLayer& layer, LogBase base = LogBase::Two);

/// The interference-free optimal scaling P_x / (P_x + N).
double dpc_optimal_alpha(double signal_power, double noise);

enum class DecodeMode {
    NotDecoding,
    Direct,              // DPC decoding, lower layers as noise
    InterferenceKnown,   // successive decoding with the layer's interference reconstructed
};

struct PlanLayer {
    int index = 1;                // power-order index, 1 = least interference
    ReceiverSet targets;          // K_l: receivers carrying message parts in this layer
    double power = 0.0;
    double alpha = 0.0;
    int intended_receiver = 0;    // receiver whose noise tunes alpha
    std::array<DecodeMode, 3> modes{DecodeMode::NotDecoding, DecodeMode::NotDecoding,
                                    DecodeMode::NotDecoding};

    DecodeMode mode(int receiver) const { return modes[receiver - 1]; }
};

struct LayerPlan {
    int degree = 0;  // a31 + a32 + a21
    std::vector<PlanLayer> layers;

    const PlanLayer& layer(int index) const;
    double power_below(int index) const;
    double power_above(int index) const;
};

/// Builds the transmission plan for A and a 3-part split. When a31 = a32 = a21 = 1
/// the plan has a single layer with S = 0 and U = X carrying the full power.
LayerPlan build_layer_plan(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split);

/// C_i for receiver i on layer l of the plan. Throws std::invalid_argument if
/// the receiver does not decode that layer.
double layer_receiver_rate(const LayerPlan& plan, int layer, int receiver, const Channel& ch);

}  // namespace bcsi
