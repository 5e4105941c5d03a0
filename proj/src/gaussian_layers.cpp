#include "bcsi/gaussian_layers.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bcsi {

void Channel::validate() const
{
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("channel power must be positive and finite");
    if (!(noise[0] > 0.0 && noise[0] < noise[1] && noise[1] < noise[2]) ||
        !std::isfinite(noise[2]))
        throw std::invalid_argument("noise variances must satisfy 0 < N1 < N2 < N3");
}

PowerSplit::PowerSplit(std::vector<double> parts) : parts_(std::move(parts)) {}

double PowerSplit::total() const
{
    return std::accumulate(parts_.begin(), parts_.end(), 0.0);
}

double PowerSplit::below(std::size_t layer_index) const
{
    double s = 0.0;
    for (std::size_t m = 0; m < layer_index; ++m) s += parts_[m];
    return s;
}

double PowerSplit::above(std::size_t layer_index) const
{
    double s = 0.0;
    for (std::size_t m = layer_index + 1; m < parts_.size(); ++m) s += parts_[m];
    return s;
}

void PowerSplit::validate(const Channel& ch) const
{
    for (double p : parts_)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("power split parts must be nonnegative");
    if (std::abs(total() - ch.power) > 1e-12 * ch.power)
        throw std::invalid_argument("power split must sum to the channel power");
}

namespace {

double log_b(double x, LogBase base)
{
    return base == LogBase::Two ? std::log2(x) : std::log(x);
}

}  // namespace

double cap(double snr, LogBase base)
{
    if (snr < 0.0 || std::isnan(snr)) throw std::domain_error("cap: negative snr");
    if (std::isinf(snr)) return snr;
    return 0.5 * (base == LogBase::Two ? std::log1p(snr) / std::log(2.0) : std::log1p(snr));
}

double cap_inverse(double rate, LogBase base)
{
    if (rate < 0.0) throw std::domain_error("cap_inverse: negative rate");
    return base == LogBase::Two ? std::expm1(2.0 * rate * std::log(2.0)) : std::expm1(2.0 * rate);
}

double dpc_optimal_alpha(double signal_power, double noise)
{
    if (signal_power <= 0.0) return 0.0;
    return signal_power / (signal_power + noise);
}

double dpc_rate(const DPCLayer& layer, LogBase base)
{
    const double px = layer.signal_power;
    const double q = layer.interference_power;
    const double n = layer.noise;
    const double a = layer.alpha;
    if (!(n > 0.0)) throw std::invalid_argument("dpc_rate: noise must be positive");
    if (px < 0.0 || q < 0.0) throw std::invalid_argument("dpc_rate: negative power");
    if (px == 0.0) return 0.0;

    // I(U;Y) - I(U;S) = 1/2 log[ Var(Y) det C(U,S) / (Var(S) det C(U,Y)) ],
    // and det C(U,S) = Px Q, so the Q factor cancels (also valid at Q = 0).
    const double var_y = px + q + n;
    const double cov_uy = px + a * q;
    const double det_uy = (a * a * q + px) * var_y - cov_uy * cov_uy;
    const double rate = 0.5 * log_b(var_y * px / det_uy, base);
    // A mismatched alpha can make the difference negative; the layer then
    // simply carries nothing.
    return rate > 0.0 ? rate : 0.0;
}

double dpc_rate_known_interference(const DPCLayer& layer, LogBase base)
{
    if (!(layer.noise > 0.0)) throw std::invalid_argument("dpc_rate: noise must be positive");
    if (layer.signal_power < 0.0) throw std::invalid_argument("dpc_rate: negative power");
    return cap(layer.signal_power / layer.noise, base);
}

const PlanLayer& LayerPlan::layer(int index) const
{
    for (const auto& l : layers)
        if (l.index == index) return l;
    throw std::invalid_argument("plan has no layer " + std::to_string(index));
}

double LayerPlan::power_below(int index) const
{
    double s = 0.0;
    for (const auto& l : layers)
        if (l.index < index) s += l.power;
    return s;
}

double LayerPlan::power_above(int index) const
{
    double s = 0.0;
    for (const auto& l : layers)
        if (l.index > index) s += l.power;
    return s;
}

namespace {

void set_mode(PlanLayer& layer, int receiver, DecodeMode mode) { layer.modes[receiver - 1] = mode; }

PlanLayer tuned_layer(int index, ReceiverSet targets, double power, double cumulative,
                      int tuned_for, const Channel& ch)
{
    PlanLayer l;
    l.index = index;
    l.targets = targets;
    l.power = power;
    l.intended_receiver = tuned_for;
    // alpha_l = P_l / (N_t + sum_{m<=l} P_m)
    const double denom = ch.noise_of(tuned_for) + cumulative;
    l.alpha = power > 0.0 ? power / denom : 0.0;
    return l;
}

}  // namespace

LayerPlan build_layer_plan(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split)
{
    ch.validate();
    if (split.size() != 3) throw std::invalid_argument("layer plan needs a 3-part power split");
    split.validate(ch);

    LayerPlan plan;
    plan.degree = side_info_degree(a);
    const auto fam = layer_assignment(a);

    if (plan.degree == 3) {
        PlanLayer l;
        l.index = 1;
        l.targets = kAllReceivers;
        l.power = ch.power;
        l.alpha = 0.0;
        l.intended_receiver = 1;
        l.modes = {DecodeMode::Direct, DecodeMode::Direct, DecodeMode::Direct};
        plan.layers.push_back(l);
        return plan;
    }

    // Receivers running successive decoding with interference reconstruction,
    // and the receiver each layer's alpha is tuned for.
    std::array<bool, 3> successive{false, false, false};
    std::array<int, 3> tuned_for{0, 0, 0};

    switch (plan.degree) {
    case 2: {
        const auto verdict = tightness_classify(a);  // provides k1,k2,k3 labelling
        const int k1 = verdict.labels[0], k2 = verdict.labels[1], k3 = verdict.labels[2];
        successive[k2 - 1] = true;
        for (int l = 1; l <= 3; ++l) tuned_for[l - 1] = fam.layer(l).contains(k1) ? k1 : k3;
        break;
    }
    case 1:
        if (a.knows(3, 2)) {
            // K_1 = {1}, K_2 = K_3 = {2,3}
            successive[1] = successive[2] = true;
            tuned_for = {1, 2, 2};
        } else {
            // K_1 = K_{j1} = {1,j1}, K_{j2} = {j2}
            successive[0] = true;
            for (int l = 1; l <= 3; ++l) {
                const auto k = fam.layer(l);
                tuned_for[l - 1] = k.size() == 2 ? k.max() : k.min();
            }
        }
        break;
    default:
        tuned_for = {1, 2, 3};  // successive dirty-paper coding
        break;
    }

    double cumulative = 0.0;
    for (int l = 1; l <= 3; ++l) {
        cumulative += split[l - 1];
        auto layer = tuned_layer(l, fam.layer(l), split[l - 1], cumulative, tuned_for[l - 1], ch);
        for (int i : layer.targets.members())
            set_mode(layer, i, successive[i - 1] ? DecodeMode::InterferenceKnown : DecodeMode::Direct);
        plan.layers.push_back(layer);
    }

    // Receiver 1 runs the successive steps over every layer, so it also
    // decodes the singleton layer it carries no message in.
    if (plan.degree == 1 && !a.knows(3, 2)) {
        for (auto& layer : plan.layers)
            if (!layer.targets.contains(1)) set_mode(layer, 1, DecodeMode::InterferenceKnown);
    }
    return plan;
}

double layer_receiver_rate(const LayerPlan& plan, int layer_index, int receiver, const Channel& ch)
{
    const auto& layer = plan.layer(layer_index);
    const double below = plan.power_below(layer_index);
    const DPCLayer dpc{layer.power, plan.power_above(layer_index), ch.noise_of(receiver) + below,
                       layer.alpha};
    switch (layer.mode(receiver)) {
    case DecodeMode::InterferenceKnown: return dpc_rate_known_interference(dpc, ch.base);
    case DecodeMode::Direct: return dpc_rate(dpc, ch.base);
    case DecodeMode::NotDecoding: break;
    }
    throw std::invalid_argument("receiver " + std::to_string(receiver) + " does not decode layer " +
                                std::to_string(layer_index));
}

}  // namespace bcsi
