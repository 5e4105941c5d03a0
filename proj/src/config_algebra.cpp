#include "bcsi/config_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace bcsi {

RoutingMatrix::RoutingMatrix(const Entries& entries)
{
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int v = entries[i][j];
            if (v != 0 && v != 1)
                throw std::invalid_argument("routing matrix entries must be 0 or 1");
            if (i == j && v != 0)
                throw std::invalid_argument("routing matrix diagonal must be zero");
            if (v) known_[i] |= 1u << j;
        }
    }
}

RoutingMatrix RoutingMatrix::from_id(int id)
{
    if (id < 0 || id > 63)
        throw std::invalid_argument("config id must be in 0..63, got " + std::to_string(id));
    RoutingMatrix a;
    for (std::size_t k = 0; k < kConfigBitOrder.size(); ++k) {
        if ((id >> k) & 1) {
            const auto [i, j] = kConfigBitOrder[k];
            a.known_[i - 1] |= 1u << (j - 1);
        }
    }
    return a;
}

RoutingMatrix RoutingMatrix::parse(std::string_view text)
{
    if (text.size() == 6 && text.find_first_not_of("01") == std::string_view::npos) {
        int id = 0;
        for (std::size_t k = 0; k < 6; ++k)
            if (text[k] == '1') id |= 1 << k;
        return from_id(id);
    }
    int id = -1;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, id);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw std::invalid_argument("bad config '" + std::string(text) +
                                    "': expected 0..63 or a 6-character bit string");
    return from_id(id);
}

int RoutingMatrix::id() const
{
    int id = 0;
    for (std::size_t k = 0; k < kConfigBitOrder.size(); ++k) {
        const auto [i, j] = kConfigBitOrder[k];
        if (knows(i, j)) id |= 1 << k;
    }
    return id;
}

std::string RoutingMatrix::bits() const
{
    std::string s(6, '0');
    const int v = id();
    for (int k = 0; k < 6; ++k)
        if ((v >> k) & 1) s[k] = '1';
    return s;
}

RoutingMatrix::Entries RoutingMatrix::entries() const
{
    Entries e{};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) e[i - 1][j - 1] = knows(i, j) ? 1 : 0;
    return e;
}

RoutingMatrix RoutingMatrix::with(int i, int j, bool value) const
{
    Entries e = entries();
    e[i - 1][j - 1] = value ? 1 : 0;
    return RoutingMatrix(e);
}

int encode_config(const RoutingMatrix& a) { return a.id(); }
RoutingMatrix decode_config(int id) { return RoutingMatrix::from_id(id); }

bool is_acyclic(const RoutingMatrix& a, ReceiverSet v)
{
    const auto m = v.members();
    for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = x + 1; y < m.size(); ++y)
            if (a.knows(m[x], m[y]) && a.knows(m[y], m[x])) return false;
    if (m.size() == 3) {
        if (a.knows(1, 2) && a.knows(2, 3) && a.knows(3, 1)) return false;
        if (a.knows(1, 3) && a.knows(3, 2) && a.knows(2, 1)) return false;
    }
    return true;
}

std::vector<ReceiverSet> acyclic_family(const RoutingMatrix& a)
{
    std::vector<ReceiverSet> out{ReceiverSet{}};
    for (unsigned m : kNonemptySubsetMasks) {
        const auto v = ReceiverSet::from_mask(m);
        if (is_acyclic(a, v)) out.push_back(v);
    }
    return out;
}

bool is_complete(const RoutingMatrix& a, ReceiverSet v)
{
    const auto m = v.members();
    for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = x + 1; y < m.size(); ++y)
            if (!a.knows(m[y], m[x])) return false;
    return true;
}

std::vector<ReceiverSet> complete_sets(const RoutingMatrix& a)
{
    std::vector<ReceiverSet> out;
    for (unsigned m : kNonemptySubsetMasks) {
        const auto v = ReceiverSet::from_mask(m);
        if (is_complete(a, v)) out.push_back(v);
    }
    return out;
}

std::vector<ReceiverSet> maximum_complete_sets(const RoutingMatrix& a)
{
    const auto all = complete_sets(a);
    std::vector<ReceiverSet> out;
    for (auto v : all) {
        const bool has_superset = std::any_of(all.begin(), all.end(), [&](ReceiverSet w) {
            return w != v && v.is_subset_of(w);
        });
        if (!has_superset) out.push_back(v);
    }
    return out;
}

CompleteSetFamily layer_assignment(const RoutingMatrix& a)
{
    CompleteSetFamily f;
    f.k_family = maximum_complete_sets(a);
    for (int l = 1; l <= 3; ++l) {
        int best = 1 << 20;
        int hits = 0;
        for (auto k : f.k_family) {
            if (!k.contains(l)) continue;
            const int score = k.min() + k.max();
            if (score < best) {
                best = score;
                f.layer_of[l - 1] = k;
                hits = 1;
            } else if (score == best) {
                ++hits;
            }
        }
        if (hits != 1)
            throw std::logic_error("layer assignment for layer " + std::to_string(l) +
                                   " is not unique in config " + std::to_string(a.id()));
    }
    return f;
}

int side_info_degree(const RoutingMatrix& a)
{
    return int(a.knows(3, 1)) + int(a.knows(3, 2)) + int(a.knows(2, 1));
}

bool is_weaker(const RoutingMatrix& a, ReceiverSet v1, ReceiverSet v2)
{
    if (v1.empty() || v2.empty()) return false;
    if (v1.min() <= v2.max()) return false;
    for (int i : v1.members())
        for (int j : v2.members())
            if (a.knows(i, j)) return false;
    return true;
}

namespace {

bool extends(const RoutingMatrix& a, const DegradedSequence& seq, ReceiverSet next,
             WeaknessReading reading)
{
    if (seq.empty()) return true;
    if (reading == WeaknessReading::Consecutive) return is_weaker(a, next, seq.back());
    return std::all_of(seq.begin(), seq.end(),
                       [&](ReceiverSet prev) { return is_weaker(a, next, prev); });
}

void grow(const RoutingMatrix& a, const std::vector<ReceiverSet>& acyclic,
          WeaknessReading reading, DegradedSequence& current,
          std::vector<DegradedSequence>& out)
{
    for (auto v : acyclic) {
        if (!extends(a, current, v, reading)) continue;
        current.push_back(v);
        out.push_back(current);
        grow(a, acyclic, reading, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<DegradedSequence> degraded_sequences(const RoutingMatrix& a, WeaknessReading reading)
{
    std::vector<ReceiverSet> acyclic;
    for (auto v : acyclic_family(a))
        if (!v.empty()) acyclic.push_back(v);
    std::vector<DegradedSequence> out;
    DegradedSequence current;
    grow(a, acyclic, reading, current, out);
    return out;
}

bool is_degraded_sequence(const RoutingMatrix& a, const DegradedSequence& seq,
                          WeaknessReading reading)
{
    if (seq.empty()) return false;
    DegradedSequence prefix;
    for (auto v : seq) {
        if (v.empty() || !is_acyclic(a, v) || !extends(a, prefix, v, reading)) return false;
        prefix.push_back(v);
    }
    return true;
}

double max_uncertainty_rate(const RoutingMatrix& a, int receiver, const RateTuple& rates)
{
    if (receiver < 1 || receiver > 3)
        throw std::invalid_argument("receiver must be 1, 2 or 3");
    double best = 0.0;
    for (auto v : acyclic_family(a)) {
        double s = 0.0;
        for (int j : v.members())
            if (!a.knows(receiver, j)) s += rates[j - 1];
        best = std::max(best, s);
    }
    return best;
}

std::string to_string(TightnessCase c)
{
    switch (c) {
    case TightnessCase::Case1: return "case1";
    case TightnessCase::Case2: return "case2";
    case TightnessCase::Case3: return "case3";
    case TightnessCase::Case4: return "case4";
    case TightnessCase::Open: return "open";
    }
    return "open";
}

std::string to_string(const std::vector<ReceiverSet>& family)
{
    std::string s = "{";
    for (std::size_t k = 0; k < family.size(); ++k) {
        if (k) s += ',';
        s += family[k].to_string();
    }
    return s + "}";
}

std::string TightnessVerdict::detail() const
{
    std::string s = "K_I=" + to_string(k_family);
    if (labels[0] != 0)
        s += " k1=" + std::to_string(labels[0]) + " k2=" + std::to_string(labels[1]) +
             " k3=" + std::to_string(labels[2]);
    return s;
}

TightnessVerdict tightness_classify(const RoutingMatrix& a)
{
    TightnessVerdict v;
    v.k_family = maximum_complete_sets(a);
    const auto& fam = v.k_family;

    if (fam.size() == 1 && fam[0] == kAllReceivers) {
        v.case_id = TightnessCase::Case1;
    } else if (fam.size() == 3) {
        v.case_id = TightnessCase::Case4;  // three singletons
    } else if (fam.size() == 2 && fam[0].size() == 2 && fam[1].size() == 2) {
        // {k1,k2},{k2,k3} sharing k2
        const auto shared = fam[0] & fam[1];
        const int k2 = shared.min();
        const int k1 = ReceiverSet::from_mask(fam[0].mask() & ~shared.mask()).min();
        const int k3 = ReceiverSet::from_mask(fam[1].mask() & ~shared.mask()).min();
        v.labels = {k1, k2, k3};
        if (a.knows(k1, k2) && a.knows(k3, k2)) v.case_id = TightnessCase::Case2;
    } else if (fam.size() == 2) {
        // {k1,k2},{k3}
        const auto pair = fam[0].size() == 2 ? fam[0] : fam[1];
        const auto single = fam[0].size() == 2 ? fam[1] : fam[0];
        v.labels = {pair.min(), pair.max(), single.min()};
        if (single.min() != 2) v.case_id = TightnessCase::Case3;
    }
    return v;
}

}  // namespace bcsi
