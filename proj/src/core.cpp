#include "bcsi/core.hpp"

#include <stdexcept>

namespace bcsi {

std::vector<int> ReceiverSet::members() const
{
    std::vector<int> out;
    for (int r = 1; r <= kNumReceivers; ++r)
        if (contains(r)) out.push_back(r);
    return out;
}

std::string ReceiverSet::to_string() const
{
    std::string s = "{";
    bool first = true;
    for (int r : members()) {
        if (!first) s += ',';
        s += std::to_string(r);
        first = false;
    }
    return s + "}";
}

std::string to_string(LogBase base)
{
    return base == LogBase::Two ? "2" : "e";
}

LogBase parse_log_base(const std::string& text)
{
    if (text == "2") return LogBase::Two;
    if (text == "e") return LogBase::E;
    throw std::invalid_argument("log base must be '2' or 'e', got '" + text + "'");
}

double subset_sum(const RateTuple& r, ReceiverSet v)
{
    double s = 0.0;
    for (int k = 1; k <= kNumReceivers; ++k)
        if (v.contains(k)) s += r[k - 1];
    return s;
}

double dot(const WeightVector& mu, const RateTuple& r)
{
    return mu[0] * r[0] + mu[1] * r[1] + mu[2] * r[2];
}

}  // namespace bcsi
