#include "shotnoise/transport.hpp"

#include "shotnoise/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace shotnoise {

ChannelSet::ChannelSet(std::vector<double> transmissions) : transmissions_(std::move(transmissions)) {
    for (double t : transmissions_) {
        if (!(t >= 0.0 && t <= 1.0))
            throw ValidationError("transmission outside [0, 1]: " + std::to_string(t));
    }
}

DecompositionModel::DecompositionModel(std::vector<double> saturations, std::string description)
    : saturations_(std::move(saturations)), description_(std::move(description)) {
    if (saturations_.empty())
        throw ValidationError("decomposition model needs at least one channel");
    for (double s : saturations_) {
        if (!(s > 0.0 && s <= 1.0))
            throw ValidationError("saturation outside (0, 1]: " + std::to_string(s));
    }
    capacity_ = std::accumulate(saturations_.begin(), saturations_.end(), 0.0);
}

DecompositionModel DecompositionModel::two_channel() {
    return DecompositionModel({ag_contact_saturation, 1.0}, "two-channel single-atom contact");
}

DecompositionModel DecompositionModel::atoms(std::size_t atoms) {
    if (atoms == 0)
        throw ValidationError("atoms preset needs at least one atom");
    std::vector<double> s(atoms, ag_contact_saturation);
    s.push_back(1.0);
    return DecompositionModel(std::move(s), std::to_string(atoms) + "-atom contact");
}

double total_transmission(const ChannelSet& channels) noexcept {
    auto t = channels.transmissions();
    return std::accumulate(t.begin(), t.end(), 0.0);
}

double fano(const ChannelSet& channels) {
    double sum = 0.0;
    double partition = 0.0;
    for (double t : channels.transmissions()) {
        sum += t;
        partition += t * (1.0 - t);
    }
    if (sum <= 0.0)
        throw ZeroConductanceError();
    return partition / sum;
}

ChannelSet decompose(double g, const DecompositionModel& model) {
    if (std::isnan(g))
        throw ValidationError("conductance is NaN");
    if (g < 0.0)
        throw NegativeConductanceError(g);
    if (g > model.capacity() + capacity_tolerance)
        throw CapacityExceededError(g, model.capacity());

    std::vector<double> t;
    double remaining = g;
    for (double s : model.saturations()) {
        if (remaining <= 0.0)
            break;
        double take = std::min(remaining, s);
        t.push_back(take);
        remaining -= take;
    }
    while (!t.empty() && t.back() == 0.0)
        t.pop_back();
    return ChannelSet(std::move(t));
}

std::vector<FanoPoint> fano_curve(const DecompositionModel& model, double g_min, double g_max,
                                  std::size_t n_points, Spacing spacing) {
    if (n_points < 2)
        throw ValidationError("fano curve needs at least 2 points");
    if (!(g_min < g_max))
        throw ValidationError("fano curve needs g_min < g_max");
    if (!(g_min > 0.0))
        throw ValidationError("fano curve needs g_min > 0 (F undefined at g = 0)");
    if (g_max > model.capacity() + capacity_tolerance)
        throw CapacityExceededError(g_max, model.capacity());

    std::vector<FanoPoint> out;
    out.reserve(n_points);
    const double last = static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        double g;
        if (i == 0) {
            g = g_min;
        } else if (i + 1 == n_points) {
            g = g_max;
        } else if (spacing == Spacing::log) {
            g = std::exp(std::log(g_min) + (std::log(g_max) - std::log(g_min)) * static_cast<double>(i) / last);
        } else {
            g = g_min + (g_max - g_min) * static_cast<double>(i) / last;
        }
        out.push_back({g, fano(decompose(g, model))});
    }
    return out;
}

std::vector<double> parse_decimal_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        auto first = item.find_first_not_of(" \t");
        auto lastc = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw ValidationError("empty entry in list \"" + text + "\"");
        item = item.substr(first, lastc - first + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw ValidationError("not a decimal: \"" + item + "\"");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

} // namespace shotnoise
