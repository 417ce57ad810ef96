#pragma once

#include <span>
#include <string>
#include <vector>

namespace shotnoise {

/// Transmission probabilities of the conducting eigenchannels of a contact.
/// Every entry lies in [0, 1]; an empty set is a closed contact (G = 0).
class ChannelSet {
public:
    ChannelSet() = default;
    explicit ChannelSet(std::vector<double> transmissions);
    ChannelSet(std::initializer_list<double> transmissions)
        : ChannelSet(std::vector<double>(transmissions)) {}

    std::span<const double> transmissions() const noexcept { return transmissions_; }
    std::size_t size() const noexcept { return transmissions_.size(); }
    bool empty() const noexcept { return transmissions_.empty(); }
    double operator[](std::size_t i) const { return transmissions_[i]; }

    friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

private:
    std::vector<double> transmissions_;
};

/// Maps a total conductance onto channels by sequential filling: channel i
/// opens only once channels 0..i-1 have reached their saturation values.
class DecompositionModel {
public:
    explicit DecompositionModel(std::vector<double> saturations, std::string description = {});

    /// Single-atom Ag contact: first channel saturates at 0.93, second at 1.
    static DecompositionModel two_channel();

    /// `atoms` channels saturating at 0.93 followed by one unit channel.
    static DecompositionModel atoms(std::size_t atoms);

    std::span<const double> saturations() const noexcept { return saturations_; }
    const std::string& description() const noexcept { return description_; }

    /// Largest conductance (in G0) the model can carry.
    double capacity() const noexcept { return capacity_; }

private:
    std::vector<double> saturations_;
    std::string description_;
    double capacity_ = 0.0;
};

/// Absolute slack on capacity checks.
inline constexpr double capacity_tolerance = 1e-12;

/// Saturation of the first channel of a single-atom Ag contact.
inline constexpr double ag_contact_saturation = 0.93;

/// Dimensionless conductance G/G0 = sum of transmissions.
double total_transmission(const ChannelSet& channels) noexcept;

/// sum T(1-T) / sum T. Throws ZeroConductanceError when sum T == 0.
double fano(const ChannelSet& channels);

/// Sequential-fill decomposition of `g` (in G0) with trailing zero channels
/// trimmed.
ChannelSet decompose(double g, const DecompositionModel& model);

enum class Spacing { log, linear };

struct FanoPoint {
    double g;
    double fano;
};

/// fano(decompose(g)) sampled on `n_points` conductances in [g_min, g_max].
/// Both ends are included exactly.
std::vector<FanoPoint> fano_curve(const DecompositionModel& model, double g_min, double g_max,
                                  std::size_t n_points, Spacing spacing = Spacing::log);

/// Parses "0.93,1.0" style lists.
std::vector<double> parse_decimal_list(const std::string& text);

} // namespace shotnoise
