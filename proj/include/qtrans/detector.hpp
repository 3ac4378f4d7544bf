#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

namespace qtrans {

// photon_counter resolves photon number (and so can discard two-photon
// events); single_photon_detector only reports "click".
enum class DetectorKind { photon_counter, single_photon_detector };

struct DetectorModel {
    DetectorKind kind = DetectorKind::photon_counter;
    double efficiency = 1.0;  // eta_d, per arriving photon

    friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

inline void validate(const DetectorModel& d) {
    if (!(d.efficiency >= 0.0 && d.efficiency <= 1.0))
        throw std::domain_error("detector: efficiency outside [0,1]");
}

inline const char* to_string(DetectorKind k) {
    return k == DetectorKind::photon_counter ? "counter" : "spd";
}

inline std::optional<DetectorKind> parse_detector_kind(std::string_view s) {
    if (s == "counter") return DetectorKind::photon_counter;
    if (s == "spd") return DetectorKind::single_photon_detector;
    return std::nullopt;
}

}  // namespace qtrans
