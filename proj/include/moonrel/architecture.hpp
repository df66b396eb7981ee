#pragma once

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace moonrel {

/// Thrown when a k-out-of-n threshold lies outside [1, count].
struct ThresholdOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a failure rate is zero or negative.
struct NonPositiveRate : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an architecture label string cannot be parsed.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/**
 * One SooN_S/MooN_M sensor/MCU configuration with per-component failure
 * rates. The sensor layer operates while at least s_required of n_sensors
 * sensors work; the MCU layer analogously. Rates are per hour.
 *
 * Immutable by convention: treat instances as values.
 */
struct ArchitectureSpec {
    int n_sensors = 1;      // N_S
    int s_required = 1;     // S
    int n_mcus = 1;         // N_M
    int m_required = 1;     // M
    double lambda_sensor = 0.0;   // lambda_S, 1/h
    double lambda_mcu = 0.0;      // lambda_M, 1/h

    friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

/// Checks all ArchitectureSpec invariants and returns the spec unchanged.
inline ArchitectureSpec validate(const ArchitectureSpec& spec) {
    if (spec.n_sensors < 1 || spec.s_required < 1 || spec.s_required > spec.n_sensors)
        throw ThresholdOutOfRange("sensor threshold must satisfy 1 <= S <= N_S, got " +
                                  std::to_string(spec.s_required) + "oo" +
                                  std::to_string(spec.n_sensors));
    if (spec.n_mcus < 1 || spec.m_required < 1 || spec.m_required > spec.n_mcus)
        throw ThresholdOutOfRange("MCU threshold must satisfy 1 <= M <= N_M, got " +
                                  std::to_string(spec.m_required) + "oo" +
                                  std::to_string(spec.n_mcus));
    if (!(spec.lambda_sensor > 0.0))
        throw NonPositiveRate("sensor failure rate must be > 0");
    if (!(spec.lambda_mcu > 0.0))
        throw NonPositiveRate("MCU failure rate must be > 0");
    return spec;
}

/**
 * Redundancy class of one layer, derived from (threshold, count) alone.
 * The four tags partition the valid (threshold, count) space.
 */
enum class DiagnosisClass {
    MajorityVoting,   // 1 < k < n: faulty members detectable by output comparison
    PureSeries,       // k == n, n > 1: any failure kills the layer
    PureParallel,     // k == 1, n > 1: no majority to compare against
    NoRedundancy,     // n == 1
};

inline const char* to_string(DiagnosisClass c) {
    switch (c) {
        case DiagnosisClass::MajorityVoting: return "MajorityVoting";
        case DiagnosisClass::PureSeries: return "PureSeries";
        case DiagnosisClass::PureParallel: return "PureParallel";
        case DiagnosisClass::NoRedundancy: return "NoRedundancy";
    }
    return "?";
}

inline DiagnosisClass classify_layer(int threshold, int count) {
    if (count == 1)
        return DiagnosisClass::NoRedundancy;
    if (threshold == count)
        return DiagnosisClass::PureSeries;
    if (threshold == 1)
        return DiagnosisClass::PureParallel;
    return DiagnosisClass::MajorityVoting;
}

struct Diagnosis {
    DiagnosisClass sensor_layer;
    DiagnosisClass mcu_layer;
    bool suitable;
};

/**
 * Classifies both layers and decides fault-tolerance suitability.
 *
 * A configuration is suitable when both layers vote by majority, or when a
 * single-component layer is paired with a majority-voting one. Pure series
 * and pure parallel layers lack self-diagnosis and disqualify the whole
 * configuration. Failure rates play no role here.
 */
inline Diagnosis classify_self_diagnosis(const ArchitectureSpec& spec) {
    const DiagnosisClass s = classify_layer(spec.s_required, spec.n_sensors);
    const DiagnosisClass m = classify_layer(spec.m_required, spec.n_mcus);
    const auto ok = [](DiagnosisClass a, DiagnosisClass b) {
        return a == DiagnosisClass::MajorityVoting &&
               (b == DiagnosisClass::MajorityVoting || b == DiagnosisClass::NoRedundancy);
    };
    return Diagnosis{s, m, ok(s, m) || ok(m, s)};
}

/// True for the 1oo1/1oo1 baseline used as reference in comparisons.
inline bool is_reference(const ArchitectureSpec& spec) {
    return spec.n_sensors == 1 && spec.s_required == 1 && spec.n_mcus == 1 &&
           spec.m_required == 1;
}

/// Compact "SooN_S/MooN_M" label, e.g. "2oo3/3oo4".
inline std::string format_label(const ArchitectureSpec& spec) {
    return std::to_string(spec.s_required) + "oo" + std::to_string(spec.n_sensors) + "/" +
           std::to_string(spec.m_required) + "oo" + std::to_string(spec.n_mcus);
}

namespace detail {

// Parses "<k>oo<n>" case-insensitively from a layer substring.
inline std::pair<int, int> parse_layer(std::string_view text, std::string_view whole) {
    const auto fail = [&]() -> std::pair<int, int> {
        throw ParseError("bad architecture label \"" + std::string(whole) +
                         "\": expected \"SooN/MooN\", e.g. \"2oo3/2oo4\"");
    };
    std::size_t oo = std::string_view::npos;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) == 'o' &&
            std::tolower(static_cast<unsigned char>(text[i + 1])) == 'o') {
            oo = i;
            break;
        }
    }
    if (oo == std::string_view::npos || oo == 0 || oo + 2 >= text.size())
        return fail();
    int k = 0, n = 0;
    auto r1 = std::from_chars(text.data(), text.data() + oo, k);
    auto r2 = std::from_chars(text.data() + oo + 2, text.data() + text.size(), n);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + oo || r2.ec != std::errc{} ||
        r2.ptr != text.data() + text.size())
        return fail();
    return {k, n};
}

}  // namespace detail

/**
 * Parses a "SooN_S/MooN_M" label (case-insensitive) into a spec with the
 * given rates. Throws ParseError on malformed input and ThresholdOutOfRange
 * when a parsed threshold exceeds its count.
 */
inline ArchitectureSpec parse_label(std::string_view label, double lambda_sensor,
                                    double lambda_mcu) {
    const std::size_t slash = label.find('/');
    if (slash == std::string_view::npos || label.find('/', slash + 1) != std::string_view::npos)
        throw ParseError("bad architecture label \"" + std::string(label) +
                         "\": expected \"SooN/MooN\", e.g. \"2oo3/2oo4\"");
    const auto [s, ns] = detail::parse_layer(label.substr(0, slash), label);
    const auto [m, nm] = detail::parse_layer(label.substr(slash + 1), label);
    return validate(ArchitectureSpec{ns, s, nm, m, lambda_sensor, lambda_mcu});
}

}  // namespace moonrel
