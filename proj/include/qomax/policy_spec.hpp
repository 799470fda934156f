#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qomax/errors.hpp"
#include "qomax/policies/etc.hpp"
#include "qomax/policies/sda.hpp"
#include "qomax/policies/threshold_ascent.hpp"

namespace qomax {

enum class PolicyKind { QoMaxEtc, QoMaxSda, ThresholdAscent, MaxMedian, Uniform };

struct PolicySpec {
    PolicyKind kind = PolicyKind::QoMaxSda;
    double q = 0.5;
    double gamma = 2.0 / 3.0;
    long s = 100;
    double delta = 0.1;
    // Explicit ETC sizes; when absent the (ln T)-based tuning is derived
    // from the horizon.
    std::optional<EtcSizes> etc_sizes;

    std::string name() const {
        switch (kind) {
            case PolicyKind::QoMaxEtc: return "qomax-etc";
            case PolicyKind::QoMaxSda: return "qomax-sda";
            case PolicyKind::ThresholdAscent: return "threshold-ascent";
            case PolicyKind::MaxMedian: return "max-median";
            case PolicyKind::Uniform: return "uniform";
        }
        return "?";
    }

    bool uses_quantile() const {
        return kind == PolicyKind::QoMaxEtc || kind == PolicyKind::QoMaxSda;
    }

    // Parses "name" or "name:key=value,key=value". Known keys: q, gamma, s,
    // delta, n (ETC samples per batch), b (ETC batch count).
    static PolicySpec parse(const std::string& text) {
        PolicySpec spec;
        const auto colon = text.find(':');
        const std::string name = text.substr(0, colon);
        if (name == "qomax-etc") {
            spec.kind = PolicyKind::QoMaxEtc;
        } else if (name == "qomax-sda") {
            spec.kind = PolicyKind::QoMaxSda;
        } else if (name == "threshold-ascent") {
            spec.kind = PolicyKind::ThresholdAscent;
        } else if (name == "max-median") {
            spec.kind = PolicyKind::MaxMedian;
        } else if (name == "uniform") {
            spec.kind = PolicyKind::Uniform;
        } else {
            throw ConfigError("unknown policy '" + name + "'");
        }
        if (colon == std::string::npos) return spec;

        std::uint32_t etc_n = 0;
        std::uint32_t etc_b = 0;
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            const std::string item = rest.substr(pos, comma - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ConfigError("policy parameter '" + item + "' is not key=value");
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            try {
                if (key == "q") {
                    spec.q = std::stod(value);
                } else if (key == "gamma") {
                    spec.gamma = std::stod(value);
                } else if (key == "s") {
                    spec.s = std::stol(value);
                } else if (key == "delta") {
                    spec.delta = std::stod(value);
                } else if (key == "n") {
                    etc_n = static_cast<std::uint32_t>(std::stoul(value));
                } else if (key == "b") {
                    etc_b = static_cast<std::uint32_t>(std::stoul(value));
                } else {
                    throw ConfigError("unknown policy parameter '" + key + "'");
                }
            } catch (const std::invalid_argument&) {
                throw ConfigError("bad value for policy parameter '" + key + "': " + value);
            }
            pos = comma + 1;
        }
        if ((etc_n == 0) != (etc_b == 0))
            throw ConfigError("ETC sizes need both n and b");
        if (etc_n > 0) spec.etc_sizes = EtcSizes{etc_n, etc_b};
        validate(spec);
        return spec;
    }

    static void validate(const PolicySpec& spec) {
        if (!(spec.q > 0.0 && spec.q < 1.0)) throw ConfigError("policy: q must be in (0,1)");
        if (!(spec.gamma > 0.0 && spec.gamma < 1.0))
            throw ConfigError("policy: gamma must be in (0,1)");
        if (spec.s < 1) throw ConfigError("policy: s must be >= 1");
        if (!(spec.delta > 0.0 && spec.delta < 1.0))
            throw ConfigError("policy: delta must be in (0,1)");
    }
};

}  // namespace qomax
