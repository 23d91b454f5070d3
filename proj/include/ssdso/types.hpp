#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ssdso {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Dist = std::uint64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
/// Distance of an unreachable vertex. Never participates in arithmetic.
inline constexpr Dist kInf = std::numeric_limits<Dist>::max();

/// Saturating addition: anything plus kInf stays kInf.
constexpr Dist sat_add(Dist a, Dist b) noexcept {
    if (a == kInf || b == kInf) return kInf;
    return a + b;
}

enum class FailureMode : std::uint8_t { edge = 0, vertex = 1 };

/// Malformed or out-of-range user input (bad ids, bad files, bad parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal precondition violated by a caller or an inconsistent data set.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline std::string dist_to_string(Dist d) {
    return d == kInf ? std::string("inf") : std::to_string(d);
}

}  // namespace ssdso
