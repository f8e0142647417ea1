#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "relay/types.hpp"

namespace relay {

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

/// Shortest round-trip-safe decimal form ("%.17g"); used wherever a value
/// written to a file is read back.
std::string fmt_exact(double v);

/// Fixed human-facing form ("%.12g"); deterministic for identical inputs.
std::string fmt_g(double v);

/// Canonical fingerprint of a parameter set, stored in policy files and
/// echoed in CSV provenance comments.
std::string params_fingerprint(const SystemParams& params);

}  // namespace relay
