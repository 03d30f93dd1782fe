#pragma once

#include <stdexcept>
#include <string>

namespace qpulse {

// field amplitude mass beyond the truncation boundary exceeded tolerance
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// requested dimension cannot hold the recursion support
struct DimensionTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ancilla parameters at a degenerate point (tan/cot divergence, zero-width target, ...)
struct DegenerateAncilla : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qpulse
