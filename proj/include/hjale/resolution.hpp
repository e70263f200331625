#pragma once

// Linear chains of rational curves over a parabolic fiber.
//
// Blowing up the point Q of weight p/q on a fiber F (F^2 = 0) iteratively
// yields the chain
//
//     -e_1 ... -e_l   -1   -e'_m ... -e'_1
//
// where [e] is the HJ expansion of q/p and [e'] that of q/(q-p). The two
// strings on either side of the (-1)-curve resolve C^2/Γ_{p,q} and
// C^2/Γ_{q-p,q}. Contracting (-1)-curves one at a time recovers [0].

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hjale/fraction.hpp"

namespace hjale {

struct CurveChain {
  std::vector<std::int64_t> selfints;

  std::size_t size() const { return selfints.size(); }
  friend bool operator==(const CurveChain&, const CurveChain&) = default;
};

/// Rendered as e.g. "-3 -1 -2 -2".
std::string to_string(const CurveChain& chain);

/// Requires 0 < alpha < 1; throws std::invalid_argument otherwise.
CurveChain fiber_chain(const Fraction& alpha);

/// Contracts the leftmost (-1)-curve, raising its neighbours by one.
/// Throws std::invalid_argument if there is no (-1)-curve or the chain is the
/// singleton [-1].
CurveChain blow_down_once(const CurveChain& chain);

/// Contracts (-1)-curves until none remain. Errors from blow_down_once
/// propagate when the chain collapses to [-1].
CurveChain blow_down_fully(const CurveChain& chain);

/// Number of point blow-ups over the fiber: length(fiber_chain(alpha)) - 1.
std::size_t blowup_count(const Fraction& alpha);

/// ([-e_1..-e_l], [-e'_1..-e'_m]): the resolution strings of Γ_{p,q} and
/// Γ_{q-p,q}, each read outward from the singular point.
std::pair<CurveChain, CurveChain> singular_strings(const Fraction& alpha);

}  // namespace hjale
