#include "hjale/resolution.hpp"

#include <algorithm>
#include <stdexcept>

#include "hjale/cfrac.hpp"

namespace hjale {

namespace {

std::pair<std::int64_t, std::int64_t> split_weight(const Fraction& alpha) {
  if (!(Fraction(0) < alpha && alpha < Fraction(1))) {
    throw std::invalid_argument("weight " + alpha.str() + " is not in (0,1)");
  }
  return {alpha.num_i64(), alpha.den_i64()};
}

CurveChain negated(const std::vector<std::int64_t>& digits) {
  CurveChain out;
  out.selfints.reserve(digits.size());
  for (auto e : digits) out.selfints.push_back(-e);
  return out;
}

}  // namespace

std::string to_string(const CurveChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.selfints.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(chain.selfints[i]);
  }
  return out;
}

std::pair<CurveChain, CurveChain> singular_strings(const Fraction& alpha) {
  const auto [p, q] = split_weight(alpha);
  return {negated(hj_expand(p, q).digits), negated(hj_expand(q - p, q).digits)};
}

CurveChain fiber_chain(const Fraction& alpha) {
  const auto [left, right] = singular_strings(alpha);
  CurveChain out = left;
  out.selfints.push_back(-1);
  out.selfints.insert(out.selfints.end(), right.selfints.rbegin(), right.selfints.rend());
  return out;
}

CurveChain blow_down_once(const CurveChain& chain) {
  auto& s = chain.selfints;
  const auto it = std::find(s.begin(), s.end(), -1);
  if (it == s.end()) throw std::invalid_argument("chain '" + to_string(chain) + "' has no (-1)-curve");
  if (s.size() == 1) throw std::invalid_argument("chain [-1] contracts to a point");
  const auto pos = static_cast<std::size_t>(it - s.begin());
  CurveChain out = chain;
  if (pos > 0) out.selfints[pos - 1] += 1;
  if (pos + 1 < s.size()) out.selfints[pos + 1] += 1;
  out.selfints.erase(out.selfints.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

CurveChain blow_down_fully(const CurveChain& chain) {
  if (chain.selfints.empty()) throw std::invalid_argument("empty curve chain");
  CurveChain current = chain;
  while (std::find(current.selfints.begin(), current.selfints.end(), -1) != current.selfints.end()) {
    current = blow_down_once(current);
  }
  return current;
}

std::size_t blowup_count(const Fraction& alpha) { return fiber_chain(alpha).size() - 1; }

}  // namespace hjale
