#include "hjale/logmass.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

namespace hjale {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void validate_levels(const std::vector<Level>& levels) {
  if (levels.size() < 2) throw std::invalid_argument("need at least two levels");
  if (!(levels.back() == Level(0))) {
    throw std::invalid_argument("last level must be exactly 0, got " + levels.back().str());
  }
  for (std::size_t j = 1; j < levels.size(); ++j) {
    if (levels[j].is_infinite()) throw std::invalid_argument("only the first level may be infinite");
    if (!(levels[j] < levels[j - 1])) {
      throw std::invalid_argument("levels must be strictly decreasing (y_" + std::to_string(j - 1) +
                                  " = " + levels[j - 1].str() + ", y_" + std::to_string(j) + " = " +
                                  levels[j].str() + ")");
    }
  }
}

std::vector<LabelPair> differences(const LabelChain& chain) {
  std::vector<LabelPair> out;
  out.reserve(chain.size() - 1);
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    out.push_back({chain[j].m - chain[j + 1].m, chain[j].n - chain[j + 1].n});
  }
  return out;
}

// c_j = 1/y_j for j = 0..k; c_{k+1} = 0 by convention.
std::vector<Fraction> reciprocals(const std::vector<Level>& levels) {
  std::vector<Fraction> c;
  c.reserve(levels.size());
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) c.push_back(levels[j].reciprocal());
  c.push_back(Fraction(0));
  return c;
}

LogCoefficients terms_from_chain(std::span<const Approximant> chain, std::span<const Fraction> u) {
  validate_label_chain(chain);
  const std::size_t k = chain.size() - 3;
  if (u.size() != k) {
    throw std::invalid_argument("expected " + std::to_string(k) + " u values, got " +
                                std::to_string(u.size()));
  }
  LogCoefficients out;
  for (std::size_t j = 1; j <= k; ++j) {
    if (u[j - 1].sign() <= 0) {
      throw std::invalid_argument("u_" + std::to_string(j) + " = " + u[j - 1].str() + " is not positive");
    }
    const Fraction coeff = chain_mu_coefficient(chain, j);
    out.mu += coeff * u[j - 1];
    out.per_term.push_back({coeff, u[j - 1]});
  }
  return out;
}

MassVerdict verdict_from(const Fraction& mu, bool crepant) {
  MassVerdict v;
  v.mu = mu;
  v.sign = mu.sign() < 0 ? MassSign::Negative : (mu.sign() > 0 ? MassSign::Positive : MassSign::Zero);
  v.crepant = crepant;
  return v;
}

}  // namespace

Level::Level(Fraction value) : value_(std::move(value)) {
  if (value_.sign() < 0) throw std::invalid_argument("level " + value_.str() + " is negative");
}

Level Level::infinity() {
  Level l;
  l.infinite_ = true;
  return l;
}

Level Level::parse(std::string_view text, bool* was_decimal) {
  const std::string_view t = trim(text);
  if (was_decimal) *was_decimal = false;
  const std::string lower = lowercase(t);
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity" || t == "∞") {
    return infinity();
  }
  if (lower.find_first_of(".e") != std::string::npos) {
    if (was_decimal) *was_decimal = true;
    return Level(Fraction::from_decimal(t));
  }
  return Level(Fraction::parse(t));
}

const Fraction& Level::value() const {
  if (infinite_) throw std::logic_error("infinite level has no rational value");
  return value_;
}

double Level::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

std::string Level::str() const { return infinite_ ? "inf" : value_.str(); }

Fraction Level::reciprocal() const {
  if (infinite_) return Fraction(0);
  if (value_.is_zero()) throw std::domain_error("reciprocal of level 0");
  return Fraction(1) / value_;
}

std::string to_string(MassSign sign) {
  switch (sign) {
    case MassSign::Negative: return "negative";
    case MassSign::Zero: return "zero";
    case MassSign::Positive: return "positive";
  }
  return "?";
}

void validate_label_chain(std::span<const Approximant> chain) {
  if (chain.size() < 3) throw std::invalid_argument("label chain needs at least three entries");
  const std::size_t last = chain.size() - 1;
  if (chain[0] != Approximant{0, -1} || chain[1] != Approximant{1, 0} || chain[last] != Approximant{0, 1}) {
    throw std::invalid_argument("label chain must start (0,-1), (1,0) and end (0,1)");
  }
  for (std::size_t j = 0; j + 2 <= last; ++j) {
    if (approximant_determinant(chain, j) != 1) {
      throw std::invalid_argument("labels " + std::to_string(j) + " and " + std::to_string(j + 1) +
                                  " are not unimodular");
    }
  }
  for (std::size_t j = 1; j < last; ++j) {
    if (chain[j].m <= 0) throw std::invalid_argument("label m_" + std::to_string(j) + " is not positive");
  }
}

LabelChain hj_label_chain(std::int64_t p, std::int64_t q) { return hj_expand(p, q).approximants; }

std::vector<Level> default_levels(std::size_t k) {
  std::vector<Level> out;
  out.reserve(k + 2);
  for (std::size_t j = 0; j <= k + 1; ++j) out.emplace_back(static_cast<std::int64_t>(k + 1 - j));
  return out;
}

MonopoleData monopole_from_chain(LabelChain chain, std::vector<Level> levels) {
  validate_label_chain(chain);
  if (levels.size() + 1 != chain.size()) {
    throw std::invalid_argument("expected " + std::to_string(chain.size() - 1) + " levels, got " +
                                std::to_string(levels.size()));
  }
  validate_levels(levels);
  MonopoleData data;
  data.pairs = differences(chain);
  data.levels = std::move(levels);
  data.chain = std::move(chain);
  return data;
}

MonopoleData monopole_from_fraction(std::int64_t p, std::int64_t q, std::vector<Level> levels) {
  return monopole_from_chain(hj_label_chain(p, q), std::move(levels));
}

MonopoleData flat_monopole() {
  return monopole_from_chain({{0, -1}, {1, 0}, {0, 1}}, {Level::infinity(), Level(0)});
}

LogCoefficients log_coeffs_from_levels(const MonopoleData& data) {
  if (!data.chain) throw std::invalid_argument("monopole data carries no label chain");
  const LabelChain& m = *data.chain;
  const std::size_t k = data.k();
  const Fraction q(m[k + 1].m);
  const Fraction p(m[k + 1].n);
  const auto c = reciprocals(data.levels);

  Fraction qa;
  Fraction qb;
  Fraction prev;  // c_{-1}
  for (std::size_t j = 0; j <= k + 1; ++j) {
    const Fraction dc = c[j] - prev;
    qa += dc * Fraction(m[j].m);
    qb += dc * (p * Fraction(m[j].m) - q * Fraction(m[j].n));
    prev = c[j];
  }
  LogCoefficients out;
  out.a = qa / q;
  out.b = qb / q;
  out.mu = *out.a + *out.b;
  for (std::size_t j = 1; j <= k; ++j) {
    out.per_term.push_back({chain_mu_coefficient(m, j), Fraction(m[j].m) * (c[j] - c[j - 1])});
  }
  return out;
}

LogCoefficients asymptotic_coeffs_from_pairs(const MonopoleData& data) {
  const std::size_t k = data.k();
  if (data.pairs.size() != data.levels.size()) throw std::invalid_argument("pair/level count mismatch");
  const Fraction q(data.pairs[k + 1].a);
  const Fraction p(data.pairs[k + 1].b + 1);
  if (q.sign() <= 0) throw std::invalid_argument("last pair does not encode a positive order");
  const auto c = reciprocals(data.levels);
  Fraction sa;
  Fraction sb;
  for (std::size_t j = 0; j <= k; ++j) {
    sa += c[j] * Fraction(data.pairs[j].a);
    sb += c[j] * Fraction(data.pairs[j].b);
  }
  LogCoefficients out;
  out.a = sa / q;
  out.b = *out.a * p - sb;
  out.mu = *out.a + *out.b;
  return out;
}

LogCoefficients mu_from_u(std::int64_t p, std::int64_t q, std::span<const Fraction> u) {
  const LabelChain chain = hj_label_chain(p, q);
  return terms_from_chain(chain, u);
}

LogCoefficients mu_from_chain(std::span<const Approximant> chain, std::span<const Fraction> u) {
  return terms_from_chain(chain, u);
}

Fraction chain_mu_coefficient(std::span<const Approximant> chain, std::size_t j) {
  if (chain.size() < 3) throw std::invalid_argument("label chain needs at least three entries");
  const std::size_t k = chain.size() - 3;
  if (j < 1 || j > k) {
    throw std::out_of_range("coefficient index " + std::to_string(j) + " outside 1.." + std::to_string(k));
  }
  const Fraction q(chain[k + 1].m);
  const Fraction p(chain[k + 1].n);
  const Fraction mj(chain[j].m);
  const Fraction nj(chain[j].n);
  return p / q - nj / mj + Fraction(1) / q - Fraction(1) / mj;
}

Fraction mu_coefficient(std::int64_t p, std::int64_t q, std::size_t j) {
  return chain_mu_coefficient(hj_label_chain(p, q), j);
}

LabelChain blowup_insert_chain(std::span<const Approximant> chain, std::size_t position) {
  validate_label_chain(chain);
  const std::size_t k = chain.size() - 3;
  // Position 0 would put (1,-1) after (0,-1) and break the leading pair.
  if (position == 0 || position > k) {
    throw std::out_of_range("insertion position " + std::to_string(position) + " outside 1.." +
                            std::to_string(k));
  }
  LabelChain out(chain.begin(), chain.end());
  const Approximant fresh{chain[position].m + chain[position + 1].m, chain[position].n + chain[position + 1].n};
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(position + 1), fresh);
  return out;
}

MonopoleData blowup_insert(const MonopoleData& data, std::size_t position, std::optional<Level> inserted) {
  if (!data.chain) throw std::invalid_argument("monopole data carries no label chain");
  LabelChain chain = blowup_insert_chain(*data.chain, position);
  const Level& upper = data.levels[position];
  const Level& lower = data.levels[position + 1];
  Level fresh = Level(0);
  if (inserted) {
    if (!(*inserted < upper && lower < *inserted)) {
      throw std::invalid_argument("inserted level " + inserted->str() + " not strictly between " +
                                  lower.str() + " and " + upper.str());
    }
    fresh = *inserted;
  } else {
    fresh = Level((upper.value() + lower.value()) / Fraction(2));
  }
  std::vector<Level> levels = data.levels;
  levels.insert(levels.begin() + static_cast<std::ptrdiff_t>(position + 1), fresh);
  return monopole_from_chain(std::move(chain), std::move(levels));
}

MassVerdict mass_verdict(std::int64_t p, std::int64_t q, std::span<const Fraction> u) {
  return verdict_from(mu_from_u(p, q, u).mu, p == q - 1);
}

MassVerdict mass_verdict(std::span<const Approximant> chain, std::span<const Fraction> u) {
  const Fraction mu = mu_from_chain(chain, u).mu;
  const std::size_t k = chain.size() - 3;
  const bool crepant = chain[k + 1].n == chain[k + 1].m - 1;
  return verdict_from(mu, crepant);
}

}  // namespace hjale
