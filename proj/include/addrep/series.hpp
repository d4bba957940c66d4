#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"
#include "addrep/numeric.hpp"
#include "addrep/report.hpp"

namespace addrep {

/// Finite prefix of the characteristic sequence of a set A ⊆ ℕ.
/// bits[n] = 1 iff n is a member, for all n <= horizon.
struct CharacteristicSeries {
  std::uint64_t horizon = 0;
  std::vector<std::uint8_t> bits;  // size horizon + 1

  bool contains(std::uint64_t n) const { return n <= horizon && bits[n] != 0; }

  CharacteristicSeries truncated(std::uint64_t h) const {
    if (h > horizon) throw PreconditionError("cannot extend a characteristic series");
    CharacteristicSeries r;
    r.horizon = h;
    r.bits.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(h) + 1);
    return r;
  }

  CharacteristicSeries complement() const {
    CharacteristicSeries r;
    r.horizon = horizon;
    r.bits.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) r.bits[i] = bits[i] ? 0 : 1;
    return r;
  }
};

/// Description of a subset of ℕ with decidable membership up to any bound.
struct SetSpec {
  enum class Kind { ExplicitList, Complement, Rule, Automaton };
  Kind kind = Kind::ExplicitList;
  std::vector<std::uint64_t> members;   // ExplicitList
  std::string rule;                     // Rule: pow2minus1 | squares | odd
  std::uint64_t rule_offset = 2;        // pow2minus1 exponent offset
  std::shared_ptr<SetSpec> inner;       // Complement
  std::shared_ptr<Dfa> automaton;       // Automaton-defined membership

  static SetSpec explicit_list(std::vector<std::uint64_t> m) {
    for (std::size_t i = 1; i < m.size(); ++i)
      if (m[i] <= m[i - 1])
        throw PreconditionError("explicit member lists must be strictly increasing");
    SetSpec s;
    s.kind = Kind::ExplicitList;
    s.members = std::move(m);
    return s;
  }
  static SetSpec complement_of(SetSpec in) {
    SetSpec s;
    s.kind = Kind::Complement;
    s.inner = std::make_shared<SetSpec>(std::move(in));
    return s;
  }
  static SetSpec named_rule(std::string name, std::uint64_t offset = 2) {
    SetSpec s;
    s.kind = Kind::Rule;
    s.rule = std::move(name);
    s.rule_offset = offset;
    return s;
  }
  static SetSpec from_automaton(Dfa d) {
    if (d.alphabet.arity != 1)
      throw PreconditionError("membership automata must read a single track");
    SetSpec s;
    s.kind = Kind::Automaton;
    s.automaton = std::make_shared<Dfa>(std::move(d));
    return s;
  }
};

/// Evaluates the spec's membership for every n <= horizon.
inline CharacteristicSeries characteristic_series(const SetSpec& spec, std::uint64_t horizon) {
  CharacteristicSeries r;
  r.horizon = horizon;
  r.bits.assign(horizon + 1, 0);
  switch (spec.kind) {
    case SetSpec::Kind::ExplicitList:
      for (std::uint64_t m : spec.members)
        if (m <= horizon) r.bits[m] = 1;
      break;
    case SetSpec::Kind::Complement: {
      auto inner = characteristic_series(*spec.inner, horizon);
      r = inner.complement();
      break;
    }
    case SetSpec::Kind::Rule: {
      // Generator rules enumerate members in strictly increasing order.
      if (spec.rule == "pow2minus1") {
        if (spec.rule_offset >= 63)
          throw UnsupportedSpecError("pow2minus1 offset too large to enumerate");
        for (std::uint64_t e = spec.rule_offset;; ++e) {
          if (e >= 64) break;
          std::uint64_t v = (std::uint64_t(1) << e) - 1;
          if (v > horizon) break;
          r.bits[v] = 1;
        }
      } else if (spec.rule == "squares") {
        for (std::uint64_t i = 0; i * i <= horizon; ++i) r.bits[i * i] = 1;
      } else if (spec.rule == "odd") {
        for (std::uint64_t n = 1; n <= horizon; n += 2) r.bits[n] = 1;
      } else {
        throw UnsupportedSpecError("unknown generator rule: '" + spec.rule + "'");
      }
      break;
    }
    case SetSpec::Kind::Automaton:
      for (std::uint64_t n = 0; n <= horizon; ++n)
        r.bits[n] = spec.automaton->accepts_value(n) ? 1 : 0;
      break;
  }
  return r;
}

/// Exact table of representation counts r(k, A, n) for n <= horizon.
struct CountTable {
  std::uint32_t arity = 1;  // k
  std::uint64_t horizon = 0;
  std::vector<Integer> counts;  // size horizon + 1
};

namespace detail {

// out[n] = sum over set bits m of c[n - m], truncated at the shared horizon.
inline void convolve_bits_u64(const std::vector<std::uint64_t>& c,
                              const std::vector<std::uint8_t>& bits,
                              std::vector<std::uint64_t>& out) {
  const std::size_t n = c.size();
  out.assign(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    if (!bits[m]) continue;
    const std::uint64_t* src = c.data();
    std::uint64_t* dst = out.data() + m;
    for (std::size_t i = 0; i + m < n; ++i) dst[i] += src[i];
  }
}

inline void convolve_bits_mpz(const std::vector<Integer>& c, const std::vector<std::uint8_t>& bits,
                              std::vector<Integer>& out) {
  const std::size_t n = c.size();
  out.assign(n, Integer(0));
  for (std::size_t m = 0; m < n; ++m) {
    if (!bits[m]) continue;
    for (std::size_t i = 0; i + m < n; ++i) out[i + m] += c[i];
  }
}

// Full dense product of two coefficient arrays, truncated.
inline std::vector<Integer> convolve_full_mpz(const std::vector<Integer>& a,
                                              const std::vector<Integer>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<Integer> out(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace detail

/// Coefficients of A(X)^k up to the series horizon, i.e. the counts of ordered
/// k-tuples over A with the given sum. Computed by k-1 truncated convolutions.
/// Counts are exact; a word-sized fast path is used only when the bound
/// r(k, ℕ, horizon) = C(horizon+k-1, k-1) provably fits.
inline CountTable rep_count_table(std::uint32_t k, const CharacteristicSeries& a) {
  if (k < 1) throw PreconditionError("rep_count_table requires k >= 1");
  CountTable t;
  t.arity = k;
  t.horizon = a.horizon;
  const std::size_t n = a.bits.size();

  Integer bound = binomial(a.horizon + k - 1, k - 1);
  if (bound.fits_ulong_p()) {
    std::vector<std::uint64_t> cur(n), nxt;
    for (std::size_t i = 0; i < n; ++i) cur[i] = a.bits[i];
    for (std::uint32_t step = 1; step < k; ++step) {
      detail::convolve_bits_u64(cur, a.bits, nxt);
      cur.swap(nxt);
    }
    t.counts.reserve(n);
    for (std::uint64_t v : cur) t.counts.emplace_back(static_cast<unsigned long>(v));
  } else {
    std::vector<Integer> cur(n), nxt;
    for (std::size_t i = 0; i < n; ++i) cur[i] = static_cast<unsigned long>(a.bits[i]);
    for (std::uint32_t step = 1; step < k; ++step) {
      detail::convolve_bits_mpz(cur, a.bits, nxt);
      cur.swap(nxt);
    }
    t.counts = std::move(cur);
  }
  return t;
}

/// One further convolution with a characteristic series; the result is valid
/// on the common prefix of the two horizons.
inline CountTable convolve_with(const CountTable& t, const CharacteristicSeries& a) {
  CountTable r;
  r.arity = t.arity + 1;
  r.horizon = std::min(t.horizon, a.horizon);
  std::vector<Integer> c(t.counts.begin(),
                         t.counts.begin() + static_cast<std::ptrdiff_t>(r.horizon) + 1);
  std::vector<std::uint8_t> bits(a.bits.begin(),
                                 a.bits.begin() + static_cast<std::ptrdiff_t>(r.horizon) + 1);
  detail::convolve_bits_mpz(c, bits, r.counts);
  return r;
}

/// d(n) = counts[n] - counts[n-1], with counts[-1] = 0.
inline std::vector<Integer> difference_table(const CountTable& t) {
  std::vector<Integer> d(t.counts.size());
  for (std::size_t i = 0; i < t.counts.size(); ++i)
    d[i] = i == 0 ? t.counts[0] : t.counts[i] - t.counts[i - 1];
  return d;
}

/// g(n) = number of ordered pairs over the set summing to n (coefficients of
/// F(X)^2); h(n) = ordered triples (F(X)^3).
inline std::pair<std::vector<Integer>, std::vector<Integer>> gh_tables(
    const CharacteristicSeries& f) {
  const std::size_t n = f.bits.size();
  std::vector<Integer> f1(n);
  for (std::size_t i = 0; i < n; ++i) f1[i] = static_cast<unsigned long>(f.bits[i]);
  std::vector<Integer> g, h;
  detail::convolve_bits_mpz(f1, f.bits, g);
  detail::convolve_bits_mpz(g, f.bits, h);
  return {std::move(g), std::move(h)};
}

/// Coefficient-wise check of the binomial expansion identity
///   (1-X) A(X)^k = 1/(1-X)^{k-1}
///                + sum_{1<=i<=k-2} (-1)^i C(k,i) F(X)^i / (1-X)^{k-i-1}
///                + (-1)^{k-1} k F(X)^{k-1} + (-1)^k (1-X) F(X)^k
/// for A = ℕ \ F. The left side comes from the representation-count table of
/// the complement, the right side from binomial series and powers of F; the
/// two sides are computed independently.
inline VerificationReport check_main_identity(std::uint32_t k, const CharacteristicSeries& f,
                                              std::uint64_t horizon) {
  VerificationReport rep;
  rep.command = "check-main-identity";
  rep.inputs["k"] = k;
  rep.inputs["horizon"] = horizon;

  auto& pre = rep.add_step("preconditions");
  if (k < 3) {
    pre.status = "error";
    pre.detail["message"] = "k must be >= 3";
    return rep;
  }
  if (f.horizon < horizon) {
    pre.status = "error";
    pre.detail["message"] = "characteristic series shorter than requested horizon";
    return rep;
  }
  if (f.bits[0] != 0) {
    pre.status = "error";
    pre.detail["message"] = "0 must not be a member of the forbidden set";
    return rep;
  }
  pre.status = "pass";

  auto& cmp = rep.add_step("coefficient-comparison");
  StepTimer timer(cmp);
  const std::size_t n = static_cast<std::size_t>(horizon) + 1;
  CharacteristicSeries ftr = f.truncated(horizon);

  // Left side: first difference of the k-fold convolution of the complement.
  CountTable counts = rep_count_table(k, ftr.complement());
  std::vector<Integer> left = difference_table(counts);

  // Right side, term by term.
  std::vector<Integer> right(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) right[i] = binomial(i + k - 2, k - 2);

  std::vector<Integer> fpow(n, Integer(0));  // F(X)^i, starting at i = 1
  for (std::size_t i = 0; i < n; ++i) fpow[i] = static_cast<unsigned long>(ftr.bits[i]);
  for (std::uint32_t i = 1; i <= k; ++i) {
    if (i > 1) {
      std::vector<Integer> nxt;
      detail::convolve_bits_mpz(fpow, ftr.bits, nxt);
      fpow.swap(nxt);
    }
    const int sign = (i % 2 == 0) ? 1 : -1;
    if (i <= k - 2) {
      const std::uint32_t j = k - i - 1;  // 1/(1-X)^j factor, j >= 1
      std::vector<Integer> binser(n);
      for (std::size_t m = 0; m < n; ++m) binser[m] = binomial(m + j - 1, j - 1);
      std::vector<Integer> term = detail::convolve_full_mpz(binser, fpow);
      Integer coeff = binomial(k, i) * sign;
      for (std::size_t m = 0; m < n; ++m) right[m] += coeff * term[m];
    } else if (i == k - 1) {
      Integer coeff = Integer(k) * sign;
      for (std::size_t m = 0; m < n; ++m) right[m] += coeff * fpow[m];
    } else {  // i == k: (1 - X) F(X)^k
      for (std::size_t m = 0; m < n; ++m) {
        Integer term = fpow[m];
        if (m > 0) term -= fpow[m - 1];
        right[m] += sign * term;
      }
    }
  }

  std::optional<std::uint64_t> first_mismatch;
  for (std::size_t m = 0; m < n; ++m) {
    if (left[m] != right[m]) {
      first_mismatch = m;
      break;
    }
  }
  cmp.detail["checked_upto"] = horizon;
  if (first_mismatch) {
    cmp.status = "fail";
    cmp.detail["first_mismatch"] = *first_mismatch;
    cmp.detail["left"] = left[*first_mismatch].get_str();
    cmp.detail["right"] = right[*first_mismatch].get_str();
  } else {
    cmp.status = "pass";
  }
  return rep;
}

/// Partial sums of a characteristic sequence and a least-squares exponent fit
/// of log f'(n) against log n over the top half of the horizon. The fit is an
/// empirical growth indicator, not a decision procedure.
struct GrowthEstimate {
  std::vector<std::uint64_t> partial_sums;
  std::optional<double> fitted_exponent;  // undefined for all-zero series
  std::uint64_t sample_lo = 0;
  std::uint64_t sample_hi = 0;
};

inline GrowthEstimate growth_estimate(const CharacteristicSeries& f) {
  GrowthEstimate g;
  g.partial_sums.resize(f.bits.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < f.bits.size(); ++i) {
    acc += f.bits[i];
    g.partial_sums[i] = acc;
  }
  g.sample_lo = std::max<std::uint64_t>(1, f.horizon / 2);
  g.sample_hi = f.horizon;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::uint64_t count = 0;
  for (std::uint64_t n = g.sample_lo; n <= g.sample_hi; ++n) {
    if (g.partial_sums[n] == 0) continue;
    double x = std::log(static_cast<double>(n));
    double y = std::log(static_cast<double>(g.partial_sums[n]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    double denom = count * sxx - sx * sx;
    if (denom > 0) g.fitted_exponent = (count * sxy - sx * sy) / denom;
  }
  return g;
}

/// Smallest index m such that d[n] > 0 (strict) or d[n] >= 0 for all
/// m <= n <= horizon; no value when the violation reaches the horizon itself.
inline std::optional<std::uint64_t> check_eventually_increasing(const std::vector<Integer>& d,
                                                                bool strict) {
  std::optional<std::uint64_t> last_violation;
  for (std::size_t i = d.size(); i-- > 0;) {
    bool bad = strict ? (d[i] <= 0) : (d[i] < 0);
    if (bad) {
      last_violation = i;
      break;
    }
  }
  if (!last_violation) return 0;
  if (*last_violation + 1 >= d.size()) return std::nullopt;
  return *last_violation + 1;
}

/// CSV export, header "n,count".
inline void write_count_csv(const CountTable& t, std::ostream& os) {
  os << "n,count\n";
  for (std::size_t i = 0; i < t.counts.size(); ++i) os << i << "," << t.counts[i].get_str() << "\n";
}

}  // namespace addrep
