#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "addrep/automata.hpp"
#include "addrep/errors.hpp"
#include "addrep/matrix.hpp"
#include "addrep/numeric.hpp"

namespace addrep {

/// Linear representation (v, gamma, w) of a b-regular sequence with exact
/// rational entries: x(n) = v · gamma(z1) ··· gamma(zt) · w for z the msd-first
/// digits of n (empty product for n = 0). Every representation this module
/// emits satisfies v · gamma(0) = v, so evaluation is unchanged by leading
/// zeros.
struct LinearRepresentation {
  std::uint32_t base = 2;
  std::uint32_t rank = 0;
  std::vector<Rational> v;             // 1 x rank
  std::vector<RationalMatrix> gamma;   // base matrices, rank x rank
  std::vector<Rational> w;             // rank x 1

  void validate() const {
    if (base < 2) throw PreconditionError("representation base must be >= 2");
    if (v.size() != rank || w.size() != rank)
      throw PreconditionError("vector sizes must equal the rank");
    if (gamma.size() != base) throw PreconditionError("one matrix per digit required");
    for (const auto& g : gamma)
      if (g.rows != rank || g.cols != rank)
        throw PreconditionError("digit matrices must be rank x rank");
  }

  bool leading_zero_invariant() const { return rank == 0 || vec_mat(v, gamma[0]) == v; }

  bool operator==(const LinearRepresentation& o) const = default;
};

inline LinearRepresentation zero_linrep(std::uint32_t base) {
  LinearRepresentation lr;
  lr.base = base;
  lr.rank = 0;
  lr.gamma.assign(base, RationalMatrix(0, 0));
  return lr;
}

/// Path-counting representation of an NFA: v indicates initial states, the
/// digit matrices carry transition multiplicities, w indicates accepting
/// states. Evaluation equals the accepting-path count on the padded digits of
/// n; the rank is the NFA state count.
inline LinearRepresentation counting_linrep(const Nfa& n) {
  if (n.alphabet.arity != 1)
    throw PreconditionError("counting representations require an arity-1 alphabet");
  LinearRepresentation lr;
  lr.base = n.alphabet.base;
  lr.rank = n.num_states;
  lr.v.assign(lr.rank, Rational(0));
  lr.w.assign(lr.rank, Rational(0));
  for (std::uint32_t q : n.initial) lr.v[q] = 1;
  for (std::uint32_t q = 0; q < n.num_states; ++q)
    if (n.accepting[q]) lr.w[q] = 1;
  lr.gamma.assign(lr.base, RationalMatrix(lr.rank, lr.rank));
  for (std::uint32_t q = 0; q < n.num_states; ++q)
    for (std::uint32_t d = 0; d < lr.base; ++d)
      for (auto& [t, m] : n.edges[static_cast<std::size_t>(q) * lr.base + d])
        lr.gamma[d].at(q, t) += static_cast<unsigned long>(m);
  return lr;
}

inline Rational eval_linrep_digits(const LinearRepresentation& lr,
                                   std::span<const std::uint32_t> digits) {
  if (lr.rank == 0) return Rational(0);
  std::vector<Rational> u = lr.v;
  for (std::uint32_t d : digits) {
    if (d >= lr.base) throw PreconditionError("digit out of range for base");
    u = vec_mat(u, lr.gamma[d]);
  }
  return dot(u, lr.w);
}

/// x(n) over the canonical msd-first digits of n. Exact.
inline Rational eval_linrep(const LinearRepresentation& lr, std::uint64_t n) {
  auto digits = canonical_digits(n, lr.base);
  return eval_linrep_digits(lr, digits);
}

/// x(0..upto) by depth-first traversal of the canonical digit tree, sharing
/// the prefix products.
inline std::vector<Rational> eval_linrep_range(const LinearRepresentation& lr,
                                               std::uint64_t upto) {
  std::vector<Rational> out(upto + 1, Rational(0));
  if (lr.rank == 0) return out;
  out[0] = dot(lr.v, lr.w);
  struct Node {
    std::uint64_t value;
    std::vector<Rational> u;
  };
  std::vector<Node> stack;
  for (std::uint32_t d0 = 1; d0 < lr.base; ++d0) {
    if (d0 > upto) break;
    stack.push_back({d0, vec_mat(lr.v, lr.gamma[d0])});
    while (!stack.empty()) {
      Node n = std::move(stack.back());
      stack.pop_back();
      out[n.value] = dot(n.u, lr.w);
      if (n.value > upto / lr.base) continue;
      for (std::uint32_t d = 0; d < lr.base; ++d) {
        std::uint64_t v = n.value * lr.base + d;
        if (v <= upto) stack.push_back({v, vec_mat(n.u, lr.gamma[d])});
      }
    }
  }
  return out;
}

/// Block-matrix combination representing ca * a + cb * b.
/// The rank is rank(a) + rank(b).
inline LinearRepresentation combine(const LinearRepresentation& a, const LinearRepresentation& b,
                                    const Rational& ca, const Rational& cb) {
  if (a.base != b.base) throw PreconditionError("cannot combine representations over different bases");
  LinearRepresentation r;
  r.base = a.base;
  r.rank = a.rank + b.rank;
  r.v.resize(r.rank);
  r.w.resize(r.rank);
  for (std::uint32_t i = 0; i < a.rank; ++i) {
    r.v[i] = ca * a.v[i];
    r.w[i] = a.w[i];
  }
  for (std::uint32_t i = 0; i < b.rank; ++i) {
    r.v[a.rank + i] = cb * b.v[i];
    r.w[a.rank + i] = b.w[i];
  }
  r.gamma.assign(r.base, RationalMatrix(r.rank, r.rank));
  for (std::uint32_t d = 0; d < r.base; ++d) {
    for (std::uint32_t i = 0; i < a.rank; ++i)
      for (std::uint32_t j = 0; j < a.rank; ++j) r.gamma[d].at(i, j) = a.gamma[d].at(i, j);
    for (std::uint32_t i = 0; i < b.rank; ++i)
      for (std::uint32_t j = 0; j < b.rank; ++j)
        r.gamma[d].at(a.rank + i, a.rank + j) = b.gamma[d].at(i, j);
  }
  return r;
}

namespace detail {

// Forward (row-space) reduction: restricts to the span of { v * gamma(z) },
// discovered breadth-first with digits in ascending order.
inline LinearRepresentation left_reduce(const LinearRepresentation& lr) {
  if (lr.rank == 0 || is_zero(lr.v)) return zero_linrep(lr.base);
  SpanBasis basis(lr.rank);
  basis.insert(lr.v);
  std::queue<std::uint32_t> work;
  work.push(0);
  while (!work.empty()) {
    std::uint32_t i = work.front();
    work.pop();
    for (std::uint32_t d = 0; d < lr.base; ++d) {
      std::vector<Rational> u = vec_mat(basis.basis_vector(i), lr.gamma[d]);
      if (basis.insert(u)) work.push(basis.size() - 1);
    }
  }
  const std::uint32_t k = basis.size();
  LinearRepresentation r;
  r.base = lr.base;
  r.rank = k;
  r.v.assign(k, Rational(0));
  r.v[0] = 1;  // v is the first basis vector
  r.w.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) r.w[i] = dot(basis.basis_vector(i), lr.w);
  r.gamma.assign(lr.base, RationalMatrix(k, k));
  for (std::uint32_t d = 0; d < lr.base; ++d)
    for (std::uint32_t i = 0; i < k; ++i) {
      auto coords = basis.coordinates(vec_mat(basis.basis_vector(i), lr.gamma[d]));
      if (!coords) throw ContractError("row-space closure is not closed (internal error)");
      for (std::uint32_t j = 0; j < k; ++j) r.gamma[d].at(i, j) = (*coords)[j];
    }
  return r;
}

// Backward (column-space) reduction, the mirror pass on { gamma(z) * w }.
inline LinearRepresentation right_reduce(const LinearRepresentation& lr) {
  if (lr.rank == 0 || is_zero(lr.w)) return zero_linrep(lr.base);
  SpanBasis basis(lr.rank);
  basis.insert(lr.w);
  std::queue<std::uint32_t> work;
  work.push(0);
  while (!work.empty()) {
    std::uint32_t i = work.front();
    work.pop();
    for (std::uint32_t d = 0; d < lr.base; ++d) {
      std::vector<Rational> u = mat_vec(lr.gamma[d], basis.basis_vector(i));
      if (basis.insert(u)) work.push(basis.size() - 1);
    }
  }
  const std::uint32_t k = basis.size();
  LinearRepresentation r;
  r.base = lr.base;
  r.rank = k;
  r.w.assign(k, Rational(0));
  r.w[0] = 1;  // w is the first basis vector
  r.v.resize(k);
  for (std::uint32_t j = 0; j < k; ++j) r.v[j] = dot(lr.v, basis.basis_vector(j));
  r.gamma.assign(lr.base, RationalMatrix(k, k));
  for (std::uint32_t d = 0; d < lr.base; ++d)
    for (std::uint32_t j = 0; j < k; ++j) {
      auto coords = basis.coordinates(mat_vec(lr.gamma[d], basis.basis_vector(j)));
      if (!coords) throw ContractError("column-space closure is not closed (internal error)");
      for (std::uint32_t i = 0; i < k; ++i) r.gamma[d].at(i, j) = (*coords)[i];
    }
  return r;
}

}  // namespace detail

/// Rank minimization: a forward spanning-set reduction over { v·gamma(z) }
/// followed by the dual backward pass. Evaluation is preserved exactly and the
/// resulting rank is minimal for the represented sequence. Entries of the
/// result are unique only up to change of basis; the discovery order makes the
/// output deterministic across runs.
inline LinearRepresentation minimize_linrep(const LinearRepresentation& lr) {
  lr.validate();
  return detail::right_reduce(detail::left_reduce(lr));
}

}  // namespace addrep
