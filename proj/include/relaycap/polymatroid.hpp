#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "relaycap/core_model.hpp"

// Set functions over a ground set of at most kMaxGroundSize elements, encoded
// as bitmasks, plus the polymatroid machinery the bounds are built on: axiom
// checking, the greedy vertex, and exhaustive minimisation of
// phi(J) + psi(complement of J) over all subsets.

namespace relaycap {

/// Memoising wrapper around a pure subset evaluator. Evaluation is
/// deterministic: repeated calls for the same mask return bit-identical
/// values. Copies share the memo. Safe for concurrent callers.
class SubsetFn {
 public:
  SubsetFn(int ground_size, std::function<double(std::uint32_t)> evaluator);

  int ground_size() const noexcept;
  std::uint32_t full_mask() const noexcept;

  /// Memoised evaluation. Throws DomainError if mask has bits outside the ground set.
  double operator()(std::uint32_t subset) const;

  /// Evaluates without touching the memo; used by full enumerations that
  /// visit each subset exactly once.
  double eval_uncached(std::uint32_t subset) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

enum class AxiomKind { normalization, monotonicity, submodularity };

struct AxiomViolation {
  AxiomKind kind = AxiomKind::normalization;
  std::uint32_t set_a = 0;
  std::uint32_t set_b = 0;
  double lhs = 0.0;  // the side the violated inequality requires to be >= rhs
  double rhs = 0.0;
};

struct AxiomReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  bool certified = false;  // true only for the exhaustive check
  std::optional<AxiomViolation> first_violation;

  bool all_pass() const { return normalized && monotone && submodular; }
};

/// Largest ground set the exhaustive axiom check accepts.
inline constexpr int kAxiomCheckLimit = 16;

/// Exhaustive axiom check: normalization f({}) = 0, monotonicity via single
/// additions, submodularity via the local exchange condition
/// f(J+a) - f(J) >= f(J+a+b) - f(J+b), each within tol. O(N^2 2^N).
/// Throws ResourceError for ground sets larger than kAxiomCheckLimit.
AxiomReport check_polymatroid_axioms(const SubsetFn& f, double tol = 1e-12);

/// Randomised spot check of the same conditions. Can only report violations,
/// never certify; the returned report has certified = false.
AxiomReport check_polymatroid_axioms_sampled(const SubsetFn& f, int num_samples,
                                             std::uint64_t seed, double tol = 1e-12);

/// min over J of phi(J) + psi(complement of J), by exhaustive enumeration.
/// Ties resolve to the lowest bitmask. Throws ShapeError if ground sets
/// differ, ResourceError if the ground set exceeds exhaustive_limit.
BoundResult edmonds_min(const SubsetFn& phi, const SubsetFn& psi,
                        int exhaustive_limit = kDefaultExhaustiveLimit);

/// Gaussian MAC rate region: f(J) = C(sum of snrs over J). Throws ShapeError
/// for an empty vector, DomainError for negative entries.
SubsetFn mac_region_fn(std::vector<double> snrs);

/// Chain function f(J) = levels[max element of J], f({}) = 0, for
/// nondecreasing nonnegative levels. The rank structure of a superposition
/// codebook where message part k is decodable by the first k receivers.
SubsetFn chain_fn(std::vector<double> levels);

/// Greedy polymatroid vertex for a visiting order: x[order[i]] =
/// f(first i+1 visited) - f(first i visited). For submodular monotone f the
/// result is a base of the polymatroid. Throws DomainError unless order is a
/// permutation of the ground set.
std::vector<double> greedy_vertex(const SubsetFn& f, std::span<const int> order);

}  // namespace relaycap
