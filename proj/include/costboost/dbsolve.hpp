// Per-round mathematical core of the double-base trainer: the degree-2C_P
// polynomial whose single positive root yields the round's alpha, the
// Contribution and Improvement conditions, and the conditional search that
// prunes root computations to strictly improving candidates.
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "costboost/core.hpp"
#include "costboost/weak.hpp"

namespace costboost {

// Round-constant coefficients. a + b = 1 with
//   a = C_P*W_P*A_P / (C_P*W_P*A_P + C_N*W_N*A_N),
// the class weights being folded into the accumulators.
struct RoundStatics {
  double a = 0.5;
  double b = 0.5;
  long long c_pos = 1;
  long long c_neg = 1;
};

// (a*eps_pos, b*eps_neg): the coefficients of a candidate's variable function
// V(x) = c1*(x^{2C_P}+1) + c2*(x^{C_P+C_N}+x^{C_P-C_N}).
struct CandidateVector {
  double c1 = 0.0;
  double c2 = 0.0;
};

// Incumbent winner of the round. basis holds the two monomial sums of V at
// the incumbent root, s_value = S(root) = a + b*root^{C_P-C_N}, and the
// incumbent's own crossing satisfies cand(best) . basis == s_value.
// Default-constructed state is the search sentinel (root 1, basis (2,2),
// s 1), for which the Improvement Condition degenerates to the Contribution
// Condition.
struct RoundBest {
  double root = 1.0;
  std::ptrdiff_t stump_index = -1;
  double s_value = 1.0;
  std::array<double, 2> basis{2.0, 2.0};
};

// Left-hand side of the round's optimality equation at x:
//   a*eps_P*x^{2C_P} + b*eps_N*x^{C_P+C_N}
//     - b*(1-eps_N)*x^{C_P-C_N} - a*(1-eps_P).
// Monomials are computed as exp(k*ln x); the degree reaches 200 for cost
// [100,1] and direct powering would overflow. Exact at x = 1.
double eval_poly(const RoundStatics& st, const ClassErrors& e, double x);

// a*eps_P + b*eps_N < 1/2, strictly: the candidate's root exceeds 1 and its
// alpha is positive. Equality means alpha = 0 and fails.
bool contribution_condition(const RoundStatics& st, const ClassErrors& e);

// Relative margin under which two candidates count as tied. Weight sums over
// different example subsets routinely collide to within a few ulps; resolving
// those ties toward the lowest index must survive the noise of either
// comparison route (V values or solved roots), and alpha differences at this
// scale are below the root tolerance anyway.
inline constexpr double kTieMargin = 1e-12;

// cand . basis < s_value, strictly: the candidate's V at the incumbent root
// lies below S there, so its own crossing (and alpha) is larger. Candidates
// within kTieMargin of the incumbent fail, so the lowest index wins ties.
bool improvement_condition(const CandidateVector& cand, const RoundBest& best);

// Incumbent state for a solved root: basis = (root^{2C_P}+1,
// root^{C_P+C_N}+root^{C_P-C_N}) and s_value = S(root).
RoundBest make_round_best(const RoundStatics& st, double root, std::size_t stump_index);

// The unique root > 1 of eval_poly, by doubling bracket (1, 2, 4, ..., cap 64
// doublings) and Brent iteration to relative bracket width 1e-12.
// Requires contribution_condition(st, e); throws std::logic_error otherwise.
double solve_round_root(const RoundStatics& st, const ClassErrors& e);

struct SearchCounters {
  std::uint64_t stumps_evaluated = 0;
  std::uint64_t roots_computed = 0;
};

struct RoundChoice {
  std::size_t stump_index = 0;
  double alpha = 0.0;
  double root = 1.0;
  ClassErrors errors;
};

// Conditional search over the pool in index order: Contribution Condition,
// then Improvement Condition against the incumbent, and a root solve only
// when both pass. Returns the stump maximizing alpha (ties to lowest index),
// or nothing when no stump passes the Contribution Condition.
std::optional<RoundChoice> conditional_search(const RoundStatics& st, const StumpPool& pool,
                                              const WeightState& w, SearchCounters& counters);

// Straightforward variant: solves every stump passing the Contribution
// Condition and keeps the largest root. Same winner as conditional_search.
std::optional<RoundChoice> exhaustive_search(const RoundStatics& st, const StumpPool& pool,
                                             const WeightState& w, SearchCounters& counters);

}  // namespace costboost
