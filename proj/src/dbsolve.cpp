#include "costboost/dbsolve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "costboost/brent.hpp"

namespace costboost {

double eval_poly(const RoundStatics& st, const ClassErrors& e, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("eval_poly: x must be positive");
  if (x == 1.0)
    return st.a * e.eps_pos + st.b * e.eps_neg - st.b * (1.0 - e.eps_neg) -
           st.a * (1.0 - e.eps_pos);
  const double lx = std::log(x);
  const double cp = static_cast<double>(st.c_pos);
  const double cn = static_cast<double>(st.c_neg);
  return st.a * e.eps_pos * std::exp(2.0 * cp * lx) +
         st.b * e.eps_neg * std::exp((cp + cn) * lx) -
         st.b * (1.0 - e.eps_neg) * std::exp((cp - cn) * lx) -
         st.a * (1.0 - e.eps_pos);
}

bool contribution_condition(const RoundStatics& st, const ClassErrors& e) {
  return st.a * e.eps_pos + st.b * e.eps_neg < 0.5;
}

bool improvement_condition(const CandidateVector& cand, const RoundBest& best) {
  return cand.c1 * best.basis[0] + cand.c2 * best.basis[1] <
         best.s_value * (1.0 - kTieMargin);
}

double solve_round_root(const RoundStatics& st, const ClassErrors& e) {
  if (!contribution_condition(st, e))
    throw std::logic_error("solve_round_root: contribution condition does not hold");

  const double f1 = eval_poly(st, e, 1.0);  // < 0 under the precondition
  double lo = 1.0, flo = f1;
  double hi = 2.0;
  double fhi = eval_poly(st, e, hi);
  int doublings = 0;
  while (!(fhi > 0.0)) {
    if (++doublings > 64) {
      std::ostringstream msg;
      msg << "solve_round_root: no sign change after 64 doublings (a=" << st.a
          << ", eps_pos=" << e.eps_pos << ", eps_neg=" << e.eps_neg << ", C_P=" << st.c_pos
          << ", C_N=" << st.c_neg << ")";
      throw std::runtime_error(msg.str());
    }
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = eval_poly(st, e, hi);
  }
  return brent_root([&](double x) { return eval_poly(st, e, x); }, lo, hi, flo, fhi, 1e-12);
}

RoundBest make_round_best(const RoundStatics& st, double root, std::size_t stump_index) {
  const double lr = std::log(root);
  const double cp = static_cast<double>(st.c_pos);
  const double cn = static_cast<double>(st.c_neg);
  RoundBest best;
  best.root = root;
  best.stump_index = static_cast<std::ptrdiff_t>(stump_index);
  best.basis = {std::exp(2.0 * cp * lr) + 1.0,
                std::exp((cp + cn) * lr) + std::exp((cp - cn) * lr)};
  best.s_value = st.a + st.b * std::exp((cp - cn) * lr);
  return best;
}

std::optional<RoundChoice> conditional_search(const RoundStatics& st, const StumpPool& pool,
                                              const WeightState& w, SearchCounters& counters) {
  RoundBest best;  // sentinel
  std::optional<RoundChoice> winner;
  for (std::size_t f = 0; f < pool.size(); ++f) {
    ++counters.stumps_evaluated;
    const ClassErrors e = class_errors(pool, f, w);
    if (!contribution_condition(st, e)) continue;
    const CandidateVector cand{st.a * e.eps_pos, st.b * e.eps_neg};
    if (!improvement_condition(cand, best)) continue;
    const double root = solve_round_root(st, e);
    ++counters.roots_computed;
    best = make_round_best(st, root, f);
    winner = RoundChoice{f, std::log(root), root, e};
  }
  return winner;
}

std::optional<RoundChoice> exhaustive_search(const RoundStatics& st, const StumpPool& pool,
                                             const WeightState& w, SearchCounters& counters) {
  std::optional<RoundChoice> winner;
  for (std::size_t f = 0; f < pool.size(); ++f) {
    ++counters.stumps_evaluated;
    const ClassErrors e = class_errors(pool, f, w);
    if (!contribution_condition(st, e)) continue;
    const double root = solve_round_root(st, e);
    ++counters.roots_computed;
    if (!winner || root > winner->root * (1.0 + kTieMargin))
      winner = RoundChoice{f, std::log(root), root, e};
  }
  return winner;
}

}  // namespace costboost
