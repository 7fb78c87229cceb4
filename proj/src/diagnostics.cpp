#include "tginfer/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tginfer {

namespace {

double interpolated_quantile(std::vector<double> sorted, double p) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

ScalarSummary summarize_scalar(const std::vector<std::vector<double>>& per_chain) {
  std::vector<double> pooled;
  for (const auto& c : per_chain) pooled.insert(pooled.end(), c.begin(), c.end());
  ScalarSummary s;
  s.mean = mean_of(pooled);
  std::sort(pooled.begin(), pooled.end());
  s.q025 = interpolated_quantile(pooled, 0.025);
  s.median = interpolated_quantile(pooled, 0.5);
  s.q975 = interpolated_quantile(pooled, 0.975);
  s.rhat = split_rhat(per_chain);
  return s;
}

StateProbs marginal_of(const std::vector<const Chain*>& chains, int dyad) {
  StateProbs freq;
  std::int64_t n = 0;
  for (const Chain* chain : chains)
    for (const ChainState& state : *chain) {
      switch (state.states[dyad]) {
        case DyadState::first_wins: freq.first_wins += 1; break;
        case DyadState::second_wins: freq.second_wins += 1; break;
        case DyadState::tied: freq.tied += 1; break;
      }
      ++n;
    }
  freq.first_wins /= static_cast<double>(n);
  freq.second_wins /= static_cast<double>(n);
  freq.tied /= static_cast<double>(n);
  return freq;
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
  if (chains.empty()) return std::numeric_limits<double>::quiet_NaN();
  // Equal half length: truncate every chain to the shortest, then split in
  // half (dropping the middle draw of odd-length chains).
  size_t len = std::numeric_limits<size_t>::max();
  for (const auto& chain : chains) len = std::min(len, chain.size());
  const size_t half_n = len / 2;
  if (half_n < 2) return std::numeric_limits<double>::quiet_NaN();

  std::vector<std::pair<double, double>> halves;  // (mean, variance)
  bool constant = true;
  const double first = chains.front().front();
  for (const auto& chain : chains) {
    for (size_t i = 0; i < len; ++i)
      if (chain[i] != first) constant = false;
    for (int half = 0; half < 2; ++half) {
      const size_t begin = half == 0 ? 0 : len - half_n;
      double m = 0;
      for (size_t i = 0; i < half_n; ++i) m += chain[begin + i];
      m /= static_cast<double>(half_n);
      double v = 0;
      for (size_t i = 0; i < half_n; ++i) v += (chain[begin + i] - m) * (chain[begin + i] - m);
      v /= static_cast<double>(half_n - 1);
      halves.push_back({m, v});
    }
  }
  if (constant) return 1.0;

  const double n = static_cast<double>(half_n);
  const double m = static_cast<double>(halves.size());
  double grand = 0;
  for (const auto& [hm, hv] : halves) grand += hm;
  grand /= m;
  double between = 0, within = 0;
  for (const auto& [hm, hv] : halves) {
    between += (hm - grand) * (hm - grand);
    within += hv;
  }
  between *= n / (m - 1.0);
  within /= m;
  if (within <= 0) return std::numeric_limits<double>::infinity();
  const double var_plus = (n - 1.0) / n * within + between / n;
  return std::sqrt(var_plus / within);
}

PosteriorSummary summarize(const std::vector<Chain>& chains) {
  std::vector<const Chain*> nonempty;
  for (const Chain& c : chains)
    if (!c.empty()) nonempty.push_back(&c);
  if (nonempty.empty()) throw std::invalid_argument("summarize: no retained states");

  const int n_dyads = static_cast<int>(nonempty.front()->front().states.size());
  const int m = static_cast<int>(nonempty.front()->front().rates.size());
  for (const Chain* c : nonempty)
    for (const ChainState& s : *c)
      if (static_cast<int>(s.states.size()) != n_dyads || static_cast<int>(s.rates.size()) != m)
        throw std::invalid_argument("summarize: retained states disagree on dimensions");

  PosteriorSummary out;
  out.n_retained = 0;
  for (const Chain* c : nonempty) out.n_retained += static_cast<std::int64_t>(c->size());

  out.dyad_marginals.resize(n_dyads);
  out.map_graph.resize(n_dyads);
  for (int d = 0; d < n_dyads; ++d) {
    const StateProbs freq = marginal_of(nonempty, d);
    out.dyad_marginals[d] = freq;
    // Fixed tie-break order: first_wins, then second_wins, then tied.
    DyadState best = DyadState::first_wins;
    if (freq.second_wins > freq.first_wins) best = DyadState::second_wins;
    if (freq.tied > freq.at(best)) best = DyadState::tied;
    out.map_graph[d] = best;
  }

  out.informants.resize(m);
  for (int k = 0; k < m; ++k) {
    std::vector<std::vector<double>> rev, ftie, fdec;
    for (const Chain* chain : nonempty) {
      std::vector<double> r, f, w;
      r.reserve(chain->size());
      f.reserve(chain->size());
      w.reserve(chain->size());
      for (const ChainState& state : *chain) {
        r.push_back(state.rates[k].reversal);
        f.push_back(state.rates[k].false_tie);
        w.push_back(state.rates[k].false_decisive);
      }
      rev.push_back(std::move(r));
      ftie.push_back(std::move(f));
      fdec.push_back(std::move(w));
    }
    out.informants[k].reversal = summarize_scalar(rev);
    out.informants[k].false_tie = summarize_scalar(ftie);
    out.informants[k].false_decisive = summarize_scalar(fdec);
  }
  return out;
}

std::vector<double> dyad_agreement(const std::vector<Chain>& chains) {
  std::vector<const Chain*> nonempty;
  for (const Chain& c : chains)
    if (!c.empty()) nonempty.push_back(&c);
  if (nonempty.size() < 2) throw std::invalid_argument("dyad_agreement: need at least two nonempty chains");

  const int n_dyads = static_cast<int>(nonempty.front()->front().states.size());
  std::vector<double> scores(n_dyads);
  for (int d = 0; d < n_dyads; ++d) {
    const StateProbs pooled = marginal_of(nonempty, d);
    double worst = 0;
    for (const Chain* chain : nonempty) {
      const StateProbs own = marginal_of({chain}, d);
      const double tv = 0.5 * (std::abs(own.first_wins - pooled.first_wins) +
                               std::abs(own.second_wins - pooled.second_wins) + std::abs(own.tied - pooled.tied));
      worst = std::max(worst, tv);
    }
    scores[d] = 1.0 - worst;
  }
  return scores;
}

}  // namespace tginfer
