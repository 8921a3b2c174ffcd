// Copyright 2026 The arenasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arenasim/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "arenasim/kernels.hpp"

namespace arenasim {
namespace {

// Packed nonzero unordered pairs of the comparison graph.
struct PairGraph {
  std::vector<std::int32_t> i;   // i < j
  std::vector<std::int32_t> j;
  std::vector<double> wins_ij;   // directed count i over j
  std::vector<double> wins_ji;
  std::vector<double> weight;    // wins_ij + wins_ji
  double total = 0.0;            // all directed comparisons
  std::vector<int> component;    // per model, -1 when isolated
  int num_components = 0;
};

PairGraph build_graph(int num_models, std::span<const std::int64_t> counts) {
  PairGraph g;
  const auto k = static_cast<std::size_t>(num_models);
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int a = 0; a < num_models; ++a) {
    for (int b = a + 1; b < num_models; ++b) {
      const auto w_ab = static_cast<double>(counts[a * k + b]);
      const auto w_ba = static_cast<double>(counts[b * k + a]);
      if (w_ab + w_ba <= 0.0) continue;
      g.i.push_back(a);
      g.j.push_back(b);
      g.wins_ij.push_back(w_ab);
      g.wins_ji.push_back(w_ba);
      g.weight.push_back(w_ab + w_ba);
      g.total += w_ab + w_ba;
      parent[find(a)] = find(b);
    }
  }
  g.component.assign(k, -1);
  std::vector<int> root_to_comp(k, -1);
  for (std::size_t p = 0; p < g.i.size(); ++p) {
    for (int m : {static_cast<int>(g.i[p]), static_cast<int>(g.j[p])}) {
      const int root = find(m);
      if (root_to_comp[root] < 0) {
        root_to_comp[root] = g.num_components++;
      }
      g.component[m] = root_to_comp[root];
    }
  }
  return g;
}

// Average BCE loss at xi over the pair graph. diffs/probs are scratch.
double bce_loss(const PairGraph& g, const std::vector<double>& xi,
                std::vector<double>& diffs, std::vector<double>& probs) {
  const std::size_t n = g.i.size();
  const auto& ops = kernels::active_ops();
  ops.gather_diff(xi.data(), g.i.data(), g.j.data(), diffs.data(), n);
  ops.logistic(diffs.data(), probs.data(), n);
  double loss = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    // Clamp away exact 0/1 so degenerate-but-connected graphs stay finite.
    const double s = std::clamp(probs[p], 1e-300, 1.0 - 1e-16);
    loss -= g.wins_ij[p] * std::log(s) + g.wins_ji[p] * std::log1p(-s);
  }
  return loss / g.total;
}

void subtract_component_means(const PairGraph& g, std::vector<double>& v) {
  std::vector<double> sum(g.num_components, 0.0);
  std::vector<int> cnt(g.num_components, 0);
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (g.component[m] >= 0) {
      sum[g.component[m]] += v[m];
      cnt[g.component[m]] += 1;
    }
  }
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (g.component[m] >= 0) {
      v[m] -= sum[g.component[m]] / cnt[g.component[m]];
    }
  }
}

}  // namespace

double win_rate(double x, double y) {
  return 1.0 / (1.0 + std::pow(10.0, (y - x) / 400.0));
}

RatingVector fit_bt_counts(int num_models, std::span<const std::int64_t> counts,
                           const FitOptions& opts) {
  const PairGraph g = build_graph(num_models, counts);
  if (g.total <= 0.0) {
    throw DataError("cannot fit ratings: no directed comparisons");
  }
  const auto k = static_cast<std::size_t>(num_models);
  const std::size_t n = g.i.size();

  std::vector<double> xi(k, 0.0);
  if (opts.warm_start != nullptr) {
    if (opts.warm_start->size() != k) {
      throw ConfigError("warm start size does not match model count");
    }
    xi = *opts.warm_start;
    for (std::size_t m = 0; m < k; ++m) {
      if (g.component[m] < 0) xi[m] = 0.0;
    }
    subtract_component_means(g, xi);
  }

  std::vector<double> diffs(n), probs(n), curv(n);
  Eigen::VectorXd grad(num_models);
  Eigen::MatrixXd hess(num_models, num_models);
  const auto& ops = kernels::active_ops();

  double loss = bce_loss(g, xi, diffs, probs);
  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    ops.gather_diff(xi.data(), g.i.data(), g.j.data(), diffs.data(), n);
    ops.logistic(diffs.data(), probs.data(), n);
    ops.logistic_deriv(diffs.data(), curv.data(), n);

    grad.setZero();
    hess.setZero();
    for (std::size_t p = 0; p < n; ++p) {
      const int a = g.i[p], b = g.j[p];
      const double s = probs[p];
      const double gp = -(g.wins_ij[p] * (1.0 - s) - g.wins_ji[p] * s) / g.total;
      grad[a] += gp;
      grad[b] -= gp;
      const double h = g.weight[p] * curv[p] / g.total;
      hess(a, a) += h;
      hess(b, b) += h;
      hess(a, b) -= h;
      hess(b, a) -= h;
    }
    double gmax = 0.0;
    for (int m = 0; m < num_models; ++m) {
      gmax = std::max(gmax, std::abs(grad[m]));
    }
    if (gmax <= opts.tolerance) {
      converged = true;
      break;
    }
    // The Hessian is singular along the per-component shift direction; a tiny
    // ridge keeps the factorization stable and the step is re-projected.
    for (int m = 0; m < num_models; ++m) {
      hess(m, m) += 1e-12;
    }
    Eigen::VectorXd delta = hess.ldlt().solve(-grad);
    std::vector<double> step(delta.data(), delta.data() + num_models);
    subtract_component_means(g, step);

    double scale = 1.0;
    bool improved = false;
    std::vector<double> trial(k);
    for (int half = 0; half < 60; ++half) {
      for (std::size_t m = 0; m < k; ++m) {
        trial[m] = xi[m] + scale * step[m];
      }
      const double trial_loss = bce_loss(g, trial, diffs, probs);
      if (trial_loss <= loss) {
        loss = trial_loss;
        xi = trial;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      break;  // at numerical floor; gradient test decides the converged flag
    }
  }
  subtract_component_means(g, xi);
  for (std::size_t m = 0; m < k; ++m) {
    if (g.component[m] < 0) xi[m] = 0.0;
  }

  RatingVector out;
  out.natural = xi;
  out.scores.resize(k);
  for (std::size_t m = 0; m < k; ++m) {
    out.scores[m] = kEloScale * xi[m] + kEloOffset;
  }
  out.component = g.component;
  out.anchor = "mean-zero natural units per connected component; "
               "score = (400/ln10)*xi + 1000";
  out.converged = converged;
  out.iterations = iter;
  return out;
}

RatingVector fit_bt(const VoteSet& set, const FitOptions& opts) {
  const int k = set.num_models();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      counts[static_cast<std::size_t>(a) * k + b] = set.counts(a, b);
    }
  }
  return fit_bt_counts(k, counts, opts);
}

OnlinePair online_update(const RatingVector& scores, ModelId a, ModelId b,
                         double gamma, double mu) {
  if (a == b) {
    throw ConfigError("online update requires two distinct models");
  }
  if (mu < 0.0) {
    throw ConfigError("online update step size must be >= 0");
  }
  const double ra = scores.scores[a];
  const double rb = scores.scores[b];
  OnlinePair out;
  out.gamma = gamma;
  out.mu = mu;
  out.r_a_on = ra + mu * (gamma - win_rate(ra, rb));
  out.r_b_on = rb + mu * ((1.0 - gamma) - win_rate(rb, ra));
  return out;
}

int rank_of(const RatingVector& scores, ModelId t) {
  if (t < 0 || t >= scores.num_models()) {
    throw DataError("rank_of: model index out of range");
  }
  if (!scores.rated(t)) {
    throw DataError("rank_of: model has no comparisons");
  }
  int rank = 1;
  for (int m = 0; m < scores.num_models(); ++m) {
    if (m != t && scores.rated(m) && scores.scores[m] > scores.scores[t]) {
      ++rank;
    }
  }
  return rank;
}

std::vector<RankedEntry> ranking_table(const RatingVector& scores) {
  std::vector<RankedEntry> table;
  for (int m = 0; m < scores.num_models(); ++m) {
    if (scores.rated(m)) {
      table.push_back(RankedEntry{m, scores.scores[m], 0});
    }
  }
  std::stable_sort(table.begin(), table.end(),
                   [](const RankedEntry& x, const RankedEntry& y) {
                     if (x.score != y.score) return x.score > y.score;
                     return x.model < y.model;
                   });
  for (RankedEntry& e : table) {
    e.rank = rank_of(scores, e.model);
  }
  return table;
}

void export_ratings(const RatingVector& scores, const VoteSet& set,
                    std::ostream& out) {
  char buf[64];
  for (const RankedEntry& e : ranking_table(scores)) {
    std::snprintf(buf, sizeof(buf), "%.6f", e.score);
    out << set.name(e.model) << ',' << buf << ',' << e.rank << '\n';
  }
}

}  // namespace arenasim
