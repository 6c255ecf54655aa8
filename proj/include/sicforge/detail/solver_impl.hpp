// Copyright 2026 The sicforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SICFORGE_DETAIL_SOLVER_IMPL_HPP
#define SICFORGE_DETAIL_SOLVER_IMPL_HPP

#include <algorithm>
#include <thread>
#include <vector>

#include "sicforge/sic.hpp"

namespace sicforge {

namespace detail {

struct RestartOutcome {
  RestartSummary summary;
  ComplexVector x;
};

inline RestartOutcome run_restart(int d, const SolverConfig& cfg, int index) {
  const double target = 2.0 * d / (d + 1.0);
  Rng rng = derive_rng(cfg.seed, static_cast<std::uint64_t>(index));
  RestartOutcome out;
  out.summary.index = index;
  DescentResult res;
  if (cfg.unconstrained) {
    const int n = d * d;
    ComplexVector x(static_cast<Eigen::Index>(d) * n);
    for (int j = 0; j < n; ++j) x.segment(static_cast<Eigen::Index>(j) * d, d) = random_unit_vector(d, rng);
    if (index == 0 && cfg.initial) {
      const auto orbit = wh_orbit(Fiducial(*cfg.initial).vector());
      for (int j = 0; j < n; ++j) {
        // Top eigenvector of each projector recovers the state up to phase.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(orbit[static_cast<std::size_t>(j)].matrix());
        x.segment(static_cast<Eigen::Index>(j) * d, d) = es.eigenvectors().col(d - 1);
      }
    }
    res = descend(std::move(x), d, [d](const ComplexVector& v) { return free_objective(v, d); },
                  cfg.max_iters, cfg.grad_tol);
    out.summary.frame_potential = res.value;
    out.summary.gap = res.value - target;
  } else {
    ComplexVector x = (index == 0 && cfg.initial) ? Fiducial(*cfg.initial).vector() : random_unit_vector(d, rng);
    const auto omega = roots_of_unity(d);
    res = descend(std::move(x), d, [&omega](const ComplexVector& v) { return wh_objective(v, omega); },
                  cfg.max_iters, cfg.grad_tol);
    // The polish shares the iteration budget with the descent.
    int polish_iters = 0;
    res.x = polish_wh(std::move(res.x), omega, std::min(100, cfg.max_iters - res.iterations), &polish_iters);
    res.iterations += polish_iters;
    out.summary.frame_potential = wh_frame_potential(res.x);
    out.summary.gap = wh_frame_potential_gap(res.x);
  }
  out.summary.gradient_norm = res.gradient_norm;
  out.summary.iterations = res.iterations;
  out.x = std::move(res.x);
  return out;
}

// Restarts run in waves of fixed size so early stopping never depends on the
// number of worker threads.
inline constexpr int kRestartWave = 4;

}  // namespace detail

/// Searches for a SIC fiducial by minimizing Phi_2 of its WH orbit (or of d^2
/// free states when cfg.unconstrained). Never throws on non-convergence: the
/// best restart is returned with success = false.
inline SolveResult minimize_frame_potential(int d, const SolverConfig& cfg = {}) {
  if (d < 2) throw DimensionError("minimize_frame_potential: d >= 2 required");
  if (cfg.restarts < 1) throw PreconditionError("minimize_frame_potential: restarts >= 1 required");
  if (cfg.initial && cfg.initial->size() != d) {
    throw DimensionError("minimize_frame_potential: initial vector has wrong dimension");
  }
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;

  std::vector<detail::RestartOutcome> outcomes;
  for (int wave = 0; wave < cfg.restarts; wave += detail::kRestartWave) {
    const int count = std::min(detail::kRestartWave, cfg.restarts - wave);
    std::vector<detail::RestartOutcome> batch(static_cast<std::size_t>(count));
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    if (workers <= 1) {
      for (int i = 0; i < count; ++i) batch[static_cast<std::size_t>(i)] = detail::run_restart(d, cfg, wave + i);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers))
            batch[static_cast<std::size_t>(i)] = detail::run_restart(d, cfg, wave + i);
        });
      }
      for (auto& t : pool) t.join();
    }
    bool any = false;
    for (auto& o : batch) {
      any = any || o.summary.gap < cfg.accept_tol;
      outcomes.push_back(std::move(o));
    }
    if (any && cfg.stop_on_success) break;
  }

  // Best by Phi_2, compared through the cancellation-free gap. Outcomes are in
  // restart order, so strict < keeps the lowest index on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].summary.gap < outcomes[best].summary.gap) best = i;

  const auto& win = outcomes[best];
  Provenance prov{Provenance::Kind::Solver, cfg.seed, static_cast<int>(outcomes.size()), win.summary.iterations,
                  cfg.unconstrained};
  std::vector<ComplexVector> states;
  if (cfg.unconstrained) {
    for (int j = 0; j < d * d; ++j) states.push_back(win.x.segment(static_cast<Eigen::Index>(j) * d, d));
  } else {
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) states.push_back(apply_displacement(p, q, win.x));
  }
  SolveResult result{Fiducial(states.front(), prov), std::move(states), 0.0, 0.0, false, 0, {}};
  result.frame_potential = win.summary.frame_potential;
  result.gap = win.summary.gap;
  result.success = win.summary.gap < cfg.accept_tol;
  result.best_restart = win.summary.index;
  for (const auto& o : outcomes) result.restarts.push_back(o.summary);
  return result;
}

}  // namespace sicforge

#endif  // SICFORGE_DETAIL_SOLVER_IMPL_HPP
