#include "fpgt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpgt {

namespace {

constexpr double kInvPhi = 0.61803398874989485;  // (sqrt(5) - 1) / 2

void validate(const OptimizerOptions& opt) {
  if (opt.grid_points < 16)
    throw std::invalid_argument("optimizer needs grid_points >= 16");
  if (!(opt.refine_tolerance_p > 0.0) || !(opt.near_optimal_band > 0.0))
    throw std::invalid_argument("optimizer tolerances must be positive");
}

struct Probe {
  double p;
  double value;
};

// Golden-section ascent on (lo, hi); only interior points are evaluated, so
// the domain endpoints 0 and 1 may serve as bracket edges.
template <typename F>
Probe golden_section_max(F&& f, double lo, double hi, double xtol,
                         long long& evals) {
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  evals += 2;
  Probe best = f1 >= f2 ? Probe{x1, f1} : Probe{x2, f2};
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      if (f2 > best.value) best = {x2, f2};
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      if (f1 > best.value) best = {x1, f1};
    }
    ++evals;
    if (x1 >= x2) break;  // interval exhausted at floating-point resolution
  }
  return best;
}

std::vector<double> build_grid(int c, const OptimizerOptions& opt) {
  std::vector<double> grid;
  grid.reserve(opt.grid_points + 64);
  for (int i = 1; i <= opt.grid_points; ++i)
    grid.push_back(static_cast<double>(i) / (opt.grid_points + 1));
  if (opt.small_p_augmentation) {
    for (int k = 1; k <= 32; ++k) {
      const double q = k * std::numbers::ln2 / (4.0 * c);
      if (q > 0.0 && q < 1.0) {
        grid.push_back(q);
        grid.push_back(1.0 - q);
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

CapacityResult maximize_payoff(const CollusionChannel& ch, Decoder d,
                               const OptimizerOptions& opt) {
  validate(opt);
  const std::vector<double> grid = build_grid(ch.c, opt);
  const std::size_t n = grid.size();

  long long evals = 0;
  auto f = [&](double p) { return payoff(ch, BiasPoint(p), d); };

  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = f(grid[i]);
    ++evals;
  }

  CapacityResult res;
  res.tolerance_used = opt.refine_tolerance_p;

  // Samples at the few-ulp level are accumulated pmf rounding, not signal
  // (a constant theta = 1/2 channel evaluates to ~1e-16, not exactly 0);
  // the smallest genuine capacity in scope is orders of magnitude above.
  constexpr double kZeroFloor = 1e-14;
  const double max_sample = *std::max_element(vals.begin(), vals.end());
  if (max_sample <= kZeroFloor) {
    res.degenerate = true;
    res.capacity = 0.0;
    res.p_star = 0.5;
    res.local_maxima = {{0.5, 0.0}};
    res.evaluations = evals;
    return res;
  }

  std::vector<Probe> peaks;
  auto refine = [&](double lo, double hi, double pmid, double vmid) {
    Probe best = golden_section_max(f, lo, hi, opt.refine_tolerance_p, evals);
    if (vmid > best.value) best = {pmid, vmid};
    peaks.push_back(best);
  };
  // A sample strictly above its left neighbor and at least its right one
  // brackets a maximum (the leftmost sample of an exactly-tied plateau wins).
  for (std::size_t i = 0; i < n; ++i) {
    const bool up_left = (i == 0) || vals[i] > vals[i - 1];
    const bool up_right = (i + 1 == n) || vals[i] >= vals[i + 1];
    if (up_left && up_right)
      refine(i == 0 ? 0.0 : grid[i - 1], i + 1 == n ? 1.0 : grid[i + 1],
             grid[i], vals[i]);
  }
  if (peaks.empty()) {
    const std::size_t i = static_cast<std::size_t>(
        std::max_element(vals.begin(), vals.end()) - vals.begin());
    refine(i == 0 ? 0.0 : grid[i - 1], i + 1 == n ? 1.0 : grid[i + 1], grid[i],
           vals[i]);
  }

  double capacity = peaks.front().value;
  for (const Probe& pk : peaks) capacity = std::max(capacity, pk.value);

  std::vector<LocalMaximum> ties;
  for (const Probe& pk : peaks)
    if (pk.value >= capacity - opt.near_optimal_band)
      ties.push_back({pk.p, pk.value});
  std::sort(ties.begin(), ties.end(),
            [](const LocalMaximum& a, const LocalMaximum& b) { return a.p < b.p; });
  // Adjacent brackets may settle on one peak; keep the better duplicate.
  std::vector<LocalMaximum> dedup;
  for (const LocalMaximum& m : ties) {
    if (!dedup.empty() && m.p - dedup.back().p <= 10.0 * opt.refine_tolerance_p) {
      if (m.bits > dedup.back().bits) dedup.back() = m;
    } else {
      dedup.push_back(m);
    }
  }

  res.capacity = capacity;
  res.p_star = dedup.front().p;
  res.local_maxima = std::move(dedup);
  res.evaluations = evals;
  return res;
}

std::vector<double> solve_a_half(const CollusionChannel& ch) {
  if (!satisfies_marking(ch))
    throw MarkingRequired("solve_a_half needs theta[0]=0 and theta[c]=1");

  auto f = [&](double p) { return marginals(ch, BiasPoint(p)).a - 0.5; };

  OptimizerOptions scan_opt;
  scan_opt.grid_points = 4096;
  const std::vector<double> grid = build_grid(ch.c, scan_opt);

  constexpr double kXtol = 1e-12;
  auto bisect = [&](double lo, bool lo_neg, double hi) {
    while (hi - lo > kXtol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if ((fm < 0.0) == lo_neg)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<double> roots;
  // Marking pins the excluded endpoints: a(0) = 0, a(1) = 1.
  double prev_p = 0.0;
  double prev_f = -0.5;
  bool prev_is_root = false;
  auto step = [&](double p, double fv) {
    if (fv == 0.0) {
      roots.push_back(p);
      prev_p = p;
      prev_is_root = true;
      return;
    }
    if (!prev_is_root && (fv < 0.0) != (prev_f < 0.0))
      roots.push_back(bisect(prev_p, prev_f < 0.0, p));
    prev_p = p;
    prev_f = fv;
    prev_is_root = false;
  };
  for (double p : grid) step(p, f(p));
  step(1.0, 0.5);  // virtual endpoint
  return roots;
}

double universal_capacity(const CollusionChannel& ch, Decoder d,
                          int node_count) {
  if (node_count < 8)
    throw std::invalid_argument("universal_capacity needs node_count >= 8");
  double sum = 0.0;
  for (int k = 1; k <= node_count; ++k) {
    const double angle =
        std::numbers::pi * (2.0 * k - 1.0) / (2.0 * node_count);
    const double p = 0.5 * (1.0 - std::cos(angle));
    sum += payoff(ch, BiasPoint(p), d);
  }
  return sum / node_count;
}

}  // namespace fpgt
