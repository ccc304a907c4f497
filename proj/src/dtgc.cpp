#include "blcap/dtgc.hpp"
#include <cstdlib>
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "blcap/errors.hpp"
#include "blcap/numerics.hpp"

namespace blcap {

using num::kPi;

namespace {

constexpr double kKernelReach = 8.0;  // kernel truncated at 8 sigma

struct Discretization {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yw;  // trapezoid weights
  std::vector<int> j0;     // first output index per row
  std::vector<int> width;
  std::vector<std::size_t> offset;
  std::vector<double> k;          // row-normalized conditional densities
  std::vector<double> row_klogk;  // sum_j w K log K per row
};

Discretization discretize(const DtgcProblem& p, int nx) {
  const double sigma = std::sqrt(p.noise_var);
  Discretization d;
  d.x.resize(nx);
  const double dx = (p.amp_high - p.amp_low) / (nx - 1);
  for (int i = 0; i < nx; ++i) d.x[i] = p.amp_low + i * dx;

  const double y_lo = p.amp_low - kKernelReach * sigma;
  const double y_hi = p.amp_high + kKernelReach * sigma;
  const int ny =
      static_cast<int>(std::ceil((y_hi - y_lo) / (sigma / 40.0))) + 1;
  const double dy = (y_hi - y_lo) / (ny - 1);
  d.y.resize(ny);
  d.yw.assign(ny, dy);
  d.yw.front() = d.yw.back() = 0.5 * dy;
  for (int j = 0; j < ny; ++j) d.y[j] = y_lo + j * dy;

  d.j0.resize(nx);
  d.width.resize(nx);
  d.offset.resize(nx);
  const double norm = 1.0 / (std::sqrt(2.0 * kPi) * sigma);
  std::size_t total = 0;
  for (int i = 0; i < nx; ++i) {
    int lo = static_cast<int>(
        std::floor((d.x[i] - kKernelReach * sigma - y_lo) / dy));
    int hi = static_cast<int>(
        std::ceil((d.x[i] + kKernelReach * sigma - y_lo) / dy));
    lo = std::clamp(lo, 0, ny - 1);
    hi = std::clamp(hi, 0, ny - 1);
    d.j0[i] = lo;
    d.width[i] = hi - lo + 1;
    d.offset[i] = total;
    total += static_cast<std::size_t>(d.width[i]);
  }
  d.k.resize(total);
  d.row_klogk.resize(nx);
  for (int i = 0; i < nx; ++i) {
    double* row = d.k.data() + d.offset[i];
    double z = 0.0;
    for (int c = 0; c < d.width[i]; ++c) {
      const int j = d.j0[i] + c;
      const double u = (d.y[j] - d.x[i]) / sigma;
      row[c] = norm * std::exp(-0.5 * u * u);
      z += d.yw[j] * row[c];
    }
    double klogk = 0.0;
    for (int c = 0; c < d.width[i]; ++c) {
      row[c] /= z;
      klogk += d.yw[d.j0[i] + c] * row[c] * std::log(row[c]);
    }
    d.row_klogk[i] = klogk;
  }
  return d;
}

struct BaState {
  std::vector<double> p;
  std::vector<double> v_full;  // information density on the full grid
  double info_nats = 0.0;
  double mean_square = 0.0;
  double upper = 0.0;    // max_i V_i over the full grid
  double lower = 0.0;    // log sum p e^V
  long iterations = 0;
};

// One Blahut-Arimoto sweep at fixed multiplier s: output distribution,
// information densities V_i = D_i - s x_i^2 on the WHOLE grid (the upper
// bound must not depend on which points currently carry mass), bounds,
// and the multiplicatively updated distribution.
class BaStepper {
 public:
  BaStepper(const Discretization& d, double s)
      : d_(d),
        s_(s),
        q_(d.y.size()),
        lnq_(d.y.size()),
        v_(d.x.size()) {}

  // Returns the bracket [lower, upper] of the current iterate and writes
  // the updated distribution into p (normalized, nonnegative).
  void step(std::vector<double>& p, double* lower, double* upper) {
    const int nx = static_cast<int>(d_.x.size());
    const int ny = static_cast<int>(d_.y.size());
    std::fill(q_.begin(), q_.end(), 0.0);
    for (int i = 0; i < nx; ++i) {
      const double pi = p[i];
      if (pi == 0.0) continue;
      const double* row = d_.k.data() + d_.offset[i];
      double* qq = q_.data() + d_.j0[i];
      for (int c = 0; c < d_.width[i]; ++c) qq[c] += pi * row[c];
    }
    for (int j = 0; j < ny; ++j)
      lnq_[j] = q_[j] > 0.0 ? std::log(q_[j]) : 0.0;
    double u = -1e300;
    for (int i = 0; i < nx; ++i) {
      const double* row = d_.k.data() + d_.offset[i];
      double cross = 0.0;
      for (int c = 0; c < d_.width[i]; ++c) {
        const int j = d_.j0[i] + c;
        cross += d_.yw[j] * row[c] * lnq_[j];
      }
      v_[i] = d_.row_klogk[i] - cross - s_ * d_.x[i] * d_.x[i];
      u = std::max(u, v_[i]);
    }
    double zsum = 0.0;
    for (int i = 0; i < nx; ++i)
      if (p[i] > 0.0) zsum += p[i] * std::exp(v_[i] - u);
    *lower = u + std::log(zsum);
    *upper = u;
    double total = 0.0;
    for (int i = 0; i < nx; ++i) {
      p[i] *= std::exp(v_[i] - u);
      total += p[i];
    }
    for (int i = 0; i < nx; ++i) {
      p[i] /= total;
      if (p[i] < 1e-280) p[i] = 0.0;
    }
  }

  // Statistics of a distribution against its own output law.
  void stats(const std::vector<double>& p, BaState* st) {
    std::vector<double> tmp = p;
    double lower, upper;
    step(tmp, &lower, &upper);
    st->v_full = v_;
    st->upper = upper;
    st->lower = lower;
    double info = 0.0, msq = 0.0;
    const int nx = static_cast<int>(d_.x.size());
    for (int i = 0; i < nx; ++i) {
      if (p[i] == 0.0) continue;
      info += p[i] * (v_[i] + s_ * d_.x[i] * d_.x[i]);
      msq += p[i] * d_.x[i] * d_.x[i];
    }
    st->info_nats = info;
    st->mean_square = msq;
  }

  const std::vector<double>& v() const { return v_; }

 private:
  const Discretization& d_;
  double s_;
  std::vector<double> q_, lnq_, v_;
};

// Blahut-Arimoto at fixed s with safeguarded SQUAREM extrapolation: every
// few sweeps a three-point geometric extrapolation of the iteration is
// tried and kept only when the certified lower bound improves. Dropped
// points are re-seeded if their information density climbs back above the
// running value, so the final bracket certifies the full grid.
BaState ba_fixed_s(const Discretization& d, double s, double tol_nats,
                   std::vector<double> p, long max_iter) {
  const bool debug = std::getenv("BLCAP_BA_DEBUG") != nullptr;
  const int nx = static_cast<int>(d.x.size());
  double psum = 0.0;
  for (double pi : p) psum += pi;
  for (double& pi : p) pi /= psum;

  BaStepper stepper(d, s);
  BaState st;
  long it = 0;
  int revivals = 0;
  double lower = 0.0, upper = 0.0;
  std::vector<double> p0(nx), p1(nx), pacc(nx);

  // Zero mass cannot regrow under the multiplicative update, so a point
  // dropped in error would pin the upper bound forever. Reseed such
  // points; the growth restarts from a small but positive level.
  auto revive_high_density = [&]() {
    bool revived = false;
    const std::vector<double>& v = stepper.v();
    for (int i = 0; i < nx; ++i)
      if (p[i] == 0.0 && v[i] > lower + 0.25 * tol_nats) {
        p[i] = 1e-8;
        revived = true;
      }
    if (revived) {
      double total = 0.0;
      for (double pi : p) total += pi;
      for (double& pi : p) pi /= total;
    }
    return revived;
  };

  while (true) {
    if (it >= max_iter)
      throw NotConvergedError("blahut-arimoto hit its iteration cap");

    if (it > 32) {
      // SQUAREM cycle: two sweeps, geometric extrapolation, one
      // stabilizing sweep. The extrapolation never zeroes a component
      // (a support point losing all mass is unrecoverable) and is kept
      // only when both certified bounds improve or hold.
      p0 = p;
      double l1, u1, l2, u2;
      stepper.step(p, &l1, &u1);
      p1 = p;
      stepper.step(p, &l2, &u2);
      it += 2;
      lower = l2;
      upper = u2;
      double rn = 0.0, vn = 0.0;
      for (int i = 0; i < nx; ++i) {
        const double r = p1[i] - p0[i];
        const double w = p[i] - p1[i] - r;
        rn += r * r;
        vn += w * w;
      }
      if (vn > 1e-300) {
        const double alpha =
            std::min(1e4, std::max(1.0, std::sqrt(rn / vn)));
        double total = 0.0;
        for (int i = 0; i < nx; ++i) {
          const double r = p1[i] - p0[i];
          const double w = p[i] - p1[i] - r;
          double cand = p0[i] + 2.0 * alpha * r + alpha * alpha * w;
          cand = std::max(cand, 0.1 * p[i]);
          pacc[i] = cand;
          total += cand;
        }
        for (int i = 0; i < nx; ++i) pacc[i] /= total;
        double la, ua;
        std::vector<double> ptry = pacc;
        stepper.step(ptry, &la, &ua);
        ++it;
        if (la >= lower && ua - la <= 2.0 * (upper - lower)) {
          p.swap(ptry);
          lower = la;
          upper = ua;
        }
      }
    } else {
      stepper.step(p, &lower, &upper);
      ++it;
    }

    if (debug && it % 512 < 3)
      std::fprintf(stderr, "ba s=%.5g it=%ld bracket=%.3e lower=%.9f\n", s,
                   it, upper - lower, lower);

    if (upper - lower < tol_nats || it % 512 < 3) {
      if (revive_high_density()) {
        if (++revivals > 200)
          throw NotConvergedError("support kept reappearing; grid too coarse");
        continue;
      }
      if (upper - lower < tol_nats) break;
    }
  }

  // Extrapolation can certify the bracket while off-support residue is
  // still in flight; let plain sweeps drain it below the report threshold.
  for (int polish = 0; polish < 4000 && it < max_iter; ++polish) {
    bool dust = false;
    for (int i = 0; i < nx; ++i)
      if (p[i] > 1e-13 && p[i] < 1e-9) dust = true;
    if (!dust) break;
    stepper.step(p, &lower, &upper);
    ++it;
  }

  stepper.stats(p, &st);
  st.p = std::move(p);
  st.iterations = it;
  return st;
}

DtgcSolution package(const Discretization& d, const BaState& st, double s) {
  DtgcSolution sol;
  sol.capacity_bits_per_use = std::max(0.0, st.info_nats) / std::log(2.0);
  sol.lagrange_power = s;
  sol.iterations = st.iterations;
  sol.mean_square = st.mean_square;
  sol.bracket_bits = (st.upper - st.lower) / std::log(2.0);
  sol.kkt_residual =
      (st.upper - (st.info_nats - s * st.mean_square)) / std::log(2.0);

  const int nx = static_cast<int>(d.x.size());
  int i = 0;
  while (i < nx) {
    if (st.p[i] < 1e-12) {
      ++i;
      continue;
    }
    double prob = 0.0, loc = 0.0;
    while (i < nx && st.p[i] >= 1e-12) {
      prob += st.p[i];
      loc += st.p[i] * d.x[i];
      ++i;
    }
    sol.mass_points.push_back({loc / prob, prob});
  }
  return sol;
}

}  // namespace

DtgcSolution dtgc_capacity(const DtgcProblem& problem, int grid_points,
                           double tol_bits, const DtgcOptions& opts) {
  if (!(problem.amp_low < problem.amp_high))
    throw ConfigError("amplitude window is empty");
  if (!(problem.noise_var > 0.0)) throw ConfigError("noise variance must be positive");
  if (problem.power_limit && !(*problem.power_limit > 0.0))
    throw ConfigError("power limit must be positive");
  if (grid_points < 201) throw ConfigError("need at least 201 grid points");
  if (!(tol_bits > 0.0) || tol_bits > 1e-7)
    throw ConfigError("tolerance must lie in (0, 1e-7]");

  const Discretization d = discretize(problem, grid_points);
  const double tol_nats = tol_bits * std::log(2.0);
  const double tol_loose = 50.0 * tol_nats;
  const int nx = grid_points;
  std::vector<double> uniform(nx, 1.0 / nx);
  long iterations = 0;

  auto solve = [&](double s, double tol, std::vector<double> start) {
    BaState st = ba_fixed_s(d, s, tol, std::move(start),
                            opts.max_iterations - iterations);
    iterations += st.iterations;
    return st;
  };
  auto revive = [&](const std::vector<double>& prev) {
    std::vector<double> p(nx);
    double total = 0.0;
    for (int i = 0; i < nx; ++i) total += (p[i] = std::max(prev[i], 1e-12));
    for (int i = 0; i < nx; ++i) p[i] /= total;
    return p;
  };

  DtgcSolution sol;
  if (!problem.power_limit) {
    BaState st = solve(0.0, tol_nats, uniform);
    st.iterations = iterations;
    sol = package(d, st, 0.0);
  } else {
    const double P = *problem.power_limit;
    BaState st = solve(0.0, tol_loose, uniform);
    if (st.mean_square <= P * (1.0 + opts.power_tolerance)) {
      st = solve(0.0, tol_nats, revive(st.p));
      st.iterations = iterations;
      sol = package(d, st, 0.0);
    } else {
      // Bracket the multiplier: E[X^2](s) decreases in s. The answer is
      // always taken from the feasible (E <= P) side; bisection stops when
      // the complementary-slackness defect s (P - E) no longer moves the
      // capacity at tolerance level.
      double s_lo = 0.0;
      double s_hi = 10.0;
      BaState hi_state = solve(s_hi, tol_loose, revive(st.p));
      while (hi_state.mean_square > P) {
        s_lo = s_hi;
        s_hi *= 2.0;
        if (s_hi > 1e18)
          throw NotConvergedError("power multiplier bracket failed");
        hi_state = solve(s_hi, tol_loose, revive(hi_state.p));
      }
      BaState best = hi_state;
      for (int step = 0; step < 100; ++step) {
        if (std::abs(best.mean_square - P) <= 1e-3 * P) break;
        if (s_hi - s_lo < 1e-12 * (1.0 + s_hi)) break;
        const double mid = 0.5 * (s_lo + s_hi);
        BaState ms = solve(mid, tol_loose, revive(best.p));
        if (ms.mean_square <= P) {
          s_hi = mid;
          best = std::move(ms);
        } else {
          s_lo = mid;
        }
      }
      BaState fin = solve(s_hi, tol_nats, revive(best.p));
      for (int step = 0; step < 60; ++step) {
        if (fin.mean_square > P) {  // tight solve drifted infeasible
          s_lo = s_hi;
          s_hi = std::min(2.0 * s_hi, s_hi + (s_hi - s_lo) + 1e-6);
          fin = solve(s_hi, tol_nats, revive(fin.p));
          continue;
        }
        if (s_hi * (P - fin.mean_square) <= 0.5 * tol_nats) break;
        if (s_hi - s_lo < 1e-12 * (1.0 + s_hi)) break;
        const double mid = 0.5 * (s_lo + s_hi);
        BaState ms = solve(mid, tol_nats, revive(fin.p));
        if (ms.mean_square <= P) {
          s_hi = mid;
          fin = std::move(ms);
        } else {
          s_lo = mid;
        }
      }
      fin.iterations = iterations;
      sol = package(d, fin, s_hi);
    }
  }

  if (opts.check_grid) {
    DtgcOptions sub = opts;
    sub.check_grid = false;
    const DtgcSolution finer =
        dtgc_capacity(problem, 2 * grid_points - 1, tol_bits, sub);
    if (std::abs(finer.capacity_bits_per_use - sol.capacity_bits_per_use) >
        10.0 * tol_bits)
      throw GridTooCoarseError("doubling the input grid moved the capacity");
  }
  return sol;
}

double blgc_upper_bound(double bandwidth_hz, double snr, double r,
                        int grid_points, double tol_bits,
                        const DtgcOptions& opts) {
  if (!(snr > 0.0)) throw ConfigError("snr must be positive");
  if (!(r > 0.0)) throw ConfigError("papr constraint must be positive");
  const double amp = std::sqrt(r * snr);
  int gp = grid_points;
  if (gp <= 0) {
    gp = std::max(201, static_cast<int>(std::ceil(6.0 * amp)) + 1);
    gp = std::min(gp, 24001);
    gp |= 1;  // keep the window symmetric about zero
  }
  DtgcProblem problem;
  problem.amp_low = -amp;
  problem.amp_high = amp;
  problem.power_limit = snr;
  problem.noise_var = 1.0;
  const DtgcSolution sol = dtgc_capacity(problem, gp, tol_bits, opts);
  return 2.0 * bandwidth_hz * sol.capacity_bits_per_use;
}

}  // namespace blcap
