// Scratch probe used while bringing the numerics up; not part of the build
// deliverable.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "blcap/blgc.hpp"
#include "blcap/bloic.hpp"
#include "blcap/dtgc.hpp"
#include "blcap/metrics.hpp"
#include "blcap/numerics.hpp"
#include "blcap/optimize.hpp"
#include "blcap/pulses.hpp"

using namespace blcap;

static double now_s() {
  using clk = std::chrono::steady_clock;
  static auto t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

int main(int argc, char** argv) {
  const int stage = argc > 1 ? std::atoi(argv[1]) : 0;
  std::printf("[%7.2fs] start stage=%d\n", now_s(), stage);

  if (stage == 0 || stage == 1) {
    Pulse s2(PulseFamily::S2, Normalization::Energy);
    std::printf("S2 energy scale=%.15g (expect 1)\n", s2.scale());
    PulseMetrics m = compute_metrics(s2);
    std::printf("S2: S=%.12g (sqrt3=%.12g) G=%.12g (3e-2=%.12g) argmax=%.6g\n",
                m.S, std::sqrt(3.0), m.G, 3.0 * std::exp(-2.0), m.s_argmax_t);
    std::printf("S2 pp_eta=%.8g expect %.8g\n", pp_blgc_eta(m),
                2.0 / (num::kPi * std::pow(num::kE, 3.0)));

    Pulse sc(PulseFamily::SC, Normalization::Energy);
    std::printf("SC energy scale=%.15g (expect 0.5)\n", sc.scale());
    PulseMetrics msc = compute_metrics(sc);
    std::printf("SC: S=%.12g (4sqrt2/pi=%.12g) G=%.12g (0.5) argmax=%.6g\n",
                msc.S, 4.0 * std::sqrt(2.0) / num::kPi, msc.G, msc.s_argmax_t);
    std::printf("SC pp_eta=%.8g expect %.8g\n", pp_blgc_eta(msc),
                num::kPi / (32.0 * num::kE));

    Pulse rc1(PulseFamily::RC, 1.0, Normalization::Energy);
    GResult g_rc = compute_G(rc1);
    std::printf("RC(1): G=%.12g (1/6=%.12g) err=%.3g\n", g_rc.value,
                1.0 / 6.0, g_rc.error);

    Pulse sinc(PulseFamily::SINC, Normalization::Energy);
    PulseMetrics msin = compute_metrics(sinc);
    std::printf("SINC: diverged=%d G=%.12g\n", msin.diverged, msin.G);
  }

  if (stage == 0 || stage == 2) {
    // Fourier consistency: numeric transform of time form vs closed freq.
    for (PulseFamily fam :
         {PulseFamily::S2, PulseFamily::SC, PulseFamily::RC, PulseFamily::PL,
          PulseFamily::BTN}) {
      Pulse p = family_is_parametric(fam)
                    ? Pulse(fam, 0.37, Normalization::Energy)
                    : Pulse(fam, Normalization::Energy);
      double worst = 0.0;
      for (double f : {0.05, 0.17, 0.29, 0.41, 0.47}) {
        auto rule = num::gauss_legendre(8);
        double val = 0.0;
        const double T = 30000.0;
        val = num::integrate_composite(
            [&](double t) {
              return 2.0 * p.time(t) * std::cos(2.0 * num::kPi * f * t);
            },
            0.0, T, static_cast<int>(T), rule);
        worst = std::max(worst, std::abs(val - p.freq(f)));
      }
      std::printf("fourier check %-4s worst=%.3g\n", family_name(fam), worst);
    }
  }

  if (stage == 0 || stage == 3) {
    // BTN beta sweep for the peak-power constant.
    double tsw = now_s();
    MetricsCache cache;
    double best = -1.0, bestb = 0.0;
    for (double b : beta_grid(0.01)) {
      const PulseMetrics& m =
          cache.get(PulseFamily::BTN, b, Normalization::Energy);
      const double eta = pp_blgc_eta(m);
      if (eta > best) {
        best = eta;
        bestb = b;
      }
    }
    std::printf("BTN pp sweep: best eta=%.6g at beta=%.2f (expect ~0.0447) "
                "[%.1fs]\n",
                best, bestb, now_s() - tsw);
  }

  if (stage == 0 || stage == 4) {
    // Optical bounds: S2 limit and ICIT peak.
    MetricsCache cache;
    const PulseMetrics& ms2 =
        cache.get(PulseFamily::S2, std::nullopt, Normalization::Area);
    std::printf("S2 area: S=%.12g G=%.12g\n", ms2.S, ms2.G);
    BloicBound b = eta_bloic(1e6, ms2);
    std::printf("S2 bloic r=1e6: eta=%.8g expect %.8g mu=%.6g\n", b.eta,
                1.0 / (2.0 * num::kPi * num::kE), b.mu ? *b.mu : -1.0);

    double tsw = now_s();
    double best = -1.0, bestb = 0.0, bestr = 0.0;
    for (double beta : beta_grid(0.05)) {
      const PulseMetrics& m =
          cache.get(PulseFamily::ICIT, beta, Normalization::Area);
      for (double r = 2.5; r < 7.0; r += 0.1) {
        const double eta = eta_bloic(r, m).eta;
        if (eta > best) {
          best = eta;
          bestb = beta;
          bestr = r;
        }
      }
    }
    std::printf(
        "ICIT coarse peak: eta=%.6g at beta=%.2f r=%.2f (expect ~0.06606 near "
        "r=4.1) [%.1fs]\n",
        best, bestb, bestr, now_s() - tsw);
    const PulseMetrics& mb =
        cache.get(PulseFamily::BTN, 0.30, Normalization::Area);
    std::printf("BTN area b=0.3: S=%.10g G=%.10g eta(3)=%.6g eta(1e6)=%.6g\n",
                mb.S, mb.G, eta_bloic(3.0, mb).eta, eta_bloic(1e6, mb).eta);
  }

  if (stage == 0 || stage == 5) {
    // Large-r Gaussian limit and envelope.
    MetricsCache cache;
    const PulseMetrics& m =
        cache.get(PulseFamily::BTN, 0.05, Normalization::Energy);
    BlgcBound b = eta_blgc(PaprConstraint{1e8}, m);
    std::printf("BTN b=0.05: G=%.10g eta(1e8)=%.10g rel gap=%.3g\n", m.G,
                b.eta, std::abs(b.eta - m.G) / m.G);
    std::vector<double> rg{1e8};
    auto env = envelope(Channel::Blgc,
                        {PulseFamily::S2, PulseFamily::SC, PulseFamily::BTN},
                        rg, 0.01, cache);
    std::printf("BLGC envelope at 1e8: %.6g (want > 0.9), family=%s beta=%.2f\n",
                env[0].eta_opt, family_name(env[0].family),
                env[0].beta ? *env[0].beta : -1.0);
  }

  if (stage == 0 || stage == 6) {
    // DTGC: two-point regime and unconstrained limit.
    double tsw = now_s();
    DtgcProblem prob{-1.0, 1.0, std::nullopt, 1.0};
    DtgcSolution sol = dtgc_capacity(prob, 201, 1e-8);
    std::printf("DTGC A=1: C=%.8g bits, %zu mass points, kkt=%.3g it=%ld "
                "[%.1fs]\n",
                sol.capacity_bits_per_use, sol.mass_points.size(),
                sol.kkt_residual, sol.iterations, now_s() - tsw);
    for (const auto& mp : sol.mass_points)
      std::printf("  x=%.6g p=%.6g\n", mp.location, mp.probability);

    tsw = now_s();
    DtgcProblem prob2{-20.0, 20.0, 1.0, 1.0};
    DtgcSolution sol2 = dtgc_capacity(prob2, 801, 1e-8);
    std::printf("DTGC A=20,P=1: C=%.8g (expect 0.5) it=%ld [%.1fs]\n",
                sol2.capacity_bits_per_use, sol2.iterations, now_s() - tsw);
  }

  if (stage == 0 || stage == 7) {
    // Upper bound at r=14 and the high-SNR gap.
    MetricsCache cache;
    double tsw = now_s();
    std::vector<double> rg{14.0};
    auto env = envelope(Channel::Blgc,
                        {PulseFamily::S2, PulseFamily::SC, PulseFamily::RC,
                         PulseFamily::PL, PulseFamily::BTN},
                        rg, 0.01, cache);
    const double eta_lb = env[0].eta_opt;
    std::printf("BLGC envelope r=14: eta=%.8g family=%s beta=%.3g [%.1fs]\n",
                eta_lb, family_name(env[0].family),
                env[0].beta ? *env[0].beta : -1, now_s() - tsw);
    for (double snr : {1e3, 1e4, 1e5}) {
      tsw = now_s();
      const double ub = blgc_upper_bound(1.0, snr, 14.0, 0, 1e-7);
      const double snr_lb = (std::exp2(ub) - 1.0) / eta_lb;
      std::printf("snr=%.1e ub=%.6g gap=%.4g dB [%.1fs]\n", snr, ub,
                  10.0 * std::log10(snr_lb / snr), now_s() - tsw);
    }
  }

  std::printf("[%7.2fs] done\n", now_s());
  return 0;
}
