#ifndef JUMPLAB_ESTIMATORS_HPP
#define JUMPLAB_ESTIMATORS_HPP

#include <optional>
#include <vector>

#include "jumplab/kernel.hpp"
#include "jumplab/simulate.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
    double censored_fraction = 0.0;
};

// ---------------------------------------------------------------------------
// exterior boundary data g
// ---------------------------------------------------------------------------

class ExteriorData {
  public:
    enum class Kind { Constant, IndicatorBall, SignedBump, Radial };

    static ExteriorData constant(double c);
    static ExteriorData indicator_ball(Vec center, double radius);
    // +amp_pos on the first ball, -amp_neg on the second (disjoint sets)
    static ExteriorData signed_bump(Vec pos_center, double pos_radius, double amp_pos,
                                    Vec neg_center, double neg_radius, double amp_neg);
    // g(z) = profile.j(|z - center|, dim)
    static ExteriorData radial(Vec center, RadialProfile profile, int dim);

    double value(const Vec& z) const;
    bool nonnegative() const;
    Kind kind() const { return kind_; }

  private:
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    Vec center_a_, center_b_;
    double radius_a_ = 0.0, radius_b_ = 0.0;
    double amp_a_ = 0.0, amp_b_ = 0.0;
    std::optional<RadialProfile> profile_;
    int dim_ = 0;
};

// ---------------------------------------------------------------------------
// exit statistics
// ---------------------------------------------------------------------------

struct ExitStats {
    MCEstimate tau;
    double normalized_tau = 0.0;  // mean tau * ell(r) / r^alpha
    std::vector<std::pair<double, MCEstimate>> survival;  // (t, P(tau <= t))
    long censored = 0;
};

ExitStats estimate_exit_stats(const JumpKernel& kernel, const Vec& x, const Ball& ball,
                              long n, const std::vector<double>& times,
                              const SimConfig& config, int threads = 1);

// ---------------------------------------------------------------------------
// hitting ratios
// ---------------------------------------------------------------------------

struct KsRatio {
    double fraction;     // of |B(x0, lambda r)|
    MCEstimate probability;
    double volume_ratio;  // |A| / |B(x0, r)|
    double ratio;         // probability / volume_ratio
};

std::vector<KsRatio> estimate_ks_ratio(const JumpKernel& kernel, const Vec& x0, double r,
                                       double lambda,
                                       const std::vector<double>& volume_fractions,
                                       long n, const SimConfig& config,
                                       int threads = 1);

// ---------------------------------------------------------------------------
// harmonic evaluation and the Harnack / regularity reports
// ---------------------------------------------------------------------------

MCEstimate evaluate_harmonic(const JumpKernel& kernel, const Ball& domain,
                             const ExteriorData& g, const Vec& x, long n,
                             const SimConfig& config, int threads = 1);

struct HarnackReport {
    double sup = 0.0, inf = 0.0;
    double quotient = 0.0;   // sup / inf
    double tail_term = 0.0;
    double c1 = 0.0;         // (sup - tail_term) / inf
    double slack = 0.0;      // c1 * inf + tail_term - sup
    bool inf_positive = true;  // false: inf within noise of 0, quotient suppressed
    std::vector<double> probe_values;
};

HarnackReport harnack_report(const JumpKernel& kernel, const Vec& x0, double r,
                             const ExteriorData& g, int probe_count, long n,
                             const SimConfig& config, int threads = 1);

struct RestrictedHarnack {
    MCEstimate numerator;    // E^x H(X_{tau of the small ball})
    MCEstimate denominator;  // E^y H(X_{tau of the big ball})
    double ratio = 0.0;
    bool denominator_zero = false;  // both sides expected to vanish
};

RestrictedHarnack restricted_harnack_check(const JumpKernel& kernel, const Vec& x0,
                                           double r, double lambda,
                                           const ExteriorData& H, const Vec& x,
                                           const Vec& y, long n,
                                           const SimConfig& config, int threads = 1);

struct HolderFit {
    std::vector<double> scales;
    std::vector<double> oscillation;
    double beta = 0.0;
    double residual = 0.0;  // rms residual of the log-log fit
};

HolderFit holder_fit(const JumpKernel& kernel, const Vec& x0, double R,
                     const ExteriorData& g, const std::vector<double>& scales,
                     int probe_pairs, long n, const SimConfig& config,
                     int threads = 1);

// ---------------------------------------------------------------------------
// radial averaging constant
// ---------------------------------------------------------------------------

struct AveragingReport {
    double c_prime = 0.0;   // worst sampled ratio
    double integral = 0.0;  // int_{B(x0,r)} g(|z-u|) du
};

AveragingReport averaging_check(const std::function<double(double)>& g, int dim,
                                const Vec& x0, double r, const Vec& z,
                                const std::vector<Vec>& x_samples,
                                int angular_order = 24);

}  // namespace jumplab

#endif
