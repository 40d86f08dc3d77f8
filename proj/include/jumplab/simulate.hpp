#ifndef JUMPLAB_SIMULATE_HPP
#define JUMPLAB_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "jumplab/kernel.hpp"
#include "jumplab/rng.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

struct Ball {
    Vec center;
    double radius;
    bool contains(const Vec& x) const { return dist(x, center) <= radius; }
    double volume() const;
};

// ball or annulus; the shapes the path statistics integrate over
struct SetSpec {
    enum class Kind { Ball, Annulus };
    Kind kind;
    Vec center;
    double r1;  // ball radius, or annulus inner radius
    double r2;  // annulus outer radius (unused for balls)

    static SetSpec ball(Vec center, double radius);
    static SetSpec annulus(Vec center, double inner, double outer);
    bool contains(const Vec& x) const;
};

bool disjoint(const SetSpec& a, const SetSpec& b);

struct SimConfig {
    double epsilon = 0.01;  // small-jump cutoff, in (0,1)
    long max_events = 1000000;
    std::optional<double> time_horizon;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ExitSample {
    double tau = 0.0;
    Vec x_pre;   // last position inside the ball
    Vec x_post;  // first position outside
    long n_real_jumps = 0;
    long n_fictitious = 0;
    bool censored = false;
};

struct JumpEvent {
    double time;
    Vec x_pre;
    Vec x_post;
    bool fictitious;
};

// total rate of the dominating measure k2(h/|h|) j(|h|) dh outside radius
// epsilon; zero is returned for the degenerate truncated case
double envelope_rate(const JumpKernel& kernel, double epsilon);

// Proposal-and-thinning sampler for jumps of size > epsilon.
class JumpSampler {
  public:
    JumpSampler(const JumpKernel& kernel, double epsilon);

    double rate() const { return rate_; }
    const std::vector<double>& cap_weights() const { return cap_weights_; }

    // one thinning step: fills h and returns true on a real jump, returns
    // false for a fictitious one
    bool sample(const Vec& x, RngStream& rng, Vec& h) const;

  private:
    const JumpKernel* kernel_;
    double epsilon_;
    double rate_;
    std::vector<double> cap_weights_;  // k2_i * symmetrized surface, cumulative
    std::vector<std::vector<Vec>> frames_;  // per-cap orthonormal frames (d=3)
    // radial proposal pieces: envelope c * t^{-1-alpha} on [lo, hi]
    struct Piece {
        double lo, hi, env_const, env_mass;
        bool exact;  // envelope equals the density, no radial rejection
    };
    std::vector<Piece> pieces_;
    double piece_mass_total_;

    Vec sample_direction(std::size_t cap_index, RngStream& rng) const;
    double sample_radius(RngStream& rng) const;
};

ExitSample simulate_until_exit(const JumpKernel& kernel, const Vec& start,
                               const Ball& ball, const SimConfig& config,
                               RngStream& rng, std::vector<JumpEvent>* event_log = nullptr);

struct HittingResult {
    bool hit = false;
    double hit_time = 0.0;
    ExitSample exit;  // state of the run when it ended (hit or exited)
};

HittingResult hitting_before_exit(const JumpKernel& kernel, const Vec& start,
                                  const std::vector<Ball>& target,
                                  const Ball& container, const SimConfig& config,
                                  RngStream& rng);

struct LevyEstimates {
    double count_mean = 0.0;
    double count_se = 0.0;
    double integral_mean = 0.0;
    double integral_se = 0.0;
    long n = 0;
};

// Path-count vs kernel-integral consistency over [0, T]: mean number of
// jumps from A straight into B against the mean of
// int_0^T 1_A(X_s) int_B n(X_s, u - X_s) du ds.
LevyEstimates levy_system_paths(const JumpKernel& kernel, const Vec& start,
                                const std::vector<SetSpec>& A,
                                const std::vector<SetSpec>& B, double T, long n,
                                const SimConfig& config, int threads = 1);

// int_B n(x, u - x) du for a union of disjoint shapes
double jump_intensity_into(const JumpKernel& kernel, const Vec& x,
                           const std::vector<SetSpec>& B, int angular_order = 24);

// Deterministic parallel replica map: results identical for any thread count.
std::vector<double> run_replicas(long n, int threads,
                                 const std::function<double(long)>& body);

}  // namespace jumplab

#endif
