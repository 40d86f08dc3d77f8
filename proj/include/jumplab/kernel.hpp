#ifndef JUMPLAB_KERNEL_HPP
#define JUMPLAB_KERNEL_HPP

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "jumplab/sphere.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

// ---------------------------------------------------------------------------
// slowly varying functions ell on (0,2): constants, powers of log(e/t), and
// finite products of those
// ---------------------------------------------------------------------------

struct SVFactor {
    bool is_log_power;  // false: constant `value`; true: t -> (log(e/t))^value
    double value;
};

class SlowlyVaryingSpec {
  public:
    static SlowlyVaryingSpec constant(double c);
    static SlowlyVaryingSpec log_power(double p);
    static SlowlyVaryingSpec product(const std::vector<SlowlyVaryingSpec>& parts);

    double eval(double t) const;  // caller guarantees t in (0,2)
    bool is_constant() const;
    double constant_value() const;  // valid only if is_constant()

    // upper bound for ell on [a,b] subset of (0,2), used as rejection envelope
    double sup_on(double a, double b) const;

    const std::vector<SVFactor>& factors() const { return factors_; }
    std::string describe() const;

  private:
    std::vector<SVFactor> factors_;
};

// eval with the (0,2) domain check
double eval_ell(const SlowlyVaryingSpec& spec, double t);

// ---------------------------------------------------------------------------
// radial density j
// ---------------------------------------------------------------------------

enum class TailKind { Power, Truncated, Exponential };

struct TailRule {
    TailKind kind = TailKind::Power;
    double param = 0.0;  // cutoff T for Truncated, rate for Exponential

    static TailRule power() { return {TailKind::Power, 0.0}; }
    static TailRule truncated(double cutoff);
    static TailRule exponential(double rate);
};

// Houses j: j(t) = ell(t) t^{-d-alpha} on (0,1], continued by the tail rule.
class RadialProfile {
  public:
    RadialProfile(double alpha, SlowlyVaryingSpec ell, TailRule tail, double kappa,
                  double sigma);

    double alpha() const { return alpha_; }
    const SlowlyVaryingSpec& ell() const { return ell_; }
    const TailRule& tail() const { return tail_; }
    double kappa() const { return kappa_; }
    double sigma() const { return sigma_; }

    double j(double t, int dim) const;

    // integral of t^{d-1} j(t) over [a,b]; b = +inf allowed; requires a > 0
    double radial_mass(double a, double b, int dim) const;

    // integral of t^{d+1} j(t) over (0,b], b <= 1 (the small-jump second moment)
    double radial_second_moment(double b) const;

  private:
    double alpha_;
    SlowlyVaryingSpec ell_;
    TailRule tail_;
    double kappa_;
    double sigma_;
};

// exterior mass integral: int_{|z|>R} j(|z|) dz
double tail_mass(const RadialProfile& radial, int dim, double R);

// ---------------------------------------------------------------------------
// angular cone system
// ---------------------------------------------------------------------------

struct ConeCap {
    UnitVector axis;
    double chordal_radius;  // in (0,2]
    double upper;           // k2 value on this cap, >= delta
    double cos_theta;       // derived: 1 - chordal^2/2
    double theta;           // derived half-angle
};

class ConeSystem {
  public:
    // caps given as (axis, chordal radius, upper value); delta is the shared
    // k1 level on all caps. Caps with N > 1 must be pairwise disjoint.
    ConeSystem(std::vector<std::tuple<UnitVector, double, double>> caps, double delta);

    const std::vector<ConeCap>& caps() const { return caps_; }
    double delta() const { return delta_; }
    int dim() const { return static_cast<int>(caps_.front().axis.dim()); }

    // index of the cap containing the direction (caps are symmetrized:
    // +-axis both count), or -1 when the direction misses every cap
    int cap_containing(const Vec& unit_dir) const;

    double k1(const Vec& unit_dir) const;
    double k2(const Vec& unit_dir) const;

    // the angle of eq-cone1 type lower bounds: the smallest cap half-angle
    double governing_theta() const;

  private:
    std::vector<ConeCap> caps_;
    double delta_;
};

// Quadrature rule covering the symmetrized cap S_i exactly once (the cap and
// its antipode when they are disjoint, the whole sphere when they overlap it).
std::vector<SphereNode> symmetrized_cap_rule(const ConeCap& cap, int dim, int order);
double symmetrized_cap_surface(const ConeCap& cap, int dim);

// ---------------------------------------------------------------------------
// spatial modulator m(x,h) in [0,1] with m(x,h) = m(x,-h) exactly
// ---------------------------------------------------------------------------

class SpatialModulator {
  public:
    enum class Kind { ConstantOne, Sinusoidal, Patchwise };

    static SpatialModulator constant_one();
    static SpatialModulator sinusoidal(Vec frequency);
    static SpatialModulator patchwise(std::vector<double> values, double cell_size);

    double value(const Vec& x, const Vec& h) const;
    bool is_trivial() const { return kind_ == Kind::ConstantOne; }
    Kind kind() const { return kind_; }
    const Vec& frequency() const { return freq_; }
    const std::vector<double>& values() const { return values_; }
    double cell_size() const { return cell_; }

  private:
    Kind kind_ = Kind::ConstantOne;
    Vec freq_;
    std::vector<double> values_;
    double cell_ = 1.0;
};

// ---------------------------------------------------------------------------
// the jump kernel n(x,h)
// ---------------------------------------------------------------------------

class JumpKernel {
  public:
    JumpKernel(int dim, ConeSystem cones, RadialProfile radial, SpatialModulator mod);

    int dim() const { return dim_; }
    const ConeSystem& cones() const { return cones_; }
    const RadialProfile& radial() const { return radial_; }
    const SpatialModulator& modulator() const { return modulator_; }

    // n(x,h) = [k1 + m (k2-k1)](h/|h|) j(|h|); throws on h = 0
    double eval_n(const Vec& x, const Vec& h) const;

    // the angular factor alone: k1 + m(x, t*dir) (k2 - k1), clamped to [k1,k2]
    double angular_k(const Vec& x, const Vec& unit_dir, double t) const;

    // true when n does not depend on x (Levy case)
    bool is_translation_invariant() const { return modulator_.is_trivial(); }

  private:
    int dim_;
    ConeSystem cones_;
    RadialProfile radial_;
    SpatialModulator modulator_;
};

// convenience constructors used all over the tests and experiments
JumpKernel make_isotropic_kernel(int dim, double alpha,
                                 SlowlyVaryingSpec ell = SlowlyVaryingSpec::constant(1.0),
                                 TailRule tail = TailRule::power());
// the double-cap kernel of the |h_1| >= cos_theta |h| example
JumpKernel make_cone_kernel(int dim, double alpha, double cos_theta,
                            double delta = 1.0, double upper = 1.0);

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass;
    double margin;  // worst slack of the defining inequality (>= 0 means ok)
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string summary() const;
};

struct GridSpec {
    int radial_points = 64;      // log-spaced on [radial_lo, radial_hi] comparability grid
    double radial_lo = 1.0;
    double radial_hi = 64.0;
    int angular_points = 128;
    int spatial_points = 8;
    double rel_tol = 1e-9;
};

ValidationReport validate_kernel(const JumpKernel& kernel, const GridSpec& grid = {});

// ---------------------------------------------------------------------------
// nondegeneracy matrix A^rho
// ---------------------------------------------------------------------------

struct NondegeneracyResult {
    SymMatrix matrix;
    double lambda_min;
    double lambda_max;
};

double default_normalizer(double alpha, double rho);  // rho^{alpha-2}

NondegeneracyResult nondegeneracy_matrix(const JumpKernel& kernel, const Vec& x,
                                         double rho, double normalizer);

}  // namespace jumplab

#endif
