#ifndef JUMPLAB_QUADRATURE_HPP
#define JUMPLAB_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

#include "jumplab/kernel.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

// raised when an integral diverges or an integrand turns non-finite
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// C^2 test functions with coded gradient and Hessian
// ---------------------------------------------------------------------------

class TestFunction {
  public:
    enum class Kind { Constant, Bump, Cosine, Barrier };

    static TestFunction constant(double c);
    // height * (1 - (|x-center|/radius)^2)^3 inside, 0 outside; C^2 at the rim
    static TestFunction bump(Vec center, double radius, double height);
    static TestFunction cosine(Vec frequency);
    // |x-center|^2 inside radius/2, constant radius^2 outside radius, joined
    // by a quintic C^2 blend on the annulus in between
    static TestFunction barrier(Vec center, double radius);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    SymMatrix hessian(const Vec& x) const;

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }

  private:
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    double radius_ = 0.0;
    double height_ = 0.0;
    Vec center_;
    Vec freq_;

    // radial profile F(s) and derivatives for the radial variants
    void radial_profile(double s, double& F, double& dF, double& ddF) const;
};

// ---------------------------------------------------------------------------
// regions and tail-measure queries
// ---------------------------------------------------------------------------

// annulus / ball-complement around the query base point x0
struct RadialRegion {
    double inner = 0.0;
    double outer = 0.0;  // +inf for a ball complement

    static RadialRegion complement_of_ball(double radius);
    static RadialRegion annulus(double inner, double outer);
    static RadialRegion empty();

    bool is_empty() const { return outer <= inner; }
};

struct TailMeasureQuery {
    Vec x0;
    double r;
    Vec x;  // in B(x0, r/2)
    RadialRegion region;

    TailMeasureQuery(Vec x0_, double r_, Vec x_, RadialRegion region_);
};

// ---------------------------------------------------------------------------
// operator and tail-machinery evaluations
// ---------------------------------------------------------------------------

struct QuadratureParams {
    int angular_order = 24;
    double small_jump_rel_tol = 1e-6;  // geometric-subdivision stop near 0
};

// (Lf)(x): jump part of the generator, small jumps integrated in symmetrized
// form, split at |h| = 1
double apply_L(const JumpKernel& kernel, const TestFunction& f, const Vec& x,
               const QuadratureParams& params = {});

// (r^alpha/ell(r)) * max over a deterministic grid of v in B(x0,2r) of
// int_{B(x0,4r)^c} g^-(z) n(v, z-v) dz
double harnack_tail_term(const JumpKernel& kernel, const Vec& x0, double r,
                         const std::function<double(const Vec&)>& g,
                         int probe_count = 64, const QuadratureParams& params = {});

// int_{B(x0,R)^c} n(x0, z - x0) dz
double exterior_mass(const JumpKernel& kernel, const Vec& x0, double R,
                     const QuadratureParams& params = {});

// reciprocal exterior mass of B(x0, 4r)^c; r in (0, 1/4)
double big_M(const JumpKernel& kernel, const Vec& x0, double r,
             const QuadratureParams& params = {});

// nu_r^x(A) = int_A gamma(|z-x|) dz / int_{B(x0,r)^c} gamma(|z-x0|) dz
double nu_measure(const RadialProfile& gamma, int dim, const TailMeasureQuery& query,
                  const QuadratureParams& params = {});

// deterministic low-discrepancy probe points filling a ball
std::vector<Vec> ball_probes(const Vec& center, double radius, int count);

struct EtaReport {
    double eta;       // sup over the x grid of nu_r^x(B(x0, 2^j r)^c)
    double eta_root;  // eta^{1/j}
    int j;
};

EtaReport eta_rj(const RadialProfile& gamma, int dim, const Vec& x0, double r, int j,
                 const std::vector<Vec>& x_grid, const QuadratureParams& params = {});

}  // namespace jumplab

#endif
