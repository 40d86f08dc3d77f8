#ifndef JUMPLAB_GEOMETRY_HPP
#define JUMPLAB_GEOMETRY_HPP

#include <optional>
#include <stdexcept>

#include "jumplab/kernel.hpp"
#include "jumplab/vec.hpp"

namespace jumplab {

// rho^2 = 2(1 - cos theta); rho in (0,2], theta in (0,pi]
double half_angle_from_chordal(double rho);
double chordal_from_half_angle(double theta);

// admissible lambda bounds from the hitting/restricted-Harnack arguments
double lambda_max(double theta);             // sin(theta)/8
double lambda_max_restricted(double theta);  // sin(theta)/16

// |<u-v, xi>| / |u-v|
double separation_cosine(const Vec& u, const Vec& v, const UnitVector& xi);

// The double cone V(eta,rho): rays through the symmetrized spherical cap.
struct Cone {
    UnitVector axis;
    double chordal_radius;
    double theta;      // derived, consistent with chordal_radius to 1e-12
    double cos_theta;

    Cone(UnitVector axis_, double chordal);
    bool contains(const Vec& x) const;
};

// the configuration x0, r, lambda, xi, x~0, z~0, z of the chain argument
struct ChainConfig {
    Vec x0;
    double r;
    double lambda;
    UnitVector xi;      // selected cone-axis sign, <z-u0, xi> > 0
    Vec x0_tilde;       // x0 - (r/2) xi
    Vec z0_tilde;       // on the sphere |z0_tilde - x0| = r/2
    Vec z;
    Cone cone;          // the cone certifying z in u0 + V
};

struct ChainMargins {
    double m1, m2, m3, m4;
    double min() const;
    bool all_nonnegative() const { return min() >= 0.0; }
};

// thrown when no cone of the kernel contains z - u0
class NoConeError : public std::runtime_error {
  public:
    NoConeError() : std::runtime_error("no cone of the kernel contains z - u0") {}
};

// Builds x~0 and searches z~0 on the sphere of radius r/2 so that all four
// chain conditions hold with positive margin. Throws NoConeError when z - u0
// misses every cone, runtime_error when no feasible z~0 is found.
ChainConfig build_chain(const Vec& x0, double r, const JumpKernel& kernel,
                        const Vec& u0, const Vec& z,
                        std::optional<double> lambda = std::nullopt);

// Margins of the four chain conditions, computed as infima over deterministic
// boundary samples (the quantifier over the second ball of each condition is
// resolved in closed form).
ChainMargins verify_chain(const ChainConfig& config, const Cone& cone,
                          int boundary_samples = 0);

}  // namespace jumplab

#endif
