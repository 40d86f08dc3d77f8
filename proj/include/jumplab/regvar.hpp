#ifndef JUMPLAB_REGVAR_HPP
#define JUMPLAB_REGVAR_HPP

#include "jumplab/kernel.hpp"

namespace jumplab {

struct KaramataReport {
    double r;      // evaluation scale
    double ratio;  // numeric integral divided by the asymptotic expression
    double beta;   // exponent used
};

// ratio of int_0^r u^{beta1} ell(u) du to r^{1+beta1} ell(r) / (1+beta1);
// tends to 1 as r -> 0+
KaramataReport karamata_ratio_small(const SlowlyVaryingSpec& spec, double beta1,
                                    double r);

// ratio of int_r^1 u^{-beta2} ell(u) du to r^{1-beta2} ell(r) / (beta2-1)
KaramataReport karamata_ratio_large(const SlowlyVaryingSpec& spec, double beta2,
                                    double r);

// the non-increasing envelope phi(t) = max_{s in [t,1]} s^{-d-alpha} ell(s),
// evaluated on a refined log grid
double monotone_envelope(const RadialProfile& radial, int dim, double t);

}  // namespace jumplab

#endif
