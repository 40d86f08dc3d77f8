#include "jumplab/regvar.hpp"

#include <cmath>
#include <stdexcept>

#include "jumplab/quad1d.hpp"

namespace jumplab {

KaramataReport karamata_ratio_small(const SlowlyVaryingSpec& spec, double beta1,
                                    double r) {
    if (beta1 <= -1.0)
        throw std::domain_error("karamata_ratio_small: beta1 must exceed -1");
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("karamata_ratio_small: r must lie in (0,1]");
    double numeric = integrate_to_zero(
        [&](double u) { return std::pow(u, beta1) * spec.eval(u); }, r);
    double asymptotic = std::pow(r, 1.0 + beta1) * spec.eval(r) / (1.0 + beta1);
    return {r, numeric / asymptotic, beta1};
}

KaramataReport karamata_ratio_large(const SlowlyVaryingSpec& spec, double beta2,
                                    double r) {
    if (beta2 <= 1.0)
        throw std::domain_error("karamata_ratio_large: beta2 must exceed 1");
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("karamata_ratio_large: r must lie in (0,1)");
    double numeric = integrate_log_panels(
        [&](double u) { return std::pow(u, -beta2) * spec.eval(u); }, r, 1.0);
    double asymptotic = std::pow(r, 1.0 - beta2) * spec.eval(r) / (beta2 - 1.0);
    return {r, numeric / asymptotic, beta2};
}

double monotone_envelope(const RadialProfile& radial, int dim, double t) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::domain_error("monotone_envelope: t must lie in (0,1]");
    const double p = -static_cast<double>(dim) - radial.alpha();
    auto raw = [&](double s) { return std::pow(s, p) * radial.ell().eval(s); };
    if (t == 1.0) return raw(1.0);
    double prev = 0.0;
    int npts = 4096;
    for (int round = 0; round < 8; ++round) {
        double m = 0.0;
        for (int i = 0; i < npts; ++i) {
            double s = t * std::pow(1.0 / t, i / double(npts - 1));
            m = std::max(m, raw(s));
        }
        if (round > 0 && std::fabs(m - prev) < 1e-6 * m) return m;
        prev = m;
        npts *= 4;
    }
    return prev;
}

}  // namespace jumplab
