#ifndef JUMPLAB_STATS_HPP
#define JUMPLAB_STATS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jumplab {

// regularized lower incomplete gamma P(a, x): series for x < a+1, continued
// fraction for the complement otherwise
inline double reg_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::domain_error("reg_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

// P(Chi2_dof > stat)
inline double chi_square_pvalue(double stat, int dof) {
    if (dof < 1) throw std::domain_error("chi_square_pvalue: dof must be >= 1");
    if (stat <= 0.0) return 1.0;
    return 1.0 - reg_gamma_p(0.5 * dof, 0.5 * stat);
}

struct SampleStats {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
};

inline SampleStats summarize(const std::vector<double>& xs) {
    SampleStats s;
    s.n = static_cast<long>(xs.size());
    if (s.n == 0) return s;
    for (double v : xs) s.mean += v;
    s.mean /= s.n;
    if (s.n > 1) {
        double var = 0.0;
        for (double v : xs) var += (v - s.mean) * (v - s.mean);
        s.std_error = std::sqrt(var / (s.n - 1) / s.n);
    }
    return s;
}

// least-squares slope of y on x
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::domain_error("ls_slope: need matching samples, at least 2");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw std::domain_error("ls_slope: degenerate abscissae");
    return num / den;
}

}  // namespace jumplab

#endif
