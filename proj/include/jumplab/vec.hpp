#ifndef JUMPLAB_VEC_HPP
#define JUMPLAB_VEC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace jumplab {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Vec negate(const Vec& a) { return scale(-1.0, a); }

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    return scale(1.0 / n, a);
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline Vec axis_vector(std::size_t d, std::size_t i) {
    Vec r(d, 0.0);
    r[i] = 1.0;
    return r;
}

// A direction on S^{d-1}, validated to unit norm on construction.
class UnitVector {
  public:
    explicit UnitVector(Vec v) : v_(std::move(v)) {
        if (v_.empty()) throw std::domain_error("UnitVector: dimension must be >= 1");
        if (std::fabs(norm(v_) - 1.0) > 1e-12)
            throw std::domain_error("UnitVector: norm deviates from 1 by more than 1e-12");
    }
    static UnitVector from(const Vec& v) { return UnitVector(normalized(v)); }

    const Vec& vec() const { return v_; }
    std::size_t dim() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }

  private:
    Vec v_;
};

// Dense symmetric matrix, row-major.
class SymMatrix {
  public:
    explicit SymMatrix(std::size_t d) : d_(d), a_(d * d, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    std::size_t dim() const { return d_; }

    double quad_form(const Vec& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) s += at(i, j) * x[i] * x[j];
        return s;
    }

    double max_asymmetry() const {
        double m = 0.0;
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = i + 1; j < d_; ++j)
                m = std::max(m, std::fabs(at(i, j) - at(j, i)));
        return m;
    }

    // Eigenvalues by cyclic Jacobi rotations, ascending order.
    std::vector<double> eigenvalues() const {
        std::vector<double> a = a_;
        const std::size_t d = d_;
        auto el = [&](std::size_t i, std::size_t j) -> double& { return a[i * d + j]; };
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j) off += el(i, j) * el(i, j);
            if (off < 1e-30) break;
            for (std::size_t p = 0; p < d; ++p) {
                for (std::size_t q = p + 1; q < d; ++q) {
                    if (std::fabs(el(p, q)) < 1e-300) continue;
                    double theta = (el(q, q) - el(p, p)) / (2.0 * el(p, q));
                    double t = (theta >= 0 ? 1.0 : -1.0) /
                               (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    double c = 1.0 / std::sqrt(t * t + 1.0);
                    double s = t * c;
                    for (std::size_t k = 0; k < d; ++k) {
                        double akp = el(k, p), akq = el(k, q);
                        el(k, p) = c * akp - s * akq;
                        el(k, q) = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < d; ++k) {
                        double apk = el(p, k), aqk = el(q, k);
                        el(p, k) = c * apk - s * aqk;
                        el(q, k) = s * apk + c * aqk;
                    }
                }
            }
        }
        std::vector<double> ev(d);
        for (std::size_t i = 0; i < d; ++i) ev[i] = el(i, i);
        std::sort(ev.begin(), ev.end());
        return ev;
    }

  private:
    std::size_t d_;
    std::vector<double> a_;
};

}  // namespace jumplab

#endif
