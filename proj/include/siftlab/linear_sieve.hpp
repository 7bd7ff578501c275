#pragma once

// The linear-sieve main-term functions F(u), f(u):
//   F(u) = 2 e^gamma / u                 on (0, 3]
//   f(u) = 2 e^gamma ln(u - 1) / u       on [2, 4], and 0 on [1, 2)
// continued by the delay system
//   d(u F(u))/du = f(u - 1),   d(u f(u))/du = F(u - 1)
// marched on a uniform grid with trapezoidal steps. Grid lookups at u - 1 land
// on exact grid points because the step divides 1.

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "siftlab/singular_series.hpp" // kEulerGamma

namespace siftlab {

class LinearSieveFn {
public:
    static constexpr int kStepsPerUnit = 10000; // h = 1e-4
    static constexpr double kUMax = 24.0;

    static const LinearSieveFn& instance() {
        static LinearSieveFn grid;
        return grid;
    }

    double F(double u) const {
        if (!(u >= 1.0)) throw std::invalid_argument("linear_sieve_F: u must be >= 1");
        if (u <= 3.0) return two_e_gamma_ / u;
        if (u >= kUMax) return 1.0;
        return interp(F_, u);
    }

    double f(double u) const {
        if (!(u >= 1.0)) throw std::invalid_argument("linear_sieve_f: u must be >= 1");
        if (u < 2.0) return 0.0;
        if (u <= 4.0) return two_e_gamma_ * std::log(u - 1.0) / u;
        if (u >= kUMax) return 1.0;
        return interp(f_, u);
    }

    double step() const { return 1.0 / kStepsPerUnit; }
    double u_max() const { return kUMax; }
    double grid_u(size_t j) const { return 1.0 + static_cast<double>(j) / kStepsPerUnit; }
    const std::vector<double>& grid_F() const { return F_; }
    const std::vector<double>& grid_f() const { return f_; }

private:
    LinearSieveFn() {
        const int S = kStepsPerUnit;
        const size_t J = static_cast<size_t>((kUMax - 1.0) * S) + 1;
        const double h = 1.0 / S;
        F_.resize(J);
        f_.resize(J);

        // uF and uf marched together; closed forms seed the grid.
        std::vector<double> uF(J), uf(J);
        for (size_t j = 0; j < J; ++j) {
            double u = grid_u(j);
            if (j <= size_t(2) * S) { // u in [1, 3]
                uF[j] = two_e_gamma_;
            }
            if (j < size_t(1) * S) { // u in [1, 2)
                uf[j] = 0.0;
            } else if (j <= size_t(3) * S) { // u in [2, 4]
                uf[j] = two_e_gamma_ * std::log(u - 1.0);
            }
        }
        for (size_t j = 1; j < J; ++j) {
            if (j > size_t(2) * S) { // continue uF past u = 3
                double fa = uf[j - 1 - S] / grid_u(j - 1 - S);
                double fb = uf[j - S] / grid_u(j - S);
                uF[j] = uF[j - 1] + 0.5 * h * (fa + fb);
            }
            if (j > size_t(3) * S) { // continue uf past u = 4
                double Fa = uF[j - 1 - S] / grid_u(j - 1 - S);
                double Fb = uF[j - S] / grid_u(j - S);
                uf[j] = uf[j - 1] + 0.5 * h * (Fa + Fb);
            }
        }
        for (size_t j = 0; j < J; ++j) {
            F_[j] = uF[j] / grid_u(j);
            f_[j] = uf[j] / grid_u(j);
        }
    }

    double interp(const std::vector<double>& g, double u) const {
        double pos = (u - 1.0) * kStepsPerUnit;
        size_t j = static_cast<size_t>(pos);
        if (j + 1 >= g.size()) return g.back();
        double frac = pos - static_cast<double>(j);
        return g[j] * (1.0 - frac) + g[j + 1] * frac;
    }

    const double two_e_gamma_ = 2.0 * std::exp(kEulerGamma);
    std::vector<double> F_;
    std::vector<double> f_;
};

inline double linear_sieve_F(double u) { return LinearSieveFn::instance().F(u); }
inline double linear_sieve_f(double u) { return LinearSieveFn::instance().f(u); }

} // namespace siftlab
