#include "adm/operators.hpp"

#include <algorithm>
#include <cmath>

namespace adm {
namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ConfigError("filter radius alpha must be positive and finite",
                          "params.alpha");
}

void check_order(int N) {
    if (N < 0)
        throw ConfigError("deconvolution order N must be non-negative",
                          "params.N");
}

// pow() would be correct here too, but the common exponents are kept exact.
double apply_power(double v, double p) {
    if (p == 1.0) return v;
    if (p == -1.0) return 1.0 / v;
    if (p == 2.0) return v * v;
    if (p == -2.0) return 1.0 / (v * v);
    if (p == 0.5) return std::sqrt(v);
    if (p == -0.5) return 1.0 / std::sqrt(v);
    return std::pow(v, p);
}

} // namespace

MultiplierSpec helmholtz_multiplier(double alpha, double power) {
    check_alpha(alpha);
    return {{{MultiplierKind::helmholtz, alpha, 0, power}}};
}

MultiplierSpec filter_multiplier(double alpha, double power) {
    check_alpha(alpha);
    return {{{MultiplierKind::helmholtz, alpha, 0, -power}}};
}

MultiplierSpec deconvolution_multiplier(double alpha, int N, double power) {
    check_alpha(alpha);
    check_order(N);
    return {{{MultiplierKind::deconvolution, alpha, N, power}}};
}

MultiplierSpec lambda_multiplier(double s) {
    return {{{MultiplierKind::lambda, 0.0, 0, s}}};
}

MultiplierSpec compose(MultiplierSpec a, const MultiplierSpec& b) {
    a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
    return a;
}

double deconvolution_value(double alpha, int N, double ksq) {
    check_alpha(alpha);
    check_order(N);
    const double a = alpha * alpha * ksq;
    const double A = 1.0 + a;
    const double x = a / A;

    // Horner form of 1 + x + ... + x^N; exactly 1 at N = 0 or k = 0.
    double s = 1.0;
    for (int n = 0; n < N; ++n) s = 1.0 + x * s;

    return std::max(1.0, std::min(s, std::min(static_cast<double>(N + 1), A)));
}

double multiplier_value(const MultiplierSpec& spec, double ksq) {
    double v = 1.0;
    for (const MultiplierFactor& f : spec.factors) {
        double base;
        switch (f.kind) {
            case MultiplierKind::helmholtz:
                base = 1.0 + f.alpha * f.alpha * ksq;
                break;
            case MultiplierKind::deconvolution:
                base = deconvolution_value(f.alpha, f.N, ksq);
                break;
            case MultiplierKind::lambda:
                // power is the Lambda exponent s, so the base pairs with p/2.
                v *= apply_power(ksq, 0.5 * f.power);
                continue;
        }
        v *= apply_power(base, f.power);
    }
    return v;
}

SpectralScalar apply(const MultiplierSpec& spec, const SpectralScalar& f) {
    const TorusGrid& g = f.grid();
    SpectralScalar out = f;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            out.at(i, j) *= multiplier_value(spec, g.ksq(i, j));
        }
    }
    return out;
}

SpectralVector apply(const MultiplierSpec& spec, const SpectralVector& f) {
    return SpectralVector(apply(spec, f.x), apply(spec, f.y));
}

State apply(const MultiplierSpec& spec, const State& s) {
    return State(apply(spec, s.v), apply(spec, s.theta));
}

} // namespace adm
