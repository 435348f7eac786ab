#include "hawkes/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

double sign_gamma(double y) {
    // sign of Gamma on (-k-1, -k) alternates; positive for y > 0
    if (y > 0.0) return 1.0;
    const double fl = std::floor(y);
    return (static_cast<long long>(fl) % 2 == 0) ? 1.0 : -1.0;
}
}

double rgamma(double y) {
    if (y <= 0.0 && y == std::floor(y)) return 0.0;
    if (y > 0.5 && y < 170.0) return 1.0 / std::tgamma(y);
    const double lg = std::lgamma(y);
    if (lg > 700.0) return 0.0;  // |Gamma| too large; reciprocal underflows
    return sign_gamma(y) * std::exp(-lg);
}

double erfcx(double y) {
    if (y < 0.0) {
        // erfc(y) = 2 - erfc(-y); overflows for y << -26, as does the target
        return 2.0 * std::exp(y * y) - erfcx(-y);
    }
    if (y < 8.0) return std::exp(y * y) * std::erfc(y);
    // asymptotic: 1/(y sqrt(pi)) * sum (-1)^k (2k-1)!! / (2 y^2)^k
    const double inv2y2 = 1.0 / (2.0 * y * y);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term *= -static_cast<double>(2 * k - 1) * inv2y2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / (y * std::sqrt(kPi));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    struct Rec {
        const std::function<double(double)>& f;
        double run(double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return run(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
                   run(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
        }
    };
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    Rec rec{f};
    return rec.run(a, fa, b, fb, m, fm, whole, tol, max_depth);
}

namespace {
// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlX[8] = {
    -0.9602898564975362316835609, -0.7966664774136267395915539,
    -0.5255324099163289858177390, -0.1834346424956498049394761,
    0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
constexpr double kGlW[8] = {
    0.1012285362903762591525314, 0.2223810344533744705443560,
    0.3137066458778872873379622, 0.3626837833783619829651504,
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};
}

double gauss_legendre_8(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += kGlW[i] * f(c + r * kGlX[i]);
    return s * r;
}

namespace {

double ml_taylor(double alpha, double kappa, double x) {
    // E = sum_k x^k / Gamma(kappa + k alpha); safe for x >= -1 (mild
    // cancellation only) and any positive x.
    if (x == 0.0) return rgamma(kappa);
    double sum = 0.0, comp = 0.0, maxterm = 0.0;
    const double lax = std::log(std::abs(x));
    int below = 0;
    for (int k = 0; k < 4000; ++k) {
        const double y = kappa + k * alpha;
        const double rg = rgamma(y);
        double term;
        if (rg == 0.0) {
            term = 0.0;
        } else {
            const double lt = k * lax - std::lgamma(y);
            term = sign_gamma(y) * std::exp(lt);
            if (x < 0.0 && (k & 1)) term = -term;
        }
        // Kahan step
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        maxterm = std::max(maxterm, std::abs(term));
        if (k >= 8) {
            if (std::abs(term) <= 1e-17 * (std::abs(sum) + maxterm * 1e-6) + 1e-300)
                ++below;
            else
                below = 0;
            if (below >= 2) break;
        }
        if (k == 3999) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "ml_function: Taylor series did not converge (alpha=%.17g kappa=%.17g "
                          "x=%a)",
                          alpha, kappa, x);
            throw NumericError(buf);
        }
    }
    return sum + comp;
}

// Truncation at the smallest term; returns true when that term bounds the
// error by 1e-12 relative.
bool ml_asymptotic(double alpha, double kappa, double x, double* out) {
    double sum = 0.0;
    double xk = 1.0;
    double smallest = std::numeric_limits<double>::infinity();
    double prev_abs = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 300; ++k) {
        xk /= x;
        const double term = -xk * rgamma(kappa - k * alpha);
        const double a = std::abs(term);
        if (a > prev_abs && a > 0.0) break;  // past the smallest term
        sum += term;
        if (a > 0.0) {
            prev_abs = a;
            smallest = a;
        }
        if (a > 0.0 && a <= 1e-13 * std::abs(sum)) break;
    }
    if (std::abs(sum) > 0.0 && smallest <= 1e-12 * std::abs(sum)) {
        *out = sum;
        return true;
    }
    return false;
}

double ml_integral(double alpha, double kappa, double x) {
    // Real inverse-Laplace representation, valid for x < 0, kappa < 1 + alpha:
    //   E = Int_0^inf K(r) dr,
    //   K(r) = r^((1-kappa)/alpha) e^(-r^(1/alpha)) / (pi alpha)
    //          * [r sin(pi(1-kappa)) - x sin(pi(1-kappa+alpha))]
    //          / (r^2 - 2 r x cos(pi alpha) + x^2)
    const double s1 = std::sin(kPi * (1.0 - kappa));
    const double s2 = std::sin(kPi * (1.0 - kappa + alpha));
    const double c = std::cos(kPi * alpha);
    const double e0 = (1.0 - kappa) / alpha;
    auto kern = [&](double r) -> double {
        if (r <= 0.0) return (e0 > 0.0) ? 0.0 : std::numeric_limits<double>::quiet_NaN();
        const double num = r * s1 - x * s2;
        const double den = (r - x * c) * (r - x * c) + x * x * (1.0 - c * c);
        return std::pow(r, e0) * std::exp(-std::pow(r, 1.0 / alpha)) * num /
               (kPi * alpha * den);
    };
    const double rmax =
        std::max({1.0, 2.0 * std::abs(x), std::pow(41.5, alpha)});  // e^-41.5 ~ 1e-18
    // power substitution r = s^p keeps the integrand bounded near 0
    double p = 1.0;
    if (e0 < 0.0) p = std::ceil(2.0 / (1.0 + e0));
    auto g = [&](double s) -> double {
        if (s <= 0.0) return 0.0;
        const double r = std::pow(s, p);
        return kern(r) * p * std::pow(s, p - 1.0);
    };
    const double smax = std::pow(rmax, 1.0 / p);
    // coarse scale pass, then adaptive refinement with knots near the
    // denominator minimum r ~ |x|
    double scale = 0.0;
    for (int i = 1; i <= 64; ++i) scale += std::abs(g(smax * (i - 0.5) / 64.0));
    scale *= smax / 64.0;
    const double tol = std::max(1e-280, 1e-14 * scale);
    double knots[5] = {0.0, std::pow(std::min(std::abs(x), rmax) * 0.5, 1.0 / p),
                       std::pow(std::min(std::abs(x), rmax), 1.0 / p),
                       std::pow(std::min(2.0 * std::abs(x), rmax), 1.0 / p), smax};
    std::sort(knots, knots + 5);
    double total = 0.0;
    for (int i = 0; i + 1 < 5; ++i) {
        if (knots[i + 1] > knots[i] + 1e-300)
            total += adaptive_simpson(g, knots[i], knots[i + 1], tol * 0.25);
    }
    return total;
}

}  // namespace

double ml_function(double alpha, double kappa, double x) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw ValidationError("ml_function: alpha must lie in (0, 1]");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw ValidationError("ml_function: kappa must be positive");
    if (!std::isfinite(x)) {
        if (std::isnan(x)) throw ValidationError("ml_function: x must be a number");
        return x > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if (alpha == 1.0 && kappa == 1.0) return std::exp(x);
    if (x >= -1.0) return ml_taylor(alpha, kappa, x);
    if (alpha == 1.0) {
        // negative arguments below the Taylor comfort zone: asymptotic only
        if (x >= -10.0) return ml_taylor(alpha, kappa, x);
        double out;
        if (ml_asymptotic(alpha, kappa, x, &out)) return out;
        throw NumericError("ml_function: no stable branch for alpha = 1, x << 0");
    }
    // alpha = 1/2 closed forms cover the region where the series is useless
    // and the integral representation is expensive
    if (alpha == 0.5) {
        if (kappa == 1.0) return erfcx(-x);
        if (kappa == 0.5) return 1.0 / std::sqrt(kPi) + x * erfcx(-x);
    }
    double out;
    if (ml_asymptotic(alpha, kappa, x, &out)) return out;
    if (kappa < 1.0 + alpha) return ml_integral(alpha, kappa, x);
    // reduce kappa into the window of the integral representation:
    // E_{a,k}(x) = (E_{a,k-a}(x) - 1/Gamma(k-a)) / x
    return (ml_function(alpha, kappa - alpha, x) - rgamma(kappa - alpha)) / x;
}

double kanter_a(double u, double alpha) {
    const double om = 1.0 - alpha;
    return std::pow(std::sin(alpha * u), alpha / om) * std::sin(om * u) /
           std::pow(std::sin(u), 1.0 / om);
}

double sample_one_sided_stable(double alpha, RngStream& rng) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ValidationError("one-sided stable: alpha must lie in (0, 1)");
    const double u = rng.uniform(0.0, kPi);
    const double e = rng.exponential(1.0);
    return std::pow(kanter_a(u, alpha) / e, (1.0 - alpha) / alpha);
}

double one_sided_stable_cdf(double alpha, double x) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ValidationError("one-sided stable: alpha must lie in (0, 1)");
    if (!(x > 0.0)) return 0.0;
    const double c = std::pow(x, -alpha / (1.0 - alpha));
    auto f = [&](double u) -> double {
        if (u <= 0.0) {
            const double a0 = std::pow(alpha, alpha / (1.0 - alpha)) * (1.0 - alpha);
            return std::exp(-a0 * c);
        }
        if (u >= kPi) return 0.0;  // a(u) -> +inf
        return std::exp(-kanter_a(u, alpha) * c);
    };
    return adaptive_simpson(f, 0.0, kPi, 1e-13) / kPi;
}

}
