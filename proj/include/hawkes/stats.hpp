#pragma once
#include <cstddef>
#include <vector>

namespace hawkes {

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased (n-1 denominator)
    std::size_t n = 0;
};

SampleMoments sample_moments(const std::vector<double>& xs);

struct ADResult {
    double statistic = 0.0;  // size-adjusted A*^2
    bool reject_1pct = false;
};

// Anderson-Darling test of normality with estimated mean/variance;
// the 1% critical value for the adjusted statistic is 1.035.
ADResult anderson_darling_normal(std::vector<double> xs);

// half-width of the Dvoretzky-Kiefer-Wolfowitz band at confidence 1-delta
double dkw_band(std::size_t n, double delta);

struct KSTest {
    double statistic = 0.0;
    double critical = 0.0;  // at the requested level
    bool reject = false;
};

// two-sample Kolmogorov-Smirnov test at significance alpha (asymptotic critical value)
KSTest ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

double normal_cdf(double z);

}
