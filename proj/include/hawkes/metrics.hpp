#pragma once
#include <functional>
#include <vector>

namespace hawkes {

// sup-distance between the two empirical CDFs
double kolmogorov_distance(std::vector<double> a, std::vector<double> b);

// sup-distance between the empirical CDF of a and the reference CDF
double kolmogorov_distance(std::vector<double> a, const std::function<double(double)>& cdf);

// 1-Wasserstein distance of the empirical laws.  For equal sizes this is the
// mean absolute difference of the order statistics; otherwise the quantile
// functions are integrated over the merged rank grid.
double wasserstein1(std::vector<double> a, std::vector<double> b);

}
