#ifndef NILWALK_STATS_HPP
#define NILWALK_STATS_HPP

#include <vector>

namespace nilwalk {

// regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x)
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// upper-tail p-value of a chi-square statistic
double chi_square_pvalue(double stat, int dof);

struct WlsFit {
    double slope = 0;
    double intercept = 0;
    double slope_var = 0;  // assumes weights are inverse variances
    std::vector<double> residuals;
};

// weighted least squares y ~ intercept + slope * x
WlsFit wls(const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& w);

}  // namespace nilwalk

#endif
