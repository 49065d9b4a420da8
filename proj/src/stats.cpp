#include "nilwalk/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace nilwalk {

namespace {

// lower incomplete gamma by series (x < a+1)
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper incomplete gamma by continued fraction (x >= a+1)
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
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
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0 || x < 0) throw std::invalid_argument("gamma_p domain");
    if (x == 0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0 || x < 0) throw std::invalid_argument("gamma_q domain");
    if (x == 0) return 1.0;
    return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
    if (dof < 1 || stat < 0) throw std::invalid_argument("chi-square domain");
    return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

WlsFit wls(const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw std::invalid_argument("wls needs >= 2 matching points");
    double W = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (w[i] <= 0) throw std::invalid_argument("wls weights must be positive");
        W += w[i];
        Sx += w[i] * x[i];
        Sy += w[i] * y[i];
        Sxx += w[i] * x[i] * x[i];
        Sxy += w[i] * x[i] * y[i];
    }
    double det = W * Sxx - Sx * Sx;
    if (det <= 0) throw std::invalid_argument("wls design is degenerate");
    WlsFit f;
    f.slope = (W * Sxy - Sx * Sy) / det;
    f.intercept = (Sxx * Sy - Sx * Sxy) / det;
    f.slope_var = W / det;
    for (size_t i = 0; i < x.size(); ++i)
        f.residuals.push_back(y[i] - f.intercept - f.slope * x[i]);
    return f;
}

}  // namespace nilwalk
