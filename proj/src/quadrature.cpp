#include "fractal/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fractal {

void QuadratureConfig::validate() const {
    if (panels < 16)
        throw std::invalid_argument("QuadratureConfig: panels must be >= 16");
    if (!(truncation_tail > 0.0) || truncation_tail > 1e-6)
        throw std::invalid_argument("QuadratureConfig: truncation_tail must be in (0, 1e-6]");
}

namespace {

// One tanh-sinh node: abscissa offset from the nearer endpoint and weight.
// Computing the endpoint distance as 2/(1+e^{2y}) keeps full relative
// accuracy where the integrand may be singular.
struct TsNode {
    double dist; // distance from the endpoint, in [-1,1] coordinates
    double weight;
};

TsNode ts_node(double t) {
    const double s = std::sinh(t);
    const double c = std::cosh(t);
    const double y = (M_PI / 2.0) * s;
    TsNode n;
    n.dist = 2.0 / (1.0 + std::exp(2.0 * y));                     // 1 - tanh(y)
    n.weight = (M_PI / 2.0) * c / std::pow(std::cosh(y), 2);
    return n;
}

} // namespace

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           int levels) {
    if (!(b > a))
        return 0.0;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double tmax = 6.0;

    double h = 1.0;
    double sum = (M_PI / 2.0) * f(mid); // t = 0 node, weight pi/2
    {
        for (double t = h; t <= tmax; t += h) {
            const TsNode n = ts_node(t);
            const double xp = b - half * n.dist;
            const double xm = a + half * n.dist;
            double fp = xp < b ? f(xp) : 0.0;
            double fm = xm > a ? f(xm) : 0.0;
            if (!std::isfinite(fp)) fp = 0.0;
            if (!std::isfinite(fm)) fm = 0.0;
            sum += n.weight * (fp + fm);
        }
        sum *= h;
    }
    double previous = sum;
    for (int level = 1; level <= levels; ++level) {
        h *= 0.5;
        double level_sum = 0.0;
        // odd multiples of h are the new nodes at this level
        for (double t = h; t <= tmax; t += 2.0 * h) {
            const TsNode n = ts_node(t);
            const double xp = b - half * n.dist;
            const double xm = a + half * n.dist;
            double fp = xp < b ? f(xp) : 0.0;
            double fm = xm > a ? f(xm) : 0.0;
            if (!std::isfinite(fp)) fp = 0.0;
            if (!std::isfinite(fm)) fm = 0.0;
            level_sum += n.weight * (fp + fm);
        }
        sum = 0.5 * sum + h * level_sum;
        if (level >= 6 && std::abs(sum - previous) <= 1e-15 * (std::abs(sum) + 1e-300))
            break;
        previous = sum;
    }
    return sum * half;
}

double integrate_trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
    if (!(b > a))
        return 0.0;
    if (n < 1)
        throw std::invalid_argument("integrate_trapezoid: need at least one panel");
    const double h = (b - a) / n;
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i)
        sum += f(a + i * h);
    return sum * h;
}

} // namespace fractal
