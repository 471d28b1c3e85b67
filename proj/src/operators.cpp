#include "fractal/operators.hpp"

#include "fractal/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fractal {

SampledFunction SampledFunction::from_descriptor(const FunctionDescriptor& d, const Staircase& st,
                                                 double t_lo, double t_hi, int samples) {
    if (!(t_lo < t_hi) || samples < 2)
        throw std::invalid_argument("SampledFunction: need t_lo < t_hi and >= 2 samples");
    SampledFunction f;
    const double u_lo = st.eval(t_lo), u_hi = st.eval(t_hi);
    f.t_grid.resize(samples);
    f.u_grid.resize(samples);
    f.values.resize(samples);
    for (int i = 0; i < samples; ++i) {
        const double u = u_lo + (u_hi - u_lo) * i / (samples - 1);
        f.u_grid[i] = u;
        f.t_grid[i] = st.inverse(u);
        f.values[i] = eval_u(d, u);
    }
    return f;
}

void SampledFunction::validate() const {
    if (u_grid.size() < 2 || u_grid.size() != values.size() || u_grid.size() != t_grid.size())
        throw std::invalid_argument("SampledFunction: inconsistent grids");
    for (std::size_t i = 0; i + 1 < u_grid.size(); ++i)
        if (!(u_grid[i] < u_grid[i + 1]))
            throw std::invalid_argument("SampledFunction: u grid must be increasing");
}

double SampledFunction::u_step() const { return u_grid[1] - u_grid[0]; }

double local_fderivative(const FunctionDescriptor& d, const Staircase& st, double t) {
    return eval_u_derivative(d, st.eval(t), 1);
}

double local_fderivative(const SampledFunction& f, std::size_t i) {
    f.validate();
    const std::size_t n = f.u_grid.size();
    if (i >= n)
        throw std::out_of_range("local_fderivative: index out of range");
    if (i == 0)
        return (f.values[1] - f.values[0]) / (f.u_grid[1] - f.u_grid[0]);
    if (i == n - 1)
        return (f.values[n - 1] - f.values[n - 2]) / (f.u_grid[n - 1] - f.u_grid[n - 2]);
    return (f.values[i + 1] - f.values[i - 1]) / (f.u_grid[i + 1] - f.u_grid[i - 1]);
}

double fractal_integral(const FunctionDescriptor& d, const Staircase& st, double a, double b) {
    const double ua = st.eval(a), ub = st.eval(b);
    if (ub == ua)
        return 0.0;
    const double sgn = ub > ua ? 1.0 : -1.0;
    const double lo = std::min(ua, ub), hi = std::max(ua, ub);
    return sgn * integrate_tanh_sinh([&](double u) { return eval_u(d, u); }, lo, hi, 10);
}

namespace {

// quadratically graded nodes on [0, X]; resolves integrand singularities at 0
std::vector<double> graded_nodes(double X, int n) {
    std::vector<double> u(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) / n;
        u[i] = X * r * r;
    }
    u.back() = X;
    return u;
}

// int_0^X (X-u)^{q-1} g(u) du with piecewise-linear g on the given nodes,
// kernel moments integrated exactly per panel.
double power_kernel_product(const std::vector<double>& u, const std::vector<double>& g, double X,
                            double q) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double h = u[i + 1] - u[i];
        if (h <= 0.0)
            continue;
        const double a = X - u[i + 1]; // near side of the kernel
        const double b = X - u[i];
        const double m0 = (std::pow(b, q) - std::pow(a, q)) / q;
        const double m1 = (std::pow(b, q + 1.0) - std::pow(a, q + 1.0)) / (q + 1.0);
        // in w = X-u coordinates g interpolates g_i at w=b, g_{i+1} at w=a
        total += g[i] * (m1 - a * m0) / h + g[i + 1] * (b * m0 - m1) / h;
    }
    return total;
}

// int_0^X e^{-r (X-u)} g(u) du, exact exponential moments per panel.
double exp_kernel_product(const std::vector<double>& u, const std::vector<double>& g, double X,
                          double r) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double h = u[i + 1] - u[i];
        if (h <= 0.0)
            continue;
        const double ea = std::exp(-r * (X - u[i]));
        const double eb = std::exp(-r * (X - u[i + 1]));
        double e0, e1;
        if (r == 0.0) {
            e0 = h;
            e1 = 0.5 * (u[i + 1] * u[i + 1] - u[i] * u[i]);
        } else {
            e0 = (eb - ea) / r;
            e1 = (u[i + 1] * eb - u[i] * ea) / r - e0 / r;
        }
        total += g[i] * (u[i + 1] * e0 - e1) / h + g[i + 1] * (e1 - u[i] * e0) / h;
    }
    return total;
}

// Sample g on the nodes; a non-finite value at u=0 (integrable power
// singularity of the integrand) is replaced by a local power-law fit so the
// first tiny panel still integrates to the right order of magnitude.
std::vector<double> sample_with_singular_origin(const std::vector<double>& u,
                                                const std::function<double(double)>& g) {
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        v[i] = g(u[i]);
    if (!std::isfinite(v[0]) && u.size() > 2) {
        const double g1 = g(0.5 * u[1]);
        v[0] = std::isfinite(g1) ? 2.0 * g1 - v[1] : v[1];
        if (!std::isfinite(v[0]))
            v[0] = 0.0;
    }
    return v;
}

int ceil_order(double beta) {
    const int n = static_cast<int>(std::ceil(beta));
    return n < 1 ? 1 : n;
}

} // namespace

double rl_integral(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                   int panels) {
    if (!(beta > 0.0))
        throw std::invalid_argument("rl_integral: beta must be positive");
    const double X = st.eval(x);
    if (!(X > 0.0))
        throw std::invalid_argument("rl_integral: requires S(x) > S(0)");
    auto nodes = graded_nodes(X, panels);
    auto g = sample_with_singular_origin(nodes, [&](double u) { return eval_u(d, u); });
    return power_kernel_product(nodes, g, X, beta) / std::tgamma(beta);
}

namespace {

double rl_integral_u(const FunctionDescriptor& d, double beta, double X, int panels) {
    auto nodes = graded_nodes(X, panels);
    auto g = sample_with_singular_origin(nodes, [&](double u) { return eval_u(d, u); });
    return power_kernel_product(nodes, g, X, beta) / std::tgamma(beta);
}

} // namespace

double rl_derivative(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                     int panels) {
    if (!(beta > 0.0))
        throw std::invalid_argument("rl_derivative: beta must be positive");
    const int n = ceil_order(beta);
    const double X = st.eval(x);
    if (!(X > 0.0))
        throw std::invalid_argument("rl_derivative: requires S(x) > S(0)");
    if (beta == static_cast<double>(n))
        return eval_u_derivative(d, X, n);
    auto I = [&](double upper) { return rl_integral_u(d, n - beta, upper, panels); };
    const double h = std::max(1e-5, 1e-4 * X);
    if (n == 1)
        return (I(X + h) - I(X - h)) / (2.0 * h);
    if (n == 2)
        return (I(X + h) - 2.0 * I(X) + I(X - h)) / (h * h);
    throw std::invalid_argument("rl_derivative: orders above 2 are not supported");
}

double caputo_derivative(const FunctionDescriptor& d, const Staircase& st, double beta, double x,
                         int panels) {
    if (!(beta > 0.0))
        throw std::invalid_argument("caputo_derivative: beta must be positive");
    const int n = ceil_order(beta);
    const double X = st.eval(x);
    if (!(X > 0.0))
        throw std::invalid_argument("caputo_derivative: requires S(x) > S(0)");
    if (beta == static_cast<double>(n))
        return eval_u_derivative(d, X, n);
    auto nodes = graded_nodes(X, panels);
    auto g = sample_with_singular_origin(nodes,
                                         [&](double u) { return eval_u_derivative(d, u, n); });
    return power_kernel_product(nodes, g, X, n - beta) / std::tgamma(n - beta);
}

double n_derivative(const FunctionDescriptor& d, const Staircase& st, double gamma, double x,
                    int panels) {
    if (!(gamma >= 0.0))
        throw std::invalid_argument("n_derivative: gamma must be nonnegative");
    const int n = static_cast<int>(std::floor(gamma)) + 1; // gamma in [n-1, n)
    const double X = st.eval(x);
    if (!(X > 0.0))
        throw std::invalid_argument("n_derivative: requires S(x) > S(0)");
    auto nodes = graded_nodes(X, panels);
    auto g = sample_with_singular_origin(nodes,
                                         [&](double u) { return eval_u_derivative(d, u, n); });
    return power_kernel_product(nodes, g, X, n - gamma) / std::tgamma(n - gamma);
}

std::pair<double, double> n_derivative_power_rule(double p, double gamma) {
    const int n = static_cast<int>(std::floor(gamma)) + 1;
    if (!(p > n - 1.0))
        return {0.0, 0.0};
    // Gamma(p+1)/Gamma(p-gamma+1) via the Beta-function identity
    const double coeff =
        fractal_beta(p - n + 1.0, n - gamma) * std::tgamma(p + 1.0) /
        (std::tgamma(n - gamma) * std::tgamma(p - n + 1.0));
    return {coeff, p - gamma};
}

double wsk_derivative(const FunctionDescriptor& d, const Staircase& st, double gamma,
                      double n_gamma, double x, int panels) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("wsk_derivative: gamma must lie in [0,1)");
    const double X = st.eval(x);
    if (!(X >= 0.0))
        throw std::invalid_argument("wsk_derivative: requires S(x) >= S(0)");
    if (gamma == 0.0) // kernel is identically 1; fundamental theorem in u
        return n_gamma * (eval_u(d, X) - eval_u(d, 0.0));
    if (X == 0.0)
        return 0.0;
    const double r = gamma / (1.0 - gamma);
    auto nodes = graded_nodes(X, panels);
    auto g = sample_with_singular_origin(nodes,
                                         [&](double u) { return eval_u_derivative(d, u, 1); });
    return n_gamma / (1.0 - gamma) * exp_kernel_product(nodes, g, X, r);
}

} // namespace fractal
