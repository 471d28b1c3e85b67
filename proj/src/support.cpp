#include "fractal/support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fractal {

FractalSupport FractalSupport::identity_line() {
    FractalSupport s;
    s.kind = Kind::IdentityLine;
    s.alpha = 1.0;
    return s;
}

FractalSupport FractalSupport::cantor(double removal_ratio) {
    FractalSupport s;
    s.kind = Kind::CantorLike;
    s.removal_ratio = removal_ratio;
    s.base_lower = 0.0;
    s.base_upper = 1.0;
    // similarity dimension: two copies scaled by (1-r)/2
    s.alpha = std::log(2.0) / std::log(2.0 / (1.0 - removal_ratio));
    s.validate();
    return s;
}

void FractalSupport::validate() const {
    if (!(base_lower < base_upper))
        throw std::invalid_argument("FractalSupport: base interval must be nonempty");
    if (kind == Kind::IdentityLine) {
        if (alpha != 1.0)
            throw std::invalid_argument("FractalSupport: identity line requires alpha = 1");
    } else {
        if (!(removal_ratio > 0.0 && removal_ratio < 1.0))
            throw std::invalid_argument("FractalSupport: removal_ratio must lie in (0,1)");
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("FractalSupport: alpha must lie in (0,1]");
    }
}

Partition Partition::uniform(double x, double y, int cells) {
    if (!(x < y) || cells < 1)
        throw std::invalid_argument("Partition::uniform: need x < y and at least one cell");
    Partition p;
    p.points.resize(cells + 1);
    for (int i = 0; i <= cells; ++i)
        p.points[i] = x + (y - x) * i / cells;
    p.points.back() = y;
    return p;
}

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        m = std::max(m, points[i + 1] - points[i]);
    return m;
}

void Partition::validate() const {
    if (points.size() < 2)
        throw std::invalid_argument("Partition: need at least two points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("Partition: points must be strictly increasing");
}

namespace {

// Cantor-set intersection test on [0,1] coordinates, by descending the
// construction. Each step rescales the interval by 1/l, so either an
// endpoint of the construction lands inside or the interval shrinks into
// a gap within double precision.
int cantor_flag(double lo, double hi, double l) {
    for (int depth = 0; depth < 80; ++depth) {
        if (lo <= 0.0 || hi >= 1.0)
            return 1;
        const double gap_lo = l, gap_hi = 1.0 - l;
        if (hi <= gap_lo) {
            lo /= l;
            hi /= l;
        } else if (lo >= gap_hi) {
            lo = (lo - gap_hi) / l;
            hi = (hi - gap_hi) / l;
        } else if (lo > gap_lo && hi < gap_hi) {
            return 0; // inside the open removed gap
        } else {
            return 1; // contains a gap endpoint, which belongs to the set
        }
    }
    return 1; // point-like interval that survived every generation
}

} // namespace

int flag_value(const FractalSupport& support, double lo, double hi) {
    if (!(lo <= hi))
        throw std::invalid_argument("flag_value: interval lower must be <= upper");
    if (support.kind == FractalSupport::Kind::IdentityLine)
        return 1;
    lo = std::max(lo, support.base_lower);
    hi = std::min(hi, support.base_upper);
    if (lo > hi)
        return 0;
    return cantor_flag(lo, hi, support.child_ratio());
}

double sigma_alpha(const FractalSupport& support, const Partition& partition) {
    partition.validate();
    if (!(partition.points.front() < partition.points.back()))
        return 0.0;
    const double a = support.alpha;
    const double norm = std::tgamma(a + 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < partition.points.size(); ++i) {
        const double lo = partition.points[i];
        const double hi = partition.points[i + 1];
        if (flag_value(support, lo, hi))
            sum += std::pow(hi - lo, a);
    }
    return sum / norm;
}

namespace {

// alpha-sum of depth-`rem` kept construction cells of [c0,c1] clipped to
// [x,y]. Full cells are counted in closed form, so only the two boundary
// paths are descended.
double kept_cell_sum(const FractalSupport& support, double c0, double c1, int rem, double x,
                     double y) {
    if (c1 <= x || c0 >= y)
        return 0.0;
    const double l = support.child_ratio();
    const double a = support.alpha;
    if (c0 >= x && c1 <= y)
        return std::exp2(static_cast<double>(rem)) *
               std::pow((c1 - c0) * std::pow(l, rem), a);
    if (rem == 0) {
        const double lo = std::max(c0, x), hi = std::min(c1, y);
        if (!(hi > lo))
            return 0.0;
        if (!flag_value(support, lo, hi))
            return 0.0;
        return std::pow(hi - lo, a);
    }
    const double w = (c1 - c0) * l;
    return kept_cell_sum(support, c0, c0 + w, rem - 1, x, y) +
           kept_cell_sum(support, c1 - w, c1, rem - 1, x, y);
}

} // namespace

double coarse_mass(const FractalSupport& support, double x, double y, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("coarse_mass: delta must be positive");
    if (!(x < y))
        return 0.0;
    if (support.kind == FractalSupport::Kind::IdentityLine)
        return y - x; // every flag is 1 and the alpha=1 sum telescopes
    const double l = support.child_ratio();
    int depth = static_cast<int>(std::ceil(std::log(1.0 / delta) / std::log(1.0 / l)));
    depth = std::clamp(depth, 0, 48);
    const double cx = std::max(x, support.base_lower);
    const double cy = std::min(y, support.base_upper);
    if (!(cy > cx))
        return 0.0;
    return kept_cell_sum(support, support.base_lower, support.base_upper, depth, cx, cy) /
           std::tgamma(support.alpha + 1.0);
}

MassResult mass_function(const FractalSupport& support, double x, double y, double rel_tolerance,
                         int max_depth) {
    if (!(x <= y))
        throw std::invalid_argument("mass_function: need x <= y");
    if (x == y)
        return {0.0, 0.0};
    if (support.kind == FractalSupport::Kind::IdentityLine)
        return {y - x, 0.0};
    const double l = support.child_ratio();
    double prev = coarse_mass(support, x, y, 1.0);
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_depth; ++k) {
        const double cur = coarse_mass(support, x, y, std::pow(l, k));
        const double diff = cur - prev;
        // refinement only bites every few levels when the endpoint digits
        // repeat, so a single zero increment proves nothing: require two
        // consecutive small ones
        const double tol = rel_tolerance * std::max(std::abs(cur), 1e-300);
        if (std::abs(diff) <= tol && std::abs(prev_diff) <= tol) {
            // geometric extrapolation of the remaining tail when the ratio
            // of successive increments is stable
            double value = cur;
            if (prev_diff != 0.0 && std::isfinite(prev_diff)) {
                const double rho = diff / prev_diff;
                if (rho > 0.0 && rho < 0.9)
                    value = cur + diff * rho / (1.0 - rho);
            }
            return {value, std::max(std::abs(diff), std::abs(prev_diff))};
        }
        prev = cur;
        prev_diff = diff;
    }
    throw std::runtime_error("mass_function: no convergence within max depth");
}

double devils_staircase(double x, double child_ratio) {
    const double l = child_ratio;
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    double value = 0.0, scale = 1.0;
    if (l == 1.0 / 3.0) {
        // middle-third digits via y = 3x: exact arithmetic on the 0/2 digit
        // branches, so triadic identities like D(x/3) = D(x)/2 hold to the ulp
        for (int i = 0; i < 120; ++i) {
            if (x <= 0.0)
                return value;
            if (x >= 1.0)
                return value + scale;
            const double y = 3.0 * x;
            if (y < 1.0) {
                x = y;
                scale *= 0.5;
            } else if (y <= 2.0) {
                return value + 0.5 * scale;
            } else {
                value += 0.5 * scale;
                x = y - 2.0;
                scale *= 0.5;
            }
        }
        return value;
    }
    for (int i = 0; i < 120; ++i) {
        if (x <= 0.0)
            return value;
        if (x >= 1.0)
            return value + scale;
        if (x < l) {
            x /= l;
            scale *= 0.5;
        } else if (x <= 1.0 - l) {
            return value + 0.5 * scale;
        } else {
            value += 0.5 * scale;
            x = (x - (1.0 - l)) / l;
            scale *= 0.5;
        }
    }
    return value;
}

double devils_staircase_inverse(double y, double child_ratio) {
    const double l = child_ratio;
    if (y <= 0.0)
        return 0.0;
    if (y >= 1.0)
        return 1.0;
    double x = 0.0, len = 1.0;
    for (int i = 0; i < 120; ++i) {
        if (y <= 0.0)
            return x;
        if (y >= 1.0)
            return x + len;
        if (y < 0.5) {
            y *= 2.0;
            len *= l;
        } else if (y == 0.5) {
            return x + len * l; // left endpoint of the central plateau
        } else {
            x += len * (1.0 - l);
            y = 2.0 * y - 1.0;
            len *= l;
        }
    }
    return x;
}

namespace {

// Self-similar continuation of the normalized staircase to [0, inf):
// R(b x) = 2 R(x) with b = 1/l, agreeing with the devil's staircase on [0,1].
double staircase_raw(double x, double l) {
    if (x <= 0.0)
        return x < 0.0 ? -staircase_raw(-x, l) : 0.0;
    const double b = 1.0 / l;
    int k = 0;
    double scale = 1.0;
    while (x > 1.0 && k < 2048) {
        x *= l;
        scale *= 2.0;
        ++k;
    }
    return scale * devils_staircase(x, l);
}

double staircase_raw_inverse(double y, double l) {
    if (y <= 0.0)
        return y < 0.0 ? -staircase_raw_inverse(-y, l) : 0.0;
    const double b = 1.0 / l;
    double scale = 1.0, len = 1.0;
    while (y > scale)
        scale *= 2.0, len *= b;
    return len * devils_staircase_inverse(y / scale, l);
}

} // namespace

Staircase Staircase::build(const FractalSupport& support, double origin) {
    support.validate();
    Staircase st;
    st.support_ = support;
    st.origin_ = origin;
    if (support.kind == FractalSupport::Kind::CantorLike)
        st.calibration_ =
            mass_function(support, support.base_lower, support.base_upper).value;
    return st;
}

double Staircase::eval(double x) const {
    if (support_.kind == FractalSupport::Kind::IdentityLine)
        return x - origin_;
    const double l = support_.child_ratio();
    return calibration_ * (staircase_raw(x, l) - staircase_raw(origin_, l));
}

double Staircase::inverse(double u) const {
    if (!std::isfinite(u))
        throw std::invalid_argument("Staircase::inverse: u outside range");
    if (support_.kind == FractalSupport::Kind::IdentityLine)
        return u + origin_;
    const double l = support_.child_ratio();
    const double y = u / calibration_ + staircase_raw(origin_, l);
    return staircase_raw_inverse(y, l);
}

std::string Staircase::tabulate_csv(double lo, double hi, int samples) const {
    if (!(lo < hi) || samples < 2)
        throw std::invalid_argument("tabulate_csv: need lo < hi and at least two samples");
    std::string out = "x,S\n";
    char buf[80];
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x, eval(x));
        out += buf;
    }
    return out;
}

} // namespace fractal
