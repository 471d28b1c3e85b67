#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fractal {

// The fractal sets we can represent: the real line itself (classical
// calculus, alpha = 1) or a self-similar Cantor family on [0,1] built by
// removing the middle fraction `removal_ratio` at every generation.
// The order alpha is the similarity dimension ln 2 / ln(2/(1-r)).
struct FractalSupport {
    enum class Kind { IdentityLine, CantorLike };
    Kind kind = Kind::IdentityLine;
    double removal_ratio = 1.0 / 3.0;
    double base_lower = 0.0;
    double base_upper = 1.0;
    double alpha = 1.0;

    static FractalSupport identity_line();
    static FractalSupport cantor(double removal_ratio = 1.0 / 3.0);

    // length fraction of each of the two kept children; exact for the
    // middle-third family so the digit map can use exact base-3 arithmetic
    double child_ratio() const {
        if (removal_ratio == 1.0 / 3.0)
            return 1.0 / 3.0;
        return 0.5 * (1.0 - removal_ratio);
    }

    void validate() const;
};

struct Partition {
    std::vector<double> points; // strictly increasing, first = x, last = y

    static Partition uniform(double x, double y, int cells);
    double mesh() const;
    void validate() const;
};

// Indicator of F intersecting the closed interval [lo, hi]. Endpoint
// touching counts: the closed gap [1/3, 2/3] meets the Cantor set.
int flag_value(const FractalSupport& support, double lo, double hi);

// Eq.-style flagged interval sum: sum over partition cells of
// (width^alpha / Gamma(alpha+1)) * flag. Zero when x >= y.
double sigma_alpha(const FractalSupport& support, const Partition& partition);

// Infimum of sigma_alpha over partitions with mesh <= delta, evaluated on
// construction-cell-aligned partitions at the depth implied by delta.
// Gap cells can be refined until their flagged edge slivers vanish, so the
// limit value counts kept cells only.
double coarse_mass(const FractalSupport& support, double x, double y, double delta);

struct MassResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// delta -> 0 limit of coarse_mass along a geometric delta sequence, with a
// convergence check on the last two levels.
MassResult mass_function(const FractalSupport& support, double x, double y,
                         double rel_tolerance = 1e-6, int max_depth = 24);

// The integral staircase S_F^alpha. IdentityLine: S(x) = x - origin.
// CantorLike: calibration times the exact digit-map devil's staircase,
// continued self-similarly beyond [0,1] and oddly for x < origin.
class Staircase {
  public:
    static Staircase build(const FractalSupport& support, double origin = 0.0);

    double eval(double x) const;
    // smallest x with S(x) = u (left endpoint of plateaus)
    double inverse(double u) const;

    const FractalSupport& support() const { return support_; }
    double origin() const { return origin_; }
    double calibration() const { return calibration_; }
    double alpha() const { return support_.alpha; }

    // CSV tabulation, header "x,S", uniform grid of `samples` points
    std::string tabulate_csv(double lo, double hi, int samples) const;

  private:
    Staircase() = default;
    FractalSupport support_;
    double origin_ = 0.0;
    double calibration_ = 1.0;
};

// Normalized devil's staircase on [0,1] for the given kept-child ratio
// (1/3 for the classical middle-third set). Digit-map evaluation, exact to
// rounding. Exposed for tests.
double devils_staircase(double x, double child_ratio = 1.0 / 3.0);
double devils_staircase_inverse(double y, double child_ratio = 1.0 / 3.0);

} // namespace fractal
