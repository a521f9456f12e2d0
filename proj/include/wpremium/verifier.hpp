#pragma once

// Numerical verification of the structural properties behind premium
// monotonicity.  Writing L = -log w, the central property is submodularity of
// L (equivalently: log-supermodularity of w), checked three independent ways:
// a finite-difference mixed partial, the four-point lattice inequality, and
// monotonicity of the slice ratio w(lambda, .)/w(theta, .).  The remaining
// checks cover the scalar inequalities used to prove the W4/W7 cases and the
// standing assumptions (lambda direction, slice separation, anchor point).
//
// Grid sweeps store one result per point and reduce serially in index order,
// so Serial and Parallel policies agree bit for bit.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpremium/loss_model.hpp"
#include "wpremium/parallel.hpp"
#include "wpremium/weight_family.hpp"

namespace wpremium {

struct GridSpec {
    double lambda_min = 1e-2;
    double lambda_max = 10.0;
    int lambda_points = 64;
    double x_min = 1e-2;
    double x_max = 10.0;
    int x_points = 64;
    bool log_spaced = true;

    std::vector<double> lambda_grid() const;
    std::vector<double> x_grid() const;
    std::string describe() const;
};

// Log- or linearly-spaced axis for the scalar inequality checks.
std::vector<double> log_spaced(double lo, double hi, int points);

struct CheckReport {
    std::string property;
    bool pass = false;
    // For "must be <= 0" checks: the most positive value seen.  For strict
    // "must be > 0" checks: the smallest margin seen (pass requires > 0).
    double worst_violation = 0.0;
    std::vector<std::pair<std::string, double>> worst_location;
    std::string grid;
    double tolerance = 0.0;
    long points_checked = 0;
    long points_skipped = 0;
    std::string note;
};

struct FdSteps {
    double lambda_rel = 1e-4;  // h = max(lambda_rel * lambda, floor)
    double x_rel = 1e-4;       // k = max(x_rel * x, floor)
    double floor = 1e-7;
};

// Centered cross-difference estimate of d^2 L / (dlambda dx) at one point,
// L = -eval_log.  Submodularity requires it to be <= 0.
double mixed_partial_estimate(const WeightFamily& family, double lambda, double x,
                              const FdSteps& steps = {});

// Sweeps the estimate over the grid; points where any stencil value is not
// finite (zero weight under an indicator family) are skipped.  Throws
// GridDegenerate when a step would exceed half the local grid spacing.
CheckReport mixed_partial_check(const WeightFamily& family, const GridSpec& grid = {},
                                double tol = 1e-6, const FdSteps& steps = {},
                                ExecPolicy policy = ExecPolicy::Parallel);

// Four-point inequality w(theta,x1) w(lambda,x2) >= w(theta,x2) w(lambda,x1)
// for theta <= lambda, x1 <= x2, compared in log scale.  Quadruples: every
// adjacent pair combination on a 16x16 subgrid plus `random_quadruples`
// log-uniform draws from a fixed-seed generator.
CheckReport lattice_check(const WeightFamily& family, const GridSpec& grid = {},
                          double tol = 1e-9, int random_quadruples = 200,
                          unsigned seed = 42, ExecPolicy policy = ExecPolicy::Parallel);

// Monotonicity of h(x) = w(lambda, x)/w(theta, x) (h = 0 where the reference
// slice vanishes) along the sorted grid.  Throws AllZeroWeights when
// w(theta, .) vanishes on the entire grid.
CheckReport ratio_monotone_check(const WeightFamily& family, double theta, double lambda,
                                 const std::vector<double>& x_grid, double tol = 1e-9);

// Strict chain (y+1) log(y+1) > y > log(y+1) for y > 0.
CheckReport log_bound_chain_check(const std::vector<double>& y_grid);

// Strict chain  (e^y - (ly+1)^{1/l}) / (ly+1)^{1/l}
//                 > y (1 - ly / ((ly+1) log(ly+1))) > 0.
// The two sides are exposed for spot checks.
double rel_error_lhs(double lambda, double y);
double rel_error_rhs(double lambda, double y);
CheckReport rel_error_bound_check(const std::vector<double>& lambda_grid,
                                  const std::vector<double>& y_grid,
                                  ExecPolicy policy = ExecPolicy::Parallel);

// The two polynomial-exponential expressions whose positivity forces the
// sign of the W4 and W7 mixed partials, evaluated on their natural variables.
double w4_sign_surface_x(double lambda, double x);  // W4 surface in (lambda, x)
double w4_sign_surface_y(double lambda, double y);  // same via y = ((1+x)^l - 1)/l
double w7_sign_surface(double y);                   // W7 surface in y = x + lambda

CheckReport w4_surface_positivity_check(const std::vector<double>& lambda_grid,
                                        const std::vector<double>& y_grid,
                                        ExecPolicy policy = ExecPolicy::Parallel);
CheckReport w7_surface_positivity_check(const std::vector<double>& y_grid);

// Combined report over both surfaces (relative margins, so the two share
// units); `lambda_grid` x `y_grid` for the W4 surface, `y_grid` for W7.
CheckReport sign_surface_positivity_check(const std::vector<double>& lambda_grid,
                                          const std::vector<double>& y_grid,
                                          ExecPolicy policy = ExecPolicy::Parallel);

struct AssumptionAuditReport {
    CheckReport lambda_direction;  // profile of lambda |-> w(lambda, x)
    CheckReport separation;        // slices may agree only on an F-null set
    CheckReport anchor;            // w = 1 at the family's anchor point
    bool pass = false;
    std::string note;
};

// Audits the three standing assumptions for a concrete (theta, lambda) pair
// over a concrete model.  Failures are reported, not thrown.
AssumptionAuditReport assumption_audit(const WeightFamily& family, const LossModel& model,
                                       double theta, double lambda,
                                       const GridSpec& grid = {});

}  // namespace wpremium
