#pragma once

// Gauss rules on the radial variable t = |z|^2.
//
// The measure dA_alpha factors as (alpha+1)(1-t)^alpha dt dtheta/(2 pi), so every
// radial integral in the library is an integral against (alpha+1) t^c (1-t)^alpha dt
// on [0,1] or on a sub-interval [lo,1]. Rules are built by Golub-Welsch from the
// closed-form Jacobi recurrence and polished by Newton steps.

#include <cstddef>
#include <map>
#include <mutex>
#include <memory>
#include <vector>

namespace bergman::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss rule with an additional product-integration weight vector for the
/// log t factor. `log_weights` integrate p(t) log t exactly for polynomials
/// of degree < size().
struct LogRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;

    std::size_t size() const { return nodes.size(); }
};

/// Three-term recurrence of the monic orthogonal polynomials for the weight
/// t^c (1-t)^alpha on [0,1]: t p_j = p_{j+1} + diag[j] p_j + offdiag2[j] p_{j-1}.
/// offdiag2[0] holds the total mass of (alpha+1) t^c (1-t)^alpha dt.
struct JacobiRecurrence {
    std::vector<long double> diag;
    std::vector<long double> offdiag2;
};

JacobiRecurrence jacobi_recurrence(std::size_t n, double alpha, double c);

/// Values of the orthonormal polynomials p_0..p_{count-1} for the measure
/// (alpha+1) t^c (1-t)^alpha dt at the point t (positive leading coefficients).
void orthonormal_values(const JacobiRecurrence& rec, std::size_t count, long double t,
                        long double* out);

/// n-point Gauss rule for (alpha+1) t^c (1-t)^alpha dt on [0,1].
Rule gauss_jacobi(std::size_t n, double alpha, double c);

/// Same nodes with the product-integration log weights attached.
LogRule gauss_jacobi_log(std::size_t n, double alpha, double c);

/// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

/// n-point rule for (alpha+1)(1-t)^alpha dt on [lo, 1] (mapped Gauss-Jacobi).
/// Exact for polynomials of degree < 2n in t; smooth non-polynomial factors
/// (log t, half-integer powers) converge geometrically when lo > 0.
Rule interval_rule(std::size_t n, double alpha, double lo);

/// Rule for (alpha+1)(1-t)^alpha dt on [lo, 1] that stays accurate for integrands
/// with a log or branch singularity at t = 0 even when lo is tiny: geometric
/// panels [lo, 2lo], [2lo, 4lo], ... carry `panel_points` Gauss-Legendre nodes and
/// the final panel [b, 1] (b >= 1/4) carries a mapped Gauss-Jacobi rule with
/// `last_points` nodes.
Rule graded_interval_rule(double alpha, double lo, std::size_t last_points,
                          std::size_t panel_points);

/// Thread-safe memo of full-disk log rules keyed by the power c.
class LogRuleCache {
public:
    LogRuleCache(double alpha, std::size_t points) : alpha_(alpha), points_(points) {}

    const LogRule& get(int c);
    double alpha() const { return alpha_; }
    std::size_t points() const { return points_; }

private:
    double alpha_;
    std::size_t points_;
    std::mutex mutex_;
    std::map<int, std::unique_ptr<LogRule>> rules_;
};

}  // namespace bergman::quad
