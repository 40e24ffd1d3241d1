#pragma once

// Tail constants n^p s_n -> C, extrapolation in the truncation degree, the
// boundary-integral constant of the commutator asymptotics, and the S_u bound profile.

#include <string>
#include <vector>

#include "bergman/operators.hpp"

namespace bergman {

/// (sqrt(alpha+1) / 2 pi) * integral over the unit circle of sqrt(nu^2 + |U'(z)|^2) |dz|,
/// uniform-angle rule with quad_points nodes.
double theorem_constant(const SymbolU& u, double alpha, int quad_points = 256);

struct TailFit {
    double p = 1;
    int n1 = 0, n2 = 0;        // 1-based indices, inclusive
    double estimate = 0;       // C
    double correction = 0;     // D
    double error_estimate = 0; // standard error of C from the residuals
    double max_residual = 0;   // max |s_n - model| / s_n over the window
};

/// Least squares s_n ~ C / n^p + D / n^(p+1) over n in [n1, n2] (1-based).
TailFit fit_tail(const std::vector<double>& s, double p, int n1, int n2);

/// phi(x) = (2 / log r) x log x and its inverse exp(W(p log(r) / 2)).
double phi(double x, double r);
double phi_inverse(double p, double r);

struct BoundPoint {
    double p = 0;
    double phi_inv = 0;
    double bound = 0;  // 1 / phi^{-1}(p)^2
    double round_trip_error = 0;
};

std::vector<BoundPoint> su_bound_profile(double r, const std::vector<double>& p_values);

struct Extrapolation {
    double value = 0;
    double slope = 0;     // coefficient of 1/d
    double residual = 0;  // |model - value| at the remaining (smallest) degree, 0 if none
};

/// C(d) = C_inf + a/d through the two largest degrees; any smaller degree is a residual check.
Extrapolation richardson(const std::vector<int>& degrees, const std::vector<double>& values);

struct StudyOptions {
    std::vector<int> degrees;
    std::vector<int> radial_cutoffs;  // one per degree, or a single value for all
    double window_lo = 0.25;          // window [lo d, hi d] in Schmidt-index units
    double window_hi = 0.75;
    bool keep_spectra = false;
};

struct TheoremReport {
    double alpha = 0;
    SymbolU symbol;
    std::vector<int> degrees;
    std::vector<int> radial_cutoffs;
    std::vector<std::pair<int, int>> windows;  // merged-index windows
    std::vector<TailFit> fits;
    Extrapolation extrapolated;
    double theorem_constant = 0;
    int multiplicity = 0;
    double adjusted_constant = 0;
    double ratio = 0;           // extrapolated / theorem_constant (NaN when the latter is 0)
    double adjusted_ratio = 0;  // extrapolated / adjusted_constant
    double runtime_sec = 0;
    std::vector<std::vector<double>> spectra;  // only with keep_spectra
};

/// Assembles the commutator at each degree, fits the merged spectrum n s_n on the window
/// scaled by the family multiplicity, and extrapolates in 1/d.
TheoremReport convergence_study(const SymbolU& u, double alpha, const StudyOptions& opt);

}  // namespace bergman
