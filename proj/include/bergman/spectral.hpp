#pragma once

// Singular values of assembled operators, Schmidt-multiset predictions from the
// closed-form sequences, and checks of the Ky Fan / Weyl inequalities.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bergman/operators.hpp"

namespace bergman {

struct SingularSpectrum {
    std::vector<double> values;  // non-increasing
    std::string source;
    double alpha = 0;
    int degree = 0;
    int radial_cutoff = 0;
};

/// LAPACK divide-and-conquer bidiagonal SVD (values only).
std::vector<double> singular_values(const CMatrix& a);
SingularSpectrum singular_values(const OperatorMatrix& m);

/// Multiplicity of each closed-form family in the merged singular-value sequence,
/// pinned by brute-force SVD of a d = 12 full-radial assembly (see tests).
struct Multiplicities {
    static constexpr int E = 2;
    static constexpr int Q0 = 2;
    static constexpr int FrakQ = 4;
    static constexpr int Y = 4;
};

struct SchmidtPrediction {
    std::vector<std::pair<double, int>> family;  // (value, multiplicity)
    std::vector<double> head;
    std::string source;

    /// All predicted values, sorted non-increasing.
    std::vector<double> sorted() const;
};

/// Predicted multiset for spec in {E, Q0, FrakQ(a), Y(a, nu)} using family indices 0..count-1
/// (2..count+1 for E, 1..count for FrakQ whose n = 0 terms form the head). The E head is
/// measured once at d = 12. For Y with a != 0 and nu > 0 this is the closed-form t_n multiset
/// as stated; the h_n are not orthogonal there and the assembled spectrum departs from it.
SchmidtPrediction schmidt_multiset(const ModelSpec& spec, double alpha, int count);

struct MatchReport {
    int compared = 0;
    double max_error = 0;
};

/// Compares the first `count` entries of two non-increasing lists.
MatchReport match_sorted(const std::vector<double>& a, const std::vector<double>& b, int count);

/// Greedy multiset pairing: every value of `want` is paired with the nearest unused value of
/// `have` within tol. Returns the indices of `want` left unmatched.
std::vector<int> multiset_unmatched(const std::vector<double>& have, const std::vector<double>& want, double tol);

struct KyFanReport {
    double max_sum_violation = 0;
    double max_product_violation = 0;
    double max_sandwich_violation = 0;
    int rank_b = 0;
};

/// s_{n+m-1}(A+B) <= s_n(A) + s_m(B), s_{n+m-1}(AB) <= s_n(A) s_m(B), and when rank B = r,
/// s_{n+r}(A) <= s_n(A+B) <= s_{n-r}(A). Violations are reported as positive excess.
KyFanReport kyfan_verify(const CMatrix& a, const CMatrix& b, double rank_tol = 1e-12);

/// (sum_{n <= N} s_n^p)^(1/p)
double schatten_partial(double p, const std::vector<double>& s, std::size_t N);

}  // namespace bergman
