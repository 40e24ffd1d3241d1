#pragma once

// Compressions M_L T M_R of kernel operators by region indicators (inner disk,
// annulus, sectors) on the global truncated basis.
//
// The functions chi_R beta_q leave every frequency class, so the harmonic sum
// behind P is no longer finite: it is cut at |m| <= harmonic_cutoff. For full-disk
// regions on both sides the cut is exact once harmonic_cutoff >= d + max shift.

#include "bergman/moments.hpp"
#include "bergman/operators.hpp"

namespace bergman {

/// <T chi_right beta_q, chi_left beta_p>
OperatorMatrix region_compress(const KernelSpec& kernel, const BasisSet& basis, const Region& left,
                               const Region& right, int harmonic_cutoff);

/// <chi_R beta_q, beta_p>, Hermitian positive semidefinite.
CMatrix region_gram(const BasisSet& basis, const Region& region);

/// Orthonormal basis of L^2(Sector(j, N), dA_alpha):
///   w_{k,i} = sqrt(N) e^{i N k theta} rho_{k,i}(t),  |k| <= K,  i < r0,
/// rho_{k,i} = t^{N|k|/2} p_{k,i}(t) with p_{k,i} orthonormal for (alpha+1) t^{N|k|} (1-t)^alpha
/// on [e^{-4 pi/N}, 1] (discrete Stieltjes on a graded rule).
/// Restrictions of the global polynomial basis to a sector are numerically dependent
/// (Gram condition ~1e16), so sector spectra are computed in this basis instead.
struct SectorBasis {
    double alpha = 0;
    int j = 1, N = 1, K = 0, r0 = 0;
    quad::Rule rule;  // radial rule on [lo, 1]
    /// Per class k = -K..K: recurrence t p_i = b_{i+1} p_{i+1} + a_i p_i + b_i p_{i-1}, b_0 = norm of 1.
    std::vector<std::vector<double>> a, b;
    /// rho values at the rule nodes: values[k + K](n, i)
    std::vector<Eigen::MatrixXd> values;

    int dim() const { return (2 * K + 1) * r0; }
    int index(int k, int i) const { return (k + K) * r0 + i; }
    Region region() const { return Region::sector(j, N); }
    /// rho_{k,0..r0-1}(t) by the recurrence (any t in [lo, 1]).
    void radial_values(int k, double t, double* out) const;
    cd evaluate(int idx, cd z) const;
};

/// K = ceil(d / N) reaches the same angular frequencies as a degree-d global basis.
SectorBasis build_sector_basis(double alpha, int j, int N, int K, int r0, int harmonic_cutoff);

/// Matrix of M_j T M_j in the sector basis, harmonic sum cut at |m| <= harmonic_cutoff.
OperatorMatrix sector_compress(const KernelSpec& kernel, const SectorBasis& sb, int harmonic_cutoff);

/// Default harmonic cutoff for sector work at degree d.
int default_harmonic_cutoff(int d);

}  // namespace bergman
