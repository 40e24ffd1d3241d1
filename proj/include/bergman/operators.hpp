#pragma once

// Finite-matrix assembly of integral operators  T f(z) = int f(w) k(z,w) K_alpha(z,w) dA_alpha(w)
// over a truncated orthonormal basis of L^2(D, dA_alpha).
//
// Every operator used here has a kernel factor k(z,w) = sum coef * A(z) B(w) with A, B of the
// form z^a zbar^b (log|z|^2)^l, so T = sum coef M_A P M_B. Because the basis is graded by
// frequency class and P maps class k onto the single harmonic function of class k, each
// term couples one source class to one target class through a rank-one block. No kernel
// series truncation is involved.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// u = U + conj(U) + nu log|z|^2 with U(z) = sum_{k>=1} coeffs[k-1] z^k.
struct SymbolU {
    std::vector<cd> coeffs;
    double nu = 0.0;

    int degree() const;
    bool is_constant() const { return degree() == 0 && nu == 0.0; }
    cd U(cd z) const;
    cd U_prime(cd z) const;
    /// Throws DomainError for nu < 0 or non-finite entries.
    void validate() const;
};

/// z^z zbar^zbar (log|z|^2)^log
struct Multiplier {
    int z = 0;
    int zbar = 0;
    int log = 0;

    int shift() const { return z - zbar; }
    Multiplier conj() const { return {zbar, z, log}; }
    bool operator==(const Multiplier&) const = default;
    auto operator<=>(const Multiplier&) const = default;
};

/// coef * A(z) * B(w)
struct KernelTerm {
    cd coef;
    Multiplier left;
    Multiplier right;
};

struct KernelSpec {
    std::string name;
    std::vector<KernelTerm> terms;

    /// Merges equal (left, right) pairs and drops zero coefficients.
    KernelSpec& simplify();
    KernelSpec& operator+=(const KernelSpec& o);
    KernelSpec scaled(cd s) const;
    int max_shift() const;
};

KernelSpec operator+(KernelSpec a, const KernelSpec& b);

/// Kernel of f -> conj(T conj f): conjugate coefficients, z <-> zbar.
KernelSpec conjugate_kernel(const KernelSpec& k);
/// Kernel of the Hilbert-space adjoint: coef A(z) B(w) -> conj(coef) conj(B)(z) conj(A)(w).
KernelSpec adjoint_kernel(const KernelSpec& k);

/// Coefficients of F_u(z,w) = (U(z) - U(w) - U'(w)(z-w)) / (z-w)^2 as {(i, j) -> coef of z^i w^j}.
using Bivariate = std::map<std::pair<int, int>, cd>;
Bivariate remainder_coeffs(const std::vector<cd>& coeffs);

enum class ModelKind { E, Estar, Q0, FrakQ, Rnu, Y, L, S };

struct ModelSpec {
    ModelKind kind = ModelKind::E;
    cd a = 0.0;
    double nu = 0.0;

    static ModelSpec E() { return {ModelKind::E}; }
    static ModelSpec Estar() { return {ModelKind::Estar}; }
    static ModelSpec Q0() { return {ModelKind::Q0}; }
    static ModelSpec FrakQ(cd a) { return {ModelKind::FrakQ, a}; }
    static ModelSpec Rnu(double nu) { return {ModelKind::Rnu, 0.0, nu}; }
    static ModelSpec Y(cd a, double nu) { return {ModelKind::Y, a, nu}; }
    static ModelSpec L() { return {ModelKind::L}; }
    static ModelSpec S() { return {ModelKind::S}; }
    std::string name() const;
};

KernelSpec model_kernel(const ModelSpec& spec, const SymbolU* u = nullptr);
KernelSpec commutator_kernel(const SymbolU& u);

/// One frequency class of the truncated basis. The class-k vectors are
/// beta_{k,i} = q_{k,i}(|z|^2) zeta_k with zeta_k = z^k (k >= 0) or zbar^{-k},
/// q_{k,i} = sum_j coef(i,j) p_j where p_j are the orthonormal recurrence
/// polynomials for (alpha+1) t^|k| (1-t)^alpha.
struct BasisClass {
    int k = 0;
    int count = 0;
    int offset = 0;
    quad::JacobiRecurrence rec;
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> coef;
};

class BasisSet {
public:
    double alpha() const { return alpha_; }
    int degree() const { return d_; }
    int radial_cutoff() const { return r0_; }
    int dim() const { return dim_; }

    const BasisClass& cls(int k) const { return classes_.at(std::size_t(k + d_)); }
    bool has_class(int k) const { return k >= -d_ && k <= d_; }
    int index(int k, int i) const { return cls(k).offset + i; }
    /// (k, i) for a flat index.
    std::pair<int, int> locate(int idx) const;

    /// q_{k,0..count-1}(t)
    void radial_values(int k, long double t, long double* out) const;
    cd evaluate(int idx, cd z) const;

    /// Coefficient of zeta_k in the unit-norm harmonic function of class k (any integer k).
    double harmonic_norm(int k) const;

    friend BasisSet build_basis(double alpha, int d, int r0);

private:
    double alpha_ = 0;
    int d_ = 0, r0_ = 0, dim_ = 0;
    std::vector<BasisClass> classes_;
};

/// Orthonormal basis, classes -d..d, min(r0, d+1-|k|) radial vectors per class.
/// Throws DomainError when a Cholesky pivot falls below 1e-13.
BasisSet build_basis(double alpha, int d, int r0);

struct OperatorMatrix {
    CMatrix entries;
    double alpha = 0;
    int degree = 0;
    int radial_cutoff = 0;
    std::string spec;
    /// (source class, target class) pairs that may carry nonzero entries.
    std::vector<std::pair<int, int>> couplings;
};

OperatorMatrix projection_matrix(const BasisSet& basis);

/// Kernel-path assembly, OpenMP-parallel over target classes.
OperatorMatrix assemble_kernel(const KernelSpec& kernel, const BasisSet& basis);
/// Entry-by-entry reference of the same computation (serial, no tabulation reuse).
OperatorMatrix assemble_kernel_serial(const KernelSpec& kernel, const BasisSet& basis);

OperatorMatrix assemble_model(const ModelSpec& spec, const BasisSet& basis, const SymbolU* u = nullptr);
OperatorMatrix assemble_commutator_kernel(const SymbolU& u, const BasisSet& basis);
/// M_u^V P_V - P_V M_u^V from the multiplication matrix of u on the basis.
OperatorMatrix assemble_commutator_projection(const SymbolU& u, const BasisSet& basis);

/// <u beta_q, beta_p> for u = sum coef * multiplier.
OperatorMatrix multiplication_matrix(const std::vector<std::pair<cd, Multiplier>>& u, const BasisSet& basis);

/// Conjugate transpose.
OperatorMatrix adjoint(const OperatorMatrix& m);
/// Matrix of f -> conj(T conj f): class permutation k <-> -k plus complex conjugation.
OperatorMatrix conjugate(const OperatorMatrix& m, const BasisSet& basis);

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace bergman
