#pragma once

// Explicit function families and coefficient sequences on L^2(D, dA_alpha):
// the normalized monomials e_n, the E-family varphi_n, the Q-family phi_n,
// the log-corrected h_n, and the scalar sequences b_n, c_n, x_n, t_n.
//
// Functions are LogPolynomials: finite sums of z^m zbar^n and log|z|^2 z^m zbar^n.
// Inner products are evaluated exactly from closed-form moments in long double,
// since the normalized families cancel heavily (terms of size ~n^4 summing to 1).

#include <complex>
#include <map>
#include <utility>

namespace bergman {

using cld = std::complex<long double>;

class LogPolynomial {
public:
    using Terms = std::map<std::pair<int, int>, cld>;

    LogPolynomial() = default;

    /// Adds c * (log|z|^2)^logpow z^m zbar^n, logpow in {0, 1}.
    LogPolynomial& add(int m, int n, cld c, int logpow = 0);

    const Terms& poly() const { return poly_; }
    const Terms& logpoly() const { return logpoly_; }
    bool empty() const { return poly_.empty() && logpoly_.empty(); }

    LogPolynomial conj() const;
    LogPolynomial& operator+=(const LogPolynomial& o);
    LogPolynomial& operator-=(const LogPolynomial& o);
    LogPolynomial& operator*=(cld s);
    /// Multiply by log|z|^2; throws if the result would need (log)^2 terms.
    LogPolynomial times_log() const;

    /// Value at z (z != 0 when log terms are present).
    std::complex<double> operator()(std::complex<double> z) const;

private:
    Terms poly_, logpoly_;
};

LogPolynomial operator+(LogPolynomial a, const LogPolynomial& b);
LogPolynomial operator-(LogPolynomial a, const LogPolynomial& b);
LogPolynomial operator*(cld s, LogPolynomial a);

/// <f, g> on the full disk with respect to dA_alpha.
cld inner(const LogPolynomial& f, const LogPolynomial& g, double alpha);
long double norm(const LogPolynomial& f, double alpha);

/// sqrt((alpha+2)_n / n!) z^n.
LogPolynomial e_fn(int n, double alpha);

/// The normalized function whose conjugate partners carry the E-lemma Schmidt pairs (n >= 2).
LogPolynomial varphi_fn(int n, double alpha);

/// Normalized (|w|^2 - (n+1)/(alpha+n+2)) w^n  (n >= 0).
LogPolynomial phi_fn(int n, double alpha);

/// h_n = ((nu log|z|^2 - x_n) e_{n+1} - conj(a) c_n phi_n) / t_n.
LogPolynomial h_fn(int n, double alpha, std::complex<double> a, double nu);

/// Un-normalized h-vector (the bracket in h_n).
LogPolynomial h_vector(int n, double alpha, std::complex<double> a, double nu);

double b_closed(int n, double alpha);
double b_via_sum(int n, double alpha);
double c_coeff(int n, double alpha);

/// <nu log|z|^2 e_{n+1}, e_{n+1}> from the moment engine.
double x_mean(int n, double alpha, double nu);
/// Closed form nu (psi(n+2) - psi(n+alpha+3)).
double x_mean_closed(int n, double alpha, double nu);
/// The trigamma expression nu (psi'(n+1) - psi'(n+alpha+2)) as printed in the source display.
double x_mean_display(int n, double alpha, double nu);

/// sqrt(|a|^2 c_n^2 + nu^2 (psi'(n+2) - psi'(n+alpha+3))).
double t_coeff(int n, double alpha, std::complex<double> a, double nu);
/// Same with the trigamma difference squared, as printed in the source display.
double t_coeff_display(int n, double alpha, std::complex<double> a, double nu);
/// Norm of h_vector from the moment engine.
double t_coeff_exact(int n, double alpha, std::complex<double> a, double nu);

}  // namespace bergman
