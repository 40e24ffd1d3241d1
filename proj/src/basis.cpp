#include "bergman/basis.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

#include "bergman/moments.hpp"
#include "bergman/specfun.hpp"

namespace bergman {

namespace {

using ld = long double;

void add_terms(LogPolynomial::Terms& dst, const LogPolynomial::Terms& src, cld scale) {
    for (const auto& [key, c] : src) {
        auto& slot = dst[key];
        slot += scale * c;
    }
}

void require_index(int n, int lo, const char* fn) {
    if (n < lo) throw DomainError(std::string(fn) + ": index below the family's range");
}

}  // namespace

LogPolynomial& LogPolynomial::add(int m, int n, cld c, int logpow) {
    if (m < 0 || n < 0) throw DomainError("LogPolynomial: negative exponent");
    if (logpow < 0 || logpow > 1) throw DomainError("LogPolynomial: log power must be 0 or 1");
    (logpow == 0 ? poly_ : logpoly_)[{m, n}] += c;
    return *this;
}

LogPolynomial LogPolynomial::conj() const {
    LogPolynomial r;
    for (const auto& [key, c] : poly_) r.poly_[{key.second, key.first}] = std::conj(c);
    for (const auto& [key, c] : logpoly_) r.logpoly_[{key.second, key.first}] = std::conj(c);
    return r;
}

LogPolynomial& LogPolynomial::operator+=(const LogPolynomial& o) {
    add_terms(poly_, o.poly_, 1);
    add_terms(logpoly_, o.logpoly_, 1);
    return *this;
}

LogPolynomial& LogPolynomial::operator-=(const LogPolynomial& o) {
    add_terms(poly_, o.poly_, -1);
    add_terms(logpoly_, o.logpoly_, -1);
    return *this;
}

LogPolynomial& LogPolynomial::operator*=(cld s) {
    for (auto& [key, c] : poly_) c *= s;
    for (auto& [key, c] : logpoly_) c *= s;
    return *this;
}

LogPolynomial LogPolynomial::times_log() const {
    if (!logpoly_.empty()) throw DomainError("LogPolynomial: (log|z|^2)^2 terms are not representable");
    LogPolynomial r;
    r.logpoly_ = poly_;
    return r;
}

std::complex<double> LogPolynomial::operator()(std::complex<double> z) const {
    const std::complex<double> zb = std::conj(z);
    std::complex<double> acc = 0;
    for (const auto& [key, c] : poly_)
        acc += std::complex<double>(c) * std::pow(z, key.first) * std::pow(zb, key.second);
    if (!logpoly_.empty()) {
        const double l = std::log(std::norm(z));
        for (const auto& [key, c] : logpoly_)
            acc += l * std::complex<double>(c) * std::pow(z, key.first) * std::pow(zb, key.second);
    }
    return acc;
}

LogPolynomial operator+(LogPolynomial a, const LogPolynomial& b) { return a += b; }
LogPolynomial operator-(LogPolynomial a, const LogPolynomial& b) { return a -= b; }
LogPolynomial operator*(cld s, LogPolynomial a) { return a *= s; }

cld inner(const LogPolynomial& f, const LogPolynomial& g, double alpha) {
    MeasureConfig cfg(alpha);
    cld acc = 0;
    const LogPolynomial::Terms* fs[2] = {&f.poly(), &f.logpoly()};
    const LogPolynomial::Terms* gs[2] = {&g.poly(), &g.logpoly()};
    for (int lf = 0; lf < 2; ++lf)
        for (int lg = 0; lg < 2; ++lg)
            for (const auto& [fk, fc] : *fs[lf])
                for (const auto& [gk, gc] : *gs[lg]) {
                    if (fk.first - fk.second != gk.first - gk.second) continue;
                    const ld s = ld(fk.first + fk.second + gk.first + gk.second) / 2;
                    acc += fc * std::conj(gc) * radial_moment_ext(s, alpha, lf + lg);
                }
    return acc;
}

long double norm(const LogPolynomial& f, double alpha) {
    return std::sqrt(std::max<ld>(0, inner(f, f, alpha).real()));
}

LogPolynomial e_fn(int n, double alpha) {
    require_index(n, 0, "e_fn");
    const ld A = alpha;
    const ld scale = std::exp(0.5L * (std::lgamma(A + 2 + n) - std::lgamma(A + 2) - std::lgamma(ld(n) + 1)));
    LogPolynomial r;
    r.add(n, 0, scale);
    return r;
}

LogPolynomial varphi_fn(int n, double alpha) {
    require_index(n, 2, "varphi_fn");
    const ld A = alpha, N = n;
    const ld log_poch = std::lgamma(A + 2 + N) - std::lgamma(A + 2) - std::lgamma(N + 1);
    const ld scale = std::exp(0.5L * (log_poch - std::log(ld(b_closed(n, alpha)))));
    LogPolynomial r;
    r.add(n, 2, scale);
    r.add(n - 1, 1, -scale * 2 * N / (A + N + 1));
    r.add(n - 2, 0, scale * N * (N - 1) / ((A + N) * (A + N + 1)));
    return r;
}

LogPolynomial phi_fn(int n, double alpha) {
    require_index(n, 0, "phi_fn");
    const ld A = alpha, N = n;
    const ld log_sq = std::log(A + N + 2) + std::lgamma(A + N + 4) - std::log(A + 1) - std::lgamma(A + 2) -
                      std::lgamma(N + 2);
    const ld scale = std::exp(0.5L * log_sq);
    LogPolynomial r;
    r.add(n + 1, 1, scale);
    r.add(n, 0, -scale * (N + 1) / (A + N + 2));
    return r;
}

LogPolynomial h_vector(int n, double alpha, std::complex<double> a, double nu) {
    require_index(n, 0, "h_fn");
    if (nu < 0) throw DomainError("h_fn: nu must be nonnegative");
    const LogPolynomial e = e_fn(n + 1, alpha);
    LogPolynomial r = cld(nu) * e.times_log();
    r -= cld(x_mean(n, alpha, nu)) * e;
    r -= cld(std::conj(a)) * cld(c_coeff(n, alpha)) * phi_fn(n, alpha);
    return r;
}

LogPolynomial h_fn(int n, double alpha, std::complex<double> a, double nu) {
    if (a == 0.0 && nu == 0.0) throw DomainError("h_fn: degenerate parameters a = 0, nu = 0");
    return cld(1.0L / ld(t_coeff(n, alpha, a, nu))) * h_vector(n, alpha, a, nu);
}

double b_closed(int n, double alpha) {
    require_index(n, 2, "b_closed");
    const double A = alpha, N = n;
    const double num = 2 * (A + 1) * ((A + 4) * N + A * A + A);
    const double den = (A + N) * (A + N + 1) * (A + N + 1) * (A + N + 2) * (A + N + 3);
    return num / den;
}

double b_via_sum(int n, double alpha) {
    require_index(n, 2, "b_via_sum");
    // the four terms cancel down to ~8/n^4; 50 digits keep the sum exact to double precision
    using big = boost::multiprecision::cpp_bin_float_50;
    const big A = alpha, N = n;
    const big r = (N + 1) * (N + 2) / ((A + N + 2) * (A + N + 3)) - 4 * N * (N + 1) / ((A + N + 1) * (A + N + 2)) +
                  4 * N * N / ((A + N + 1) * (A + N + 1)) - N * (N - 1) / ((A + N) * (A + N + 1));
    return r.convert_to<double>();
}

double c_coeff(int n, double alpha) {
    require_index(n, 0, "c_coeff");
    return std::sqrt((alpha + 1) / ((alpha + n + 2) * (alpha + n + 3)));
}

double x_mean(int n, double alpha, double nu) {
    require_index(n, 0, "x_mean");
    const LogPolynomial e = e_fn(n + 1, alpha);
    return double(nu * inner(e.times_log(), e, alpha).real());
}

double x_mean_closed(int n, double alpha, double nu) {
    require_index(n, 0, "x_mean");
    return nu * (specfun::digamma<double>(n + 2) - specfun::digamma<double>(n + alpha + 3));
}

double x_mean_display(int n, double alpha, double nu) {
    require_index(n, 0, "x_mean");
    return nu * (specfun::trigamma<double>(n + 1) - specfun::trigamma<double>(n + alpha + 2));
}

double t_coeff(int n, double alpha, std::complex<double> a, double nu) {
    require_index(n, 0, "t_coeff");
    const double c = c_coeff(n, alpha);
    const double v = double(specfun::trigamma<ld>(n + 2) - specfun::trigamma<ld>(n + alpha + 3));
    return std::sqrt(std::norm(a) * c * c + nu * nu * v);
}

double t_coeff_display(int n, double alpha, std::complex<double> a, double nu) {
    require_index(n, 0, "t_coeff");
    const double c = c_coeff(n, alpha);
    const double v = double(specfun::trigamma<ld>(n + 2) - specfun::trigamma<ld>(n + alpha + 3));
    return std::sqrt(std::norm(a) * c * c + nu * nu * v * v);
}

double t_coeff_exact(int n, double alpha, std::complex<double> a, double nu) {
    return double(norm(h_vector(n, alpha, a, nu), alpha));
}

}  // namespace bergman
