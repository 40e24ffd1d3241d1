#pragma once

// Scalar special functions: gamma family, digamma, trigamma, Pochhammer,
// Beta, regularized incomplete Beta and the principal Lambert W branch.
//
// Every function is a pure template over the floating type so the moment
// engine can run in extended precision; the double instantiations are the
// public surface used by the rest of the library.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bergman {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace specfun {

namespace detail {

template <typename T>
void require_finite(T t, const char* fn) {
    if (!std::isfinite(t))
        throw DomainError(std::string(fn) + ": argument must be finite");
}

template <typename T>
void require_positive(T t, const char* fn) {
    require_finite(t, fn);
    if (!(t > T(0)))
        throw DomainError(std::string(fn) + ": argument must be positive");
}

// Shift t upward until the asymptotic series is accurate. 10 is enough for
// double, extended precision wants a larger cutoff.
template <typename T>
constexpr T asymptotic_cutoff() {
    return std::numeric_limits<T>::digits > 53 ? T(16) : T(10);
}

}  // namespace detail

template <typename T>
T log_gamma(T t) {
    detail::require_positive(t, "log_gamma");
    return std::lgamma(t);
}

/// Digamma via upward recurrence psi(t) = psi(t+1) - 1/t followed by the
/// Bernoulli asymptotic series.
template <typename T>
T digamma(T t) {
    detail::require_positive(t, "digamma");
    T acc = 0;
    while (t < detail::asymptotic_cutoff<T>()) {
        acc -= T(1) / t;
        t += T(1);
    }
    const T inv = T(1) / t;
    const T inv2 = inv * inv;
    // B_{2k}/(2k) for k = 1..8
    const T series = inv2 * (T(1) / 12 -
                     inv2 * (T(1) / 120 -
                     inv2 * (T(1) / 252 -
                     inv2 * (T(1) / 240 -
                     inv2 * (T(1) / 132 -
                     inv2 * (T(691) / 32760 -
                     inv2 * (T(1) / 12 -
                     inv2 * T(3617) / 8160)))))));
    return acc + std::log(t) - T(0.5) * inv - series;
}

/// Trigamma via upward recurrence psi'(t) = psi'(t+1) + 1/t^2 and the
/// asymptotic series 1/t + 1/(2t^2) + sum B_{2k}/t^{2k+1}.
template <typename T>
T trigamma(T t) {
    detail::require_positive(t, "trigamma");
    T acc = 0;
    while (t < detail::asymptotic_cutoff<T>()) {
        acc += T(1) / (t * t);
        t += T(1);
    }
    const T inv = T(1) / t;
    const T inv2 = inv * inv;
    // B_2, B_4, ..., B_16
    const T series = inv2 * (T(1) / 6 -
                     inv2 * (T(1) / 30 -
                     inv2 * (T(1) / 42 -
                     inv2 * (T(1) / 30 -
                     inv2 * (T(5) / 66 -
                     inv2 * (T(691) / 2730 -
                     inv2 * (T(7) / 6 -
                     inv2 * T(3617) / 510)))))));
    return acc + inv + T(0.5) * inv2 + inv * series;
}

/// Rising factorial (a)_n by direct product.
template <typename T>
T pochhammer(T a, unsigned n) {
    detail::require_finite(a, "pochhammer");
    T r = 1;
    for (unsigned k = 0; k < n; ++k) r *= a + T(k);
    if (!std::isfinite(r))
        throw OverflowError("pochhammer: result exceeds the representable range, use log_pochhammer");
    return r;
}

/// ln (a)_n for a > 0.
template <typename T>
T log_pochhammer(T a, unsigned n) {
    detail::require_positive(a, "log_pochhammer");
    if (n == 0) return T(0);
    return std::lgamma(a + T(n)) - std::lgamma(a);
}

template <typename T>
T log_beta(T a, T b) {
    detail::require_positive(a, "beta");
    detail::require_positive(b, "beta");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

template <typename T>
T beta(T a, T b) {
    return std::exp(log_beta(a, b));
}

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz; converges for x < (a+1)/(a+b+2).
template <typename T>
T inc_beta_cf(T x, T a, T b) {
    const T tiny = std::numeric_limits<T>::min() / std::numeric_limits<T>::epsilon();
    const T eps = std::numeric_limits<T>::epsilon();
    T c = 1;
    T d = T(1) - (a + b) * x / (a + T(1));
    if (std::fabs(d) < tiny) d = tiny;
    d = T(1) / d;
    T h = d;
    for (int m = 1; m <= 10000; ++m) {
        const T mm = T(m);
        const T m2 = T(2) * mm;
        T num = mm * (b - mm) * x / ((a + m2 - T(1)) * (a + m2));
        d = T(1) + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = T(1) + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = T(1) / d;
        h *= d * c;
        num = -(a + mm) * (a + b + mm) * x / ((a + m2) * (a + m2 + T(1)));
        d = T(1) + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = T(1) + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = T(1) / d;
        const T del = d * c;
        h *= del;
        if (std::fabs(del - T(1)) < eps) return h;
    }
    throw DomainError("reg_inc_beta: continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete Beta I_x(a, b).
template <typename T>
T reg_inc_beta(T x, T a, T b) {
    detail::require_finite(x, "reg_inc_beta");
    detail::require_positive(a, "reg_inc_beta");
    detail::require_positive(b, "reg_inc_beta");
    if (x < T(0) || x > T(1)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
    if (x == T(0)) return T(0);
    if (x == T(1)) return T(1);
    const T log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const T front = std::exp(log_front);
    if (x < (a + T(1)) / (a + b + T(2))) return front * detail::inc_beta_cf(x, a, b) / a;
    return T(1) - front * detail::inc_beta_cf(T(1) - x, b, a) / b;
}

/// Principal branch W0 by Halley iteration.
template <typename T>
T lambert_w0(T x) {
    detail::require_finite(x, "lambert_w0");
    const T inv_e = T(1) / std::numbers::e_v<T>;
    if (x < -inv_e) {
        // Accept values that are -1/e up to rounding.
        if (x < -inv_e * (T(1) + 8 * std::numeric_limits<T>::epsilon()))
            throw DomainError("lambert_w0: x must be >= -1/e");
        return T(-1);
    }
    if (x == T(0)) return T(0);

    T w;
    if (x < T(-0.25)) {
        // Branch point expansion in p = sqrt(2(e x + 1)).
        const T p = std::sqrt(std::max(T(0), T(2) * (std::numbers::e_v<T> * x + T(1))));
        w = T(-1) + p - p * p / T(3) + T(11) / T(72) * p * p * p;
    } else if (x < T(3)) {
        w = std::log1p(x);
        if (x > T(0)) w *= T(0.75);
    } else {
        const T l1 = std::log(x);
        const T l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int it = 0; it < 50; ++it) {
        const T ew = std::exp(w);
        const T f = w * ew - x;
        const T wp1 = w + T(1);
        if (wp1 == T(0)) break;
        const T denom = ew * wp1 - (w + T(2)) * f / (T(2) * wp1);
        const T step = f / denom;
        w -= step;
        if (std::fabs(step) <= 4 * std::numeric_limits<T>::epsilon() * (T(1) + std::fabs(w))) break;
    }
    return w;
}

}  // namespace specfun
}  // namespace bergman
