#include "bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergman/specfun.hpp"

namespace bergman::quad {

namespace {

using ld = long double;

ld log_mass(ld alpha, ld c) {
    return std::lgamma(c + 1) + std::lgamma(alpha + 2) - std::lgamma(c + alpha + 2);
}

// p_n and its derivative for the orthonormal family.
void orthonormal_with_derivative(const JacobiRecurrence& rec, std::size_t n, ld t, ld& pn,
                                 ld& dpn) {
    ld p_prev = 0, p = 1 / std::sqrt(rec.offdiag2[0]);
    ld d_prev = 0, d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const ld b_next = std::sqrt(rec.offdiag2[j + 1]);
        const ld b_cur = j == 0 ? ld(0) : std::sqrt(rec.offdiag2[j]);
        const ld p_next = ((t - rec.diag[j]) * p - b_cur * p_prev) / b_next;
        const ld d_next = (p + (t - rec.diag[j]) * d - b_cur * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    pn = p;
    dpn = d;
}

std::vector<ld> gauss_nodes(const JacobiRecurrence& rec, std::size_t n) {
    using Vec = Eigen::Matrix<ld, Eigen::Dynamic, 1>;
    Vec diag(n), sub(n > 0 ? n - 1 : 0);
    for (std::size_t j = 0; j < n; ++j) diag[j] = rec.diag[j];
    for (std::size_t j = 1; j < n; ++j) sub[j - 1] = std::sqrt(rec.offdiag2[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<ld> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        ld t = solver.eigenvalues()[i];
        for (int it = 0; it < 4; ++it) {
            ld pn, dpn;
            orthonormal_with_derivative(rec, n, t, pn, dpn);
            if (dpn == 0) break;
            const ld step = pn / dpn;
            t -= step;
            if (std::fabs(step) < 1e-18L * (1 + std::fabs(t))) break;
        }
        nodes[i] = t;
    }
    return nodes;
}

}  // namespace

JacobiRecurrence jacobi_recurrence(std::size_t n, double alpha_in, double c_in) {
    if (!(alpha_in > -1.0)) throw DomainError("jacobi_recurrence: alpha must exceed -1");
    if (!(c_in > -1.0)) throw DomainError("jacobi_recurrence: power must exceed -1");
    const ld A = alpha_in, B = c_in;
    JacobiRecurrence rec;
    rec.diag.resize(n + 1);
    rec.offdiag2.resize(n + 2);
    for (std::size_t j = 0; j <= n; ++j) {
        const ld jj = ld(j);
        ld dx;
        if (j == 0) {
            dx = (B - A) / (A + B + 2);
        } else {
            dx = (B * B - A * A) / ((2 * jj + A + B) * (2 * jj + A + B + 2));
        }
        rec.diag[j] = (1 + dx) / 2;
    }
    rec.offdiag2[0] = std::exp(log_mass(A, B));
    for (std::size_t j = 1; j <= n + 1; ++j) {
        const ld jj = ld(j);
        ld ox;
        if (j == 1) {
            ox = 4 * (1 + A) * (1 + B) / ((2 + A + B) * (2 + A + B) * (3 + A + B));
        } else {
            const ld s = 2 * jj + A + B;
            ox = 4 * jj * (jj + A) * (jj + B) * (jj + A + B) / (s * s * (s + 1) * (s - 1));
        }
        rec.offdiag2[j] = ox / 4;
    }
    return rec;
}

void orthonormal_values(const JacobiRecurrence& rec, std::size_t count, long double t,
                        long double* out) {
    if (count == 0) return;
    ld p_prev = 0, p = 1 / std::sqrt(rec.offdiag2[0]);
    out[0] = p;
    for (std::size_t j = 0; j + 1 < count; ++j) {
        const ld b_cur = j == 0 ? ld(0) : std::sqrt(rec.offdiag2[j]);
        const ld p_next = ((t - rec.diag[j]) * p - b_cur * p_prev) / std::sqrt(rec.offdiag2[j + 1]);
        p_prev = p;
        p = p_next;
        out[j + 1] = p;
    }
}

Rule gauss_jacobi(std::size_t n, double alpha, double c) {
    if (n == 0) throw std::invalid_argument("gauss_jacobi: need at least one node");
    const auto rec = jacobi_recurrence(n, alpha, c);
    const auto nodes = gauss_nodes(rec, n);
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    std::vector<ld> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        orthonormal_values(rec, n, nodes[i], vals.data());
        ld sum = 0;
        for (ld v : vals) sum += v * v;
        rule.nodes[i] = double(nodes[i]);
        rule.weights[i] = double(1 / sum);
    }
    return rule;
}

LogRule gauss_jacobi_log(std::size_t n, double alpha_in, double c_in) {
    if (n == 0) throw std::invalid_argument("gauss_jacobi_log: need at least one node");
    const auto rec = jacobi_recurrence(n, alpha_in, c_in);
    const auto nodes = gauss_nodes(rec, n);
    const ld A = alpha_in, C = c_in;

    // Modified moments  int log t p_j d mu  for the orthonormal family, from the
    // Rodrigues representation differentiated in the exponent of t.
    std::vector<ld> mom(n);
    const ld mass = rec.offdiag2[0];
    mom[0] = std::sqrt(mass) * (specfun::digamma<ld>(C + 1) - specfun::digamma<ld>(C + A + 2));
    for (std::size_t j = 1; j < n; ++j) {
        const ld jj = ld(j);
        const ld log_beta = std::lgamma(C + 1) + std::lgamma(A + jj + 1) - std::lgamma(C + A + jj + 2);
        const ld log_norm2 = std::lgamma(jj + 1) + std::lgamma(C + jj + 1) + std::lgamma(A + jj + 1) -
                             std::lgamma(C + A + jj + 1) - std::log(C + A + 2 * jj + 1);
        const ld mag = std::exp(0.5L * std::log(A + 1) + std::lgamma(jj) + log_beta - 0.5L * log_norm2);
        mom[j] = (j % 2 == 1) ? mag : -mag;
    }

    LogRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.log_weights.resize(n);
    std::vector<ld> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        orthonormal_values(rec, n, nodes[i], vals.data());
        ld sum = 0, lw = 0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += vals[j] * vals[j];
            lw += vals[j] * mom[j];
        }
        const ld w = 1 / sum;
        rule.nodes[i] = double(nodes[i]);
        rule.weights[i] = double(w);
        rule.log_weights[i] = double(w * lw);
    }
    return rule;
}

Rule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const ld half = ld(b - a) / 2, mid = ld(b + a) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        ld x = std::cos(std::numbers::pi_v<ld> * (ld(i) + 0.75L) / (ld(n) + 0.5L));
        ld dp = 0;
        for (int it = 0; it < 100; ++it) {
            ld p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const ld p2 = ((2 * ld(k) - 1) * x * p1 - (ld(k) - 1) * p0) / ld(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1;
            }
            dp = ld(n) * (x * p1 - p0) / (x * x - 1);
            const ld step = p1 / dp;
            x -= step;
            if (std::fabs(step) < 1e-19L) break;
        }
        rule.nodes[n - 1 - i] = double(mid + half * x);
        rule.weights[n - 1 - i] = double(2 * half / ((1 - x * x) * dp * dp));
    }
    return rule;
}

Rule interval_rule(std::size_t n, double alpha, double lo) {
    if (!(lo >= 0.0 && lo < 1.0)) throw DomainError("interval_rule: lower bound must lie in [0, 1)");
    Rule base = gauss_jacobi(n, alpha, 0.0);
    const double span = 1.0 - lo;
    const double scale = std::pow(span, alpha + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        base.nodes[i] = lo + span * base.nodes[i];
        base.weights[i] *= scale;
    }
    return base;
}

Rule graded_interval_rule(double alpha, double lo, std::size_t last_points,
                          std::size_t panel_points) {
    if (!(lo >= 0.0 && lo < 1.0))
        throw DomainError("graded_interval_rule: lower bound must lie in [0, 1)");
    if (lo >= 0.25 || lo == 0.0) return interval_rule(last_points, alpha, lo);
    Rule rule;
    double a = lo;
    while (a < 0.25) {
        const double b = std::min(2 * a, 0.25);
        const Rule panel = gauss_legendre(panel_points, a, b);
        for (std::size_t i = 0; i < panel.size(); ++i) {
            const double t = panel.nodes[i];
            rule.nodes.push_back(t);
            rule.weights.push_back(panel.weights[i] * (alpha + 1) * std::pow(1 - t, alpha));
        }
        a = b;
    }
    const Rule last = interval_rule(last_points, alpha, a);
    rule.nodes.insert(rule.nodes.end(), last.nodes.begin(), last.nodes.end());
    rule.weights.insert(rule.weights.end(), last.weights.begin(), last.weights.end());
    return rule;
}

const LogRule& LogRuleCache::get(int c) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = rules_.find(c);
    if (it != rules_.end()) return *it->second;
    auto rule = std::make_unique<LogRule>(gauss_jacobi_log(points_, alpha_, double(c)));
    const LogRule& ref = *rule;
    rules_.emplace(c, std::move(rule));
    return ref;
}

}  // namespace bergman::quad
