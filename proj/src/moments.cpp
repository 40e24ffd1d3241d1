#include "bergman/moments.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/specfun.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void require_logpow(int logpow) {
    if (logpow < 0 || logpow > 2) throw DomainError("log power must be 0, 1 or 2");
}

void require_s(double s) {
    if (!(s >= 0) || std::fabs(2 * s - std::round(2 * s)) > 0)
        throw DomainError("radial exponent must be a nonnegative multiple of 1/2");
}

// (alpha+1) int_lo^1 t^s (ln t)^logpow (1-t)^alpha dt by graded Gauss rules,
// doubling the node counts until two passes agree.
double annulus_quadrature(double s, double alpha, int logpow, double lo) {
    std::size_t last = 32 + std::size_t(s / 2), panel = 16;
    double prev = 0;
    for (int pass = 0; pass < 8; ++pass) {
        const auto rule = quad::graded_interval_rule(alpha, lo, last, panel);
        long double acc = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double t = rule.nodes[i];
            const double lt = std::log(t);
            acc += rule.weights[i] * std::pow(t, s) * (logpow == 0 ? 1.0 : logpow == 1 ? lt : lt * lt);
        }
        const double cur = double(acc);
        if (pass > 0 && std::fabs(cur - prev) <= 1e-14 * std::max(1.0, std::fabs(cur))) return cur;
        prev = cur;
        last *= 2;
        panel *= 2;
    }
    return prev;
}

}  // namespace

MeasureConfig::MeasureConfig(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > -1.0)) throw DomainError("alpha must exceed -1");
}

Region Region::inner_disk(int N) {
    if (N < 1) throw DomainError("region: N must be positive");
    return {RegionKind::InnerDisk, N, 1};
}

Region Region::annulus(int N) {
    if (N < 1) throw DomainError("region: N must be positive");
    return {RegionKind::Annulus, N, 1};
}

Region Region::sector(int j, int N) {
    if (N < 1) throw DomainError("region: N must be positive");
    if (j < 1 || j > N) throw DomainError("region: sector index must lie in [1, N]");
    return {RegionKind::Sector, N, j};
}

double Region::t_lo() const {
    switch (kind) {
        case RegionKind::FullDisk:
        case RegionKind::InnerDisk:
            return 0.0;
        default:
            return std::exp(-2 * kTwoPi / N);
    }
}

double Region::t_hi() const {
    return kind == RegionKind::InnerDisk ? std::exp(-2 * kTwoPi / N) : 1.0;
}

double Region::theta_lo() const { return kind == RegionKind::Sector ? kTwoPi * (j - 1) / N : 0.0; }

double Region::theta_hi() const { return kind == RegionKind::Sector ? kTwoPi * j / N : kTwoPi; }

long double radial_moment_ext(long double s, long double alpha, int logpow) {
    require_logpow(logpow);
    // Product form M(s) = M(s0) prod (j / (j + alpha + 1)) keeps neighbouring moments
    // consistent to a few ulps, which the heavily cancelling family Grams rely on.
    long double base;
    if (s <= 4096) {
        long double j = s - std::floor(s);
        base = j == 0 ? 1.0L
                      : std::exp(std::lgamma(j + 1) + std::lgamma(alpha + 2) - std::lgamma(j + alpha + 2));
        for (j += 1; j <= s; j += 1) base *= j / (j + alpha + 1);
    } else {
        base = std::exp(std::lgamma(s + 1) + std::lgamma(alpha + 2) - std::lgamma(s + alpha + 2));
    }
    if (logpow == 0) return base;
    const long double d = specfun::digamma<long double>(s + 1) - specfun::digamma<long double>(s + alpha + 2);
    if (logpow == 1) return base * d;
    const long double v =
        specfun::trigamma<long double>(s + 1) - specfun::trigamma<long double>(s + alpha + 2);
    return base * (d * d + v);
}

namespace {

// (alpha+1) int_0^hi t^s (ln t)^l (1-t)^alpha dt from the binomial series of (1-t)^alpha.
// Past k > alpha the terms keep one sign, so there is no cancellation even when the value is tiny
// (a full-minus-annulus difference loses all relative accuracy there).
double inner_disk_series(double s, double alpha, int logpow, double hi) {
    using ld = long double;
    const ld L = std::log(ld(hi));
    ld sum = 0, binom = 1, hp = std::pow(ld(hi), ld(s) + 1);
    for (int k = 0; k < 20000; ++k) {
        const ld a = ld(s) + k + 1;
        ld term;
        if (logpow == 1) term = hp * (L / a - 1 / (a * a));
        else term = hp * (L * L / a - 2 * L / (a * a) + 2 / (a * a * a));
        term *= binom;
        sum += term;
        if (binom == 0 || (k > alpha + 2 && std::fabs(term) <= 1e-20L * std::fabs(sum))) break;
        binom *= -(ld(alpha) - k) / (k + 1);
        hp *= hi;
    }
    return double((ld(alpha) + 1) * sum);
}

}  // namespace

double radial_moment(double s, const MeasureConfig& cfg, int logpow, const Region& region) {
    require_logpow(logpow);
    require_s(s);
    const double alpha = cfg.alpha();
    const double full = double(radial_moment_ext(s, alpha, logpow));
    if (region.kind == RegionKind::FullDisk) return full;
    const double lo = region.t_lo() > 0 ? region.t_lo() : region.t_hi();
    if (region.kind == RegionKind::InnerDisk && logpow > 0) return inner_disk_series(s, alpha, logpow, lo);
    double annulus;
    if (logpow == 0) {
        annulus = full * (1.0 - specfun::reg_inc_beta(lo, s + 1, alpha + 1));
    } else {
        annulus = annulus_quadrature(s, alpha, logpow, lo);
    }
    if (region.kind == RegionKind::InnerDisk) return full * specfun::reg_inc_beta(lo, s + 1, alpha + 1);
    return annulus;
}

std::complex<double> angular_factor(int k, const Region& region) {
    if (region.full_angle()) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return 1.0 / region.N;
    if (k < 0) return std::conj(angular_factor(-k, region));
    // e^{ik theta} at the sector edges 2 pi j / N, with the phase reduced mod N first so
    // that k = 0 mod N gives an exact zero
    const int N = region.N;
    if (k % N == 0) return 0.0;
    auto phase = [&](int j) {
        const long long r = (static_cast<long long>(k) * j) % N;
        return kTwoPi * double(r) / N;
    };
    const double a = phase(region.j - 1), b = phase(region.j);
    const double kd = k;
    const double re = (std::sin(b) - std::sin(a)) / (kTwoPi * kd);
    const double im = -(std::cos(b) - std::cos(a)) / (kTwoPi * kd);
    return {re, im};
}

std::complex<double> monomial_inner(int m, int n, int p, int q, const MeasureConfig& cfg, int logpow,
                                    const Region& region) {
    if (m < 0 || n < 0 || p < 0 || q < 0) throw DomainError("monomial_inner: negative exponent");
    const int k = (m - n) - (p - q);
    const auto ang = angular_factor(k, region);
    if (ang == std::complex<double>(0.0)) return 0.0;
    return ang * radial_moment(0.5 * (m + n + p + q), cfg, logpow, region);
}

std::complex<double> quad_oracle_inner(int m, int n, int p, int q, const MeasureConfig& cfg,
                                       int logpow, const Region& region, int nodes) {
    if (nodes < 16) throw DomainError("quad_oracle_inner: need at least 16 nodes per panel");
    require_logpow(logpow);
    const double alpha = cfg.alpha();
    const double s = 0.5 * (m + n + p + q);
    const int k = (m - n) - (p - q);

    // Radial part: panels graded geometrically toward both t = 0 (log singularity) and
    // t = 1 ((1-t)^alpha endpoint), Gauss-Legendre on each panel.
    const double lo = region.t_lo(), hi = region.t_hi();
    std::vector<std::pair<double, double>> panels;
    const double mid = 0.5 * (lo + hi);
    double a = lo;
    if (lo == 0.0) {
        a = mid * std::pow(0.5, 60);
        panels.emplace_back(0.0, a);
    }
    while (a < mid) {
        const double b = std::min(2 * a, mid);
        panels.emplace_back(a, b);
        a = b;
    }
    {
        // toward hi: [mid, hi - g], with g halving
        a = mid;
        double gap = (hi - mid) / 2;
        for (int level = 0; level < 60 && gap > 0; ++level) {
            panels.emplace_back(a, hi - gap);
            a = hi - gap;
            gap /= 2;
        }
        panels.emplace_back(a, hi);
    }
    long double radial = 0;
    for (const auto& [a, b] : panels) {
        if (!(b > a)) continue;
        const auto gl = quad::gauss_legendre(std::size_t(nodes), a, b);
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double t = gl.nodes[i];
            const double lt = std::log(t);
            const double f = std::pow(t, s) * (logpow == 0 ? 1.0 : logpow == 1 ? lt : lt * lt) *
                             (alpha + 1) * std::pow(1 - t, alpha);
            radial += gl.weights[i] * f;
        }
    }

    // Angular part: Gauss-Legendre on the arc, averaged by 1/(2pi).
    std::complex<long double> ang = 0;
    const double ta = region.theta_lo(), tb = region.theta_hi();
    const int ang_nodes = std::max(nodes, 2 * std::abs(k) + 16);
    const auto gl = quad::gauss_legendre(std::size_t(ang_nodes), ta, tb);
    for (std::size_t i = 0; i < gl.size(); ++i)
        ang += std::complex<long double>(gl.weights[i] * std::cos(k * gl.nodes[i]),
                                         gl.weights[i] * std::sin(k * gl.nodes[i]));
    ang /= kTwoPi;
    const std::complex<long double> r = ang * radial;
    return {double(r.real()), double(r.imag())};
}

double MomentTable::radial(double s, int logpow, const Region& region) {
    require_s(s);
    const Key key{std::int64_t(std::llround(2 * s)), logpow, int(region.kind), region.N, 0};
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return double(it->second);
    }
    // Sectors share the annulus radial range.
    Region radial_region = region;
    if (region.kind == RegionKind::Sector) radial_region = Region::annulus(region.N);
    const double v = radial_moment(s, cfg_, logpow, radial_region);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, v);
    return v;
}

long double MomentTable::radial_ext(double s, int logpow) {
    require_s(s);
    const Key key{std::int64_t(std::llround(2 * s)), logpow, int(RegionKind::FullDisk), 1, 1};
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const long double v = radial_moment_ext(s, cfg_.alpha(), logpow);
    std::unique_lock lock(mutex_);
    cache_.emplace(key, v);
    return v;
}

std::complex<double> MomentTable::monomial(int m, int n, int p, int q, int logpow,
                                           const Region& region) {
    if (m < 0 || n < 0 || p < 0 || q < 0) throw DomainError("monomial_inner: negative exponent");
    const auto ang = angular_factor((m - n) - (p - q), region);
    if (ang == std::complex<double>(0.0)) return 0.0;
    const Region key_region = region.kind == RegionKind::Sector ? Region::annulus(region.N) : region;
    return ang * radial(0.5 * (m + n + p + q), logpow, key_region);
}

std::size_t MomentTable::size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
}

}  // namespace bergman
