#pragma once

// Exact inner products of monomials z^m zbar^n on L^2(D, dA_alpha), optionally
// weighted by log|z|^2 or (log|z|^2)^2, over the full disk and the sector
// partition {inner disk, annulus, sectors} used for localisation.

#include <complex>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <tuple>

namespace bergman {

/// Weight exponent of dA_alpha = (alpha+1)(1-|z|^2)^alpha dA; requires alpha > -1.
class MeasureConfig {
public:
    explicit MeasureConfig(double alpha);
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

enum class RegionKind { FullDisk, InnerDisk, Annulus, Sector };

/// Regions of the partition with N pieces. Radii refer to |z|:
/// InnerDisk(N) = {|z| < e^{-2pi/N}}, Annulus(N) = {e^{-2pi/N} < |z| < 1},
/// Sector(j,N) = Annulus(N) restricted to 2pi(j-1)/N < arg z < 2pi j/N.
struct Region {
    RegionKind kind = RegionKind::FullDisk;
    int N = 1;
    int j = 1;

    static Region full_disk() { return {}; }
    static Region inner_disk(int N);
    static Region annulus(int N);
    static Region sector(int j, int N);

    /// Bounds of the region in t = |z|^2.
    double t_lo() const;
    double t_hi() const;
    bool full_angle() const { return kind != RegionKind::Sector; }
    double theta_lo() const;
    double theta_hi() const;

    bool operator==(const Region&) const = default;
};

/// (alpha+1) * int t^s (ln t)^logpow (1-t)^alpha dt over the region's t-range.
/// s may be a half-integer (angular coupling across frequency classes on sectors).
double radial_moment(double s, const MeasureConfig& cfg, int logpow, const Region& region);

/// Full-disk radial moment in extended precision.
long double radial_moment_ext(long double s, long double alpha, int logpow);

/// (1/2pi) int e^{ik theta} d theta over the region's angular range.
std::complex<double> angular_factor(int k, const Region& region);

/// < (log|z|^2)^logpow z^m zbar^n , z^p zbar^q > over the region.
std::complex<double> monomial_inner(int m, int n, int p, int q, const MeasureConfig& cfg,
                                    int logpow, const Region& region);

/// Same integral by brute-force tensor quadrature (graded composite Gauss-Legendre in the
/// radial variable, Gauss-Legendre in angle). `nodes` is the number of points per panel.
std::complex<double> quad_oracle_inner(int m, int n, int p, int q, const MeasureConfig& cfg,
                                       int logpow, const Region& region, int nodes);

/// Memoised radial moments. Reads are concurrent; the first evaluation of a key
/// takes an exclusive lock.
class MomentTable {
public:
    explicit MomentTable(MeasureConfig cfg) : cfg_(cfg) {}

    double radial(double s, int logpow, const Region& region);
    long double radial_ext(double s, int logpow);
    std::complex<double> monomial(int m, int n, int p, int q, int logpow, const Region& region);

    const MeasureConfig& config() const { return cfg_; }
    std::size_t size() const;

private:
    using Key = std::tuple<std::int64_t, int, int, int, int>;  // 2s, logpow, kind, N, full-disk ext flag
    MeasureConfig cfg_;
    mutable std::shared_mutex mutex_;
    std::map<Key, long double> cache_;
};

}  // namespace bergman
