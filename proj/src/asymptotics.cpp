#include "bergman/asymptotics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/specfun.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

double theorem_constant(const SymbolU& u, double alpha, int quad_points) {
    if (quad_points < 16) throw DomainError("theorem_constant: need at least 16 points");
    if (!(alpha > -1)) throw DomainError("alpha must exceed -1");
    u.validate();
    // trapezoid on the circle; (1/2pi) |dz| integral becomes a plain mean
    long double acc = 0;
    for (int i = 0; i < quad_points; ++i) {
        const cd z = std::polar(1.0, 2 * std::numbers::pi * i / quad_points);
        acc += std::sqrt(u.nu * u.nu + std::norm(u.U_prime(z)));
    }
    return std::sqrt(alpha + 1) * double(acc / quad_points);
}

TailFit fit_tail(const std::vector<double>& s, double p, int n1, int n2) {
    if (n1 < 1 || n2 > int(s.size()) || n2 - n1 + 1 < 8) throw DomainError("fit_tail: window needs at least 8 indices inside the spectrum");
    const int len = n2 - n1 + 1;
    // scale columns by n^p so both unknowns are O(1)
    Eigen::MatrixXd a(len, 2);
    Eigen::VectorXd b(len);
    for (int i = 0; i < len; ++i) {
        const double n = n1 + i;
        a(i, 0) = 1.0;
        a(i, 1) = 1.0 / n;
        b(i) = std::pow(n, p) * s[std::size_t(n1 + i - 1)];
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    TailFit f;
    f.p = p;
    f.n1 = n1;
    f.n2 = n2;
    f.estimate = x(0);
    f.correction = x(1);
    const Eigen::VectorXd r = b - a * x;
    for (int i = 0; i < len; ++i)
        if (b(i) != 0) f.max_residual = std::max(f.max_residual, std::fabs(r(i) / b(i)));
    const double sigma2 = r.squaredNorm() / std::max(1, len - 2);
    const Eigen::Matrix2d cov = (a.transpose() * a).inverse() * sigma2;
    f.error_estimate = std::sqrt(std::max(0.0, cov(0, 0)));
    return f;
}

double phi(double x, double r) {
    if (!(r > 1)) throw DomainError("phi: r must exceed 1");
    return 2 / std::log(r) * x * std::log(x);
}

double phi_inverse(double p, double r) {
    if (!(r > 1)) throw DomainError("phi_inverse: r must exceed 1");
    return std::exp(specfun::lambert_w0(p * std::log(r) / 2));
}

std::vector<BoundPoint> su_bound_profile(double r, const std::vector<double>& p_values) {
    if (!(r > 1)) throw DomainError("su_bound_profile: r must exceed 1");
    std::vector<BoundPoint> out;
    for (double p : p_values) {
        if (!(p >= 3)) throw DomainError("su_bound_profile: p must be at least 3");
        BoundPoint b;
        b.p = p;
        b.phi_inv = phi_inverse(p, r);
        b.bound = 1 / (b.phi_inv * b.phi_inv);
        b.round_trip_error = std::fabs(phi(b.phi_inv, r) - p);
        out.push_back(b);
    }
    return out;
}

Extrapolation richardson(const std::vector<int>& degrees, const std::vector<double>& values) {
    if (degrees.size() != values.size() || degrees.empty()) throw DomainError("richardson: mismatched inputs");
    Extrapolation e;
    if (degrees.size() == 1) {
        e.value = values[0];
        return e;
    }
    // indices of the two largest degrees
    std::vector<std::size_t> idx(degrees.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });
    const double x1 = 1.0 / degrees[idx[0]], x2 = 1.0 / degrees[idx[1]];
    const double y1 = values[idx[0]], y2 = values[idx[1]];
    if (x1 == x2) throw DomainError("richardson: repeated degree");
    e.slope = (y2 - y1) / (x2 - x1);
    e.value = y1 - e.slope * x1;
    for (std::size_t k = 2; k < idx.size(); ++k)
        e.residual = std::max(e.residual, std::fabs(e.value + e.slope / degrees[idx[k]] - values[idx[k]]));
    return e;
}

TheoremReport convergence_study(const SymbolU& u, double alpha, const StudyOptions& opt) {
    if (opt.degrees.size() < 2) throw DomainError("convergence_study: need at least two degrees");
    if (opt.radial_cutoffs.size() != 1 && opt.radial_cutoffs.size() != opt.degrees.size())
        throw DomainError("convergence_study: radial_cutoffs must have one entry or one per degree");
    if (!(opt.window_lo > 0 && opt.window_hi > opt.window_lo)) throw DomainError("convergence_study: bad window");
    u.validate();
    const auto start = std::chrono::steady_clock::now();
    TheoremReport rep;
    rep.alpha = alpha;
    rep.symbol = u;
    rep.degrees = opt.degrees;
    rep.multiplicity = Multiplicities::Y;
    const int mu = rep.multiplicity;
    std::vector<double> fitted;
    for (std::size_t i = 0; i < opt.degrees.size(); ++i) {
        const int d = opt.degrees[i];
        const int r0 = opt.radial_cutoffs.size() == 1 ? opt.radial_cutoffs[0] : opt.radial_cutoffs[i];
        rep.radial_cutoffs.push_back(r0);
        const BasisSet basis = build_basis(alpha, d, r0);
        const std::vector<double> s = singular_values(assemble_commutator_kernel(u, basis).entries);
        const int n1 = std::max(1, int(std::lround(opt.window_lo * mu * d)));
        const int n2 = std::min(int(s.size()), int(std::lround(opt.window_hi * mu * d)));
        rep.windows.push_back({n1, n2});
        rep.fits.push_back(fit_tail(s, 1.0, n1, n2));
        fitted.push_back(rep.fits.back().estimate);
        if (opt.keep_spectra) rep.spectra.push_back(s);
    }
    rep.extrapolated = richardson(opt.degrees, fitted);
    rep.theorem_constant = theorem_constant(u, alpha);
    rep.adjusted_constant = mu * rep.theorem_constant;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.ratio = rep.theorem_constant > 0 ? rep.extrapolated.value / rep.theorem_constant : nan;
    rep.adjusted_ratio = rep.adjusted_constant > 0 ? rep.extrapolated.value / rep.adjusted_constant : nan;
    rep.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace bergman
