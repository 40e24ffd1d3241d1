#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/quadrature.hpp"
#include "bergman/region.hpp"
#include "bergman/spectral.hpp"

using namespace bergman;

namespace {
double maxabs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
}  // namespace

TEST_CASE("full-disk compression is the plain assembly") {
    const BasisSet b = build_basis(0.5, 10, 5);
    const KernelSpec y = model_kernel(ModelSpec::Y(cd(1, -0.5), 0.7));
    const OperatorMatrix r = region_compress(y, b, Region::full_disk(), Region::full_disk(), default_harmonic_cutoff(10));
    CHECK(max_abs_diff(r, assemble_kernel(y, b)) < 1e-13);
}

TEST_CASE("region pairs reassemble the operator") {
    const int d = 8, N = 4, M = default_harmonic_cutoff(d);
    const BasisSet b = build_basis(0, d, 4);
    const KernelSpec y = model_kernel(ModelSpec::Y(1.0, 0.5));
    std::vector<Region> parts = {Region::inner_disk(N)};
    for (int j = 1; j <= N; ++j) parts.push_back(Region::sector(j, N));
    CMatrix sum = CMatrix::Zero(b.dim(), b.dim());
    CMatrix sectors = CMatrix::Zero(b.dim(), b.dim());
    for (const Region& l : parts)
        for (const Region& r : parts) {
            const CMatrix c = region_compress(y, b, l, r, M).entries;
            sum += c;
            if (l.kind == RegionKind::Sector && r.kind == RegionKind::Sector) sectors += c;
        }
    CHECK(maxabs(sum - assemble_kernel(y, b).entries) < 1e-11);
    const CMatrix ann = region_compress(y, b, Region::annulus(N), Region::annulus(N), M).entries;
    CHECK(maxabs(sectors - ann) < 1e-11);
    // the diagonal blocks alone miss the cross terms
    CMatrix diag = CMatrix::Zero(b.dim(), b.dim());
    for (int j = 1; j <= N; ++j) diag += region_compress(y, b, Region::sector(j, N), Region::sector(j, N), M).entries;
    CHECK(maxabs(diag - ann) > 1e-3);
}

TEST_CASE("one sector is the annulus") {
    const BasisSet b = build_basis(0.5, 8, 4);
    const KernelSpec q = model_kernel(ModelSpec::FrakQ(cd(0.4, 1)));
    const int M = default_harmonic_cutoff(8);
    const auto s = region_compress(q, b, Region::sector(1, 1), Region::sector(1, 1), M);
    const auto a = region_compress(q, b, Region::annulus(1), Region::annulus(1), M);
    CHECK(max_abs_diff(s, a) < 1e-13);
    CHECK(maxabs(region_compress(KernelSpec{}, b, Region::sector(2, 4), Region::sector(2, 4), M).entries) == 0.0);
}

TEST_CASE("region gram") {
    const BasisSet b = build_basis(1.0, 8, 4);
    const int N = 4;
    CMatrix total = region_gram(b, Region::inner_disk(N));
    for (int j = 1; j <= N; ++j) {
        const CMatrix g = region_gram(b, Region::sector(j, N));
        CHECK(maxabs(g - g.adjoint()) < 1e-14);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
        total += g;
    }
    CHECK(maxabs(total - CMatrix::Identity(b.dim(), b.dim())) < 1e-12);
}

TEST_CASE("sector basis is orthonormal on its sector") {
    const double alpha = 1.0;
    const int N = 4, j = 3;
    const SectorBasis sb = build_sector_basis(alpha, j, N, 3, 5, default_harmonic_cutoff(12));
    CHECK(sb.dim() == 35);
    const Region reg = sb.region();
    // tensor Gauss-Legendre: panels in t, one rule in theta
    std::vector<double> tn, tw;
    const double lo = reg.t_lo();
    for (int p = 0; p < 8; ++p) {
        const auto r = quad::gauss_legendre(40, lo + (1 - lo) * p / 8, lo + (1 - lo) * (p + 1) / 8);
        tn.insert(tn.end(), r.nodes.begin(), r.nodes.end());
        tw.insert(tw.end(), r.weights.begin(), r.weights.end());
    }
    const auto th = quad::gauss_legendre(64, reg.theta_lo(), reg.theta_hi());
    const int n = sb.dim();
    CMatrix g = CMatrix::Zero(n, n);
    Eigen::VectorXcd v(n);
    for (std::size_t a = 0; a < tn.size(); ++a)
        for (std::size_t c = 0; c < th.size(); ++c) {
            const cd z = std::polar(std::sqrt(tn[a]), th.nodes[c]);
            for (int i = 0; i < n; ++i) v(i) = sb.evaluate(i, z);
            const double w = tw[a] * th.weights[c] / (2 * std::numbers::pi) * (alpha + 1) * (1 - tn[a]);
            g += w * v * v.adjoint();
        }
    CHECK(maxabs(g - CMatrix::Identity(n, n)) < 1e-10);
}

TEST_CASE("sector spectra are rotation covariant") {
    const int d = 16, N = 4, K = 4, M = default_harmonic_cutoff(d);
    const KernelSpec y = model_kernel(ModelSpec::Y(1.0, 0.0));
    const auto s1 = singular_values(sector_compress(y, build_sector_basis(0, 1, N, K, 6, M), M).entries);
    const auto s2 = singular_values(sector_compress(y, build_sector_basis(0, 2, N, K, 6, M), M).entries);
    const auto s4 = singular_values(sector_compress(y, build_sector_basis(0, 4, N, K, 6, M), M).entries);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(std::fabs(s1[i] - s2[i]) < 1e-10);
        CHECK(std::fabs(s1[i] - s4[i]) < 1e-10);
    }
    CHECK(s1.front() > 0.01);
    const auto z = sector_compress(KernelSpec{}, build_sector_basis(0, 1, N, K, 6, M), M);
    CHECK(maxabs(z.entries) == 0.0);
}

TEST_CASE("sector spectra converge in the harmonic cutoff") {
    const int d = 16, N = 4, K = 4;
    const KernelSpec y = model_kernel(ModelSpec::Y(1.0, 0.0));
    auto top = [&](int M) {
        auto s = singular_values(sector_compress(y, build_sector_basis(0, 1, N, K, 6, M), M).entries);
        s.resize(10);
        return s;
    };
    // Sector truncation converges slowly (jump discontinuities in angle), so compare
    // successive doublings against a reference at 4M.
    const int M = default_harmonic_cutoff(d);
    const auto a = top(M), b = top(2 * M), c = top(4 * M);
    double ea = 0, eb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ea = std::max(ea, std::fabs(a[i] - c[i]));
        eb = std::max(eb, std::fabs(b[i] - c[i]));
    }
    CHECK(ea < 1e-6);
    CHECK(eb < ea);
}
