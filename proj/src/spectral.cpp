#include "bergman/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "bergman/basis.hpp"
#include "bergman/specfun.hpp"

namespace bergman {

std::vector<double> singular_values(const CMatrix& a) {
    const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
    const lapack_int k = std::min(m, n);
    if (k == 0) return {};
    CMatrix work = a;  // column-major copy, destroyed by LAPACK
    std::vector<double> s(static_cast<std::size_t>(k));
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n,
                                           reinterpret_cast<lapack_complex_double*>(work.data()), m, s.data(),
                                           nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("zgesdd failed with info " + std::to_string(info));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

SingularSpectrum singular_values(const OperatorMatrix& m) {
    SingularSpectrum s;
    s.values = singular_values(m.entries);
    s.source = m.spec;
    s.alpha = m.alpha;
    s.degree = m.degree;
    s.radial_cutoff = m.radial_cutoff;
    return s;
}

std::vector<double> SchmidtPrediction::sorted() const {
    std::vector<double> v = head;
    for (const auto& [value, mult] : family)
        for (int i = 0; i < mult; ++i) v.push_back(value);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

namespace {

// Values of E at d = 12 (all radial vectors) not explained by the sqrt(b_n) families.
std::vector<double> measure_e_head(double alpha) {
    const int d = 12;
    const BasisSet basis = build_basis(alpha, d, d + 1);
    const std::vector<double> s = singular_values(assemble_model(ModelSpec::E(), basis).entries);
    // Families with n <= d - 2 have both Schmidt vectors inside the truncated space.
    std::vector<double> want;
    for (int n = 2; n <= d - 2; ++n)
        for (int i = 0; i < Multiplicities::E; ++i) want.push_back(std::sqrt(b_closed(n, alpha)));
    std::vector<double> head;
    const double floor_value = std::sqrt(b_closed(d - 2, alpha));
    // Pair from the top; unexplained values above the last exact family value are head values.
    std::vector<bool> used(s.size(), false);
    for (double w : want) {
        int best = -1;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!used[i] && std::fabs(s[i] - w) < 1e-9 && (best < 0 || std::fabs(s[i] - w) < std::fabs(s[std::size_t(best)] - w)))
                best = int(i);
        if (best >= 0) used[std::size_t(best)] = true;
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!used[i] && s[i] > floor_value * (1 + 1e-9)) head.push_back(s[i]);
    return head;
}

}  // namespace

SchmidtPrediction schmidt_multiset(const ModelSpec& spec, double alpha, int count) {
    if (count < 1) throw DomainError("schmidt_multiset: count must be positive");
    SchmidtPrediction p;
    p.source = spec.name();
    switch (spec.kind) {
        case ModelKind::E:
            for (int n = 2; n < count + 2; ++n) p.family.push_back({std::sqrt(b_closed(n, alpha)), Multiplicities::E});
            p.head = measure_e_head(alpha);
            break;
        case ModelKind::Q0:
            for (int n = 0; n < count; ++n) p.family.push_back({c_coeff(n, alpha), Multiplicities::Q0});
            break;
        case ModelKind::FrakQ:
            if (spec.a == 0.0) break;
            // phi_0 is real, so the four n = 0 terms collapse to two rank-one pieces of size sqrt(2)|a|c_0
            p.head = {std::sqrt(2.0) * std::abs(spec.a) * c_coeff(0, alpha), std::sqrt(2.0) * std::abs(spec.a) * c_coeff(0, alpha)};
            for (int n = 1; n <= count; ++n) p.family.push_back({std::abs(spec.a) * c_coeff(n, alpha), Multiplicities::FrakQ});
            break;
        case ModelKind::Y: {
            if (spec.nu == 0.0) return schmidt_multiset(ModelSpec::FrakQ(spec.a), alpha, count);
            for (int n = 0; n < count; ++n) p.family.push_back({t_coeff(n, alpha, spec.a, spec.nu), Multiplicities::Y});
            // class 0: f -> nu(<f,1> L0 - <f,L0> 1) with L0 the centred log|z|^2
            const double v = spec.nu * std::sqrt(specfun::trigamma(1.0) - specfun::trigamma(alpha + 2));
            p.head = {v, v};
            break;
        }
        default:
            throw DomainError("schmidt_multiset: no closed-form prediction for " + spec.name());
    }
    return p;
}

MatchReport match_sorted(const std::vector<double>& a, const std::vector<double>& b, int count) {
    MatchReport r;
    r.compared = std::min({count, int(a.size()), int(b.size())});
    for (int i = 0; i < r.compared; ++i) r.max_error = std::max(r.max_error, std::fabs(a[std::size_t(i)] - b[std::size_t(i)]));
    return r;
}

std::vector<int> multiset_unmatched(const std::vector<double>& have, const std::vector<double>& want, double tol) {
    std::vector<bool> used(have.size(), false);
    std::vector<int> missing;
    for (std::size_t w = 0; w < want.size(); ++w) {
        int best = -1;
        double err = tol;
        for (std::size_t i = 0; i < have.size(); ++i) {
            const double e = std::fabs(have[i] - want[w]);
            if (!used[i] && e <= err) {
                best = int(i);
                err = e;
            }
        }
        if (best < 0) missing.push_back(int(w));
        else used[std::size_t(best)] = true;
    }
    return missing;
}

KyFanReport kyfan_verify(const CMatrix& a, const CMatrix& b, double rank_tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("kyfan_verify: shape mismatch");
    const auto sa = singular_values(a), sb = singular_values(b);
    const auto ssum = singular_values(CMatrix(a + b));
    KyFanReport r;
    const std::size_t len = sa.size();
    for (std::size_t n = 1; n <= len; ++n)
        for (std::size_t m = 1; n + m - 1 <= len; ++m)
            r.max_sum_violation = std::max(r.max_sum_violation, ssum[n + m - 2] - (sa[n - 1] + sb[m - 1]));
    if (a.cols() == b.rows()) {
        const auto sprod = singular_values(CMatrix(a * b));
        for (std::size_t n = 1; n <= len; ++n)
            for (std::size_t m = 1; n + m - 1 <= sprod.size() && m <= sb.size(); ++m)
                r.max_product_violation = std::max(r.max_product_violation, sprod[n + m - 2] - sa[n - 1] * sb[m - 1]);
    }
    const double top = sb.empty() ? 0 : sb[0];
    for (double v : sb)
        if (v > rank_tol * std::max(1.0, top)) ++r.rank_b;
    const std::size_t rk = std::size_t(r.rank_b);
    for (std::size_t n = 1; n <= len; ++n) {
        if (n + rk <= len) r.max_sandwich_violation = std::max(r.max_sandwich_violation, sa[n + rk - 1] - ssum[n - 1]);
        if (n > rk) r.max_sandwich_violation = std::max(r.max_sandwich_violation, ssum[n - 1] - sa[n - rk - 1]);
    }
    return r;
}

double schatten_partial(double p, const std::vector<double>& s, std::size_t N) {
    if (!(p >= 1)) throw DomainError("schatten_partial: p must be at least 1");
    if (N > s.size()) throw DomainError("schatten_partial: N exceeds the spectrum length");
    long double acc = 0;
    for (std::size_t i = 0; i < N; ++i) acc += std::pow((long double)s[i], (long double)p);
    return double(std::pow(acc, 1.0L / p));
}

}  // namespace bergman
