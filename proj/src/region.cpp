#include "bergman/region.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "bergman/quadrature.hpp"
#include "bergman/specfun.hpp"

namespace bergman {

namespace {

using ld = long double;

int radial_power(const Multiplier& m, int k) {
    return std::min(m.z + std::max(k, 0), m.zbar + std::max(-k, 0));
}

double harmonic_norm(double alpha, int k) {
    const int m = std::abs(k);
    ld v = 1;
    for (int j = 1; j <= m; ++j) v *= (ld(j) + alpha + 1) / ld(j);
    return double(std::sqrt(v));
}

// Radial integrals  int_range q_{k,i}(t) t^s (log t)^l (alpha+1)(1-t)^alpha dt  for half-integer s.
// The annulus part uses one graded rule whose nodes are shared by every class and exponent;
// the full-disk part uses the exact per-power Gauss rules (integer s only).
class RegionRadial {
public:
    RegionRadial(const BasisSet& basis, double lo, int max_s)
        : basis_(basis), lo_(lo), full_(basis.alpha(), std::size_t(2 * basis.radial_cutoff() + 4)) {
        if (lo > 0) {
            const std::size_t last = std::size_t(max_s / 2 + basis.radial_cutoff() + 48);
            rule_ = quad::graded_interval_rule(basis.alpha(), lo, last, 24);
            log_.resize(rule_.size());
            for (std::size_t n = 0; n < rule_.size(); ++n) log_[n] = std::log(rule_.nodes[n]);
            const int d = basis.degree();
            qvals_.resize(std::size_t(2 * d + 1));
            for (int k = -d; k <= d; ++k) {
                const int cnt = basis.cls(k).count;
                auto& tab = qvals_[std::size_t(k + d)];
                tab.resize(rule_.size() * std::size_t(cnt));
                std::vector<ld> q(static_cast<std::size_t>(cnt));
                for (std::size_t n = 0; n < rule_.size(); ++n) {
                    basis.radial_values(k, rule_.nodes[n], q.data());
                    for (int i = 0; i < cnt; ++i) tab[n * std::size_t(cnt) + std::size_t(i)] = double(q[std::size_t(i)]);
                }
            }
        }
    }

    // twice_s = 2s
    void annulus(int k, int twice_s, int l, double* out) {
        const int cnt = basis_.cls(k).count;
        const auto& tab = qvals_[std::size_t(k + basis_.degree())];
        const std::vector<double>& ts = powers(twice_s);
        std::vector<ld> acc(std::size_t(cnt), 0);
        for (std::size_t n = 0; n < rule_.size(); ++n) {
            double w = rule_.weights[n] * ts[n];
            if (l == 1) w *= log_[n];
            for (int i = 0; i < cnt; ++i) acc[std::size_t(i)] += w * tab[n * std::size_t(cnt) + std::size_t(i)];
        }
        for (int i = 0; i < cnt; ++i) out[i] = double(acc[std::size_t(i)]);
    }

    void full(int k, int twice_s, int l, double* out) {
        if (twice_s % 2 != 0) throw DomainError("full-disk radial integral needs an integer power");
        const quad::LogRule& r = full_.get(twice_s / 2);
        const int cnt = basis_.cls(k).count;
        std::vector<ld> q(static_cast<std::size_t>(cnt)), acc(std::size_t(cnt), 0);
        const std::vector<double>& w = l == 0 ? r.weights : r.log_weights;
        for (std::size_t n = 0; n < r.size(); ++n) {
            basis_.radial_values(k, r.nodes[n], q.data());
            for (int i = 0; i < cnt; ++i) acc[std::size_t(i)] += w[n] * q[std::size_t(i)];
        }
        for (int i = 0; i < cnt; ++i) out[i] = double(acc[std::size_t(i)]);
    }

    void integrate(RegionKind kind, int k, int twice_s, int l, double* out) {
        switch (kind) {
            case RegionKind::FullDisk:
                full(k, twice_s, l, out);
                return;
            case RegionKind::Annulus:
            case RegionKind::Sector:
                annulus(k, twice_s, l, out);
                return;
            case RegionKind::InnerDisk: {
                const int cnt = basis_.cls(k).count;
                std::vector<double> a(static_cast<std::size_t>(cnt));
                full(k, twice_s, l, out);
                annulus(k, twice_s, l, a.data());
                for (int i = 0; i < cnt; ++i) out[i] -= a[std::size_t(i)];
                return;
            }
        }
    }

    // out(i, j) = int q_{kp,i} q_{kq,j} t^s over the range (no log factor)
    void pair(RegionKind kind, int kp, int kq, int twice_s, Eigen::MatrixXd& out) {
        const int np = basis_.cls(kp).count, nq = basis_.cls(kq).count;
        Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic> acc = Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>::Zero(np, nq);
        if (kind != RegionKind::FullDisk) {
            const auto& tp = qvals_[std::size_t(kp + basis_.degree())];
            const auto& tq = qvals_[std::size_t(kq + basis_.degree())];
            const std::vector<double>& ts = powers(twice_s);
            const ld sign = kind == RegionKind::InnerDisk ? -1 : 1;
            for (std::size_t n = 0; n < rule_.size(); ++n) {
                const ld w = sign * rule_.weights[n] * ts[n];
                for (int i = 0; i < np; ++i)
                    for (int j = 0; j < nq; ++j)
                        acc(i, j) += w * tp[n * std::size_t(np) + std::size_t(i)] * tq[n * std::size_t(nq) + std::size_t(j)];
            }
        }
        if (kind == RegionKind::FullDisk || kind == RegionKind::InnerDisk) {
            if (twice_s % 2 != 0) throw DomainError("full-disk radial integral needs an integer power");
            const quad::LogRule& r = full_.get(twice_s / 2);
            std::vector<ld> qp(static_cast<std::size_t>(np)), qq(static_cast<std::size_t>(nq));
            for (std::size_t n = 0; n < r.size(); ++n) {
                basis_.radial_values(kp, r.nodes[n], qp.data());
                basis_.radial_values(kq, r.nodes[n], qq.data());
                for (int i = 0; i < np; ++i)
                    for (int j = 0; j < nq; ++j) acc(i, j) += r.weights[n] * qp[std::size_t(i)] * qq[std::size_t(j)];
            }
        }
        out = acc.cast<double>();
    }

private:
    const std::vector<double>& powers(int twice_s) {
        auto it = pow_.find(twice_s);
        if (it != pow_.end()) return it->second;
        std::vector<double> v(rule_.size());
        for (std::size_t n = 0; n < rule_.size(); ++n) v[n] = std::exp(0.5 * twice_s * log_[n]);
        return pow_.emplace(twice_s, std::move(v)).first->second;
    }

    const BasisSet& basis_;
    double lo_;
    quad::Rule rule_;
    std::vector<double> log_;
    std::vector<std::vector<double>> qvals_;
    std::map<int, std::vector<double>> pow_;
    quad::LogRuleCache full_;
};

double region_lo(const Region& a, const Region& b) {
    for (const Region* r : {&a, &b})
        if (r->kind != RegionKind::FullDisk) return std::exp(-4 * std::numbers::pi / r->N);
    return 0.0;
}

void check_pair(const Region& a, const Region& b) {
    if (a.kind != RegionKind::FullDisk && b.kind != RegionKind::FullDisk && a.N != b.N)
        throw DomainError("region_compress: both regions must belong to the same partition");
}

}  // namespace

int default_harmonic_cutoff(int d) { return 4 * d + 32; }

OperatorMatrix region_compress(const KernelSpec& kernel, const BasisSet& basis, const Region& left,
                               const Region& right, int harmonic_cutoff) {
    check_pair(left, right);
    for (const auto& t : kernel.terms)
        if (t.left.log > 1 || t.right.log > 1) throw DomainError("kernel multipliers carry at most one log factor");
    const int d = basis.degree(), M = harmonic_cutoff, H = 2 * M + 1, dim = basis.dim();
    if (M < d) throw DomainError("region_compress: harmonic cutoff must be at least the degree");
    int max_mult = 0;
    for (const auto& t : kernel.terms)
        max_mult = std::max({max_mult, t.left.z + t.left.zbar, t.right.z + t.right.zbar});
    RegionRadial radial(basis, region_lo(left, right), 2 * (d + M + max_mult) + 4);

    OperatorMatrix out;
    out.entries = CMatrix::Zero(dim, dim);
    out.alpha = basis.alpha();
    out.degree = d;
    out.radial_cutoff = basis.radial_cutoff();
    out.spec = "M_L(" + kernel.name + ")M_R";

    std::vector<double> eta(static_cast<std::size_t>(H));
    for (int m = -M; m <= M; ++m) eta[std::size_t(m + M)] = harmonic_norm(basis.alpha(), m);
    std::vector<double> rad(std::size_t(basis.radial_cutoff()));

    for (const auto& t : kernel.terms) {
        // U(m, q) = <B chi_R beta_q, eta_m>,  V(p, m) = <A eta_m, chi_L beta_p>
        CMatrix U = CMatrix::Zero(H, dim), V = CMatrix::Zero(dim, H);
        for (int kq = -d; kq <= d; ++kq) {
            const int kmid = kq + t.right.shift();
            const int e = radial_power(t.right, kq);
            const BasisClass& c = basis.cls(kq);
            for (int m = -M; m <= M; ++m) {
                const cd ang = angular_factor(kmid - m, right);
                if (ang == 0.0) continue;
                radial.integrate(right.kind, kq, 2 * e + std::abs(kmid) + std::abs(m), t.right.log, rad.data());
                const cd f = ang * eta[std::size_t(m + M)];
                for (int i = 0; i < c.count; ++i) U(m + M, c.offset + i) = f * rad[std::size_t(i)];
            }
        }
        for (int m = -M; m <= M; ++m) {
            const int k2 = m + t.left.shift();
            const int e = radial_power(t.left, m);
            for (int kp = -d; kp <= d; ++kp) {
                const cd ang = angular_factor(k2 - kp, left);
                if (ang == 0.0) continue;
                const BasisClass& c = basis.cls(kp);
                radial.integrate(left.kind, kp, 2 * e + std::abs(k2) + std::abs(kp), t.left.log, rad.data());
                const cd f = std::conj(ang) * eta[std::size_t(m + M)];
                for (int i = 0; i < c.count; ++i) V(c.offset + i, m + M) = f * rad[std::size_t(i)];
            }
        }
        out.entries.noalias() += t.coef * (V * U);
    }
    return out;
}

CMatrix region_gram(const BasisSet& basis, const Region& region) {
    const int d = basis.degree(), dim = basis.dim();
    const double lo = region.kind == RegionKind::FullDisk ? 0.0 : std::exp(-4 * std::numbers::pi / region.N);
    RegionRadial radial(basis, lo, 4 * d + 4);
    CMatrix g = CMatrix::Zero(dim, dim);
    Eigen::MatrixXd block;
    for (int kp = -d; kp <= d; ++kp)
        for (int kq = -d; kq <= d; ++kq) {
            // <chi beta_q, beta_p>: angular index k_q - k_p, radial power (|k_p| + |k_q|)/2
            const cd ang = angular_factor(kq - kp, region);
            if (ang == 0.0) continue;
            radial.pair(region.kind, kp, kq, std::abs(kp) + std::abs(kq), block);
            g.block(basis.cls(kp).offset, basis.cls(kq).offset, block.rows(), block.cols()) = ang * block.cast<cd>();
        }
    return g;
}

namespace {

std::size_t sector_rule_points(int r0, int harmonic_cutoff) {
    return std::size_t(harmonic_cutoff / 2 + r0 + 48);
}

}  // namespace

void SectorBasis::radial_values(int k, double t, double* out) const {
    const auto& ak = a.at(std::size_t(k + K));
    const auto& bk = b.at(std::size_t(k + K));
    const double scale = std::pow(t, 0.5 * N * std::abs(k));
    double prev = 0, cur = 1 / bk[0];
    for (int i = 0; i < r0; ++i) {
        out[i] = scale * cur;
        if (i + 1 == r0) break;
        const double next = ((t - ak[std::size_t(i)]) * cur - bk[std::size_t(i)] * prev) / bk[std::size_t(i) + 1];
        prev = cur;
        cur = next;
    }
}

cd SectorBasis::evaluate(int idx, cd z) const {
    if (idx < 0 || idx >= dim()) throw DomainError("sector basis index out of range");
    const int k = idx / r0 - K, i = idx % r0;
    const Region r = region();
    const double t = std::norm(z);
    double th = std::arg(z);
    if (th < 0) th += 2 * std::numbers::pi;
    if (t <= r.t_lo() || t >= 1 || th <= r.theta_lo() || th >= r.theta_hi()) return 0.0;
    std::vector<double> v(static_cast<std::size_t>(r0));
    radial_values(k, t, v.data());
    return std::sqrt(double(N)) * std::polar(v[std::size_t(i)], double(N * k) * th);
}

SectorBasis build_sector_basis(double alpha, int j, int N, int K, int r0, int harmonic_cutoff) {
    if (K < 0 || r0 < 1) throw DomainError("sector basis: need K >= 0 and r0 >= 1");
    SectorBasis sb;
    sb.alpha = alpha;
    sb.j = j;
    sb.N = N;
    sb.K = K;
    sb.r0 = r0;
    const Region r = Region::sector(j, N);
    sb.rule = quad::graded_interval_rule(alpha, r.t_lo(), sector_rule_points(r0, harmonic_cutoff), 24);
    const std::size_t nn = sb.rule.size();
    for (int k = -K; k <= K; ++k) {
        const double f = N * std::abs(k);
        std::vector<double> w(nn), sq(nn);
        for (std::size_t n = 0; n < nn; ++n) {
            w[n] = sb.rule.weights[n] * std::pow(sb.rule.nodes[n], f);
            sq[n] = std::pow(sb.rule.nodes[n], 0.5 * f);
        }
        // discrete Stieltjes with one reorthogonalization sweep
        Eigen::MatrixXd p(static_cast<Eigen::Index>(nn), r0);
        std::vector<double> ak(std::size_t(r0), 0.0), bk(std::size_t(r0) + 1, 0.0);
        double mass = 0;
        for (double x : w) mass += x;
        bk[0] = std::sqrt(mass);
        for (std::size_t n = 0; n < nn; ++n) p(Eigen::Index(n), 0) = 1 / bk[0];
        for (int i = 0; i < r0; ++i) {
            double ai = 0;
            for (std::size_t n = 0; n < nn; ++n) ai += w[n] * sb.rule.nodes[n] * p(Eigen::Index(n), i) * p(Eigen::Index(n), i);
            ak[std::size_t(i)] = ai;
            if (i + 1 == r0) break;
            Eigen::VectorXd q(static_cast<Eigen::Index>(nn));
            for (std::size_t n = 0; n < nn; ++n) {
                const Eigen::Index e = Eigen::Index(n);
                q(e) = (sb.rule.nodes[n] - ai) * p(e, i) - (i > 0 ? bk[std::size_t(i)] * p(e, i - 1) : 0.0);
            }
            for (int prev = 0; prev <= i; ++prev) {
                double c = 0;
                for (std::size_t n = 0; n < nn; ++n) c += w[n] * q(Eigen::Index(n)) * p(Eigen::Index(n), prev);
                q -= c * p.col(prev);
            }
            double nrm = 0;
            for (std::size_t n = 0; n < nn; ++n) nrm += w[n] * q(Eigen::Index(n)) * q(Eigen::Index(n));
            bk[std::size_t(i) + 1] = std::sqrt(nrm);
            if (!(bk[std::size_t(i) + 1] > 1e-13 * bk[0])) throw DomainError("sector basis: radial recurrence broke down");
            p.col(i + 1) = q / bk[std::size_t(i) + 1];
        }
        for (std::size_t n = 0; n < nn; ++n) p.row(Eigen::Index(n)) *= sq[n];
        sb.a.push_back(std::move(ak));
        sb.b.push_back(std::move(bk));
        sb.values.push_back(std::move(p));
    }
    return sb;
}

// <T w_q, w_p> = sum_terms coef sum_m <A eta_m, w_p> <B w_q, eta_m>
OperatorMatrix sector_compress(const KernelSpec& kernel, const SectorBasis& sb, int harmonic_cutoff) {
    for (const auto& t : kernel.terms)
        if (t.left.log > 1 || t.right.log > 1) throw DomainError("kernel multipliers carry at most one log factor");
    const int M = harmonic_cutoff, H = 2 * M + 1, dim = sb.dim(), K = sb.K, N = sb.N;
    if (sector_rule_points(sb.r0, M) > sb.rule.size()) throw DomainError("sector_compress: radial rule too short for the cutoff");
    const Region reg = sb.region();
    const std::size_t nn = sb.rule.size();
    const double rootN = std::sqrt(double(N));

    OperatorMatrix out;
    out.entries = CMatrix::Zero(dim, dim);
    out.alpha = sb.alpha;
    out.degree = N * K;
    out.radial_cutoff = sb.r0;
    out.spec = "M_" + std::to_string(sb.j) + "(" + kernel.name + ")M_" + std::to_string(sb.j);

    std::vector<double> logt(nn);
    for (std::size_t n = 0; n < nn; ++n) logt[n] = std::log(sb.rule.nodes[n]);
    // radial(m, (k,i)) = int eta0(m) t^{|m|/2 + e/2} log^l rho_{k,i}
    auto radial_table = [&](int zsum, int l) {
        Eigen::MatrixXd wt(H, Eigen::Index(nn));
        for (int m = -M; m <= M; ++m) {
            const double eta = harmonic_norm(sb.alpha, m);
            for (std::size_t n = 0; n < nn; ++n)
                wt(m + M, Eigen::Index(n)) = sb.rule.weights[n] * eta *
                                             std::exp(0.5 * (std::abs(m) + zsum) * logt[n]) * (l == 1 ? logt[n] : 1.0);
        }
        Eigen::MatrixXd r(H, dim);
        for (int k = -K; k <= K; ++k) r.middleCols(sb.index(k, 0), sb.r0) = wt * sb.values[std::size_t(k + K)];
        return r;
    };

    for (const auto& t : kernel.terms) {
        const Eigen::MatrixXd ru = radial_table(t.right.z + t.right.zbar, t.right.log);
        const Eigen::MatrixXd rv = radial_table(t.left.z + t.left.zbar, t.left.log);
        CMatrix U(H, dim), V(dim, H);
        for (int m = -M; m <= M; ++m)
            for (int k = -K; k <= K; ++k) {
                const cd au = rootN * angular_factor(N * k + t.right.shift() - m, reg);
                const cd av = rootN * angular_factor(m + t.left.shift() - N * k, reg);
                for (int i = 0; i < sb.r0; ++i) {
                    const int q = sb.index(k, i);
                    U(m + M, q) = au * ru(m + M, q);
                    V(q, m + M) = av * rv(m + M, q);
                }
            }
        out.entries.noalias() += t.coef * (V * U);
    }
    return out;
}

}  // namespace bergman
