#include <omp.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "bergman/operators.hpp"
#include "bergman/specfun.hpp"

namespace bergman {

namespace {

using ld = long double;

// z^a zbar^b zeta_k = t^e zeta_{k+a-b}
int radial_power(const Multiplier& m, int k) {
    return std::min(m.z + std::max(k, 0), m.zbar + std::max(-k, 0));
}

std::size_t rule_points(const BasisSet& basis) { return std::size_t(2 * basis.radial_cutoff() + 4); }

// Radial integrals  int q_{k,i}(t) t^c (log t)^l (alpha+1)(1-t)^alpha dt  on the full disk,
// with the per-power Gauss rules shared by all classes.
class RadialIntegrals {
public:
    explicit RadialIntegrals(const BasisSet& basis)
        : basis_(basis), rules_(basis.alpha(), rule_points(basis)) {}

    void prefetch(int c_max) {
        for (int c = 0; c <= c_max; ++c) rules_.get(c);
    }

    // out[i] = int q_{k,i} t^c log^l
    void single(int k, int c, int l, double* out) {
        const quad::LogRule& r = rules_.get(c);
        const BasisClass& cl = basis_.cls(k);
        std::vector<ld> q(static_cast<std::size_t>(cl.count));
        std::vector<ld> acc(std::size_t(cl.count), 0);
        const std::vector<double>& w = l == 0 ? r.weights : r.log_weights;
        for (std::size_t n = 0; n < r.size(); ++n) {
            basis_.radial_values(k, r.nodes[n], q.data());
            for (int i = 0; i < cl.count; ++i) acc[std::size_t(i)] += w[n] * q[std::size_t(i)];
        }
        for (int i = 0; i < cl.count; ++i) out[i] = double(acc[std::size_t(i)]);
    }

    // out(i, j) = int q_{kp,i} q_{kq,j} t^c log^l
    void pair(int kp, int kq, int c, int l, Eigen::MatrixXd& out) {
        const quad::LogRule& r = rules_.get(c);
        const int np = basis_.cls(kp).count, nq = basis_.cls(kq).count;
        Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic> acc = Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>::Zero(np, nq);
        std::vector<ld> qp(static_cast<std::size_t>(np)), qq(static_cast<std::size_t>(nq));
        const std::vector<double>& w = l == 0 ? r.weights : r.log_weights;
        for (std::size_t n = 0; n < r.size(); ++n) {
            basis_.radial_values(kp, r.nodes[n], qp.data());
            basis_.radial_values(kq, r.nodes[n], qq.data());
            for (int i = 0; i < np; ++i)
                for (int j = 0; j < nq; ++j) acc(i, j) += w[n] * qp[std::size_t(i)] * qq[std::size_t(j)];
        }
        out = acc.cast<double>();
    }

private:
    const BasisSet& basis_;
    quad::LogRuleCache rules_;
};

void require_log_power(const KernelSpec& kernel) {
    for (const auto& t : kernel.terms)
        if (t.left.log > 1 || t.right.log > 1 || t.left.log < 0 || t.right.log < 0)
            throw DomainError("kernel multipliers carry at most one log factor");
}

int max_power(const KernelSpec& kernel, int d) {
    int m = 0;
    for (const auto& t : kernel.terms)
        m = std::max(m, std::max(t.left.z + t.left.zbar, t.right.z + t.right.zbar));
    return 2 * (d + m) + 2 * kernel.max_shift() + 2;
}

OperatorMatrix empty_matrix(const BasisSet& basis, std::string spec) {
    OperatorMatrix m;
    m.entries = CMatrix::Zero(basis.dim(), basis.dim());
    m.alpha = basis.alpha();
    m.degree = basis.degree();
    m.radial_cutoff = basis.radial_cutoff();
    m.spec = std::move(spec);
    return m;
}

std::vector<std::pair<int, int>> kernel_couplings(const KernelSpec& kernel, const BasisSet& basis) {
    std::vector<std::pair<int, int>> out;
    const int d = basis.degree();
    for (int kq = -d; kq <= d; ++kq)
        for (const auto& t : kernel.terms) {
            const int kp = kq + t.right.shift() + t.left.shift();
            if (basis.has_class(kp)) out.push_back({kq, kp});
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

// Entry <M_A P M_B beta_q, beta_p> = <B beta_q, eta> <A eta, beta_p> with eta the unit harmonic
// function of class k' = k_q + shift(B); the product is a rank-one block (k_q -> k_p).
OperatorMatrix assemble_kernel(const KernelSpec& kernel, const BasisSet& basis) {
    require_log_power(kernel);
    OperatorMatrix m = empty_matrix(basis, kernel.name);
    m.couplings = kernel_couplings(kernel, basis);
    RadialIntegrals radial(basis);
    radial.prefetch(max_power(kernel, basis.degree()));
    const int d = basis.degree();

#pragma omp parallel for schedule(dynamic)
    for (int kp = -d; kp <= d; ++kp) {
        const BasisClass& cp = basis.cls(kp);
        std::vector<double> u(std::size_t(basis.radial_cutoff())), v(static_cast<std::size_t>(cp.count));
        for (const auto& t : kernel.terms) {
            const int kmid = kp - t.left.shift();
            const int kq = kmid - t.right.shift();
            if (!basis.has_class(kq)) continue;
            const BasisClass& cq = basis.cls(kq);
            const double eta = basis.harmonic_norm(kmid);
            radial.single(kq, radial_power(t.right, kq) + std::abs(kmid), t.right.log, u.data());
            radial.single(kp, radial_power(t.left, kmid) + std::abs(kp), t.left.log, v.data());
            for (int i = 0; i < cp.count; ++i)
                for (int j = 0; j < cq.count; ++j)
                    m.entries(cp.offset + i, cq.offset + j) += t.coef * (eta * eta * v[std::size_t(i)] * u[std::size_t(j)]);
        }
    }
    return m;
}

OperatorMatrix assemble_kernel_serial(const KernelSpec& kernel, const BasisSet& basis) {
    require_log_power(kernel);
    OperatorMatrix m = empty_matrix(basis, kernel.name);
    m.couplings = kernel_couplings(kernel, basis);
    RadialIntegrals radial(basis);
    const int n = basis.dim();
    for (int p = 0; p < n; ++p) {
        const auto [kp, ip] = basis.locate(p);
        for (int q = 0; q < n; ++q) {
            const auto [kq, iq] = basis.locate(q);
            cd acc = 0;
            for (const auto& t : kernel.terms) {
                const int kmid = kq + t.right.shift();
                if (kmid + t.left.shift() != kp) continue;
                const double eta = basis.harmonic_norm(kmid);
                // <B beta_q, eta>: pair against the constant-in-t radial of eta via a 1-vector class view
                const int cu = radial_power(t.right, kq) + std::abs(kmid);
                const int cv = radial_power(t.left, kmid) + std::abs(kp);
                std::vector<double> u(std::size_t(basis.cls(kq).count)), v(std::size_t(basis.cls(kp).count));
                radial.single(kq, cu, t.right.log, u.data());
                radial.single(kp, cv, t.left.log, v.data());
                acc += t.coef * (eta * eta * v[std::size_t(ip)] * u[std::size_t(iq)]);
            }
            m.entries(p, q) = acc;
        }
    }
    return m;
}

OperatorMatrix multiplication_matrix(const std::vector<std::pair<cd, Multiplier>>& u, const BasisSet& basis) {
    OperatorMatrix m = empty_matrix(basis, "M_u");
    RadialIntegrals radial(basis);
    const int d = basis.degree();
    int maxc = 0;
    for (const auto& [c, mult] : u) {
        if (mult.log < 0 || mult.log > 1) throw DomainError("multiplication: at most one log factor");
        maxc = std::max(maxc, mult.z + mult.zbar);
    }
    radial.prefetch(2 * d + maxc + 2);
    for (int kq = -d; kq <= d; ++kq)
        for (const auto& [c, mult] : u)
            if (basis.has_class(kq + mult.shift())) m.couplings.push_back({kq, kq + mult.shift()});
    std::sort(m.couplings.begin(), m.couplings.end());
    m.couplings.erase(std::unique(m.couplings.begin(), m.couplings.end()), m.couplings.end());

#pragma omp parallel for schedule(dynamic)
    for (int kp = -d; kp <= d; ++kp) {
        Eigen::MatrixXd block;
        for (const auto& [coef, mult] : u) {
            const int kq = kp - mult.shift();
            if (!basis.has_class(kq)) continue;
            const int c = radial_power(mult, kq) + std::abs(kp);
            radial.pair(kp, kq, c, mult.log, block);
            m.entries.block(basis.cls(kp).offset, basis.cls(kq).offset, block.rows(), block.cols()) +=
                coef * block.cast<cd>();
        }
    }
    return m;
}

OperatorMatrix assemble_commutator_kernel(const SymbolU& u, const BasisSet& basis) {
    OperatorMatrix m = assemble_kernel(commutator_kernel(u), basis);
    m.spec = "C_u";
    return m;
}

OperatorMatrix assemble_commutator_projection(const SymbolU& u, const BasisSet& basis) {
    u.validate();
    std::vector<std::pair<cd, Multiplier>> mult;
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
        const int k = int(i) + 1;
        if (u.coeffs[i] == 0.0) continue;
        mult.push_back({u.coeffs[i], {k, 0, 0}});
        mult.push_back({std::conj(u.coeffs[i]), {0, k, 0}});
    }
    if (u.nu != 0) mult.push_back({u.nu, {0, 0, 1}});
    const OperatorMatrix mu = multiplication_matrix(mult, basis);
    const OperatorMatrix p = projection_matrix(basis);
    OperatorMatrix c = empty_matrix(basis, "C_u");
    c.entries = mu.entries * p.entries - p.entries * mu.entries;
    c.couplings = mu.couplings;
    return c;
}

OperatorMatrix assemble_model(const ModelSpec& spec, const BasisSet& basis, const SymbolU* u) {
    OperatorMatrix m = assemble_kernel(model_kernel(spec, u), basis);
    m.spec = spec.name();
    return m;
}

}  // namespace bergman
