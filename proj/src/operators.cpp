#include "bergman/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/specfun.hpp"

namespace bergman {

namespace {

using ld = long double;

KernelTerm term(cd coef, Multiplier left, Multiplier right) { return {coef, left, right}; }

constexpr Multiplier one{};
constexpr Multiplier logm{0, 0, 1};
Multiplier zpow(int k) { return {k, 0, 0}; }
Multiplier zbarpow(int k) { return {0, k, 0}; }

std::string complex_str(cd a) {
    std::ostringstream os;
    os << a.real();
    if (a.imag() >= 0) os << '+';
    os << a.imag() << 'i';
    return os.str();
}

}  // namespace

int SymbolU::degree() const {
    for (int k = int(coeffs.size()); k >= 1; --k)
        if (coeffs[std::size_t(k - 1)] != 0.0) return k;
    return 0;
}

cd SymbolU::U(cd z) const {
    cd acc = 0;
    for (std::size_t k = coeffs.size(); k >= 1; --k) acc = (acc + coeffs[k - 1]) * z;
    return acc;
}

cd SymbolU::U_prime(cd z) const {
    cd acc = 0;
    for (std::size_t k = coeffs.size(); k >= 1; --k) acc = acc * z + double(k) * coeffs[k - 1];
    return acc;
}

void SymbolU::validate() const {
    if (!std::isfinite(nu) || nu < 0) throw DomainError("symbol: nu must be a nonnegative number");
    for (const cd& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("symbol: coefficients must be finite");
}

KernelSpec& KernelSpec::simplify() {
    std::map<std::pair<Multiplier, Multiplier>, cd> merged;
    for (const auto& t : terms) merged[{t.left, t.right}] += t.coef;
    terms.clear();
    for (const auto& [key, c] : merged)
        if (c != 0.0) terms.push_back({c, key.first, key.second});
    return *this;
}

KernelSpec& KernelSpec::operator+=(const KernelSpec& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    if (name.empty()) name = o.name;
    else if (!o.name.empty()) name += " + " + o.name;
    return simplify();
}

KernelSpec KernelSpec::scaled(cd s) const {
    KernelSpec r = *this;
    for (auto& t : r.terms) t.coef *= s;
    return r.simplify();
}

int KernelSpec::max_shift() const {
    int m = 0;
    for (const auto& t : terms) m = std::max(m, std::abs(t.left.shift() + t.right.shift()));
    return m;
}

KernelSpec operator+(KernelSpec a, const KernelSpec& b) { return a += b; }

KernelSpec conjugate_kernel(const KernelSpec& k) {
    KernelSpec r{"conj(" + k.name + ")", {}};
    for (const auto& t : k.terms) r.terms.push_back({std::conj(t.coef), t.left.conj(), t.right.conj()});
    return r.simplify();
}

KernelSpec adjoint_kernel(const KernelSpec& k) {
    KernelSpec r{"adj(" + k.name + ")", {}};
    for (const auto& t : k.terms) r.terms.push_back({std::conj(t.coef), t.right.conj(), t.left.conj()});
    return r.simplify();
}

Bivariate remainder_coeffs(const std::vector<cd>& coeffs) {
    // For U = z^k:  F = sum_{j=0}^{k-2} (k-1-j) z^j w^{k-2-j}.
    Bivariate f;
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        const int k = int(idx) + 1;
        if (coeffs[idx] == 0.0) continue;
        for (int j = 0; j <= k - 2; ++j) f[{j, k - 2 - j}] += coeffs[idx] * double(k - 1 - j);
    }
    for (auto it = f.begin(); it != f.end();) it = it->second == 0.0 ? f.erase(it) : std::next(it);
    return f;
}

std::string ModelSpec::name() const {
    switch (kind) {
        case ModelKind::E: return "E";
        case ModelKind::Estar: return "Estar";
        case ModelKind::Q0: return "Q0";
        case ModelKind::FrakQ: return "FrakQ(" + complex_str(a) + ")";
        case ModelKind::Rnu: return "Rnu(" + std::to_string(nu) + ")";
        case ModelKind::Y: return "Y(" + complex_str(a) + "," + std::to_string(nu) + ")";
        case ModelKind::L: return "L_u";
        case ModelKind::S: return "S_u";
    }
    return "?";
}

KernelSpec model_kernel(const ModelSpec& spec, const SymbolU* u) {
    auto need_symbol = [&] {
        if (!u) throw DomainError(spec.name() + " requires a symbol");
        u->validate();
    };
    KernelSpec k;
    k.name = spec.name();
    switch (spec.kind) {
        case ModelKind::E:
            k.terms = {term(1, zpow(2), one), term(-2, zpow(1), zpow(1)), term(1, one, zpow(2))};
            break;
        case ModelKind::Estar: {
            KernelSpec e = adjoint_kernel(model_kernel(ModelSpec::E()));
            k.terms = e.terms;
            break;
        }
        case ModelKind::Q0:
            k.terms = {term(1, zpow(1), one), term(-1, one, zpow(1))};
            break;
        case ModelKind::FrakQ: {
            // a Q0 + conj(a) Q0^c, the kernel a(z-w) + conj(a)(zbar-wbar)
            const KernelSpec q = model_kernel(ModelSpec::Q0());
            k.terms = (q.scaled(spec.a) + conjugate_kernel(q).scaled(std::conj(spec.a))).terms;
            break;
        }
        case ModelKind::Rnu:
            if (spec.nu < 0) throw DomainError("Rnu: nu must be nonnegative");
            k.terms = {term(spec.nu, logm, one), term(-spec.nu, one, logm)};
            break;
        case ModelKind::Y:
            k.terms = (model_kernel(ModelSpec::FrakQ(spec.a)) + model_kernel(ModelSpec::Rnu(spec.nu))).terms;
            break;
        case ModelKind::L:
            // U'(w)(z-w)
            need_symbol();
            for (std::size_t i = 0; i < u->coeffs.size(); ++i) {
                const int kk = int(i) + 1;
                const cd c = double(kk) * u->coeffs[i];
                k.terms.push_back(term(c, zpow(1), zpow(kk - 1)));
                k.terms.push_back(term(-c, one, zpow(kk)));
            }
            break;
        case ModelKind::S:
            // F_u(z,w)(z-w)^2
            need_symbol();
            for (const auto& [ij, c] : remainder_coeffs(u->coeffs)) {
                const auto [i, j] = ij;
                k.terms.push_back(term(c, zpow(i + 2), zpow(j)));
                k.terms.push_back(term(-2.0 * c, zpow(i + 1), zpow(j + 1)));
                k.terms.push_back(term(c, zpow(i), zpow(j + 2)));
            }
            break;
    }
    return k.simplify();
}

KernelSpec commutator_kernel(const SymbolU& u) {
    u.validate();
    KernelSpec k{"C_u", {}};
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
        const int kk = int(i) + 1;
        const cd a = u.coeffs[i];
        k.terms.push_back(term(a, zpow(kk), one));
        k.terms.push_back(term(-a, one, zpow(kk)));
        k.terms.push_back(term(std::conj(a), zbarpow(kk), one));
        k.terms.push_back(term(-std::conj(a), one, zbarpow(kk)));
    }
    if (u.nu != 0) {
        k.terms.push_back(term(u.nu, logm, one));
        k.terms.push_back(term(-u.nu, one, logm));
    }
    return k.simplify();
}

std::pair<int, int> BasisSet::locate(int idx) const {
    if (idx < 0 || idx >= dim_) throw DomainError("basis index out of range");
    auto it = std::upper_bound(classes_.begin(), classes_.end(), idx,
                               [](int v, const BasisClass& c) { return v < c.offset; });
    --it;
    return {it->k, idx - it->offset};
}

void BasisSet::radial_values(int k, long double t, long double* out) const {
    const BasisClass& c = cls(k);
    ld p[64];
    std::vector<ld> heap;
    ld* pv = p;
    if (c.count > 64) {
        heap.resize(static_cast<std::size_t>(c.count));
        pv = heap.data();
    }
    quad::orthonormal_values(c.rec, std::size_t(c.count), t, pv);
    for (int i = 0; i < c.count; ++i) {
        ld s = 0;
        for (int j = 0; j <= i; ++j) s += c.coef(i, j) * pv[j];
        out[i] = s;
    }
}

cd BasisSet::evaluate(int idx, cd z) const {
    const auto [k, i] = locate(idx);
    std::vector<ld> q(std::size_t(cls(k).count));
    radial_values(k, std::norm(z), q.data());
    const cd zeta = k >= 0 ? std::pow(z, k) : std::pow(std::conj(z), -k);
    return double(q[std::size_t(i)]) * zeta;
}

double BasisSet::harmonic_norm(int k) const {
    // sqrt((alpha+2)_|k| / |k|!)
    const int m = std::abs(k);
    ld v = 1;
    for (int j = 1; j <= m; ++j) v *= (ld(j) + alpha_ + 1) / ld(j);
    return double(std::sqrt(v));
}

BasisSet build_basis(double alpha, int d, int r0) {
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("build_basis: alpha must exceed -1");
    if (d < 2) throw DomainError("build_basis: degree must be at least 2");
    if (r0 < 1) throw DomainError("build_basis: radial cutoff must be at least 1");
    BasisSet b;
    b.alpha_ = alpha;
    b.d_ = d;
    b.r0_ = r0;
    int offset = 0;
    for (int k = -d; k <= d; ++k) {
        BasisClass c;
        c.k = k;
        c.count = std::min(r0, d + 1 - std::abs(k));
        c.offset = offset;
        c.rec = quad::jacobi_recurrence(std::size_t(c.count), alpha, std::abs(k));
        // Gram of the recurrence family by an exact Gauss rule, then Cholesky cleanup.
        const quad::Rule rule = quad::gauss_jacobi(std::size_t(c.count + 2), alpha, std::abs(k));
        using LMat = Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>;
        LMat gram = LMat::Zero(c.count, c.count);
        std::vector<ld> p(static_cast<std::size_t>(c.count));
        for (std::size_t n = 0; n < rule.size(); ++n) {
            quad::orthonormal_values(c.rec, std::size_t(c.count), rule.nodes[n], p.data());
            for (int i = 0; i < c.count; ++i)
                for (int j = 0; j <= i; ++j) gram(i, j) += ld(rule.weights[n]) * p[std::size_t(i)] * p[std::size_t(j)];
        }
        Eigen::LLT<LMat, Eigen::Lower> llt(gram.selfadjointView<Eigen::Lower>());
        if (llt.info() != Eigen::Success) throw DomainError("build_basis: Gram matrix is not positive definite");
        const LMat L = llt.matrixL();
        for (int i = 0; i < c.count; ++i)
            if (L(i, i) < 1e-13L)
                throw DomainError("build_basis: ill-conditioned Gram (pivot below 1e-13), reduce d or r0");
        c.coef = L.triangularView<Eigen::Lower>().solve(LMat::Identity(c.count, c.count));
        offset += c.count;
        b.classes_.push_back(std::move(c));
    }
    b.dim_ = offset;
    return b;
}

OperatorMatrix projection_matrix(const BasisSet& basis) {
    OperatorMatrix m;
    m.entries = CMatrix::Zero(basis.dim(), basis.dim());
    for (int k = -basis.degree(); k <= basis.degree(); ++k) {
        const int i = basis.index(k, 0);
        m.entries(i, i) = 1.0;
        m.couplings.push_back({k, k});
    }
    m.alpha = basis.alpha();
    m.degree = basis.degree();
    m.radial_cutoff = basis.radial_cutoff();
    m.spec = "P_alpha";
    return m;
}

OperatorMatrix adjoint(const OperatorMatrix& m) {
    OperatorMatrix r = m;
    r.entries = m.entries.adjoint();
    r.spec = "adj(" + m.spec + ")";
    for (auto& [s, t] : r.couplings) std::swap(s, t);
    return r;
}

OperatorMatrix conjugate(const OperatorMatrix& m, const BasisSet& basis) {
    const int n = basis.dim();
    if (m.entries.rows() != n || m.entries.cols() != n) throw DomainError("conjugate: basis mismatch");
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int idx = 0; idx < n; ++idx) {
        const auto [k, i] = basis.locate(idx);
        perm[std::size_t(idx)] = basis.index(-k, i);
    }
    OperatorMatrix r = m;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) r.entries(p, q) = std::conj(m.entries(perm[std::size_t(p)], perm[std::size_t(q)]));
    r.spec = "conj(" + m.spec + ")";
    for (auto& [s, t] : r.couplings) {
        s = -s;
        t = -t;
    }
    return r;
}

namespace {

OperatorMatrix combine(const OperatorMatrix& a, const OperatorMatrix& b, double sign, const char* op) {
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols())
        throw DomainError("operator matrices have different shapes");
    OperatorMatrix r = a;
    r.entries = a.entries + sign * b.entries;
    r.spec = a.spec + op + b.spec;
    r.couplings.insert(r.couplings.end(), b.couplings.begin(), b.couplings.end());
    std::sort(r.couplings.begin(), r.couplings.end());
    r.couplings.erase(std::unique(r.couplings.begin(), r.couplings.end()), r.couplings.end());
    return r;
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) { return combine(a, b, 1, " + "); }
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) { return combine(a, b, -1, " - "); }

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols())
        throw DomainError("operator matrices have different shapes");
    return (a.entries - b.entries).cwiseAbs().maxCoeff();
}

}  // namespace bergman
