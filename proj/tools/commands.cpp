#include "commands.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <iomanip>
#include <sstream>

#include "bergman/asymptotics.hpp"
#include "bergman/basis.hpp"
#include "bergman/matrix_io.hpp"
#include "bergman/moments.hpp"
#include "bergman/region.hpp"
#include "bergman/specfun.hpp"
#include "bergman/spectral.hpp"

namespace bergman::cli {

using json = nlohmann::json;

namespace {

double parse_real(const std::string& s, std::size_t pos) {
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;  // from_chars rejects a leading '+'
    double v = 0;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e) throw ParseError("malformed number '" + s + "'", pos);
    return v;
}

}  // namespace

cd parse_complex(const std::string& text, std::size_t offset) {
    if (text.empty()) throw ParseError("empty number", offset);
    if (text.back() != 'i') return {parse_real(text, offset), 0.0};
    const std::string body = text.substr(0, text.size() - 1);
    // split at the last sign that is not a leading sign or part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    const std::string im = split == std::string::npos ? body : body.substr(split);
    double imag;
    if (im.empty() || im == "+") imag = 1;
    else if (im == "-") imag = -1;
    else imag = parse_real(im, offset + (split == std::string::npos ? 0 : split));
    return {re.empty() ? 0.0 : parse_real(re, offset), imag};
}

SymbolU parse_symbol(const std::string& text) {
    SymbolU u;
    bool seen_nu = false, seen_u = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        const std::string field = text.substr(pos, end - pos);
        if (field.empty()) {
            if (end == text.size()) break;
            throw ParseError("empty field", pos);
        }
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", pos);
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "nu") {
            if (seen_nu) throw ParseError("duplicate nu", pos);
            seen_nu = true;
            u.nu = parse_real(value, pos + eq + 1);
        } else if (key == "U") {
            if (seen_u) throw ParseError("duplicate U", pos);
            seen_u = true;
            std::size_t p = 0;
            while (p <= value.size()) {
                std::size_t c = value.find(',', p);
                if (c == std::string::npos) c = value.size();
                u.coeffs.push_back(parse_complex(value.substr(p, c - p), pos + eq + 1 + p));
                p = c + 1;
            }
        } else {
            throw ParseError("unknown key '" + key + "'", pos);
        }
        pos = end + 1;
    }
    if (u.nu < 0) throw DomainError("symbol: nu must be nonnegative");
    u.validate();
    return u;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json complex_json(cd c) { return json::array({c.real(), c.imag()}); }

json symbol_json(const SymbolU& u) {
    json coeffs = json::array();
    for (const cd& c : u.coeffs) coeffs.push_back(complex_json(c));
    return {{"coeffs", coeffs}, {"nu", u.nu}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Options {
    double alpha = 0;
    int degree = 16;
    int r0 = 8;
    std::string symbol = "nu=0;U=1";
    std::string op = "commutator";
    std::string a = "1";
    double nu = 0;
    std::string output;
    std::string format = "csv";
    int threads = 0;
    std::uint64_t seed = 1;
    int count = 10;
    std::string seq = "b";
    std::string input;
    double p = 1;
    std::vector<int> window;
    std::vector<int> degrees = {48, 96, 192};
    std::vector<int> r0s = {8};
    double window_lo = 0.25, window_hi = 0.75;
    bool no_runtime = false;
    int sectors = 4;
    int cutoff = 0;
};

void check_common(const Options& o) {
    if (!(o.alpha > -1)) throw UsageError("alpha must exceed -1");
    if (o.degree < 4) throw UsageError("degree must be at least 4");
    if (o.r0 < 2) throw UsageError("r0 must be at least 2");
    if (o.nu < 0) throw UsageError("nu must be nonnegative");
}

json common_config(const Options& o, const std::string& command) {
    return {{"command", command}, {"alpha", o.alpha}, {"degree", o.degree}, {"r0", o.r0}};
}

OperatorMatrix build_operator(const Options& o, const BasisSet& basis, json& config) {
    config["op"] = o.op;
    if (o.op == "commutator" || o.op == "L" || o.op == "S") {
        const SymbolU u = parse_symbol(o.symbol);
        config["symbol"] = symbol_json(u);
        if (o.op == "commutator") return assemble_commutator_kernel(u, basis);
        return assemble_model(o.op == "L" ? ModelSpec::L() : ModelSpec::S(), basis, &u);
    }
    const cd a = parse_complex(o.a);
    if (o.op == "E") return assemble_model(ModelSpec::E(), basis);
    if (o.op == "Estar") return assemble_model(ModelSpec::Estar(), basis);
    if (o.op == "Q0") return assemble_model(ModelSpec::Q0(), basis);
    if (o.op == "FrakQ") {
        config["a"] = complex_json(a);
        return assemble_model(ModelSpec::FrakQ(a), basis);
    }
    if (o.op == "Rnu") {
        config["nu"] = o.nu;
        return assemble_model(ModelSpec::Rnu(o.nu), basis);
    }
    if (o.op == "Y") {
        config["a"] = complex_json(a);
        config["nu"] = o.nu;
        return assemble_model(ModelSpec::Y(a, o.nu), basis);
    }
    throw UsageError("unknown operator '" + o.op + "'");
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

// ---- verify -------------------------------------------------------------------

struct Check {
    std::string name;
    double error;
    double tolerance;
};

std::vector<Check> verify_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform_int = [&](int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); };
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53; };
    const double alphas[] = {0.0, 0.5, 1.0, 2.5};
    std::vector<Check> checks;

    double err = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const MeasureConfig cfg(alphas[uniform_int(0, 3)]);
        const int m = uniform_int(0, 5), n = uniform_int(0, 5), p = uniform_int(0, 5);
        const int q = std::max(0, p - (m - n) + uniform_int(-1, 1));
        const int logpow = uniform_int(0, 2);
        const int N = 1 << uniform_int(1, 3);
        const Region regions[] = {Region::full_disk(), Region::inner_disk(N), Region::annulus(N),
                                  Region::sector(uniform_int(1, N), N)};
        const Region r = regions[uniform_int(0, 3)];
        const cd exact = monomial_inner(m, n, p, q, cfg, logpow, r);
        const cd oracle = quad_oracle_inner(m, n, p, q, cfg, logpow, r, 32);
        if (std::abs(exact) > 1e-300) err = std::max(err, std::abs(exact - oracle) / std::abs(exact));
        else err = std::max(err, std::abs(oracle));
    }
    checks.push_back({"moments_vs_quadrature_oracle", err, 1e-9});

    err = 0;
    for (double a : alphas)
        for (int n = 2; n <= 200; ++n) err = std::max(err, std::fabs(b_closed(n, a) / b_via_sum(n, a) - 1));
    checks.push_back({"b_closed_vs_sum", err, 1e-12});

    {
        const double a = alphas[uniform_int(0, 3)];
        err = 0;
        for (int which = 0; which < 2; ++which) {
            std::vector<LogPolynomial> fam;
            for (int n = 2; n <= 12; ++n) fam.push_back(which == 0 ? e_fn(n, a) : varphi_fn(n, a));
            for (std::size_t i = 0; i < fam.size(); ++i)
                for (std::size_t j = 0; j < fam.size(); ++j)
                    err = std::max(err, double(std::abs(inner(fam[i], fam[j], a) - cld(i == j ? 1 : 0))));
        }
        checks.push_back({"e_varphi_gram", err, 1e-10});
    }

    err = 0;
    {
        const double a = alphas[uniform_int(0, 3)];
        const cd coef(uniform(-2, 2), uniform(-2, 2));
        const double nu = uniform(0, 2);
        for (int n = 0; n <= 12; ++n) {
            const double direct = t_coeff_exact(n, a, coef, nu);
            const double t = t_coeff(n, a, coef, nu);
            err = std::max(err, std::fabs(t / direct - 1));
        }
    }
    checks.push_back({"t_coeff_vs_norm", err, 1e-10});

    {
        SymbolU u;
        const int g = uniform_int(1, 3);
        for (int k = 0; k < g; ++k) u.coeffs.push_back({uniform(-1, 1), uniform(-1, 1)});
        u.nu = uniform(0, 1);
        const BasisSet basis = build_basis(alphas[uniform_int(0, 3)], 10, 6);
        checks.push_back({"commutator_kernel_vs_projection",
                          max_abs_diff(assemble_commutator_kernel(u, basis), assemble_commutator_projection(u, basis)),
                          1e-12});
        const OperatorMatrix p = projection_matrix(basis);
        checks.push_back({"projection_idempotent", (p.entries * p.entries - p.entries).cwiseAbs().maxCoeff(), 1e-12});
    }

    KyFanReport worst;
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix a(8, 8), b(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                a(i, j) = {uniform(-1, 1), uniform(-1, 1)};
                b(i, j) = {uniform(-1, 1), uniform(-1, 1)};
            }
        const KyFanReport r = kyfan_verify(a, b);
        worst.max_sum_violation = std::max(worst.max_sum_violation, r.max_sum_violation);
        worst.max_product_violation = std::max(worst.max_product_violation, r.max_product_violation);
    }
    checks.push_back({"kyfan_sum", std::max(0.0, worst.max_sum_violation), 1e-12});
    checks.push_back({"kyfan_product", std::max(0.0, worst.max_product_violation), 1e-12});
    return checks;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto checks = verify_suite(o.seed);
    json report = {{"config", {{"command", "verify"}, {"seed", o.seed}}}, {"checks", json::array()}};
    bool ok = true;
    for (const auto& c : checks) {
        const bool pass = c.error <= c.tolerance;
        ok = ok && pass;
        report["checks"].push_back({{"name", c.name}, {"max_error", c.error}, {"tolerance", c.tolerance}, {"pass", pass}});
    }
    report["passed"] = ok;
    Sink sink(o.output, out);
    *sink << report.dump(2) << '\n';
    return ok ? kOk : kVerificationFailed;
}

// ---- tables and spectra -------------------------------------------------------

int cmd_families(const Options& o, std::ostream& out) {
    if (!(o.alpha > -1)) throw UsageError("alpha must exceed -1");
    if (o.count < 1) throw UsageError("count must be positive");
    if (o.nu < 0) throw UsageError("nu must be nonnegative");
    const cd a = parse_complex(o.a);
    json config = {{"command", "families"}, {"alpha", o.alpha}, {"count", o.count}, {"seq", o.seq}};
    Sink sink(o.output, out);
    std::ostream& os = *sink;
    os << std::setprecision(17);
    if (o.seq == "b") {
        os << "# " << config.dump() << "\nn,value\n";
        for (int n = 2; n < o.count + 2; ++n) os << n << ',' << b_closed(n, o.alpha) << '\n';
    } else if (o.seq == "c") {
        os << "# " << config.dump() << "\nn,value\n";
        for (int n = 0; n < o.count; ++n) os << n << ',' << c_coeff(n, o.alpha) << '\n';
    } else if (o.seq == "t") {
        config["a"] = complex_json(a);
        config["nu"] = o.nu;
        os << "# " << config.dump() << "\nn,value,display\n";
        for (int n = 0; n < o.count; ++n)
            os << n << ',' << t_coeff(n, o.alpha, a, o.nu) << ',' << t_coeff_display(n, o.alpha, a, o.nu) << '\n';
    } else if (o.seq == "x") {
        config["nu"] = o.nu;
        os << "# " << config.dump() << "\nn,value,display\n";
        for (int n = 0; n < o.count; ++n)
            os << n << ',' << x_mean_closed(n, o.alpha, o.nu) << ',' << x_mean_display(n, o.alpha, o.nu) << '\n';
    } else {
        throw UsageError("seq must be one of b, c, t, x");
    }
    return kOk;
}

int cmd_assemble(const Options& o, std::ostream& out) {
    check_common(o);
    json config = common_config(o, "assemble");
    const BasisSet basis = build_basis(o.alpha, o.degree, o.r0);
    const OperatorMatrix m = build_operator(o, basis, config);
    Sink sink(o.output, out);
    write_matrix_text(*sink, m, config.dump());
    return kOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    check_common(o);
    json config = common_config(o, "spectrum");
    const BasisSet basis = build_basis(o.alpha, o.degree, o.r0);
    const SingularSpectrum s = singular_values(build_operator(o, basis, config));
    Sink sink(o.output, out);
    if (o.format == "json") {
        *sink << json{{"config", config}, {"source", s.source}, {"values", s.values}}.dump(2) << '\n';
    } else if (o.format == "csv") {
        *sink << "# " << config.dump() << '\n';
        write_spectrum_csv(*sink, s.values);
    } else {
        throw UsageError("format must be csv or json");
    }
    return kOk;
}

json fit_json(const TailFit& f) {
    return {{"p", f.p},           {"window", {f.n1, f.n2}},           {"estimate", f.estimate},
            {"correction", f.correction}, {"error_estimate", f.error_estimate}, {"max_residual", f.max_residual}};
}

int cmd_fit(const Options& o, std::ostream& out) {
    std::ifstream in(o.input);
    if (!in) throw UsageError("cannot read spectrum file '" + o.input + "'");
    const std::vector<double> s = read_spectrum_csv(in);
    int n1 = 0, n2 = 0;
    if (o.window.empty()) {
        n1 = std::max(1, int(s.size()) / 4);
        n2 = int(3 * s.size() / 4);
    } else if (o.window.size() == 2) {
        n1 = o.window[0];
        n2 = o.window[1];
    } else {
        throw UsageError("window takes two indices n1,n2");
    }
    const TailFit f = fit_tail(s, o.p, n1, n2);
    json config = {{"command", "fit"}, {"input", o.input}, {"p", o.p}, {"window", {n1, n2}}};
    Sink sink(o.output, out);
    *sink << json{{"config", config}, {"fit", fit_json(f)}}.dump(2) << '\n';
    return kOk;
}

int cmd_theorem(const Options& o, std::ostream& out, std::ostream& err) {
    if (!(o.alpha > -1)) throw UsageError("alpha must exceed -1");
    for (int d : o.degrees)
        if (d < 4) throw UsageError("degrees must be at least 4");
    for (int r : o.r0s)
        if (r < 2) throw UsageError("r0 must be at least 2");
    const SymbolU u = parse_symbol(o.symbol);
    StudyOptions opt;
    opt.degrees = o.degrees;
    opt.radial_cutoffs = o.r0s;
    opt.window_lo = o.window_lo;
    opt.window_hi = o.window_hi;
    err << "theorem: assembling " << o.degrees.size() << " truncations\n";
    const TheoremReport r = convergence_study(u, o.alpha, opt);
    json fitted = json::array(), windows = json::array(), fits = json::array();
    for (std::size_t i = 0; i < r.fits.size(); ++i) {
        fitted.push_back(r.fits[i].estimate);
        windows.push_back({r.windows[i].first, r.windows[i].second});
        fits.push_back(fit_json(r.fits[i]));
    }
    json rep = {{"config",
                 {{"command", "theorem"},
                  {"alpha", o.alpha},
                  {"symbol", symbol_json(u)},
                  {"degrees", o.degrees},
                  {"r0", o.r0s},
                  {"window_fraction", {o.window_lo, o.window_hi}}}},
                {"alpha", r.alpha},
                {"symbol", symbol_json(u)},
                {"degrees", r.degrees},
                {"radial_cutoffs", r.radial_cutoffs},
                {"fitted", fitted},
                {"fits", fits},
                {"windows", windows},
                {"extrapolated", r.extrapolated.value},
                {"extrapolation_residual", r.extrapolated.residual},
                {"theorem_constant", r.theorem_constant},
                {"multiplicity", r.multiplicity},
                {"adjusted_constant", r.adjusted_constant},
                {"ratio", number_or_null(r.ratio)},
                {"adjusted_ratio", number_or_null(r.adjusted_ratio)}};
    if (!o.no_runtime) rep["runtime_sec"] = r.runtime_sec;
    Sink sink(o.output, out);
    *sink << rep.dump(2) << '\n';
    return kOk;
}

int cmd_sectors(const Options& o, std::ostream& out, std::ostream& err) {
    check_common(o);
    if (o.sectors < 1) throw UsageError("N must be positive");
    const cd a = parse_complex(o.a);
    const int N = o.sectors, d = o.degree;
    const int M = o.cutoff > 0 ? o.cutoff : default_harmonic_cutoff(d);
    const int K = (d + N - 1) / N;
    const KernelSpec y = model_kernel(ModelSpec::Y(a, o.nu));
    err << "sectors: N = " << N << ", harmonic cutoff " << M << '\n';
    const std::vector<double> sy = singular_values(assemble_kernel(y, build_basis(o.alpha, d, o.r0)).entries);
    const SectorBasis sb1 = build_sector_basis(o.alpha, 1, N, K, o.r0, M);
    const std::vector<double> s1 = singular_values(sector_compress(y, sb1, M).entries);
    double rotation = 0;
    if (N >= 2) {
        const SectorBasis sb2 = build_sector_basis(o.alpha, 2, N, K, o.r0, M);
        const std::vector<double> s2 = singular_values(sector_compress(y, sb2, M).entries);
        for (std::size_t i = 0; i < s1.size(); ++i) rotation = std::max(rotation, std::fabs(s1[i] - s2[i]));
    }
    const int mu = Multiplicities::Y;
    const TailFit fy = fit_tail(sy, 1, mu * d / 4, 3 * mu * d / 4);
    const TailFit fs = fit_tail(s1, 1, std::max(1, mu * d / (4 * N)), 3 * mu * d / (4 * N));
    json config = common_config(o, "sectors");
    config["N"] = N;
    config["a"] = complex_json(a);
    config["nu"] = o.nu;
    config["harmonic_cutoff"] = M;
    json rep = {{"config", config},
                {"sector_dim", sb1.dim()},
                {"rotation_max_diff", rotation},
                {"fit_Y", fit_json(fy)},
                {"fit_M1YM1", fit_json(fs)},
                {"ratio", fs.estimate / fy.estimate},
                {"target_ratio", 1.0 / N},
                {"top_M1YM1", std::vector<double>(s1.begin(), s1.begin() + std::min<std::ptrdiff_t>(20, std::ptrdiff_t(s1.size())))}};
    Sink sink(o.output, out);
    *sink << rep.dump(2) << '\n';
    return kOk;
}

void diagnostic(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Bergman-space commutator laboratory"};
    app.require_subcommand(1);
    app.add_option("--threads", o.threads, "cap on worker threads (0 = runtime default)")->envname("BERGMAN_THREADS");

    auto add_operator_opts = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "weight exponent");
        c->add_option("--degree,-d", o.degree, "max monomial degree");
        c->add_option("--r0", o.r0, "radial vectors per frequency class");
        c->add_option("--op", o.op, "commutator|E|Estar|Q0|FrakQ|Rnu|Y|L|S");
        c->add_option("--symbol", o.symbol, "nu=<f>;U=<c1>,<c2>,...");
        c->add_option("--a", o.a, "complex parameter a+bi");
        c->add_option("--nu", o.nu, "Lelong weight");
        c->add_option("--output,-o", o.output, "output file (default stdout)");
    };

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--seed", o.seed);
    verify->add_option("--output,-o", o.output);

    auto* families = app.add_subcommand("families", "tables of b_n, c_n, t_n, x_n");
    families->add_option("--alpha", o.alpha);
    families->add_option("--count", o.count);
    families->add_option("--seq", o.seq, "b|c|t|x");
    families->add_option("--a", o.a);
    families->add_option("--nu", o.nu);
    families->add_option("--output,-o", o.output);

    auto* assemble = app.add_subcommand("assemble", "dump an assembled operator matrix");
    add_operator_opts(assemble);

    auto* spectrum = app.add_subcommand("spectrum", "singular values of an assembled operator");
    add_operator_opts(spectrum);
    spectrum->add_option("--format", o.format, "csv|json");

    auto* fit = app.add_subcommand("fit", "tail fit of a CSV spectrum");
    fit->add_option("--input,-i", o.input)->required();
    fit->add_option("--p", o.p);
    fit->add_option("--window", o.window, "n1,n2")->delimiter(',');
    fit->add_option("--output,-o", o.output);

    auto* theorem = app.add_subcommand("theorem", "convergence study of the commutator constant");
    theorem->add_option("--alpha", o.alpha);
    theorem->add_option("--symbol", o.symbol);
    theorem->add_option("--degrees", o.degrees)->delimiter(',');
    theorem->add_option("--r0", o.r0s)->delimiter(',');
    theorem->add_option("--window-lo", o.window_lo);
    theorem->add_option("--window-hi", o.window_hi);
    theorem->add_flag("--no-runtime", o.no_runtime, "omit runtime_sec for byte-stable output");
    theorem->add_option("--output,-o", o.output);

    auto* sectors = app.add_subcommand("sectors", "sector compressions of Y");
    sectors->add_option("--alpha", o.alpha);
    sectors->add_option("--degree,-d", o.degree);
    sectors->add_option("--r0", o.r0);
    sectors->add_option("--N", o.sectors);
    sectors->add_option("--a", o.a);
    sectors->add_option("--nu", o.nu);
    sectors->add_option("--cutoff", o.cutoff, "harmonic cutoff (default 4d+32)");
    sectors->add_option("--output,-o", o.output);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        diagnostic(err, "usage", e.what());
        return kUsage;
    }
    if (o.threads < 0) {
        diagnostic(err, "usage", "threads must be nonnegative");
        return kUsage;
    }
    if (o.threads > 0) omp_set_num_threads(o.threads);

    try {
        if (*verify) return cmd_verify(o, out);
        if (*families) return cmd_families(o, out);
        if (*assemble) return cmd_assemble(o, out);
        if (*spectrum) return cmd_spectrum(o, out);
        if (*fit) return cmd_fit(o, out);
        if (*theorem) return cmd_theorem(o, out, err);
        if (*sectors) return cmd_sectors(o, out, err);
    } catch (const ParseError& e) {
        diagnostic(err, "usage", e.what());
        return kUsage;
    } catch (const UsageError& e) {
        diagnostic(err, "usage", e.what());
        return kUsage;
    } catch (const DomainError& e) {
        diagnostic(err, "domain", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        diagnostic(err, "runtime", e.what());
        return kVerificationFailed;
    }
    return kUsage;
}

}  // namespace bergman::cli
