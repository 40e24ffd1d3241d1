#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <vector>

#include "bergman/basis.hpp"
#include "bergman/specfun.hpp"

using namespace bergman;
using namespace bergman::specfun;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

double gram_error(const std::vector<LogPolynomial>& fam, double alpha) {
    double err = 0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i; j < fam.size(); ++j)
            err = std::max(err, double(std::abs(inner(fam[i], fam[j], alpha) - cld(i == j ? 1 : 0))));
    return err;
}

double coefficient(const LogPolynomial& f, int m, int n) {
    auto it = f.poly().find({m, n});
    return it == f.poly().end() ? 0.0 : double(it->second.real());
}

}  // namespace

TEST_CASE("e_fn examples") {
    CHECK(coefficient(e_fn(0, 0), 0, 0) == Approx(1.0));
    CHECK(coefficient(e_fn(1, 0), 1, 0) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    // ||z^2||^2 = 2!/(2)_2 = 1/3 at alpha = 0
    CHECK(coefficient(e_fn(2, 0), 2, 0) == Approx(std::sqrt(3.0)).epsilon(1e-15));
    for (double a : {0.0, 0.5, 2.5})
        for (int n = 0; n < 30; ++n) CHECK(std::fabs(double(norm(e_fn(n, a), a)) - 1) < 1e-13);
}

TEST_CASE("b sequence") {
    CHECK(b_closed(2, 0) == Approx(2.0 / 45).epsilon(1e-14));
    CHECK(b_closed(3, 0) == Approx(1.0 / 60).epsilon(1e-14));
    CHECK(b_via_sum(2, 0) == Approx(2.0 / 45).epsilon(1e-12));
    CHECK(b_via_sum(3, 0) == Approx(1.0 / 60).epsilon(1e-12));
    CHECK(b_via_sum(50, 1.5) == Approx(b_closed(50, 1.5)).epsilon(1e-12));
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        for (int n = 2; n <= 1000; ++n) CHECK(std::fabs(b_closed(n, a) / b_via_sum(n, a) - 1) < 1e-12);
        // n^4 b_n / (2(a+1)(a+4)) = 1 + [(a^2+a)/(a+4) - (5a+7)] / n + O(n^-2)
        const double n = 1e4;
        const double rel = std::pow(n, 4) * b_closed(int(n), a) / (2 * (a + 1) * (a + 4)) - 1;
        CHECK(n * rel == Approx((a * a + a) / (a + 4) - (5 * a + 7)).epsilon(1e-2));
    }
    CHECK(std::fabs(std::pow(1e4, 4) * b_closed(10000, 0) / 8 - 1) < 1e-3);
}

TEST_CASE("c sequence") {
    CHECK(c_coeff(0, 0) == Approx(std::sqrt(1.0 / 6)).epsilon(1e-15));
    CHECK(c_coeff(1, 0) == Approx(std::sqrt(1.0 / 12)).epsilon(1e-15));
    CHECK(std::fabs(1e4 * c_coeff(10000, 0) - 1) < 1e-3);
}

TEST_CASE("varphi and phi examples") {
    CHECK(double(norm(varphi_fn(2, 0), 0)) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(inner(varphi_fn(2, 0), varphi_fn(3, 0), 0)) < 1e-12);
    CHECK(std::abs(inner(varphi_fn(2, 0), e_fn(2, 0), 0)) < 1e-12);
    CHECK(double(norm(phi_fn(0, 0), 0)) == Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(inner(phi_fn(1, 0), e_fn(1, 0), 0)) < 1e-13);
    CHECK(std::abs(inner(phi_fn(0, 0), phi_fn(2, 0), 0)) == 0.0L);
    for (int n = 0; n < 20; ++n)
        for (int m = 0; m < 20; ++m) CHECK(std::abs(inner(phi_fn(n, 1.0), e_fn(m, 1.0), 1.0)) < 1e-12);
}

TEST_CASE("orthonormality of e, conj e, varphi, conj varphi") {
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        std::vector<LogPolynomial> fam;
        for (int n = 2; n <= 40; ++n) {
            fam.push_back(e_fn(n, a));
            fam.push_back(e_fn(n, a).conj());
            fam.push_back(varphi_fn(n, a));
            if (n >= 3) fam.push_back(varphi_fn(n, a).conj());
        }
        CHECK(gram_error(fam, a) < 1e-10);
    }
}

TEST_CASE("h families in the pure cases") {
    const std::pair<cd, double> cases[] = {{1.0, 0.0}, {0.0, 1.0}};
    for (double a : {0.0, 0.5, 1.0, 2.5})
        for (auto [coef, nu] : cases) {
            std::vector<LogPolynomial> fam;
            for (int n = 0; n < 40; ++n) {
                fam.push_back(e_fn(n + 1, a));
                fam.push_back(e_fn(n + 1, a).conj());
                fam.push_back(h_fn(n, a, coef, nu));
                if (n >= 1) fam.push_back(h_fn(n, a, coef, nu).conj());
            }
            CHECK(gram_error(fam, a) < 1e-10);
        }
}

TEST_CASE("h examples and the mixed-case coupling") {
    const auto h0 = h_fn(0, 0, 1.0, 1.0);
    CHECK(double(norm(h0, 0)) == Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(inner(h0, e_fn(1, 0), 0)) < 1e-10);
    CHECK(std::abs(inner(h0, e_fn(3, 0).conj(), 0)) < 1e-14);
    CHECK_THROWS(h_fn(0, 0, 0.0, 0.0));
    // With a and nu both nonzero consecutive h_n overlap through the log part of e_{n+1}.
    for (int n = 0; n < 10; ++n) {
        CHECK(std::fabs(double(norm(h_fn(n, 0.5, cd(2, -1), 0.7), 0.5)) - 1) < 1e-10);
        CHECK(std::abs(inner(h_fn(n, 0.5, cd(2, -1), 0.7), h_fn(n + 1, 0.5, cd(2, -1), 0.7), 0.5)) > 1e-2);
    }
}

TEST_CASE("x_n") {
    // 2 int t log t dt = -1/2
    CHECK(x_mean(0, 0, 1) == Approx(-0.5).epsilon(1e-13));
    CHECK(x_mean_closed(0, 0, 1) == Approx(-0.5).epsilon(1e-13));
    CHECK(x_mean(4, 0.5, 0) == 0.0);
    CHECK(x_mean(1, 1, 2) == Approx(-7.0 / 6).epsilon(1e-13));
    for (double a : {0.0, 0.5, 1.0, 2.5})
        for (int n = 0; n < 40; ++n) {
            CHECK(std::fabs(x_mean(n, a, 1.3) - x_mean_closed(n, a, 1.3)) < 1e-12);
            const double oracle = 1.3 * (boost::math::digamma(n + 2.0) - boost::math::digamma(n + a + 3));
            CHECK(std::fabs(x_mean_closed(n, a, 1.3) - oracle) < 1e-12);
        }
    CHECK(x_mean_display(0, 0, 1) == Approx(boost::math::trigamma(1.0) - boost::math::trigamma(2.0)));
}

TEST_CASE("t_n") {
    CHECK(t_coeff(0, 0, 1.0, 1.0) == Approx(std::sqrt(5.0 / 12)).epsilon(1e-14));
    CHECK(t_coeff(7, 0.5, cd(0, 2), 0) == Approx(2 * c_coeff(7, 0.5)).epsilon(1e-14));
    CHECK(std::fabs(1e3 * t_coeff(1000, 0, 0.0, 1.0) - 1) < 5e-3);
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        for (int n = 0; n <= 40; ++n)
            for (auto [coef, nu] : {std::pair<cd, double>{1.0, 1.0}, {cd(2, -1), 0.7}, {0.0, 1.0}}) {
                const double t = t_coeff(n, a, coef, nu), exact = t_coeff_exact(n, a, coef, nu);
                CHECK(std::fabs(t * t / (exact * exact) - 1) < 1e-10);
            }
        const double n = 1e3;
        CHECK(std::fabs(n * t_coeff(1000, a, 1.0, 1.0) / std::sqrt((a + 1) * 2) - 1) < 5e-3);
        const double m = 1e4;
        CHECK(std::fabs(m * m * (trigamma(m + 2) - trigamma(m + a + 3)) / (a + 1) - 1) < 1e-3);
    }
    // the printed form with the difference squared decays like n^-2 instead of n^-1
    CHECK(1e3 * t_coeff_display(1000, 0, 0.0, 1.0) < 0.01);
}

TEST_CASE("log polynomial algebra") {
    LogPolynomial f;
    f.add(1, 0, 2.0).add(0, 1, cld(0, 1), 1);
    const cd z(0.3, -0.4);
    const cd want = 2.0 * z + cd(0, 1) * std::log(std::norm(z)) * std::conj(z);
    CHECK(std::abs(f(z) - want) < 1e-15);
    CHECK(std::abs(f.conj()(z) - std::conj(want)) < 1e-15);
    CHECK_THROWS(f.times_log().times_log());
    const LogPolynomial g = f - f;
    CHECK(double(norm(g, 0.5)) < 1e-15);
}
