#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "approx.hpp"
#include "orislink/empirical.hpp"
#include "sampling.hpp"

using namespace orislink;

namespace {
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

TEST_CASE("empirical CDF steps") {
    std::vector<double> s;
    for (int i = 0; i < 1000; ++i) s.push_back(i);
    const EmpiricalCdf f(s);
    CHECK(f(-1.0) == 0.0);
    CHECK(f(0.0) == rel(0.001, 1e-12));
    CHECK(f(499.5) == rel(0.5, 1e-12));
    CHECK(f(999.0) == 1.0);
    CHECK(f.size() == 1000);
}

TEST_CASE("empirical CDF preconditions") {
    CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>(999, 0.0)), std::invalid_argument);
    std::vector<double> s(2000, 1.0);
    s[7] = NAN;
    CHECK_THROWS_AS(EmpiricalCdf{s}, std::invalid_argument);
}

TEST_CASE("KS null calibration") {
    int passed = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const EmpiricalCdf f(draw_many(2000, 1000 + rep, [](RandomStream& r) { return r.normal(); }));
        passed += f.ks_test(normal_cdf).p_value > 0.01 ? 1 : 0;
    }
    CHECK(passed >= 98);
}

TEST_CASE("KS detects gross mismatch") {
    const EmpiricalCdf constant(std::vector<double>(5000, 0.3));
    const auto ks = constant.ks_test(normal_cdf);
    CHECK(ks.statistic >= 0.5);
    CHECK(ks.p_value < 1e-12);

    const EmpiricalCdf shifted(draw_many(20000, 3, [](RandomStream& r) { return r.normal() + 0.1; }));
    CHECK(shifted.ks_test(normal_cdf).p_value < 1e-6);
}

TEST_CASE("Kolmogorov tail") {
    // Q_KS(lambda) at lambda = 1.36 is the familiar 5% point.
    const std::size_t n = 1'000'000;
    const double lambda = 1.3581;
    const double d = lambda / (std::sqrt(static_cast<double>(n)) + 0.12 + 0.11 / std::sqrt(static_cast<double>(n)));
    CHECK(kolmogorov_p_value(d, n) == rel(0.05, 1e-3));
    CHECK(kolmogorov_p_value(0.0, n) == 1.0);
    CHECK(kolmogorov_p_value(1.0, n) < 1e-100);
}
