#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fso_oracles.hpp"
#include "oracles.hpp"
#include "orislink/empirical.hpp"
#include "orislink/fso_channel.hpp"
#include "sampling.hpp"

using namespace orislink;

namespace {

FsoLink link_for(GeometryMode mode = GeometryMode::paper_printed) {
    SystemParams p;
    p.geometry_mode = mode;
    return FsoLink::from(p);
}

}  // namespace

TEST_CASE("jitter angle") {
    const auto link = link_for();
    const double s2 = link.jitter_variance();
    CHECK(s2 == rel(1.5 * 1.5 * 25e-6 + 4 * 4e-6, 1e-14));
    CHECK(jitter_angle_pdf(link, 0.0) == 0.0);
    const double s = std::sqrt(s2);
    const double total = oracle::piecewise([&](double t) { return jitter_angle_pdf(link, t); }, 0.0, 40 * s,
                                           std::vector<double>{s, 3 * s, 6 * s});
    CHECK(total == rel(1.0, 1e-8));
    CHECK(jitter_angle_pdf(link, s) > jitter_angle_pdf(link, 0.99 * s));
    CHECK(jitter_angle_pdf(link, s) > jitter_angle_pdf(link, 1.01 * s));
    for (double t : {0.3 * s, s, 3 * s}) {
        CHECK(jitter_angle_cdf(link, t) ==
              rel(oracle::gk([&](double u) { return jitter_angle_pdf(link, u); }, 0.0, t), 1e-12));
    }
}

TEST_CASE("displacement and pointing loss") {
    const auto link = link_for();
    CHECK(displacement(link, 0.0) == 0.0);
    CHECK(displacement(link, 1e-3) == rel(0.1, 1e-14));
    CHECK(displacement(link, 5e-3) == rel(0.5, 1e-14));
    const auto& g = link.geometry;
    CHECK(pointing_loss(link, 0.0) == g.a0);
    CHECK(pointing_loss(link, std::sqrt(g.w_zeq_sq / 2)) == rel(g.a0 / std::numbers::e, 1e-14));
    CHECK(std::abs(pointing_loss(link, 0.3) - 0.01219) < 1e-4);
    CHECK(pointing_loss(link, 0.3) == rel(0.012179252734646434, 1e-12));
}

TEST_CASE("pointing_loss_pdf") {
    const auto link = link_for();
    const auto& g = link.geometry;
    const double total = oracle::ts([&](double h) { return pointing_loss_pdf(link, h); }, 0.0, g.a0);
    CHECK(total == rel(1.0, 1e-10));
    CHECK(pointing_loss_pdf(link, g.a0) == rel(g.rho / g.a0, 1e-14));
    CHECK(pointing_loss_pdf(link, 1.01 * g.a0) == 0.0);
    CHECK(pointing_loss_pdf(link, -1.0) == 0.0);
}

TEST_CASE("pointing sampler matches the power law in self-consistent mode") {
    const auto link = link_for(GeometryMode::self_consistent);
    const EmpiricalCdf hp(
        draw_many(1'000'000, 21, [&](RandomStream& r) { return sample_fading_components(link, r).hp; }));
    CHECK(hp.ks_test([&](double h) { return pointing_loss_cdf(link, h); }).p_value > 0.01);

    // The printed-mode exponent describes a different jitter budget.
    const auto printed = link_for();
    CHECK(hp.ks_test([&](double h) { return pointing_loss_cdf(printed, h); }).p_value < 1e-6);
}

TEST_CASE("turbulence") {
    const auto link = link_for();
    const double s2 = link.geometry.sigma_x_sq;
    const double cuts[] = {0.2, 0.5, 1.0, 2.0, 4.0};
    const auto pdf = [&](double h) { return turbulence_pdf(link, h); };
    CHECK(oracle::piecewise(pdf, 1e-6, 40.0, cuts) == rel(1.0, 1e-8));
    const double mean = oracle::piecewise([&](double h) { return h * pdf(h); }, 1e-6, 40.0, cuts);
    CHECK(mean == rel(1.0, 1e-8));
    CHECK(turbulence_cdf(link, std::exp(-2 * s2)) == rel(0.5, 1e-14));

    // The printed exponent sign makes the density non-normalizable; its mass
    // on a growing window keeps growing.
    const auto printed = [&](double h) {
        const double shifted = std::log(h) + 2 * s2;
        return 1.0 / (2 * h * std::sqrt(2 * std::numbers::pi * s2)) * std::exp(shifted * shifted / (8 * s2));
    };
    const double m1 = oracle::gk(printed, 0.5, 2.0);
    const double m2 = oracle::gk(printed, 0.25, 4.0);
    CHECK(m1 > 1.0);
    CHECK(m2 > 10 * m1);
}

TEST_CASE("fading_pdf against the mixture integral") {
    for (auto mode : {GeometryMode::paper_printed, GeometryMode::self_consistent}) {
        const auto link = link_for(mode);
        const double base = link.geometry.a0 * link.geometry.h_l;
        for (int i = 0; i < 20; ++i) {
            const double h = base * std::pow(10.0, -6.0 + 7.0 * i / 19.0);
            CHECK(fading_pdf(link, h) == rel(oracle::mixture_pdf(link, h), 1e-6));
        }
    }
}

TEST_CASE("fading_pdf normalization and CDF consistency") {
    const auto link = link_for();
    const double base = link.geometry.a0 * link.geometry.h_l;
    CHECK(oracle::pdf_integral(link, 100 * base) == rel(1.0, 1e-6));
    CHECK(fading_cdf(link, 0.0) == 0.0);
    CHECK(fading_cdf(link, INFINITY) == 1.0);
    CHECK(fading_cdf(link, 1e6 * base) == rel(1.0, 1e-15));
    for (int i = 0; i < 10; ++i) {
        const double h = base * std::pow(10.0, -4.0 + 4.5 * i / 9.0);
        CHECK(std::abs(fading_cdf(link, h) - oracle::pdf_integral(link, h)) <= 1e-8);
        const double step = 1e-4 * h;
        const double fd = (fading_cdf(link, h + step) - fading_cdf(link, h - step)) / (2 * step);
        CHECK(fd == rel(fading_pdf(link, h), 1e-5));
    }
}

TEST_CASE("fading_cdf is a CDF on random grids") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        SystemParams p;
        p.sigma_theta = 1e-3 + 1e-2 * u(gen);
        p.sigma_beta = 5e-3 * u(gen);
        p.rytov_sq = 0.01 + 0.99 * u(gen);
        const auto link = FsoLink::from(p);
        const double base = link.geometry.a0 * link.geometry.h_l;
        double prev = 0.0;
        for (double x = 1e-12; x < 1e3; x *= 1.5) {
            const double f = fading_cdf(link, x * base);
            CHECK(f >= prev);
            CHECK(f <= 1.0);
            CHECK(fading_pdf(link, x * base) >= 0.0);
            CHECK_FALSE(std::isnan(fading_pdf(link, x * base)));
            prev = f;
        }
    }
}

TEST_CASE("turbulence-free and jitter-free limits") {
    SystemParams p;
    p.rytov_sq = 0.0;
    const auto calm = FsoLink::from(p);
    const double base = calm.geometry.a0 * calm.geometry.h_l;
    for (double x : {0.01, 0.3, 0.9}) {
        CHECK(fading_pdf(calm, x * base) ==
              rel(pointing_loss_pdf(calm, x * calm.geometry.a0) / calm.geometry.h_l, 1e-12));
    }
    // Small sigma_x^2 approaches the same limit.
    p.rytov_sq = 1e-8;
    const auto nearly = FsoLink::from(p);
    CHECK(fading_pdf(nearly, 0.3 * base) == rel(fading_pdf(calm, 0.3 * base), 1e-3));

    SystemParams still;
    still.sigma_theta = 0.0;
    still.sigma_beta = 0.0;
    still.rytov_sq = 0.0;
    const auto fixed = FsoLink::from(still);
    RandomStream rng(1);
    for (int i = 0; i < 5; ++i) {
        CHECK(sample_fading(fixed, rng) ==
              rel(fixed.geometry.a0 * fixed.geometry.h_l, 1e-15));
    }
}

TEST_CASE("optical SNR") {
    const auto link = link_for();
    CHECK(optical_snr(link, 0.0) == 0.0);
    const double h = link.geometry.a0 * link.geometry.h_l;
    const double amp = 1.0 * 0.95 * h * 0.8 * 0.1;
    CHECK(optical_snr(link, h) == rel(2 * amp * amp / 1e-4, 1e-12));
    auto doubled = link;
    doubled.mu_k = 0.5;
    auto full = link;
    full.mu_k = 1.0;
    CHECK(optical_snr(full, h) == rel(4 * optical_snr(doubled, h), 1e-14));
    CHECK(gain_for_snr(link, optical_snr(link, 0.003)) == rel(0.003, 1e-14));
}

TEST_CASE("optical_snr_cdf equals fading_cdf under the change of variables") {
    const auto link = link_for();
    CHECK(optical_snr_cdf(link, 0.0) == 0.0);
    for (int i = 0; i < 20; ++i) {
        const double gamma = std::pow(10.0, -4.0 + 0.5 * i);
        CHECK(std::abs(optical_snr_cdf(link, gamma) - fading_cdf(link, gain_for_snr(link, gamma))) <= 1e-12);
    }
    // Only the product mu_k * pt matters.
    auto scaled = link;
    scaled.mu_k = 0.25;
    scaled.pt = 4 * link.pt;
    for (double gamma : {0.1, 10.0, 1e3}) {
        CHECK(optical_snr_cdf(scaled, gamma) == rel(optical_snr_cdf(link, gamma), 1e-12));
    }
}

TEST_CASE("fading sampler") {
    const auto link = link_for(GeometryMode::self_consistent);
    const double rho = link.geometry.rho;
    const auto hp = draw_many(10'000'000, 4, [&](RandomStream& r) { return sample_fading_components(link, r).hp; });
    double mean = 0.0;
    for (double v : hp) mean += v;
    mean /= static_cast<double>(hp.size());
    CHECK(mean == rel(link.geometry.a0 * rho / (rho + 1), 0.01));

    const EmpiricalCdf h(draw_many(1'000'000, 5, [&](RandomStream& r) { return sample_fading(link, r); }));
    CHECK(h.ks_test([&](double x) { return fading_cdf(link, x); }).p_value > 0.01);
    const EmpiricalCdf g(
        draw_many(1'000'000, 6, [&](RandomStream& r) { return optical_snr(link, sample_fading(link, r)); }));
    CHECK(g.ks_test([&](double x) { return optical_snr_cdf(link, x); }).p_value > 0.01);
}
