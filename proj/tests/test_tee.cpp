#include "doctest.h"

#include "anyon/catalog.hpp"
#include "anyon/entropy.hpp"
#include "anyon/error.hpp"
#include "anyon/tee.hpp"

#include <cmath>

using namespace anyon;

namespace {

const double kPhi = 0.5 * (1.0 + std::sqrt(5.0));

bool abelian(const AnyonModel& m) {
    for (auto c : m.charges())
        if (!m.is_abelian(c)) return false;
    return true;
}

// S_bnd from its defining sum, independent of the library.
double s_bnd(const AnyonModel& m) {
    double s = 0.0;
    for (auto a : m.charges()) {
        const double p = m.qdim(a) * m.qdim(a) / m.total_qdim_sq();
        s -= p * std::log(m.qdim(a) / m.total_qdim_sq());
    }
    return s;
}

}  // namespace

TEST_CASE("topological entropy") {
    CHECK(stopo(catalog_get("DZ2")) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK(stopo(catalog_get("ZN(1,0)")) == 0.0);
    CHECK(stopo(catalog_get("Fib(+1)")) == doctest::Approx(-0.5 * std::log(kPhi + 2.0)).epsilon(1e-15));
    CHECK(stopo(catalog_get("Fib(+1)")) == doctest::Approx(-0.642965).epsilon(1e-6));
}

TEST_CASE("boundary anyon entropy") {
    CHECK(boundary_anyon_entropy(catalog_get("DZ2")) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    for (int n : {2, 3, 5, 7}) {
        const auto m = catalog_get("ZN(" + std::to_string(n) + ",1" + (n % 2 == 0 ? "/2" : "") + ")");
        CHECK(boundary_anyon_entropy(m) == doctest::Approx(std::log(n)).epsilon(1e-14));
        CHECK(boundary_anyon_entropy(m, 2.0) == doctest::Approx(std::log(n)).epsilon(1e-14));
    }
    const auto fib = catalog_get("Fib(+1)");
    const double d2 = kPhi + 2.0;
    CHECK(boundary_anyon_entropy(fib, 2.0) == doctest::Approx(std::log(d2 * d2 / (1.0 + std::pow(kPhi, 3)))).epsilon(1e-14));
    CHECK(boundary_anyon_entropy(fib) == doctest::Approx(s_bnd(fib)).epsilon(1e-15));
    CHECK(boundary_anyon_entropy(fib, 1.0) == boundary_anyon_entropy(fib));
    CHECK_THROWS_AS(boundary_anyon_entropy(fib, 0.0), InvalidArgument);
}

TEST_CASE("transfer matrix examples") {
    const auto fib = catalog_get("Fib(+1)");
    const auto t = transfer_matrix(fib, 1.0);
    CHECK(t.K(0, 0) == doctest::Approx(1.0));
    CHECK(t.K(0, 1) == doctest::Approx(kPhi));
    CHECK(t.K(1, 0) == doctest::Approx(kPhi));
    CHECK(t.K(1, 1) == doctest::Approx(kPhi * kPhi));
    CHECK(t.kappa(0).real() == doctest::Approx(2.0 + kPhi).epsilon(1e-14));
    CHECK(std::abs(t.kappa(1)) < 1e-14);
    CHECK(t.ratio < 1e-14);

    const auto dz2 = transfer_matrix(catalog_get("DZ2"), 1.0);
    CHECK((dz2.K - Eigen::MatrixXd::Ones(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(dz2.kappa(0).real() == doctest::Approx(4.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(dz2.kappa(i)) < 1e-14);
}

TEST_CASE("transfer spectrum invariants") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (double a : {0.5, 1.0, 2.0, 3.0}) {
            CAPTURE(name);
            CAPTURE(a);
            const auto t = transfer_matrix(m, a);
            double k0 = 0.0;
            for (auto e : m.charges()) k0 += std::pow(m.qdim(e), 1.0 + a);
            CHECK(t.kappa(0).real() == doctest::Approx(k0).epsilon(1e-9));
            CHECK(std::abs(t.kappa(0).imag()) < 1e-9);
            for (auto e : m.charges()) {
                CHECK(t.vectors(e.index, 0).real() == doctest::Approx(m.qdim(e) / m.total_qdim()).epsilon(1e-9));
                CHECK(std::abs(t.vectors(e.index, 0).imag()) < 1e-9);
            }
            CHECK((t.K * t.K.transpose() - t.K.transpose() * t.K).cwiseAbs().maxCoeff() < 1e-9 * k0 * k0);
            const Eigen::MatrixXcd u = t.vectors;
            CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() < 1e-9);
            CHECK(t.ratio < 1.0);
        }
    }
}

TEST_CASE("correction F") {
    const auto fib = catalog_get("Fib(+1)");
    for (unsigned n = 2; n <= 12; ++n) CHECK(std::abs(correction_F(fib, 1.0, n, kVacuum)) < 1e-14);
    CHECK(std::abs(correction_F(catalog_get("DZ2"), 2.0, 4, kVacuum)) < 1e-15);

    const auto ising = catalog_get("K(1)");
    const auto t = transfer_matrix(ising, 2.0);
    for (unsigned n = 3; n < 8; ++n) {
        const double ratio = correction_F(ising, 2.0, n + 1, kVacuum) / correction_F(ising, 2.0, n, kVacuum);
        CHECK(std::abs(ratio) == doctest::Approx(t.ratio).epsilon(2e-2));
    }
}

TEST_CASE("correction F agrees with the eigen-sum") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (double a : {0.5, 2.0, 3.0}) {
            const auto t = transfer_matrix(m, a);
            for (unsigned n = 1; n <= 12; ++n)
                for (auto c : m.charges()) {
                    CAPTURE(name);
                    CHECK(std::abs(correction_F(m, a, n, c) - correction_F_spectral(m, t, n, c)) < 1e-9);
                }
        }
    }
}

TEST_CASE("correction F decays geometrically") {
    for (const char* name : {"K(1)", "SO3_6"}) {
        const auto m = catalog_get(name);
        const auto t = transfer_matrix(m, 2.0);
        const double f3 = std::abs(correction_F(m, 2.0, 3, kVacuum));
        for (unsigned n = 4; n <= 12; ++n)
            CHECK(std::abs(correction_F(m, 2.0, n, kVacuum)) <= f3 * std::pow(t.ratio + 1e-12, n - 3.0));
    }
}

TEST_CASE("DZ2 disk entropy") {
    const auto dz2 = catalog_get("DZ2");
    for (unsigned n = 1; n <= 8; ++n)
        for (auto method : {Method::closed, Method::transfer, Method::brute}) {
            CHECK(disk_entropy(dz2, n, kVacuum, std::nullopt, Convention::doubled, method) ==
                  doctest::Approx((n - 1) * std::log(4.0)).epsilon(1e-12));
            CHECK(disk_entropy(dz2, n, kVacuum, 2.0, Convention::doubled, method) ==
                  doctest::Approx((n - 1) * std::log(4.0)).epsilon(1e-12));
        }
}

TEST_CASE("Fibonacci three-segment Renyi sum") {
    const auto fib = catalog_get("Fib(+1)");
    const double d4 = std::pow(kPhi + 2.0, 2);
    // (000), three arrangements of (0 tau tau), and (tau tau tau)
    const double sum = std::pow(1.0 / d4, 2) + 3.0 * std::pow(kPhi * kPhi / d4, 2) + std::pow(std::pow(kPhi, 3) / d4, 2);
    for (auto method : {Method::closed, Method::transfer, Method::brute})
        CHECK(disk_entropy(fib, 3, kVacuum, 2.0, Convention::doubled, method) ==
              doctest::Approx(-std::log(sum)).epsilon(1e-13));
}

TEST_CASE("punctured disk") {
    const auto fib = catalog_get("Fib(+1)");
    const auto tau = fib.charge("tau");
    for (unsigned n = 2; n <= 10; ++n) {
        const double expected = n * s_bnd(fib) - std::log(kPhi + 2.0) + std::log(kPhi);
        CHECK(disk_entropy(fib, n, tau, std::nullopt, Convention::doubled) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(disk_entropy(fib, n, tau, std::nullopt, Convention::doubled, Method::transfer) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(disk_entropy(fib, n, tau, std::nullopt, Convention::undoubled) ==
              doctest::Approx(0.5 * n * s_bnd(fib) - 0.5 * std::log(kPhi + 2.0) + std::log(kPhi)).epsilon(1e-13));
    }
}

TEST_CASE("closed, transfer and brute evaluations agree") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (auto c : m.charges())
            for (unsigned n = 1; n <= 6; ++n) {
                CAPTURE(name);
                CAPTURE(n);
                for (double a : {0.5, 2.0, 3.0}) {
                    const double closed = disk_entropy(m, n, c, a, Convention::doubled, Method::closed);
                    CHECK(std::abs(closed - disk_entropy(m, n, c, a, Convention::doubled, Method::transfer)) < 1e-9);
                    CHECK(std::abs(closed - disk_entropy(m, n, c, a, Convention::doubled, Method::brute)) < 1e-9);
                }
                const double t = disk_entropy(m, n, c, std::nullopt, Convention::doubled, Method::transfer);
                CHECK(std::abs(t - disk_entropy(m, n, c, std::nullopt, Convention::doubled, Method::brute)) < 1e-9);
                if (n >= 2)
                    CHECK(std::abs(t - disk_entropy(m, n, c, std::nullopt, Convention::doubled, Method::closed)) < 1e-9);
            }
    }
}

TEST_CASE("a single-segment boundary carries no entropy") {
    // One segment must carry the conjugate of the puncture charge, so the exact
    // sum has a single term; the boundary law only holds from two segments on.
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (auto c : m.charges()) {
            CHECK(std::abs(brute_boundary_oracle(m, 1, c)) < 1e-15);
            const double law = s_bnd(m) + 2.0 * stopo(m) + std::log(m.qdim(c));
            const double closed = disk_entropy(m, 1, c, std::nullopt, Convention::doubled);
            CHECK(closed == doctest::Approx(law).epsilon(1e-13));
            if (abelian(m)) CHECK(std::abs(closed) < 1e-12);
        }
    }
    CHECK(disk_entropy(catalog_get("K(1)"), 1, kVacuum, std::nullopt, Convention::doubled) < 0.0);
}

TEST_CASE("von Neumann disk entropy is exactly affine from two segments") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        const double step = disk_entropy(m, 3, kVacuum, std::nullopt, Convention::doubled, Method::transfer) -
                            disk_entropy(m, 2, kVacuum, std::nullopt, Convention::doubled, Method::transfer);
        CHECK(step == doctest::Approx(s_bnd(m)).epsilon(1e-12));
        for (unsigned n = 3; n < 10; ++n) {
            const double d = disk_entropy(m, n + 1, kVacuum, std::nullopt, Convention::doubled, Method::transfer) -
                             disk_entropy(m, n, kVacuum, std::nullopt, Convention::doubled, Method::transfer);
            CHECK(std::abs(d - step) < 1e-12);
        }
    }
}

TEST_CASE("vacuum-projected boundary state reproduces the doubled disk") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        const bool ab = abelian(m);
        if (!ab && name != "Fib(+1)" && name != "K(1)") continue;
        const unsigned top = ab ? 8 : 5;
        for (auto c : m.charges())
            for (unsigned n = 1; n <= top; ++n) {
                CAPTURE(name);
                CAPTURE(n);
                const auto h = boundary_pipeline_state(m, n, c);
                CHECK(h.charges() == std::vector<ChargeId>{kVacuum});
                const double exact = disk_entropy(m, n, c, std::nullopt, Convention::doubled, Method::transfer);
                CHECK(std::abs(von_neumann(h) - exact) < 1e-9);
                if (n >= 2) {
                    const double law = n * s_bnd(m) + 2.0 * stopo(m) + std::log(m.qdim(c));
                    CHECK(std::abs(von_neumann(h) - law) < 1e-9);
                }
                CHECK(std::abs(renyi(h, 2.0) - disk_entropy(m, n, c, 2.0, Convention::doubled)) < 1e-9);
            }
    }
}

TEST_CASE("Kitaev-Preskill combination") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        CAPTURE(name);
        const auto kp = kitaev_preskill(m, 2.0);
        CHECK(std::abs(kp.vn_combo - stopo(m)) < 1e-12);
        const auto exact = kitaev_preskill(m, 2.0, Method::transfer);
        CHECK(std::abs(exact.vn_combo - stopo(m)) < 1e-12);
        const auto t = transfer_matrix(m, 2.0);
        const double f = (2.0 * correction_F_spectral(m, t, 3, kVacuum) - 1.5 * correction_F_spectral(m, t, 4, kVacuum)) /
                         (1.0 - 2.0);
        CHECK(std::abs(exact.renyi_residual - f) < 1e-10);
        CHECK(std::abs(kp.renyi_residual - f) < 1e-10);
    }
    // kappa_{2,1} of Fibonacci is nonzero, so the Renyi residual survives there
    CHECK(std::abs(kitaev_preskill(catalog_get("Fib(+1)"), 2.0).renyi_residual) > 1e-3);
    CHECK(std::abs(kitaev_preskill(catalog_get("DZ2"), 2.0).renyi_residual) < 1e-14);
    CHECK(std::abs(kitaev_preskill(catalog_get("K(1)"), 2.0).renyi_residual) > 1e-4);
}

TEST_CASE("annulus and torus") {
    const auto dz2 = catalog_get("DZ2");
    CHECK(annulus_entropy(dz2, 2, 2, kVacuum) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));

    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (auto c : m.charges())
            for (unsigned n = 2; n <= 4; ++n)
                for (unsigned mm = 2; mm <= 3; ++mm) {
                    const double expected = 0.5 * (n + mm) * s_bnd(m) + 2.0 * stopo(m) + 2.0 * std::log(m.qdim(c));
                    CHECK(annulus_entropy(m, n, mm, c) == doctest::Approx(expected).epsilon(1e-12));
                    CHECK(std::abs(annulus_entropy(m, n, mm, c, std::nullopt, Convention::undoubled, Method::brute) -
                                   expected) < 1e-9);
                    CHECK(torus_entropy(m, n, mm, c) == annulus_entropy(m, n, mm, c));
                    CHECK(torus_entropy(m, n, mm, c, 3.0, Convention::doubled) ==
                          annulus_entropy(m, n, mm, c, 3.0, Convention::doubled));
                }
    }

    const auto fib = catalog_get("Fib(+1)");
    for (auto c : fib.charges())
        CHECK(std::abs(annulus_entropy(fib, 2, 2, c, 2.0, Convention::doubled, Method::brute) -
                       annulus_entropy(fib, 2, 2, c, 2.0, Convention::doubled, Method::closed)) < 1e-12);
}

TEST_CASE("three-boundary sphere region") {
    const auto fib = catalog_get("Fib(+1)");
    const auto tau = fib.charge("tau");
    CHECK(sphere3_entropy(fib, 2, 2, 2, tau, tau, tau) ==
          doctest::Approx(3.0 * s_bnd(fib) + 3.0 * stopo(fib) + 3.0 * std::log(kPhi)).epsilon(1e-13));

    const auto ising = catalog_get("K(1)");
    const auto sigma = ising.charge("sigma");
    const auto psi = ising.charge("psi");
    CHECK_NOTHROW(sphere3_entropy(ising, 2, 3, 4, sigma, sigma, psi));
    CHECK_THROWS_AS(sphere3_entropy(ising, 2, 3, 4, sigma, sigma, sigma), InvalidArgument);

    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (auto x : m.charges())
            for (auto y : m.charges())
                for (auto z : m.charges()) {
                    const ChargeId t[3] = {x, y, z};
                    if (!fusion_space_dim(m, t, kVacuum)) continue;
                    const double disks = disk_entropy(m, 2, x) + disk_entropy(m, 3, y) + disk_entropy(m, 4, z);
                    CHECK(std::abs(sphere3_entropy(m, 2, 3, 4, x, y, z) - disks) < 1e-12);
                }
    }
}

TEST_CASE("general boundary formula") {
    const auto fib = catalog_get("Fib(+1)");
    const auto tau = fib.charge("tau");
    const ChargeDistribution on_tau{0.0, 1.0}, on_vac{1.0, 0.0};
    CHECK(general_entropy(fib, {{5, on_tau}}) == doctest::Approx(disk_entropy(fib, 5, tau)).epsilon(1e-14));
    CHECK(general_entropy(fib, {{2, on_tau}, {3, on_tau}, {4, on_vac}}) ==
          doctest::Approx(sphere3_entropy(fib, 2, 3, 4, tau, tau, kVacuum)).epsilon(1e-14));
    CHECK(general_entropy(fib, {{2, on_tau}, {3, on_tau}}) == doctest::Approx(annulus_entropy(fib, 2, 3, tau)).epsilon(1e-14));

    const auto p = boundary_distribution(fib);
    const double expected = 3.0 * s_bnd(fib) - 0.5 * std::log(kPhi + 2.0) + p[1] * std::log(kPhi);
    CHECK(general_entropy(fib, {{6, p}}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(general_entropy(fib, {{6, p}}, 0.25) == doctest::Approx(expected + 0.25).epsilon(1e-14));
    CHECK_THROWS_AS(general_entropy(fib, {{6, {0.5, 0.6}}}), InvalidArgument);
    CHECK_THROWS_AS(general_entropy(fib, {{0, p}}), InvalidArgument);
    CHECK_THROWS_AS(general_entropy(fib, {}), InvalidArgument);
}

TEST_CASE("decomposed results reconstruct the entropy") {
    const auto ising = catalog_get("K(1)");
    const auto sigma = ising.charge("sigma");
    const auto r = tee_evaluate(ising, Geometry::disk, {5}, {sigma}, 2.0, Convention::undoubled);
    CHECK(r.linear_term == doctest::Approx(0.5 * boundary_anyon_entropy(ising, 2.0)));
    CHECK(r.topo_term == doctest::Approx(stopo(ising)));
    CHECK(r.charge_term == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(r.F == doctest::Approx(correction_F(ising, 2.0, 5, sigma) / (2.0 * (1.0 - 2.0))).epsilon(1e-6));
    CHECK(r.entropy == doctest::Approx(5 * r.linear_term + r.topo_term + r.charge_term + r.F).epsilon(1e-14));

    const auto vn = tee_evaluate(ising, Geometry::annulus, {3, 4}, {sigma}, std::nullopt, Convention::doubled);
    CHECK(std::abs(vn.F) < 1e-13);
    CHECK(vn.topo_term == doctest::Approx(4.0 * stopo(ising)));

    CHECK_THROWS_AS(tee_evaluate(ising, Geometry::annulus, {3}, {sigma}, std::nullopt, Convention::doubled),
                    InvalidArgument);
    CHECK_THROWS_AS(tee_evaluate(ising, Geometry::sphere3, {3, 3, 3}, {sigma}, std::nullopt, Convention::doubled),
                    InvalidArgument);
}

TEST_CASE("fitting the boundary law") {
    const auto fib = catalog_get("Fib(+1)");
    const auto f = fit_stopo(fib, Geometry::disk, {3, 4, 5, 6, 7, 8}, std::nullopt, Convention::doubled);
    CHECK(f.slope == doctest::Approx(s_bnd(fib)).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(2.0 * stopo(fib)).epsilon(1e-12));
    CHECK(f.residual_max < 1e-9);

    const auto dz2 = fit_stopo(catalog_get("DZ2"), Geometry::disk, {2, 3, 4, 5}, std::nullopt, Convention::undoubled);
    CHECK(dz2.slope == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(dz2.intercept == doctest::Approx(-std::log(2.0)).epsilon(1e-12));

    const auto ising = catalog_get("K(1)");
    const auto r = fit_stopo(ising, Geometry::disk, {6, 7, 8, 9, 10, 11, 12}, 2.0, Convention::doubled);
    CHECK(std::abs(r.intercept - 2.0 * stopo(ising)) <= std::abs(correction_F(ising, 2.0, 6, kVacuum)));

    for (const auto& name : catalog_names())
        CHECK(fit_stopo(catalog_get(name), Geometry::annulus, {2, 3, 4, 5}, std::nullopt).residual_max < 1e-9);

    CHECK_THROWS_AS(fit_stopo(fib, Geometry::disk, {3, 3, 3}), InvalidArgument);
    CHECK_THROWS_AS(fit_stopo(fib, Geometry::disk, {3, 4}), InvalidArgument);
}

TEST_CASE("string-net entropy") {
    const auto fib = catalog_get("Fib(+1)");
    const double big_d = kPhi + 2.0;
    for (unsigned n = 1; n <= 6; ++n) {
        const double expected =
            -double(n) * (1.0 / big_d * std::log(1.0 / big_d) + kPhi * kPhi / big_d * std::log(kPhi / big_d)) - std::log(big_d);
        CHECK(stringnet_entropy(fib, n) == doctest::Approx(expected).epsilon(1e-14));
        for (int k : {2, 3, 5})
            CHECK(stringnet_entropy(catalog_get("ZN(" + std::to_string(k) + ",1" + (k % 2 == 0 ? "/2)" : ")")), n) ==
                  doctest::Approx((n - 1.0) * std::log(k)).scale(1.0).epsilon(1e-13));
    }
    for (const char* name : {"Fib(+1)", "Fib(-1)", "K(1)", "ZN(2,1/2)", "SO3_6", "ZN(5,2)"}) {
        const auto r = stringnet_check(catalog_get(name));
        CAPTURE(name);
        CHECK(r.pass);
        CHECK(r.boundary_residual < 1e-12);
        CHECK(r.tee_residual < 1e-12);
    }
    // fed the fusion data of a modular theory, the string-net formula is the doubled disk
    for (const auto& name : modular_catalog_names()) {
        const auto m = catalog_get(name);
        for (unsigned n = 1; n <= 8; ++n)
            CHECK(std::abs(stringnet_entropy(m, n) - disk_entropy(m, n, kVacuum, std::nullopt, Convention::doubled)) < 1e-12);
    }
}

TEST_CASE("argument errors") {
    const auto fib = catalog_get("Fib(+1)");
    CHECK_THROWS_AS(disk_entropy(fib, 0, kVacuum), InvalidArgument);
    CHECK_THROWS_AS(disk_entropy(fib, 3, ChargeId{7}), InvalidArgument);
    CHECK_THROWS_AS(disk_entropy(fib, 3, kVacuum, -2.0), InvalidArgument);
    CHECK_THROWS_AS(brute_boundary_oracle(catalog_get("ZN(7,1)"), 9, kVacuum), NumericalError);
    CHECK_NOTHROW(brute_boundary_oracle(catalog_get("ZN(7,1)"), 8, kVacuum));
    CHECK(parse_geometry("torus") == Geometry::torus);
    CHECK(parse_method("brute") == Method::brute);
    CHECK(parse_convention("doubled") == Convention::doubled);
    CHECK_THROWS_AS(parse_geometry("cube"), InvalidArgument);
}

TEST_CASE("finite-difference replica limit of the oracle") {
    const auto dz2 = catalog_get("DZ2");
    for (unsigned n = 2; n <= 6; ++n)
        CHECK(std::abs(brute_boundary_oracle(dz2, n, kVacuum, 1.0 + 1e-6) -
                       disk_entropy(dz2, n, kVacuum, std::nullopt, Convention::doubled)) < 1e-4);
}
