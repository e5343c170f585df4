#include "doctest.h"

#include "anyon/catalog.hpp"
#include "anyon/entropy.hpp"
#include "anyon/error.hpp"
#include "property_suite.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>

using namespace anyon;

namespace {

const double kPhi = 0.5 * (1.0 + std::sqrt(5.0));

// -sum_c Tr(W_c log(W_c / d_c)) through the matrix logarithm; needs full-rank blocks.
double oracle_vn(const SectorState& s) {
    double out = 0.0;
    for (const auto& b : s.blocks()) {
        const Eigen::MatrixXcd scaled = b.W / s.model().qdim(b.charge);
        const Eigen::MatrixXcd lg = scaled.log();
        out -= static_cast<double>(b.multiplicity) * (b.W * lg).trace().real();
    }
    return out;
}

// log(sum_c d_c^(1-a) Tr W_c^a) / (1-a) through the matrix power.
double oracle_renyi(const SectorState& s, double a) {
    double tr = 0.0;
    for (const auto& b : s.blocks())
        tr += static_cast<double>(b.multiplicity) * std::pow(s.model().qdim(b.charge), 1.0 - a) *
              b.W.pow(a).trace().real();
    return std::log(tr) / (1.0 - a);
}

// Pure pair state written as a rank-one vacuum-sector density on |a, abar; 0>.
SectorState pure_pair_density(const AnyonModel& m, const ChargeDistribution& p) {
    Eigen::VectorXcd v(m.size());
    for (auto a : m.charges()) v(a.index) = std::sqrt(p[a.index]);
    return SectorState(m, {{kVacuum, v * v.adjoint(), 1, {}}});
}

}  // namespace

TEST_CASE("single anyon entropy is log d") {
    const auto fib = catalog_get("Fib(+1)");
    const auto tau = single_anyon_state(fib, ChargeId{1});
    CHECK(von_neumann(tau) == doctest::Approx(0.4812118251).epsilon(1e-10));
    CHECK(von_neumann(tau) == doctest::Approx(std::log(kPhi)).epsilon(1e-15));
    for (double a : {0.5, 2.0, 3.0, 7.5}) CHECK(renyi(tau, a) == doctest::Approx(std::log(kPhi)).epsilon(1e-14));
    CHECK(von_neumann(single_anyon_state(fib, kVacuum)) == 0.0);
}

TEST_CASE("maximally mixed Abelian sector") {
    const auto z3 = catalog_get("ZN(3,1)");
    for (int k = 1; k <= 5; ++k) {
        const SectorState s(z3, {{ChargeId{2}, Eigen::MatrixXcd::Identity(k, k) / k, 1, {}}});
        CHECK(renyi(s, 2.0) == doctest::Approx(std::log(k)).epsilon(1e-14));
        CHECK(von_neumann(s) == doctest::Approx(std::log(k)).epsilon(1e-14));
    }
}

TEST_CASE("common marginal of the pair families") {
    const auto fib = catalog_get("Fib(+1)");
    const ChargeDistribution p{0.5, 0.5};
    const auto rhoA = reduce_A(pair_state_pure(fib, p));
    // -sum p log(p / d)
    CHECK(von_neumann(rhoA) == doctest::Approx(-0.5 * std::log(0.5) - 0.5 * std::log(0.5 / kPhi)).epsilon(1e-14));
    CHECK(von_neumann(rhoA) == doctest::Approx(std::log(2.0) + 0.5 * std::log(kPhi)).epsilon(1e-14));
    CHECK(renyi(rhoA, 2.0) == doctest::Approx(-std::log(0.25 + 0.25 / kPhi)).epsilon(1e-14));
    // the correlated joint state itself lives in the vacuum sector
    CHECK(von_neumann(pair_state_correlated(fib, p)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy against the matrix-function oracle") {
    std::mt19937_64 rng(21);
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto m = catalog_get(name);
        for (int k = 0; k < 10; ++k) {
            const auto s = random_state(m, rng);
            CHECK(von_neumann(s) == doctest::Approx(oracle_vn(s)).epsilon(1e-10));
            for (double a : {0.5, 2.0, 3.0}) CHECK(renyi(s, a) == doctest::Approx(oracle_renyi(s, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("report decomposition and the replica limit") {
    std::mt19937_64 rng(2);
    for (const auto& name : {"Fib(+1)", "K(1)", "SO3_6", "ZN(6,1/2)"}) {
        const auto m = catalog_get(name);
        for (int k = 0; k < 50; ++k) {
            const auto s = random_state(m, rng);
            const auto r = entropy_report(s, {1.0 - 1e-6, 1.0 + 1e-6, 1.0});
            CHECK(r.von_neumann == doctest::Approx(r.shannon_part + r.charge_part).epsilon(1e-13));
            double charge = 0.0;
            for (auto c : s.charges()) charge += s.weight(c) * std::log(m.qdim(c));
            CHECK(r.charge_part == doctest::Approx(charge).epsilon(1e-12));
            const double limit = 0.5 * (r.renyi.at(1.0 - 1e-6) + r.renyi.at(1.0 + 1e-6));
            CHECK(std::abs(limit - r.von_neumann) < 1e-5);
            CHECK(r.renyi.at(1.0) == r.von_neumann);
        }
    }
}

TEST_CASE("invalid Renyi order") {
    const auto s = single_anyon_state(catalog_get("Fib(+1)"), kVacuum);
    CHECK_THROWS_AS(renyi(s, 0.0), InvalidArgument);
    CHECK_THROWS_AS(renyi(s, -1.0), InvalidArgument);
    CHECK_THROWS_AS(entropy_report(s, {2.0, -3.0}), InvalidArgument);
}

TEST_CASE("relative entropy") {
    const auto fib = catalog_get("Fib(+1)");
    std::mt19937_64 rng(4);
    const auto r = random_state(fib, rng);
    CHECK(std::abs(relative_entropy(r, r)) < 1e-12);

    const auto vac = single_anyon_state(fib, kVacuum);
    const auto tau = single_anyon_state(fib, ChargeId{1});
    CHECK(relative_entropy(vac, tau) == std::numeric_limits<double>::infinity());

    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2, 2);
    w(0, 0) = 1.0;
    const SectorState edge(fib, {{kVacuum, w, 1, {}}});
    const SectorState full(fib, {{kVacuum, Eigen::MatrixXcd::Identity(2, 2) / 2.0, 1, {}}});
    CHECK(relative_entropy(full, edge) == std::numeric_limits<double>::infinity());
    CHECK(relative_entropy(edge, full) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // relative entropy to the decohered state equals the entropy increase
    for (int k = 0; k < 50; ++k) {
        const auto s = random_state(fib, rng);
        const auto d = measure_decohere(s);
        CHECK(relative_entropy(s, d) == doctest::Approx(von_neumann(d) - von_neumann(s)).epsilon(1e-9));
    }
}

TEST_CASE("charge-line entanglement of the pair families") {
    std::mt19937_64 rng(9);
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto m = catalog_get(name);
        const auto p = props::random_weights(m.size(), rng);
        const auto rho1 = pair_state_product(m, p);
        const auto rho2 = pair_state_correlated(m, p);
        const auto rho3 = pure_pair_density(m, p);
        double line = 0.0, h = 0.0;
        for (auto a : m.charges()) {
            line += 2.0 * p[a.index] * std::log(m.qdim(a));
            h -= p[a.index] * std::log(p[a.index]);
        }
        // severing the charge line maps both rho2 and rho3 onto rho1
        CHECK(ace_entropy_family(m, PairVariant::product, p) == 0.0);
        CHECK(ace_entropy_family(m, PairVariant::correlated, p) == doctest::Approx(line).epsilon(1e-13));
        CHECK(ace_entropy_family(m, PairVariant::pure, p) == doctest::Approx(h + line).epsilon(1e-13));
        CHECK(von_neumann(rho1) - von_neumann(rho2) == doctest::Approx(line).scale(1.0).epsilon(1e-12));
        CHECK(von_neumann(rho1) - von_neumann(rho3) == doctest::Approx(h + line).epsilon(1e-12));
        CHECK(relative_entropy(rho2, rho1) == doctest::Approx(line).scale(1.0).epsilon(1e-12));
        CHECK(relative_entropy(rho3, rho1) == doctest::Approx(h + line).epsilon(1e-12));
        CHECK(ace_entropy(pair_state_pure(m, p)) == doctest::Approx(h + line).epsilon(1e-13));
    }
}

TEST_CASE("ace entropy examples") {
    const auto fib = catalog_get("Fib(+1)");
    CHECK(ace_entropy(pair_state_pure(fib, boundary_distribution(fib))) ==
          doctest::Approx(std::log(kPhi + 2.0)).epsilon(1e-14));
    CHECK(ace_entropy(pair_state_pure(fib, {0.5, 0.5})) == doctest::Approx(std::log(2.0) + std::log(kPhi)).epsilon(1e-14));
    CHECK(ace_entropy_family(fib, PairVariant::correlated, {0.0, 1.0}) ==
          doctest::Approx(2.0 * std::log(kPhi)).epsilon(1e-14));
    CHECK(ace_entropy_family(fib, PairVariant::pure, {0.5, 0.5}) ==
          doctest::Approx(std::log(2.0) + std::log(kPhi)).epsilon(1e-14));

    const auto z3 = catalog_get("ZN(3,1)");
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Random(2, 3);
    psi /= psi.norm();
    CHECK(std::abs(ace_entropy(BipartitePureState(z3, {{ChargeId{1}, psi}}))) < 1e-14);
    CHECK_THROWS_AS(ace_entropy_family(fib, PairVariant::pure, {0.5}), InvalidArgument);
}

TEST_CASE("ace entropy never exceeds 2 log D") {
    std::mt19937_64 rng(77);
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto m = catalog_get(name);
        const double bound = std::log(m.total_qdim_sq());
        for (int k = 0; k < 1000; ++k) {
            const auto p = props::random_weights(m.size(), rng);
            REQUIRE(ace_entropy(pair_state_pure(m, p)) <= bound + 1e-12);
        }
        CHECK(ace_entropy(pair_state_pure(m, boundary_distribution(m))) == doctest::Approx(bound).epsilon(1e-12));
    }
}

TEST_CASE("bipartite entanglement entropy") {
    const auto fib = catalog_get("Fib(+1)");
    const ChargeDistribution p{0.2, 0.8};
    const auto r = aee_bipartite(pair_state_pure(fib, p));
    const double h = -0.2 * std::log(0.2) - 0.8 * std::log(0.8);
    CHECK(r.von_neumann == doctest::Approx(h + 0.8 * std::log(kPhi)).epsilon(1e-14));
    CHECK(r.shannon_part == doctest::Approx(h).epsilon(1e-14));

    const auto z2 = catalog_get("ZN(2,1/2)");
    Eigen::MatrixXcd rank1(2, 2);
    rank1 << 0.6, 0.0, 0.8, 0.0;
    CHECK(std::abs(aee_bipartite(BipartitePureState(z2, {{ChargeId{1}, rank1}})).von_neumann) < 1e-14);

    std::mt19937_64 rng(6);
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (int k = 0; k < 20; ++k) {
            const auto psi = random_bipartite(m, rng);
            const auto rep = aee_bipartite(psi, {2.0});
            CHECK(rep.von_neumann == doctest::Approx(von_neumann(reduce_A(psi))).epsilon(1e-9));
            CHECK(rep.renyi.at(2.0) == doctest::Approx(renyi(reduce_A(psi), 2.0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("mutual information") {
    const auto fib = catalog_get("Fib(+1)");
    std::mt19937_64 rng(10);
    const auto a = random_state(fib, rng);
    const auto b = random_state(fib, rng);
    CHECK(std::abs(mutual_information(tensor(a, b), a, b)) < 1e-12);

    const auto p = boundary_distribution(fib);
    const auto joint = pure_pair_density(fib, p);
    const auto rhoA = reduce_A(pair_state_pure(fib, p));
    const auto rhoB = reduce_B(pair_state_pure(fib, p));
    CHECK(mutual_information(joint, rhoA, rhoB) == doctest::Approx(2.0 * von_neumann(rhoA)).epsilon(1e-13));

    // projecting n boundary anyons onto the vacuum removes exactly 2 log D
    auto s = boundary_anyon_state(fib);
    for (int n = 2; n <= 5; ++n) {
        s = compress(tensor(s, boundary_anyon_state(fib)));
        CHECK(von_neumann(s) - von_neumann(project_vacuum(s)) ==
              doctest::Approx(std::log(fib.total_qdim_sq())).epsilon(1e-12));
    }
}

TEST_CASE("information inequalities on random instances") {
    std::mt19937_64 rng(2024);
    for (const auto& name : catalog_names()) {
        const auto m = catalog_get(name);
        for (const auto& prop : props::all()) {
            CAPTURE(name);
            CAPTURE(prop.name);
            CHECK(prop.run(m, rng, 50) == 0);
        }
    }
}
