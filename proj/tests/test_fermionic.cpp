#include "doctest.h"

#include "anyon/catalog.hpp"
#include "anyon/error.hpp"
#include "anyon/fermionic.hpp"
#include "anyon/tee.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace anyon;

namespace {

double half_sum_d2(const AnyonModel& m) {
    double s = 0.0;
    for (auto a : m.charges()) s += m.qdim(a) * m.qdim(a);
    return 0.5 * s;
}

ChargeId trivial_fermion_in(const AnyonModel& prod, const AnyonModel& partner) {
    return prod.charge("(1," + partner.label(kVacuum) + ")");
}

}  // namespace

TEST_CASE("supersector examples") {
    const auto trivial = make_super(catalog_get("ZN(2,1)"), ChargeId{1});
    CHECK(trivial.supersectors.size() == 1);
    CHECK(trivial.dhat_sq() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fermionic_stopo(trivial) == doctest::Approx(0.0));
    CHECK(trivial.sector_label(0) == "{0,1}");

    const auto ising = catalog_get("K(1)");
    const auto zi = product(catalog_get("ZN(2,1)"), ising);
    const auto sk = make_super(zi, trivial_fermion_in(zi, ising));
    CHECK(sk.supersectors.size() == 3);
    CHECK(sk.dhat_sq() == doctest::Approx(4.0).epsilon(1e-14));

    const auto so3 = make_super(catalog_get("SO3_6"), catalog_get("SO3_6").charge("3"));
    CHECK(so3.supersectors.size() == 2);
    CHECK(so3.dhat_sq() == doctest::Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(fermionic_stopo(so3) == doctest::Approx(-0.5 * std::log(4.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(so3.sector_label(0) == "{0,3}");
    CHECK(so3.sector_label(1) == "{1,2}");
    CHECK(so3.sector_of(so3.base->charge("2")) == 1);

    const auto fib = catalog_get("Fib(+1)");
    const auto zf = product(catalog_get("ZN(2,1)"), fib);
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(fermionic_stopo(make_super(zf, trivial_fermion_in(zf, fib))) ==
          doctest::Approx(-0.5 * std::log(phi + 2.0)).epsilon(1e-14));
}

TEST_CASE("fermionic catalog reproduces the tabulated dimensions") {
    const auto cat = fermionic_catalog();
    CHECK(cat.size() == 21);
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const std::map<std::string, double> table{{"1", 1.0}, {"2", 2.0}, {"3", 3.0}, {"phi+2", phi + 2.0},
                                              {"4", 4.0}, {"5", 5.0}, {"6", 6.0}, {"4+2sqrt2", 4.0 + 2.0 * std::sqrt(2.0)},
                                              {"7", 7.0}};
    const std::map<std::string, int> counts{{"1", 1}, {"2", 1}, {"3", 2}, {"phi+2", 2}, {"4", 8},
                                            {"5", 2}, {"6", 2}, {"4+2sqrt2", 1}, {"7", 2}};
    std::map<std::string, int> seen;
    std::set<std::string> names;
    for (const auto& e : cat) {
        CAPTURE(e.name);
        ++seen[e.dhat_sq_tag];
        names.insert(e.name);
        REQUIRE(table.count(e.dhat_sq_tag) == 1);
        CHECK(std::abs(e.dhat_sq - table.at(e.dhat_sq_tag)) < 1e-12);
        CHECK(std::abs(e.model.dhat_sq() - e.dhat_sq) < 1e-12);
        CHECK(std::abs(e.model.dhat_sq() - half_sum_d2(*e.model.base)) < 1e-12);
        CHECK(e.model.dhat_sq() <= 7.0 + 1e-12);
        CHECK(e.model.supersectors.size() * 2 == e.model.base->size());
    }
    CHECK(seen == counts);
    CHECK(names.size() == cat.size());
}

TEST_CASE("supersector pairing is a fixed-point-free involution") {
    for (const auto& e : fermionic_catalog()) {
        const auto& sm = e.model;
        const auto& m = *sm.base;
        std::vector<int> hits(m.size(), 0);
        for (std::size_t i = 0; i < sm.supersectors.size(); ++i) {
            const auto [a, b] = sm.supersectors[i];
            CHECK(a != b);
            CHECK(m.N(a, sm.fermion, b) == 1);
            CHECK(m.N(b, sm.fermion, a) == 1);
            CHECK(sm.super_qdim[i] == doctest::Approx(m.qdim(a)));
            CHECK(m.qdim(a) == doctest::Approx(m.qdim(b)));
            ++hits[a.index];
            ++hits[b.index];
        }
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("the trivial fermion leaves the topological entropy unchanged") {
    const auto z = catalog_get("ZN(2,1)");
    for (const auto& name : modular_catalog_names()) {
        const auto x = catalog_get(name);
        const auto zx = product(z, x);
        const auto sm = make_super(zx, trivial_fermion_in(zx, x));
        CAPTURE(name);
        CHECK(std::abs(fermionic_stopo(sm) - stopo(x)) < 1e-12);
    }
}

TEST_CASE("fermion axioms are enforced") {
    auto fails = [](const AnyonModel& m, const std::string& label, const std::string& check) {
        try {
            make_super(m, m.charge(label));
        } catch (const ValidationError& e) {
            return e.check() == check;
        }
        return false;
    };
    CHECK(fails(catalog_get("Fib(+1)xZN(2,1/2)"), "(tau,0)", "fermion_fusion"));
    CHECK(fails(catalog_get("K(1)"), "psi", "supersector_pairing"));
    CHECK(fails(catalog_get("K(1)xZN(2,1/2)"), "(psi,0)", "supersector_pairing"));
    CHECK(fails(catalog_get("ZN(3,1)"), "1", "supersector_pairing"));
    CHECK(fails(catalog_get("ZN(4,1)"), "2", "fermion_twist"));
    CHECK(fails(catalog_get("DZ2"), "11", "fermion_transparency"));
    CHECK(fails(catalog_get("ZN(2,1/2)"), "1", "fermion_twist"));
    CHECK_THROWS_AS(make_super(catalog_get("ZN(2,1)"), ChargeId{5}), InvalidArgument);
}
