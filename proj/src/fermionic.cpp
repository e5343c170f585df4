#include "anyon/fermionic.hpp"

#include "anyon/catalog.hpp"
#include "anyon/error.hpp"

#include <cmath>

namespace anyon {

std::string SuperModel::sector_label(std::size_t i) const {
    const auto& [a, b] = supersectors.at(i);
    return "{" + base->label(a) + "," + base->label(b) + "}";
}

std::size_t SuperModel::sector_of(ChargeId c) const {
    for (std::size_t i = 0; i < supersectors.size(); ++i)
        if (supersectors[i].first == c || supersectors[i].second == c) return i;
    throw InvalidArgument("supersector", "charge index " + std::to_string(c.index) + " out of range");
}

namespace {

// The unique fusion outcome of a x psi, or nothing when psi does not act as a simple current on a.
std::optional<ChargeId> simple_product(const AnyonModel& m, ChargeId a, ChargeId psi) {
    std::optional<ChargeId> out;
    for (auto c : m.charges()) {
        const unsigned n = m.N(a, psi, c);
        if (n == 0) continue;
        if (n > 1 || out) return std::nullopt;
        out = c;
    }
    return out;
}

}  // namespace

SuperModel make_super(std::shared_ptr<const AnyonModel> mp, ChargeId psi, double tol) {
    const AnyonModel& m = *mp;
    if (psi.index >= m.size())
        throw InvalidArgument("fermion", "charge index " + std::to_string(psi.index) + " out of range");
    const std::string who = "'" + m.label(psi) + "' in " + m.name();
    if (m.size() % 2 != 0)
        throw ValidationError("supersector_pairing", m.name() + " has an odd number of charges");
    for (auto c : m.charges())
        if (m.N(psi, psi, c) != (c == kVacuum ? 1u : 0u))
            throw ValidationError("fermion_fusion", who + " does not fuse with itself to the vacuum alone");
    if (std::abs(m.qdim(psi) - 1.0) > tol) throw ValidationError("fermion_qdim", who + " has d != 1");
    if (std::abs(m.twist(psi) + 1.0) > tol) throw ValidationError("fermion_twist", who + " has theta != -1");

    SuperModel sm;
    sm.base = mp;
    sm.fermion = psi;
    std::vector<bool> seen(m.size(), false);
    double sum = 0.0;
    for (auto a : m.charges()) {
        const auto b = simple_product(m, a, psi);
        if (!b) throw ValidationError("fermion_fusion", who + " does not act as a simple current on " + m.label(a));
        if (*b == a) throw ValidationError("supersector_pairing", m.label(a) + " is fixed by " + who);
        if (std::abs(m.twist(*b) + m.twist(a)) > tol)
            throw ValidationError("fermion_transparency",
                                  "theta(" + m.label(*b) + ") != -theta(" + m.label(a) + ") for " + who);
        sum += m.qdim(a) * m.qdim(a);
        if (seen[a.index]) continue;
        seen[a.index] = seen[b->index] = true;
        sm.supersectors.emplace_back(a, *b);
        sm.super_qdim.push_back(m.qdim(a));
    }
    sm.dhat = std::sqrt(0.5 * sum);
    sm.dhat2 = 0.5 * sum;
    return sm;
}

SuperModel make_super(const AnyonModel& m, ChargeId psi, double tol) {
    return make_super(std::make_shared<const AnyonModel>(m), psi, tol);
}

double fermionic_stopo(const SuperModel& sm) { return 0.0 - std::log(sm.dhat); }

std::vector<SuperCatalogEntry> fermionic_catalog() {
    struct Row {
        const char* partner;  // empty for the trivial fermion alone
        const char* tag;
        double value;
    };
    const double phi = QDim::from_tag("phi").value;
    std::vector<Row> rows{
        {"", "1", 1.0},
        {"ZN(2,1/2)", "2", 2.0},
        {"ZN(3,1)", "3", 3.0},
        {"ZN(3,2)", "3", 3.0},
        {"Fib(+1)", "phi+2", phi + 2.0},
        {"Fib(-1)", "phi+2", phi + 2.0},
    };
    static const std::string kNu[] = {"K(0)", "K(1)", "K(2)", "K(3)", "K(4)", "K(5)", "K(6)", "K(7)"};
    for (const auto& k : kNu) rows.push_back({k.c_str(), "4", 4.0});
    rows.insert(rows.end(), {
                                {"ZN(5,1)", "5", 5.0},
                                {"ZN(5,2)", "5", 5.0},
                                {"ZN(6,1/2)", "6", 6.0},
                                {"ZN(6,5/2)", "6", 6.0},
                                {"SO3_6", "4+2sqrt2", 4.0 + 2.0 * std::sqrt(2.0)},
                                {"ZN(7,1)", "7", 7.0},
                                {"ZN(7,3)", "7", 7.0},
                            });

    std::vector<SuperCatalogEntry> out;
    for (const auto& r : rows) {
        const std::string partner = r.partner;
        std::string name;
        if (partner.empty()) name = "ZN(2,1)";
        else if (partner == "SO3_6") name = partner;
        else name = "ZN(2,1)x" + partner;
        auto m = std::make_shared<const AnyonModel>(catalog_get(name));
        const ChargeId psi = partner == "SO3_6" ? m->charge("3")
                             : partner.empty() ? m->charge("1")
                                               : m->charge("(1," + catalog_get(partner).label(kVacuum) + ")");
        out.push_back({name, r.tag, r.value, make_super(m, psi)});
    }
    return out;
}

}  // namespace anyon
