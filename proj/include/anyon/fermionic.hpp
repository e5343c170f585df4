#pragma once

#include "anyon/model.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace anyon {

/// Fermionic theory: a base model with a transparent fermion psi whose charges
/// pair into supersectors {a, a x psi}.
struct SuperModel {
    std::shared_ptr<const AnyonModel> base;
    ChargeId fermion;
    /// Each pair holds the lower charge index first; ordered by that index.
    std::vector<std::pair<ChargeId, ChargeId>> supersectors;
    std::vector<double> super_qdim;
    double dhat = 1.0;
    double dhat2 = 1.0;  // 0.5 * sum_a d_a^2

    double dhat_sq() const { return dhat2; }
    /// "{a,b}" from the base labels.
    std::string sector_label(std::size_t i) const;
    /// Index of the supersector containing c.
    std::size_t sector_of(ChargeId c) const;
};

/// Builds the supersectors of `m` under `psi`. Throws ValidationError naming the
/// failed condition: psi x psi = 0 as the only channel, d_psi = 1, theta_psi = -1,
/// a x psi a single charge distinct from a, and theta_{a x psi} = -theta_a
/// (a necessary condition for psi to braid trivially, used in place of full braiding data).
SuperModel make_super(const AnyonModel& m, ChargeId psi, double tol = kDefaultTol);
SuperModel make_super(std::shared_ptr<const AnyonModel> m, ChargeId psi, double tol = kDefaultTol);

/// -log D_hat, independent of the spin structure.
double fermionic_stopo(const SuperModel& sm);

struct SuperCatalogEntry {
    std::string name;       // catalog name of the base model
    std::string dhat_sq_tag;  // tabulated value as written: "1", "phi+2", "4+2sqrt2", ...
    double dhat_sq = 0.0;   // numeric value of the tag
    SuperModel model;
};

/// Every super-modular theory with D_hat^2 <= 7, one entry per distinct theory.
std::vector<SuperCatalogEntry> fermionic_catalog();

}  // namespace anyon
