#pragma once

#include "anyon/state.hpp"

#include <map>
#include <vector>

namespace anyon {

/// Entropies in nats. shannon_part + charge_part = von_neumann is a purely
/// numerical split: the charge part is not by itself a "topological" entropy.
struct EntropyReport {
    double von_neumann = 0.0;
    std::map<double, double> renyi;
    double shannon_part = 0.0;  // -sum lambda log lambda over sector eigenvalues
    double charge_part = 0.0;   // sum_c p_c log d_c
};

/// Eigenvalues below this are treated as exact zeros inside logarithms.
inline constexpr double kEigenCutoff = 1e-14;

/// -sum p log p with the 0 log 0 = 0 convention.
double shannon_entropy(const std::vector<double>& p);

/// -aTr(rho log rho) = -sum_{c,j} lambda_{c,j} log(lambda_{c,j} / d_c)
double von_neumann(const SectorState& s);

/// log(aTr rho^alpha) / (1 - alpha) with aTr rho^alpha = sum_c d_c^(1-alpha) Tr W_c^alpha.
/// alpha == 1 falls back to von_neumann.
double renyi(const SectorState& s, double alpha);

EntropyReport entropy_report(const SectorState& s, const std::vector<double>& alphas = {});

/// aTr rho (log rho - log sigma). Returns +infinity when the support of rho
/// is not contained in that of sigma. Sectors present in both must have the
/// same expanded dimension.
double relative_entropy(const SectorState& rho, const SectorState& sigma);

/// S(rhoA) + S(rhoB) - S(joint) with caller-declared marginals.
double mutual_information(const SectorState& joint, const SectorState& rhoA, const SectorState& rhoB);

/// H({p_c}) + 2 sum_c p_c log d_c over the charge line joining A and B.
double ace_entropy(const BipartitePureState& psi);

/// Closed forms for the three pair-state families.
double ace_entropy_family(const AnyonModel& m, PairVariant variant, const ChargeDistribution& p);

/// Entropy of A evaluated from the singular values of each psi_c.
EntropyReport aee_bipartite(const BipartitePureState& psi, const std::vector<double>& alphas = {});

}  // namespace anyon
