#pragma once

#include "anyon/model.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace anyon {

/// One orthonormal-basis block of total charge `charge`. The density operator
/// restricted to the block is W / d_charge. `multiplicity` counts identical
/// copies of the block (distinct fusion-tree labels carrying the same matrix).
struct SectorBlock {
    ChargeId charge;
    Eigen::MatrixXcd W;
    std::uint64_t multiplicity = 1;
    std::vector<std::string> tags;  // optional basis labels, one per row of W
};

/// Anyonic density matrix stored as charge-sector blocks. Normalization
/// (sum of p_c equal to 1) is not enforced on construction so that traces of
/// unnormalized operators can be taken; check() asserts the full invariants.
class SectorState {
public:
    SectorState(std::shared_ptr<const AnyonModel> model, std::vector<SectorBlock> blocks, double tol = kDefaultTol);
    SectorState(const AnyonModel& model, std::vector<SectorBlock> blocks, double tol = kDefaultTol);

    const AnyonModel& model() const { return *model_; }
    const std::shared_ptr<const AnyonModel>& model_ptr() const { return model_; }
    const std::vector<SectorBlock>& blocks() const { return blocks_; }

    /// p_c: summed trace of every block with total charge c.
    double weight(ChargeId c) const;
    /// Charges carrying at least one block, ascending.
    std::vector<ChargeId> charges() const;

    /// Throws ValidationError unless Hermitian, PSD and normalized within tol.
    void check(double tol = kDefaultTol) const;

private:
    std::shared_ptr<const AnyonModel> model_;
    std::vector<SectorBlock> blocks_;
};

/// Pure state of A and B already split at one charge line: amplitude matrix
/// psi_c (dimA x dimB) for A-side total charge c; the B side carries dual(c).
struct PureBlock {
    ChargeId charge;
    Eigen::MatrixXcd psi;
};

class BipartitePureState {
public:
    BipartitePureState(std::shared_ptr<const AnyonModel> model, std::vector<PureBlock> blocks,
                       double tol = kDefaultTol);
    BipartitePureState(const AnyonModel& model, std::vector<PureBlock> blocks, double tol = kDefaultTol);

    const AnyonModel& model() const { return *model_; }
    const std::shared_ptr<const AnyonModel>& model_ptr() const { return model_; }
    const std::vector<PureBlock>& blocks() const { return blocks_; }

    /// p_c = |psi_c|_F^2 summed over blocks of charge c.
    double weight(ChargeId c) const;

private:
    std::shared_ptr<const AnyonModel> model_;
    std::vector<PureBlock> blocks_;
};

struct SpectrumEntry {
    ChargeId charge;
    std::vector<double> eigenvalues;  // of W, clamped at zero
    std::uint64_t multiplicity = 1;
};

/// Sector-resolved eigenvalues; sum over entries of multiplicity * sum(eigenvalues) is 1.
struct StateSpectrum {
    std::vector<SpectrumEntry> entries;
};

StateSpectrum spectrum(const SectorState& s);

/// Probability per charge, indexed by ChargeId::index.
using ChargeDistribution = std::vector<double>;

/// Throws InvalidArgument unless p has one non-negative entry per charge summing to 1.
void require_distribution(const AnyonModel& m, const ChargeDistribution& p, double tol = kDefaultTol);

/// p_c = d_c^2 / D^2
ChargeDistribution boundary_distribution(const AnyonModel& m);

SectorState single_anyon_state(const AnyonModel& m, ChargeId a);

/// Single boundary segment: each charge a carried with weight d_a^2 / D^2.
SectorState boundary_anyon_state(const AnyonModel& m);

enum class PairVariant { product, correlated, pure };

/// sum_a p_a rho_a (x) rho_abar
SectorState pair_state_product(const AnyonModel& m, const ChargeDistribution& p);
/// Vacuum-sector state diag(p_a) on the basis |a, abar; 0>.
SectorState pair_state_correlated(const AnyonModel& m, const ChargeDistribution& p);
/// Maximally charge-line-entangled pure pair; block a carries amplitude sqrt(p_a).
BipartitePureState pair_state_pure(const AnyonModel& m, const ChargeDistribution& p);

std::variant<SectorState, BipartitePureState> pair_state(const AnyonModel& m, const ChargeDistribution& p,
                                                         PairVariant variant);

/// aTr rho = sum_c p_c
double quantum_trace(const SectorState& s);
/// Tr rho = sum_c Tr(W_c) / d_c
double ordinary_trace(const SectorState& s);

SectorState reduce_A(const BipartitePureState& psi);
SectorState reduce_B(const BipartitePureState& psi);

/// Joint state of two independent subsystems, blocks indexed by fused total charge.
SectorState tensor(const SectorState& s1, const SectorState& s2);

/// Merges blocks of equal charge whose matrices agree exactly into one block
/// with summed multiplicity. Leaves every entropy unchanged.
SectorState compress(const SectorState& s);

/// Restricts to the vacuum sector and renormalizes.
SectorState project_vacuum(const SectorState& s);

/// Index groups partitioning the basis of one block.
using BasisPartition = std::vector<std::vector<std::size_t>>;

/// Removes coherences between groups. `partitions` holds one entry per block;
/// an empty list selects the finest partition everywhere.
SectorState measure_decohere(const SectorState& s, const std::vector<BasisPartition>& partitions = {});

/// sum_i w_i rho_i for states with identical block layout.
SectorState mix(const std::vector<SectorState>& states, const std::vector<double>& weights);

/// Mixture of mutually orthogonal states: the blocks are kept side by side.
SectorState direct_sum(const std::vector<SectorState>& states, const std::vector<double>& weights);

/// All blocks of charge c expanded (with multiplicity) into one block-diagonal matrix.
Eigen::MatrixXcd sector_matrix(const SectorState& s, ChargeId c);

/// Block layout for random generation: (charge, dimension) per block.
using SectorLayout = std::vector<std::pair<ChargeId, std::size_t>>;

/// Random non-empty subset of charges, each with dimension uniform in [1, max_dim].
SectorLayout random_layout(const AnyonModel& m, std::mt19937_64& rng, std::size_t max_dim = 4);

/// W = G G^dagger with complex Gaussian G per block, jointly normalized.
/// A positive `rank` caps the column count of G.
SectorState random_state(const AnyonModel& m, const SectorLayout& layout, std::mt19937_64& rng, std::size_t rank = 0);
SectorState random_state(const AnyonModel& m, std::mt19937_64& rng);

/// Random pure bipartite state with per-charge side dimensions in [1, max_dim].
BipartitePureState random_bipartite(const AnyonModel& m, std::mt19937_64& rng, std::size_t max_dim = 4);

}  // namespace anyon
