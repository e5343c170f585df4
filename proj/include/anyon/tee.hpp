#pragma once

#include "anyon/model.hpp"
#include "anyon/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anyon {

/// `doubled` is the mirror surface glued through wormholes; `undoubled` is
/// the physical region, whose boundary and topological terms are half as large.
enum class Convention { doubled, undoubled };

/// closed: boundary-law decomposition plus the correction F.
/// transfer: matrix powers of K_alpha (exact sum, no decomposition).
/// brute: literal enumeration of boundary-charge tuples.
enum class Method { closed, transfer, brute };

enum class Geometry { disk, annulus, torus, sphere3 };

/// Absent order means von Neumann; an order equal to 1 is treated the same way.
using RenyiOrder = std::optional<double>;

std::string to_string(Convention c);
std::string to_string(Method m);
std::string to_string(Geometry g);
Convention parse_convention(const std::string& s);
Method parse_method(const std::string& s);
Geometry parse_geometry(const std::string& s);

/// Largest tuple count the brute-force oracle will enumerate.
inline constexpr double kBruteCap = 1e7;

/// -log D
double stopo(const AnyonModel& m);

/// von Neumann: -sum_a (d_a^2/D^2) log(d_a/D^2); Renyi: log(kappa_0 / D^(2 alpha)) / (1 - alpha).
double boundary_anyon_entropy(const AnyonModel& m, RenyiOrder alpha = std::nullopt);

/// [K_alpha]_{ee'} = sum_b N[e][b][e'] d_b^alpha with its unitary eigendecomposition.
struct TransferMatrix {
    double alpha = 1.0;
    Eigen::MatrixXd K;
    Eigen::VectorXcd kappa;    // sorted by decreasing magnitude
    Eigen::MatrixXcd vectors;  // orthonormal columns matching kappa
    double kappa0 = 0.0;       // sum_e d_e^(1+alpha)
    Eigen::VectorXd v0;        // d_e / D
    double ratio = 0.0;        // max_{mu != 0} |kappa_mu / kappa_0|
    double decay_rate = 0.0;   // -log(ratio), infinite when ratio is 0
};

/// Throws NumericalError when K is not normal or the leading eigenvalue is not isolated.
TransferMatrix transfer_matrix(const AnyonModel& m, double alpha);

/// F(n, c, K_alpha) = log([K^n]_{0c} D^2 / (d_c kappa_0^n)), evaluated through
/// the deflated power (K/kappa_0 - v0 v0^T)^n so tiny values keep full precision.
double correction_F(const AnyonModel& m, double alpha, unsigned n, ChargeId c);

/// The same quantity from the eigen-sum sum_{mu != 0} (kappa_mu/kappa_0)^n v_mu[0] v_mu[c]^*.
double correction_F_spectral(const AnyonModel& m, const TransferMatrix& t, unsigned n, ChargeId c);

/// Entropy of the doubled disk with n boundary segments and puncture charge c
/// (c = vacuum for an unpunctured disk) by the tuple enumeration only.
double brute_boundary_oracle(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder alpha = std::nullopt);

double disk_entropy(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder alpha = std::nullopt,
                    Convention conv = Convention::undoubled, Method method = Method::closed);

/// Annulus with n and mm segments on its two boundaries, charge c threading it.
double annulus_entropy(const AnyonModel& m, unsigned n, unsigned mm, ChargeId c, RenyiOrder alpha = std::nullopt,
                       Convention conv = Convention::undoubled, Method method = Method::closed);

/// Cylinder of a torus with charge line c; identical to the annulus.
double torus_entropy(const AnyonModel& m, unsigned n, unsigned mm, ChargeId c, RenyiOrder alpha = std::nullopt,
                     Convention conv = Convention::undoubled, Method method = Method::closed);

/// Sphere region with three boundary components of l, mm, n segments carrying x, y, z.
/// Throws InvalidArgument when x, y, z cannot fuse to the vacuum.
double sphere3_entropy(const AnyonModel& m, unsigned l, unsigned mm, unsigned n, ChargeId x, ChargeId y, ChargeId z,
                       RenyiOrder alpha = std::nullopt, Convention conv = Convention::undoubled,
                       Method method = Method::closed);

/// One boundary component: segment count and the marginal distribution of its charge.
struct BoundaryComponent {
    unsigned segments = 1;
    ChargeDistribution charge_dist;
};

/// Undoubled von Neumann entropy
/// sum_k [ (n_k/2) S_bnd - log D + sum_c p_c^(k) log d_c ] + interior_entropy.
/// Only per-component marginals enter; correlations between components are not represented.
double general_entropy(const AnyonModel& m, const std::vector<BoundaryComponent>& components,
                       double interior_entropy = 0.0);

struct KitaevPreskill {
    double vn_combo = 0.0;
    double renyi_combo = 0.0;
    double renyi_residual = 0.0;  // renyi_combo - stopo
};

/// 2 S_3 - (3/2) S_4 over doubled unpunctured disks.
KitaevPreskill kitaev_preskill(const AnyonModel& m, RenyiOrder alpha = std::nullopt, Method method = Method::closed);

/// One evaluated geometry with its boundary-law decomposition
/// entropy = linear_term * (total segments) + topo_term + charge_term + F.
struct TeeResult {
    std::string model;
    Geometry geometry = Geometry::disk;
    Convention convention = Convention::undoubled;
    std::vector<unsigned> segments;  // disk {n}; annulus/torus {n, m}; sphere3 {l, m, n}
    std::vector<ChargeId> charges;   // disk/annulus/torus {c}; sphere3 {x, y, z}
    std::vector<std::string> charge_labels;
    RenyiOrder alpha;
    double entropy = 0.0;
    double linear_term = 0.0;
    double topo_term = 0.0;
    double charge_term = 0.0;
    double F = 0.0;
};

TeeResult tee_evaluate(const AnyonModel& m, Geometry g, const std::vector<unsigned>& segments,
                       const std::vector<ChargeId>& charges, RenyiOrder alpha, Convention conv,
                       Method method = Method::closed);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_max = 0.0;
};

/// Least-squares line through entropy(n); every boundary of the geometry gets n segments.
FitResult fit_stopo(const AnyonModel& m, Geometry g, const std::vector<unsigned>& ns, RenyiOrder alpha = std::nullopt,
                    Convention conv = Convention::doubled, const std::vector<ChargeId>& charges = {});

/// Fixed-point string-net entropy for fusion data `e` and n boundary crossings:
/// -n sum_i (d_i^2/D) log(d_i/D) - log D with D = sum_i d_i^2.
double stringnet_entropy(const AnyonModel& e, unsigned n);

struct StringnetCheck {
    bool pass = false;
    double boundary_residual = 0.0;  // half-boundary term of E x conj(E) against the string-net term of E
    double tee_residual = 0.0;       // -log D_C against -log D_stringnet
    double disk_residual = 0.0;      // string-net entropy against the undoubled disk of E x conj(E), n = 1..8
};

StringnetCheck stringnet_check(const AnyonModel& e, double tol = kDefaultTol);

/// Vacuum-projected tensor product of a charge-c puncture with n boundary-anyon states.
SectorState boundary_pipeline_state(const AnyonModel& m, unsigned n, ChargeId c = kVacuum);

}  // namespace anyon
