#pragma once

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anyon {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Handle into an AnyonModel's charge table. Index 0 is always the vacuum.
struct ChargeId {
    std::size_t index = 0;

    friend constexpr auto operator<=>(ChargeId, ChargeId) = default;
};

inline constexpr ChargeId kVacuum{0};

/// A phase exp(2 pi i * num/den) stored as a reduced fraction of a full turn in [0, 1).
struct Turn {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Turn make(std::int64_t num, std::int64_t den);
    static Turn parse(const std::string& text);  // "2/5", "0", "-1/16"

    Turn operator+(Turn other) const;
    Turn operator-() const;
    Complex value() const;
    std::string str() const;

    friend bool operator==(const Turn&, const Turn&) = default;
};

/// Quantum dimension with an optional closed-form tag ("phi", "sqrt2", "1+sqrt2",
/// products joined by '*'). The numeric value is always evaluated from the tag when
/// one is present so a file round-trip is lossless.
struct QDim {
    double value = 1.0;
    std::string tag;  // empty when the value is a plain number

    static QDim from_tag(const std::string& tag);
    static QDim number(double v) { return QDim{v, {}}; }

    friend bool operator==(const QDim&, const QDim&) = default;
};

QDim operator*(const QDim& a, const QDim& b);

/// Fusion multiplicity entry N[a][b][c] = mult (zero entries omitted).
struct FusionEntry {
    std::size_t a, b, c;
    unsigned mult;
};

/// Complete charge/fusion/dimension/twist data of one braided anyon theory.
/// Immutable once built.
class AnyonModel {
public:
    AnyonModel(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual,
               const std::vector<FusionEntry>& fusion, std::vector<QDim> qdim, std::vector<Turn> twist,
               std::optional<Eigen::MatrixXcd> smatrix, bool modular);

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }

    const std::string& label(ChargeId c) const { return labels_.at(c.index); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<ChargeId> find(const std::string& label) const;
    /// Throws InvalidArgument for an unknown label.
    ChargeId charge(const std::string& label) const;
    std::vector<ChargeId> charges() const;

    ChargeId dual(ChargeId c) const { return ChargeId{dual_.at(c.index)}; }
    unsigned N(ChargeId a, ChargeId b, ChargeId c) const {
        return fusion_[(a.index * size() + b.index) * size() + c.index];
    }
    std::vector<FusionEntry> fusion_entries() const;
    /// [N_a]_{bc} = N[a][b][c]
    Eigen::MatrixXd fusion_matrix(ChargeId a) const;

    double qdim(ChargeId c) const { return qdim_.at(c.index).value; }
    const QDim& qdim_data(ChargeId c) const { return qdim_.at(c.index); }
    Complex twist(ChargeId c) const { return twist_.at(c.index).value(); }
    const Turn& twist_turn(ChargeId c) const { return twist_.at(c.index); }

    const std::optional<Eigen::MatrixXcd>& smatrix() const { return smatrix_; }
    bool modular() const { return modular_; }

    double total_qdim() const { return total_qdim_; }
    double total_qdim_sq() const { return total_qdim_sq_; }

    bool is_abelian(ChargeId c) const;

    AnyonModel renamed(std::string name) const;
    AnyonModel with_smatrix(Eigen::MatrixXcd s) const;
    AnyonModel with_fusion(const std::vector<FusionEntry>& fusion) const;

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> dual_;
    std::vector<unsigned> fusion_;
    std::vector<QDim> qdim_;
    std::vector<Turn> twist_;
    std::optional<Eigen::MatrixXcd> smatrix_;
    bool modular_;
    double total_qdim_;
    double total_qdim_sq_;
};

struct ValidationCheck {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    std::string note;
};

struct ModelValidationReport {
    std::vector<ValidationCheck> checks;
    bool modular = false;

    bool ok() const;
    const ValidationCheck& check(const std::string& name) const;
    /// First failing check, if any.
    const ValidationCheck* first_failure() const;
};

/// Runs every model axiom. Never throws on bad data; failures land in the report.
ModelValidationReport validate(const AnyonModel& m, double tol = kDefaultTol);

/// Throws ValidationError naming the first failing axiom.
void require_valid(const AnyonModel& m, double tol = kDefaultTol);

/// Componentwise product: charges are pairs (a1, a2) at index a1 * |m2| + a2.
AnyonModel product(const AnyonModel& m1, const AnyonModel& m2);

/// Time-reversal conjugate: twists and S-matrix conjugated, fusion unchanged.
AnyonModel conjugate(const AnyonModel& m);

/// S_ab = D^-1 sum_c N[dual a][b][c] d_c theta_c / (theta_a theta_b).
Eigen::MatrixXcd smatrix_from_twists(const AnyonModel& m);

/// N^c_{ab} reconstructed from an S-matrix by the Verlinde formula (complex entries).
std::vector<Complex> verlinde_fusion(const Eigen::MatrixXcd& s);

/// Dimension of the fusion space of `charges` with overall charge `total`,
/// evaluated as a product of fusion matrices.
std::uint64_t fusion_space_dim(const AnyonModel& m, std::span<const ChargeId> charges, ChargeId total);

/// Ground-state dimension on a genus-g surface with punctures `charges`,
/// sum_x (d_x/D)^(2-n-2g) prod_i S_{a_i x}. Requires a modular model with an S-matrix.
double genus_dim(const AnyonModel& m, unsigned g, std::span<const ChargeId> charges);

}  // namespace anyon
