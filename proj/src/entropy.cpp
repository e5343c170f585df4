#include "anyon/entropy.hpp"

#include "anyon/error.hpp"

#include <cmath>
#include <limits>

namespace anyon {
namespace {

double xlogx(double x) { return x < kEigenCutoff ? 0.0 : x * std::log(x); }

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("renyi", "alpha must be positive and finite");
}

struct Sums {
    double shannon = 0.0;  // -sum lambda log lambda
    double charge = 0.0;   // sum lambda log d_c
};

// Single pass over (charge, eigenvalues, multiplicity) triples.
template <class Fn>
void for_each_eigen(const StateSpectrum& sp, Fn&& fn) {
    for (const auto& e : sp.entries)
        for (double lam : e.eigenvalues) fn(e.charge, lam, static_cast<double>(e.multiplicity));
}

Sums vn_sums(const AnyonModel& m, const StateSpectrum& sp) {
    Sums s;
    for_each_eigen(sp, [&](ChargeId c, double lam, double mult) {
        if (lam < kEigenCutoff) return;
        s.shannon -= mult * xlogx(lam);
        s.charge += mult * lam * std::log(m.qdim(c));
    });
    return s;
}

double renyi_from_spectrum(const AnyonModel& m, const StateSpectrum& sp, double alpha) {
    double tr = 0.0;
    for_each_eigen(sp, [&](ChargeId c, double lam, double mult) {
        if (lam < kEigenCutoff) return;
        tr += mult * std::pow(m.qdim(c), 1.0 - alpha) * std::pow(lam, alpha);
    });
    return std::log(tr) / (1.0 - alpha);
}

StateSpectrum bipartite_spectrum(const BipartitePureState& psi) {
    StateSpectrum sp;
    for (const auto& b : psi.blocks()) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.psi);
        std::vector<double> lam;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            lam.push_back(svd.singularValues()(i) * svd.singularValues()(i));
        sp.entries.push_back({b.charge, std::move(lam), 1});
    }
    return sp;
}

EntropyReport report_from_spectrum(const AnyonModel& m, const StateSpectrum& sp, const std::vector<double>& alphas) {
    const Sums s = vn_sums(m, sp);
    EntropyReport r;
    r.shannon_part = s.shannon;
    r.charge_part = s.charge;
    r.von_neumann = s.shannon + s.charge;
    for (double a : alphas) {
        require_alpha(a);
        r.renyi[a] = a == 1.0 ? r.von_neumann : renyi_from_spectrum(m, sp, a);
    }
    return r;
}

}  // namespace

double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= xlogx(x);
    return h;
}

double von_neumann(const SectorState& s) {
    const Sums sums = vn_sums(s.model(), spectrum(s));
    return sums.shannon + sums.charge;
}

double renyi(const SectorState& s, double alpha) {
    require_alpha(alpha);
    if (alpha == 1.0) return von_neumann(s);
    return renyi_from_spectrum(s.model(), spectrum(s), alpha);
}

EntropyReport entropy_report(const SectorState& s, const std::vector<double>& alphas) {
    return report_from_spectrum(s.model(), spectrum(s), alphas);
}

double relative_entropy(const SectorState& rho, const SectorState& sigma) {
    if (rho.model().name() != sigma.model().name())
        throw InvalidArgument("relative_entropy", "states belong to different models");
    constexpr double inf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (auto c : rho.charges()) {
        const Eigen::MatrixXcd a = sector_matrix(rho, c);
        if (a.trace().real() < kEigenCutoff) continue;
        const Eigen::MatrixXcd b = sector_matrix(sigma, c);
        if (b.rows() == 0) return inf;
        if (b.rows() != a.rows())
            throw InvalidArgument("relative_entropy", "sector " + rho.model().label(c) + " bases are not aligned");

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(a);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(b);
        for (Eigen::Index i = 0; i < ea.eigenvalues().size(); ++i) total += xlogx(std::max(0.0, ea.eigenvalues()(i)));

        const Eigen::MatrixXcd& v = eb.eigenvectors();
        for (Eigen::Index j = 0; j < eb.eigenvalues().size(); ++j) {
            const double weight = (v.col(j).adjoint() * a * v.col(j))(0, 0).real();
            const double mu = eb.eigenvalues()(j);
            if (mu < kEigenCutoff) {
                if (weight > 1e-12) return inf;
                continue;
            }
            total -= weight * std::log(mu);
        }
    }
    return std::max(0.0, total);
}

double mutual_information(const SectorState& joint, const SectorState& rhoA, const SectorState& rhoB) {
    return von_neumann(rhoA) + von_neumann(rhoB) - von_neumann(joint);
}

double ace_entropy(const BipartitePureState& psi) {
    const auto& m = psi.model();
    double h = 0.0;
    double line = 0.0;
    for (auto c : m.charges()) {
        const double p = psi.weight(c);
        h -= xlogx(p);
        if (p > 0.0) line += 2.0 * p * std::log(m.qdim(c));
    }
    return h + line;
}

double ace_entropy_family(const AnyonModel& m, PairVariant variant, const ChargeDistribution& p) {
    require_distribution(m, p);
    double line = 0.0;
    for (auto a : m.charges()) line += 2.0 * p[a.index] * std::log(m.qdim(a));
    switch (variant) {
        case PairVariant::product: return 0.0;
        case PairVariant::correlated: return line;
        case PairVariant::pure: return shannon_entropy(p) + line;
    }
    throw InvalidArgument("ace_entropy_family", "unknown variant");
}

EntropyReport aee_bipartite(const BipartitePureState& psi, const std::vector<double>& alphas) {
    return report_from_spectrum(psi.model(), bipartite_spectrum(psi), alphas);
}

}  // namespace anyon
