#include "anyon/tee.hpp"

#include "anyon/entropy.hpp"
#include "anyon/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace anyon {
namespace {

RenyiOrder normalized(RenyiOrder a) {
    if (!a) return a;
    if (!(*a > 0.0) || !std::isfinite(*a)) throw InvalidArgument("alpha", "Renyi order must be positive and finite");
    if (*a == 1.0) return std::nullopt;
    return a;
}

void require_charge(const AnyonModel& m, ChargeId c) {
    if (c.index >= m.size()) throw InvalidArgument("charge", "charge index out of range");
}

void require_segments(unsigned n) {
    if (n < 1) throw InvalidArgument("segments", "every boundary needs at least one segment");
}

double log_d(const AnyonModel& m, ChargeId c) { return std::log(m.qdim(c)); }

Eigen::MatrixXd build_K(const AnyonModel& m, double alpha) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (auto e : m.charges())
        for (auto b : m.charges()) {
            const double w = std::pow(m.qdim(b), alpha);
            for (auto f : m.charges())
                if (const unsigned mult = m.N(e, b, f)) k(e.index, f.index) += mult * w;
        }
    return k;
}

double kappa0_of(const AnyonModel& m, double alpha) {
    double k = 0.0;
    for (auto e : m.charges()) k += std::pow(m.qdim(e), 1.0 + alpha);
    return k;
}

Eigen::VectorXd v0_of(const AnyonModel& m) {
    Eigen::VectorXd v(m.size());
    for (auto e : m.charges()) v(e.index) = m.qdim(e) / m.total_qdim();
    return v;
}

// log [K^n]_{0c}, rescaling after every step.
double log_power_entry(const Eigen::MatrixXd& k, unsigned n, ChargeId c) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(k.rows());
    r(0) = 1.0;
    double log_scale = 0.0;
    for (unsigned i = 0; i < n; ++i) {
        r = r * k;
        const double s = r.cwiseAbs().maxCoeff();
        r /= s;
        log_scale += std::log(s);
    }
    if (!(r(c.index) > 0.0)) throw NumericalError("transfer", "charge unreachable from the vacuum");
    return std::log(r(c.index)) + log_scale;
}

double boundary_vn(const AnyonModel& m) {
    const double d2 = m.total_qdim_sq();
    double s = 0.0;
    for (auto a : m.charges()) {
        const double d = m.qdim(a);
        s -= d * d / d2 * std::log(d / d2);
    }
    return s;
}

double boundary_renyi(const AnyonModel& m, double alpha) {
    return (std::log(kappa0_of(m, alpha)) - alpha * std::log(m.total_qdim_sq())) / (1.0 - alpha);
}

double boundary_entropy(const AnyonModel& m, RenyiOrder a) { return a ? boundary_renyi(m, *a) : boundary_vn(m); }

// Visits every boundary-charge tuple of length n with d_b (product of
// dimensions) and the fusion multiplicity vector N^{x}_{b_1..b_n} over x.
template <class Leaf>
void enumerate_tuples(const AnyonModel& m, unsigned n, Leaf&& leaf) {
    if (std::pow(static_cast<double>(m.size()), n) > kBruteCap)
        throw NumericalError("brute_cap", "tuple enumeration exceeds " + std::to_string(static_cast<long>(kBruteCap)));
    const std::size_t k = m.size();
    std::vector<std::vector<std::uint64_t>> mult(n + 1, std::vector<std::uint64_t>(k, 0));
    std::vector<double> dprod(n + 1, 1.0);
    mult[0][0] = 1;
    std::vector<std::size_t> b(n, 0);
    // iterative depth-first walk
    std::size_t depth = 0;
    std::vector<std::size_t> next(n + 1, 0);
    while (true) {
        if (depth == n) {
            leaf(dprod[n], mult[n]);
            --depth;
            continue;
        }
        if (next[depth] == k) {
            next[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        const ChargeId bi{next[depth]++};
        auto& out = mult[depth + 1];
        std::fill(out.begin(), out.end(), 0);
        bool any = false;
        for (std::size_t e = 0; e < k; ++e) {
            if (!mult[depth][e]) continue;
            for (std::size_t f = 0; f < k; ++f)
                if (const unsigned nn = m.N(ChargeId{e}, bi, ChargeId{f})) {
                    out[f] += mult[depth][e] * nn;
                    any = true;
                }
        }
        if (!any) continue;
        dprod[depth + 1] = dprod[depth] * m.qdim(bi);
        ++depth;
    }
}

double brute_doubled_disk(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder a) {
    const ChargeId target = m.dual(c);
    const double norm = m.qdim(c) * std::pow(m.total_qdim_sq(), static_cast<double>(n) - 1.0);
    double acc = 0.0;
    enumerate_tuples(m, n, [&](double d, const std::vector<std::uint64_t>& mult) {
        const auto k = mult[target.index];
        if (!k) return;
        const double p = d / norm;
        acc += a ? k * std::pow(p, *a) : -static_cast<double>(k) * p * std::log(p);
    });
    return a ? std::log(acc) / (1.0 - *a) : acc;
}

// Exact von Neumann sum through one insertion of
// [L]_{ee'} = sum_b N[e][b][e'] d_b log d_b between powers of K_1.
double transfer_doubled_disk_vn(const AnyonModel& m, unsigned n, ChargeId c) {
    const double d2 = m.total_qdim_sq();
    const Eigen::MatrixXd k = build_K(m, 1.0) / d2;
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k.rows(), k.cols());
    for (auto e : m.charges())
        for (auto b : m.charges())
            for (auto f : m.charges())
                if (const unsigned mult = m.N(e, b, f)) l(e.index, f.index) += mult * m.qdim(b) * log_d(m, b);
    l /= d2;

    const ChargeId target = m.dual(c);
    std::vector<Eigen::RowVectorXd> fwd(n + 1);
    std::vector<Eigen::VectorXd> bwd(n + 1);
    fwd[0] = Eigen::RowVectorXd::Unit(k.rows(), 0);
    bwd[0] = Eigen::VectorXd::Unit(k.rows(), target.index);
    for (unsigned i = 1; i <= n; ++i) {
        fwd[i] = fwd[i - 1] * k;
        bwd[i] = k * bwd[i - 1];
    }
    double t = 0.0;
    for (unsigned i = 1; i <= n; ++i) t += fwd[i - 1] * l * bwd[n - i];
    const double total = fwd[n](target.index) * d2 / m.qdim(c);  // sum of probabilities
    const double log_norm = log_d(m, c) + (static_cast<double>(n) - 1.0) * std::log(d2);
    return log_norm * total - t * d2 / m.qdim(c);
}

double doubled_disk(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder a, Method method) {
    require_segments(n);
    require_charge(m, c);
    switch (method) {
        case Method::brute: return brute_doubled_disk(m, n, c, a);
        case Method::transfer: {
            if (!a) return transfer_doubled_disk_vn(m, n, c);
            const double log_norm = log_d(m, c) + (static_cast<double>(n) - 1.0) * std::log(m.total_qdim_sq());
            return (log_power_entry(build_K(m, *a), n, m.dual(c)) - *a * log_norm) / (1.0 - *a);
        }
        case Method::closed: {
            double s = n * boundary_entropy(m, a) + 2.0 * stopo(m) + log_d(m, c);
            if (a) s += correction_F(m, *a, n, m.dual(c)) / (1.0 - *a);
            return s;
        }
    }
    throw InvalidArgument("method", "unknown method");
}

// Halves everything except the puncture-charge terms.
double undouble(double doubled, double charge_terms) { return 0.5 * (doubled - charge_terms) + charge_terms; }

double doubled_annulus(const AnyonModel& m, unsigned n, unsigned mm, ChargeId c, RenyiOrder a, Method method) {
    // the double sum over (a-tuple, b-tuple) factorizes into two disk sums
    return doubled_disk(m, n, m.dual(c), a, method) + doubled_disk(m, mm, c, a, method);
}

void require_admissible(const AnyonModel& m, ChargeId x, ChargeId y, ChargeId z) {
    require_charge(m, x);
    require_charge(m, y);
    require_charge(m, z);
    const ChargeId t[3] = {x, y, z};
    if (fusion_space_dim(m, t, kVacuum) == 0)
        throw InvalidArgument("sphere3", "charges " + m.label(x) + ", " + m.label(y) + ", " + m.label(z) +
                                             " cannot fuse to the vacuum");
}

}  // namespace

std::string to_string(Convention c) { return c == Convention::doubled ? "doubled" : "undoubled"; }

std::string to_string(Method m) {
    switch (m) {
        case Method::closed: return "closed";
        case Method::transfer: return "transfer";
        case Method::brute: return "brute";
    }
    return "?";
}

std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::disk: return "disk";
        case Geometry::annulus: return "annulus";
        case Geometry::torus: return "torus";
        case Geometry::sphere3: return "sphere3";
    }
    return "?";
}

Convention parse_convention(const std::string& s) {
    if (s == "doubled") return Convention::doubled;
    if (s == "undoubled") return Convention::undoubled;
    throw InvalidArgument("convention", "unknown convention '" + s + "'");
}

Method parse_method(const std::string& s) {
    if (s == "closed") return Method::closed;
    if (s == "transfer") return Method::transfer;
    if (s == "brute") return Method::brute;
    throw InvalidArgument("method", "unknown method '" + s + "'");
}

Geometry parse_geometry(const std::string& s) {
    if (s == "disk") return Geometry::disk;
    if (s == "annulus") return Geometry::annulus;
    if (s == "torus") return Geometry::torus;
    if (s == "sphere3") return Geometry::sphere3;
    throw InvalidArgument("geometry", "unknown geometry '" + s + "'");
}

double stopo(const AnyonModel& m) { return 0.0 - 0.5 * std::log(m.total_qdim_sq()); }

double boundary_anyon_entropy(const AnyonModel& m, RenyiOrder alpha) {
    return boundary_entropy(m, normalized(alpha));
}

TransferMatrix transfer_matrix(const AnyonModel& m, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha", "Renyi order must be positive and finite");
    TransferMatrix t;
    t.alpha = alpha;
    t.K = build_K(m, alpha);
    t.kappa0 = kappa0_of(m, alpha);
    t.v0 = v0_of(m);

    const double scale = t.K.cwiseAbs().maxCoeff();
    if ((t.K * t.K.transpose() - t.K.transpose() * t.K).cwiseAbs().maxCoeff() > 1e-9 * scale * scale)
        throw NumericalError("normality", "transfer matrix is not normal");

    Eigen::VectorXcd vals;
    Eigen::MatrixXcd vecs;
    if ((t.K - t.K.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.K);
        vals = es.eigenvalues().cast<Complex>();
        vecs = es.eigenvectors().cast<Complex>();
    } else {
        // a normal matrix has diagonal Schur form, so U holds orthonormal eigenvectors
        Eigen::ComplexSchur<Eigen::MatrixXcd> cs(t.K.cast<Complex>());
        vals = cs.matrixT().diagonal();
        vecs = cs.matrixU();
    }
    std::vector<Eigen::Index> order(vals.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return std::abs(vals(i)) > std::abs(vals(j)); });
    t.kappa.resize(vals.size());
    t.vectors.resize(vecs.rows(), vecs.cols());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        t.kappa(i) = vals(order[i]);
        t.vectors.col(i) = vecs.col(order[i]);
    }
    // fix the phase of the Perron vector so its components are positive
    const Complex ph = t.vectors(0, 0) / std::abs(t.vectors(0, 0));
    t.vectors.col(0) /= ph;

    t.ratio = vals.size() > 1 ? std::abs(t.kappa(1)) / std::abs(t.kappa(0)) : 0.0;
    if (!(t.ratio < 1.0 - 1e-12))
        throw NumericalError("spectral_gap", "leading transfer eigenvalue is not isolated");
    t.decay_rate = t.ratio > 0.0 ? -std::log(t.ratio) : std::numeric_limits<double>::infinity();
    return t;
}

double correction_F(const AnyonModel& m, double alpha, unsigned n, ChargeId c) {
    require_segments(n);
    require_charge(m, c);
    const double k0 = kappa0_of(m, alpha);
    const Eigen::VectorXd v0 = v0_of(m);
    const Eigen::MatrixXd deflated = build_K(m, alpha) / k0 - v0 * v0.transpose();
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Unit(deflated.rows(), 0);
    for (unsigned i = 0; i < n; ++i) r = r * deflated;
    const double x = m.total_qdim_sq() / m.qdim(c) * r(c.index);
    if (!(x > -1.0)) throw NumericalError("correction_F", "charge unreachable from the vacuum");
    return std::log1p(x);
}

double correction_F_spectral(const AnyonModel& m, const TransferMatrix& t, unsigned n, ChargeId c) {
    require_segments(n);
    require_charge(m, c);
    Complex sum = 0.0;
    for (Eigen::Index mu = 1; mu < t.kappa.size(); ++mu)
        sum += std::pow(t.kappa(mu) / t.kappa0, static_cast<double>(n)) * t.vectors(0, mu) *
               std::conj(t.vectors(c.index, mu));
    if (std::abs(sum.imag()) > 1e-9 * std::max(1.0, std::abs(sum.real())))
        throw NumericalError("correction_F", "eigen-sum is not real");
    return std::log1p(m.total_qdim_sq() / m.qdim(c) * sum.real());
}

double brute_boundary_oracle(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder alpha) {
    require_segments(n);
    require_charge(m, c);
    return brute_doubled_disk(m, n, c, normalized(alpha));
}

double disk_entropy(const AnyonModel& m, unsigned n, ChargeId c, RenyiOrder alpha, Convention conv, Method method) {
    const double d = doubled_disk(m, n, c, normalized(alpha), method);
    return conv == Convention::doubled ? d : undouble(d, log_d(m, c));
}

double annulus_entropy(const AnyonModel& m, unsigned n, unsigned mm, ChargeId c, RenyiOrder alpha, Convention conv,
                       Method method) {
    const double d = doubled_annulus(m, n, mm, c, normalized(alpha), method);
    return conv == Convention::doubled ? d : undouble(d, 2.0 * log_d(m, c));
}

double torus_entropy(const AnyonModel& m, unsigned n, unsigned mm, ChargeId c, RenyiOrder alpha, Convention conv,
                     Method method) {
    return annulus_entropy(m, n, mm, c, alpha, conv, method);
}

double sphere3_entropy(const AnyonModel& m, unsigned l, unsigned mm, unsigned n, ChargeId x, ChargeId y, ChargeId z,
                       RenyiOrder alpha, Convention conv, Method method) {
    require_admissible(m, x, y, z);
    return disk_entropy(m, l, x, alpha, conv, method) + disk_entropy(m, mm, y, alpha, conv, method) +
           disk_entropy(m, n, z, alpha, conv, method);
}

double general_entropy(const AnyonModel& m, const std::vector<BoundaryComponent>& components, double interior_entropy) {
    if (components.empty()) throw InvalidArgument("general", "at least one boundary component required");
    const double s_bnd = boundary_vn(m);
    double s = interior_entropy;
    for (const auto& k : components) {
        require_segments(k.segments);
        require_distribution(m, k.charge_dist);
        s += 0.5 * k.segments * s_bnd + stopo(m);
        for (auto c : m.charges()) s += k.charge_dist[c.index] * log_d(m, c);
    }
    return s;
}

KitaevPreskill kitaev_preskill(const AnyonModel& m, RenyiOrder alpha, Method method) {
    const auto combo = [&](RenyiOrder a) {
        return 2.0 * disk_entropy(m, 3, kVacuum, a, Convention::doubled, method) -
               1.5 * disk_entropy(m, 4, kVacuum, a, Convention::doubled, method);
    };
    KitaevPreskill kp;
    kp.vn_combo = combo(std::nullopt);
    kp.renyi_combo = combo(normalized(alpha));
    kp.renyi_residual = kp.renyi_combo - stopo(m);
    return kp;
}

TeeResult tee_evaluate(const AnyonModel& m, Geometry g, const std::vector<unsigned>& segments,
                       const std::vector<ChargeId>& charges, RenyiOrder alpha, Convention conv, Method method) {
    alpha = normalized(alpha);
    const std::size_t boundaries = g == Geometry::disk ? 1 : g == Geometry::sphere3 ? 3 : 2;
    const std::size_t charge_count = g == Geometry::sphere3 ? 3 : 1;
    if (segments.size() != boundaries)
        throw InvalidArgument("segments", to_string(g) + " needs " + std::to_string(boundaries) + " segment counts");
    if (charges.size() != charge_count)
        throw InvalidArgument("charges", to_string(g) + " needs " + std::to_string(charge_count) + " charges");

    TeeResult r;
    r.model = m.name();
    r.geometry = g;
    r.convention = conv;
    r.segments = segments;
    r.charges = charges;
    r.alpha = alpha;
    switch (g) {
        case Geometry::disk:
            r.entropy = disk_entropy(m, segments[0], charges[0], alpha, conv, method);
            r.charge_term = log_d(m, charges[0]);
            break;
        case Geometry::annulus:
        case Geometry::torus:
            r.entropy = annulus_entropy(m, segments[0], segments[1], charges[0], alpha, conv, method);
            r.charge_term = 2.0 * log_d(m, charges[0]);
            break;
        case Geometry::sphere3:
            r.entropy = sphere3_entropy(m, segments[0], segments[1], segments[2], charges[0], charges[1], charges[2],
                                        alpha, conv, method);
            r.charge_term = log_d(m, charges[0]) + log_d(m, charges[1]) + log_d(m, charges[2]);
            break;
    }
    for (auto c : charges) r.charge_labels.push_back(m.label(c));
    const double factor = conv == Convention::doubled ? 1.0 : 0.5;
    r.linear_term = factor * boundary_entropy(m, alpha);
    r.topo_term = 2.0 * factor * static_cast<double>(boundaries) * stopo(m);
    const double total = std::accumulate(segments.begin(), segments.end(), 0.0);
    r.F = r.entropy - r.linear_term * total - r.topo_term - r.charge_term;
    return r;
}

FitResult fit_stopo(const AnyonModel& m, Geometry g, const std::vector<unsigned>& ns, RenyiOrder alpha,
                    Convention conv, const std::vector<ChargeId>& charges) {
    std::vector<unsigned> distinct = ns;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (ns.size() < 3 || distinct.size() < 2) throw InvalidArgument("fit", "degenerate n range: need at least 3 values");

    const std::size_t boundaries = g == Geometry::disk ? 1 : g == Geometry::sphere3 ? 3 : 2;
    std::vector<ChargeId> cs = charges;
    if (cs.empty()) cs.assign(g == Geometry::sphere3 ? 3 : 1, kVacuum);

    std::vector<double> x, y;
    for (unsigned n : ns) {
        x.push_back(n);
        y.push_back(tee_evaluate(m, g, std::vector<unsigned>(boundaries, n), cs, alpha, conv).entropy);
    }
    const double k = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        f.residual_max = std::max(f.residual_max, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
    return f;
}

double stringnet_entropy(const AnyonModel& e, unsigned n) {
    require_segments(n);
    const double big_d = e.total_qdim_sq();
    double per = 0.0;
    for (auto i : e.charges()) {
        const double d = e.qdim(i);
        per -= d * d / big_d * std::log(d / big_d);
    }
    return n * per - std::log(big_d);
}

StringnetCheck stringnet_check(const AnyonModel& e, double tol) {
    const AnyonModel c = product(e, conjugate(e));
    const double dc2 = c.total_qdim_sq();
    const double dsn = e.total_qdim_sq();
    double lhs = 0.0;
    for (auto a : c.charges()) {
        const double d = c.qdim(a);
        lhs += 0.5 * d * d / dc2 * std::log(d / dc2);
    }
    double rhs = 0.0;
    for (auto i : e.charges()) {
        const double d = e.qdim(i);
        rhs += d * d / dsn * std::log(d / dsn);
    }
    StringnetCheck r;
    r.boundary_residual = std::abs(lhs - rhs);
    r.tee_residual = std::abs(stopo(c) + std::log(dsn));
    for (unsigned n = 1; n <= 8; ++n)
        r.disk_residual = std::max(r.disk_residual, std::abs(stringnet_entropy(e, n) -
                                                             disk_entropy(c, n, kVacuum, std::nullopt,
                                                                          Convention::undoubled, Method::closed)));
    r.pass = r.boundary_residual <= tol && r.tee_residual <= tol && r.disk_residual <= tol;
    return r;
}

SectorState boundary_pipeline_state(const AnyonModel& m, unsigned n, ChargeId c) {
    require_segments(n);
    require_charge(m, c);
    const auto bnd = boundary_anyon_state(m);
    SectorState s = single_anyon_state(m, c);
    for (unsigned i = 0; i < n; ++i) s = compress(tensor(s, bnd));
    return project_vacuum(s);
}

}  // namespace anyon
