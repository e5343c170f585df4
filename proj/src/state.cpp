#include "anyon/state.hpp"

#include "anyon/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anyon {
namespace {

void require_same_model(const AnyonModel& a, const AnyonModel& b, const char* op) {
    if (&a != &b && (a.name() != b.name() || a.size() != b.size()))
        throw InvalidArgument(op, "states belong to different models ('" + a.name() + "' vs '" + b.name() + "')");
}

double min_eigenvalue(const Eigen::MatrixXcd& w) {
    if (w.rows() == 1) return w(0, 0).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& w) {
    if (w.rows() == 1) return {std::max(0.0, w(0, 0).real())};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (auto& x : out) x = std::max(0.0, x);
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<std::string> kron_tags(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::string> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back("(" + x + "," + y + ")");
    return out;
}

Eigen::MatrixXcd gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = g(rng);
            out(i, j) = Complex(re, g(rng));
        }
    return out;
}

std::vector<ChargeId> random_subset(const AnyonModel& m, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<ChargeId> out;
    while (out.empty())
        for (auto c : m.charges())
            if (coin(rng)) out.push_back(c);
    return out;
}

void require_weights(const std::vector<double>& w, std::size_t n, const char* op) {
    if (w.size() != n) throw InvalidArgument(op, "one weight per state required");
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw InvalidArgument(op, "weights must be non-negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kDefaultTol) throw InvalidArgument(op, "weights must sum to 1");
}

}  // namespace

SectorState::SectorState(std::shared_ptr<const AnyonModel> model, std::vector<SectorBlock> blocks, double tol)
    : model_(std::move(model)), blocks_(std::move(blocks)) {
    if (!model_) throw InvalidArgument("state", "null model");
    for (const auto& b : blocks_) {
        if (b.charge.index >= model_->size()) throw InvalidArgument("state", "charge index out of range");
        if (b.W.rows() == 0 || b.W.rows() != b.W.cols()) throw InvalidArgument("state", "sector block must be square");
        if (b.multiplicity == 0) throw InvalidArgument("state", "block multiplicity must be positive");
        if (!b.tags.empty() && b.tags.size() != static_cast<std::size_t>(b.W.rows()))
            throw InvalidArgument("state", "one basis tag per row required");
        const double scale = std::max(1.0, b.W.cwiseAbs().maxCoeff());
        if ((b.W - b.W.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
            throw ValidationError("hermitian", "sector block of charge " + model_->label(b.charge) + " is not Hermitian");
        if (min_eigenvalue(b.W) < -tol * scale)
            throw ValidationError("psd", "sector block of charge " + model_->label(b.charge) + " has a negative eigenvalue");
    }
}

SectorState::SectorState(const AnyonModel& model, std::vector<SectorBlock> blocks, double tol)
    : SectorState(std::make_shared<const AnyonModel>(model), std::move(blocks), tol) {}

double SectorState::weight(ChargeId c) const {
    double p = 0.0;
    for (const auto& b : blocks_)
        if (b.charge == c) p += static_cast<double>(b.multiplicity) * b.W.trace().real();
    return p;
}

std::vector<ChargeId> SectorState::charges() const {
    std::vector<ChargeId> out;
    for (const auto& b : blocks_) out.push_back(b.charge);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void SectorState::check(double tol) const {
    double total = 0.0;
    for (const auto& b : blocks_) {
        const double scale = std::max(1.0, b.W.cwiseAbs().maxCoeff());
        if ((b.W - b.W.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
            throw ValidationError("hermitian", "sector block is not Hermitian");
        if (min_eigenvalue(b.W) < -tol * scale) throw ValidationError("psd", "sector block has a negative eigenvalue");
        total += static_cast<double>(b.multiplicity) * b.W.trace().real();
    }
    if (std::abs(total - 1.0) > tol) throw ValidationError("normalization", "quantum trace is " + std::to_string(total));
}

BipartitePureState::BipartitePureState(std::shared_ptr<const AnyonModel> model, std::vector<PureBlock> blocks, double tol)
    : model_(std::move(model)), blocks_(std::move(blocks)) {
    if (!model_) throw InvalidArgument("bipartite", "null model");
    double norm = 0.0;
    for (const auto& b : blocks_) {
        if (b.charge.index >= model_->size()) throw InvalidArgument("bipartite", "charge index out of range");
        if (b.psi.size() == 0) throw InvalidArgument("bipartite", "empty amplitude block");
        norm += b.psi.squaredNorm();
    }
    if (std::abs(norm - 1.0) > tol) throw ValidationError("normalization", "sum of squared amplitudes is " + std::to_string(norm));
}

BipartitePureState::BipartitePureState(const AnyonModel& model, std::vector<PureBlock> blocks, double tol)
    : BipartitePureState(std::make_shared<const AnyonModel>(model), std::move(blocks), tol) {}

double BipartitePureState::weight(ChargeId c) const {
    double p = 0.0;
    for (const auto& b : blocks_)
        if (b.charge == c) p += b.psi.squaredNorm();
    return p;
}

StateSpectrum spectrum(const SectorState& s) {
    StateSpectrum out;
    for (const auto& b : s.blocks()) out.entries.push_back({b.charge, eigenvalues(b.W), b.multiplicity});
    return out;
}

void require_distribution(const AnyonModel& m, const ChargeDistribution& p, double tol) {
    if (p.size() != m.size())
        throw InvalidArgument("distribution", "expected " + std::to_string(m.size()) + " probabilities");
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw InvalidArgument("distribution", "probabilities must be non-negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol) throw InvalidArgument("distribution", "probabilities sum to " + std::to_string(sum));
}

ChargeDistribution boundary_distribution(const AnyonModel& m) {
    ChargeDistribution p(m.size());
    for (auto c : m.charges()) p[c.index] = m.qdim(c) * m.qdim(c) / m.total_qdim_sq();
    return p;
}

SectorState single_anyon_state(const AnyonModel& m, ChargeId a) {
    if (a.index >= m.size()) throw InvalidArgument("single_anyon_state", "charge index out of range");
    return SectorState(m, {SectorBlock{a, Eigen::MatrixXcd::Identity(1, 1), 1, {m.label(a)}}});
}

SectorState boundary_anyon_state(const AnyonModel& m) {
    std::vector<SectorBlock> blocks;
    const auto p = boundary_distribution(m);
    for (auto a : m.charges()) blocks.push_back({a, Eigen::MatrixXcd::Constant(1, 1, p[a.index]), 1, {m.label(a)}});
    return SectorState(m, std::move(blocks));
}

SectorState pair_state_product(const AnyonModel& m, const ChargeDistribution& p) {
    require_distribution(m, p);
    std::vector<SectorBlock> blocks;
    for (auto a : m.charges()) {
        if (p[a.index] == 0.0) continue;
        const ChargeId abar = m.dual(a);
        const double da = m.qdim(a);
        for (auto c : m.charges())
            if (const unsigned n = m.N(a, abar, c))
                blocks.push_back({c, Eigen::MatrixXcd::Constant(1, 1, p[a.index] * m.qdim(c) / (da * da)), n,
                                  {"(" + m.label(a) + "," + m.label(abar) + ")"}});
    }
    return SectorState(m, std::move(blocks));
}

SectorState pair_state_correlated(const AnyonModel& m, const ChargeDistribution& p) {
    require_distribution(m, p);
    std::vector<double> diag;
    std::vector<std::string> tags;
    for (auto a : m.charges())
        if (p[a.index] > 0.0) {
            diag.push_back(p[a.index]);
            tags.push_back("(" + m.label(a) + "," + m.label(m.dual(a)) + ")");
        }
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) w(i, i) = diag[i];
    return SectorState(m, {SectorBlock{kVacuum, std::move(w), 1, std::move(tags)}});
}

BipartitePureState pair_state_pure(const AnyonModel& m, const ChargeDistribution& p) {
    require_distribution(m, p);
    std::vector<PureBlock> blocks;
    for (auto a : m.charges())
        if (p[a.index] > 0.0) blocks.push_back({a, Eigen::MatrixXcd::Constant(1, 1, std::sqrt(p[a.index]))});
    return BipartitePureState(m, std::move(blocks));
}

std::variant<SectorState, BipartitePureState> pair_state(const AnyonModel& m, const ChargeDistribution& p,
                                                         PairVariant variant) {
    switch (variant) {
        case PairVariant::product: return pair_state_product(m, p);
        case PairVariant::correlated: return pair_state_correlated(m, p);
        case PairVariant::pure: return pair_state_pure(m, p);
    }
    throw InvalidArgument("pair_state", "unknown variant");
}

double quantum_trace(const SectorState& s) {
    double t = 0.0;
    for (const auto& b : s.blocks()) t += static_cast<double>(b.multiplicity) * b.W.trace().real();
    return t;
}

double ordinary_trace(const SectorState& s) {
    double t = 0.0;
    for (const auto& b : s.blocks())
        t += static_cast<double>(b.multiplicity) * b.W.trace().real() / s.model().qdim(b.charge);
    return t;
}

SectorState reduce_A(const BipartitePureState& psi) {
    std::vector<SectorBlock> blocks;
    for (const auto& b : psi.blocks()) blocks.push_back({b.charge, b.psi * b.psi.adjoint(), 1, {}});
    return SectorState(psi.model_ptr(), std::move(blocks));
}

SectorState reduce_B(const BipartitePureState& psi) {
    std::vector<SectorBlock> blocks;
    for (const auto& b : psi.blocks())
        blocks.push_back({psi.model().dual(b.charge), (b.psi.adjoint() * b.psi).transpose(), 1, {}});
    return SectorState(psi.model_ptr(), std::move(blocks));
}

SectorState tensor(const SectorState& s1, const SectorState& s2) {
    require_same_model(s1.model(), s2.model(), "tensor");
    const auto& m = s1.model();
    std::vector<SectorBlock> blocks;
    for (const auto& b1 : s1.blocks())
        for (const auto& b2 : s2.blocks()) {
            const double scale = 1.0 / (m.qdim(b1.charge) * m.qdim(b2.charge));
            const Eigen::MatrixXcd w = kron(b1.W, b2.W);
            const auto tags = kron_tags(b1.tags, b2.tags);
            for (auto c : m.charges())
                if (const unsigned n = m.N(b1.charge, b2.charge, c))
                    blocks.push_back({c, w * (m.qdim(c) * scale), b1.multiplicity * b2.multiplicity * n, tags});
        }
    return SectorState(s1.model_ptr(), std::move(blocks));
}

SectorState compress(const SectorState& s) {
    std::vector<SectorBlock> out;
    for (const auto& b : s.blocks()) {
        auto same = std::find_if(out.begin(), out.end(), [&](const SectorBlock& o) {
            if (o.charge != b.charge || o.W.rows() != b.W.rows()) return false;
            const double scale = std::max(o.W.cwiseAbs().maxCoeff(), b.W.cwiseAbs().maxCoeff());
            return (o.W - b.W).cwiseAbs().maxCoeff() <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
        });
        if (same == out.end()) {
            out.push_back(b);
        } else {
            same->multiplicity += b.multiplicity;
            same->tags.clear();
        }
    }
    return SectorState(s.model_ptr(), std::move(out));
}

SectorState project_vacuum(const SectorState& s) {
    const double p0 = s.weight(kVacuum);
    if (!(p0 > 0.0)) throw NumericalError("project_vacuum", "vacuum sector has zero weight");
    std::vector<SectorBlock> blocks;
    for (const auto& b : s.blocks())
        if (b.charge == kVacuum) {
            blocks.push_back(b);
            blocks.back().W /= p0;
        }
    return SectorState(s.model_ptr(), std::move(blocks));
}

SectorState measure_decohere(const SectorState& s, const std::vector<BasisPartition>& partitions) {
    if (!partitions.empty() && partitions.size() != s.blocks().size())
        throw InvalidArgument("measure_decohere", "one partition per block required");
    std::vector<SectorBlock> blocks = s.blocks();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        auto& w = blocks[k].W;
        const auto n = static_cast<std::size_t>(w.rows());
        std::vector<std::size_t> group(n, n);
        if (partitions.empty()) {
            std::iota(group.begin(), group.end(), std::size_t{0});
        } else {
            for (std::size_t g = 0; g < partitions[k].size(); ++g)
                for (auto i : partitions[k][g]) {
                    if (i >= n) throw InvalidArgument("measure_decohere", "basis index out of range");
                    if (group[i] != n) throw InvalidArgument("measure_decohere", "partition groups overlap");
                    group[i] = g;
                }
            if (std::find(group.begin(), group.end(), n) != group.end())
                throw InvalidArgument("measure_decohere", "partition does not cover the basis");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (group[i] != group[j]) w(i, j) = 0.0;
    }
    return SectorState(s.model_ptr(), std::move(blocks));
}

SectorState mix(const std::vector<SectorState>& states, const std::vector<double>& weights) {
    if (states.empty()) throw InvalidArgument("mix", "no states");
    require_weights(weights, states.size(), "mix");
    std::vector<SectorBlock> blocks = states.front().blocks();
    for (auto& b : blocks) b.W.setZero();
    for (std::size_t i = 0; i < states.size(); ++i) {
        require_same_model(states.front().model(), states[i].model(), "mix");
        const auto& src = states[i].blocks();
        if (src.size() != blocks.size()) throw InvalidArgument("mix", "block layouts differ");
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (src[k].charge != blocks[k].charge || src[k].W.rows() != blocks[k].W.rows() ||
                src[k].multiplicity != blocks[k].multiplicity)
                throw InvalidArgument("mix", "block layouts differ");
            blocks[k].W += weights[i] * src[k].W;
        }
    }
    return SectorState(states.front().model_ptr(), std::move(blocks));
}

SectorState direct_sum(const std::vector<SectorState>& states, const std::vector<double>& weights) {
    if (states.empty()) throw InvalidArgument("direct_sum", "no states");
    require_weights(weights, states.size(), "direct_sum");
    std::vector<SectorBlock> blocks;
    for (std::size_t i = 0; i < states.size(); ++i) {
        require_same_model(states.front().model(), states[i].model(), "direct_sum");
        if (weights[i] == 0.0) continue;
        for (auto b : states[i].blocks()) {
            b.W *= weights[i];
            blocks.push_back(std::move(b));
        }
    }
    return SectorState(states.front().model_ptr(), std::move(blocks));
}

Eigen::MatrixXcd sector_matrix(const SectorState& s, ChargeId c) {
    Eigen::Index dim = 0;
    for (const auto& b : s.blocks())
        if (b.charge == c) dim += b.W.rows() * static_cast<Eigen::Index>(b.multiplicity);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::Index at = 0;
    for (const auto& b : s.blocks())
        if (b.charge == c)
            for (std::uint64_t k = 0; k < b.multiplicity; ++k) {
                out.block(at, at, b.W.rows(), b.W.rows()) = b.W;
                at += b.W.rows();
            }
    return out;
}

SectorLayout random_layout(const AnyonModel& m, std::mt19937_64& rng, std::size_t max_dim) {
    std::uniform_int_distribution<std::size_t> dim(1, std::max<std::size_t>(1, max_dim));
    SectorLayout out;
    for (auto c : random_subset(m, rng)) out.emplace_back(c, dim(rng));
    return out;
}

SectorState random_state(const AnyonModel& m, const SectorLayout& layout, std::mt19937_64& rng, std::size_t rank) {
    std::vector<SectorBlock> blocks;
    double total = 0.0;
    for (const auto& [c, d] : layout) {
        const std::size_t cols = rank > 0 ? std::min(rank, d) : d;
        const Eigen::MatrixXcd g = gaussian(d, cols, rng);
        Eigen::MatrixXcd w = g * g.adjoint();
        w = 0.5 * (w + w.adjoint()).eval();
        total += w.trace().real();
        blocks.push_back({c, std::move(w), 1, {}});
    }
    for (auto& b : blocks) b.W /= total;
    return SectorState(m, std::move(blocks));
}

SectorState random_state(const AnyonModel& m, std::mt19937_64& rng) {
    return random_state(m, random_layout(m, rng), rng);
}

BipartitePureState random_bipartite(const AnyonModel& m, std::mt19937_64& rng, std::size_t max_dim) {
    std::uniform_int_distribution<std::size_t> dim(1, std::max<std::size_t>(1, max_dim));
    std::vector<PureBlock> blocks;
    double norm = 0.0;
    for (auto c : random_subset(m, rng)) {
        const std::size_t da = dim(rng);
        blocks.push_back({c, gaussian(da, dim(rng), rng)});
        norm += blocks.back().psi.squaredNorm();
    }
    for (auto& b : blocks) b.psi /= std::sqrt(norm);
    return BipartitePureState(m, std::move(blocks));
}

}  // namespace anyon
