#include "anyon/model.hpp"

#include "anyon/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace anyon {

// ---------------------------------------------------------------------------
// Turn

Turn Turn::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("twist", "zero denominator in turn fraction");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    return Turn{num, den};
}

Turn Turn::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return make(n, 1);
        }
        const std::string ns = text.substr(0, slash);
        const std::string ds = text.substr(slash + 1);
        const std::int64_t n = std::stoll(ns, &used);
        if (used != ns.size()) throw std::invalid_argument(text);
        const std::int64_t d = std::stoll(ds, &used);
        if (used != ds.size()) throw std::invalid_argument(text);
        return make(n, d);
    } catch (const std::logic_error&) {
        throw InvalidArgument("twist", "malformed turn fraction '" + text + "'");
    }
}

Turn Turn::operator+(Turn other) const {
    const std::int64_t g = std::gcd(den, other.den);
    const std::int64_t l = den / g * other.den;
    return make(num * (l / den) + other.num * (l / other.den), l);
}

Turn Turn::operator-() const { return make(-num, den); }

Complex Turn::value() const {
    if (num == 0) return {1.0, 0.0};
    // Exact values on the axes keep unit phases free of rounding.
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 1 ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return std::polar(1.0, angle);
}

std::string Turn::str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// QDim

namespace {

double eval_factor(const std::string& f) {
    if (f == "1") return 1.0;
    if (f == "phi") return 0.5 * (1.0 + std::sqrt(5.0));
    if (f == "sqrt2") return std::sqrt(2.0);
    if (f == "1+sqrt2") return 1.0 + std::sqrt(2.0);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(f, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != f.size()) throw InvalidArgument("qdim", "unknown closed-form tag '" + f + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

QDim QDim::from_tag(const std::string& tag) {
    if (tag.empty()) throw InvalidArgument("qdim", "empty closed-form tag");
    double v = 1.0;
    for (const auto& f : split(tag, '*')) v *= eval_factor(f);
    return QDim{v, tag};
}

QDim operator*(const QDim& a, const QDim& b) {
    if (a.tag.empty() || b.tag.empty()) return QDim::number(a.value * b.value);
    if (a.tag == "1") return b;
    if (b.tag == "1") return a;
    return QDim::from_tag(a.tag + "*" + b.tag);
}

// ---------------------------------------------------------------------------
// AnyonModel

AnyonModel::AnyonModel(std::string name, std::vector<std::string> labels, std::vector<std::size_t> dual,
                       const std::vector<FusionEntry>& fusion, std::vector<QDim> qdim, std::vector<Turn> twist,
                       std::optional<Eigen::MatrixXcd> smatrix, bool modular)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      dual_(std::move(dual)),
      qdim_(std::move(qdim)),
      twist_(std::move(twist)),
      smatrix_(std::move(smatrix)),
      modular_(modular) {
    const std::size_t n = labels_.size();
    if (n == 0) throw InvalidArgument("model", "model needs at least the vacuum charge");
    if (dual_.size() != n || qdim_.size() != n || twist_.size() != n)
        throw InvalidArgument("model", "charge table sizes disagree");
    for (std::size_t i = 0; i < n; ++i) {
        if (dual_[i] >= n) throw InvalidArgument("model", "dual index out of range");
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels_[i] == labels_[j]) throw InvalidArgument("model", "duplicate label '" + labels_[i] + "'");
    }
    if (smatrix_ && (smatrix_->rows() != static_cast<Eigen::Index>(n) || smatrix_->cols() != static_cast<Eigen::Index>(n)))
        throw InvalidArgument("model", "S-matrix shape does not match charge count");
    fusion_.assign(n * n * n, 0U);
    for (const auto& e : fusion) {
        if (e.a >= n || e.b >= n || e.c >= n) throw InvalidArgument("model", "fusion entry index out of range");
        fusion_[(e.a * n + e.b) * n + e.c] = e.mult;
    }
    double d2 = 0.0;
    for (const auto& q : qdim_) d2 += q.value * q.value;
    total_qdim_sq_ = d2;
    total_qdim_ = std::sqrt(d2);
}

std::optional<ChargeId> AnyonModel::find(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return ChargeId{static_cast<std::size_t>(it - labels_.begin())};
}

ChargeId AnyonModel::charge(const std::string& label) const {
    if (auto c = find(label)) return *c;
    throw InvalidArgument("charge", "model " + name_ + " has no charge '" + label + "'");
}

std::vector<ChargeId> AnyonModel::charges() const {
    std::vector<ChargeId> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = ChargeId{i};
    return out;
}

std::vector<FusionEntry> AnyonModel::fusion_entries() const {
    std::vector<FusionEntry> out;
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (const unsigned m = fusion_[(a * n + b) * n + c]; m != 0) out.push_back({a, b, c, m});
    return out;
}

Eigen::MatrixXd AnyonModel::fusion_matrix(ChargeId a) const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index c = 0; c < n; ++c)
            m(b, c) = N(a, ChargeId{static_cast<std::size_t>(b)}, ChargeId{static_cast<std::size_t>(c)});
    return m;
}

bool AnyonModel::is_abelian(ChargeId c) const { return std::abs(qdim(c) - 1.0) < 1e-12; }

AnyonModel AnyonModel::renamed(std::string name) const {
    AnyonModel copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

AnyonModel AnyonModel::with_smatrix(Eigen::MatrixXcd s) const {
    AnyonModel copy = *this;
    if (s.rows() != static_cast<Eigen::Index>(size()) || s.cols() != static_cast<Eigen::Index>(size()))
        throw InvalidArgument("model", "S-matrix shape does not match charge count");
    copy.smatrix_ = std::move(s);
    return copy;
}

AnyonModel AnyonModel::with_fusion(const std::vector<FusionEntry>& fusion) const {
    return AnyonModel(name_, labels_, dual_, fusion, qdim_, twist_, smatrix_, modular_);
}

// ---------------------------------------------------------------------------
// Validation

bool ModelValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const ValidationCheck& ModelValidationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw InvalidArgument("report", "no check named '" + name + "'");
}

const ValidationCheck* ModelValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

namespace {

double unitarity_residual(const Eigen::MatrixXcd& s) {
    const auto n = s.rows();
    return (s * s.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

ModelValidationReport validate(const AnyonModel& m, double tol) {
    ModelValidationReport rep;
    const std::size_t n = m.size();
    const auto cs = m.charges();
    auto add = [&](std::string name, double residual, std::string note = {}) {
        rep.checks.push_back({std::move(name), residual <= tol, residual, std::move(note)});
    };
    auto kd = [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; };

    double r = 0.0;
    for (auto a : cs)
        for (auto c : cs) {
            r = std::max(r, std::abs(m.N(a, kVacuum, c) - kd(a.index, c.index)));
            r = std::max(r, std::abs(m.N(kVacuum, a, c) - kd(a.index, c.index)));
        }
    add("vacuum_unit", r);

    r = 0.0;
    for (auto a : cs) {
        r = std::max(r, static_cast<double>(m.dual(m.dual(a)) != a));
        for (auto b : cs) r = std::max(r, std::abs(m.N(a, b, kVacuum) - kd(b.index, m.dual(a).index)));
    }
    add("duality", r);

    r = 0.0;
    for (auto a : cs)
        for (auto b : cs)
            for (auto c : cs) r = std::max(r, std::abs(double(m.N(a, b, c)) - double(m.N(b, a, c))));
    add("commutativity", r);

    r = 0.0;
    for (auto a : cs)
        for (auto b : cs)
            for (auto c : cs)
                for (auto d : cs) {
                    double lhs = 0.0;
                    double rhs = 0.0;
                    for (auto e : cs) {
                        lhs += double(m.N(a, b, e)) * m.N(e, c, d);
                        rhs += double(m.N(b, c, e)) * m.N(a, e, d);
                    }
                    r = std::max(r, std::abs(lhs - rhs));
                }
    add("associativity", r);

    r = 0.0;
    for (auto a : cs)
        for (auto b : cs) {
            double sum = 0.0;
            for (auto c : cs) sum += m.N(a, b, c) * m.qdim(c);
            r = std::max(r, std::abs(m.qdim(a) * m.qdim(b) - sum));
        }
    add("dimension_identity", r);

    r = std::abs(m.qdim(kVacuum) - 1.0);
    for (auto a : cs) {
        r = std::max(r, std::max(0.0, 1.0 - m.qdim(a)));
        r = std::max(r, std::abs(m.qdim(a) - m.qdim(m.dual(a))));
    }
    add("qdim_bounds", r);

    double d2 = 0.0;
    for (auto a : cs) d2 += m.qdim(a) * m.qdim(a);
    add("total_qdim", std::abs(d2 - m.total_qdim_sq()));

    r = std::abs(m.twist(kVacuum) - 1.0);
    for (auto a : cs) {
        r = std::max(r, std::abs(std::abs(m.twist(a)) - 1.0));
        r = std::max(r, std::abs(m.twist(a) - m.twist(m.dual(a))));
    }
    add("twist_unit", r);

    // S either as stored or from the balancing identity; unitarity decides modularity.
    const Eigen::MatrixXcd s = m.smatrix() ? *m.smatrix() : smatrix_from_twists(m);
    const double ures = unitarity_residual(s);
    rep.modular = ures <= tol;
    if (m.modular())
        add("modularity", ures, "declared modular; residual is |SS^+ - 1|");
    else
        add("modularity", rep.modular ? 1.0 : 0.0, "declared non-modular; fails if S is nevertheless unitary");

    r = 0.0;
    if (std::abs(s(0, 0)) > tol) {
        for (auto a : cs) r = std::max(r, std::abs(s(0, a.index) / s(0, 0) - m.qdim(a)));
    } else {
        r = 1.0;
    }
    add("smatrix_qdim", r);

    if (rep.modular && m.modular()) {
        const auto nv = verlinde_fusion(s);
        r = 0.0;
        for (std::size_t i = 0; i < n * n * n; ++i) {
            const std::size_t a = i / (n * n), b = (i / n) % n, c = i % n;
            r = std::max(r, std::abs(nv[i] - double(m.N(ChargeId{a}, ChargeId{b}, ChargeId{c}))));
        }
        add("verlinde", r);
    } else {
        add("verlinde", 0.0, "skipped: model not modular");
    }

    if (m.smatrix()) {
        add("smatrix_twists", (*m.smatrix() - smatrix_from_twists(m)).cwiseAbs().maxCoeff(),
            "stored S against balancing identity");
    } else {
        add("smatrix_twists", 0.0, "skipped: no stored S-matrix");
    }
    return rep;
}

void require_valid(const AnyonModel& m, double tol) {
    const auto rep = validate(m, tol);
    if (const auto* f = rep.first_failure()) {
        std::ostringstream os;
        os << "model " << m.name() << " fails axiom (max residual " << f->max_residual << ")";
        throw ValidationError(f->name, os.str());
    }
}

// ---------------------------------------------------------------------------
// Constructions

AnyonModel product(const AnyonModel& m1, const AnyonModel& m2) {
    const std::size_t n1 = m1.size(), n2 = m2.size();
    auto idx = [n2](std::size_t i, std::size_t j) { return i * n2 + j; };

    std::vector<std::string> labels;
    std::vector<std::size_t> dual;
    std::vector<QDim> qdim;
    std::vector<Turn> twist;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            const ChargeId a{i}, b{j};
            labels.push_back("(" + m1.label(a) + "," + m2.label(b) + ")");
            dual.push_back(idx(m1.dual(a).index, m2.dual(b).index));
            qdim.push_back(m1.qdim_data(a) * m2.qdim_data(b));
            twist.push_back(m1.twist_turn(a) + m2.twist_turn(b));
        }
    std::vector<FusionEntry> fusion;
    for (const auto& e1 : m1.fusion_entries())
        for (const auto& e2 : m2.fusion_entries())
            fusion.push_back({idx(e1.a, e2.a), idx(e1.b, e2.b), idx(e1.c, e2.c), e1.mult * e2.mult});

    std::optional<Eigen::MatrixXcd> s;
    if (m1.smatrix() && m2.smatrix()) {
        const auto& s1 = *m1.smatrix();
        const auto& s2 = *m2.smatrix();
        Eigen::MatrixXcd k(n1 * n2, n1 * n2);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j)
                k.block(i * n2, j * n2, n2, n2) = s1(i, j) * s2;
        s = std::move(k);
    }
    return AnyonModel(m1.name() + "x" + m2.name(), std::move(labels), std::move(dual), fusion, std::move(qdim),
                      std::move(twist), std::move(s), m1.modular() && m2.modular());
}

AnyonModel conjugate(const AnyonModel& m) {
    std::vector<Turn> twist;
    for (auto c : m.charges()) twist.push_back(-m.twist_turn(c));
    std::vector<QDim> qdim;
    std::vector<std::size_t> dual;
    for (auto c : m.charges()) {
        qdim.push_back(m.qdim_data(c));
        dual.push_back(m.dual(c).index);
    }
    std::optional<Eigen::MatrixXcd> s;
    if (m.smatrix()) s = m.smatrix()->conjugate();
    return AnyonModel("conj(" + m.name() + ")", m.labels(), std::move(dual), m.fusion_entries(), std::move(qdim),
                      std::move(twist), std::move(s), m.modular());
}

Eigen::MatrixXcd smatrix_from_twists(const AnyonModel& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd s(n, n);
    for (auto a : m.charges())
        for (auto b : m.charges()) {
            Complex sum = 0.0;
            for (auto c : m.charges())
                if (const unsigned k = m.N(m.dual(a), b, c); k != 0) sum += double(k) * m.qdim(c) * m.twist(c);
            s(a.index, b.index) = sum / (m.twist(a) * m.twist(b)) / m.total_qdim();
        }
    return s;
}

std::vector<Complex> verlinde_fusion(const Eigen::MatrixXcd& s) {
    const auto n = static_cast<std::size_t>(s.rows());
    std::vector<Complex> out(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                Complex sum = 0.0;
                for (std::size_t x = 0; x < n; ++x) sum += s(a, x) * s(b, x) * std::conj(s(c, x)) / s(0, x);
                out[(a * n + b) * n + c] = sum;
            }
    return out;
}

std::uint64_t fusion_space_dim(const AnyonModel& m, std::span<const ChargeId> charges, ChargeId total) {
    if (charges.empty()) throw InvalidArgument("fusion_space_dim", "charge sequence must be non-empty");
    const std::size_t n = m.size();
    std::vector<std::uint64_t> v(n, 0), next(n);
    v[charges.front().index] = 1;
    for (std::size_t i = 1; i < charges.size(); ++i) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t e = 0; e < n; ++e) {
            if (v[e] == 0) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (const unsigned k = m.N(ChargeId{e}, charges[i], ChargeId{c}); k != 0) next[c] += v[e] * k;
        }
        v.swap(next);
    }
    return v[total.index];
}

double genus_dim(const AnyonModel& m, unsigned g, std::span<const ChargeId> charges) {
    if (!m.modular() || !m.smatrix())
        throw InvalidArgument("genus_dim", "model " + m.name() + " is not modular; genus dimension needs S");
    const auto& s = *m.smatrix();
    const double exponent = 2.0 - static_cast<double>(charges.size()) - 2.0 * g;
    Complex sum = 0.0;
    for (auto x : m.charges()) {
        Complex term = std::pow(m.qdim(x) / m.total_qdim(), exponent);
        for (auto a : charges) term *= s(a.index, x.index);
        sum += term;
    }
    if (std::abs(sum.imag()) > 1e-6)
        throw NumericalError("genus_dim", "genus dimension has a non-zero imaginary part");
    return sum.real();
}

}  // namespace anyon
