#include "anyon/catalog.hpp"

#include "anyon/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

namespace anyon {
namespace {

std::vector<FusionEntry> group_fusion(std::size_t n, auto&& mult) {
    std::vector<FusionEntry> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out.push_back({a, b, mult(a, b), 1U});
    return out;
}

// p is carried as twice its value so half-integers stay exact.
AnyonModel make_zn(std::int64_t n, std::int64_t p2, std::string name) {
    if (n < 1) throw InvalidArgument("catalog", "ZN needs N >= 1");
    if (p2 % 2 != 0 && n % 2 != 0) throw InvalidArgument("catalog", "half-integer p requires even N");
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::string> labels;
    std::vector<std::size_t> dual;
    std::vector<QDim> qdim;
    std::vector<Turn> twist;
    for (std::size_t a = 0; a < un; ++a) {
        labels.push_back(std::to_string(a));
        dual.push_back((un - a) % un);
        qdim.push_back(QDim::from_tag("1"));
        const auto ai = static_cast<std::int64_t>(a);
        twist.push_back(Turn::make(p2 * ai * ai, 2 * n));
    }
    auto fusion = group_fusion(un, [un](std::size_t a, std::size_t b) { return (a + b) % un; });

    bool modular = false;
    if (n == 1) {
        modular = true;
    } else if (n % 2 == 1) {
        const std::int64_t pm = ((p2 / 2) % n + n) % n;
        modular = p2 % 2 == 0 && pm != 0 && std::gcd(n, pm) == 1;
    } else {
        // gcd(N, 2[p]_N) with 2[p]_N = [2p]_{2N}
        const std::int64_t twice = ((p2 % (2 * n)) + 2 * n) % (2 * n);
        modular = p2 % 2 != 0 && std::gcd(n, twice) == 1;
    }

    std::optional<Eigen::MatrixXcd> s;
    if (modular) {
        Eigen::MatrixXcd m(n, n);
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b)
                m(a, b) = Turn::make(-p2 * a * b, n).value() / std::sqrt(static_cast<double>(n));
        s = std::move(m);
    }
    return AnyonModel(std::move(name), std::move(labels), std::move(dual), fusion, std::move(qdim), std::move(twist),
                      std::move(s), modular);
}

AnyonModel make_fib(int chirality, std::string name) {
    const double phi = QDim::from_tag("phi").value;
    const double d = std::sqrt(phi + 2.0);
    Eigen::MatrixXcd s(2, 2);
    s << 1.0, phi, phi, -1.0;
    s /= d;
    std::vector<FusionEntry> fusion{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}};
    return AnyonModel(std::move(name), {"0", "tau"}, {0, 1}, fusion, {QDim::from_tag("1"), QDim::from_tag("phi")},
                      {Turn::make(0, 1), Turn::make(chirality > 0 ? 2 : 3, 5)}, std::move(s), true);
}

AnyonModel make_kitaev(int nu, std::string name) {
    if (nu < 0 || nu > 15) throw InvalidArgument("catalog", "K(nu) needs nu in 0..15");
    const Turn edge = Turn::make(nu, 16);
    const Turn fermion = Turn::make(1, 2);
    if (nu % 2 == 1) {
        const double r2 = std::sqrt(2.0);
        Eigen::MatrixXcd s(3, 3);
        s << 1.0, r2, 1.0, r2, 0.0, -r2, 1.0, -r2, 1.0;
        s /= 2.0;
        // I = 0, sigma = 1, psi = 2
        std::vector<FusionEntry> fusion{{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {2, 0, 2, 1},
                                        {1, 1, 0, 1}, {1, 1, 2, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}, {2, 2, 0, 1}};
        return AnyonModel(std::move(name), {"I", "sigma", "psi"}, {0, 1, 2}, fusion,
                          {QDim::from_tag("1"), QDim::from_tag("sqrt2"), QDim::from_tag("1")},
                          {Turn::make(0, 1), edge, fermion}, std::move(s), true);
    }
    std::vector<QDim> ones(4, QDim::from_tag("1"));
    if (nu % 4 == 0) {
        // Z2 x Z2 labelled by bit pairs; index = 2*x1 + x2.
        auto fusion = group_fusion(4, [](std::size_t a, std::size_t b) { return a ^ b; });
        Eigen::MatrixXcd s(4, 4);
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) {
                const int x1 = x >> 1, x2 = x & 1, y1 = y >> 1, y2 = y & 1;
                const int form = (nu % 8 == 0) ? (x1 * y2 + x2 * y1) : (x1 * y1 + x2 * y2);
                s(x, y) = (form % 2 == 0 ? 0.5 : -0.5);
            }
        return AnyonModel(std::move(name), {"00", "01", "10", "11"}, {0, 1, 2, 3}, fusion, ones,
                          {Turn::make(0, 1), edge, edge, fermion}, std::move(s), true);
    }
    // Z4 with theta_1 = theta_3 = e^{i pi nu / 8}, i.e. ZN(4, nu/4).
    auto fusion = group_fusion(4, [](std::size_t a, std::size_t b) { return (a + b) % 4; });
    Eigen::MatrixXcd s(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s(a, b) = Turn::make(-nu * a * b, 8).value() / 2.0;
    return AnyonModel(std::move(name), {"0", "1", "2", "3"}, {0, 3, 2, 1}, fusion, ones,
                      {Turn::make(0, 1), edge, fermion, edge}, std::move(s), true);
}

AnyonModel make_so3_6(std::string name) {
    std::vector<FusionEntry> fusion;
    auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
        fusion.push_back({a, b, c, 1});
        if (a != b) fusion.push_back({b, a, c, 1});
    };
    for (std::size_t a = 0; a < 4; ++a) add(0, a, a);
    for (std::size_t a = 1; a < 4; ++a) add(3, a, 3 - a);
    add(1, 2, 1);
    add(1, 2, 2);
    add(1, 2, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        add(1, 1, c);
        add(2, 2, c);
    }
    return AnyonModel(std::move(name), {"0", "1", "2", "3"}, {0, 1, 2, 3}, fusion,
                      {QDim::from_tag("1"), QDim::from_tag("1+sqrt2"), QDim::from_tag("1+sqrt2"), QDim::from_tag("1")},
                      {Turn::make(0, 1), Turn::make(1, 4), Turn::make(3, 4), Turn::make(1, 2)}, std::nullopt, false);
}

std::string strip(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    return out;
}

// Splits at the last top-level product separator; returns npos when there is none.
std::size_t product_split(const std::string& s) {
    int depth = 0;
    std::size_t at = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == 'x' || ch == '*')) at = i;
    }
    return at;
}

// "1/2" -> 1, "3" -> 6 (twice the value)
std::int64_t parse_twice(const std::string& p) {
    const Turn t = [&] {
        const auto slash = p.find('/');
        if (slash == std::string::npos) return Turn{std::stoll(p), 1};
        return Turn{std::stoll(p.substr(0, slash)), std::stoll(p.substr(slash + 1))};
    }();
    if (t.den != 1 && t.den != 2) throw InvalidArgument("catalog", "ZN level p must be integer or half-integer");
    return t.den == 1 ? 2 * t.num : t.num;
}

std::string format_twice(std::int64_t p2) {
    if (p2 % 2 == 0) return std::to_string(p2 / 2);
    return std::to_string(p2) + "/2";
}

AnyonModel get_simple(const std::string& name) {
    if (name == "DZ2") return make_kitaev(0, "DZ2");
    if (name == "SO3_6") return make_so3_6("SO3_6");
    if (name == "Fib(+1)" || name == "Fib+1" || name == "Fib(1)") return make_fib(+1, "Fib(+1)");
    if (name == "Fib(-1)" || name == "Fib-1") return make_fib(-1, "Fib(-1)");
    try {
        if (name.rfind("K(", 0) == 0 && name.back() == ')') {
            const std::string inner = name.substr(2, name.size() - 3);
            std::size_t used = 0;
            const int nu = std::stoi(inner, &used);
            if (used == inner.size()) return make_kitaev(nu, "K(" + std::to_string(nu) + ")");
        }
        if (name.rfind("ZN(", 0) == 0 && name.back() == ')') {
            const std::string inner = name.substr(3, name.size() - 4);
            const auto comma = inner.find(',');
            if (comma != std::string::npos) {
                std::size_t used = 0;
                const std::string ns = inner.substr(0, comma);
                const std::int64_t n = std::stoll(ns, &used);
                if (used == ns.size()) {
                    std::int64_t p2 = parse_twice(inner.substr(comma + 1));
                    // p is periodic in N
                    p2 = ((p2 % (2 * n)) + 2 * n) % (2 * n);
                    return make_zn(n, p2, "ZN(" + std::to_string(n) + "," + format_twice(p2) + ")");
                }
            }
        }
    } catch (const std::logic_error&) {
        // fall through to the unknown-name error
    }
    throw InvalidArgument("catalog", "unknown model name '" + name + "'");
}

}  // namespace

AnyonModel catalog_get(const std::string& raw) {
    const std::string name = strip(raw);
    if (name.empty()) throw InvalidArgument("catalog", "empty model name");
    if (const auto at = product_split(name); at != std::string::npos) {
        if (at == 0 || at + 1 == name.size()) throw InvalidArgument("catalog", "dangling product in '" + raw + "'");
        return product(catalog_get(name.substr(0, at)), catalog_get(name.substr(at + 1)));
    }
    return get_simple(name);
}

std::string canonical_name(const std::string& name) { return catalog_get(name).name(); }

std::vector<std::string> modular_catalog_names() {
    std::vector<std::string> out{"ZN(1,0)",  "ZN(2,1/2)", "ZN(2,3/2)", "ZN(3,1)", "ZN(3,2)",
                                 "Fib(+1)",  "Fib(-1)",   "ZN(2,1/2)xZN(2,3/2)"};
    for (int nu = 0; nu < 16; ++nu) out.push_back("K(" + std::to_string(nu) + ")");
    for (const char* n : {"ZN(5,1)", "ZN(5,2)", "ZN(6,1/2)", "ZN(6,5/2)", "ZN(6,7/2)", "ZN(6,11/2)", "ZN(7,1)",
                          "ZN(7,3)", "Fib(+1)xZN(2,1/2)", "Fib(+1)xZN(2,3/2)", "Fib(-1)xZN(2,1/2)",
                          "Fib(-1)xZN(2,3/2)"})
        out.emplace_back(n);
    return out;
}

std::vector<std::string> catalog_names() {
    auto out = modular_catalog_names();
    out.emplace_back("SO3_6");
    out.emplace_back("ZN(2,1)");
    return out;
}

}  // namespace anyon
