#include "anyon/cli.hpp"

#include "anyon/catalog.hpp"
#include "anyon/entropy.hpp"
#include "anyon/error.hpp"
#include "anyon/fermionic.hpp"
#include "anyon/io.hpp"
#include "anyon/tee.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>

namespace anyon::cli {

namespace {

using json = nlohmann::ordered_json;
using Rows = std::vector<json>;

// ---- argument grammar ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InvalidArgument(what, "'" + s + "' is not a number");
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size() && v >= 0 && v <= 1000000) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
    }
    throw InvalidArgument(what, "'" + s + "' is not a non-negative integer");
}

// "a..b" inclusive, or a comma list of integers.
std::vector<unsigned> parse_range(const std::string& s, const std::string& what) {
    std::vector<unsigned> out;
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const unsigned a = parse_unsigned(s.substr(0, dots), what), b = parse_unsigned(s.substr(dots + 2), what);
        if (b < a) throw InvalidArgument(what, "empty range '" + s + "'");
        for (unsigned n = a; n <= b; ++n) out.push_back(n);
        return out;
    }
    for (const auto& part : split(s, ',')) out.push_back(parse_unsigned(part, what));
    if (out.empty()) throw InvalidArgument(what, "empty list");
    return out;
}

// Comma list of orders; 1 stands for von Neumann.
std::vector<RenyiOrder> parse_alphas(const std::string& s) {
    std::vector<RenyiOrder> out;
    if (s.empty()) return {RenyiOrder{}};
    for (const auto& part : split(s, ',')) {
        const double a = parse_double(part, "alpha");
        if (!(a > 0.0)) throw InvalidArgument("alpha", "Renyi order must be positive");
        out.push_back(a == 1.0 ? RenyiOrder{} : RenyiOrder{a});
    }
    return out;
}

double alpha_value(const RenyiOrder& a) { return a.value_or(1.0); }

// "0.5,0.5" in charge order or "tau=0.3,0=0.7" by label; missing labels get 0.
ChargeDistribution parse_distribution(const AnyonModel& m, const std::string& s) {
    if (s.empty()) return boundary_distribution(m);
    ChargeDistribution p(m.size(), 0.0);
    const auto parts = split(s, ',');
    if (s.find('=') != std::string::npos) {
        for (const auto& part : parts) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw InvalidArgument("distribution", "expected label=probability, got '" + part + "'");
            p[m.charge(part.substr(0, eq)).index] += parse_double(part.substr(eq + 1), "distribution");
        }
    } else {
        if (parts.size() != m.size())
            throw InvalidArgument("distribution", "expected " + std::to_string(m.size()) + " probabilities");
        for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parse_double(parts[i], "distribution");
    }
    require_distribution(m, p);
    return p;
}

std::vector<ChargeId> parse_charges(const AnyonModel& m, const std::string& s) {
    std::vector<ChargeId> out;
    for (const auto& part : split(s, ',')) out.push_back(m.charge(part));
    return out;
}

// ---- rendering ----

std::string cell_text(const json& v, bool csv) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return v.dump();
    if (v.is_number()) return io::format_number(v.get<double>(), csv);
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell_text(v[i], csv);
        return s;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string render(const Rows& rows, const std::string& format) {
    if (format == "json") return json(rows).dump(2) + "\n";
    std::vector<std::string> keys;
    if (!rows.empty())
        for (const auto& [k, v] : rows.front().items()) keys.push_back(k);
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& k : keys) line.push_back(cell_text(r.contains(k) ? r.at(k) : json(), format == "csv"));
        cells.push_back(std::move(line));
    }
    std::ostringstream os;
    if (format == "csv") {
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_escape(keys[i]);
        os << "\n";
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_escape(line[i]);
            os << "\n";
        }
        return os.str();
    }
    std::vector<std::size_t> width(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        width[i] = keys[i].size();
        for (const auto& line : cells) width[i] = std::max(width[i], line[i].size());
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << (i ? "  " : "");
            if (i + 1 < line.size()) os << std::left << std::setw(static_cast<int>(width[i]));
            os << line[i];
        }
        os << "\n";
    };
    emit(keys);
    for (const auto& line : cells) emit(line);
    return os.str();
}

json tee_row(const TeeResult& r) {
    json j;
    j["model"] = r.model;
    j["geometry"] = to_string(r.geometry);
    j["convention"] = to_string(r.convention);
    j["segments"] = r.segments;
    j["charges"] = r.charge_labels;
    j["alpha"] = alpha_value(r.alpha);
    j["entropy"] = r.entropy;
    j["linear_term"] = r.linear_term;
    j["topo_term"] = r.topo_term;
    j["charge_term"] = r.charge_term;
    j["F"] = r.F;
    return j;
}

// ---- command state ----

struct Options {
    std::string model, model_file, format = "table", out, alpha, charge, charges, method = "closed", n, m, l;
    std::string geometry = "disk", dist, fermion, file, variant;
    std::vector<std::string> components, positional;
    double max_d2 = 8.0, interior = 0.0;
    unsigned genus = 1;
    bool bits = false, doubled = false, all = false;
};

class Runner {
public:
    Runner(Options& o, std::ostream& out) : o_(o), out_(out) {
        if (const char* env = std::getenv("ANYON_TEE_TOL")) tol_ = parse_double(env, "ANYON_TEE_TOL");
        if (!(tol_ > 0.0)) throw InvalidArgument("ANYON_TEE_TOL", "tolerance must be positive");
    }

    double unit() const { return o_.bits ? 1.0 / std::log(2.0) : 1.0; }
    std::string units() const { return o_.bits ? "bits" : "nats"; }
    Convention convention() const { return o_.doubled ? Convention::doubled : Convention::undoubled; }

    AnyonModel model() const {
        if (!o_.model.empty() && !o_.model_file.empty())
            throw InvalidArgument("model", "give either --model or --model-file, not both");
        if (!o_.model_file.empty()) return io::load_model(o_.model_file, tol_);
        if (o_.model.empty()) throw InvalidArgument("model", "--model or --model-file is required");
        return catalog_get(o_.model);
    }

    void emit(const std::string& text) const {
        if (o_.out.empty()) out_ << text;
        else io::write_file(o_.out, text);
    }

    void emit_rows(const Rows& rows) const { emit(render(rows, o_.format)); }

    void emit_results(std::vector<TeeResult> rs) const {
        for (auto& r : rs) {
            r.entropy *= unit();
            r.linear_term *= unit();
            r.topo_term *= unit();
            r.charge_term *= unit();
            r.F *= unit();
        }
        if (o_.format == "csv") return emit(io::results_to_csv(rs));
        if (o_.format == "json") return emit(io::results_to_json(rs));
        Rows rows;
        for (const auto& r : rs) rows.push_back(tee_row(r));
        emit_rows(rows);
    }

    // ---- model ----

    int model_list() const {
        auto names = modular_catalog_names();
        if (o_.all) {
            const auto extra = catalog_names();
            for (const auto& n : extra)
                if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
        }
        Rows rows;
        for (const auto& name : names) {
            const auto m = catalog_get(name);
            if (m.total_qdim_sq() > o_.max_d2 + 1e-12) continue;
            json r;
            r["name"] = name;
            r["charges"] = m.size();
            r["D2"] = m.total_qdim_sq();
            r["modular"] = m.modular();
            rows.push_back(std::move(r));
        }
        std::stable_sort(rows.begin(), rows.end(),
                         [](const json& a, const json& b) { return a["D2"].get<double>() < b["D2"].get<double>() - 1e-12; });
        emit_rows(rows);
        return kOk;
    }

    int model_show() const {
        const auto m = model();
        if (o_.format == "json") {
            emit(io::model_to_json(m));
            return kOk;
        }
        Rows rows;
        for (auto c : m.charges()) {
            json r;
            r["charge"] = m.label(c);
            r["dual"] = m.label(m.dual(c));
            r["qdim"] = m.qdim(c);
            r["qdim_tag"] = m.qdim_data(c).tag;
            r["twist"] = m.twist_turn(c).str();
            std::string fuse;
            for (auto b : m.charges()) {
                if (b < c) continue;
                std::string outs;
                for (auto x : m.charges())
                    if (const unsigned n = m.N(c, b, x)) outs += (outs.empty() ? "" : "+") + (n > 1 ? std::to_string(n) : "") + m.label(x);
                fuse += (fuse.empty() ? "" : " ") + m.label(c) + "x" + m.label(b) + "=" + outs;
            }
            r["fusion"] = fuse;
            rows.push_back(std::move(r));
        }
        std::string head = o_.format == "csv" ? "" : "# " + m.name() + "  D2 = " + io::format_number(m.total_qdim_sq()) +
                                                         (m.modular() ? "  modular" : "  not modular") + "\n";
        emit(head + render(rows, o_.format));
        return kOk;
    }

    int model_validate() const {
        const auto m = model();
        const auto rep = validate(m, tol_);
        Rows rows;
        for (const auto& c : rep.checks) {
            json r;
            r["check"] = c.name;
            r["pass"] = c.pass;
            r["residual"] = c.max_residual;
            r["note"] = c.note;
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return rep.ok() ? kOk : kValidation;
    }

    int model_product() const {
        if (o_.positional.size() != 2) throw InvalidArgument("product", "expected two model names");
        const auto p = product(catalog_get(o_.positional[0]), catalog_get(o_.positional[1]));
        require_valid(p, tol_);
        if (o_.format == "json" || !o_.out.empty()) {
            emit(io::model_to_json(p));
            return kOk;
        }
        Options copy = o_;
        copy.model = canonical_name(o_.positional[0] + "x" + o_.positional[1]);
        return Runner(copy, out_).model_show();
    }

    // ---- entropy ----

    int entropy_state() const {
        if (o_.file.empty()) throw InvalidArgument("file", "--file is required");
        std::vector<double> alphas;
        for (const auto& a : parse_alphas(o_.alpha))
            if (a) alphas.push_back(*a);
        const auto state = io::load_state(o_.file, tol_);
        EntropyReport rep;
        if (const auto* s = std::get_if<SectorState>(&state)) rep = entropy_report(*s, alphas);
        else rep = aee_bipartite(std::get<BipartitePureState>(state), alphas);
        if (o_.format == "json") {
            emit(io::entropy_report_to_json(rep, unit(), units()));
            return kOk;
        }
        Rows rows;
        auto add = [&](const std::string& q, double v) {
            json r;
            r["quantity"] = q;
            r["value"] = v * unit();
            r["units"] = units();
            rows.push_back(std::move(r));
        };
        add("von_neumann", rep.von_neumann);
        for (const auto& [a, v] : rep.renyi) add("renyi(" + io::format_number(a) + ")", v);
        add("shannon_part", rep.shannon_part);
        add("charge_part", rep.charge_part);
        emit_rows(rows);
        return kOk;
    }

    int entropy_ace() const {
        const auto m = model();
        const auto p = parse_distribution(m, o_.dist);
        std::vector<PairVariant> variants{PairVariant::product, PairVariant::correlated, PairVariant::pure};
        if (!o_.variant.empty()) {
            if (o_.variant == "product") variants = {PairVariant::product};
            else if (o_.variant == "correlated") variants = {PairVariant::correlated};
            else if (o_.variant == "pure") variants = {PairVariant::pure};
            else throw InvalidArgument("variant", "expected product, correlated or pure");
        }
        Rows rows;
        const char* names[] = {"product", "correlated", "pure"};
        for (auto v : variants) {
            json r;
            r["model"] = m.name();
            r["variant"] = names[static_cast<int>(v)];
            r["S_ace"] = ace_entropy_family(m, v, p) * unit();
            r["bound"] = 2.0 * std::log(m.total_qdim()) * unit();
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return kOk;
    }

    // ---- tee ----

    std::vector<ChargeId> geometry_charges(const AnyonModel& m, Geometry g) const {
        if (g == Geometry::sphere3) {
            if (o_.charges.empty()) throw InvalidArgument("charges", "sphere3 needs --charges x,y,z");
            return parse_charges(m, o_.charges);
        }
        return {o_.charge.empty() ? kVacuum : m.charge(o_.charge)};
    }

    std::vector<unsigned> geometry_segments(Geometry g) const {
        auto one = [&](const std::string& s, const char* flag) {
            if (s.empty()) throw InvalidArgument(flag, std::string("--") + flag + " is required");
            return parse_unsigned(s, flag);
        };
        switch (g) {
            case Geometry::disk: return {one(o_.n, "n")};
            case Geometry::annulus:
            case Geometry::torus: return {one(o_.n, "n"), one(o_.m, "m")};
            case Geometry::sphere3: return {one(o_.l, "l"), one(o_.m, "m"), one(o_.n, "n")};
        }
        return {};
    }

    int tee_geometry(Geometry g) const {
        const auto m = model();
        const auto method = parse_method(o_.method);
        std::vector<TeeResult> rs;
        for (const auto& a : parse_alphas(o_.alpha))
            rs.push_back(tee_evaluate(m, g, geometry_segments(g), geometry_charges(m, g), a, convention(), method));
        emit_results(rs);
        return kOk;
    }

    int tee_general() const {
        const auto m = model();
        if (o_.components.empty()) throw InvalidArgument("component", "at least one --component is required");
        std::vector<BoundaryComponent> comps;
        for (const auto& spec : o_.components) {
            const auto colon = spec.find(':');
            BoundaryComponent c;
            c.segments = parse_unsigned(spec.substr(0, colon), "component");
            c.charge_dist = parse_distribution(m, colon == std::string::npos ? "" : spec.substr(colon + 1));
            comps.push_back(std::move(c));
        }
        json r;
        r["model"] = m.name();
        r["components"] = comps.size();
        r["entropy"] = general_entropy(m, comps, o_.interior) * unit();
        r["stopo_total"] = static_cast<double>(comps.size()) * stopo(m) * unit();
        emit_rows({r});
        return kOk;
    }

    int tee_sweep() const {
        const auto m = model();
        const auto g = parse_geometry(o_.geometry);
        const auto method = parse_method(o_.method);
        if (o_.n.empty()) throw InvalidArgument("n", "--n is required");
        const auto ns = parse_range(o_.n, "n");
        const auto alphas = parse_alphas(o_.alpha);
        const auto charges = geometry_charges(m, g);
        struct Point {
            unsigned n;
            RenyiOrder a;
        };
        std::vector<Point> grid;
        for (unsigned n : ns)
            for (const auto& a : alphas) grid.push_back({n, a});
        std::stable_sort(grid.begin(), grid.end(), [](const Point& x, const Point& y) {
            return x.n != y.n ? x.n < y.n : alpha_value(x.a) < alpha_value(y.a);
        });
        std::vector<TeeResult> rs;
        for (const auto& p : grid) {
            std::vector<unsigned> seg;
            switch (g) {
                case Geometry::disk: seg = {p.n}; break;
                case Geometry::annulus:
                case Geometry::torus: seg = {p.n, o_.m.empty() ? p.n : parse_unsigned(o_.m, "m")}; break;
                case Geometry::sphere3:
                    seg = {o_.l.empty() ? p.n : parse_unsigned(o_.l, "l"), o_.m.empty() ? p.n : parse_unsigned(o_.m, "m"), p.n};
                    break;
            }
            rs.push_back(tee_evaluate(m, g, seg, charges, p.a, convention(), method));
        }
        emit_results(rs);
        return kOk;
    }

    int tee_fit() const {
        const auto m = model();
        const auto g = parse_geometry(o_.geometry);
        if (o_.n.empty()) throw InvalidArgument("n", "--n is required");
        const auto alphas = parse_alphas(o_.alpha);
        Rows rows;
        for (const auto& a : alphas) {
            const auto f = fit_stopo(m, g, parse_range(o_.n, "n"), a, convention(), geometry_charges(m, g));
            json r;
            r["model"] = m.name();
            r["geometry"] = to_string(g);
            r["convention"] = to_string(convention());
            r["alpha"] = alpha_value(a);
            r["slope"] = f.slope * unit();
            r["intercept"] = f.intercept * unit();
            r["stopo"] = stopo(m) * unit();
            r["residual_max"] = f.residual_max * unit();
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return kOk;
    }

    int tee_kp() const {
        const auto m = model();
        const auto method = parse_method(o_.method);
        Rows rows;
        auto alphas = parse_alphas(o_.alpha.empty() ? "2" : o_.alpha);
        for (const auto& a : alphas) {
            const auto kp = kitaev_preskill(m, a, method);
            json r;
            r["model"] = m.name();
            r["S_topo"] = stopo(m) * unit();
            r["vn_combo"] = kp.vn_combo * unit();
            r["alpha"] = alpha_value(a);
            r["renyi_combo"] = kp.renyi_combo * unit();
            r["renyi_residual"] = kp.renyi_residual * unit();
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return kOk;
    }

    // ---- fermion ----

    SuperModel super_model() const {
        if (!o_.file.empty()) return io::super_from_json(io::read_file(o_.file), tol_);
        if (o_.fermion.empty()) throw InvalidArgument("fermion", "--fermion is required");
        const auto m = model();
        return make_super(m, m.charge(o_.fermion), tol_);
    }

    int fermion_make() const {
        const auto sm = super_model();
        if (o_.format == "json" || !o_.out.empty()) {
            emit(io::super_to_json(sm));
            return kOk;
        }
        Rows rows;
        for (std::size_t i = 0; i < sm.supersectors.size(); ++i) {
            json r;
            r["supersector"] = sm.sector_label(i);
            r["qdim"] = sm.super_qdim[i];
            rows.push_back(std::move(r));
        }
        emit("# " + sm.base->name() + "  fermion " + sm.base->label(sm.fermion) + "  Dhat2 = " +
             io::format_number(sm.dhat_sq()) + "\n" + render(rows, o_.format));
        return kOk;
    }

    json super_row(const std::string& name, const SuperModel& sm) const {
        json r;
        r["model"] = name;
        r["fermion"] = sm.base->label(sm.fermion);
        r["supersectors"] = sm.supersectors.size();
        r["Dhat2"] = sm.dhat_sq();
        r["S_topo_hat"] = fermionic_stopo(sm) * unit();
        return r;
    }

    int fermion_tee() const {
        const auto sm = super_model();
        emit_rows({super_row(sm.base->name(), sm)});
        return kOk;
    }

    int fermion_catalog_cmd() const {
        Rows rows;
        for (const auto& e : fermionic_catalog()) {
            auto r = super_row(e.name, e.model);
            r["Dhat2_exact"] = e.dhat_sq_tag;
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return kOk;
    }

    // ---- genus / string-net ----

    int genus_dim_cmd() const {
        const auto m = model();
        const auto charges = o_.charges.empty() ? std::vector<ChargeId>{} : parse_charges(m, o_.charges);
        const double d = genus_dim(m, o_.genus, charges);
        json r;
        r["model"] = m.name();
        r["genus"] = o_.genus;
        std::vector<std::string> labels;
        for (auto c : charges) labels.push_back(m.label(c));
        r["charges"] = labels;
        r["dim"] = d;
        r["dim_int"] = std::llround(d);
        emit_rows({r});
        return std::abs(d - std::round(d)) < 1e-6 ? kOk : kNumerical;
    }

    int stringnet_entropy_cmd() const {
        const auto m = model();
        if (o_.n.empty()) throw InvalidArgument("n", "--n is required");
        Rows rows;
        for (unsigned n : parse_range(o_.n, "n")) {
            json r;
            r["model"] = m.name();
            r["n"] = n;
            r["entropy"] = stringnet_entropy(m, n) * unit();
            rows.push_back(std::move(r));
        }
        emit_rows(rows);
        return kOk;
    }

    int stringnet_check_cmd() const {
        const auto m = model();
        const auto c = stringnet_check(m, tol_);
        json r;
        r["model"] = m.name();
        r["pass"] = c.pass;
        r["boundary_residual"] = c.boundary_residual;
        r["tee_residual"] = c.tee_residual;
        r["disk_residual"] = c.disk_residual;
        emit_rows({r});
        return c.pass ? kOk : kNumerical;
    }

private:
    Options& o_;
    std::ostream& out_;
    double tol_ = kDefaultTol;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Anyonic entanglement and topological entanglement entropy", "anyon_tee"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--model", o.model, "catalog model name, e.g. Fib+1, K(1), ZN(3,1), DZ2, \"A x B\"");
    app.add_option("--model-file", o.model_file, "model document (.anyon.json)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--out", o.out, "write output to this file instead of stdout");
    app.add_flag("--bits", o.bits, "report entropies in bits instead of nats");

    std::vector<std::pair<CLI::App*, std::function<int(const Runner&)>>> leaves;
    auto group = [&](const char* name, const char* help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        return g;
    };
    auto leaf = [&](CLI::App* g, const char* name, const char* help, std::function<int(const Runner&)> f) {
        auto* s = g->add_subcommand(name, help);
        leaves.emplace_back(s, std::move(f));
        return s;
    };
    auto tee_flags = [&](CLI::App* s) {
        s->add_option("--alpha", o.alpha, "Renyi orders, comma separated (1 = von Neumann)");
        s->add_flag("--doubled", o.doubled, "report the doubled-surface values");
        s->add_option("--method", o.method, "closed, transfer or brute")->check(CLI::IsMember({"closed", "transfer", "brute"}));
        s->add_option("--charge", o.charge, "charge label threading the region (default vacuum)");
    };

    auto* model = group("model", "catalog and model files");
    auto* list = leaf(model, "list", "list catalog models", [](const Runner& r) { return r.model_list(); });
    list->add_option("--max-d2", o.max_d2, "largest D^2 to list");
    list->add_flag("--all", o.all, "include non-modular entries");
    leaf(model, "show", "print charges, dimensions, twists and fusion", [](const Runner& r) { return r.model_show(); });
    leaf(model, "validate", "run every model axiom", [](const Runner& r) { return r.model_validate(); });
    leaf(model, "product", "product of two catalog models", [](const Runner& r) { return r.model_product(); })
        ->add_option("names", o.positional, "two model names")
        ->expected(2);

    auto* entropy = group("entropy", "anyonic entropies of states");
    auto* est = leaf(entropy, "state", "entropy report of a state file", [](const Runner& r) { return r.entropy_state(); });
    est->add_option("--file", o.file, "state document (.state.json)");
    est->add_option("--alpha", o.alpha, "Renyi orders, comma separated");
    auto* ace = leaf(entropy, "ace", "charge-line entanglement of pair states", [](const Runner& r) { return r.entropy_ace(); });
    ace->add_option("--dist", o.dist, "charge distribution: p0,p1,... or label=p,... (default d^2/D^2)");
    ace->add_option("--variant", o.variant, "product, correlated or pure (default all)");

    auto* tee = group("tee", "topological entanglement entropy of regions");
    auto* disk = leaf(tee, "disk", "disk with n boundary segments", [](const Runner& r) { return r.tee_geometry(Geometry::disk); });
    disk->add_option("--n", o.n, "segments")->required();
    tee_flags(disk);
    for (auto [name, g] : {std::pair{"annulus", Geometry::annulus}, std::pair{"torus", Geometry::torus}}) {
        auto* s = leaf(tee, name, "two boundaries with n and m segments",
                       [g = g](const Runner& r) { return r.tee_geometry(g); });
        s->add_option("--n", o.n, "segments on the first boundary")->required();
        s->add_option("--m", o.m, "segments on the second boundary")->required();
        tee_flags(s);
    }
    auto* sph = leaf(tee, "sphere3", "sphere region with three boundaries",
                     [](const Runner& r) { return r.tee_geometry(Geometry::sphere3); });
    sph->add_option("--l", o.l, "segments on boundary 1")->required();
    sph->add_option("--m", o.m, "segments on boundary 2")->required();
    sph->add_option("--n", o.n, "segments on boundary 3")->required();
    sph->add_option("--charges", o.charges, "x,y,z")->required();
    tee_flags(sph);
    auto* gen = leaf(tee, "general", "boundary components with charge marginals", [](const Runner& r) { return r.tee_general(); });
    gen->add_option("--component", o.components, "N or N:label=p,... (default d^2/D^2), repeatable")->required();
    gen->add_option("--interior", o.interior, "entropy of interior anyons");
    auto* sweep = leaf(tee, "sweep", "grid over n and alpha", [](const Runner& r) { return r.tee_sweep(); });
    auto* fit = leaf(tee, "fit", "least-squares line through entropy(n)", [](const Runner& r) { return r.tee_fit(); });
    for (auto* s : {sweep, fit}) {
        s->add_option("--geometry", o.geometry, "disk, annulus, torus or sphere3");
        s->add_option("--n", o.n, "range a..b or list")->required();
        s->add_option("--charges", o.charges, "x,y,z for sphere3");
        tee_flags(s);
    }
    sweep->add_option("--m", o.m, "fixed second-boundary segments (default n)");
    sweep->add_option("--l", o.l, "fixed first-boundary segments for sphere3 (default n)");
    auto* kp = leaf(tee, "kp", "Kitaev-Preskill combination", [](const Runner& r) { return r.tee_kp(); });
    kp->add_option("--alpha", o.alpha, "Renyi orders for the Renyi combination (default 2)");
    kp->add_option("--method", o.method, "closed, transfer or brute");

    auto* fermion = group("fermion", "fermionic theories");
    for (auto* s : {leaf(fermion, "make", "supersectors of a model", [](const Runner& r) { return r.fermion_make(); }),
                    leaf(fermion, "tee", "fermionic topological entropy", [](const Runner& r) { return r.fermion_tee(); })}) {
        s->add_option("--fermion", o.fermion, "label of the transparent fermion");
        s->add_option("--file", o.file, "fermionic model document");
    }
    leaf(fermion, "catalog", "every fermionic theory with Dhat^2 <= 7",
         [](const Runner& r) { return r.fermion_catalog_cmd(); });

    auto* genus = group("genus", "ground-state degeneracies");
    auto* gd = leaf(genus, "dim", "dimension on a genus-g surface", [](const Runner& r) { return r.genus_dim_cmd(); });
    gd->add_option("--g", o.genus, "genus");
    gd->add_option("--charges", o.charges, "puncture charges, comma separated");

    auto* sn = group("stringnet", "string-net entropies");
    leaf(sn, "entropy", "fixed-point string-net entropy", [](const Runner& r) { return r.stringnet_entropy_cmd(); })
        ->add_option("--n", o.n, "boundary crossings, a..b or list")
        ->required();
    leaf(sn, "check", "compare with the doubled theory", [](const Runner& r) { return r.stringnet_check_cmd(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        if (code == 0) return kOk;
        const CLI::App* deepest = &app;
        while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
        err << "\n" << deepest->help();
        return kUsage;
    }

    try {
        const Runner runner(o, out);
        for (const auto& [s, f] : leaves)
            if (s->parsed()) return f(runner);
        err << app.help();
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error [" << e.check() << "]: " << e.what() << "\n";
        return kValidation;
    } catch (const NumericalError& e) {
        err << "error [" << e.check() << "]: " << e.what() << "\n";
        return kNumerical;
    } catch (const Error& e) {
        err << "error [" << e.check() << "]: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace anyon::cli
