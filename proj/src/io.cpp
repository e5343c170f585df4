#include "anyon/io.hpp"

#include "anyon/catalog.hpp"
#include "anyon/error.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace anyon::io {

using json = nlohmann::ordered_json;

namespace {

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string where(const std::string& path) { return path.empty() ? "<document>" : path; }

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
    }
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(where(path), "expected an object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(sub(path, key), "unknown field");
    }
}

const json& need(const json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(sub(path, key), "missing field");
    return *it;
}

const json& need_array(const json& j, const std::string& key, const std::string& path) {
    const auto& v = need(j, key, path);
    if (!v.is_array()) throw ParseError(sub(path, key), "expected an array");
    return v;
}

double get_double(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    return j.get<double>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw ParseError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex get_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected an [re, im] pair");
    return {get_double(j[0], at(path, 0)), get_double(j[1], at(path, 1))};
}

json matrix_json(const Eigen::MatrixXcd& w) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(complex_json(w(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd get_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty list of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError(at(path, 0), "expected a non-empty row");
    Eigen::MatrixXcd w(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(at(path, r), "expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) w(r, c) = get_complex(row[c], at(at(path, r), c));
    }
    return w;
}

void check_header(const json& j, const std::string& kind, const std::string& path) {
    require_object(j, path);
    const auto& v = need(j, "version", path);
    if (!v.is_number_integer()) throw ParseError(sub(path, "version"), "expected an integer");
    if (v.get<long long>() != kFormatVersion)
        throw VersionError(sub(path, "version"), "document version " + v.dump() + " is not supported; expected " +
                                                     std::to_string(kFormatVersion));
    const auto k = get_string(need(j, "kind", path), sub(path, "kind"));
    if (k != kind) throw ParseError(sub(path, "kind"), "expected a '" + kind + "' document, found '" + k + "'");
}

json header(const std::string& kind) {
    json j;
    j["kind"] = kind;
    j["version"] = kFormatVersion;
    return j;
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

// ---- models ----

void put_model_fields(json& j, const AnyonModel& m) {
    j["name"] = m.name();
    j["charges"] = m.labels();
    json dual = json::array();
    for (auto c : m.charges()) dual.push_back(m.dual(c).index);
    j["dual"] = dual;
    json fusion = json::array();
    for (const auto& e : m.fusion_entries()) fusion.push_back(json::array({e.a, e.b, e.c, e.mult}));
    j["fusion"] = fusion;
    json qdim = json::array();
    for (auto c : m.charges()) {
        const auto& q = m.qdim_data(c);
        if (q.tag.empty()) qdim.push_back(q.value);
        else qdim.push_back(q.tag);
    }
    j["qdim"] = qdim;
    json twist = json::array();
    for (auto c : m.charges()) twist.push_back(m.twist_turn(c).str());
    j["twist"] = twist;
    if (m.smatrix()) j["smatrix"] = matrix_json(*m.smatrix());
    j["modular"] = m.modular();
}

json model_json(const AnyonModel& m) {
    json j = header("model");
    put_model_fields(j, m);
    return j;
}

AnyonModel read_model_fields(const json& j, const std::string& path, double tol) {
    const auto name = get_string(need(j, "name", path), sub(path, "name"));

    std::vector<std::string> labels;
    const auto& cj = need_array(j, "charges", path);
    for (std::size_t i = 0; i < cj.size(); ++i) labels.push_back(get_string(cj[i], at(sub(path, "charges"), i)));
    const std::size_t n = labels.size();
    auto sized = [&](const char* key) -> const json& {
        const auto& a = need_array(j, key, path);
        if (a.size() != n) throw ParseError(sub(path, key), "expected " + std::to_string(n) + " entries, one per charge");
        return a;
    };

    std::vector<std::size_t> dual;
    const auto& dj = sized("dual");
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = get_uint(dj[i], at(sub(path, "dual"), i));
        if (d >= n) throw ParseError(at(sub(path, "dual"), i), "index out of range");
        dual.push_back(d);
    }

    std::vector<FusionEntry> fusion;
    const auto& fj = need_array(j, "fusion", path);
    for (std::size_t i = 0; i < fj.size(); ++i) {
        const auto p = at(sub(path, "fusion"), i);
        if (!fj[i].is_array() || fj[i].size() != 4) throw ParseError(p, "expected [a, b, c, multiplicity]");
        std::size_t abc[3];
        for (std::size_t k = 0; k < 3; ++k) {
            abc[k] = get_uint(fj[i][k], at(p, k));
            if (abc[k] >= n) throw ParseError(at(p, k), "charge index out of range");
        }
        const auto mult = get_uint(fj[i][3], at(p, 3));
        if (mult == 0) throw ParseError(at(p, 3), "zero multiplicities are omitted, not listed");
        fusion.push_back({abc[0], abc[1], abc[2], static_cast<unsigned>(mult)});
    }

    std::vector<QDim> qdim;
    const auto& qj = sized("qdim");
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = at(sub(path, "qdim"), i);
        if (qj[i].is_string()) {
            try {
                qdim.push_back(QDim::from_tag(qj[i].get<std::string>()));
            } catch (const InvalidArgument& e) {
                throw ParseError(p, e.what());
            }
        } else {
            qdim.push_back(QDim::number(get_double(qj[i], p)));
        }
    }

    std::vector<Turn> twist;
    const auto& tj = sized("twist");
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = at(sub(path, "twist"), i);
        try {
            twist.push_back(Turn::parse(get_string(tj[i], p)));
        } catch (const InvalidArgument& e) {
            throw ParseError(p, e.what());
        }
    }

    std::optional<Eigen::MatrixXcd> s;
    if (j.contains("smatrix")) {
        s = get_matrix(j["smatrix"], sub(path, "smatrix"));
        if (static_cast<std::size_t>(s->rows()) != n || static_cast<std::size_t>(s->cols()) != n)
            throw ParseError(sub(path, "smatrix"), "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    const auto& mj = need(j, "modular", path);
    if (!mj.is_boolean()) throw ParseError(sub(path, "modular"), "expected a boolean");

    std::optional<AnyonModel> m;
    try {
        m.emplace(name, labels, dual, fusion, qdim, twist, s, mj.get<bool>());
    } catch (const InvalidArgument& e) {
        throw ParseError(where(path), e.what());
    }

    const auto rep = validate(*m, tol);
    if (const auto* first = rep.first_failure()) {
        std::ostringstream os;
        os << "model '" << name << "' fails";
        for (const auto& c : rep.checks)
            if (!c.pass) os << " " << c.name << " (residual " << c.max_residual << ")";
        throw ValidationError(first->name, os.str());
    }
    return std::move(*m);
}

#define MODEL_FIELDS "kind", "version", "name", "charges", "dual", "fusion", "qdim", "twist", "smatrix", "modular"

AnyonModel read_model(const json& j, const std::string& path, double tol) {
    check_header(j, "model", path);
    reject_unknown(j, {MODEL_FIELDS}, path);
    return read_model_fields(j, path, tol);
}

json model_ref(const AnyonModel& m) {
    try {
        if (model_json(catalog_get(m.name())) == model_json(m)) return m.name();
    } catch (const InvalidArgument&) {
    }
    return model_json(m);
}

std::shared_ptr<const AnyonModel> read_model_ref(const json& j, const std::string& path, double tol) {
    if (j.is_string()) {
        try {
            return std::make_shared<const AnyonModel>(catalog_get(j.get<std::string>()));
        } catch (const InvalidArgument& e) {
            throw ParseError(path, e.what());
        }
    }
    if (!j.is_object()) throw ParseError(path, "expected a catalog name or a model document");
    return std::make_shared<const AnyonModel>(read_model(j, path, tol));
}

ChargeId read_charge(const AnyonModel& m, const json& j, const std::string& path) {
    const auto label = get_string(j, path);
    if (const auto c = m.find(label)) return *c;
    throw ParseError(path, "model " + m.name() + " has no charge '" + label + "'");
}

}  // namespace

std::string model_to_json(const AnyonModel& m) { return finish(model_json(m)); }

AnyonModel model_from_json(const std::string& text, double tol) { return read_model(parse_text(text), "", tol); }

// ---- states ----

std::string state_to_json(const SectorState& s) {
    json j = header("state");
    j["model"] = model_ref(s.model());
    json sectors = json::array();
    for (const auto& b : s.blocks()) {
        json e;
        e["charge"] = s.model().label(b.charge);
        e["multiplicity"] = b.multiplicity;
        if (!b.tags.empty()) e["basis_tags"] = b.tags;
        e["W"] = matrix_json(b.W);
        sectors.push_back(std::move(e));
    }
    j["sectors"] = sectors;
    return finish(j);
}

std::string state_to_json(const BipartitePureState& s) {
    json j = header("state");
    j["model"] = model_ref(s.model());
    json blocks = json::array();
    for (const auto& b : s.blocks()) {
        json e;
        e["charge"] = s.model().label(b.charge);
        e["dimA"] = b.psi.rows();
        e["dimB"] = b.psi.cols();
        e["psi"] = matrix_json(b.psi);
        blocks.push_back(std::move(e));
    }
    j["bipartite"] = blocks;
    return finish(j);
}

AnyState state_from_json(const std::string& text, double tol) {
    const json j = parse_text(text);
    check_header(j, "state", "");
    reject_unknown(j, {"kind", "version", "model", "sectors", "bipartite"}, "");
    const auto model = read_model_ref(need(j, "model", ""), "model", tol);
    const bool has_sectors = j.contains("sectors"), has_pure = j.contains("bipartite");
    if (has_sectors == has_pure) throw ParseError("<document>", "exactly one of 'sectors' and 'bipartite' is required");

    if (has_sectors) {
        std::vector<SectorBlock> blocks;
        const auto& sj = need_array(j, "sectors", "");
        for (std::size_t i = 0; i < sj.size(); ++i) {
            const auto p = at("sectors", i);
            require_object(sj[i], p);
            reject_unknown(sj[i], {"charge", "multiplicity", "basis_tags", "W"}, p);
            SectorBlock b;
            b.charge = read_charge(*model, need(sj[i], "charge", p), sub(p, "charge"));
            if (sj[i].contains("multiplicity")) {
                b.multiplicity = get_uint(sj[i]["multiplicity"], sub(p, "multiplicity"));
                if (b.multiplicity == 0) throw ParseError(sub(p, "multiplicity"), "must be positive");
            }
            b.W = get_matrix(need(sj[i], "W", p), sub(p, "W"));
            if (b.W.rows() != b.W.cols()) throw ParseError(sub(p, "W"), "expected a square matrix");
            if (sj[i].contains("basis_tags")) {
                const auto& tj = sj[i]["basis_tags"];
                if (!tj.is_array() || tj.size() != static_cast<std::size_t>(b.W.rows()))
                    throw ParseError(sub(p, "basis_tags"), "expected one tag per row of W");
                for (std::size_t k = 0; k < tj.size(); ++k) b.tags.push_back(get_string(tj[k], at(sub(p, "basis_tags"), k)));
            }
            blocks.push_back(std::move(b));
        }
        SectorState s(model, std::move(blocks), tol);
        s.check(tol);
        return s;
    }

    std::vector<PureBlock> blocks;
    const auto& bj = need_array(j, "bipartite", "");
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const auto p = at("bipartite", i);
        require_object(bj[i], p);
        reject_unknown(bj[i], {"charge", "dimA", "dimB", "psi"}, p);
        PureBlock b;
        b.charge = read_charge(*model, need(bj[i], "charge", p), sub(p, "charge"));
        const auto rows = get_uint(need(bj[i], "dimA", p), sub(p, "dimA"));
        const auto cols = get_uint(need(bj[i], "dimB", p), sub(p, "dimB"));
        b.psi = get_matrix(need(bj[i], "psi", p), sub(p, "psi"));
        if (static_cast<std::uint64_t>(b.psi.rows()) != rows || static_cast<std::uint64_t>(b.psi.cols()) != cols)
            throw ParseError(sub(p, "psi"), "shape disagrees with dimA x dimB");
        blocks.push_back(std::move(b));
    }
    return BipartitePureState(model, std::move(blocks), tol);
}

SectorState sector_state_from_json(const std::string& text, double tol) {
    auto s = state_from_json(text, tol);
    if (auto* p = std::get_if<SectorState>(&s)) return std::move(*p);
    throw ParseError("bipartite", "expected a sector state, found a bipartite pure state");
}

// ---- fermionic models ----

std::string super_to_json(const SuperModel& sm) {
    json j = header("super");
    put_model_fields(j, *sm.base);
    j["fermion"] = sm.base->label(sm.fermion);
    return finish(j);
}

SuperModel super_from_json(const std::string& text, double tol) {
    const json j = parse_text(text);
    check_header(j, "super", "");
    reject_unknown(j, {MODEL_FIELDS, "fermion"}, "");
    auto m = std::make_shared<const AnyonModel>(read_model_fields(j, "", tol));
    const auto psi = read_charge(*m, need(j, "fermion", ""), "fermion");
    return make_super(m, psi, tol);
}

// ---- results ----

namespace {

struct SegmentColumns {
    std::optional<unsigned> n, m, l;
};

SegmentColumns columns(const TeeResult& r) {
    SegmentColumns c;
    const auto& s = r.segments;
    if (r.geometry == Geometry::sphere3 && s.size() == 3) {
        c.l = s[0];
        c.m = s[1];
        c.n = s[2];
    } else {
        if (!s.empty()) c.n = s[0];
        if (s.size() > 1) c.m = s[1];
    }
    return c;
}

json opt_json(const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string results_to_json(const std::vector<TeeResult>& results) {
    json j = header("result");
    json rows = json::array();
    for (const auto& r : results) {
        const auto c = columns(r);
        json e;
        e["model"] = r.model;
        e["geometry"] = to_string(r.geometry);
        e["convention"] = to_string(r.convention);
        e["n"] = opt_json(c.n);
        e["m"] = opt_json(c.m);
        e["l"] = opt_json(c.l);
        e["charges"] = r.charge_labels;
        json idx = json::array();
        for (auto q : r.charges) idx.push_back(q.index);
        e["charge_index"] = idx;
        e["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
        e["entropy"] = r.entropy;
        e["linear_term"] = r.linear_term;
        e["topo_term"] = r.topo_term;
        e["charge_term"] = r.charge_term;
        e["F"] = r.F;
        rows.push_back(std::move(e));
    }
    j["results"] = rows;
    return finish(j);
}

std::vector<TeeResult> results_from_json(const std::string& text) {
    const json j = parse_text(text);
    check_header(j, "result", "");
    reject_unknown(j, {"kind", "version", "results"}, "");
    std::vector<TeeResult> out;
    const auto& rj = need_array(j, "results", "");
    for (std::size_t i = 0; i < rj.size(); ++i) {
        const auto p = at("results", i);
        const auto& e = rj[i];
        require_object(e, p);
        reject_unknown(e, {"model", "geometry", "convention", "n", "m", "l", "charges", "charge_index", "alpha", "entropy",
                           "linear_term", "topo_term", "charge_term", "F"},
                       p);
        TeeResult r;
        r.model = get_string(need(e, "model", p), sub(p, "model"));
        try {
            r.geometry = parse_geometry(get_string(need(e, "geometry", p), sub(p, "geometry")));
        } catch (const InvalidArgument& x) {
            throw ParseError(sub(p, "geometry"), x.what());
        }
        try {
            r.convention = parse_convention(get_string(need(e, "convention", p), sub(p, "convention")));
        } catch (const InvalidArgument& x) {
            throw ParseError(sub(p, "convention"), x.what());
        }
        auto seg = [&](const char* key) -> std::optional<unsigned> {
            const auto& v = need(e, key, p);
            if (v.is_null()) return std::nullopt;
            return static_cast<unsigned>(get_uint(v, sub(p, key)));
        };
        const auto n = seg("n"), m = seg("m"), l = seg("l");
        const bool ok = r.geometry == Geometry::disk      ? n && !m && !l
                        : r.geometry == Geometry::sphere3 ? n && m && l
                                                          : n && m && !l;
        if (!ok) throw ParseError(p, "segment columns n, m, l do not match geometry " + to_string(r.geometry));
        if (r.geometry == Geometry::sphere3) r.segments = {*l, *m, *n};
        else if (m) r.segments = {*n, *m};
        else r.segments = {*n};

        const auto& lj = need_array(e, "charges", p);
        const auto& ij = need_array(e, "charge_index", p);
        if (lj.size() != ij.size()) throw ParseError(sub(p, "charge_index"), "length differs from charges");
        for (std::size_t k = 0; k < lj.size(); ++k) {
            r.charge_labels.push_back(get_string(lj[k], at(sub(p, "charges"), k)));
            r.charges.push_back(ChargeId{get_uint(ij[k], at(sub(p, "charge_index"), k))});
        }
        const auto& aj = need(e, "alpha", p);
        if (!aj.is_null()) r.alpha = get_double(aj, sub(p, "alpha"));
        r.entropy = get_double(need(e, "entropy", p), sub(p, "entropy"));
        r.linear_term = get_double(need(e, "linear_term", p), sub(p, "linear_term"));
        r.topo_term = get_double(need(e, "topo_term", p), sub(p, "topo_term"));
        r.charge_term = get_double(need(e, "charge_term", p), sub(p, "charge_term"));
        r.F = get_double(need(e, "F", p), sub(p, "F"));
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_number(double x, bool fixed17) {
    char buf[64];
    const auto res = fixed17 ? std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17)
                             : std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string opt_text(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

std::string results_to_csv(const std::vector<TeeResult>& results) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : results) {
        const auto c = columns(r);
        std::string charges;
        for (std::size_t i = 0; i < r.charge_labels.size(); ++i) charges += (i ? ";" : "") + r.charge_labels[i];
        const std::vector<std::string> fields{csv_field(r.model),
                                              to_string(r.geometry),
                                              to_string(r.convention),
                                              opt_text(c.n),
                                              opt_text(c.m),
                                              opt_text(c.l),
                                              csv_field(charges),
                                              format_number(r.alpha.value_or(1.0), true),
                                              format_number(r.entropy, true),
                                              format_number(r.linear_term, true),
                                              format_number(r.topo_term, true),
                                              format_number(r.charge_term, true),
                                              format_number(r.F, true)};
        for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
        out += "\n";
    }
    return out;
}

std::string entropy_report_to_json(const EntropyReport& r, double scale, const std::string& units) {
    json j;
    j["vn"] = r.von_neumann * scale;
    json renyi = json::object();
    for (const auto& [a, v] : r.renyi) renyi[format_number(a)] = v * scale;
    j["renyi"] = renyi;
    j["shannon"] = r.shannon_part * scale;
    j["charge"] = r.charge_part * scale;
    j["units"] = units;
    return finish(j);
}

// ---- files ----

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("file", "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InvalidArgument("file", "cannot write '" + path + "'");
}

AnyonModel load_model(const std::string& path, double tol) { return model_from_json(read_file(path), tol); }
void save_model(const AnyonModel& m, const std::string& path) { write_file(path, model_to_json(m)); }
AnyState load_state(const std::string& path, double tol) { return state_from_json(read_file(path), tol); }
void save_state(const SectorState& s, const std::string& path) { write_file(path, state_to_json(s)); }
void save_state(const BipartitePureState& s, const std::string& path) { write_file(path, state_to_json(s)); }
void export_csv(const std::vector<TeeResult>& results, const std::string& path) {
    write_file(path, results_to_csv(results));
}
void export_json(const std::vector<TeeResult>& results, const std::string& path) {
    write_file(path, results_to_json(results));
}

}  // namespace anyon::io
