#include "qproj/document.hpp"

#include <fstream>
#include <limits>

namespace qproj {

using nlohmann::json;

json int_to_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str(); // entries can outgrow 64 bits along long mutation paths
}

Int json_to_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw parse_error("expected an integer (number or decimal string)");
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw parse_error("matrix must be a list of rows");
    IntMatrix m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != j[0].size()) throw parse_error("ragged matrix rows");
        for (std::size_t c = 0; c < j[i].size(); ++c) m(i, c) = json_to_int(j[i][c]);
    }
    return m;
}

json vector_to_json(const std::vector<Int>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(int_to_json(x));
    return out;
}

std::vector<Int> vector_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("vector must be a list");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(json_to_int(x));
    return out;
}

SeedDocument parse_document(const json& j) {
    if (!j.is_object()) throw parse_error("document must be a JSON object");
    if (!j.contains("format_version") || j["format_version"] != 1)
        throw parse_error("missing or unsupported format_version (expected 1)");
    if (!j.contains("B")) throw parse_error("document has no B matrix");

    IntMatrix b = matrix_from_json(j["B"]);
    if (j.contains("n") && j["n"].get<std::size_t>() != b.rows()) throw parse_error("n does not match B");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();

    Seed seed = [&] {
        try {
            return Seed(std::move(b), std::move(labels));
        } catch (const error& ex) {
            throw parse_error(std::string("invalid seed: ") + ex.what());
        }
    }();
    const std::size_t n = seed.size();

    SeedDocument doc{std::move(seed), {}, std::nullopt, std::nullopt, std::nullopt};
    if (j.contains("delta")) {
        if (!j["delta"].is_object()) throw parse_error("delta must map names to vectors");
        for (const auto& [name, vec] : j["delta"].items()) {
            DeltaVector d = vector_from_json(vec);
            if (d.size() != n) throw parse_error("delta '" + name + "' has wrong length");
            doc.deltas[name] = std::move(d);
        }
    }
    if (j.contains("sequence")) {
        std::vector<std::size_t> seq;
        for (const auto& x : j["sequence"]) {
            const std::int64_t v = x.get<std::int64_t>();
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw parse_error("sequence vertex out of range (1-based)");
            seq.push_back(static_cast<std::size_t>(v - 1));
        }
        doc.sequence = std::move(seq);
    }
    if (j.contains("arrows")) {
        Quiver q;
        q.n = n;
        for (const auto& a : j["arrows"]) {
            if (!a.is_array() || a.size() != 2) throw parse_error("arrow must be [source, target]");
            const std::int64_t s = a[0].get<std::int64_t>(), t = a[1].get<std::int64_t>();
            if (s < 1 || t < 1 || static_cast<std::size_t>(s) > n || static_cast<std::size_t>(t) > n)
                throw parse_error("arrow endpoint out of range (1-based)");
            q.arrows.push_back({static_cast<std::size_t>(s - 1), static_cast<std::size_t>(t - 1)});
        }
        doc.arrows = std::move(q);
    }
    if (j.contains("frame")) {
        const auto& f = j["frame"];
        FrameDoc fd{matrix_from_json(f.at("Delta")), matrix_from_json(f.at("C")), std::nullopt, std::nullopt};
        if (f.contains("eps_row")) {
            const std::int64_t r = f["eps_row"].get<std::int64_t>();
            if (r < 1 || static_cast<std::size_t>(r) > n) throw parse_error("frame eps_row out of range");
            fd.eps_row = static_cast<std::size_t>(r - 1);
        }
        if (f.contains("sign")) {
            const std::string s = f["sign"].get<std::string>();
            if (s == "+")
                fd.sign = 1;
            else if (s == "-")
                fd.sign = -1;
            else
                throw parse_error("frame sign must be '+' or '-'");
        }
        doc.frame = std::move(fd);
    }
    return doc;
}

SeedDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw parse_error(std::string("JSON parse failure: ") + ex.what());
    }
    return parse_document(j);
}

json document_to_json(const SeedDocument& doc) {
    json j;
    j["format_version"] = 1;
    j["n"] = doc.seed.size();
    j["B"] = matrix_to_json(doc.seed.B);
    j["labels"] = doc.seed.labels;
    if (!doc.deltas.empty()) {
        json d = json::object();
        for (const auto& [name, vec] : doc.deltas) d[name] = vector_to_json(vec);
        j["delta"] = std::move(d);
    }
    if (doc.sequence) {
        json s = json::array();
        for (std::size_t k : *doc.sequence) s.push_back(k + 1);
        j["sequence"] = std::move(s);
    }
    if (doc.arrows) {
        json a = json::array();
        for (const auto& [s, t] : doc.arrows->arrows) a.push_back({s + 1, t + 1});
        j["arrows"] = std::move(a);
    }
    if (doc.frame) {
        json f;
        f["Delta"] = matrix_to_json(doc.frame->delta);
        f["C"] = matrix_to_json(doc.frame->c);
        if (doc.frame->eps_row) f["eps_row"] = *doc.frame->eps_row + 1;
        if (doc.frame->sign) f["sign"] = *doc.frame->sign > 0 ? "+" : "-";
        j["frame"] = std::move(f);
    }
    return j;
}

json projection_to_json(const ProjectionResult& r) {
    json j;
    j["B_proj"] = matrix_to_json(r.B_proj);
    j["C_eperp"] = matrix_to_json(r.C_eperp);
    json seq = json::array();
    for (std::size_t k : r.sequence.steps) seq.push_back(k + 1);
    j["sequence"] = std::move(seq);
    j["terminal_sign"] = r.terminal_sign > 0 ? "+" : "-";
    j["terminal_vertex"] = r.terminal_vertex + 1;
    json frame;
    frame["Delta"] = matrix_to_json(r.complement.frame.delta());
    frame["C"] = matrix_to_json(r.complement.frame.c());
    frame["eps_row"] = r.complement.eps_row + 1;
    frame["sign"] = r.complement.sign > 0 ? "+" : "-";
    j["complement"] = std::move(frame);
    json comp_rows = json::array();
    for (std::size_t i = 0; i < r.complement.size(); ++i)
        if (i != r.complement.eps_row)
            comp_rows.push_back(vector_to_json(r.complement.frame.delta().row(i)));
    j["complement_rows"] = std::move(comp_rows);
    j[r.terminal_sign < 0 ? "gamma_plus" : "gamma_minus"] = vector_to_json(r.gamma);
    const CanonicalProjection canon = canonicalize(r.C_eperp, r.B_proj);
    j["canonical"] = {{"C_eperp", matrix_to_json(canon.C_eperp)}, {"B_proj", matrix_to_json(canon.B_proj)}};
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    if (r.full_sequence) {
        json fs = json::array();
        for (std::size_t k : r.full_sequence->steps) fs.push_back(k + 1);
        j["full_sequence"] = std::move(fs);
        j["B_terminal"] = matrix_to_json(*r.B_terminal);
        j["B_terminal_eps_last"] = matrix_to_json(*r.B_terminal_eps_last);
        j["deleted_vertex"] = *r.deleted_vertex + 1;
    }
    return j;
}

json report_to_json(const VerifyReport& rep) {
    json j;
    j["convention"] = rep.convention;
    j["rigid_family"] = rep.rigid_family;
    j["unimodular"] = rep.unimodular;
    j["sign_pattern"] = rep.sign_pattern;
    j["plus_certificate_exact"] = rep.plus_certificate_exact;
    j["plus_minus_agree"] = rep.plus_minus_agree;
    j["hom_e_identity_ok"] = rep.hom_e_identity_ok;
    j["passed"] = rep.passed();
    j["notes"] = rep.notes;
    json tv = json::object();
    for (const auto& [k, v] : rep.trial_values) tv[k] = v;
    j["trial_values"] = std::move(tv);
    return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

} // namespace qproj
