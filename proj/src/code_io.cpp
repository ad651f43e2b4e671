#include "rmc/code_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rmc {

Json field_to_json(const FieldTower& f) {
    return Json{{"p", f.p()}, {"e", f.e()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

FieldPtr field_from_json(const Json& j) {
    try {
        std::optional<std::vector<unsigned>> mod;
        if (j.contains("modulus") && !j["modulus"].is_null()) mod = j["modulus"].get<std::vector<unsigned>>();
        return make_field(j.at("p").get<unsigned>(), j.value("e", 1u), j.at("m").get<unsigned>(), mod);
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError(std::string("invalid field spec: ") + ex.what());
    }
}

Json elem_to_json(const FieldTower& f, Elem a) { return f.coeffs(a); }

Elem parse_elem(const FieldTower& f, const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("empty field element");
    for (const std::string prefix : {"a^", "alpha^", "\xce\xb1^"}) {
        if (s.rfind(prefix, 0) == 0) {
            try {
                std::size_t used = 0;
                long long k = std::stoll(s.substr(prefix.size()), &used);
                if (used != s.size() - prefix.size()) throw DomainError("bad exponent");
                return f.alpha_pow(k);
            } catch (const std::logic_error&) {
                throw DomainError("bad power notation: " + raw);
            }
        }
    }
    if (s == "a" || s == "alpha" || s == "\xce\xb1") return f.alpha();
    try {
        std::size_t used = 0;
        long long c = std::stoll(s, &used);
        if (used == s.size()) return f.from_int(c);
    } catch (const std::logic_error&) {
    }
    throw DomainError("cannot parse field element: " + raw);
}

Elem elem_from_json(const FieldTower& f, const Json& j) {
    if (j.is_array()) return f.from_coeffs(j.get<std::vector<unsigned>>());
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (j.is_string()) return parse_elem(f, j.get<std::string>());
    throw DomainError("field element must be a coefficient array or power notation");
}

Vec parse_vec(const FieldTower& f, const std::string& csv) {
    Vec out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_elem(f, item));
    return out;
}

namespace {

Json vec_to_json(const FieldTower& f, std::span<const Elem> v) {
    Json arr = Json::array();
    for (Elem x : v) arr.push_back(elem_to_json(f, x));
    return arr;
}

Vec vec_from_json(const FieldTower& f, const Json& j) {
    Vec out;
    for (const auto& x : j) out.push_back(elem_from_json(f, x));
    return out;
}

}  // namespace

Json spec_to_json(const FieldTower& f, const CodeSpec& s) {
    Json j{{"family", family_name(s.family)}, {"k", s.k}, {"theta", s.theta}, {"g", vec_to_json(f, s.g)}};
    if (!s.eta.empty()) j["eta"] = vec_to_json(f, s.eta);
    if (!s.t.empty()) j["t"] = s.t;
    if (!s.h.empty()) j["h"] = s.h;
    if (!s.enforce_norm_condition) j["enforce_norm_condition"] = false;
    return j;
}

CodeSpec spec_from_json(const FieldTower& f, const Json& j) {
    try {
        CodeSpec s;
        s.family = parse_family(j.at("family").get<std::string>());
        s.k = j.at("k").get<std::size_t>();
        s.theta = j.value("theta", 1ll);
        s.g = vec_from_json(f, j.at("g"));
        if (j.contains("eta")) {
            const auto& e = j["eta"];
            s.eta = e.is_array() && !e.empty() && (e[0].is_array() || e[0].is_string())
                        ? vec_from_json(f, e)
                        : Vec{elem_from_json(f, e)};
        }
        if (j.contains("t")) s.t = j["t"].get<std::vector<long long>>();
        if (j.contains("h")) s.h = j["h"].get<std::vector<long long>>();
        s.b = j.value("b", 0ll);
        s.enforce_norm_condition = j.value("enforce_norm_condition", true);
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError(std::string("invalid code spec: ") + ex.what());
    }
}

Json code_to_json(const LinearCode& c, const std::optional<CodeSpec>& provenance) {
    const FieldTower& f = *c.field();
    Json gen = Json::array();
    for (std::size_t i = 0; i < c.k(); ++i) gen.push_back(vec_to_json(f, c.gen().row(i)));
    Json j{{"field", field_to_json(f)}, {"n", c.n()}, {"k", c.k()}, {"gen", gen}};
    if (provenance) j["provenance"] = spec_to_json(f, *provenance);
    return j;
}

CodeFile code_from_json(const Json& j) {
    try {
        FieldPtr f = field_from_json(j.at("field"));
        const auto n = j.at("n").get<std::size_t>();
        Matrix g(f, 0, n);
        for (const auto& row : j.at("gen")) {
            Vec v = vec_from_json(*f, row);
            if (v.size() != n) throw DomainError("generator row length differs from n");
            g.append_row(v);
        }
        LinearCode c(g);
        if (j.contains("k") && j["k"].get<std::size_t>() != c.k())
            throw DomainError("generator rows are not independent: rank differs from k");
        std::optional<CodeSpec> prov;
        if (j.contains("provenance") && !j["provenance"].is_null()) prov = spec_from_json(*f, j["provenance"]);
        return {c, prov};
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError(std::string("invalid code file: ") + ex.what());
    }
}

CodeFile read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open code file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError("malformed JSON in " + path + ": " + ex.what());
    }
    return code_from_json(j);
}

void write_code_file(const std::string& path, const LinearCode& c, const std::optional<CodeSpec>& provenance) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write code file: " + path);
    out << code_to_json(c, provenance).dump(2) << '\n';
}

}  // namespace rmc
