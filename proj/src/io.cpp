#include "limid/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace limid {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormatTag = "limid-1";

std::vector<int> parse_ids(const json& j) {
    std::vector<int> out;
    for (const auto& e : j) out.push_back(e.get<int>());
    return out;
}

Table parse_table(const Limid& limid, const std::vector<int>& vars, const json& floats) {
    std::vector<int> cards;
    for (int v : vars) cards.push_back(limid.cardinality(v));
    Table t = Table::zeros(vars, cards);
    if (floats.size() != t.size())
        throw ParseError("syntax-error",
                         "table has " + std::to_string(floats.size()) + " values, expected " +
                             std::to_string(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) t.values[i] = floats[i].get<double>();
    return t;
}

Limid from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("format") || doc["format"] != kFormatTag)
        throw ParseError("syntax-error", "missing or unsupported format tag");

    Limid limid;
    for (const auto& jv : doc.at("variables")) {
        Variable v;
        v.id = jv.at("id").get<int>();
        v.name = jv.at("name").get<std::string>();
        v.cardinality = jv.at("cardinality").get<int>();
        limid.variables.push_back(v);
    }
    for (const auto& jn : doc.at("nodes")) {
        NodeDef n;
        n.id = jn.at("id").get<int>();
        const std::string kind = jn.at("kind").get<std::string>();
        if (kind == "chance")
            n.kind = NodeKind::Chance;
        else if (kind == "decision")
            n.kind = NodeKind::Decision;
        else
            throw ParseError("syntax-error", "unknown node kind '" + kind + "'");
        n.parents = parse_ids(jn.at("parents"));
        if (n.kind == NodeKind::Chance) {
            std::vector<int> fa = n.parents;
            fa.push_back(n.id);
            n.cpt = parse_table(limid, fa, jn.at("cpt"));
        }
        limid.nodes.push_back(std::move(n));
    }
    if (doc.contains("values")) {
        for (const auto& ju : doc.at("values")) {
            ValueDef u;
            u.name = ju.at("name").get<std::string>();
            u.parents = parse_ids(ju.at("parents"));
            u.utility = parse_table(limid, u.parents, ju.at("utility"));
            limid.values.push_back(std::move(u));
        }
    }
    auto diags = validate(limid);
    if (!diags.empty()) {
        std::ostringstream msg;
        for (const auto& d : diags) msg << d.rule << " (node " << d.node_id << ") ";
        throw ParseError("semantic-error", msg.str());
    }
    return limid;
}

}  // namespace

Limid parse_limid(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("syntax-error", e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("syntax-error", e.what());
    }
    try {
        return from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("syntax-error", e.what());
    }
}

Limid parse_limid_string(const std::string& text) {
    std::istringstream in(text);
    return parse_limid(in);
}

Limid load_limid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("syntax-error", "cannot open " + path);
    return parse_limid(in);
}

std::string serialize_limid(const Limid& limid) {
    json doc;
    doc["format"] = kFormatTag;
    doc["variables"] = json::array();
    for (const auto& v : limid.variables) {
        doc["variables"].push_back({{"id", v.id}, {"name", v.name}, {"cardinality", v.cardinality}});
    }
    doc["nodes"] = json::array();
    for (const auto& n : limid.nodes) {
        json jn;
        jn["id"] = n.id;
        jn["kind"] = n.kind == NodeKind::Chance ? "chance" : "decision";
        jn["parents"] = n.parents;
        if (n.kind == NodeKind::Chance) jn["cpt"] = n.cpt.values;
        doc["nodes"].push_back(std::move(jn));
    }
    doc["values"] = json::array();
    for (const auto& u : limid.values) {
        doc["values"].push_back(
            {{"name", u.name}, {"parents", u.parents}, {"utility", u.utility.values}});
    }
    return doc.dump(2) + "\n";
}

void save_limid(const Limid& limid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SolverError("io-error", "cannot write " + path);
    out << serialize_limid(limid);
}

}  // namespace limid
