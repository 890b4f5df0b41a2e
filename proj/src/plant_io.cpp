#include "hypersynth/plant_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypersynth/error.hpp"

namespace hypersynth {

using nlohmann::json;

namespace {

StateId lookup(const Plant& p, const json& v) {
    if (!v.is_string()) throw FormatError("state reference must be a string");
    auto id = p.find(v.get<std::string>());
    if (!id) throw DanglingReference(v.get<std::string>());
    return *id;
}

template <class Add>
void read_edges(const Plant& p, const json& arr, const char* key, Add add) {
    if (!arr.is_array()) throw FormatError(std::string(key) + " must be an array");
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2) throw FormatError(std::string(key) + " entries must be [from,to] pairs");
        add(lookup(p, e[0]), lookup(p, e[1]));
    }
}

}  // namespace

Plant plant_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("plant must be a JSON object");
    static const std::set<std::string> known{"states", "init", "labels", "controllable", "uncontrollable"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw FormatError("unknown plant key: " + it.key());
    if (!j.contains("states") || !j["states"].is_array()) throw FormatError("plant needs a states array");
    if (!j.contains("init")) throw FormatError("plant needs init");

    Plant p;
    for (const auto& s : j["states"]) {
        if (!s.is_string()) throw FormatError("state ids must be strings");
        p.add_state(s.get<std::string>());
    }
    Plant out;
    std::vector<Letter> labels(p.size());
    if (j.contains("labels")) {
        const auto& l = j["labels"];
        if (!l.is_object()) throw FormatError("labels must be an object");
        for (auto it = l.begin(); it != l.end(); ++it) {
            auto id = p.find(it.key());
            if (!id) throw DanglingReference(it.key());
            if (!it.value().is_array()) throw FormatError("label of " + it.key() + " must be an array");
            for (const auto& a : it.value()) {
                if (!a.is_string()) throw FormatError("propositions must be strings");
                labels[*id].insert(a.get<std::string>());
            }
        }
    }
    for (StateId s = 0; s < p.size(); ++s) out.add_state(p.name(s), labels[s]);
    out.set_init(lookup(out, j["init"]));
    if (j.contains("controllable"))
        read_edges(out, j["controllable"], "controllable", [&](StateId a, StateId b) { out.add_controllable(a, b); });
    if (j.contains("uncontrollable"))
        read_edges(out, j["uncontrollable"], "uncontrollable", [&](StateId a, StateId b) { out.add_uncontrollable(a, b); });
    validate(out);
    return out;
}

json plant_to_json(const Plant& p) {
    json j;
    j["states"] = json::array();
    j["labels"] = json::object();
    for (StateId s = 0; s < p.size(); ++s) {
        j["states"].push_back(p.name(s));
        j["labels"][p.name(s)] = json(std::vector<std::string>(p.label(s).begin(), p.label(s).end()));
    }
    j["init"] = p.name(p.init());
    auto edges = [&](const std::set<Edge>& set) {
        json a = json::array();
        for (auto e : set) a.push_back({p.name(e.from), p.name(e.to)});
        return a;
    };
    j["controllable"] = edges(p.controllable());
    j["uncontrollable"] = edges(p.uncontrollable());
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

Plant read_plant_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    return plant_from_json(j);
}

void write_plant_file(const Plant& p, const std::string& path) { write_text_file(path, plant_to_json(p).dump(2) + "\n"); }

std::string plant_hash(const Plant& p) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : plant_to_json(p).dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_dot(const Plant& p) {
    std::ostringstream os;
    os << "digraph plant {\n";
    for (StateId s = 0; s < p.size(); ++s) {
        os << "  \"" << p.name(s) << "\" [label=\"" << p.name(s) << "\\n" << to_string(p.label(s)) << "\"";
        if (s == p.init()) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (auto e : p.controllable()) os << "  \"" << p.name(e.from) << "\" -> \"" << p.name(e.to) << "\";\n";
    for (auto e : p.uncontrollable())
        os << "  \"" << p.name(e.from) << "\" -> \"" << p.name(e.to) << "\" [style=dashed];\n";
    os << "}\n";
    return os.str();
}

}  // namespace hypersynth
