#include "cologic/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cologic {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& message)
{
    throw InputError(source + (where.empty() ? "" : " at " + where) + ": " + message);
}

int integer_at(const Json& j, const std::string& source, const std::string& where)
{
    if (!j.is_number_integer()) {
        fail(source, where, "expected an integer, found " + j.dump());
    }
    const auto value = j.get<long long>();
    if (value < 0 || value > 1'000'000) {
        fail(source, where, "integer " + std::to_string(value) + " out of range");
    }
    return static_cast<int>(value);
}

const Json& member(const Json& j, const char* key, const std::string& source)
{
    if (!j.is_object()) {
        fail(source, "", "expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(source, "", std::string("missing key \"") + key + "\"");
    }
    return *it;
}

std::vector<int> int_list(const Json& j, const std::string& source, const std::string& where)
{
    if (!j.is_array()) {
        fail(source, where, "expected an array of integers");
    }
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(integer_at(j[k], source, where + "/" + std::to_string(k)));
    }
    return out;
}

Arrangement map_onto(const Json& j, int target, const std::string& source, const std::string& where)
{
    try {
        return Arrangement(int_list(j, source, where), target);
    } catch (const InputError& e) {
        if (std::string(e.what()).rfind(source, 0) == 0) {
            throw;
        }
        fail(source, where, e.what());
    }
}

} // namespace

Json parse_json(std::string_view text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path);
}

FiniteGraph graph_from_json(const Json& j, const std::string& source)
{
    const int n = integer_at(member(j, "vertices", source), source, "/vertices");
    if (n < 1 || n > kMaxAtoms) {
        fail(source, "/vertices", "vertex count must lie in [1, " + std::to_string(kMaxAtoms) + "], got " +
                                      std::to_string(n));
    }
    const Json& edges = member(j, "edges", source);
    if (!edges.is_array()) {
        fail(source, "/edges", "expected an array of [i, j] pairs");
    }
    FiniteGraph g(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string where = "/edges/" + std::to_string(k);
        const auto pair = int_list(edges[k], source, where);
        if (pair.size() != 2) {
            fail(source, where, "an edge has exactly two endpoints");
        }
        const int u = pair[0];
        const int v = pair[1];
        if (u >= n || v >= n) {
            fail(source, where, "endpoint out of range for " + std::to_string(n) + " vertices");
        }
        if (u == v) {
            fail(source, where, "loops are implicit and must not be listed");
        }
        if (u > v) {
            fail(source, where, "edges are written [i, j] with i < j");
        }
        if (g.adjacent(u, v)) {
            fail(source, where, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        g.add_edge(u, v);
    }
    return g;
}

Json to_json(const FiniteGraph& g)
{
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return Json{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

FiniteGraph load_graph(const std::string& path)
{
    return graph_from_json(read_json_file(path), path);
}

GoodTuple tuple_from_json(const Json& j, const std::string& source)
{
    if (!j.is_array() || j.empty()) {
        fail(source, "", "expected a nonempty array of atom lists");
    }
    GoodTuple out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string where = "/" + std::to_string(k);
        Element e;
        for (int atom : int_list(j[k], source, where)) {
            if (atom >= kMaxAtoms) {
                fail(source, where, "atom " + std::to_string(atom) + " out of range");
            }
            if (e.contains(atom)) {
                fail(source, where, "atom " + std::to_string(atom) + " listed twice");
            }
            e |= Element::singleton(atom);
        }
        out.push_back(e);
    }
    return out;
}

Json to_json(const GoodTuple& tuple)
{
    Json out = Json::array();
    for (Element e : tuple) {
        out.push_back(e.atoms());
    }
    return out;
}

Arrangement arrangement_from_json(const Json& j, const std::string& source)
{
    const auto images = int_list(j, source, "");
    if (images.empty()) {
        fail(source, "", "an arrangement needs at least one image");
    }
    try {
        return Arrangement::from_images(images);
    } catch (const InputError& e) {
        fail(source, "", e.what());
    }
}

Json to_json(const Arrangement& f)
{
    return Json(std::vector<int>(f.images().begin(), f.images().end()));
}

Json to_json(const FraisseSequence& seq)
{
    Json bonding = Json::array();
    for (const Arrangement& b : seq.bonding) {
        bonding.push_back(to_json(b));
    }
    Json composites = Json::array();
    for (const auto& row : seq.composites) {
        Json r = Json::array();
        for (const Arrangement& c : row) {
            r.push_back(to_json(c));
        }
        composites.push_back(std::move(r));
    }
    Json ledger = Json::array();
    for (const Obligation& ob : seq.ledger) {
        Json entry{{"stage", ob.stage}, {"map", to_json(ob.map)}};
        if (ob.discharged_at) {
            entry["status"] = "discharged";
            entry["discharged_at"] = *ob.discharged_at;
            entry["witness"] = to_json(*ob.witness);
        } else {
            entry["status"] = "queued";
        }
        ledger.push_back(std::move(entry));
    }
    return Json{{"bound", seq.bound},
                {"stages", seq.stages},
                {"bonding", std::move(bonding)},
                {"composites", std::move(composites)},
                {"ledger", std::move(ledger)}};
}

FraisseSequence sequence_from_json(const Json& j, const std::string& source)
{
    FraisseSequence seq;
    seq.bound = integer_at(member(j, "bound", source), source, "/bound");
    seq.stages = int_list(member(j, "stages", source), source, "/stages");
    if (seq.stages.empty()) {
        fail(source, "/stages", "a sequence needs at least one stage");
    }
    for (std::size_t k = 0; k < seq.stages.size(); ++k) {
        if (seq.stages[k] < 1) {
            fail(source, "/stages/" + std::to_string(k), "stage sizes must be positive");
        }
    }
    const auto size_of = [&](std::size_t k) { return seq.stages[k]; };

    const Json& bonding = member(j, "bonding", source);
    if (!bonding.is_array() || bonding.size() + 1 != seq.stages.size()) {
        fail(source, "/bonding", "expected one bonding map per consecutive pair of stages");
    }
    for (std::size_t k = 0; k < bonding.size(); ++k) {
        const std::string where = "/bonding/" + std::to_string(k);
        Arrangement b = map_onto(bonding[k], size_of(k), source, where);
        if (b.source() != size_of(k + 1)) {
            fail(source, where, "bonding map must have one image per vertex of stage " + std::to_string(k + 1));
        }
        seq.bonding.push_back(std::move(b));
    }

    const Json& composites = member(j, "composites", source);
    if (!composites.is_array() || composites.size() != seq.stages.size()) {
        fail(source, "/composites", "expected one composite row per stage");
    }
    for (std::size_t t = 0; t < composites.size(); ++t) {
        const Json& row = composites[t];
        if (!row.is_array() || row.size() != t + 1) {
            fail(source, "/composites/" + std::to_string(t), "row must list composites onto stages 0.." + std::to_string(t));
        }
        std::vector<Arrangement> out;
        for (std::size_t s = 0; s <= t; ++s) {
            out.push_back(map_onto(row[s], size_of(s), source,
                                   "/composites/" + std::to_string(t) + "/" + std::to_string(s)));
        }
        seq.composites.push_back(std::move(out));
    }

    const Json& ledger = member(j, "ledger", source);
    if (!ledger.is_array()) {
        fail(source, "/ledger", "expected an array");
    }
    for (std::size_t k = 0; k < ledger.size(); ++k) {
        const std::string where = "/ledger/" + std::to_string(k);
        const Json& entry = ledger[k];
        const int stage = integer_at(member(entry, "stage", source), source, where + "/stage");
        if (stage >= static_cast<int>(seq.stages.size())) {
            fail(source, where + "/stage", "no such stage");
        }
        Obligation ob{stage, map_onto(member(entry, "map", source), size_of(static_cast<std::size_t>(stage)), source,
                                      where + "/map"),
                      std::nullopt, std::nullopt};
        if (entry.contains("discharged_at")) {
            const int t = integer_at(entry["discharged_at"], source, where + "/discharged_at");
            if (t >= static_cast<int>(seq.stages.size())) {
                fail(source, where + "/discharged_at", "no such stage");
            }
            ob.discharged_at = t;
            ob.witness = map_onto(member(entry, "witness", source), ob.map.source(), source, where + "/witness");
        }
        seq.ledger.push_back(std::move(ob));
    }

    if (auto defect = sequence_defect(seq); !defect.empty()) {
        fail(source, "", "inconsistent sequence: " + defect);
    }
    return seq;
}

} // namespace cologic
