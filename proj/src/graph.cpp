#include "knotsurf/graph.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace knotsurf {

using nlohmann::json;

const GraphEdge& WeightedPlanarGraph::edge_by_id(int id) const {
    return edges[edge_index(id)];
}

int WeightedPlanarGraph::edge_index(int id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return (int)i;
    throw GraphError("unknown edge id " + std::to_string(id));
}

void WeightedPlanarGraph::validate() {
    if (vertex_ids.empty()) throw GraphError("empty graph");
    std::set<int> vset(vertex_ids.begin(), vertex_ids.end());
    if (vset.size() != vertex_ids.size()) throw GraphError("duplicate vertex id");
    for (auto& e : edges) {
        if (e.weight == 0)
            throw GraphError("zero weight on edge " + std::to_string(e.id));
        for (int s = 0; s < 2; ++s)
            if (!vset.count(e.ends[s]))
                throw GraphError("edge " + std::to_string(e.id) + " has unknown endpoint");
    }

    // Rotation consistency: each vertex's rotation lists exactly its incident
    // edge-ends; fill the slot table.
    std::map<int, int> seen_ends;  // edge index -> ends placed
    for (int v : vertex_ids) {
        auto it = rotations.find(v);
        if (it == rotations.end()) throw GraphError("missing rotation for vertex " + std::to_string(v));
        int slot = 0;
        for (auto& [ei, end] : it->second) {
            if (ei < 0 || ei >= (int)edges.size()) throw GraphError("rotation references bad edge");
            if (edges[ei].ends[end] != v)
                throw GraphError("rotation at vertex " + std::to_string(v) + " lists non-incident edge end");
            if (edges[ei].slot[end] != -1)
                throw GraphError("edge end listed twice in rotations");
            edges[ei].slot[end] = slot++;
            seen_ends[ei]++;
        }
    }
    for (size_t i = 0; i < edges.size(); ++i)
        if (seen_ends[(int)i] != 2)
            throw GraphError("edge " + std::to_string(edges[i].id) + " missing from rotations");

    // Connectivity.
    std::map<int, std::vector<int>> adj;
    for (auto& e : edges) {
        adj[e.ends[0]].push_back(e.ends[1]);
        adj[e.ends[1]].push_back(e.ends[0]);
    }
    std::set<int> vis;
    std::vector<int> stack{vertex_ids[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (!vis.insert(v).second) continue;
        for (int w : adj[v]) stack.push_back(w);
    }
    if (vis.size() != vertex_ids.size()) throw GraphError("disconnected graph");

    // Euler check V - E + F = 2 on the rotation-system faces.
    int F = (int)faces().size();
    if (vertex_count() - edge_count() + F != 2)
        throw GraphError("rotation system is not planar (Euler check failed)");
}

std::vector<Face> WeightedPlanarGraph::faces() const {
    // next dart in the face orbit: arrive at the far end of `d`, step to the
    // next rotation slot counterclockwise, leave along that edge end.
    auto next_dart = [&](const Dart& d) -> Dart {
        const GraphEdge& e = edges[d.edge];
        int arrive_end = 1 - d.from_end;
        int v = e.ends[arrive_end];
        auto& rot = rotations.at(v);
        int slot = e.slot[arrive_end];
        auto [ne, nend] = rot[(slot + 1) % rot.size()];
        return Dart{ne, nend};
    };

    std::vector<Face> result;
    std::set<std::pair<int, int>> used;
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        for (int s = 0; s < 2; ++s) {
            if (used.count({(int)ei, s})) continue;
            Face f;
            Dart d{(int)ei, s};
            while (!used.count({d.edge, d.from_end})) {
                used.insert({d.edge, d.from_end});
                f.boundary.push_back(d);
                d = next_dart(d);
            }
            result.push_back(std::move(f));
        }
    }

    // Mark the outer face: the one containing the hinted dart, defaulting to
    // the first listed edge's first side.
    Dart hint{0, 0};
    if (outer_face_hint) {
        hint.edge = edge_index(outer_face_hint->first);
        hint.from_end = outer_face_hint->second;
    }
    for (auto& f : result)
        f.is_outer = std::any_of(f.boundary.begin(), f.boundary.end(),
                                 [&](const Dart& d) { return d == hint; });
    return result;
}

WeightedPlanarGraph WeightedPlanarGraph::mirrored() const {
    // Mirror image: negate weights and reverse every rotation order.
    WeightedPlanarGraph m = *this;
    for (auto& e : m.edges) {
        e.weight = -e.weight;
        e.slot[0] = e.slot[1] = -1;
    }
    for (auto& [v, rot] : m.rotations) std::reverse(rot.begin(), rot.end());
    m.validate();
    return m;
}

WeightedPlanarGraph parse_graph(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw GraphError(std::string("malformed graph JSON: ") + e.what());
    }
    WeightedPlanarGraph g;
    try {
        for (auto& v : j.at("vertices")) g.vertex_ids.push_back(v.get<int>());
        std::map<int, int> id_to_index;
        for (auto& je : j.at("edges")) {
            GraphEdge e;
            e.id = je.at("id").get<int>();
            e.ends[0] = je.at("ends").at(0).get<int>();
            e.ends[1] = je.at("ends").at(1).get<int>();
            e.weight = je.at("weight").get<long long>();
            if (id_to_index.count(e.id)) throw GraphError("duplicate edge id");
            id_to_index[e.id] = (int)g.edges.size();
            g.edges.push_back(e);
        }
        for (auto& [vs, rot] : j.at("rotations").items()) {
            int v = std::stoi(vs);
            std::map<int, int> occurrences;
            std::vector<std::pair<int, int>> slots;
            for (auto& eidj : rot) {
                int eid = eidj.get<int>();
                if (!id_to_index.count(eid)) throw GraphError("rotation references unknown edge");
                int ei = id_to_index[eid];
                const GraphEdge& e = g.edges[ei];
                int end;
                if (e.ends[0] == v && e.ends[1] == v) {
                    end = occurrences[eid]++;  // self-loop: first listing is end 0
                    if (end > 1) throw GraphError("self-loop listed more than twice");
                } else if (e.ends[0] == v) {
                    end = 0;
                } else if (e.ends[1] == v) {
                    end = 1;
                } else {
                    throw GraphError("rotation lists non-incident edge");
                }
                slots.push_back({ei, end});
            }
            g.rotations[v] = std::move(slots);
        }
        if (j.contains("outer_face")) {
            auto& of = j["outer_face"];
            if (of.is_number_integer())
                g.outer_face_hint = {of.get<int>(), 0};
            else
                g.outer_face_hint = {of.at(0).get<int>(), of.at(1).get<int>()};
        }
    } catch (const json::exception& e) {
        throw GraphError(std::string("malformed graph JSON: ") + e.what());
    }
    g.validate();
    return g;
}

std::string graph_to_json(const WeightedPlanarGraph& g) {
    json j;
    j["vertices"] = g.vertex_ids;
    j["edges"] = json::array();
    for (auto& e : g.edges)
        j["edges"].push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}, {"weight", e.weight}});
    json rot = json::object();
    for (auto& [v, slots] : g.rotations) {
        json lst = json::array();
        for (auto& [ei, end] : slots) lst.push_back(g.edges[ei].id);
        rot[std::to_string(v)] = lst;
    }
    j["rotations"] = rot;
    if (g.outer_face_hint)
        j["outer_face"] = {g.outer_face_hint->first, g.outer_face_hint->second};
    return j.dump(2);
}

}  // namespace knotsurf
