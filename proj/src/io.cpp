#include "caymin/io.hpp"

#include <fstream>
#include <sstream>

#include "caymin/errors.hpp"

namespace caymin {

Json ball_to_json(const Ball& ball) {
  Json j;
  Json verts = Json::array();
  for (int v = 0; v < ball.vertex_count(); ++v)
    verts.push_back({{"index", v}, {"key", ball.vertices[v].key}, {"dist", ball.dist[v]}});
  Json edges = Json::array();
  for (auto [u, v] : ball.edges) edges.push_back({u, v});
  Json gens = Json::array();
  for (const auto& g : ball.gens.elements) gens.push_back(g.key);
  j["vertices"] = std::move(verts);
  j["edges"] = std::move(edges);
  j["radius"] = ball.radius;
  j["gens"] = std::move(gens);
  return j;
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.n();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

Graph graph_from_json(const Json& j) {
  try {
    int n;
    if (j.contains("n"))
      n = j.at("n").get<int>();
    else if (j.contains("vertices"))
      n = static_cast<int>(j.at("vertices").size());
    else
      throw ParseError("graph document needs 'n' or 'vertices'");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph(n, std::move(edges));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad graph document: ") + e.what());
  }
}

Json embedding_to_json(const MinorEmbedding& emb) {
  Json j;
  j["pattern"] = graph_to_json(emb.pattern);
  Json sets = Json::array();
  for (const auto& bs : emb.branch_sets) sets.push_back(bs);
  j["branch_sets"] = std::move(sets);
  Json witness = Json::object();
  for (const auto& [pe, he] : emb.edge_witness)
    witness[std::to_string(pe.first) + "-" + std::to_string(pe.second)] = {he.first,
                                                                           he.second};
  j["edge_witness"] = std::move(witness);
  return j;
}

MinorEmbedding embedding_from_json(const Json& j) {
  try {
    MinorEmbedding emb;
    emb.pattern = graph_from_json(j.at("pattern"));
    for (const auto& bs : j.at("branch_sets"))
      emb.branch_sets.push_back(bs.get<std::vector<int>>());
    for (const auto& [key, val] : j.at("edge_witness").items()) {
      auto dash = key.find('-');
      if (dash == std::string::npos)
        throw ParseError("edge witness key must look like 'i-j'");
      int u = std::stoi(key.substr(0, dash));
      int v = std::stoi(key.substr(dash + 1));
      emb.edge_witness[{u, v}] = {val.at(0).get<int>(), val.at(1).get<int>()};
    }
    return emb;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad certificate document: ") + e.what());
  }
}

Json end_profile_to_json(const EndProfile& profile) {
  Json j;
  j["r"] = profile.inner_radius;
  j["R"] = profile.outer_radius;
  Json comps = Json::array();
  for (const auto& c : profile.components)
    comps.push_back({{"size", c.vertices.size()}, {"live", c.live}});
  j["components"] = std::move(comps);
  j["live_count"] = profile.live_count;
  return j;
}

std::string ball_to_dot(const Ball& ball) {
  std::ostringstream out;
  out << "graph ball {\n";
  for (int v = 0; v < ball.vertex_count(); ++v)
    out << "  n" << v << " [label=\"" << ball.vertices[v].key << "\" dist="
        << ball.dist[v] << "];\n";
  for (auto [u, v] : ball.edges) out << "  n" << u << " -- n" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph g {\n";
  for (int v = 0; v < g.n(); ++v) out << "  n" << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  n" << u << " -- n" << v << ";\n";
  out << "}\n";
  return out.str();
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("cannot parse " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace caymin
