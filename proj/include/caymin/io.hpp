#pragma once

#include <string>

#include "json.hpp"

#include "caymin/ball.hpp"
#include "caymin/ends.hpp"
#include "caymin/graph.hpp"
#include "caymin/minor.hpp"

namespace caymin {

// All emitted JSON uses ordered_json so output is byte-stable across runs.
using Json = nlohmann::ordered_json;

// {vertices:[{index,key,dist}], edges:[[u,v]], radius, gens:[...]}
Json ball_to_json(const Ball& ball);

// {n, edges:[[u,v]]}
Json graph_to_json(const Graph& g);

// Accepts either the plain graph schema or a ball document (vertices/edges).
Graph graph_from_json(const Json& j);

// {pattern:{n,edges}, branch_sets:[[...],...], edge_witness:{"i-j":[u,v]}}
Json embedding_to_json(const MinorEmbedding& emb);
MinorEmbedding embedding_from_json(const Json& j);

Json end_profile_to_json(const EndProfile& profile);

std::string ball_to_dot(const Ball& ball);
std::string graph_to_dot(const Graph& g);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace caymin
