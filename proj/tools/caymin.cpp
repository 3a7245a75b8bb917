// caymin: build Cayley graph balls, search and certify graph minors, analyze
// ends at finite scale, and run the ray-to-clique construction in boosted
// generating sets. One JSON object per invocation on stdout; logs on stderr.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "caymin/ball.hpp"
#include "caymin/construct.hpp"
#include "caymin/ends.hpp"
#include "caymin/errors.hpp"
#include "caymin/graph.hpp"
#include "caymin/group.hpp"
#include "caymin/io.hpp"
#include "caymin/minor.hpp"

namespace {

using caymin::Json;

std::vector<std::vector<int>> cyclic_rows(int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
  return rows;
}

std::vector<std::vector<int>> table_rows_from_file(const std::string& path) {
  Json j = caymin::load_json_file(path);
  const Json& rows = j.is_array() ? j : j.at("table");
  std::vector<std::vector<int>> out;
  for (const auto& row : rows) out.push_back(row.get<std::vector<int>>());
  return out;
}

std::vector<std::vector<int>> factor_rows(const std::string& spec) {
  if (spec.rfind("cyclic:", 0) == 0) return cyclic_rows(std::stoi(spec.substr(7)));
  if (spec.rfind("table:", 0) == 0) return table_rows_from_file(spec.substr(6));
  throw caymin::ParseError("free product factors must be cyclic:n or table:FILE, got '" +
                           spec + "'");
}

std::shared_ptr<const caymin::GroupModel> parse_group_spec(const std::string& spec) {
  using caymin::GroupModel;
  if (spec.rfind("cyclic:", 0) == 0) return GroupModel::cyclic(std::stoi(spec.substr(7)));
  if (spec.rfind("table:", 0) == 0)
    return GroupModel::finite_table(table_rows_from_file(spec.substr(6)));
  if (spec.rfind("z^", 0) == 0) return GroupModel::free_abelian(std::stoi(spec.substr(2)));
  if (spec.rfind("free:", 0) == 0) return GroupModel::free_group(std::stoi(spec.substr(5)));
  if (spec.rfind("freeprod:", 0) == 0) {
    std::vector<std::vector<std::vector<int>>> tables;
    std::string rest = spec.substr(9);
    std::size_t at = 0;
    while (at < rest.size()) {
      auto comma = rest.find(',', at);
      if (comma == std::string::npos) comma = rest.size();
      // factor specs like cyclic:2 contain no commas; table paths must not either
      tables.push_back(factor_rows(rest.substr(at, comma - at)));
      at = comma + 1;
    }
    return GroupModel::free_product(std::move(tables));
  }
  throw caymin::ParseError("unknown group spec '" + spec +
                           "' (want cyclic:n, table:FILE, z^n, free:k, freeprod:...)");
}

// Generator lists are comma separated, but vector literals like (1,-2) keep
// their inner commas.
std::vector<std::string> split_generator_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

caymin::GenSet resolve_gens(const caymin::GroupModel& model, const std::string& gens) {
  if (gens.empty()) {
    std::vector<caymin::Element> defaults = model.default_generators();
    std::vector<std::string> words;
    for (const auto& e : defaults) words.push_back(e.key);
    return caymin::gen_set_from_elements(model, std::move(defaults), std::move(words));
  }
  if (gens == "all") {
    auto order = model.order();
    if (!order)
      throw caymin::ParseError("--gens all needs a finite model");
    std::vector<caymin::Element> all;
    std::vector<std::string> words;
    for (std::int64_t x = 0; x < *order; ++x) {
      caymin::Element e = model.element(std::to_string(x));
      if (e.key == model.identity().key) continue;
      words.push_back(e.key);
      all.push_back(std::move(e));
    }
    return caymin::gen_set_from_elements(model, std::move(all), std::move(words));
  }
  return caymin::make_gen_set(model, split_generator_words(gens));
}

caymin::Graph parse_pattern(const std::string& spec) {
  using caymin::Graph;
  if (spec.rfind("k:", 0) == 0) return Graph::clique(std::stoi(spec.substr(2)));
  if (spec.rfind("kb:", 0) == 0) {
    auto rest = spec.substr(3);
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw caymin::ParseError("complete bipartite pattern needs kb:a,b");
    return Graph::complete_bipartite(std::stoi(rest.substr(0, comma)),
                                     std::stoi(rest.substr(comma + 1)));
  }
  if (spec.rfind("path:", 0) == 0) return Graph::path(std::stoi(spec.substr(5)));
  if (spec.rfind("cycle:", 0) == 0) return Graph::cycle(std::stoi(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0)
    return caymin::graph_from_json(caymin::load_json_file(spec.substr(5)));
  throw caymin::ParseError("unknown pattern '" + spec +
                           "' (want k:m, kb:a,b, path:n, cycle:n, file:PATH)");
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("CAYMIN_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "ignoring malformed CAYMIN_BUDGET\n";
  }
  return caymin::kDefaultSearchBudget;
}

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const caymin::ModelMismatchError*>(&e)) return "model-mismatch";
  if (dynamic_cast<const caymin::BallTooLargeError*>(&e)) return "ball-too-large";
  if (dynamic_cast<const caymin::RadiusOutOfRangeError*>(&e)) return "radius-out-of-range";
  if (dynamic_cast<const caymin::IndexOutOfBoundsError*>(&e)) return "index-out-of-bounds";
  if (dynamic_cast<const caymin::HostTooLargeError*>(&e)) return "host-too-large";
  if (dynamic_cast<const caymin::EmptyTerminalSetError*>(&e)) return "empty-terminal-set";
  if (dynamic_cast<const caymin::DeadComponentError*>(&e)) return "dead-component";
  if (dynamic_cast<const caymin::TooShortError*>(&e)) return "too-short";
  if (dynamic_cast<const caymin::SegmentTooShortError*>(&e)) return "segment-too-short";
  if (dynamic_cast<const caymin::ParseError*>(&e)) return "parse-error";
  return "error";
}

struct HostArgs {
  std::string group, gens, graph_file;
  int radius = 0;

  caymin::Graph load(Json& meta) const {
    if (!graph_file.empty()) {
      meta["host"] = graph_file;
      return caymin::graph_from_json(caymin::load_json_file(graph_file));
    }
    auto model = parse_group_spec(group);
    caymin::GenSet s = resolve_gens(*model, gens);
    caymin::Ball ball = caymin::build_ball(model, s, radius);
    meta["host"] = {{"group", group},
                    {"radius", radius},
                    {"vertices", ball.vertex_count()},
                    {"edges", ball.edges.size()}};
    return caymin::induced_graph(ball);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph balls, graph minors, ends, and clique-minor construction"};
  app.require_subcommand(1);

  std::string group, gens, format = "json", graph_file, cert_file;
  std::string pattern_spec, out_cert, out_graph, out_file;
  int radius = 2, inner = 1, m = 2, start_radius = 0, component = -1, seed = 0;
  int max_vertices = caymin::kDefaultBallVertexBudget;
  std::uint64_t budget = default_budget();

  HostArgs host_args;

  auto add_group_opts = [&](CLI::App* cmd, bool need_radius = true) {
    cmd->add_option("--group", group, "group spec: cyclic:n, table:FILE, z^n, free:k, freeprod:...")
        ->required();
    cmd->add_option("--gens", gens, "comma separated generator words ('all' for finite groups)");
    if (need_radius) cmd->add_option("--radius", radius, "ball radius")->required();
  };
  auto add_host_opts = [&](CLI::App* cmd) {
    cmd->add_option("--group", host_args.group, "group spec (build the host as a ball)");
    cmd->add_option("--gens", host_args.gens, "generator words for --group");
    cmd->add_option("--radius", host_args.radius, "ball radius for --group");
    cmd->add_option("--graph", host_args.graph_file, "host graph JSON file instead of a group");
    cmd->add_option("--budget", budget, "search budget in node expansions");
  };

  CLI::App* cmd_ball = app.add_subcommand("ball", "build a Cayley graph ball");
  add_group_opts(cmd_ball);
  cmd_ball->add_option("--format", format, "json | dot | text");
  cmd_ball->add_option("--max-vertices", max_vertices, "ball vertex budget");
  cmd_ball->add_option("--out", out_file, "also write the ball document to a file");

  CLI::App* cmd_minor = app.add_subcommand("minor", "search for a pattern minor");
  add_host_opts(cmd_minor);
  cmd_minor->add_option("--pattern", pattern_spec, "k:m, kb:a,b, path:n, cycle:n, file:PATH")
      ->required();

  CLI::App* cmd_planar = app.add_subcommand("planar", "planarity by K5/K3,3 exclusion");
  add_host_opts(cmd_planar);

  CLI::App* cmd_hadwiger = app.add_subcommand("hadwiger", "largest certified clique minor");
  add_host_opts(cmd_hadwiger);

  CLI::App* cmd_ends = app.add_subcommand("ends", "live components and thin-end sizes");
  add_group_opts(cmd_ends);
  cmd_ends->add_option("--inner", inner, "separator sphere radius r");

  CLI::App* cmd_rays = app.add_subcommand("rays", "extract disjoint ray prefixes");
  add_group_opts(cmd_rays);
  cmd_rays->add_option("--m", m, "number of rays")->required();
  cmd_rays->add_option("--start-radius", start_radius, "sphere the rays start on");
  cmd_rays->add_option("--component", component, "live component id (default 0)");

  CLI::App* cmd_construct =
      app.add_subcommand("construct", "K_m minor in the S u S^2 u S^3 ball from m rays");
  add_group_opts(cmd_construct);
  cmd_construct->add_option("--m", m, "clique size")->required();
  cmd_construct->add_option("--start-radius", start_radius,
                            "sphere the rays start on (default: smallest workable)");
  cmd_construct->add_option("--component", component, "live component id (default: first workable)");
  cmd_construct->add_option("--out-cert", out_cert, "write the certificate JSON to a file");
  cmd_construct->add_option("--out-graph", out_graph, "write the boosted ball JSON to a file");

  CLI::App* cmd_verify = app.add_subcommand("verify", "re-check a certificate against a graph");
  cmd_verify->add_option("--graph", graph_file, "host graph or ball JSON")->required();
  cmd_verify->add_option("--cert", cert_file, "certificate JSON")->required();

  app.add_option("--seed", seed, "seed echoed into reports (reserved for experiment scripts)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_ball->parsed()) {
      auto model = parse_group_spec(group);
      caymin::GenSet s = resolve_gens(*model, gens);
      caymin::Ball ball = caymin::build_ball(model, s, radius, max_vertices);
      std::cerr << "ball: " << ball.vertex_count() << " vertices, " << ball.edges.size()
                << " edges, generates_check="
                << caymin::to_string(caymin::generates_check(*model, s, std::max(radius, 1)))
                << "\n";
      Json doc = caymin::ball_to_json(ball);
      if (!out_file.empty()) caymin::save_json_file(out_file, doc);
      if (format == "json") {
        emit(doc);
      } else if (format == "dot") {
        std::cout << caymin::ball_to_dot(ball);
      } else {
        std::cout << "group " << model->describe() << " radius " << radius << ": "
                  << ball.vertex_count() << " vertices, " << ball.edges.size()
                  << " edges\n";
      }
      return 0;
    }

    if (cmd_minor->parsed()) {
      Json meta;
      caymin::Graph host = host_args.load(meta);
      caymin::Graph pattern = parse_pattern(pattern_spec);
      auto res = caymin::find_minor(host, pattern, budget);
      Json j;
      j["command"] = "minor";
      j["host"] = meta["host"];
      j["pattern"] = pattern_spec;
      j["status"] = caymin::to_string(res.status);
      j["expansions"] = res.expansions;
      if (res.embedding) j["certificate"] = caymin::embedding_to_json(*res.embedding);
      emit(j);
      return 0;
    }

    if (cmd_planar->parsed()) {
      Json meta;
      caymin::Graph host = host_args.load(meta);
      auto res = caymin::is_planar(host, budget);
      Json j;
      j["command"] = "planar";
      j["host"] = meta["host"];
      j["status"] = caymin::to_string(res.status);
      if (res.witness) {
        j["witness_pattern"] = res.witness_pattern;
        j["certificate"] = caymin::embedding_to_json(*res.witness);
      }
      emit(j);
      return 0;
    }

    if (cmd_hadwiger->parsed()) {
      Json meta;
      caymin::Graph host = host_args.load(meta);
      auto res = caymin::hadwiger_lower_bound(host, budget);
      Json j;
      j["command"] = "hadwiger";
      j["host"] = meta["host"];
      j["m"] = res.m;
      j["ceiling_status"] = caymin::to_string(res.ceiling_status);
      if (res.embedding) j["certificate"] = caymin::embedding_to_json(*res.embedding);
      emit(j);
      return 0;
    }

    if (cmd_ends->parsed()) {
      auto model = parse_group_spec(group);
      caymin::GenSet s = resolve_gens(*model, gens);
      caymin::Ball ball = caymin::build_ball(model, s, radius);
      caymin::EndProfile profile = caymin::live_components(ball, inner);
      Json comps = Json::array();
      for (int c = 0; c < static_cast<int>(profile.components.size()); ++c) {
        const auto& comp = profile.components[c];
        Json entry = {{"size", comp.vertices.size()}, {"live", comp.live}};
        if (comp.live && inner <= ball.radius - 2)
          entry["disjoint_paths"] = caymin::thin_end_size_at_scale(ball, inner, c);
        else
          entry["disjoint_paths"] = nullptr;
        comps.push_back(std::move(entry));
      }
      Json j;
      j["command"] = "ends";
      j["group"] = group;
      j["r"] = inner;
      j["R"] = radius;
      j["components"] = std::move(comps);
      j["end_count_estimate"] = profile.live_count;
      emit(j);
      return 0;
    }

    if (cmd_rays->parsed()) {
      auto model = parse_group_spec(group);
      caymin::GenSet s = resolve_gens(*model, gens);
      caymin::Ball ball = caymin::build_ball(model, s, radius);
      int sr = start_radius > 0 ? start_radius : 1;
      int comp = component >= 0 ? component : 0;
      auto res = caymin::extract_rays(ball, comp, m, sr);
      Json j;
      j["command"] = "rays";
      j["group"] = group;
      j["radius"] = radius;
      j["start_radius"] = sr;
      j["component"] = comp;
      j["requested"] = m;
      j["found"] = res.rays ? m : res.max_found;
      if (res.rays) {
        Json paths = Json::array(), keys = Json::array();
        for (const auto& path : res.rays->paths) {
          paths.push_back(path);
          Json kk = Json::array();
          for (int v : path) kk.push_back(ball.vertices[v].key);
          keys.push_back(std::move(kk));
        }
        j["rays"] = std::move(paths);
        j["keys"] = std::move(keys);
      } else {
        j["rays"] = nullptr;
      }
      emit(j);
      return 0;
    }

    if (cmd_construct->parsed()) {
      auto model = parse_group_spec(group);
      caymin::GenSet s = resolve_gens(*model, gens);
      caymin::Ball ball = caymin::build_ball(model, s, radius);

      std::optional<caymin::RaySystem> rays;
      int best_found = 0;
      std::vector<int> start_choices;
      if (start_radius > 0)
        start_choices.push_back(start_radius);
      else
        for (int sr = 1; sr <= ball.radius - 1; ++sr) start_choices.push_back(sr);
      for (int sr : start_choices) {
        caymin::EndProfile profile = caymin::live_components(ball, sr - 1);
        std::vector<int> comp_choices;
        if (component >= 0)
          comp_choices.push_back(component);
        else
          for (int c = 0; c < static_cast<int>(profile.components.size()); ++c)
            comp_choices.push_back(c);
        for (int c : comp_choices) {
          if (c >= static_cast<int>(profile.components.size())) continue;
          if (!profile.components[c].live) continue;
          auto res = caymin::extract_rays(ball, c, m, sr);
          best_found = std::max(best_found, res.max_found);
          if (res.rays) {
            rays = std::move(res.rays);
            break;
          }
        }
        if (rays) break;
      }
      if (!rays) {
        Json j;
        j["command"] = "construct";
        j["error"] = {{"kind", "insufficient-rays"},
                      {"message", "no live component offers " + std::to_string(m) +
                                      " disjoint rays at this radius"},
                      {"max_found", best_found},
                      {"suggested_radius", 2 * radius}};
        emit(j);
        return 2;
      }
      std::cerr << "rays: m=" << m << " start_radius=" << rays->start_radius
                << " component=" << rays->component_id << "\n";

      auto res = caymin::build_clique_minor(model, s, ball, *rays, m);
      Json j;
      j["command"] = "construct";
      j["group"] = group;
      j["radius"] = radius;
      j["boosted_radius"] = res.trace.boosted_radius;
      j["m"] = m;
      j["start_radius"] = res.trace.start_radius;
      Json pairs = Json::array();
      for (const auto& p : res.trace.pairs)
        pairs.push_back({{"pair", {p.i, p.j}},
                         {"avoided", p.avoided},
                         {"repairs",
                          {{"single", p.repairs_single},
                           {"double", p.repairs_double},
                           {"detour", p.repairs_detour}}},
                         {"connector_length", p.connector_length},
                         {"frozen_radius_after", p.frozen_radius_after}});
      j["trace"] = std::move(pairs);
      if (res.status != caymin::ConstructStatus::Ok) {
        j["error"] = {{"kind", caymin::to_string(res.status)},
                      {"message", res.message},
                      {"suggested_radius", res.suggested_radius}};
        emit(j);
        return 2;
      }
      j["certificate"] = caymin::embedding_to_json(*res.embedding);
      j["verified"] = true;
      if (!out_cert.empty()) caymin::save_json_file(out_cert, j["certificate"]);
      if (!out_graph.empty())
        caymin::save_json_file(out_graph, caymin::ball_to_json(*res.boosted));
      emit(j);
      return 0;
    }

    if (cmd_verify->parsed()) {
      caymin::Graph host = caymin::graph_from_json(caymin::load_json_file(graph_file));
      caymin::MinorEmbedding emb =
          caymin::embedding_from_json(caymin::load_json_file(cert_file));
      Json j;
      j["command"] = "verify";
      try {
        bool ok = caymin::verify_embedding(host, emb);
        j["valid"] = ok;
        if (!ok) j["reason"] = "an embedding invariant fails against this host";
      } catch (const caymin::IndexOutOfBoundsError& e) {
        j["valid"] = false;
        j["reason"] = e.what();
      }
      emit(j);
      return 0;
    }
  } catch (const std::exception& e) {
    Json j;
    j["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
    if (const auto* too_large = dynamic_cast<const caymin::BallTooLargeError*>(&e))
      j["error"]["achieved_radius"] = too_large->achieved_radius;
    emit(j);
    return 1;
  }
  return 1;
}
