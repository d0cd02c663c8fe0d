// gwloc: command line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gwloc/gwloc.h"

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(gwloc_status s) {
  switch (s) {
    case GWLOC_OK:
      return 0;
    case GWLOC_E_VALIDATION:
    case GWLOC_E_PARSE:
    case GWLOC_E_INVALID_ARGUMENT:
    case GWLOC_E_IO:
    case GWLOC_E_UNSTABLE_RANGE:
      return 2;
    case GWLOC_E_INCONSISTENT_CHERN_DATA:
    case GWLOC_E_AMBIGUOUS:
    case GWLOC_E_NO_INTEGER_DEGREE:
    case GWLOC_E_DEGENERATE_SUBTORUS:
    case GWLOC_E_VERSION_MISMATCH:
    case GWLOC_E_CORRUPT_ENTRY:
      return 3;
    case GWLOC_E_SPECIALIZATION_DISAGREEMENT:
      return 4;
    case GWLOC_E_UNKNOWN_BUILDER:
      return 5;
    default:
      return 1;
  }
}

void check(gwloc_status s) {
  if (s != GWLOC_OK) {
    throw Failure{exit_code_for(s), std::string(gwloc_status_name(s)) + ": " + gwloc_last_error()};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  gwloc_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{2, "cannot write " + path};
}

class Graph {
 public:
  Graph(const std::string& file, const std::string& builder) {
    if (file.empty() == builder.empty()) throw Failure{2, "give exactly one of --graph and --builder"};
    if (!file.empty()) {
      check(gwloc_graph_from_json(read_file(file).c_str(), &g_));
      source_ = file;
    } else {
      check(gwloc_graph_from_builder(builder.c_str(), &g_));
      source_ = builder;
    }
  }
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  ~Graph() { gwloc_graph_free(g_); }
  gwloc_graph* get() const { return g_; }
  const std::string& source() const { return source_; }

 private:
  gwloc_graph* g_ = nullptr;
  std::string source_;
};

std::vector<int64_t> parse_beta(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{2, "bad --beta entry '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{2, "--beta needs at least one entry"};
  return out;
}

json insertion_list(const std::string& path) {
  if (path.empty()) return json::array();
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Failure{2, "insertion file " + path + ": " + e.what()};
  }
}

// "grassmannian 2 4" -> "grassmannian:2,4"
std::string builder_spec(const std::vector<std::string>& words) {
  if (words.empty()) throw Failure{2, "builders needs a builder name"};
  std::string spec = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) spec += (i == 1 ? ":" : ",") + words[i];
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant descendant Gromov-Witten invariants of GKM manifolds by virtual localization"};
  app.require_subcommand(1);

  std::string graph_file, builder, beta_text, insertions_file, mode = "symbolic", memo, output;
  int genus = 0, markings = -1, genus_cutoff = -1;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool verbose = false;

  auto add_graph_flags = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_file, "GKM graph JSON file");
    sub->add_option("--builder", builder, "built-in graph, e.g. P2, grassmannian:2,4, local-line:-1,-1");
  };

  auto* compute = app.add_subcommand("compute", "compute an equivariant invariant");
  add_graph_flags(compute);
  compute->add_option("--genus", genus, "genus g")->check(CLI::NonNegativeNumber);
  compute->add_option("--beta", beta_text, "curve class, comma separated")->required();
  compute->add_option("--insertions", insertions_file, "insertion JSON file");
  compute->add_option("--mode", mode, "symbolic or specialize")->check(CLI::IsMember({"symbolic", "specialize"}));
  compute->add_option("--seed", seed, "seed for specialize mode");
  compute->add_option("--genus-cutoff", genus_cutoff, "also report the genus series up to this genus")
      ->check(CLI::NonNegativeNumber);
  compute->add_option("--memo", memo, "Hodge integral cache file (read if present, written after)");
  compute->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  compute->add_flag("--verbose", verbose, "per-graph contributions and timing");

  auto* graphs = app.add_subcommand("graphs", "list the decorated graphs of a fixed locus");
  add_graph_flags(graphs);
  graphs->add_option("--genus", genus, "genus g")->check(CLI::NonNegativeNumber);
  graphs->add_option("--beta", beta_text, "curve class, comma separated")->required();
  graphs->add_option("-n,--markings", markings, "number of markings")->check(CLI::NonNegativeNumber);
  graphs->add_option("--insertions", insertions_file, "take the number of markings from this file");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check a GKM graph file");
  validate->add_option("file", validate_file, "graph file");
  add_graph_flags(validate);

  std::vector<std::string> builder_words;
  auto* builders = app.add_subcommand("builders", "emit the JSON file of a built-in graph");
  builders->add_option("spec", builder_words, "name and parameters, e.g. 'grassmannian 2 4' or 'P2'")->required();
  builders->add_option("-o,--output", output, "write to this file");
  builders->allow_extras(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*builders) {
      gwloc_graph* g = nullptr;
      check(gwloc_graph_from_builder(builder_spec(builder_words).c_str(), &g));
      char* text = nullptr;
      const gwloc_status s = gwloc_graph_to_json(g, &text);
      gwloc_graph_free(g);
      check(s);
      write_output(take(text), output);
      return 0;
    }
    if (*validate) {
      if (!validate_file.empty()) {
        if (!graph_file.empty()) throw Failure{2, "give the graph file once"};
        graph_file = validate_file;
      }
      Graph g(graph_file, builder);
      char* report = nullptr;
      const gwloc_status s = gwloc_graph_validate(g.get(), &report);
      const std::string text = take(report);
      if (s == GWLOC_OK) {
        std::cout << "ok\n";
        return 0;
      }
      std::cout << text;
      check(s);
    }
    if (*graphs) {
      Graph g(graph_file, builder);
      const auto beta = parse_beta(beta_text);
      int n = markings;
      if (!insertions_file.empty()) {
        const int from_file = static_cast<int>(insertion_list(insertions_file).size());
        if (n >= 0 && n != from_file) throw Failure{2, "--markings disagrees with the insertion file"};
        n = from_file;
      }
      char* text = nullptr;
      check(gwloc_graph_listing(g.get(), genus, std::max(n, 0), beta.data(), beta.size(), &text));
      std::cout << take(text);
      return 0;
    }
    if (*compute) {
      Graph g(graph_file, builder);
      json req;
      req["source"] = g.source();
      req["genus"] = genus;
      req["beta"] = parse_beta(beta_text);
      req["insertions"] = insertion_list(insertions_file);
      req["mode"] = mode;
      req["seed"] = seed;
      if (genus_cutoff >= 0) req["genus_cutoff"] = genus_cutoff;
      req["workers"] = workers;
      req["verbose"] = verbose;

      gwloc_engine* engine = nullptr;
      check(gwloc_engine_new(&engine));
      struct Release {
        gwloc_engine* e;
        ~Release() { gwloc_engine_free(e); }
      } release{engine};
      if (!memo.empty() && std::filesystem::exists(memo)) check(gwloc_engine_load(engine, memo.c_str()));
      char* result = nullptr;
      check(gwloc_compute(g.get(), engine, req.dump().c_str(), &result));
      std::cout << take(result);
      if (!memo.empty()) check(gwloc_engine_save(engine, memo.c_str()));
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "gwloc: " << f.message << '\n';
    return f.exit_code;
  }
  return 1;
}
