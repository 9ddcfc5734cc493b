#include <CLI11.hpp>
#include <httplib.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "grpdb/api.hpp"
#include "grpdb/families.hpp"
#include "grpdb/generator_file.hpp"
#include "grpdb/query.hpp"
#include "grpdb/record_json.hpp"
#include "grpdb/store.hpp"

namespace {

using namespace grpdb;

Budgets parse_budgets(const std::vector<std::string>& specs) {
  Budgets b;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--budget", "expected key=value, got " + spec);
    const std::string key = spec.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--budget", "not a number: " + spec);
    }
    if (key == "elements")
      b.element_cap = value;
    else if (key == "subgroups")
      b.subgroup_budget = value;
    else if (key == "automorphisms")
      b.automorphism_budget = value;
    else if (key == "characters")
      b.character_budget = value;
    else if (key == "chains")
      b.chain_budget = value;
    else if (key == "seconds")
      b.stage_time = std::chrono::seconds(value);
    else
      throw CLI::ValidationError("--budget", "unknown budget '" + key + "'");
  }
  return b;
}

std::vector<std::string> select_labels(const Store& store, const std::vector<std::string>& args) {
  if (args.empty() || (args.size() == 1 && args[0] == "all")) return store.labels();
  for (const auto& l : args)
    if (!store.contains(l)) throw Error("no group with label " + l);
  return args;
}

int run_serve(Store& store, const std::string& host, int port) {
  httplib::Server server;
  auto route = [&store](const httplib::Request& req, httplib::Response& res) {
    ApiParams params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    const ApiResponse r = handle_request(store, req.method, req.path, params);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    if (!r.body.empty()) res.set_content(r.body, r.content_type);
  };
  server.Get(".*", route);
  server.Options(".*", route);
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grpdb: a database of finite groups given by permutation generators"};
  app.require_subcommand(1);
  std::string db = "grpdb.sqlite";
  app.add_option("--db", db, "SQLite database file")->capture_default_str();

  std::vector<std::string> ingest_files;
  auto* ingest = app.add_subcommand("ingest", "Add groups from generator files");
  ingest->add_option("files", ingest_files)->required()->check(CLI::ExistingFile);

  std::vector<std::string> compute_labels;
  std::vector<std::string> budget_specs;
  unsigned threads = 0;
  auto* compute = app.add_subcommand("compute", "Run the computation pipeline");
  compute->add_option("labels", compute_labels, "Labels, or 'all' (default)");
  compute->add_option("--budget", budget_specs,
                      "key=value with key in elements, subgroups, automorphisms, characters, chains, seconds");
  compute->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  std::string query_text;
  bool show_unknown = false;
  auto* query = app.add_subcommand("query", "Search with the query language");
  query->add_option("expr", query_text)->required();
  query->add_flag("--unknown", show_unknown, "Also list records the query could not decide");

  bool export_subgroups = false;
  std::string export_query;
  std::string export_path;
  auto* exp = app.add_subcommand("export", "Write records as JSON lines");
  exp->add_flag("--subgroups", export_subgroups, "Export subgroup classes instead of groups");
  exp->add_option("-q,--query", export_query, "Only records matching this query");
  exp->add_option("-o,--output", export_path, "Output file (default stdout)");

  std::string import_path;
  auto* imp = app.add_subcommand("import", "Load a JSON-lines export");
  imp->add_option("file", import_path)->required()->check(CLI::ExistingFile);

  std::string show_label;
  auto* show = app.add_subcommand("show", "Print one record as JSON");
  show->add_option("label", show_label)->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  std::vector<std::string> dedupe_files;
  auto* dedupe = app.add_subcommand("dedupe", "Ingest files and report isomorphism classes");
  dedupe->add_option("files", dedupe_files)->required()->check(CLI::ExistingFile);

  std::string corpus_path;
  std::uint64_t max_order = 200;
  auto* corpus = app.add_subcommand("make-corpus", "Write the built-in corpus as a generator file");
  corpus->add_option("-o,--output", corpus_path, "Output file (default stdout)");
  corpus->add_option("--max-order", max_order)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*corpus) {
      std::ofstream file;
      if (!corpus_path.empty()) file.open(corpus_path);
      std::ostream& out = corpus_path.empty() ? std::cout : file;
      for (const auto& ng : families::standard_corpus()) {
        const PermGroup g = PermGroup::generate(ng.generators);
        if (g.order() > max_order) continue;
        GeneratorBlock block;
        block.label = ng.id;
        block.degree = g.degree();
        block.name = ng.name;
        block.generators = ng.generators;
        out << format_generator_block(block) << "\n";
      }
      return 0;
    }

    Store store(*dedupe ? std::string(":memory:") : db);

    if (*ingest) {
      for (const auto& path : ingest_files) {
        const auto blocks = read_generator_file(path);
        for (const auto& block : blocks) {
          const IngestResult r = store.ingest(block);
          std::cout << path << ":" << block.line << " -> " << r.label;
          if (r.alias) std::cout << " (alias)";
          if (!r.note.empty()) std::cout << " " << r.note;
          std::cout << "\n";
        }
      }
    } else if (*compute) {
      const Budgets budgets = parse_budgets(budget_specs);
      const auto labels = select_labels(store, compute_labels);
      store.compute(labels, budgets, threads, [](const std::string& l) { std::cerr << "computed " << l << "\n"; });
      for (const auto& l : labels) {
        const auto rec = store.get(l);
        for (const auto& s : rec->stages)
          if (s.state != StageState::complete)
            std::cout << l << " " << s.stage << " " << to_string(s.state) << ": " << s.reason << "\n";
      }
    } else if (*query) {
      const QueryResult r = run_query(store, parse_query(query_text));
      for (const auto& l : r.labels) {
        const auto rec = store.get(l);
        std::cout << l << "\t" << rec->name << "\n";
      }
      if (show_unknown)
        for (const auto& l : r.unknown) std::cout << l << "\tunknown\n";
      std::cerr << r.labels.size() << " matches, " << r.unknown.size() << " unknown\n";
    } else if (*exp) {
      std::vector<std::string> labels =
          export_query.empty() ? store.labels() : run_query(store, parse_query(export_query)).labels;
      std::ofstream file;
      if (!export_path.empty()) file.open(export_path, std::ios::binary);
      std::ostream& out = export_path.empty() ? std::cout : file;
      if (export_subgroups)
        store.export_subgroups_jsonl(out, labels);
      else
        store.export_jsonl(out, labels);
    } else if (*imp) {
      std::ifstream in(import_path, std::ios::binary);
      std::cout << store.import_jsonl(in) << " records imported\n";
    } else if (*show) {
      const auto rec = store.get(show_label);
      if (!rec) throw Error("no group with label " + show_label);
      std::cout << to_json(*rec).dump(2) << "\n";
    } else if (*serve) {
      return run_serve(store, host, port);
    } else if (*dedupe) {
      std::map<std::string, std::vector<std::string>> members;
      for (const auto& path : dedupe_files)
        for (const auto& block : read_generator_file(path)) {
          const IngestResult r = store.ingest(block);
          members[r.label].push_back(path + ":" + std::to_string(block.line));
        }
      for (const auto& label : store.labels()) {
        std::cout << "class " << label << ":";
        for (const auto& m : members[label]) std::cout << " " << m;
        std::cout << " hash=" << store.get(label)->hash << "\n";
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
