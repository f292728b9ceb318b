#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <httplib.h>

#include "ontoforms/api.hpp"
#include "ontoforms/json_io.hpp"

using namespace ontoforms;

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

Graph read_ontology(const std::string& path) { return parse_turtle(read_file(path)); }

FormConfig read_config(const std::optional<std::string>& path) {
  if (!path) return {};
  return config_from_json(parse_json_text(read_file(*path)));
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path);
  out << content;
  if (!out) throw StorageError("error writing " + path);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const StorageError*>(&e)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-driven form generation and population"};
  app.require_subcommand(1);

  int port = 8080;
  std::string data_dir = Repository::default_data_dir().string();
  std::string host = "0.0.0.0";
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Repository directory")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  std::string onto, cls, out = "-", submission_path;
  std::optional<std::string> config_path;

  auto* form = app.add_subcommand("form", "Generate the form structure for a class");
  form->add_option("--onto", onto, "Ontology (Turtle)")->required()->check(CLI::ExistingFile);
  form->add_option("--class", cls, "Main class IRI")->required();
  form->add_option("--config", config_path, "Form configuration (JSON)")->check(CLI::ExistingFile);
  form->add_option("--out", out, "Output file, '-' for stdout")->capture_default_str();

  auto* populate_cmd = app.add_subcommand("populate", "Turn a submission into A-box triples");
  populate_cmd->add_option("--onto", onto, "Ontology (Turtle)")->required()->check(CLI::ExistingFile);
  populate_cmd->add_option("--class", cls, "Main class IRI")->required();
  populate_cmd->add_option("--submission", submission_path, "Submission (JSON)")->required()->check(CLI::ExistingFile);
  populate_cmd->add_option("--config", config_path, "Form configuration (JSON)")->check(CLI::ExistingFile);
  populate_cmd->add_option("--out", out, "Output file, '-' for stdout")->capture_default_str();

  auto* inspect = app.add_subcommand("inspect", "Print classes, properties and individuals as JSON");
  inspect->add_option("--onto", onto, "Ontology (Turtle)")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      Repository repo(data_dir);
      ApiService api(repo);
      httplib::Server server;
      api.mount(server);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << port << " (data: " << repo.data_dir().string() << ")\n";
      if (!server.listen(host, port)) throw StorageError("cannot listen on " + host + ":" + std::to_string(port));
      return 0;
    }
    if (*form) {
      OntologyModel model = extract_model(read_ontology(onto));
      write_output(out, to_json(generate_form(model, Iri(cls), read_config(config_path))).dump(2) + "\n");
      return 0;
    }
    if (*populate_cmd) {
      Graph tbox = read_ontology(onto);
      OntologyModel model = extract_model(tbox);
      Submission submission = submission_from_json(parse_json_text(read_file(submission_path)));
      PopulationResult result = populate(model, generate_form(model, Iri(cls), read_config(config_path)), submission);
      Graph abox = result.added_triples;
      abox.prefixes() = tbox.prefixes();
      write_output(out, serialize_turtle(abox));
      std::cerr << to_json(result).dump() << "\n";
      return 0;
    }
    if (*inspect) {
      std::cout << ontology_detail(extract_model(read_ontology(onto))).dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
