#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ontoforms/form.hpp"
#include "ontoforms/population.hpp"

namespace ontoforms {

struct OntologyRecord {
  std::string id;
  Iri iri;
  std::string name;
  std::filesystem::path tbox_path;
  std::filesystem::path abox_path;
  std::filesystem::path config_path;
  std::string created_at;  // ISO-8601, UTC
};

struct UploadResult {
  OntologyRecord record;
  /// Set when `name` was already taken and the id got a numeric suffix.
  std::optional<std::string> duplicate_name_warning;
};

/// Lowercase, every non-alphanumeric byte replaced with '-'.
std::string slugify(std::string_view name);

/// File-backed store:
///   <data-dir>/index.json
///   <data-dir>/ontologies/<id>/{ontology.ttl, abox.ttl, config.json}
/// The uploaded document is never rewritten; individuals created through
/// forms live in abox.ttl. Writes to one ontology are serialized; reads run
/// concurrently and see either the old or the new A-box.
class Repository {
public:
  explicit Repository(std::filesystem::path data_dir);

  /// $ONTOFORMS_DATA_DIR, else ./data.
  static std::filesystem::path default_data_dir();

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

  UploadResult upload(std::string_view name, std::string_view document);
  std::vector<OntologyRecord> list() const;
  OntologyRecord record(const std::string& id) const;

  OntologyModel load_model(const std::string& id) const;
  Graph load_abox(const std::string& id) const;
  void save_abox(const std::string& id, const Graph& abox);
  FormConfig get_config(const std::string& id) const;
  void put_config(const std::string& id, const FormConfig& config);
  std::string export_turtle(const std::string& id) const;

  /// Runs `change` against the current model under the ontology's writer
  /// lock and commits its triples to the A-box. Nothing is written when
  /// `change` throws. Retracting a triple of the uploaded document is a
  /// ValidationError.
  PopulationResult mutate(const std::string& id,
                          const std::function<PopulationResult(const OntologyModel&, const FormConfig&)>& change);

private:
  std::filesystem::path data_dir_;
  std::vector<OntologyRecord> records_;
  mutable std::shared_mutex index_mutex_;
  mutable std::mutex locks_mutex_;
  mutable std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;

  std::shared_mutex& lock_for(const std::string& id) const;
  OntologyRecord find_record(const std::string& id) const;
  void write_index() const;
  void read_index();

  Graph read_tbox(const OntologyRecord& r) const;
  Graph read_abox(const OntologyRecord& r) const;
  FormConfig read_config(const OntologyRecord& r) const;
  void write_abox(const OntologyRecord& r, Graph abox) const;
};

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace ontoforms
