#include "ontoforms/repository.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include "ontoforms/json_io.hpp"

namespace fs = std::filesystem;

namespace ontoforms {

namespace {

std::string now_iso8601() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json record_json(const OntologyRecord& r, const fs::path& root) {
  return {{"id", r.id},
          {"iri", r.iri.str()},
          {"name", r.name},
          {"tbox", fs::relative(r.tbox_path, root).generic_string()},
          {"abox", fs::relative(r.abox_path, root).generic_string()},
          {"config", fs::relative(r.config_path, root).generic_string()},
          {"createdAt", r.created_at}};
}

}  // namespace

std::string slugify(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    out += std::isalnum(u) && u < 0x80 ? static_cast<char>(std::tolower(u)) : '-';
  }
  return out.empty() ? "ontology" : out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw StorageError("error reading " + path.string());
  return ss.str();
}

void write_file_atomically(const fs::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw StorageError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StorageError("cannot replace " + path.string() + ": " + ec.message());
  }
}

Repository::Repository(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(data_dir_ / "ontologies", ec);
  if (ec) throw StorageError("cannot create " + data_dir_.string() + ": " + ec.message());
  data_dir_ = fs::absolute(data_dir_);
  read_index();
}

fs::path Repository::default_data_dir() {
  if (const char* env = std::getenv("ONTOFORMS_DATA_DIR"); env && *env) return env;
  return "data";
}

void Repository::read_index() {
  fs::path index = data_dir_ / "index.json";
  if (!fs::exists(index)) return;
  json j;
  try {
    j = json::parse(read_file(index));
  } catch (const json::exception& e) {
    throw StorageError("corrupt index " + index.string() + ": " + e.what());
  }
  for (const auto& r : j.value("records", json::array())) {
    OntologyRecord rec;
    rec.id = r.at("id").get<std::string>();
    rec.iri = Iri(r.value("iri", ""));
    rec.name = r.value("name", rec.id);
    rec.tbox_path = data_dir_ / r.at("tbox").get<std::string>();
    rec.abox_path = data_dir_ / r.at("abox").get<std::string>();
    rec.config_path = data_dir_ / r.at("config").get<std::string>();
    rec.created_at = r.value("createdAt", "");
    records_.push_back(std::move(rec));
  }
}

void Repository::write_index() const {
  json records = json::array();
  for (const auto& r : records_) records.push_back(record_json(r, data_dir_));
  write_file_atomically(data_dir_ / "index.json", json{{"records", records}}.dump(2) + "\n");
}

std::shared_mutex& Repository::lock_for(const std::string& id) const {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::shared_mutex>();
  return *slot;
}

OntologyRecord Repository::find_record(const std::string& id) const {
  std::shared_lock guard(index_mutex_);
  for (const auto& r : records_) {
    if (r.id == id) return r;
  }
  throw NotFoundError("no ontology with id '" + id + "'");
}

UploadResult Repository::upload(std::string_view name, std::string_view document) {
  Graph tbox = parse_turtle(document);
  OntologyModel model = extract_model(tbox);

  std::unique_lock guard(index_mutex_);
  UploadResult result;
  const std::string base = slugify(name);
  auto taken = [&](const std::string& id) {
    for (const auto& r : records_) {
      if (r.id == id) return true;
    }
    return fs::exists(data_dir_ / "ontologies" / id);
  };
  std::string id = base;
  for (int n = 2; taken(id); ++n) id = base + "-" + std::to_string(n);
  if (id != base) {
    result.duplicate_name_warning = "an ontology named '" + std::string(name) + "' already exists; stored as '" + id + "'";
  }

  OntologyRecord rec;
  rec.id = id;
  rec.iri = model.iri;
  rec.name = std::string(name);
  const fs::path dir = data_dir_ / "ontologies" / id;
  rec.tbox_path = dir / "ontology.ttl";
  rec.abox_path = dir / "abox.ttl";
  rec.config_path = dir / "config.json";
  rec.created_at = now_iso8601();

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StorageError("cannot create " + dir.string() + ": " + ec.message());
  write_file_atomically(rec.tbox_path, document);
  write_file_atomically(rec.abox_path, "");
  write_file_atomically(rec.config_path, to_json(FormConfig{}).dump(2) + "\n");

  records_.push_back(rec);
  try {
    write_index();
  } catch (...) {
    records_.pop_back();
    throw;
  }
  result.record = std::move(rec);
  return result;
}

std::vector<OntologyRecord> Repository::list() const {
  std::shared_lock guard(index_mutex_);
  return records_;
}

OntologyRecord Repository::record(const std::string& id) const { return find_record(id); }

Graph Repository::read_tbox(const OntologyRecord& r) const { return parse_turtle(read_file(r.tbox_path)); }

Graph Repository::read_abox(const OntologyRecord& r) const {
  try {
    return parse_turtle(read_file(r.abox_path));
  } catch (const ParseError& e) {
    throw StorageError("corrupt A-box " + r.abox_path.string() + ": " + e.what());
  }
}

FormConfig Repository::read_config(const OntologyRecord& r) const {
  try {
    return config_from_json(json::parse(read_file(r.config_path)));
  } catch (const json::exception& e) {
    throw StorageError("corrupt config " + r.config_path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw StorageError("corrupt config " + r.config_path.string() + ": " + e.what());
  }
}

void Repository::write_abox(const OntologyRecord& r, Graph abox) const {
  // Reuse the uploaded document's prefixes so the A-box reads naturally.
  abox.prefixes() = read_tbox(r).prefixes();
  write_file_atomically(r.abox_path, serialize_turtle(abox));
}

OntologyModel Repository::load_model(const std::string& id) const {
  OntologyRecord r = find_record(id);
  std::shared_lock guard(lock_for(id));
  return extract_model(graph_union(read_tbox(r), read_abox(r)));
}

Graph Repository::load_abox(const std::string& id) const {
  OntologyRecord r = find_record(id);
  std::shared_lock guard(lock_for(id));
  return read_abox(r);
}

void Repository::save_abox(const std::string& id, const Graph& abox) {
  OntologyRecord r = find_record(id);
  std::unique_lock guard(lock_for(id));
  write_abox(r, abox);
}

FormConfig Repository::get_config(const std::string& id) const {
  OntologyRecord r = find_record(id);
  std::shared_lock guard(lock_for(id));
  return read_config(r);
}

void Repository::put_config(const std::string& id, const FormConfig& config) {
  OntologyRecord r = find_record(id);
  std::unique_lock guard(lock_for(id));
  write_file_atomically(r.config_path, to_json(config).dump(2) + "\n");
}

std::string Repository::export_turtle(const std::string& id) const {
  OntologyRecord r = find_record(id);
  std::shared_lock guard(lock_for(id));
  return serialize_turtle(graph_union(read_tbox(r), read_abox(r)));
}

PopulationResult Repository::mutate(
    const std::string& id, const std::function<PopulationResult(const OntologyModel&, const FormConfig&)>& change) {
  OntologyRecord r = find_record(id);
  std::unique_lock guard(lock_for(id));
  Graph tbox = read_tbox(r);
  Graph abox = read_abox(r);
  OntologyModel model = extract_model(graph_union(tbox, abox));
  PopulationResult result = change(model, read_config(r));

  for (const auto& t : result.removed_triples) {
    if (!abox.contains(t)) {
      throw ValidationError(t.predicate.iri().str(),
                            "cannot retract " + t.subject.ntriples() + " " + t.predicate.ntriples() + " " +
                                t.object.ntriples() + ": it belongs to the uploaded ontology document");
    }
  }
  write_abox(r, result.apply_to(abox));
  return result;
}

}  // namespace ontoforms
