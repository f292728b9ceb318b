#include "support.hpp"

#include <atomic>
#include <random>

#include "ontoforms/repository.hpp"

namespace fs = std::filesystem;

namespace testing_support {

fs::path fixture_path(const std::string& name) { return fs::path(ONTOFORMS_FIXTURE_DIR) / name; }

std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }

Graph fixture_graph(const std::string& name) { return parse_turtle(fixture_text(name)); }

OntologyModel fixture_model(const std::string& name) { return extract_model(fixture_graph(name)); }

std::vector<fs::path> turtle_corpus() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(ONTOFORMS_FIXTURE_DIR)) {
    if (entry.path().extension() == ".ttl") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("ontoforms-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::set<Iri> hidden_trio() { return {wine("hasMaker"), wine("madeIntoWine"), wine("producesWine")}; }

Submission meal_submission() {
  Submission course;
  course.chosen_class = food("MealCourse");
  course.values.push_back({food("hasDrink"), {}, {wine("PulignyMontrachetWhiteBurgundy")}, {}});
  course.values.push_back({food("hasFood"), {}, {food("Tuna")}, {}});

  Submission meal;
  meal.chosen_class = food("Meal");
  meal.values.push_back({food("course"), {}, {}, {course}});
  return meal;
}

void for_each_selector(const FormStructure& form,
                       const std::function<void(const Iri&, const Selector&)>& fn) {
  for (const auto& e : form.elements) {
    if (const auto* sel = std::get_if<Selector>(&e)) fn(form.main_class, *sel);
    if (const auto* sec = std::get_if<Section>(&e)) for_each_selector(*sec->form, fn);
  }
}

std::vector<std::pair<Iri, Iri>> degraded_selectors(const FormStructure& form, const FormConfig& config) {
  std::vector<std::pair<Iri, Iri>> out;
  for_each_selector(form, [&](const Iri& ctx, const Selector& s) {
    if (config.inline_pairs.contains({ctx, s.range_class})) out.emplace_back(ctx, s.property);
  });
  return out;
}

FormStructure prune(const FormStructure& form, const std::set<Iri>& hidden) {
  FormStructure out = form;
  out.warnings.clear();
  out.elements.clear();
  for (const auto& e : form.elements) {
    if (hidden.contains(element_property(e))) continue;
    if (const auto* sec = std::get_if<Section>(&e)) {
      Section copy = *sec;
      copy.form = std::make_shared<const FormStructure>(prune(*sec->form, hidden));
      out.elements.emplace_back(std::move(copy));
    } else {
      out.elements.push_back(e);
    }
  }
  return out;
}

std::set<Iri> top_level_properties(const FormStructure& form) {
  std::set<Iri> out;
  for (const auto& e : form.elements) out.insert(element_property(e));
  return out;
}

std::size_t form_depth(const FormStructure& form) {
  std::size_t deepest = 0;
  for (const auto& e : form.elements) {
    if (const auto* sec = std::get_if<Section>(&e)) deepest = std::max(deepest, form_depth(*sec->form));
  }
  return deepest + 1;
}

}  // namespace testing_support
