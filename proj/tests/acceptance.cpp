// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "support.hpp"
#include "ontoforms/api.hpp"
#include "ontoforms/json_io.hpp"
#include "ontoforms/repository.hpp"

using namespace ontoforms;
using namespace testing_support;
using nlohmann::json;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string join(const std::set<Iri>& s) {
  std::string out = "{";
  for (const auto& i : s) out += (out.size() > 1 ? ", " : "") + std::string(i.local_name());
  return out + "}";
}

std::set<Iri> json_properties(const json& form) {
  std::set<Iri> out;
  for (const auto& e : form["elements"]) out.insert(Iri(e["property"].get<std::string>()));
  return out;
}

std::set<Iri> applicable_set(const OntologyModel& m, const Iri& c) {
  std::set<Iri> out;
  for (const auto& a : applicable_properties(m, c)) out.insert(a.property);
  return out;
}

std::vector<Iri> classes_of(const OntologyModel& m) {
  std::vector<Iri> out{vocab::thing()};
  for (const auto& [iri, _] : m.classes) out.push_back(iri);
  return out;
}

const std::vector<std::string> kCorpus = {"wine_food.ttl", "adversarial.ttl", "syntax_coverage.ttl", "empty.ttl",
                                          "wine_food_abox.ttl"};

std::string golden(const std::string& name) { return read_file(fixture_path("../golden/" + name)); }

/// In-process HTTP service over a scratch repository holding the wine fixture.
class Service {
public:
  Service() : repo_(dir_.path()), api_(repo_, true) {
    api_.mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30);
  }
  ~Service() {
    server_.stop();
    thread_.join();
  }

  std::string upload(const std::string& name, const std::string& fixture) {
    auto res = client_->Post("/ontologies", json{{"name", name}, {"turtle", fixture_text(fixture)}}.dump(),
                             "application/json");
    require(res && res->status == 201, "upload failed");
    return json::parse(res->body)["id"];
  }

  httplib::Client& client() { return *client_; }

private:
  TempDir dir_;
  Repository repo_;
  ApiService api_;
  httplib::Server server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

std::string form_path(const std::string& id, const Iri& cls) {
  return "/ontologies/" + id + "/form?class=" + percent_encode(cls.str());
}

json get_json(httplib::Client& c, const std::string& path) {
  auto res = c.Get(path);
  require(res && res->status == 200, "GET " + path + " failed");
  return json::parse(res->body);
}

void put_config(httplib::Client& c, const std::string& id, const std::string& body) {
  auto res = c.Put("/ontologies/" + id + "/config", body, "application/json");
  require(res && res->status == 200, "PUT config failed");
}

std::string export_of(httplib::Client& c, const std::string& id) {
  auto res = c.Get("/ontologies/" + id + "/export");
  require(res && res->status == 200, "export failed");
  return res->body;
}

const std::set<Iri> kDefaultMeal = {wine("locatedIn"), wine("madeFromFruit"), wine("hasFlavor"),
                             wine("producesWine"), food("course"), wine("hasSugar"),
                             wine("hasBody"), wine("hasMaker"), wine("madeIntoWine")};

// ---------------------------------------------------------------------------

std::string default_meal_form() {
  Service svc;
  const std::string id = svc.upload("wine.rdf", "wine_food.ttl");
  json form = get_json(svc.client(), form_path(id, food("Meal")));
  auto props = json_properties(form);
  require(props == kDefaultMeal, "Meal form properties " + join(props));
  for (const auto& e : form["elements"]) require(e["kind"] == "selector", "non-selector " + e["property"].get<std::string>());
  return std::to_string(props.size()) + " selectors, property set exact";
}

std::string hidden_properties() {
  Service svc;
  const std::string id = svc.upload("wine.rdf", "wine_food.ttl");
  put_config(svc.client(), id, golden("config_hidden.json"));
  auto props = json_properties(get_json(svc.client(), form_path(id, food("Meal"))));
  const std::set<Iri> want = {wine("locatedIn"), wine("madeFromFruit"), wine("hasFlavor"),
                              food("course"), wine("hasSugar"), wine("hasBody")};
  require(props == want, "hidden Meal form properties " + join(props));

  OntologyModel m = fixture_model("wine_food.ttl");
  FormConfig c;
  c.hidden_properties = hidden_trio();
  auto diff = diff_forms(generate_form(m, food("Meal")), generate_form(m, food("Meal"), c));
  require(diff == hidden_trio(), "diff_forms " + join(diff));
  return "6 properties remain, diff_forms = " + join(diff);
}

std::string inline_section_and_population() {
  Service svc;
  const std::string id = svc.upload("wine.rdf", "wine_food.ttl");
  put_config(svc.client(), id, golden("config_inline.json"));
  json form = get_json(svc.client(), form_path(id, food("Meal")));
  const json* course = nullptr;
  for (const auto& e : form["elements"]) {
    if (e["property"] == food("course").str()) course = &e;
  }
  require(course && (*course)["kind"] == "section", "course is not a section");
  require((*course)["form"]["mainClass"] == food("MealCourse").str(), "section form is not MealCourse");
  std::map<std::string, std::string> inner;
  for (const auto& e : (*course)["form"]["elements"]) inner[e["property"]] = e["kind"];
  require(inner[food("hasDrink").str()] == "selector" && inner[food("hasFood").str()] == "selector",
          "hasDrink/hasFood selectors missing from the section");

  const std::string before = export_of(svc.client(), id);
  auto res = svc.client().Post("/ontologies/" + id + "/individuals", golden("submission_meal.json"), "application/json");
  require(res && res->status == 201, "submission rejected");
  json result = json::parse(res->body);
  require(result["minted"].size() == 2, "minted " + std::to_string(result["minted"].size()) + " individuals");
  Iri meal, meal_course;
  for (const auto& m : result["minted"]) {
    if (m["class"] == food("Meal").str()) meal = Iri(m["iri"].get<std::string>());
    if (m["class"] == food("MealCourse").str()) meal_course = Iri(m["iri"].get<std::string>());
  }
  require(!meal.empty() && !meal_course.empty(), "minted classes are not Meal and MealCourse");

  Graph g0 = parse_turtle(before), g1 = parse_turtle(export_of(svc.client(), id));
  std::size_t new_triples = 0;
  for (const auto& t : g1) new_triples += !g0.contains(t);
  for (const auto& t : g0) require(g1.contains(t), "a triple disappeared");
  require(new_triples >= 4, "only " + std::to_string(new_triples) + " new triples");
  require(g1.contains({meal, food("course"), meal_course}), "course link missing");
  require(g1.contains({meal_course, food("hasDrink"), wine("PulignyMontrachetWhiteBurgundy")}) &&
              g1.contains({meal_course, food("hasFood"), food("Tuna")}),
          "selections not linked to the course");
  return "course is a section; minted " + std::string(meal.local_name()) + ", " +
         std::string(meal_course.local_name()) + "; " + std::to_string(new_triples) + " new triples";
}

std::string two_values(const json& element, const Iri& cls, json& body) {
  body = {{"chosenClass", cls.str()}, {"values", json::array()}};
  json entry = {{"property", element["property"]}};
  if (element["kind"] == "selector") {
    if (element["options"].size() < 2) return "";
    entry["individuals"] = {element["options"][0]["iri"], element["options"][1]["iri"]};
  } else {
    const std::string w = element["widget"];
    if (w == "checkbox") {
      entry["literals"] = {"true", "false"};
    } else if (w == "number") {
      entry["literals"] = {"1", "2"};
    } else if (w == "date") {
      entry["literals"] = {"2001-01-01", "2002-02-02"};
    } else {
      entry["literals"] = {"a", "b"};
    }
  }
  body["values"].push_back(entry);
  return element["property"];
}

std::string functional_rule() {
  std::size_t selectors = 0;
  for (const auto& name : {"wine_food.ttl", "adversarial.ttl", "syntax_coverage.ttl"}) {
    OntologyModel m = fixture_model(name);
    FormConfig wide;
    if (std::string_view(name) == "wine_food.ttl") {
      wide = config_from_json(json::parse(golden("config_inline.json")));
      wide.hidden_properties.clear();
    } else {
      for (const auto& [a, _] : m.classes) {
        for (const auto& [b, __] : m.classes) wide.inline_pairs.emplace(a, b);
      }
    }
    for (const auto& config : {FormConfig{}, wide}) {
      for (const auto& cls : classes_of(m)) {
        for_each_selector(generate_form(m, cls, config), [&](const Iri&, const Selector& s) {
          ++selectors;
          require(s.multiple == !m.properties.at(s.property).functional,
                  "selector " + s.property.str() + " in form of " + cls.str());
        });
      }
    }
  }

  Service svc;
  std::size_t rejected = 0;
  for (const auto& name : {"wine_food.ttl", "adversarial.ttl"}) {
    const std::string id = svc.upload(name, name);
    OntologyModel m = fixture_model(name);
    for (const auto& cls : classes_of(m)) {
      json form = get_json(svc.client(), form_path(id, cls));
      for (const auto& e : form["elements"]) {
        bool functional = e["kind"] == "selector" ? !e["multiple"].get<bool>()
                                                  : e["kind"] == "field" && e["functional"].get<bool>();
        if (!functional) continue;
        json body;
        if (two_values(e, cls, body).empty()) continue;
        auto res = svc.client().Post("/ontologies/" + id + "/individuals?class=" + percent_encode(cls.str()),
                                     body.dump(), "application/json");
        require(res && res->status == 422, "2 values for " + e["property"].get<std::string>() + " on " +
                                               cls.str() + " got " + std::to_string(res ? res->status : -1));
        require(json::parse(res->body)["code"] == "validation", "wrong error code");
        ++rejected;
      }
    }
    require(parse_turtle(export_of(svc.client(), id)).same_triples(fixture_graph(name)),
            "a rejected submission wrote triples to " + std::string(name));
  }
  require(rejected > 0, "no functional property exercised");
  return std::to_string(selectors) + " selectors checked; " + std::to_string(rejected) + " two-valued submissions got 422";
}

std::string conjunction_domain_rule() {
  OntologyModel m = fixture_model("wine_food.ttl");
  const DomainExpr& d = m.properties.at(wine("servedAtTasting")).domain;
  require(d == DomainExpr::intersection_of({DomainExpr::of(wine("Wine")), DomainExpr::of(food("Meal"))}),
          "servedAtTasting domain is not Wine and Meal");
  auto in_form = [&](const Iri& cls) {
    return top_level_properties(generate_form(m, cls)).contains(wine("servedAtTasting"));
  };
  require(!in_form(wine("Wine")), "present for Wine");
  require(!in_form(food("Meal")), "present for Meal");
  auto supers = subsumers(m, wine("TastingMenu"));
  require(supers.contains(wine("Wine")) && supers.contains(food("Meal")), "TastingMenu is not below both");
  require(in_form(wine("TastingMenu")), "absent for TastingMenu");
  return "excluded for Wine and Meal, included for TastingMenu";
}

std::string oracle_suites() {
  std::size_t cells = 0, closures = 0, documents = 0;
  for (const auto& name : kCorpus) {
    OntologyModel m = fixture_model(name);
    HierarchyOracle oracle(m.source);
    for (const auto& cls : classes_of(m)) {
      std::set<Iri> expected;
      for (const auto& [p, decl] : m.properties) {
        ++cells;
        if (oracle.admits(decl.domain, cls)) expected.insert(p);
      }
      require(applicable_set(m, cls) == expected, "(a) applicable properties of " + cls.str() + " in " + name);
      if (cls != vocab::thing()) {
        require(subsumers(m, cls) == oracle.subsumers(cls), "(b) subsumers of " + cls.str() + " in " + name);
        ++closures;
      }
    }
  }
  for (const auto& path : turtle_corpus()) {
    Graph g = parse_turtle(read_file(path));
    require(parse_turtle(serialize_turtle(g)).same_triples(g), "(c) round trip of " + path.filename().string());
    ++documents;
  }

  Service svc;
  const std::string id = svc.upload("wine.rdf", "wine_food.ttl");
  put_config(svc.client(), id, golden("config_inline.json"));
  json winery = {{"chosenClass", wine("Winery").str()},
                 {"displayLabel", "Domaine Test"},
                 {"values",
                  {{{"property", wine("wineryName").str()}, {"literals", {"Domaine Test"}}},
                   {{"property", wine("foundedOn").str()}, {"literals", {"1990-05-01", "1991-06-02"}}},
                   {{"property", wine("isOrganic").str()}, {"literals", {"true"}}},
                   {{"property", wine("locatedIn").str()}, {"individuals", {wine("LoireRegion").str()}}}}}};
  std::size_t fixed_points = 0;
  for (const auto& [body, cls] : std::vector<std::pair<std::string, Iri>>{
           {golden("submission_meal.json"), food("Meal")}, {winery.dump(), wine("Winery")}}) {
    auto res = svc.client().Post("/ontologies/" + id + "/individuals", body, "application/json");
    require(res && res->status == 201, "(d) populate rejected");
    const std::string root = json::parse(res->body)["rootIri"];
    const std::string before = export_of(svc.client(), id);
    const std::string path = "/ontologies/" + id + "/individuals/" + percent_encode(root) + "?class=" +
                             percent_encode(cls.str());
    auto pre = svc.client().Get(path);
    require(pre && pre->status == 200, "(d) prefill failed");
    auto put = svc.client().Put(path, pre->body, "application/json");
    require(put && put->status == 200, "(d) update rejected");
    require(export_of(svc.client(), id) == before, "(d) export changed for " + root);
    ++fixed_points;
  }
  return "(a) " + std::to_string(cells) + " matrix cells, (b) " + std::to_string(closures) + " closures, (c) " +
         std::to_string(documents) + " documents, (d) " + std::to_string(fixed_points) + " byte-identical fixed points";
}

std::string monotonicity() {
  std::mt19937 rng(0x0F0F5);
  std::vector<std::pair<const OntologyModel*, std::pair<Iri, Iri>>> pairs;
  OntologyModel wine_model = fixture_model("wine_food.ttl");
  OntologyModel adv_model = fixture_model("adversarial.ttl");
  for (const OntologyModel* m : {&wine_model, &adv_model}) {
    for (const auto& c : classes_of(*m)) {
      for (const auto& d : subclasses_of(*m, c)) pairs.push_back({m, {c, d}});
    }
  }
  require(pairs.size() >= 100, "fewer than 100 subclass pairs");
  for (int i = 0; i < 100; ++i) {
    const auto& [m, pair] = pairs[rng() % pairs.size()];
    auto sc = applicable_set(*m, pair.first), sd = applicable_set(*m, pair.second);
    require(std::includes(sd.begin(), sd.end(), sc.begin(), sc.end()),
            "applicable(" + pair.first.str() + ") not within applicable(" + pair.second.str() + ")");
  }

  std::vector<Iri> props;
  for (const auto& [p, _] : wine_model.properties) props.push_back(p);
  auto classes = classes_of(wine_model);
  FormConfig base = config_from_json(json::parse(golden("config_inline.json")));
  base.hidden_properties.clear();
  for (int i = 0; i < 100; ++i) {
    const Iri& cls = classes[rng() % classes.size()];
    std::set<Iri> hidden;
    for (const auto& p : props) {
      if (rng() % 4 == 0) hidden.insert(p);
    }
    FormStructure shown = generate_form(wine_model, cls, base);
    FormConfig c = base;
    c.hidden_properties = hidden;
    FormStructure hid = generate_form(wine_model, cls, c);
    auto shown_props = top_level_properties(shown);
    std::set<Iri> expected;
    std::set_intersection(hidden.begin(), hidden.end(), shown_props.begin(), shown_props.end(),
                          std::inserter(expected, expected.end()));
    require(diff_forms(shown, hid) == expected, "diff_forms for " + cls.str());
    hid.warnings.clear();
    require(hid == prune(shown, hidden), "hiding is not exact for " + cls.str());
  }
  return "100 of " + std::to_string(pairs.size()) + " subclass pairs and 100 hidden subsets";
}

std::string termination() {
  OntologyModel m = fixture_model("adversarial.ttl");
  std::size_t forms = 0, warnings = 0;
  auto check = [&](const Iri& cls, const FormConfig& c) {
    FormStructure f = generate_form(m, cls, c);
    auto degraded = degraded_selectors(f, c);
    require(f.warnings.size() == degraded.size(), "warnings " + std::to_string(f.warnings.size()) + " vs degraded paths " +
                                                      std::to_string(degraded.size()) + " for " + cls.str());
    std::multiset<std::pair<Iri, Iri>> a(degraded.begin(), degraded.end()), b;
    for (const auto& w : f.warnings) b.emplace(w.context_class, w.property);
    require(a == b, "warnings do not name the degraded selectors for " + cls.str());
    ++forms;
    warnings += f.warnings.size();
    return f.warnings.size();
  };

  FormConfig self;
  self.inline_pairs = {{adv("Person"), adv("Person")}};
  require(check(adv("Person"), self) > 0, "self-referential pair produced no warning");
  FormConfig loop;
  loop.inline_pairs = {{adv("Order"), adv("Invoice")}, {adv("Invoice"), adv("Order")}};
  require(check(adv("Order"), loop) == 1, "Order/Invoice loop");
  FormConfig cyc;
  cyc.inline_pairs = {{adv("Alpha"), adv("Gamma")}, {adv("Gamma"), adv("Gamma")}, {adv("Beta"), adv("Gamma")}};
  for (auto cls : {adv("Alpha"), adv("Beta"), adv("Gamma"), adv("Delta"), adv("Self")}) check(cls, cyc);
  FormConfig everything;
  for (const auto& [a, _] : m.classes) {
    for (const auto& [b, __] : m.classes) everything.inline_pairs.emplace(a, b);
  }
  for (const auto& cls : classes_of(m)) check(cls, everything);
  return std::to_string(forms) + " forms terminated, " + std::to_string(warnings) +
         " warnings, one per degraded path";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::string (*run)();
  };
  const Criterion criteria[] = {
      {"default-meal-form", default_meal_form},
      {"hidden-properties", hidden_properties},
      {"inline-section-and-population", inline_section_and_population},
      {"functional-rule", functional_rule},
      {"conjunction-domain-rule", conjunction_domain_rule},
      {"oracle-suites", oracle_suites},
      {"monotonicity", monotonicity},
      {"termination", termination},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (ms >= 5000) {
      ok = false;
      detail += " (over the 5 s budget)";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name << ": " << detail << " [" << ms << " ms]" << std::endl;
    failures += !ok;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
