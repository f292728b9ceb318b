#pragma once

#include <deque>
#include <filesystem>
#include <functional>
#include <string>

#include "ontoforms/form.hpp"
#include "ontoforms/population.hpp"
#include "ontoforms/rdf.hpp"

namespace testing_support {

using namespace ontoforms;

inline const std::string kFood = "http://www.w3.org/TR/2003/PR-owl-guide-20031209/food#";
inline const std::string kWine = "http://www.w3.org/TR/2003/PR-owl-guide-20031209/wine#";
inline const std::string kAdv = "http://example.org/adversarial#";

inline Iri food(const std::string& local) { return Iri(kFood + local); }
inline Iri wine(const std::string& local) { return Iri(kWine + local); }
inline Iri adv(const std::string& local) { return Iri(kAdv + local); }

std::filesystem::path fixture_path(const std::string& name);
std::string fixture_text(const std::string& name);
Graph fixture_graph(const std::string& name);
OntologyModel fixture_model(const std::string& name);

// Independent of OntologyModel: edges read straight from the triples.
struct HierarchyOracle {
  std::map<Iri, std::set<Iri>> up;    // subClassOf plus equivalence both ways
  std::map<Iri, std::set<Iri>> down;  // reversed

  explicit HierarchyOracle(const Graph& g) {
    for (const auto& t : g) {
      if (!t.subject.is_iri() || !t.object.is_iri()) continue;
      const Iri& s = t.subject.iri();
      const Iri& o = t.object.iri();
      if (t.predicate.iri() == vocab::rdfs("subClassOf")) {
        up[s].insert(o);
        down[o].insert(s);
      } else if (t.predicate.iri() == vocab::owl("equivalentClass")) {
        up[s].insert(o);
        up[o].insert(s);
        down[o].insert(s);
        down[s].insert(o);
      }
    }
  }

  static std::set<Iri> bfs(const std::map<Iri, std::set<Iri>>& edges, const Iri& start) {
    std::set<Iri> seen{start};
    std::deque<Iri> queue{start};
    while (!queue.empty()) {
      Iri c = queue.front();
      queue.pop_front();
      auto it = edges.find(c);
      if (it == edges.end()) continue;
      for (const auto& n : it->second) {
        if (seen.insert(n).second) queue.push_back(n);
      }
    }
    return seen;
  }

  std::set<Iri> subsumers(const Iri& c) const {
    auto s = bfs(up, c);
    s.insert(vocab::thing());
    return s;
  }

  std::set<Iri> descendants(const Iri& c) const {
    auto s = bfs(down, c);
    s.erase(c);
    return s;
  }

  bool admits(const DomainExpr& d, const Iri& c) const {
    switch (d.kind) {
      case DomainExpr::Kind::Unspecified:
      case DomainExpr::Kind::Thing:
        return true;
      case DomainExpr::Kind::Named:
        return d.named == c || subsumers(c).contains(d.named);
      case DomainExpr::Kind::UnionOf:
        for (const auto& m : d.members) {
          if (admits(m, c)) return true;
        }
        return false;
      case DomainExpr::Kind::IntersectionOf:
        for (const auto& m : d.members) {
          if (!admits(m, c)) return false;
        }
        return true;
    }
    return false;
  }
};

/// Every .ttl file under the fixture directory.
std::vector<std::filesystem::path> turtle_corpus();

/// Removed on destruction.
class TempDir {
public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// hasMaker, madeIntoWine and producesWine.
std::set<Iri> hidden_trio();

/// Meal submission selecting one drink and one food through an inline course.
Submission meal_submission();

/// Calls `fn(context_class, selector)` for every Selector at every depth.
void for_each_selector(const FormStructure& form,
                       const std::function<void(const Iri&, const Selector&)>& fn);

/// Selectors standing where the config asked for a section: the enclosing
/// class and the range form an inline pair. Each one is a degraded path.
std::vector<std::pair<Iri, Iri>> degraded_selectors(const FormStructure& form, const FormConfig& config);

/// `form` with every element whose property is in `hidden` dropped, at every
/// nesting level. Warnings are not carried over.
FormStructure prune(const FormStructure& form, const std::set<Iri>& hidden);

std::set<Iri> top_level_properties(const FormStructure& form);

std::size_t form_depth(const FormStructure& form);

}  // namespace testing_support
