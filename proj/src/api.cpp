#include "ontoforms/api.hpp"

#include <cstdlib>
#include <functional>

#include <httplib.h>

#include "ontoforms/json_io.hpp"

namespace ontoforms {

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kTurtle = "text/turtle";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const std::exception& e) {
  ApiError err = to_api_error(e);
  send_json(res, err.status, err.body());
}

/// Wraps a handler so engine errors become JSON error responses.
httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> fn) {
  return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const std::exception& e) {
      send_error(res, e);
    }
  };
}

json body_json(const httplib::Request& req) { return parse_json_text(req.body); }

Iri required_class_param(const httplib::Request& req) {
  if (!req.has_param("class") || req.get_param_value("class").empty()) {
    throw ValidationError("", "query parameter 'class' is required");
  }
  return Iri(req.get_param_value("class"));
}

json summary(const OntologyRecord& r) { return {{"id", r.id}, {"iri", r.iri.str()}, {"name", r.name}}; }

void check_config_against(const OntologyModel& model, const FormConfig& config) {
  for (const auto& p : config.hidden_properties) {
    if (!model.properties.contains(p)) throw NotFoundError("unknown property <" + p.str() + ">");
  }
  for (const auto& [ctx, range] : config.inline_pairs) {
    model.require_class(ctx);
    model.require_class(range);
  }
  for (const auto& [iri, _] : config.label_overrides) {
    if (!model.knows_class(iri) && !model.properties.contains(iri) && !model.individuals.contains(iri)) {
      throw NotFoundError("unknown entity <" + iri.str() + ">");
    }
  }
}

Iri form_class_for(const OntologyModel& model, const httplib::Request& req, const Iri& individual) {
  if (req.has_param("class") && !req.get_param_value("class").empty()) return Iri(req.get_param_value("class"));
  auto it = model.individuals.find(individual);
  if (it == model.individuals.end()) throw UnknownIndividualError(individual.str());
  return it->second.types.front();
}

}  // namespace

json ApiError::body() const {
  json out = {{"status", status}, {"code", code}, {"message", message}};
  if (!detail.is_null()) out["detail"] = detail;
  return out;
}

ApiError to_api_error(const std::exception& e) {
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    return {400, "parse-error", p->reason(), {{"line", p->line()}, {"column", p->column()}}};
  }
  if (const auto* u = dynamic_cast<const UnknownClassError*>(&e)) {
    return {404, "unknown-class", u->what(), {{"iri", u->iri()}}};
  }
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    json detail = json::object();
    if (!v->property().empty()) detail["property"] = v->property();
    detail["reason"] = v->reason();
    return {422, "validation", v->what(), std::move(detail)};
  }
  if (dynamic_cast<const ModelError*>(&e)) return {422, "validation", e.what(), nullptr};
  if (dynamic_cast<const NotFoundError*>(&e)) return {404, "not-found", e.what(), nullptr};
  if (dynamic_cast<const StorageError*>(&e)) return {500, "storage", e.what(), nullptr};
  return {500, "internal", e.what(), nullptr};
}

std::string percent_encode(std::string_view text) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) && u < 0x80) {
      out += c;
    } else if (c == '-' || c == '.' || c == '_' || c == '~') {
      out += c;
    } else {
      out += '%';
      out += hex[u >> 4];
      out += hex[u & 0xF];
    }
  }
  return out;
}

ApiService::ApiService(Repository& repo, bool cors) : repo_(repo), cors_(cors) {}

bool ApiService::cors_from_env() {
  const char* env = std::getenv("ONTOFORMS_CORS");
  return !(env && std::string_view(env) == "off");
}

void ApiService::mount(httplib::Server& server) {
  Repository& repo = repo_;

  if (cors_) {
    server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }

  server.Post("/ontologies", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    json body = body_json(req);
    if (!body.is_object() || !body.contains("name") || !body["name"].is_string() || !body.contains("turtle") ||
        !body["turtle"].is_string()) {
      throw ValidationError("", "body must be {\"name\": string, \"turtle\": string}");
    }
    UploadResult up = repo.upload(body["name"].get<std::string>(), body["turtle"].get<std::string>());
    json out = summary(up.record);
    if (up.duplicate_name_warning) out["warning"] = *up.duplicate_name_warning;
    send_json(res, 201, out);
  }));

  server.Get("/ontologies", guarded([&repo](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& r : repo.list()) out.push_back(summary(r));
    send_json(res, 200, out);
  }));

  server.Get(R"(/ontologies/([^/]+))", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    OntologyRecord rec = repo.record(id);
    json out = ontology_detail(repo.load_model(id));
    out["id"] = rec.id;
    out["name"] = rec.name;
    send_json(res, 200, out);
  }));

  server.Get(R"(/ontologies/([^/]+)/form)", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    Iri cls = required_class_param(req);
    OntologyModel model = repo.load_model(id);
    send_json(res, 200, to_json(generate_form(model, cls, repo.get_config(id))));
  }));

  server.Get(R"(/ontologies/([^/]+)/config)", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(repo.get_config(req.matches[1])));
  }));

  server.Put(R"(/ontologies/([^/]+)/config)", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    FormConfig config = config_from_json(body_json(req));
    check_config_against(repo.load_model(id), config);
    repo.put_config(id, config);
    send_json(res, 200, to_json(config));
  }));

  server.Post(R"(/ontologies/([^/]+)/individuals)",
              guarded([&repo](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                Submission submission = submission_from_json(body_json(req));
                Iri cls = req.has_param("class") && !req.get_param_value("class").empty()
                              ? Iri(req.get_param_value("class"))
                              : submission.chosen_class;
                PopulationResult result =
                    repo.mutate(id, [&](const OntologyModel& model, const FormConfig& config) {
                      return populate(model, generate_form(model, cls, config), submission);
                    });
                send_json(res, 201, to_json(result));
              }));

  server.Get(R"(/ontologies/([^/]+)/individuals/(.+))",
             guarded([&repo](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               const Iri individual(req.matches[2]);
               OntologyModel model = repo.load_model(id);
               FormStructure form = generate_form(model, form_class_for(model, req, individual), repo.get_config(id));
               send_json(res, 200, to_json(prefill(model, form, individual)));
             }));

  server.Put(R"(/ontologies/([^/]+)/individuals/(.+))",
             guarded([&repo](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               const Iri individual(req.matches[2]);
               Submission submission = submission_from_json(body_json(req));
               PopulationResult result =
                   repo.mutate(id, [&](const OntologyModel& model, const FormConfig& config) {
                     FormStructure form = generate_form(model, form_class_for(model, req, individual), config);
                     return update(model, form, individual, submission);
                   });
               send_json(res, 200, to_json(result));
             }));

  server.Get(R"(/ontologies/([^/]+)/export)", guarded([&repo](const httplib::Request& req, httplib::Response& res) {
    res.status = 200;
    res.set_content(repo.export_turtle(req.matches[1]), kTurtle);
  }));
}

}  // namespace ontoforms
