#pragma once

#include <exception>
#include <string>

#include <nlohmann/json.hpp>

#include "ontoforms/repository.hpp"

namespace httplib {
class Server;
}

namespace ontoforms {

/// HTTP rendering of an engine error.
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  nlohmann::json detail;  // null when absent

  nlohmann::json body() const;
};

/// ParseError 400/parse-error, UnknownClassError 404/unknown-class,
/// ValidationError (and ModelError) 422/validation, NotFoundError
/// 404/not-found, StorageError 500/storage. Anything else is 500/internal.
ApiError to_api_error(const std::exception& e);

/// The /ontologies endpoints over a Repository.
class ApiService {
public:
  explicit ApiService(Repository& repo, bool cors = cors_from_env());

  /// Registers every route (and CORS handling, when enabled) on `server`.
  void mount(httplib::Server& server);

  /// False only when ONTOFORMS_CORS is "off".
  static bool cors_from_env();

private:
  Repository& repo_;
  bool cors_;
};

/// Percent-encodes everything outside the RFC 3986 unreserved set, for
/// putting an IRI into a URL path segment.
std::string percent_encode(std::string_view text);

}  // namespace ontoforms
