#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontoforms {

/// Base of every engine error.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class UnknownPrefixError : public ParseError {
public:
  UnknownPrefixError(std::size_t line, std::size_t column, const std::string& prefix)
      : ParseError(line, column, "undeclared prefix '" + prefix + ":'"), prefix_(prefix) {}
  const std::string& prefix() const noexcept { return prefix_; }

private:
  std::string prefix_;
};

/// Graph content that cannot be read as an ontology (e.g. a property typed
/// both object and datatype).
class ModelError : public Error {
public:
  using Error::Error;
};

class UnknownClassError : public Error {
public:
  explicit UnknownClassError(const std::string& iri)
      : Error("unknown class <" + iri + ">"), iri_(iri) {}
  const std::string& iri() const noexcept { return iri_; }

private:
  std::string iri_;
};

class ValidationError : public Error {
public:
  ValidationError(std::string property, std::string reason)
      : Error(property.empty() ? reason : "<" + property + ">: " + reason),
        property_(std::move(property)), reason_(std::move(reason)) {}

  const std::string& property() const noexcept { return property_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::string property_;
  std::string reason_;
};

class TypeMismatchError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class OrphanRetractionConflict : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class MismatchedClassError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotFoundError : public Error {
public:
  using Error::Error;
};

class UnknownIndividualError : public NotFoundError {
public:
  explicit UnknownIndividualError(const std::string& iri)
      : NotFoundError("unknown individual <" + iri + ">") {}
};

class StorageError : public Error {
public:
  using Error::Error;
};

}  // namespace ontoforms
