#pragma once

#include <stdexcept>
#include <string>

namespace plumbline {

// Error categories map onto CLI exit codes: input -> 2, resource -> 2,
// internal -> 3. "Not certified" is a verdict, not an error.
class Error : public std::runtime_error {
public:
  enum class Kind { input, resource, internal };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

class InputError : public Error {
public:
  explicit InputError(const std::string& msg) : Error(Kind::input, msg) {}
};

class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& msg) : Error(Kind::resource, msg) {}
};

// Raised when a step that is guaranteed to succeed fails; always a bug.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(Kind::internal, msg) {}
};

}  // namespace plumbline
