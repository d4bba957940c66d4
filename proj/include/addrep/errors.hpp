#pragma once

#include <stdexcept>
#include <string>

namespace addrep {

/// Malformed textual input (patterns, set specs, rational literals, JSON schemas).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), position_(0) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A construction exceeded an explicit resource cap (state counts, vector closures).
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its stated preconditions.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value violated a contract that was checked on the fly (e.g. integrality).
class ContractError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A set specification that cannot be evaluated as requested.
class UnsupportedSpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace addrep
