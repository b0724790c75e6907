#pragma once

#include <stdexcept>
#include <string>

namespace steinlab {

/// Library-wide exception. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Precondition,   // caller violated a documented precondition
    CapExceeded,    // a configured enumeration or dimension cap was hit
    FieldMismatch,  // operands live over different fields / rings
    Inconclusive,   // a certified answer could not be produced
    Defect,         // an internal consistency check failed
    Parse,          // malformed textual input
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(Error::Kind::Precondition, what);
}

}  // namespace steinlab
