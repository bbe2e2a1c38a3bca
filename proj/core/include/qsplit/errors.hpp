#pragma once

#include <stdexcept>
#include <string>

namespace qsplit {

// Precondition or domain violation; the CLI maps it to exit status 2.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A configured enumeration or memory cap would be exceeded; exit status 3.
class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric search failed to bracket or converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsplit
