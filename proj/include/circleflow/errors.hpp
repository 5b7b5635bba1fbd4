#pragma once

#include <stdexcept>
#include <string>

namespace circleflow {

/// Library error type; every contract violation throws this (or a subclass).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace circleflow
