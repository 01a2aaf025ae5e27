#pragma once

#include <stdexcept>
#include <string>

namespace levyz {

// Thrown when a parameter lies outside its documented domain.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative evaluation exhausts its term budget in a
// regime where the truncation bound cannot be certified.
class no_convergence : public std::runtime_error {
 public:
  explicit no_convergence(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

}  // namespace levyz
