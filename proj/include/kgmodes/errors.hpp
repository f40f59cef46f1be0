#pragma once

#include <stdexcept>
#include <string>

namespace kgm {

// Exit codes used by the command line front end.
enum class exit_status : int { ok = 0, invariant = 1, config = 2, numeric = 3 };

class error : public std::runtime_error {
 public:
  error(const std::string& what, exit_status s) : std::runtime_error(what), status_(s) {}
  exit_status status() const noexcept { return status_; }

 private:
  exit_status status_;
};

// Precondition violated by the caller.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& w) : error(w, exit_status::config) {}
};

class config_error : public error {
 public:
  explicit config_error(const std::string& w) : error(w, exit_status::config) {}
};

class invariant_error : public error {
 public:
  explicit invariant_error(const std::string& w) : error(w, exit_status::invariant) {}
};

class pole_error : public error {
 public:
  pole_error(const std::string& w, double arg) : error(w, exit_status::numeric), arg_(arg) {}
  double argument() const noexcept { return arg_; }

 private:
  double arg_;
};

class overflow_error : public error {
 public:
  explicit overflow_error(const std::string& w) : error(w, exit_status::numeric) {}
};

class convergence_error : public error {
 public:
  explicit convergence_error(const std::string& w) : error(w, exit_status::numeric) {}
};

}  // namespace kgm
