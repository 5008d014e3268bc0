#pragma once

#include <stdexcept>
#include <string>

namespace hetsim {

/// A parameter is outside its documented domain.
class InvalidParameter : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A drop or link set cannot produce a meaningful result (no WAPs, no interferers).
class DegenerateScenario : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A configuration document could not be turned into a valid experiment.
/// `line` is 1-based, or 0 when the problem is not tied to a line (e.g. a --set override).
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error(message), key_(std::move(key)), line_(line)
  {
  }

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

private:
  std::string key_;
  int line_;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace hetsim
