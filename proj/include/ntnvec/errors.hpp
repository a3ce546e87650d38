#pragma once

#include <stdexcept>
#include <string>

namespace ntnvec {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Configuration problems carry the dotted path of the offending field,
// e.g. "scenario.n_dl" or "links.HAP.UL.tx.eirp".
class ConfigError : public Error
{
public:
  ConfigError(std::string field, const std::string& message);

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class ParseError : public ConfigError
{
public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError
{
public:
  using ConfigError::ConfigError;
};

// A radio endpoint quantity given both directly and through its constituents.
class AmbiguityError : public ConfigError
{
public:
  using ConfigError::ConfigError;
};

// Precondition violation of a numerical function (log of a non-positive
// argument, negative traffic, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

// Offered traffic reached the server count: G >= c.
class InstabilityError : public Error
{
public:
  InstabilityError(double offered, int servers, std::string queue = {});

  double offered() const noexcept { return offered_; }
  int servers() const noexcept { return servers_; }
  const std::string& queue() const noexcept { return queue_; }

private:
  double offered_;
  int servers_;
  std::string queue_;
};

// Iterative solver exhausted its iteration budget.
class SolverError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

} // namespace ntnvec
