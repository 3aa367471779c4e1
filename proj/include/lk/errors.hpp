#pragma once

#include <stdexcept>
#include <string>

namespace lk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cycle, loop, multi-edge, or wrong number of unframed vertices.
class StructureError : public Error {
 public:
  using Error::Error;
};

class DefinitenessError : public Error {
 public:
  using Error::Error;
};

class MoveError : public Error {
 public:
  using Error::Error;
};

class StabilizationCapError : public Error {
 public:
  StabilizationCapError(const std::string& generator, int cap)
      : Error("stabilization cap of " + std::to_string(cap) +
              " iterations exceeded at " + generator),
        generator_(generator) {}
  const std::string& generator() const noexcept { return generator_; }

 private:
  std::string generator_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lk
