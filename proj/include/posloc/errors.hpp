#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace posloc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPoset : Error { using Error::Error; };
struct InvalidMap : Error { using Error::Error; };
struct SourceTargetMismatch : Error { using Error::Error; };
struct EmptyChain : Error { using Error::Error; };
struct InvalidFlow : Error { using Error::Error; };

/// Raised where a finite answer would require infinitely many execution
/// paths: the generating graph has a cycle feeding the requested hom-set.
struct LoopDetected : Error {
  LoopDetected(const std::string& msg, std::vector<std::string> cycle_states)
      : Error(msg), cycle(std::move(cycle_states)) {}
  std::vector<std::string> cycle;
};

struct PathObjectNotConverged : Error { using Error::Error; };
struct LiftNotFound : Error { using Error::Error; };
struct ObjectNotFibrant : Error { using Error::Error; };
struct ObjectNotInCategory : Error { using Error::Error; };
struct ReplacementNotConverged : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line_no, std::size_t col_no)
      : Error(msg + " (line " + std::to_string(line_no) + ", column " +
              std::to_string(col_no) + ")"),
        line(line_no), col(col_no) {}
  std::size_t line, col;
};

struct UnknownCommand : Error { using Error::Error; };

} // namespace posloc
