#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynhist {

// Base for every failure the toolkit reports. Anything deriving from Error is
// a data problem (exit status 1 at the command line); UsageError is the one
// exception and maps to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Raw text could not be decoded or segmented.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// A text file (index, lexicon, TSV) has a malformed line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input whose values break a documented range or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dynhist
