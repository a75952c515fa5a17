#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace varmoments::io {

/// Input rejected: carries the 1-based line number of the offending entry.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a sample: one value per line, optionally several per line separated
/// by commas and/or whitespace; '#' starts a comment; blank lines are
/// skipped. Decimal point only, locale independent. Non-finite values and
/// unparsable tokens throw ParseError with the line number; an empty sample
/// throws ParseError on line 0.
[[nodiscard]] std::vector<double> read_sample(std::istream& in);
[[nodiscard]] std::vector<double> read_sample_file(const std::string& path);

}  // namespace varmoments::io
