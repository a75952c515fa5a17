#include "varmoments/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

namespace varmoments::io {

namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

double parse_token(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError(line, "invalid number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "non-finite value '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> read_sample(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    std::size_t i = 0;
    while (i < sv.size()) {
      while (i < sv.size() && is_separator(sv[i])) ++i;
      std::size_t j = i;
      while (j < sv.size() && !is_separator(sv[j])) ++j;
      if (j > i) out.push_back(parse_token(sv.substr(i, j - i), lineno));
      i = j;
    }
  }
  if (out.empty()) throw ParseError(0, "no data found in input");
  return out;
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open input file '" + path + "'");
  return read_sample(in);
}

}  // namespace varmoments::io
