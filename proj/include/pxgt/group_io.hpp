#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pxgt/perm.hpp"

namespace pxgt {

class GeneratorParseError : public std::invalid_argument {
public:
  GeneratorParseError(const std::string &msg, std::size_t line,
                      std::size_t column)
      : std::invalid_argument(msg + " at line " + std::to_string(line) +
                              ", column " + std::to_string(column)),
        line(line), column(column)
  {
  }
  std::size_t line, column;
};

// Generator file format: first line `degree n`; each subsequent non-empty
// line is one permutation, either a whitespace-separated image list
// ("1 0 3 2") or disjoint cycles on 0-based points ("(0 1)(2 3)").
struct GeneratorFile {
  std::size_t degree = 0;
  std::vector<Perm> generators;
};

namespace detail {

inline Perm parse_perm_line(const std::string &line, std::size_t degree,
                            std::size_t lineno)
{
  auto fail = [&](const std::string &msg, std::size_t col) -> Perm {
    throw GeneratorParseError(msg, lineno, col + 1);
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
  };
  auto read_num = [&]() -> long long {
    std::size_t start = i;
    long long v = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
      v = v * 10 + (line[i++] - '0');
    if (i == start)
      fail("expected a point", i);
    if (v >= static_cast<long long>(degree))
      fail("point out of range", start);
    return v;
  };
  skip_ws();
  if (i < line.size() && line[i] == '(') {
    std::vector<std::vector<Point>> cycles;
    std::vector<bool> used(degree, false);
    while (true) {
      skip_ws();
      if (i >= line.size())
        break;
      if (line[i] != '(')
        fail("expected '('", i);
      ++i;
      std::vector<Point> cyc;
      while (true) {
        skip_ws();
        if (i < line.size() && line[i] == ')') {
          ++i;
          break;
        }
        std::size_t at = i;
        Point x = static_cast<Point>(read_num());
        if (used[x])
          fail("repeated point", at);
        used[x] = true;
        cyc.push_back(x);
      }
      if (cyc.empty())
        fail("empty cycle", i);
      cycles.push_back(std::move(cyc));
    }
    return Perm::from_cycles(degree, cycles);
  }
  std::vector<Point> img;
  std::vector<bool> seen(degree, false);
  while (true) {
    skip_ws();
    if (i >= line.size())
      break;
    std::size_t at = i;
    Point x = static_cast<Point>(read_num());
    if (seen[x])
      fail("repeated point", at);
    seen[x] = true;
    img.push_back(x);
  }
  if (img.size() != degree)
    fail("image list has wrong length", line.size());
  return Perm(std::move(img));
}

} // namespace detail

inline GeneratorFile parse_generators(std::istream &in)
{
  GeneratorFile out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line))
    throw GeneratorParseError("empty input", 1, 1);
  ++lineno;
  {
    std::istringstream hs(line);
    std::string kw;
    long long n = -1;
    if (!(hs >> kw >> n) || kw != "degree" || n <= 0)
      throw GeneratorParseError("expected header 'degree n'", lineno, 1);
    out.degree = static_cast<std::size_t>(n);
  }
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)))
        blank = false;
    if (blank)
      continue;
    out.generators.push_back(detail::parse_perm_line(line, out.degree, lineno));
  }
  return out;
}

inline void write_generators(std::ostream &os, std::size_t degree,
                             const std::vector<Perm> &gens)
{
  os << "degree " << degree << '\n';
  for (const Perm &g : gens) {
    for (std::size_t x = 0; x < degree; ++x) {
      if (x)
        os << ' ';
      os << g[static_cast<Point>(x)];
    }
    os << '\n';
  }
}

} // namespace pxgt
