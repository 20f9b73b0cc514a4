#include "tsurf/origami_io.hpp"

#include "tsurf/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tsurf {

std::string to_text(const Origami& o) {
  std::ostringstream os;
  os << "n=" << o.n_squares() << " unit=" << to_string(o.unit_length()) << "\n";
  os << "h=" << o.h().to_string() << "\n";
  os << "v=" << o.v().to_string() << "\n";
  if (o.has_marks()) {
    os << "marks=";
    bool first = true;
    for (const auto& vx : o.vertices()) {
      if (vx.label == 0) continue;
      os << (first ? "" : ",") << vx.squares.front() << ":" << vx.label;
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

Origami parse_origami(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<std::string, std::string> fields;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    // the first line carries two space-separated fields; cycle lines contain spaces
    if (line.rfind("n=", 0) == 0) {
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw DomainError("malformed header token '" + tok + "'");
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
    } else {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw DomainError("malformed line '" + line + "'");
      fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }
  for (const char* key : {"n", "h", "v"})
    if (!fields.count(key)) throw DomainError(std::string("origami text is missing '") + key + "='");
  int n = std::stoi(fields["n"]);
  if (n <= 0) throw DomainError("n must be positive");
  Rational unit = fields.count("unit") ? parse_rational(fields["unit"]) : Rational(1);
  Perm h = Perm::parse(fields["h"], n);
  Perm v = Perm::parse(fields["v"], n);
  Origami bare(h, v, unit);
  if (!fields.count("marks") || fields["marks"].empty()) return bare;

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::istringstream ms(fields["marks"]);
  std::string item;
  while (std::getline(ms, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto colon = item.find(':');
    int sq = std::stoi(item.substr(0, colon));
    int lab = colon == std::string::npos ? 1 : std::stoi(item.substr(colon + 1));
    if (sq < 0 || sq >= n) throw DomainError("mark refers to a missing square");
    if (lab <= 0) throw DomainError("mark labels must be positive");
    for (int s : bare.vertices()[static_cast<std::size_t>(bare.vertex_of(sq))].squares)
      labels[static_cast<std::size_t>(s)] = lab;
  }
  return Origami(h, v, unit, labels);
}

Origami read_origami_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_origami(ss.str());
}

void write_origami_file(const Origami& o, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << to_text(o);
}

}  // namespace tsurf
