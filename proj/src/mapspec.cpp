#include "spinorlab/mapspec.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinorlab/report.hpp"

namespace spinorlab {

Complex parse_complex(const std::string& token, int line, int column) {
  // grammar: [real][imag 'i'] with at least one part; imag sign mandatory
  // when both parts are present.
  const char* s = token.c_str();
  char* end = nullptr;
  if (token.empty()) throw ParseError("empty complex literal", line, column);
  if (token == "i") return {0.0, 1.0};
  if (token == "-i") return {0.0, -1.0};
  if (token == "+i") return {0.0, 1.0};
  double first = std::strtod(s, &end);
  if (end == s) throw ParseError("malformed complex literal '" + token + "'",
                                 line, column);
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i' && *(end + 1) == '\0') return {0.0, first};
  // second part must be a signed imaginary term
  const char* rest = end;
  if (*rest != '+' && *rest != '-')
    throw ParseError("malformed complex literal '" + token + "'", line, column);
  if ((rest[0] == '+' || rest[0] == '-') && rest[1] == 'i' && rest[2] == '\0')
    return {first, rest[0] == '+' ? 1.0 : -1.0};
  char* end2 = nullptr;
  double second = std::strtod(rest, &end2);
  if (end2 == rest || *end2 != 'i' || *(end2 + 1) != '\0')
    throw ParseError("malformed complex literal '" + token + "'", line, column);
  return {first, second};
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = format_double(z.real());
  out += (z.imag() < 0 ? "-" : "+");
  out += format_double(std::abs(z.imag()));
  out += "i";
  return out;
}

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      std::size_t hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      bool blank = true;
      for (char c : out)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) return true;
    }
    return false;
  }
};

std::vector<std::string> tokenize(const std::string& line,
                                  std::vector<int>* cols = nullptr) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    toks.push_back(line.substr(start, i - start));
    if (cols) cols->push_back(int(start) + 1);
  }
  return toks;
}

CMat read_matrix(LineReader& rd, Index rows, Index cols) {
  CMat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    std::string line;
    if (!rd.next(line))
      throw ParseError("unexpected end of file inside matrix", rd.line_no, 1);
    std::vector<int> positions;
    std::vector<std::string> toks = tokenize(line, &positions);
    if (Index(toks.size()) != cols)
      throw ParseError("expected " + std::to_string(cols) +
                           " entries, found " + std::to_string(toks.size()),
                       rd.line_no, 1);
    for (Index c = 0; c < cols; ++c)
      m(r, c) = parse_complex(toks[std::size_t(c)], rd.line_no,
                              positions[std::size_t(c)]);
  }
  require_finite(m, "map spec matrix");
  return m;
}

}  // namespace

SubspaceMap read_map_spec(std::istream& in) {
  LineReader rd{in};
  std::string line;
  if (!rd.next(line)) throw ParseError("empty map spec", 1, 1);
  std::vector<std::string> toks = tokenize(line);
  if (toks.empty() || toks[0] != "ambient" || toks.size() < 2 ||
      toks.size() > 3)
    throw ParseError("expected 'ambient <rows> [<cols>]'", rd.line_no, 1);
  Index arows = std::atoll(toks[1].c_str());
  Index acols = toks.size() == 3 ? std::atoll(toks[2].c_str()) : arows;
  if (arows < 1 || acols < 1)
    throw ParseError("ambient dimensions must be positive", rd.line_no, 1);

  std::vector<SubspaceBasis> bases;
  while (true) {
    if (!rd.next(line))
      throw ParseError("missing 'coeffs' section", rd.line_no + 1, 1);
    toks = tokenize(line);
    if (toks.empty())
      throw ParseError("blank directive", rd.line_no, 1);
    if (toks[0] == "coeffs") break;
    if (toks[0] != "basis" || toks.size() != 3)
      throw ParseError("expected 'basis <name> <count>' or 'coeffs'",
                       rd.line_no, 1);
    if (bases.size() == 2)
      throw ParseError("at most two basis sections allowed", rd.line_no, 1);
    Index count = std::atoll(toks[2].c_str());
    if (count < 1)
      throw ParseError("basis count must be positive", rd.line_no, 1);
    SubspaceBasis b;
    b.name = toks[1];
    b.ambient_rows = arows;
    b.ambient_cols = acols;
    for (Index q = 0; q < count; ++q)
      b.elements.push_back(read_matrix(rd, arows, acols));
    if (b.gram_min_singular() <= 1e-12)
      throw ParseError("basis '" + b.name + "' is linearly dependent",
                       rd.line_no, 1);
    bases.push_back(std::move(b));
  }
  if (bases.empty())
    throw ParseError("need at least one basis section", rd.line_no, 1);

  SubspaceMap map;
  map.domain = bases[0];
  map.codomain = bases.size() == 2 ? bases[1] : bases[0];
  map.name = map.domain.name;
  map.coeffs = read_matrix(rd, map.codomain.dim(), map.domain.dim());
  std::string extra;
  if (rd.next(extra))
    throw ParseError("trailing content after coefficient block", rd.line_no, 1);
  return map;
}

SubspaceMap read_map_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open map spec '" + path + "'");
  return read_map_spec(in);
}

std::string write_map_spec(const SubspaceMap& map) {
  std::ostringstream out;
  out << "ambient " << map.domain.ambient_rows;
  if (map.domain.ambient_cols != map.domain.ambient_rows)
    out << " " << map.domain.ambient_cols;
  out << "\n";
  auto emit_basis = [&](const SubspaceBasis& b) {
    out << "basis " << (b.name.empty() ? "X" : b.name) << " " << b.dim()
        << "\n";
    for (const auto& m : b.elements)
      for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c)
          out << (c ? " " : "") << format_complex(m(r, c));
        out << "\n";
      }
  };
  emit_basis(map.domain);
  bool endo = map.codomain.elements.size() == map.domain.elements.size();
  if (endo)
    for (std::size_t q = 0; q < map.domain.elements.size() && endo; ++q)
      endo = (map.domain.elements[q] - map.codomain.elements[q])
                 .cwiseAbs()
                 .maxCoeff() == 0.0;
  if (!endo) emit_basis(map.codomain);
  out << "coeffs\n";
  for (Index r = 0; r < map.coeffs.rows(); ++r) {
    for (Index c = 0; c < map.coeffs.cols(); ++c)
      out << (c ? " " : "") << format_complex(map.coeffs(r, c));
    out << "\n";
  }
  return out.str();
}

}  // namespace spinorlab
