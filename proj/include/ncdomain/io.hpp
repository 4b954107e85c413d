#pragma once

// On-disk formats.  All readers accept '#' comments and blank lines; all
// writers emit shortest round-trip decimals so that write/read is lossless.
//
//   poly file:   "n=<int>" header, then "<word> <complex>" lines ('e' allowed)
//   tuple file:  "n=<int> k=<int>" header, then n blocks of k rows of k
//                complex entries
//   shift file:  "<dim> <n> <L>" header, then "i j re im" per nonzero of the
//                vertically stacked matrix [W_1; ...; W_n] (1-based indices,
//                rows (m-1)*dim+1 .. m*dim holding W_m)
//   slice csv:   "x,y" header plus one "x,y" row per grid point

#include <fstream>
#include <sstream>
#include <tuple>

#include "ncdomain/fock.hpp"
#include "ncdomain/text.hpp"

namespace ncdomain {

class FileError : public std::runtime_error {
 public:
  explicit FileError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw FileError("failed writing '" + path + "'");
}

inline PolyElement parse_poly(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<int> n;
  std::map<Word, std::complex<double>> coeffs;
  std::map<Word, std::size_t> first_seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.empty()) continue;
    if (!n) {
      std::size_t eq = body.find('=');
      if (eq == std::string::npos || trim(body.substr(0, eq)) != "n")
        throw ParseError(lineno, "expected header 'n=<int>'");
      int value = 0;
      try {
        value = std::stoi(trim(body.substr(eq + 1)));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad alphabet size '" + trim(body.substr(eq + 1)) + "'");
      }
      if (value < 1) throw ParseError(lineno, "alphabet size must be >= 1");
      n = value;
      continue;
    }
    std::vector<std::string> tok = split_ws(body);
    if (tok.size() != 2) throw ParseError(lineno, "expected '<word> <coefficient>'");
    Word w;
    std::complex<double> c;
    try {
      w = parse_word(tok[0], *n);
      c = parse_complex(tok[1]);
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ParseError(lineno, "coefficient must be finite");
    if (auto it = first_seen.find(w); it != first_seen.end())
      throw ParseError(lineno, "duplicate word '" + tok[0] + "' (first on line " +
                                   std::to_string(it->second) + ")");
    first_seen.emplace(w, lineno);
    if (c != 0.0) coeffs.emplace(w, c);
  }
  if (!n) throw ParseError(0, "missing header 'n=<int>'");
  return PolyElement(*n, std::move(coeffs));
}

inline PolyElement parse_poly_text(const std::string& text) {
  std::istringstream in(text);
  return parse_poly(in);
}

inline std::string serialize_poly(const PolyElement& p) {
  std::string out = "n=" + std::to_string(p.n()) + "\n";
  for (const auto& [w, c] : p.coeffs())
    out += format_word(w, p.n()) + " " + format_complex(c) + "\n";
  return out;
}

inline MatrixTuple parse_tuple(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::pair<int, int>> header;  // (n, k)
  std::vector<std::complex<double>> entries;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.empty()) continue;
    std::vector<std::string> tok = split_ws(body);
    if (!header) {
      if (tok.size() != 2 || tok[0].rfind("n=", 0) != 0 || tok[1].rfind("k=", 0) != 0)
        throw ParseError(lineno, "expected header 'n=<int> k=<int>'");
      int n = 0, k = 0;
      try {
        n = std::stoi(tok[0].substr(2));
        k = std::stoi(tok[1].substr(2));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad tuple header");
      }
      if (n < 1 || k < 1) throw ParseError(lineno, "tuple sizes must be >= 1");
      header = {n, k};
      expected = static_cast<std::size_t>(n) * k * k;
      continue;
    }
    for (const std::string& t : tok) {
      if (entries.size() == expected)
        throw ParseError(lineno, "more entries than n*k*k");
      try {
        entries.push_back(parse_complex(t));
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    }
  }
  if (!header) throw ParseError(0, "missing header 'n=<int> k=<int>'");
  if (entries.size() != expected)
    throw ParseError(0, "expected " + std::to_string(expected) + " entries, found " +
                            std::to_string(entries.size()));
  auto [n, k] = *header;
  std::vector<CMat> mats;
  std::size_t pos = 0;
  for (int m = 0; m < n; ++m) {
    CMat mat(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) mat(r, c) = entries[pos++];
    mats.push_back(std::move(mat));
  }
  return MatrixTuple(std::move(mats));
}

inline MatrixTuple parse_tuple_text(const std::string& text) {
  std::istringstream in(text);
  return parse_tuple(in);
}

inline std::string serialize_tuple(const MatrixTuple& t) {
  std::string out = "n=" + std::to_string(t.n()) + " k=" + std::to_string(t.k()) + "\n";
  for (int m = 1; m <= t.n(); ++m) {
    out += "\n";
    for (int r = 0; r < t.k(); ++r) {
      for (int c = 0; c < t.k(); ++c) {
        if (c) out += " ";
        out += format_complex(t.mat(m)(r, c));
      }
      out += "\n";
    }
  }
  return out;
}

inline std::string serialize_shifts(const ShiftOperators& shifts) {
  const auto dim = static_cast<long long>(shifts.dim());
  std::string out = "# dim n L\n";
  out += std::to_string(dim) + " " + std::to_string(shifts.n()) + " " +
         std::to_string(shifts.max_len()) + "\n";
  out += "# i j re im  (rows of W_m occupy block m of [W_1; ...; W_n])\n";
  for (int m = 1; m <= shifts.n(); ++m) {
    const SparseCMat& w = shifts.mat(m);
    for (int outer = 0; outer < w.outerSize(); ++outer)
      for (SparseCMat::InnerIterator it(w, outer); it; ++it) {
        long long row = (static_cast<long long>(m) - 1) * dim + it.row() + 1;
        out += std::to_string(row) + " " + std::to_string(it.col() + 1) + " " +
               format_double(it.value().real()) + " " +
               format_double(it.value().imag()) + "\n";
      }
  }
  return out;
}

struct ShiftFile {
  long long dim = 0;
  int n = 0;
  int max_len = 0;
  std::vector<std::tuple<long long, long long, std::complex<double>>> entries;
};

inline ShiftFile parse_shifts(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  ShiftFile f;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.empty()) continue;
    std::vector<std::string> tok = split_ws(body);
    try {
      if (!have_header) {
        if (tok.size() != 3) throw ParseError(lineno, "expected header '<dim> <n> <L>'");
        f.dim = std::stoll(tok[0]);
        f.n = std::stoi(tok[1]);
        f.max_len = std::stoi(tok[2]);
        have_header = true;
        continue;
      }
      if (tok.size() != 4) throw ParseError(lineno, "expected '<i> <j> <re> <im>'");
      f.entries.emplace_back(std::stoll(tok[0]), std::stoll(tok[1]),
                             std::complex<double>(parse_double(tok[2]), parse_double(tok[3])));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!have_header) throw ParseError(0, "missing header '<dim> <n> <L>'");
  return f;
}

inline ShiftFile parse_shifts_text(const std::string& text) {
  std::istringstream in(text);
  return parse_shifts(in);
}

inline std::string slice_csv(const std::vector<std::pair<double, double>>& pts) {
  std::string out = "x,y\n";
  for (const auto& [x, y] : pts)
    out += format_double(x) + "," + format_double(y) + "\n";
  return out;
}

}  // namespace ncdomain
