#pragma once

// Number/text helpers shared by the file-format readers and the CLI: shortest
// round-trip double formatting and the "re+imI" complex literal syntax.

#include <charconv>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdomain {

// Parse failure with a 1-based line number; line 0 means the file as a whole.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty number");
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (*first == '+') ++first;
  double v = 0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

// Complex literals: "re", "re+imI", "re-imI" (also a bare "imI").
inline std::complex<double> parse_complex(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty complex literal");
  if (tok.back() != 'I') return {parse_double(tok), 0.0};
  std::string body = tok.substr(0, tok.size() - 1);
  if (body.empty()) throw std::invalid_argument("bad complex literal '" + tok + "'");
  // Split at the last +/- that starts the imaginary part (not a leading sign,
  // not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_double(body)};
  std::string re = body.substr(0, split);
  std::string im = body.substr(split);  // keeps the sign
  return {parse_double(re), parse_double(im)};
}

inline std::string format_complex(const std::complex<double>& z) {
  double re = z.real() == 0.0 ? 0.0 : z.real();  // canonicalize -0
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::string out = format_double(re);
  out += (im < 0 ? "-" : "+");
  out += format_double(im < 0 ? -im : im);
  out += 'I';
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Strip a '#' comment, then trim.
inline std::string strip_comment(const std::string& line) {
  std::size_t h = line.find('#');
  return trim(h == std::string::npos ? line : line.substr(0, h));
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace ncdomain
