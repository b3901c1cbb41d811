#include "wachlab/io/format.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "wachlab/errors.hpp"

namespace wachlab::io {

namespace {

struct Line {
  int number;
  std::string_view text;
};

// Non-blank, non-comment lines with their 1-based numbers.
class Lines {
 public:
  explicit Lines(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string_view l = text.substr(pos, end - pos);
      ++number;
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      const std::size_t first = l.find_first_not_of(" \t");
      if (first != std::string_view::npos && l[first] != '#') lines_.push_back({number, l});
      last_line_ = number;
      pos = end + 1;
    }
  }

  const Line& next(const char* what) {
    if (at_ >= lines_.size()) throw ParseError(last_line_, 1, std::string("unexpected end of input, expected ") + what);
    return lines_[at_++];
  }

  void expect_end() const {
    if (at_ < lines_.size()) throw ParseError(lines_[at_].number, 1, "unexpected trailing content");
  }

  bool done() const { return at_ >= lines_.size(); }
  const Line& peek() const { return lines_[at_]; }

 private:
  std::vector<Line> lines_;
  std::size_t at_ = 0;
  int last_line_ = 1;
};

// Cursor over one line with column tracking.
class Cursor {
 public:
  explicit Cursor(const Line& l) : line_(l) {}

  void skip_space() {
    while (pos_ < line_.text.size() && (line_.text[pos_] == ' ' || line_.text[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.text.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_.number, column(), message); }
  [[noreturn]] void fail_at(int col, const std::string& message) const { throw ParseError(line_.number, col, message); }

  void expect(std::string_view lit) {
    skip_space();
    if (line_.text.substr(pos_, lit.size()) != lit) fail("expected '" + std::string(lit) + "'");
    pos_ += lit.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < line_.text.size() && line_.text[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_space();
    return pos_ < line_.text.size() ? line_.text[pos_] : '\0';
  }

  mpz_class integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < line_.text.size() && (line_.text[pos_] == '-' || line_.text[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < line_.text.size() && std::isdigit(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string s(line_.text.substr(start, pos_ - start));
    if (s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  }

  int small_integer(const char* what) {
    const std::size_t start = pos_;
    const mpz_class v = integer();
    if (!v.fits_sint_p()) {
      pos_ = start;
      fail(std::string(what) + " out of range");
    }
    return static_cast<int>(v.get_si());
  }

  mpq_class rational() {
    const mpz_class num = integer();
    mpz_class den = 1;
    if (pos_ < line_.text.size() && line_.text[pos_] == '/') {
      ++pos_;
      const int col = column();
      den = integer();
      if (sgn(den) <= 0) fail_at(col, "denominator must be positive");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  // key=<int>
  int keyed(std::string_view key) {
    expect(key);
    expect("=");
    return small_integer(std::string(key).c_str());
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

void expect_section(Lines& lines, const char* name) {
  const Line& l = lines.next(name);
  Cursor c(l);
  c.expect(name);
  if (!c.at_end()) c.fail(std::string("unexpected content after '") + name + "'");
}

rational::QMatrix read_rational_matrix(Lines& lines, int d, const char* what) {
  rational::QMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const Line& l = lines.next(what);
    Cursor c(l);
    for (int k = 0; k < d; ++k) {
      if (c.at_end()) c.fail(std::string("expected ") + std::to_string(d) + " entries in " + what + " row");
      m(r, k) = c.rational();
    }
    if (!c.at_end()) c.fail(std::string("too many entries in ") + what + " row");
  }
  return m;
}

rational::QMatrix vectors_from(Cursor& c, int dim) {
  std::vector<std::vector<mpq_class>> cols;
  if (c.at_end()) return rational::QMatrix(dim, 0);
  while (true) {
    std::vector<mpq_class> v;
    const int col = c.column();
    v.push_back(c.rational());
    while (c.accept(',')) v.push_back(c.rational());
    if (static_cast<int>(v.size()) != dim)
      c.fail("vector starting at column " + std::to_string(col) + " has " + std::to_string(v.size()) +
             " entries, expected " + std::to_string(dim));
    cols.push_back(std::move(v));
    if (!c.accept(';')) break;
  }
  if (!c.at_end()) c.fail("expected ',' or ';' in span");
  return rational::QMatrix::from_columns(dim, cols);
}

padic::TruncSeries read_series(Cursor& c, const padic::RingParams& params) {
  c.expect("[");
  std::vector<padic::Residue> coeffs;
  if (c.peek() != ']') {
    do {
      const int col = c.column();
      const mpz_class v = c.integer();
      if (static_cast<int>(coeffs.size()) >= params.order())
        c.fail_at(col, "series has more than Mx = " + std::to_string(params.order()) + " coefficients");
      coeffs.push_back(padic::reduce(v, params));
    } while (c.accept(','));
  }
  c.expect("]");
  coeffs.resize(static_cast<std::size_t>(params.order()), 0);
  return padic::TruncSeries(params, std::move(coeffs));
}

padic::SeriesMatrix read_series_matrix(Lines& lines, const padic::RingParams& params, int d, const char* what) {
  padic::SeriesMatrix m(params, d, d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      const Line& l = lines.next(what);
      Cursor c(l);
      m.set(r, k, read_series(c, params));
      if (!c.at_end()) c.fail("one series per line expected");
    }
  return m;
}

}  // namespace

std::string format_rational(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

std::string format_vectors(const rational::QMatrix& cols) {
  std::string out;
  for (int c = 0; c < cols.cols(); ++c) {
    if (c) out += ';';
    for (int r = 0; r < cols.rows(); ++r) {
      if (r) out += ',';
      out += format_rational(cols(r, c));
    }
  }
  return out;
}

rational::QMatrix parse_vectors(std::string_view text, int dim) {
  const Line l{1, text};
  Cursor c(l);
  return vectors_from(c, dim);
}

fpn::FilPhiNModule parse_filmod(std::string_view text) {
  Lines lines(text);
  const Line& header = lines.next("header");
  Cursor h(header);
  h.expect("filmod");
  h.expect("v1");
  const int p = h.keyed("p");
  const int col = h.column();
  const int dim = h.keyed("dim");
  if (dim < 1) throw ParseError(header.number, col + 1, "dim must be >= 1");
  if (!h.at_end()) h.fail("unexpected content after header");

  expect_section(lines, "phi:");
  const rational::QMatrix phi = read_rational_matrix(lines, dim, "phi");
  expect_section(lines, "N:");
  const rational::QMatrix n = read_rational_matrix(lines, dim, "N");
  expect_section(lines, "fil:");
  std::vector<fpn::Flag::Step> steps;
  while (!lines.done()) {
    const Line& l = lines.next("fil step");
    Cursor c(l);
    const int level = c.keyed("level");
    c.expect("span");
    c.expect("=");
    steps.push_back({level, vectors_from(c, dim)});
  }
  return fpn::FilPhiNModule(p, phi, n, fpn::Flag(dim, std::move(steps)));
}

std::string serialize(const fpn::FilPhiNModule& d) {
  std::ostringstream os;
  os << "filmod v1 p=" << d.p() << " dim=" << d.dim() << '\n';
  auto matrix = [&](const char* name, const rational::QMatrix& m) {
    os << name << '\n';
    for (int r = 0; r < m.rows(); ++r) {
      for (int k = 0; k < m.cols(); ++k) os << (k ? " " : "") << format_rational(m(r, k));
      os << '\n';
    }
  };
  matrix("phi:", d.phi());
  matrix("N:", d.n());
  os << "fil:\n";
  for (const auto& s : d.fil().steps()) os << "level=" << s.level << " span=" << format_vectors(s.span) << '\n';
  return os.str();
}

wach::WachModule parse_wach(std::string_view text) {
  Lines lines(text);
  const Line& header = lines.next("header");
  Cursor h(header);
  h.expect("wach");
  h.expect("v1");
  const int p = h.keyed("p");
  const int np = h.keyed("Np");
  const int mx = h.keyed("Mx");
  const int col = h.column();
  const int rank = h.keyed("rank");
  if (rank < 1) throw ParseError(header.number, col + 1, "rank must be >= 1");
  h.expect("chi0");
  h.expect("=");
  const mpz_class chi0 = h.integer();
  if (!h.at_end()) h.fail("unexpected content after header");
  const padic::RingParams params = [&] {
    try {
      return padic::RingParams(p, np, mx);
    } catch (const ParameterError& e) {
      throw ParseError(header.number, 1, e.what());
    }
  }();

  expect_section(lines, "P:");
  padic::SeriesMatrix pm = read_series_matrix(lines, params, rank, "P entry");
  expect_section(lines, "T:");
  padic::SeriesMatrix tm = read_series_matrix(lines, params, rank, "T entry");
  expect_section(lines, "G:");
  padic::SeriesMatrix gm = read_series_matrix(lines, params, rank, "G entry");
  lines.expect_end();
  return wach::WachModule(std::move(pm), std::move(tm), std::move(gm), chi0);
}

std::string serialize(const wach::WachModule& w) {
  std::ostringstream os;
  const auto& params = w.params();
  os << "wach v1 p=" << params.p() << " Np=" << params.prec() << " Mx=" << params.order() << " rank=" << w.rank()
     << " chi0=" << w.chi0().get_str() << '\n';
  auto matrix = [&](const char* name, const padic::SeriesMatrix& m) {
    os << name << '\n';
    for (int r = 0; r < m.rows(); ++r)
      for (int k = 0; k < m.cols(); ++k) os << m.at(r, k).to_string() << '\n';
  };
  matrix("P:", w.phi());
  matrix("T:", w.tau());
  matrix("G:", w.gamma());
  return os.str();
}

}  // namespace wachlab::io
