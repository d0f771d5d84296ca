#include "sigmapi/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "sigmapi/errors.hpp"

namespace sigmapi {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance(std::size_t n = 1) { pos_ = std::min(pos_ + n, text_.size()); }

  /// Spaces, tabs, carriage returns and comments; newlines only if asked.
  void skip_blank(bool newlines = false, bool commas = false) {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n') || (commas && c == ',')) {
        advance();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip_blank();
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(ErrorCode::SyntaxError, std::string("expected ") + what, pos_, pos_ + 1);
  }

  SourceSpan span(std::size_t begin, std::size_t end) const {
    begin = std::min(begin, text_.size());
    end = std::clamp(end, begin, text_.size());
    SourceSpan s;
    s.begin = begin;
    s.end = end;
    for (std::size_t i = 0; i < begin; ++i) {
      if (text_[i] == '\n') {
        ++s.line;
        s.column = 1;
      } else {
        ++s.column;
      }
    }
    return s;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& what, std::size_t begin, std::size_t end) const {
    const auto s = span(begin, end);
    throw ParseError(code,
                     std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + what, s);
  }

  /// Unsigned decimal literal; empty when none starts here.
  std::string_view number_lexeme() {
    skip_blank();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (peek() == '.') {
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (pos_ == start || (pos_ - start == 1 && text_[start] == '.')) {
      pos_ = start;
      return {};
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = save;
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    return text_.substr(start, pos_ - start);
  }

  double number(const char* what) {
    skip_blank();
    const std::size_t start = pos_;
    auto lex = number_lexeme();
    if (lex.empty()) fail(ErrorCode::SyntaxError, std::string("expected ") + what, start, start + 1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(lex.data(), lex.data() + lex.size(), v);
    if (ec != std::errc() || p != lex.data() + lex.size())
      fail(ErrorCode::SyntaxError, "malformed number", start, pos_);
    return v;
  }

  double signed_number(const char* what) {
    skip_blank();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1.0 : 1.0;
      advance();
    }
    return sign * number(what);
  }

  std::size_t index() {
    const std::size_t start = pos_;
    std::size_t v = 0;
    const char* b = text_.data() + pos_;
    const char* e = text_.data() + text_.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p == b) fail(ErrorCode::SyntaxError, "expected a variable index", start, start + 1);
    advance(static_cast<std::size_t>(p - b));
    if (v == 0) fail(ErrorCode::SyntaxError, "variable indices start at 1", start, pos_);
    return v - 1;
  }

  bool keyword(std::string_view word) {
    skip_blank();
    if (text_.substr(pos_, word.size()) != word) return false;
    advance(word.size());
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool integer_lexeme(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::int64_t parse_int64(Scanner& sc, std::string_view lex, std::size_t begin) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(lex.data(), lex.data() + lex.size(), v);
  if (ec != std::errc() || p != lex.data() + lex.size())
    sc.fail(ErrorCode::BadExponent, "exponent integer out of range", begin, sc.pos());
  return v;
}

/// NUMBER | "(" [sign] NUMBER [ "/" NUMBER ] ")"
Exponent parse_exponent(Scanner& sc) {
  sc.skip_blank();
  const std::size_t begin = sc.pos();
  const bool paren = sc.accept('(');
  bool negative = false;
  if (paren) {
    sc.skip_blank();
    if (sc.peek() == '-' || sc.peek() == '+') {
      negative = sc.peek() == '-';
      sc.advance();
    }
  }
  sc.skip_blank();
  const std::size_t num_begin = sc.pos();
  auto num = sc.number_lexeme();
  if (num.empty()) sc.fail(ErrorCode::SyntaxError, "expected an exponent", num_begin, num_begin + 1);
  Exponent e;
  if (paren && sc.accept('/')) {
    sc.skip_blank();
    const std::size_t den_begin = sc.pos();
    auto den = sc.number_lexeme();
    if (den.empty()) sc.fail(ErrorCode::SyntaxError, "expected a denominator", den_begin, den_begin + 1);
    if (!integer_lexeme(num) || !integer_lexeme(den))
      sc.fail(ErrorCode::BadExponent, "rational exponents need integer parts", begin, sc.pos());
    const auto p = parse_int64(sc, num, num_begin), q = parse_int64(sc, den, den_begin);
    if (q == 0) sc.fail(ErrorCode::BadExponent, "zero denominator in exponent", begin, sc.pos() + 1);
    e = Exponent(Rational::make(negative ? -p : p, q));
  } else if (integer_lexeme(num)) {
    const auto p = parse_int64(sc, num, num_begin);
    e = Exponent::integer(negative ? -p : p);
  } else {
    double v = 0.0;
    std::from_chars(num.data(), num.data() + num.size(), v);
    e = Exponent::decimal(negative ? -v : v);
  }
  if (paren) sc.expect(')', "')' closing the exponent");
  return e;
}

/// Body of poly(...) / jet(...) after the opening keyword.
std::vector<double> parse_coeff_list(Scanner& sc) {
  sc.expect('(', "'('");
  std::vector<double> c{sc.signed_number("a coefficient")};
  while (sc.accept(',')) c.push_back(sc.signed_number("a coefficient"));
  sc.expect(')', "')'");
  return c;
}

/// NUMBER | "(" [sign] NUMBER "/" NUMBER ")" | poly(...) | jet(...); leading
/// sign allowed when `signed_ok`.
std::optional<TimeJet> parse_coeff(Scanner& sc, bool signed_ok, bool* plain = nullptr) {
  if (plain) *plain = false;
  sc.skip_blank();
  const std::size_t begin = sc.pos();
  double sign = 1.0;
  if (signed_ok && (sc.peek() == '-' || sc.peek() == '+')) {
    sign = sc.peek() == '-' ? -1.0 : 1.0;
    sc.advance();
  }
  if (sc.keyword("poly")) return TimeJet(parse_coeff_list(sc)) * sign;
  if (sc.keyword("jet")) return TimeJet(parse_coeff_list(sc), 0.0, false) * sign;
  if (sc.accept('(')) {
    const double p = sc.signed_number("a numerator");
    sc.expect('/', "'/'");
    const double q = sc.number("a denominator");
    sc.expect(')', "')'");
    if (q == 0.0) sc.fail(ErrorCode::SyntaxError, "zero denominator", begin, sc.pos());
    return TimeJet::constant(sign * p / q);
  }
  sc.skip_blank();
  auto lex = sc.number_lexeme();
  if (lex.empty()) {
    if (sign != 1.0 || sc.pos() != begin) sc.fail(ErrorCode::SyntaxError, "expected a coefficient", begin, sc.pos() + 1);
    return std::nullopt;
  }
  double v = 0.0;
  std::from_chars(lex.data(), lex.data() + lex.size(), v);
  if (plain) *plain = true;
  return TimeJet::constant(sign * v);
}

struct ParsedTerm {
  Term term;
  bool bare_zero = false;
  std::size_t max_index = 0;
  bool has_index = false;
};

void parse_factor(Scanner& sc, std::vector<Monomial::Factor>& factors, ParsedTerm& out) {
  sc.skip_blank();
  if (sc.peek() != 'x') sc.fail(ErrorCode::SyntaxError, "expected a factor x<k>", sc.pos(), sc.pos() + 1);
  sc.advance();
  const std::size_t j = sc.index();
  Exponent p = Exponent::integer(1);
  if (sc.accept('^')) p = parse_exponent(sc);
  factors.emplace_back(j, p);
  out.max_index = out.has_index ? std::max(out.max_index, j) : j;
  out.has_index = true;
}

ParsedTerm parse_term(Scanner& sc, double sign) {
  ParsedTerm out;
  std::vector<Monomial::Factor> factors;
  sc.skip_blank();
  const std::size_t begin = sc.pos();
  bool plain = false;
  auto coeff = parse_coeff(sc, false, &plain);
  if (!coeff) {
    if (sc.peek() != 'x')
      sc.fail(ErrorCode::SyntaxError, "expected a term", begin, begin + 1);
    parse_factor(sc, factors, out);
    coeff = TimeJet::constant(1.0);
  }
  const bool plain_zero = plain && coeff->coeff(0) == 0.0;
  while (sc.accept('*')) parse_factor(sc, factors, out);
  out.term.coeff = *coeff * sign;
  out.term.monomial = Monomial(std::move(factors));
  // a literal "0" standing alone is the zero equation, not a term
  out.bare_zero = plain_zero && !out.has_index;
  return out;
}

}  // namespace

SigmaPiOde parse_ode(std::string_view text) {
  Scanner sc(text);
  std::map<std::size_t, std::vector<Term>> eqs;
  std::size_t n = 0;
  while (true) {
    sc.skip_blank(true);
    if (sc.eof()) break;
    const std::size_t line_begin = sc.pos();
    if (sc.peek() != 'x') sc.fail(ErrorCode::SyntaxError, "expected an equation x<k>' = ...", line_begin, line_begin + 1);
    sc.advance();
    const std::size_t i = sc.index();
    sc.expect('\'', "' after the left-hand side");
    sc.expect('=', "'='");
    const std::size_t lhs_end = sc.pos();
    if (eqs.count(i))
      sc.fail(ErrorCode::DuplicateEquation, "x" + std::to_string(i + 1) + " already has an equation",
              line_begin, lhs_end);
    n = std::max(n, i + 1);

    std::vector<ParsedTerm> terms;
    sc.skip_blank();
    double sign = 1.0;
    bool leading_sign = false;
    if (sc.peek() == '-' || sc.peek() == '+') {
      sign = sc.peek() == '-' ? -1.0 : 1.0;
      leading_sign = true;
      sc.advance();
    }
    terms.push_back(parse_term(sc, sign));
    while (true) {
      sc.skip_blank();
      if (sc.peek() != '+' && sc.peek() != '-') break;
      sign = sc.peek() == '-' ? -1.0 : 1.0;
      sc.advance();
      terms.push_back(parse_term(sc, sign));
    }
    sc.skip_blank();
    if (!sc.eof() && sc.peek() != '\n')
      sc.fail(ErrorCode::SyntaxError, "unexpected character", sc.pos(), sc.pos() + 1);

    std::vector<Term>& eq = eqs[i];
    if (terms.size() == 1 && terms[0].bare_zero && !leading_sign) continue;
    for (auto& t : terms) {
      if (t.has_index) n = std::max(n, t.max_index + 1);
      eq.push_back(std::move(t.term));
    }
  }
  if (eqs.empty()) sc.fail(ErrorCode::SyntaxError, "no equations", 0, 0);
  std::vector<std::vector<Term>> out(n);
  for (auto& [i, terms] : eqs) out[i] = std::move(terms);
  return SigmaPiOde(std::move(out));
}

std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_jet(const TimeJet& jet) {
  if (!jet.exact()) {
    if (jet.center() != 0.0)
      throw Error(ErrorCode::InvalidArgument, "a truncated jet can only be written around t = 0");
    std::string s = "jet(";
    for (std::size_t k = 0; k < jet.coeffs().size(); ++k) s += (k ? "," : "") + format_real(jet.coeffs()[k]);
    return s + ")";
  }
  const TimeJet j = jet.is_constant() ? jet : jet.shifted(0.0);
  auto c = j.coeffs();
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0.0) --n;
  if (n == 0) return "0";
  if (n == 1) return format_real(c[0]);
  std::string s = "poly(";
  for (std::size_t k = 0; k < n; ++k) s += (k ? "," : "") + format_real(c[k]);
  return s + ")";
}

std::string format_exponent(const Exponent& p) {
  if (const auto& r = p.rational()) {
    if (r->den == 1) return r->num < 0 ? "(" + std::to_string(r->num) + ")" : std::to_string(r->num);
    return "(" + std::to_string(r->num) + "/" + std::to_string(r->den) + ")";
  }
  std::string s = format_real(std::abs(p.value()));
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return p.value() < 0.0 ? "(-" + s + ")" : s;
}

std::string format_monomial(const Monomial& m, std::string_view symbol) {
  if (m.is_constant()) return "1";
  std::string s;
  for (const auto& [j, p] : m.factors()) {
    if (!s.empty()) s += "*";
    s += std::string(symbol) + std::to_string(j + 1);
    if (!(p.is_exact() && p == Exponent::integer(1))) s += "^" + format_exponent(p);
  }
  return s;
}

std::string serialize_ode(const SigmaPiOde& ode) {
  std::string out;
  for (std::size_t i = 0; i < ode.dim(); ++i) {
    out += "x" + std::to_string(i + 1) + "' = ";
    const auto eq = ode.equation(i);
    if (eq.empty()) out += "0";
    for (std::size_t l = 0; l < eq.size(); ++l) {
      const auto& [coeff, mono] = eq[l];
      std::string body;
      bool negative = false;
      if (coeff.exact() && coeff.is_constant()) {
        const double c = coeff.coeff(0);
        negative = c < 0.0;
        body = (c == 0.0 && mono.is_constant()) ? "poly(0)" : format_real(std::abs(c));
      } else {
        body = format_jet(coeff);
      }
      if (l == 0)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      out += body;
      if (!mono.is_constant()) out += "*" + format_monomial(mono);
    }
    if (i + 1 < ode.dim()) out += "\n";
  }
  return out;
}

QuadraticFrame parse_frame(std::string_view text) {
  Scanner sc(text);
  std::vector<std::vector<TimeJet>> rows;
  std::vector<std::size_t> row_begin;
  while (true) {
    sc.skip_blank(true);
    if (sc.eof()) break;
    row_begin.push_back(sc.pos());
    std::vector<TimeJet> row;
    while (true) {
      sc.skip_blank(false, true);
      if (sc.eof() || sc.peek() == '\n') break;
      const std::size_t begin = sc.pos();
      auto entry = parse_coeff(sc, true);
      if (!entry) sc.fail(ErrorCode::SyntaxError, "expected a frame entry", begin, begin + 1);
      row.push_back(std::move(*entry));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) sc.fail(ErrorCode::SyntaxError, "empty frame", 0, 0);
  const std::size_t m = rows.size();
  std::vector<TimeJet> entries;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m)
      sc.fail(ErrorCode::NonSquare,
              "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(m),
              row_begin[i], row_begin[i] + 1);
    for (auto& e : rows[i]) entries.push_back(std::move(e));
  }
  return QuadraticFrame(m, std::move(entries));
}

std::string serialize_frame(const QuadraticFrame& frame) {
  std::string out;
  for (std::size_t i = 0; i < frame.dim(); ++i) {
    for (std::size_t j = 0; j < frame.dim(); ++j) out += (j ? " " : "") + format_jet(frame(i, j));
    if (i + 1 < frame.dim()) out += "\n";
  }
  return out;
}

}  // namespace sigmapi
