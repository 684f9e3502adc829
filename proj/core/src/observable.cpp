#include "ergolab/observable.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

void check_frequency(const Frequency& m, std::size_t dim) {
  if (m.size() != dim)
    throw InvalidArgument("observable: frequency of length " + std::to_string(m.size()) +
                          " in a " + std::to_string(dim) + "-dimensional observable");
}

}  // namespace

Observable::Observable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("observable: dimension must be positive");
}

Observable::Observable(std::size_t dim, CoefficientMap terms) : Observable(dim) {
  for (auto it = terms.begin(); it != terms.end();) {
    check_frequency(it->first, dim_);
    if (it->second == Complex{})
      it = terms.erase(it);
    else
      ++it;
  }
  terms_ = std::move(terms);
}

Observable Observable::constant(std::size_t dim, Complex c) {
  return Observable(dim, {{Frequency(dim, 0), c}});
}

Observable Observable::character(Frequency m, Complex c) {
  const std::size_t dim = m.size();
  return Observable(dim, {{std::move(m), c}});
}

Observable Observable::cosine(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw InvalidArgument("cosine: axis out of range");
  Frequency plus(dim, 0), minus(dim, 0);
  plus[axis] = 1;
  minus[axis] = -1;
  return Observable(dim, {{plus, 0.5}, {minus, 0.5}});
}

Complex Observable::coefficient(const Frequency& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

double Observable::sup_norm_bound() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += std::abs(c);
  return s;
}

double Observable::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += std::norm(c);
  return s;
}

Complex Observable::operator()(const Point& p) const {
  if (p.dimension() != dim_) throw InvalidArgument("observable: point dimension mismatch");
  Complex acc{};
  for (const auto& [m, c] : terms_) {
    Fixed phase = 0;
    for (std::size_t i = 0; i < dim_; ++i) phase += static_cast<Fixed>(m[i]) * p.fixed(i);
    acc += c * unit_phase(phase);
  }
  return acc;
}

Observable Observable::conj() const {
  CoefficientMap out;
  for (const auto& [m, c] : terms_) {
    Frequency neg(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
    out.emplace(std::move(neg), std::conj(c));
  }
  return Observable(dim_, std::move(out));
}

Observable Observable::scaled(Complex c) const {
  CoefficientMap out;
  for (const auto& [m, v] : terms_) out.emplace(m, c * v);
  return Observable(dim_, std::move(out));
}

Observable operator+(const Observable& a, const Observable& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("observable: dimension mismatch in sum");
  CoefficientMap out = a.terms_;
  for (const auto& [m, c] : b.terms_) out[m] += c;
  return Observable(a.dim_, std::move(out));
}

Observable operator-(const Observable& a, const Observable& b) { return a + b.scaled(-1.0); }

Observable multiply(const Observable& a, const Observable& b, std::size_t term_limit) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("observable: dimension mismatch in product");
  const std::size_t dim = a.dimension();
  CoefficientMap out;
  Frequency sum(dim);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < dim; ++i)
        if (__builtin_add_overflow(ma[i], mb[i], &sum[i]))
          throw ExactArithmeticOverflow("observable product: frequency overflow");
      out[sum] += ca * cb;
      if (out.size() > term_limit) throw ExactArithmeticOverflow("observable product: term limit exceeded");
    }
  }
  return Observable(dim, std::move(out));
}

// ---------------------------------------------------------------------------
// Literal syntax

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : s_(text) {}

  CoefficientMap parse_sum(std::optional<std::size_t>& dim) {
    CoefficientMap terms;
    skip_ws();
    if (at_end()) fail("empty observable literal");
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      first = false;
      auto [freq, coeff] = parse_term();
      if (freq) {
        if (!dim) dim = freq->size();
        if (freq->size() != *dim) fail("frequency length does not match dimension");
        terms[*freq] += sign * coeff;
      } else {
        constants_ += sign * coeff;
        has_constant_ = true;
      }
      skip_ws();
      if (at_end()) break;
    }
    return terms;
  }

  Complex constants() const { return constants_; }
  bool has_constant() const { return has_constant_; }

 private:
  std::pair<std::optional<Frequency>, Complex> parse_term() {
    skip_ws();
    if (starts_character()) return {parse_character(), Complex{1.0}};
    const Complex c = parse_coefficient();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (!starts_character()) fail("expected e(...) after '*'");
      return {parse_character(), c};
    }
    return {std::nullopt, c};
  }

  bool starts_character() const {
    std::size_t p = pos_;
    if (p >= s_.size() || s_[p] != 'e') return false;
    ++p;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == '(';
  }

  Frequency parse_character() {
    ++pos_;  // 'e'
    skip_ws();
    expect('(');
    Frequency m;
    while (true) {
      skip_ws();
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc{}) fail("expected integer frequency");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      m.push_back(v);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      break;
    }
    return m;
  }

  // number | number 'i' | 'i' | '(' number ['i'] [('+'|'-') number 'i'] ')'
  Complex parse_coefficient() {
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      Complex c = parse_signed_part();
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        const double sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
        const Complex im = parse_part();
        if (im.imag() == 0.0 && im.real() != 0.0) fail("second part of a complex coefficient must be imaginary");
        c += sign * im;
      }
      skip_ws();
      expect(')');
      return c;
    }
    return parse_part();
  }

  Complex parse_signed_part() {
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
    }
    return sign * parse_part();
  }

  Complex parse_part() {
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (peek() == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view s_;
  std::size_t pos_ = 0;
  Complex constants_{};
  bool has_constant_ = false;
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Observable parse_observable(std::string_view literal, std::optional<std::size_t> dim) {
  LiteralParser parser(literal);
  CoefficientMap terms = parser.parse_sum(dim);
  const std::size_t d = dim.value_or(1);
  if (parser.has_constant()) terms[Frequency(d, 0)] += parser.constants();
  return Observable(d, std::move(terms));
}

std::string format_observable(const Observable& f) {
  if (f.empty()) return "0*e(" + [&] {
    std::string zeros;
    for (std::size_t i = 0; i < f.dimension(); ++i) zeros += i ? ",0" : "0";
    return zeros;
  }() + ")";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format_real(c.real());
    out += std::signbit(c.imag()) ? "-" : "+";
    out += format_real(std::abs(c.imag())) + "i)*e(";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(m[i]);
    }
    out += ")";
  }
  return out;
}

}  // namespace ergolab
