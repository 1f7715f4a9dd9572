// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acfg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "acfg/error.hpp"

namespace acfg {

// ------------------------------------------------------------------ Poly

Poly::Poly(Residue p, std::size_t nx, std::size_t ny) : p_(p), nx_(nx), ny_(ny) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "polynomial over non-prime p");
}

Poly Poly::constant(Residue p, std::size_t nx, std::size_t ny, std::int64_t c) {
  Poly out(p, nx, ny);
  out.add_term(Exponents(nx + ny, 0), reduce_mod(c, p));
  return out;
}

Poly Poly::variable(Residue p, std::size_t nx, std::size_t ny, std::size_t index) {
  require(index < nx + ny, ErrorCode::kInvalidArgument, "variable index out of range");
  Poly out(p, nx, ny);
  Exponents e(nx + ny, 0);
  e[index] = 1;
  out.add_term(e, 1);
  return out;
}

void Poly::add_term(const Exponents& e, Residue c) {
  require(e.size() == nvars(), ErrorCode::kInvalidArgument, "exponent vector has wrong arity");
  c %= p_;
  if (!c) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = add_mod(it->second, c, p_);
    if (!it->second) terms_.erase(it);
  }
}

std::size_t Poly::total_degree() const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::size_t Poly::degree_in(std::size_t var) const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[var]);
  return d;
}

Poly Poly::with_arity(std::size_t nx, std::size_t ny) const {
  require(nx >= nx_ && ny >= ny_, ErrorCode::kInvalidArgument, "arity can only grow");
  Poly out(p_, nx, ny);
  for (const auto& [e, c] : terms_) {
    Exponents f(nx + ny, 0);
    std::copy(e.begin(), e.begin() + nx_, f.begin());
    std::copy(e.begin() + nx_, e.end(), f.begin() + nx);
    out.add_term(f, c);
  }
  return out;
}

namespace {

std::string monomial_text(const Exponents& e, std::size_t nx, bool w_names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += '*';
    if (w_names) {
      s += 'w';
    } else {
      s += i < nx ? "x" + std::to_string(i + 1) : "y" + std::to_string(i - nx + 1);
    }
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const std::string mono = monomial_text(it->first, nx_, false);
    if (!s.empty()) s += " + ";
    if (mono.empty()) {
      s += std::to_string(it->second);
    } else if (it->second == 1) {
      s += mono;
    } else {
      s += std::to_string(it->second) + '*' + mono;
    }
  }
  return s;
}

Poly Poly::operator-() const {
  Poly out(p_, nx_, ny_);
  for (const auto& [e, c] : terms_) out.add_term(e, neg_mod(c, p_));
  return out;
}

namespace {
void check_same(const Poly& a, const Poly& b) {
  require(a.p() == b.p() && a.nx() == b.nx() && a.ny() == b.ny(), ErrorCode::kInvalidArgument,
          "polynomials differ in characteristic or arity");
}
}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  check_same(a, b);
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  check_same(a, b);
  Poly out(a.p_, a.nx_, a.ny_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, mul_mod(ca, cb, a.p_));
    }
  }
  return out;
}

Poly pow(const Poly& a, std::uint32_t e) {
  Poly result = Poly::constant(a.p(), a.nx(), a.ny(), 1);
  Poly base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { kNum, kX, kY, kW, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEq, kNe, kAnd,
                 kEnd };

struct Token {
  Tok kind;
  std::size_t column;  // 1-based
  Residue value = 0;   // number mod p, or variable index (1-based)
  std::uint64_t raw = 0;  // saturated decimal value, for exponents
};

[[noreturn]] void parse_fail(std::size_t column, const std::string& what) {
  fail(ErrorCode::kParse, "parse error at column " + std::to_string(column) + ": " + what);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view s, Residue p, bool element_mode) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (is_digit(c)) {
      Residue v = 0;
      std::uint64_t raw = 0;
      while (i < s.size() && is_digit(s[i])) {
        const unsigned d = static_cast<unsigned>(s[i] - '0');
        v = static_cast<Residue>((std::uint64_t{v} * 10 + d) % p);
        raw = raw > 1'000'000'000'000ULL ? raw : raw * 10 + d;
        ++i;
      }
      out.push_back({Tok::kNum, col, v, raw});
      continue;
    }
    if (c == 'x' || c == 'y') {
      if (element_mode) parse_fail(col, std::string("unknown variable '") + c + "'");
      ++i;
      if (i >= s.size() || !is_digit(s[i])) parse_fail(col, "variable needs an index, e.g. x1");
      std::uint64_t idx = 0;
      while (i < s.size() && is_digit(s[i])) {
        idx = idx * 10 + static_cast<unsigned>(s[i] - '0');
        if (idx > 4096) parse_fail(col, "variable index too large");
        ++i;
      }
      if (idx == 0) parse_fail(col, "variable indices start at 1");
      if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        parse_fail(col, "unknown variable");
      }
      out.push_back({c == 'x' ? Tok::kX : Tok::kY, col, static_cast<Residue>(idx)});
      continue;
    }
    if (c == 'w' && element_mode) {
      ++i;
      if (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        parse_fail(col, "unknown variable");
      }
      out.push_back({Tok::kW, col, 1});
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::kPlus, col}); break;
      case '-': out.push_back({Tok::kMinus, col}); break;
      case '*': out.push_back({Tok::kStar, col}); break;
      case '^': out.push_back({Tok::kCaret, col}); break;
      case '(': out.push_back({Tok::kLParen, col}); break;
      case ')': out.push_back({Tok::kRParen, col}); break;
      case '&': out.push_back({Tok::kAnd, col}); break;
      case '=': out.push_back({Tok::kEq, col}); break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::kNe, col});
          ++i;
          break;
        }
        parse_fail(col, "expected '!='");
      default:
        if (std::isalpha(static_cast<unsigned char>(c))) {
          parse_fail(col, std::string("unknown variable '") + c + "'");
        }
        parse_fail(col, std::string("unexpected character '") + c + "'");
    }
    ++i;
  }
  out.push_back({Tok::kEnd, s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Residue p, std::size_t nx, std::size_t ny)
      : toks_(std::move(toks)), p_(p), nx_(nx), ny_(ny) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Poly expr() {
    Poly acc = Poly(p_, nx_, ny_);
    bool negate = false;
    if (accept(Tok::kMinus)) {
      negate = true;
    } else {
      accept(Tok::kPlus);
    }
    Poly t = term();
    acc = negate ? acc - t : acc + t;
    while (true) {
      if (accept(Tok::kPlus)) {
        acc = acc + term();
      } else if (accept(Tok::kMinus)) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept(Tok::kStar)) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (accept(Tok::kCaret)) {
      const Token e = next();
      if (e.kind != Tok::kNum) parse_fail(e.column, "exponent must be a nonnegative integer");
      if (e.raw > 4096) parse_fail(e.column, "exponent too large");
      base = pow(base, static_cast<std::uint32_t>(e.raw));
    }
    return base;
  }

  Poly atom() {
    const Token t = next();
    switch (t.kind) {
      case Tok::kNum: return Poly::constant(p_, nx_, ny_, t.value);
      case Tok::kX: return Poly::variable(p_, nx_, ny_, t.value - 1);
      case Tok::kY: return Poly::variable(p_, nx_, ny_, nx_ + t.value - 1);
      case Tok::kW: return Poly::variable(p_, nx_, ny_, 0);
      case Tok::kLParen: {
        Poly inner = expr();
        const Token close = next();
        if (close.kind != Tok::kRParen) parse_fail(close.column, "expected ')'");
        return inner;
      }
      case Tok::kEnd: parse_fail(t.column, "unexpected end of input");
      default: parse_fail(t.column, "expected a number, variable or '('");
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Residue p_;
  std::size_t nx_, ny_;
};

std::pair<std::size_t, std::size_t> arity(const std::vector<Token>& toks, std::size_t nx,
                                          std::size_t ny) {
  for (const Token& t : toks) {
    if (t.kind == Tok::kX) nx = std::max<std::size_t>(nx, t.value);
    if (t.kind == Tok::kY) ny = std::max<std::size_t>(ny, t.value);
  }
  return {nx, ny};
}

}  // namespace

QFConjunction parse_formula(std::string_view text, Residue p, std::size_t nx_hint,
                            std::size_t ny_hint) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "p must be prime");
  std::vector<Token> toks = lex(text, p, false);
  const auto [nx, ny] = arity(toks, nx_hint, ny_hint);
  Parser parser(toks, p, nx, ny);
  QFConjunction phi;
  phi.p = p;
  phi.nx = nx;
  phi.ny = ny;
  phi.text = std::string(text);
  if (parser.peek().kind == Tok::kEnd) parse_fail(parser.peek().column, "empty formula");
  do {
    Poly lhs = parser.expr();
    if (parser.accept(Tok::kNe)) {
      phi.inequations.push_back(lhs - parser.expr());
    } else if (parser.accept(Tok::kEq)) {
      phi.equations.push_back(lhs - parser.expr());
    } else {
      phi.equations.push_back(lhs);
    }
  } while (parser.accept(Tok::kAnd));
  if (parser.peek().kind != Tok::kEnd) {
    parse_fail(parser.peek().column, "expected '&', '=', '!=' or end of input");
  }
  return phi;
}

Poly parse_poly(std::string_view text, Residue p, std::size_t nx_hint, std::size_t ny_hint) {
  require(is_prime(p), ErrorCode::kInvalidArgument, "p must be prime");
  std::vector<Token> toks = lex(text, p, false);
  const auto [nx, ny] = arity(toks, nx_hint, ny_hint);
  Parser parser(toks, p, nx, ny);
  Poly out = parser.expr();
  if (parser.peek().kind != Tok::kEnd) parse_fail(parser.peek().column, "trailing input");
  return out;
}

Coeffs parse_element(std::string_view text, const Field& field) {
  std::vector<Token> toks = lex(text, field.p(), true);
  Parser parser(toks, field.p(), 1, 0);
  const Poly poly = parser.expr();
  if (parser.peek().kind != Tok::kEnd) parse_fail(parser.peek().column, "trailing input");
  const Coeffs w = field.generator();
  Coeffs acc = field.zero();
  for (const auto& [e, c] : poly.terms()) {
    acc = field.add(acc, field.scale(field.pow(w, e[0]), c));
  }
  return acc;
}

std::string format_element(const Coeffs& x) {
  std::string s;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (!x[i]) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += std::to_string(x[i]);
      continue;
    }
    if (x[i] != 1) s += std::to_string(x[i]) + '*';
    s += 'w';
    if (i > 1) s += '^' + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// ------------------------------------------------------------- FieldPoly

void FieldPoly::add_term(const Field& F, const Exponents& e, const Coeffs& c) {
  require(e.size() == nvars_, ErrorCode::kInvalidArgument, "exponent vector has wrong arity");
  if (acfg::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = F.add(it->second, c);
    if (acfg::is_zero(it->second)) terms_.erase(it);
  }
}

std::size_t FieldPoly::total_degree() const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::size_t FieldPoly::degree_in(std::size_t var) const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[var]);
  return d;
}

std::string FieldPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const std::string mono = monomial_text(it->first, nvars_, false);
    const std::string coeff = format_element(it->second);
    if (!s.empty()) s += " + ";
    if (mono.empty()) {
      s += coeff;
    } else if (coeff == "1") {
      s += mono;
    } else {
      s += '(' + coeff + ")*" + mono;
    }
  }
  return s;
}

namespace {
void check_same(const FieldPoly& a, const FieldPoly& b) {
  require(a.level() == b.level(), ErrorCode::kLevelMismatch, "polynomials at different levels");
  require(a.nvars() == b.nvars(), ErrorCode::kInvalidArgument, "polynomials differ in arity");
}
}  // namespace

FieldPoly add(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  check_same(a, b);
  FieldPoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(F, e, c);
  return out;
}

FieldPoly sub(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  check_same(a, b);
  FieldPoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(F, e, F.neg(c));
  return out;
}

FieldPoly mul(const Field& F, const FieldPoly& a, const FieldPoly& b) {
  check_same(a, b);
  FieldPoly out(a.level(), a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(F, e, F.mul(ca, cb));
    }
  }
  return out;
}

FieldPoly scale(const Field& F, const FieldPoly& a, const Coeffs& c) {
  FieldPoly out(a.level(), a.nvars());
  for (const auto& [e, v] : a.terms()) out.add_term(F, e, F.mul(v, c));
  return out;
}

FieldPoly to_field_poly(const Tower& t, const Poly& p, std::size_t level) {
  const Field& F = t.field(level);
  require(F.p() == p.p(), ErrorCode::kInvalidArgument, "characteristic mismatch");
  FieldPoly out(level, p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(F, e, F.constant(c));
  return out;
}

FieldPoly substitute_params(const Tower& t, const Poly& p, std::span<const TowerElement> params,
                            std::size_t level) {
  const Field& F = t.field(level);
  require(F.p() == p.p(), ErrorCode::kInvalidArgument, "characteristic mismatch");
  require(params.size() == p.ny(), ErrorCode::kInvalidArgument,
          "formula expects " + std::to_string(p.ny()) + " parameters, got " +
              std::to_string(params.size()));
  std::vector<Coeffs> y;
  for (const TowerElement& b : params) {
    require(b.level <= level, ErrorCode::kLevelMismatch, "parameter above the target level");
    y.push_back(t.embed_coeffs(b.coeffs, b.level, level));
  }
  FieldPoly out(level, p.nx());
  for (const auto& [e, c] : p.terms()) {
    Coeffs coeff = F.constant(c);
    for (std::size_t j = 0; j < p.ny(); ++j) {
      if (e[p.nx() + j]) coeff = F.mul(coeff, F.pow(y[j], e[p.nx() + j]));
    }
    out.add_term(F, Exponents(e.begin(), e.begin() + p.nx()), coeff);
  }
  return out;
}

Coeffs eval(const Field& F, const FieldPoly& f, std::span<const Coeffs> values) {
  require(values.size() == f.nvars(), ErrorCode::kInvalidArgument,
          "assignment covers " + std::to_string(values.size()) + " of " +
              std::to_string(f.nvars()) + " variables");
  Coeffs acc = F.zero();
  for (const auto& [e, c] : f.terms()) {
    Coeffs m = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) m = F.mul(m, e[i] == 1 ? values[i] : F.pow(values[i], e[i]));
    }
    acc = F.add(acc, m);
  }
  return acc;
}

TowerElement eval(const Tower& t, const Poly& p, std::span<const TowerElement> x,
                  std::span<const TowerElement> y) {
  require(x.size() == p.nx() && y.size() == p.ny(), ErrorCode::kInvalidArgument,
          "assignment does not cover all variables");
  std::optional<std::size_t> level;
  std::vector<Coeffs> values;
  for (const auto* part : {&x, &y}) {
    for (const TowerElement& v : *part) {
      if (!level) level = v.level;
      require(v.level == *level, ErrorCode::kLevelMismatch, "assignment spans several levels");
      values.push_back(v.coeffs);
    }
  }
  const std::size_t lv = level.value_or(0);
  return {lv, eval(t.field(lv), to_field_poly(t, p, lv), values)};
}

bool satisfies(const Tower& t, const QFConjunction& phi, std::span<const TowerElement> x,
               std::span<const TowerElement> y) {
  require(x.size() == phi.nx, ErrorCode::kInvalidArgument, "witness has wrong length");
  const std::size_t level = x.empty() ? (y.empty() ? 0 : y[0].level) : x[0].level;
  std::vector<TowerElement> ys;
  for (const TowerElement& b : y) ys.push_back(t.embed(b, level));
  for (const Poly& e : phi.equations) {
    if (!is_zero(eval(t, e, x, ys).coeffs)) return false;
  }
  for (const Poly& q : phi.inequations) {
    if (is_zero(eval(t, q, x, ys).coeffs)) return false;
  }
  return true;
}

}  // namespace acfg
