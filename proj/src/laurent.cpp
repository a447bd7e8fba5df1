#include "eqloc/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace eqloc {

// ---------------------------------------------------------------------------
// Notation / characters

Notation Notation::standard(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) names.push_back("u" + std::to_string(i + 1));
  return Notation(std::move(names));
}

std::optional<std::size_t> Notation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  if (name.size() >= 2 && name[0] == 'u') {
    std::size_t k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      k = 10 * k + static_cast<std::size_t>(name[i] - '0');
    }
    if (k >= 1 && k <= names_.size()) return k - 1;
  }
  return std::nullopt;
}

std::string format_linear(const Character& c, const Notation& notation) {
  std::string out;
  for (std::size_t i = 0; i < c.rank(); ++i) {
    const auto a = c[i];
    if (a == 0) continue;
    if (a < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    const auto mag = a < 0 ? -a : a;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += notation.name(i);
  }
  return out.empty() ? "0" : out;
}

std::string format_linear(const Character& c) { return format_linear(c, Notation::standard(c.rank())); }

// ---------------------------------------------------------------------------
// Ring structure

LaurentPoly LaurentPoly::constant(std::size_t rank, const Integer& c) {
  LaurentPoly p(rank);
  p.add_term(Character::zero(rank), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Character& m, const Integer& c) {
  LaurentPoly p(m.rank());
  p.add_term(m, c);
  return p;
}

Integer LaurentPoly::coefficient(const Character& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer LaurentPoly::augmentation() const {
  Integer s = 0;
  for (const auto& [m, c] : terms_) s += c;
  return s;
}

void LaurentPoly::add_term(const Character& m, const Integer& c) {
  if (m.rank() != rank_) throw RankMismatch("exponent rank differs from polynomial rank");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_rank(const LaurentPoly& o) const {
  if (rank_ != o.rank_)
    throw RankMismatch("Laurent polynomials of rank " + std::to_string(rank_) + " and " +
                       std::to_string(o.rank_));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_rank(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_rank(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_rank(o);
  LaurentPoly out(rank_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1 + m2, c1 * c2);
  return out;
}

LaurentPoly LaurentPoly::scaled(const Integer& k) const {
  LaurentPoly out(rank_);
  if (k == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
  return out;
}

LaurentPoly LaurentPoly::shifted(const Character& m) const {
  if (m.rank() != rank_) throw RankMismatch("shift by character of different rank");
  LaurentPoly out(rank_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + m, c);
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly out = constant(rank_, 1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1u) out *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division

FactorDivision divide_by_factor(const LaurentPoly& f, const Character& lambda) {
  if (lambda.rank() != f.rank()) throw RankMismatch("divide_exact: weight rank differs");
  if (lambda.is_zero()) throw std::invalid_argument("divide_exact: zero weight");
  FactorDivision result{false, LaurentPoly(f.rank()), f};
  if (f.is_zero()) {
    result.divisible = true;
    return result;
  }
  const IntVec& grading = lambda.coords();
  const std::int64_t step = dot(grading, grading);
  std::int64_t min_grade = std::numeric_limits<std::int64_t>::max();
  for (const auto& [m, c] : f.terms()) min_grade = std::min(min_grade, m.pair(grading));

  LaurentPoly& rem = result.remainder;
  const Character shift = -lambda;
  while (!rem.is_zero()) {
    std::int64_t top = std::numeric_limits<std::int64_t>::min();
    for (const auto& [m, c] : rem.terms()) top = std::max(top, m.pair(grading));
    if (top < min_grade + step) return result;  // quotient would leave its support window
    LaurentPoly layer(f.rank());
    for (const auto& [m, c] : rem.terms())
      if (m.pair(grading) == top) layer.add_term(m, c);
    result.quotient += layer;
    rem -= layer;
    rem += layer.shifted(shift);
  }
  result.divisible = true;
  return result;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const Character& lambda) {
  auto r = divide_by_factor(f, lambda);
  if (!r.divisible) return std::nullopt;
  return std::move(r.quotient);
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.rank() != g.rank()) throw RankMismatch("divide_exact: rank mismatch");
  if (g.is_zero()) throw std::invalid_argument("divide_exact: division by zero");
  const std::size_t n = f.rank();
  if (f.is_zero()) return LaurentPoly(n);

  auto extremes = [n](const LaurentPoly& p) {
    IntVec lo(n, std::numeric_limits<std::int64_t>::max());
    IntVec hi(n, std::numeric_limits<std::int64_t>::min());
    for (const auto& [m, c] : p.terms())
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], m[k]);
        hi[k] = std::max(hi[k], m[k]);
      }
    return std::pair{lo, hi};
  };
  auto [flo, fhi] = extremes(f);
  auto [glo, ghi] = extremes(g);
  IntVec qlo(n), qhi(n);
  for (std::size_t k = 0; k < n; ++k) {
    qlo[k] = flo[k] - glo[k];
    qhi[k] = fhi[k] - ghi[k];
    if (qlo[k] > qhi[k]) return std::nullopt;
  }

  const auto& [glead_m, glead_c] = *g.terms().rbegin();
  LaurentPoly q(n);
  LaurentPoly rem = f;
  while (!rem.is_zero()) {
    const auto& [m, c] = *rem.terms().rbegin();
    Character qm = m - glead_m;
    for (std::size_t k = 0; k < n; ++k)
      if (qm[k] < qlo[k] || qm[k] > qhi[k]) return std::nullopt;
    if (!mpz_divisible_p(c.get_mpz_t(), glead_c.get_mpz_t())) return std::nullopt;
    Integer qc = c / glead_c;
    q.add_term(qm, qc);
    rem -= g.shifted(qm).scaled(qc);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Ring operations

LaurentPoly adams(unsigned j, const LaurentPoly& f) {
  if (j == 0) throw std::invalid_argument("adams: j must be positive");
  LaurentPoly out(f.rank());
  for (const auto& [m, c] : f.terms()) out.add_term(m.scaled(static_cast<std::int64_t>(j)), c);
  return out;
}

LaurentPoly lambda_minus_one(std::span<const Character> weights, std::size_t rank) {
  LaurentPoly out = LaurentPoly::constant(rank, 1);
  for (const auto& w : weights) {
    LaurentPoly factor = LaurentPoly::constant(rank, 1);
    factor.add_term(-w, -1);
    out *= factor;
  }
  return out;
}

LaurentPoly restrict_characters(const LaurentPoly& f, const IntMat& q) {
  const std::size_t target = q.size();
  for (const auto& row : q)
    if (row.size() != f.rank()) throw RankMismatch("restrict_characters: matrix has wrong width");
  LaurentPoly out(target);
  for (const auto& [m, c] : f.terms()) {
    IntVec image(target);
    for (std::size_t i = 0; i < target; ++i) image[i] = dot(q[i], m.coords());
    out.add_term(Character(std::move(image)), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string to_string(const LaurentPoly& f, const Notation& notation) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (m.is_zero()) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "e^{" + format_linear(m, notation) + "}";
  }
  return out;
}

std::string to_string(const LaurentPoly& f) { return to_string(f, Notation::standard(f.rank())); }

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Notation& notation) : s_(text), notation_(notation) {}

  LaurentPoly parse_all() {
    LaurentPoly v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

  Character linear_all() {
    Character c = linear();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character in character");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " at position " << pos_ << " in \"" << s_ << "\"";
    throw ParseError(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected variable name");
    return std::string(s_.substr(start, pos_ - start));
  }

  LaurentPoly expr() {
    LaurentPoly acc(notation_.rank());
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    LaurentPoly t = term();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  bool starts_factor() {
    char c = peek();
    return c == '(' || c == 'e' || std::isdigit(static_cast<unsigned char>(c));
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (true) {
      if (accept('*'))
        acc *= factor();
      else if (starts_factor())
        acc *= factor();
      else
        break;
    }
    return acc;
  }

  LaurentPoly factor() {
    LaurentPoly base = primary();
    if (accept('^')) {
      Integer k = integer();
      if (!k.fits_uint_p()) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  LaurentPoly primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      LaurentPoly v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPoly::constant(notation_.rank(), integer());
    if (c == 'e') {
      ++pos_;
      expect('^');
      Character m;
      if (accept('{')) {
        m = linear();
        expect('}');
      } else {
        // e^u1, e^-t, e^2t : a single signed term.
        m = linear_term(accept('-') ? -1 : 1);
      }
      return LaurentPoly::monomial(m);
    }
    fail("expected integer, e^{...} or '('");
  }

  Character linear_term(std::int64_t sign) {
    Integer k = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      k = integer();
      accept('*');
    }
    std::string name = identifier();
    auto idx = notation_.index_of(name);
    if (!idx) fail("unknown variable '" + name + "'");
    Character c = Character::unit(notation_.rank(), *idx);
    return c.scaled(sign * to_int64(k));
  }

  Character linear() {
    Character acc = Character::zero(notation_.rank());
    if (peek() == '0') {
      ++pos_;
      return acc;
    }
    std::int64_t sign = 1;
    if (accept('-'))
      sign = -1;
    else
      accept('+');
    acc = acc + linear_term(sign);
    while (true) {
      if (accept('+'))
        acc = acc + linear_term(1);
      else if (accept('-'))
        acc = acc + linear_term(-1);
      else
        break;
    }
    return acc;
  }

  std::string_view s_;
  const Notation& notation_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, const Notation& notation) {
  return ExprParser(text, notation).parse_all();
}

LaurentPoly parse_laurent(std::string_view text, std::size_t rank) {
  return parse_laurent(text, Notation::standard(rank));
}

Character parse_character(std::string_view text, const Notation& notation) {
  return ExprParser(text, notation).linear_all();
}

}  // namespace eqloc
