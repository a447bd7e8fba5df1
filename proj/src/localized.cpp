#include "eqloc/localized.hpp"

#include <algorithm>
#include <tuple>

namespace eqloc {

namespace {

LaurentPoly one_minus_inverse(const Character& w) {
  LaurentPoly f = LaurentPoly::constant(w.rank(), 1);
  f.add_term(-w, -1);
  return f;
}

LaurentPoly product_of_factors(const LocalizedClass::Denominator& d, std::size_t rank) {
  LaurentPoly out = LaurentPoly::constant(rank, 1);
  for (const auto& [w, k] : d)
    for (unsigned i = 0; i < k; ++i) out *= one_minus_inverse(w);
  return out;
}

// Factors of `target` not already in `have`.
LocalizedClass::Denominator missing(const LocalizedClass::Denominator& target,
                                    const LocalizedClass::Denominator& have) {
  LocalizedClass::Denominator out;
  for (const auto& [w, k] : target) {
    auto it = have.find(w);
    unsigned present = it == have.end() ? 0 : it->second;
    if (k > present) out[w] = k - present;
  }
  return out;
}

LocalizedClass::Denominator lcm(const LocalizedClass::Denominator& a, const LocalizedClass::Denominator& b) {
  LocalizedClass::Denominator out = a;
  for (const auto& [w, k] : b) out[w] = std::max(out[w], k);
  return out;
}

}  // namespace

LocalizedClass::LocalizedClass(LaurentPoly numerator) : numerator_(std::move(numerator)) {}

LocalizedClass::LocalizedClass(LaurentPoly numerator, std::span<const Character> weights)
    : numerator_(std::move(numerator)) {
  const std::size_t rank = numerator_.rank();
  for (const auto& w : weights) {
    if (w.rank() != rank) throw RankMismatch("denominator weight has wrong rank");
    if (w.is_zero()) throw std::invalid_argument("denominator weight must be nonzero");
    if (w.is_canonical()) {
      ++denominator_[w];
    } else {
      // 1/(1 - e^{-w}) = -e^{w} / (1 - e^{-(-w)}) with -w canonical.
      Character mu = -w;
      numerator_ = numerator_.shifted(w).scaled(-1);
      ++denominator_[mu];
    }
  }
  normalize();
}

std::vector<Character> LocalizedClass::denominator_weights() const {
  std::vector<Character> out;
  for (const auto& [w, k] : denominator_)
    for (unsigned i = 0; i < k; ++i) out.push_back(w);
  return out;
}

std::size_t LocalizedClass::denominator_degree() const {
  std::size_t n = 0;
  for (const auto& [w, k] : denominator_) n += k;
  return n;
}

LaurentPoly LocalizedClass::denominator_poly() const { return product_of_factors(denominator_, rank()); }

void LocalizedClass::normalize() {
  if (numerator_.is_zero()) {
    denominator_.clear();
    return;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = denominator_.begin(); it != denominator_.end();) {
      auto q = divide_exact(numerator_, it->first);
      if (q) {
        numerator_ = std::move(*q);
        progress = true;
        if (--it->second == 0) {
          it = denominator_.erase(it);
          continue;
        }
      } else {
        ++it;
      }
    }
  }
}

LocalizedClass LocalizedClass::operator-() const {
  LocalizedClass out(*this);
  out.numerator_ = -out.numerator_;
  return out;
}

LocalizedClass LocalizedClass::operator+(const LocalizedClass& o) const {
  if (rank() != o.rank()) throw RankMismatch("localized classes of different rank");
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  Denominator common = lcm(denominator_, o.denominator_);
  LocalizedClass out(rank());
  out.numerator_ = numerator_ * product_of_factors(missing(common, denominator_), rank()) +
                   o.numerator_ * product_of_factors(missing(common, o.denominator_), rank());
  out.denominator_ = std::move(common);
  out.normalize();
  return out;
}

LocalizedClass LocalizedClass::operator*(const LocalizedClass& o) const {
  if (rank() != o.rank()) throw RankMismatch("localized classes of different rank");
  LocalizedClass out(rank());
  out.numerator_ = numerator_ * o.numerator_;
  out.denominator_ = denominator_;
  for (const auto& [w, k] : o.denominator_) out.denominator_[w] += k;
  out.normalize();
  return out;
}

bool LocalizedClass::operator==(const LocalizedClass& o) const {
  if (rank() != o.rank()) return false;
  Denominator common = lcm(denominator_, o.denominator_);
  return numerator_ * product_of_factors(missing(common, denominator_), rank()) ==
         o.numerator_ * product_of_factors(missing(common, o.denominator_), rank());
}

LocalizedClass adams(unsigned j, const LocalizedClass& x) {
  if (j == 0) throw std::invalid_argument("adams: j must be positive");
  std::vector<Character> weights;
  for (const auto& w : x.denominator_weights()) weights.push_back(w.scaled(static_cast<std::int64_t>(j)));
  return LocalizedClass(adams(j, x.numerator()), weights);
}

bool ratio_equal(const LocalizedClass& a, const LocalizedClass& b, const LocalizedClass& c,
                 const LocalizedClass& d) {
  return a * d == b * c;
}

LocalizedClass bott(unsigned j, std::span<const WeightMultiplicity> weights, std::size_t rank) {
  if (j == 0) throw std::invalid_argument("bott: j = 0 is not allowed");
  LaurentPoly numerator = LaurentPoly::constant(rank, 1);
  std::vector<Character> denominators;
  for (const auto& [lambda, mult] : weights) {
    if (lambda.rank() != rank) throw RankMismatch("bott: weight has wrong rank");
    if (mult >= 0) {
      LaurentPoly theta(rank);
      for (unsigned i = 0; i < j; ++i) theta.add_term(lambda.scaled(i), 1);
      numerator *= theta.pow(static_cast<unsigned>(mult));
      continue;
    }
    if (j == 1) continue;
    if (lambda.is_zero())
      throw std::invalid_argument("bott: theta^j of a negative trivial summand needs j inverted");
    // 1/theta^j(e^lambda) = (1 - e^{lambda}) / (1 - e^{j lambda}); the factor
    // (1 - e^{j lambda}) is (1 - e^{-w}) with w = -j lambda.
    LaurentPoly one_minus = LaurentPoly::constant(rank, 1);
    one_minus.add_term(lambda, -1);
    for (int i = 0; i < -mult; ++i) {
      numerator *= one_minus;
      denominators.push_back(lambda.scaled(-static_cast<std::int64_t>(j)));
    }
  }
  return LocalizedClass(std::move(numerator), denominators);
}

std::string to_string(const LocalizedClass& x, const Notation& notation) {
  if (x.is_laurent()) return to_string(x.numerator(), notation);
  auto weights = x.denominator_weights();
  std::reverse(weights.begin(), weights.end());
  const std::size_t k = weights.size();

  // Each factor 1 - e^{-w} may instead be shown as 1 - e^{w}, which
  // multiplies the numerator by -e^{w}.
  using Score = std::tuple<std::size_t, std::int64_t, std::string>;
  std::optional<Score> best;
  std::string best_text;
  const std::size_t choices = k <= 10 ? (std::size_t{1} << k) : 1;
  for (std::size_t mask = 0; mask < choices; ++mask) {
    LaurentPoly num = x.numerator();
    std::string den;
    for (std::size_t i = 0; i < k; ++i) {
      const bool flip = (mask >> i) & 1u;
      Character shown = flip ? weights[i] : -weights[i];
      if (flip) num = num.shifted(weights[i]).scaled(-1);
      den += "(1-e^{" + format_linear(shown, notation) + "})";
    }
    std::size_t negatives = 0;
    std::int64_t spread = 0;
    for (const auto& [m, c] : num.terms()) {
      if (c < 0) ++negatives;
      for (auto e : m.coords()) spread += e < 0 ? -e : e;
    }
    std::string num_text = to_string(num, notation);
    if (num.size() > 1) num_text = "(" + num_text + ")";
    std::string text = num_text + " / " + (k > 1 ? "(" + den + ")" : den);
    Score score{negatives, spread, text};
    if (!best || score < *best) {
      best = score;
      best_text = text;
    }
  }
  return best_text;
}

std::string to_string(const LocalizedClass& x) { return to_string(x, Notation::standard(x.rank())); }

}  // namespace eqloc
