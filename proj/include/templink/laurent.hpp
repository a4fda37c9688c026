#pragma once

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace templink {

// Laurent polynomial in the bracket variable A, exact integer coefficients.
// No zero coefficients are ever stored.
class Laurent {
 public:
  Laurent() = default;

  static Laurent monomial(long long coeff, int exp) {
    Laurent p;
    if (coeff != 0) p.terms_[exp] = coeff;
    return p;
  }
  static Laurent one() { return monomial(1, 0); }
  // Value contributed by one extra disjoint circle: -A^2 - A^-2.
  static Laurent circle() {
    Laurent p;
    p.terms_[-2] = -1;
    p.terms_[2] = -1;
    return p;
  }
  // (-A^3)^n for any integer n (used for writhe normalization).
  static Laurent neg_a3_pow(long long n) {
    return monomial((n % 2 == 0) ? 1 : -1, static_cast<int>(3 * n));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, long long>& terms() const { return terms_; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) {
    a += b;
    return a;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add(ea + eb, ca * cb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
  }
  Laurent pow(int k) const {
    Laurent r = one();
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }
  // Substitute A -> A^-1.
  Laurent mirrored() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
  }

  auto operator<=>(const Laurent&) const = default;

  // Text form: terms "c*A^e" sorted by exponent, joined by " + ".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out << " + ";
      out << c << "*A^" << e;
      first = false;
    }
    return out.str();
  }

  static Laurent parse(const std::string& text) {
    Laurent p;
    if (text == "0") return p;
    size_t pos = 0;
    while (pos < text.size()) {
      size_t next = text.find(" + ", pos);
      std::string term =
          text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      size_t star = term.find("*A^");
      if (star == std::string::npos)
        throw std::invalid_argument("bad polynomial term: " + term);
      long long c = std::stoll(term.substr(0, star));
      int e = std::stoi(term.substr(star + 3));
      p.add(e, c);
      pos = next == std::string::npos ? text.size() : next + 3;
    }
    return p;
  }

 private:
  void add(int e, long long c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  std::map<int, long long> terms_;
};

}  // namespace templink
