#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "conelab/cone.hpp"

namespace conelab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ConeSpec cone() {
    const std::string name = word();
    expect('(');
    ConeSpec c = body(name);
    expect(')');
    return c;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
  }

 private:
  ConeSpec body(const std::string& name) {
    if (name == "orthant") return ConeSpec::orthant(integer());
    if (name == "soc") return ConeSpec::second_order(integer());
    if (name == "psd") return ConeSpec::psd(integer());
    if (name == "circ") {
      const Index d = integer();
      expect(',');
      return ConeSpec::circular(d, expr());
    }
    if (name == "subspace") {
      const Index k = integer();
      expect(',');
      return ConeSpec::subspace(k, integer());
    }
    if (name == "product") {
      std::vector<ConeSpec> blocks{cone()};
      while (peek() == ',') {
        ++pos_;
        blocks.push_back(cone());
      }
      return ConeSpec::product(std::move(blocks));
    }
    if (name == "polar") return ConeSpec::polar_of(cone());
    fail("unknown cone '" + name + "'");
  }

  // expr := term (('*' | '/') term)*
  double expr() {
    double v = term();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      const double w = term();
      v = c == '*' ? v * w : v / w;
    }
    return v;
  }

  // term := number | pi | sqrt(expr) | atan(expr)
  double term() {
    skip();
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const std::string w = word();
      if (w == "pi") return std::numbers::pi;
      if (w != "sqrt" && w != "atan") fail("unknown function '" + w + "'");
      expect('(');
      const double a = expr();
      expect(')');
      return w == "sqrt" ? std::sqrt(a) : std::atan(a);
    }
    return number();
  }

  double number() {
    skip();
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  Index integer() {
    const double v = number();
    if (v != std::floor(v) || v < 0) fail("expected a non-negative integer");
    return static_cast<Index>(v);
  }

  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cone spec: " + what + " at position " + std::to_string(pos_) + " in '" +
                      std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ConeSpec parse_cone(std::string_view text) {
  Parser p(text);
  ConeSpec c = p.cone();
  p.finish();
  return c;
}

}  // namespace conelab
