#include <cctype>

#include "tricover/errors.hpp"
#include "tricover/picard.hpp"

namespace tricover {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const BlowupSurface& s, const NameResolver& extra)
      : text_(text), surface_(s), extra_(extra) {}

  DivisorClass parse() {
    auto total = DivisorClass::zero(surface_.size());
    skip_space();
    if (at_end()) fail("empty class expression");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      total += sign * term();
      first = false;
      skip_space();
    }
    return total;
  }

 private:
  DivisorClass term() {
    int coefficient = 1;
    bool has_number = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = coefficient * 10 + (peek() - '0');
        if (coefficient > 100000) fail("coefficient too large");
        ++pos_;
      }
      has_number = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
      }
    }
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
      if (has_number && coefficient == 0) return DivisorClass::zero(surface_.size());
      fail("expected a curve name");
    }
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    auto name = text_.substr(start, pos_ - start);
    return coefficient * resolve(name);
  }

  DivisorClass resolve(std::string_view name) {
    if (extra_) {
      if (auto c = extra_(name)) {
        if (c->rank() != surface_.size()) fail("class '" + std::string(name) + "' has the wrong rank");
        return *c;
      }
    }
    return named_class(name, surface_);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("class expression '" + std::string(text_) + "': " + what + " at column " +
                     std::to_string(pos_ + 1));
  }

  std::string_view text_;
  const BlowupSurface& surface_;
  const NameResolver& extra_;
  std::size_t pos_ = 0;
};

}  // namespace

DivisorClass parse_class_expression(std::string_view expr, const BlowupSurface& s,
                                    const NameResolver& extra) {
  return ExpressionParser(expr, s, extra).parse();
}

}  // namespace tricover
