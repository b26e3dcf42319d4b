#pragma once

// NEC signatures (g; +/-; [m_1,...,m_n]; {cycles}): representation, text
// grammar, orbifold measure and kernel genus.
//
// Grammar (whitespace-insensitive):
//   signature := "(" genus ";" sign ";" "[" periods? "]" ";" "{" cycles? "}" ")"
//   sign      := "+" | "-"
//   periods   := period ("," period)*
//   cycles    := cycle+
//   cycle     := "(" periods? ")" ( "^" count )?
//
// "()" is an empty period cycle; "()^k" expands to k of them.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "klein/rational.hpp"

namespace klein {

enum class Sign { Plus, Minus };

struct NecSignature {
  Int genus = 0;
  Sign sign = Sign::Plus;
  std::vector<Int> periods;
  Int empty_cycles = 0;
  std::vector<std::vector<Int>> nonempty_cycles;

  Int period_count() const { return static_cast<Int>(periods.size()); }
  bool has_nonempty_cycles() const { return !nonempty_cycles.empty(); }

  // Number of a_i, b_i (PLUS) or d_i (MINUS) generators.
  Int orientation_generator_count() const { return sign == Sign::Plus ? 2 * genus : genus; }

  friend bool operator==(const NecSignature&, const NecSignature&) = default;
};

class SignatureError : public std::invalid_argument {
 public:
  enum class Kind { Syntax, Semantic };

  SignatureError(Kind kind, std::size_t position, const std::string& what)
      : std::invalid_argument("position " + std::to_string(position) + ": " + what),
        kind_(kind),
        position_(position) {}

  Kind kind() const { return kind_; }
  // 1-based character offset into the input text.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

namespace detail {

class SignatureParser {
 public:
  explicit SignatureParser(std::string_view text) : text_(text) {}

  NecSignature parse() {
    NecSignature sig;
    expect('(');
    std::size_t genus_pos = here();
    sig.genus = integer("genus");
    expect(';');
    std::size_t sign_pos = here();
    char s = next("sign");
    if (s == '+') {
      sig.sign = Sign::Plus;
    } else if (s == '-') {
      sig.sign = Sign::Minus;
    } else {
      throw SignatureError(SignatureError::Kind::Syntax, sign_pos, "expected '+' or '-'");
    }
    if (sig.sign == Sign::Minus && sig.genus == 0) {
      throw SignatureError(SignatureError::Kind::Semantic, genus_pos,
                           "sign '-' requires genus >= 1");
    }
    expect(';');
    expect('[');
    sig.periods = period_list(']');
    expect(']');
    expect(';');
    expect('{');
    while (peek() == '(') {
      advance();
      std::vector<Int> links = period_list(')');
      expect(')');
      Int repeat = 1;
      if (peek() == '^') {
        advance();
        repeat = integer("cycle count");
      }
      for (Int r = 0; r < repeat; ++r) {
        if (links.empty()) {
          ++sig.empty_cycles;
        } else {
          sig.nonempty_cycles.push_back(links);
        }
      }
    }
    expect('}');
    expect(')');
    skip_ws();
    if (pos_ != text_.size()) {
      throw SignatureError(SignatureError::Kind::Syntax, here(), "trailing characters");
    }
    return sig;
  }

 private:
  std::size_t here() const { return pos_ + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void advance() { ++pos_; }

  char next(const char* what) {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw SignatureError(SignatureError::Kind::Syntax, here(),
                           std::string("unexpected end of input, expected ") + what);
    }
    return text_[pos_++];
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      std::string found = pos_ >= text_.size() ? "end of input" : std::string("'") + text_[pos_] + "'";
      throw SignatureError(SignatureError::Kind::Syntax, here(),
                           std::string("expected '") + c + "', found " + found);
    }
    ++pos_;
  }

  Int integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    Int value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (Int{1} << 40)) {
        throw SignatureError(SignatureError::Kind::Semantic, start + 1, std::string(what) + " too large");
      }
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) {
      throw SignatureError(SignatureError::Kind::Syntax, start + 1,
                           std::string("expected decimal ") + what);
    }
    return value;
  }

  std::vector<Int> period_list(char close) {
    std::vector<Int> out;
    if (peek() == close) return out;
    for (;;) {
      skip_ws();
      std::size_t at = here();
      Int m = integer("period");
      if (m < 2) {
        throw SignatureError(SignatureError::Kind::Semantic, at, "period must be >= 2");
      }
      out.push_back(m);
      if (peek() != ',') break;
      advance();
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void append_list(std::string& out, const std::vector<Int>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
}

}  // namespace detail

inline NecSignature parse_signature(std::string_view text) {
  return detail::SignatureParser(text).parse();
}

// Canonical text: empty cycles first, then non-empty cycles, no shorthand.
inline std::string format_signature(const NecSignature& sig) {
  std::string out = "(" + std::to_string(sig.genus) + ";";
  out += sig.sign == Sign::Plus ? "+" : "-";
  out += ";[";
  detail::append_list(out, sig.periods);
  out += "];{";
  for (Int j = 0; j < sig.empty_cycles; ++j) out += "()";
  for (const auto& cycle : sig.nonempty_cycles) {
    out += '(';
    detail::append_list(out, cycle);
    out += ')';
  }
  out += "})";
  return out;
}

// mu(Gamma) / 2pi.
inline Rational orbifold_measure(const NecSignature& sig) {
  Int alpha = sig.sign == Sign::Plus ? 2 : 1;
  Rational mu = Rational(alpha * sig.genus + sig.empty_cycles - 2);
  for (Int m : sig.periods) mu += Rational(m - 1, m);
  for (const auto& cycle : sig.nonempty_cycles) {
    mu += 1;
    for (Int link : cycle) mu += Rational(link - 1, 2 * link);
  }
  return mu;
}

class GenusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Cross-cap genus p of the kernel of an index-M surface subgroup:
// p - 2 = M * mu(Gamma).
inline Int kernel_genus(const NecSignature& sig, Int order) {
  if (order <= 0) throw GenusError("group order must be positive");
  Rational mu = orbifold_measure(sig);
  if (mu <= Rational(0)) {
    throw GenusError("non-positive measure " + mu.str() + " for " + format_signature(sig));
  }
  Rational p = Rational(order) * mu + Rational(2);
  if (!p.is_integer()) {
    throw GenusError("M * measure + 2 = " + p.str() + " is not an integer");
  }
  return p.numerator();
}

enum class GeneratorKind { Elliptic, Connecting, Reflection, Hyperbolic, Glide };

struct GeneratorDescriptor {
  GeneratorKind kind;
  Int index;       // 1-based within its kind
  Int period = 0;  // elliptic only
  bool orientation_reversing = false;

  std::string name() const {
    switch (kind) {
      case GeneratorKind::Elliptic: return "x" + std::to_string(index);
      case GeneratorKind::Connecting: return "e" + std::to_string(index);
      case GeneratorKind::Reflection: return "c" + std::to_string(index);
      case GeneratorKind::Hyperbolic:
        return std::string(index % 2 ? "a" : "b") + std::to_string((index + 1) / 2);
      case GeneratorKind::Glide: return "d" + std::to_string(index);
    }
    return "?";
  }

  friend bool operator==(const GeneratorDescriptor&, const GeneratorDescriptor&) = default;
};

// x_1..x_n, e_1..e_k, c_1..c_k, then a_1,b_1,...,a_g,b_g (PLUS) or d_1..d_g (MINUS).
// Hyperbolic indices run 1..2g so that odd = a_i and even = b_i.
inline std::vector<GeneratorDescriptor> canonical_generators(const NecSignature& sig) {
  std::vector<GeneratorDescriptor> gens;
  for (std::size_t i = 0; i < sig.periods.size(); ++i) {
    gens.push_back({GeneratorKind::Elliptic, static_cast<Int>(i + 1), sig.periods[i], false});
  }
  for (Int j = 1; j <= sig.empty_cycles; ++j) gens.push_back({GeneratorKind::Connecting, j, 0, false});
  for (Int j = 1; j <= sig.empty_cycles; ++j) gens.push_back({GeneratorKind::Reflection, j, 0, true});
  if (sig.sign == Sign::Plus) {
    for (Int i = 1; i <= 2 * sig.genus; ++i) gens.push_back({GeneratorKind::Hyperbolic, i, 0, false});
  } else {
    for (Int i = 1; i <= sig.genus; ++i) gens.push_back({GeneratorKind::Glide, i, 0, true});
  }
  return gens;
}

}  // namespace klein
