#include "ordforge/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace ordforge {

namespace {

Ord part_ord(const Ord::Part& p) { return Ord::from_parts({p}); }

std::shared_ptr<const Ord> box(const Ord& a) {
  return std::make_shared<const Ord>(a);
}

bool strongly_critical(const Ord::Part& p) {
  return p.kind == Ord::Kind::big_omega || p.kind == Ord::Kind::psi;
}

// Is the single summand q a fixed point of phi_a?  Exactly the Veblen values
// of a higher level and the strongly critical summands above a.
bool fixed_point_of(const Ord& a, const Ord::Part& q) {
  if (q.kind == Ord::Kind::veblen) return compare(a, *q.first) == Cmp::less;
  if (strongly_critical(q)) return compare(a, part_ord(q)) == Cmp::less;
  return false;
}

Cmp invert(Cmp c) {
  switch (c) {
    case Cmp::less: return Cmp::greater;
    case Cmp::greater: return Cmp::less;
    default: return Cmp::equal;
  }
}

// phi(a,b) against a strongly critical value k: below iff both arguments are.
// Equality cannot occur between distinct normal forms.
Cmp veblen_vs_critical(const Ord::Part& v, const Ord& k) {
  if (compare(*v.first, k) == Cmp::less && compare(*v.second, k) == Cmp::less)
    return Cmp::less;
  return Cmp::greater;
}

Cmp compare_part(const Ord::Part& p, const Ord::Part& q);

Cmp veblen_vs_veblen(const Ord::Part& p, const Ord::Part& q) {
  switch (compare(*p.first, *q.first)) {
    case Cmp::equal:
      return compare(*p.second, *q.second);
    case Cmp::less:
      // phi(a1,b1) < phi(a2,b2) iff b1 < phi(a2,b2); b1 = phi(a2,b2) is
      // excluded by the fixed-point normalization.
      return compare(*p.second, part_ord(q)) == Cmp::less ? Cmp::less
                                                          : Cmp::greater;
    case Cmp::greater:
      return compare(*q.second, part_ord(p)) == Cmp::less ? Cmp::greater
                                                          : Cmp::less;
  }
  return Cmp::equal;
}

Cmp compare_part(const Ord::Part& p, const Ord::Part& q) {
  using K = Ord::Kind;
  if (p.kind == K::one) return q.kind == K::one ? Cmp::equal : Cmp::less;
  if (q.kind == K::one) return Cmp::greater;
  switch (p.kind) {
    case K::big_omega:
      switch (q.kind) {
        case K::big_omega: return Cmp::equal;
        case K::psi: return Cmp::greater;
        default: return invert(veblen_vs_critical(q, Ord::big_omega()));
      }
    case K::psi:
      switch (q.kind) {
        case K::big_omega: return Cmp::less;
        case K::psi: return compare(*p.first, *q.first);
        default: return invert(veblen_vs_critical(q, part_ord(p)));
      }
    default:  // veblen
      switch (q.kind) {
        case K::big_omega: return veblen_vs_critical(p, Ord::big_omega());
        case K::psi: return veblen_vs_critical(p, part_ord(q));
        default: return veblen_vs_veblen(p, q);
      }
  }
}

}  // namespace

Ord Ord::one() {
  return from_parts({Part{Kind::one, nullptr, nullptr}});
}

Ord Ord::omega() {
  return veblen(zero(), one());
}

Ord Ord::big_omega() {
  return from_parts({Part{Kind::big_omega, nullptr, nullptr}});
}

Ord Ord::nat(std::uint64_t n) {
  std::vector<Part> parts(n, Part{Kind::one, nullptr, nullptr});
  return from_parts(std::move(parts));
}

bool Ord::is_finite() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Part& p) { return p.kind == Kind::one; });
}

std::uint64_t Ord::finite_value() const {
  if (!is_finite()) throw OrdError("finite_value of an infinite ordinal");
  return parts_.size();
}

bool Ord::operator==(const Ord& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Part& p = parts_[i];
    const Part& q = other.parts_[i];
    if (p.kind != q.kind) return false;
    if (p.first && !(*p.first == *q.first)) return false;
    if (p.second && !(*p.second == *q.second)) return false;
  }
  return true;
}

std::strong_ordering Ord::operator<=>(const Ord& other) const {
  switch (compare(*this, other)) {
    case Cmp::less: return std::strong_ordering::less;
    case Cmp::greater: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

Cmp compare(const Ord& a, const Ord& b) {
  const auto& x = a.parts();
  const auto& y = b.parts();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Cmp c = compare_part(x[i], y[i]);
    if (c != Cmp::equal) return c;
  }
  if (x.size() == y.size()) return Cmp::equal;
  return x.size() > y.size() ? Cmp::greater : Cmp::less;
}

Ord add(const Ord& a, const Ord& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ord::Part& lead = b.parts().front();
  std::vector<Ord::Part> parts;
  for (const Ord::Part& p : a.parts()) {
    if (compare_part(p, lead) == Cmp::less) break;
    parts.push_back(p);
  }
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return Ord::from_parts(std::move(parts));
}

Ord nat_sum(const Ord& a, const Ord& b) {
  std::vector<Ord::Part> parts;
  parts.reserve(a.parts().size() + b.parts().size());
  std::merge(a.parts().begin(), a.parts().end(), b.parts().begin(),
             b.parts().end(), std::back_inserter(parts),
             [](const Ord::Part& p, const Ord::Part& q) {
               return compare_part(p, q) == Cmp::greater;
             });
  return Ord::from_parts(std::move(parts));
}

Ord veblen(const Ord& a, const Ord& b) {
  if (b.parts().size() == 1 && fixed_point_of(a, b.parts().front())) return b;
  if (b.is_zero()) {
    if (a.is_zero()) return Ord::one();
    if (a.parts().size() == 1 && strongly_critical(a.parts().front())) return a;
  }
  return Ord::from_parts({Ord::Part{Ord::Kind::veblen, box(a), box(b)}});
}

Ord omega_pow(const Ord& a) { return veblen(Ord::zero(), a); }

Ord omega_tower(std::uint64_t n, const Ord& a) {
  Ord result = a;
  for (std::uint64_t i = 0; i < n; ++i) result = omega_pow(result);
  return result;
}

Ord omega_times(const Ord& a) {
  std::vector<Ord::Part> parts;
  for (const Ord::Part& p : a.parts()) {
    switch (p.kind) {
      case Ord::Kind::one:
        parts.push_back(Ord::omega().parts().front());
        break;
      case Ord::Kind::veblen:
        if (p.first->is_zero()) {
          // w * w^b = w^(1+b)
          parts.push_back(omega_pow(add(Ord::one(), *p.second)).parts().front());
        } else {
          parts.push_back(p);  // an epsilon-like value absorbs the factor
        }
        break;
      default:
        parts.push_back(p);
        break;
    }
  }
  return Ord::from_parts(std::move(parts));
}

Ord normalize(const Ord& a) {
  Ord result;
  for (const Ord::Part& p : a.parts()) {
    Ord single;
    switch (p.kind) {
      case Ord::Kind::one: single = Ord::one(); break;
      case Ord::Kind::big_omega: single = Ord::big_omega(); break;
      case Ord::Kind::veblen:
        single = veblen(normalize(*p.first), normalize(*p.second));
        break;
      case Ord::Kind::psi: single = psi(normalize(*p.first)); break;
    }
    result = add(result, single);
  }
  return result;
}

Ord max(const Ord& a, const Ord& b) {
  return compare(a, b) == Cmp::less ? b : a;
}

namespace {

class OrdReader {
 public:
  explicit OrdReader(std::string_view text) : text_(text) {}

  Ord parse() {
    Ord value = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return value;
  }

 private:
  Ord expr() {
    Ord value = term();
    for (;;) {
      skip();
      if (eat('+')) {
        value = add(value, term());
      } else if (eat('#')) {
        value = nat_sum(value, term());
      } else {
        break;
      }
    }
    return value;
  }

  Ord term() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Ord::nat(numeral());
    if (eat('(')) {
      Ord value = expr();
      expect(')');
      return value;
    }
    const std::string_view word = identifier();
    if (word == "w") {
      skip();
      if (eat('^')) {
        expect('(');
        Ord e = expr();
        expect(')');
        return omega_pow(e);
      }
      return Ord::omega();
    }
    if (word == "W") return Ord::big_omega();
    if (word == "phi") {
      expect('(');
      Ord a = expr();
      expect(',');
      Ord b = expr();
      expect(')');
      return veblen(a, b);
    }
    if (word == "psi") {
      expect('(');
      Ord a = expr();
      expect(')');
      return psi(a);
    }
    if (word == "tower") {
      expect('(');
      const std::uint64_t n = numeral_after_skip();
      expect(',');
      Ord a = expr();
      expect(')');
      return omega_tower(n, a);
    }
    fail("unknown ordinal token");
  }

  std::uint64_t numeral() {
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > 1u << 20) fail("numeral too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail("expected a numeral");
    return value;
  }

  std::uint64_t numeral_after_skip() {
    skip();
    return numeral();
  }

  std::string_view identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected an ordinal term");
    return text_.substr(start, pos_ - start);
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip();
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("ordinal syntax error at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_part(const Ord::Part& p, std::string& out, bool pretty);

void print_parts(const Ord& a, std::string& out, bool pretty) {
  if (a.is_zero()) {
    out += '0';
    return;
  }
  const auto& parts = a.parts();
  std::size_t i = 0;
  bool first = true;
  while (i < parts.size()) {
    if (!first) out += '+';
    first = false;
    if (parts[i].kind == Ord::Kind::one) {
      std::size_t run = 0;
      while (i < parts.size() && parts[i].kind == Ord::Kind::one) {
        ++run;
        ++i;
      }
      out += std::to_string(run);
    } else {
      print_part(parts[i], out, pretty);
      ++i;
    }
  }
}

void print_part(const Ord::Part& p, std::string& out, bool pretty) {
  switch (p.kind) {
    case Ord::Kind::one:
      out += '1';
      break;
    case Ord::Kind::big_omega:
      out += pretty ? "Ω" : "W";
      break;
    case Ord::Kind::psi:
      out += pretty ? "ψ(" : "psi(";
      print_parts(*p.first, out, pretty);
      out += ')';
      break;
    case Ord::Kind::veblen:
      if (p.first->is_zero()) {
        if (*p.second == Ord::one()) {
          out += pretty ? "ω" : "w";
        } else {
          out += pretty ? "ω^(" : "w^(";
          print_parts(*p.second, out, pretty);
          out += ')';
        }
      } else {
        out += pretty ? "φ(" : "phi(";
        print_parts(*p.first, out, pretty);
        out += ',';
        print_parts(*p.second, out, pretty);
        out += ')';
      }
      break;
  }
}

}  // namespace

Ord parse_ord(std::string_view text) { return OrdReader(text).parse(); }

std::string print_ord(const Ord& a) {
  std::string out;
  print_parts(a, out, false);
  return out;
}

std::string pretty_ord(const Ord& a) {
  std::string out;
  print_parts(a, out, true);
  return out;
}

std::size_t hash_value(const Ord& a) {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const Ord::Part& p : a.parts()) {
    mix(static_cast<std::size_t>(p.kind) + 1);
    if (p.first) mix(hash_value(*p.first));
    if (p.second) mix(hash_value(*p.second));
  }
  return h;
}

}  // namespace ordforge
