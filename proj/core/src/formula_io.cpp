#include "ordforge/formula_io.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

namespace ordforge {

namespace {

constexpr std::array<std::string_view, 10> kReserved = {
    "all", "ex", "in", "sub", "fun", "exp", "var", "L", "V", "E"};

bool is_reserved(std::string_view name) {
  for (const auto r : kReserved)
    if (name == r) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  FormulaPtr parse_formula_all() {
    FormulaPtr f = parse_impl();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

  TermPtr parse_term_all() {
    TermPtr t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_punct(std::string_view p) {
    skip_ws();
    if (text_.substr(pos_).starts_with(p)) {
      // "-" alone must not swallow the arrow and vice versa; the only
      // multi-char punctuation is "->" so a literal match is enough
      pos_ += p.size();
      return true;
    }
    return false;
  }

  void expect_punct(std::string_view p) {
    if (!try_punct(p)) fail("expected '" + std::string(p) + "'");
  }

  std::string_view peek_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return {};
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string read_ident() {
    const std::string_view id = peek_ident();
    if (id.empty()) fail("expected an identifier");
    pos_ += id.size();
    return std::string(id);
  }

  bool try_keyword(std::string_view kw) {
    if (peek_ident() == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  std::string read_var_name() {
    const std::string name = read_ident();
    if (is_reserved(name)) fail("'" + name + "' is a reserved word");
    return name;
  }

  std::uint64_t read_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    std::uint64_t n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return n;
  }

  // Scans to the next top-level ')' ',' '}' or '|' and hands the span to the
  // ordinal reader.
  Ord read_ord() {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == ',' || c == '}' || c == '|')) break;
      ++pos_;
    }
    const std::string_view span = text_.substr(start, pos_ - start);
    try {
      return parse_ord(span);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (in ordinal starting at offset " +
                       std::to_string(start) + ")");
    }
  }

  TermPtr resolve(const std::string& name) {
    for (std::size_t i = binders_.size(); i-- > 0;)
      if (binders_[i] == name) return Term::bound_var(binders_.size() - 1 - i);
    return Term::free_var(name);
  }

  TermPtr parse_term() {
    skip_ws();
    if (try_punct("{")) {
      const std::string name = read_var_name();
      if (!try_keyword("in")) fail("expected 'in' in comprehension");
      TermPtr base = parse_term();
      expect_punct("|");
      binders_.push_back(name);
      FormulaPtr body = parse_impl();
      binders_.pop_back();
      expect_punct("}");
      return Term::comprehension(std::move(base), std::move(body));
    }
    const std::string_view id = peek_ident();
    if (id.empty()) fail("expected a term");
    if (id == "L" || id == "V" || id == "E") {
      const StageKind family = id == "L"   ? StageKind::constructible
                               : id == "V" ? StageKind::power
                                           : StageKind::exponential;
      pos_ += id.size();
      expect_punct("(");
      Ord level = read_ord();
      expect_punct(")");
      return Term::stage(family, std::move(level));
    }
    if (id == "var") {
      pos_ += id.size();
      expect_punct("(");
      const std::uint64_t n = read_nat();
      expect_punct(",");
      Ord level = read_ord();
      expect_punct(")");
      return Term::levelled_var(static_cast<std::size_t>(n), std::move(level));
    }
    return resolve(read_var_name());
  }

  FormulaPtr parse_impl() {
    FormulaPtr left = parse_disj();
    if (try_punct("->")) return Formula::implication(std::move(left), parse_impl());
    return left;
  }

  FormulaPtr parse_disj() {
    FormulaPtr left = parse_conj();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        left = Formula::disjunction(std::move(left), parse_conj());
      } else {
        return left;
      }
    }
  }

  FormulaPtr parse_conj() {
    FormulaPtr left = parse_unary();
    while (try_punct("&")) left = Formula::conjunction(std::move(left), parse_unary());
    return left;
  }

  FormulaPtr parse_dot_quantifier(bool universal) {
    const std::string name = read_var_name();
    expect_punct(".");
    binders_.push_back(name);
    FormulaPtr body = parse_impl();
    binders_.pop_back();
    return universal ? Formula::forall(std::move(body)) : Formula::exists(std::move(body));
  }

  FormulaPtr parse_bounded(bool universal) {
    const std::string name = read_var_name();
    if (try_punct(".")) {
      // a parenthesized dot-form quantifier: ( all x . F )
      binders_.push_back(name);
      FormulaPtr body = parse_impl();
      binders_.pop_back();
      expect_punct(")");
      return universal ? Formula::forall(std::move(body)) : Formula::exists(std::move(body));
    }
    if (try_keyword("in")) {
      if (try_keyword("exp")) {
        expect_punct("(");
        TermPtr a = parse_term();
        expect_punct(",");
        TermPtr b = parse_term();
        expect_punct(")");
        expect_punct(")");
        binders_.push_back(name);
        FormulaPtr body = parse_unary();
        binders_.pop_back();
        return universal ? Formula::exp_forall(std::move(a), std::move(b), std::move(body))
                         : Formula::exp_exists(std::move(a), std::move(b), std::move(body));
      }
      TermPtr t = parse_term();
      expect_punct(")");
      binders_.push_back(name);
      FormulaPtr body = parse_unary();
      binders_.pop_back();
      return universal ? Formula::bounded_forall(std::move(t), std::move(body))
                       : Formula::bounded_exists(std::move(t), std::move(body));
    }
    if (try_keyword("sub")) {
      TermPtr t = parse_term();
      expect_punct(")");
      binders_.push_back(name);
      FormulaPtr body = parse_unary();
      binders_.pop_back();
      return universal ? Formula::subset_forall(std::move(t), std::move(body))
                       : Formula::subset_exists(std::move(t), std::move(body));
    }
    fail("expected 'in', 'sub' or '.' after the quantified variable");
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (try_punct("~")) return Formula::negation(parse_unary());
    const std::string_view id = peek_ident();
    if (id == "all" || id == "ex") {
      const bool universal = id == "all";
      pos_ += id.size();
      return parse_dot_quantifier(universal);
    }
    if (id == "fun") {
      pos_ += id.size();
      expect_punct("(");
      TermPtr f = parse_term();
      expect_punct(",");
      TermPtr a = parse_term();
      expect_punct(",");
      TermPtr b = parse_term();
      expect_punct(")");
      return Formula::func(std::move(f), std::move(a), std::move(b));
    }
    if (try_punct("(")) {
      const std::string_view inner = peek_ident();
      if (inner == "all" || inner == "ex") {
        const bool universal = inner == "all";
        pos_ += inner.size();
        return parse_bounded(universal);
      }
      FormulaPtr f = parse_impl();
      expect_punct(")");
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    TermPtr lhs = parse_term();
    if (try_keyword("in")) return Formula::member(std::move(lhs), parse_term());
    if (try_keyword("sub")) return Formula::subset(std::move(lhs), parse_term());
    if (try_punct("=")) return Formula::equal(std::move(lhs), parse_term());
    fail("expected 'in', 'sub' or '=' after a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> binders_;
};

// Precedence levels: implication 0, disjunction 1, conjunction 2, prefix
// forms 3, atoms 4.  The dot-form quantifiers scope to the end (level 0).
class FormulaPrinter {
 public:
  explicit FormulaPrinter(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  void formula(const FormulaPtr& f, int min_level, std::string& out) {
    using K = Formula::Kind;
    switch (f->kind()) {
      case K::member:
        return atom(f, " in ", out);
      case K::subset:
        return atom(f, " sub ", out);
      case K::equal:
        return atom(f, " = ", out);
      case K::func: {
        out += "fun(";
        term(f->terms()[0], out);
        out += ", ";
        term(f->terms()[1], out);
        out += ", ";
        term(f->terms()[2], out);
        out += ")";
        return;
      }
      case K::negation: {
        const bool paren = min_level > 3;
        if (paren) out += "(";
        out += "~";
        formula(f->subs()[0], 3, out);
        if (paren) out += ")";
        return;
      }
      case K::conjunction:
        return binary(f, " & ", 2, min_level, out);
      case K::disjunction:
        return binary(f, " | ", 1, min_level, out);
      case K::implication: {
        const bool paren = min_level > 0;
        if (paren) out += "(";
        formula(f->subs()[0], 1, out);
        out += " -> ";
        formula(f->subs()[1], 0, out);
        if (paren) out += ")";
        return;
      }
      case K::forall:
      case K::exists: {
        const bool paren = min_level > 0;
        if (paren) out += "(";
        out += f->kind() == K::forall ? "all " : "ex ";
        const std::string name = push_fresh();
        out += name;
        out += " . ";
        formula(f->subs()[0], 0, out);
        pop();
        if (paren) out += ")";
        return;
      }
      case K::bounded_forall:
      case K::bounded_exists:
      case K::subset_forall:
      case K::subset_exists: {
        const bool universal = f->kind() == K::bounded_forall || f->kind() == K::subset_forall;
        const bool membership = f->kind() == K::bounded_forall || f->kind() == K::bounded_exists;
        out += "(";
        out += universal ? "all " : "ex ";
        const std::string name = fresh_name();
        out += name;
        out += membership ? " in " : " sub ";
        term(f->terms()[0], out);
        out += ") ";
        stack_.push_back(name);
        formula(f->subs()[0], 3, out);
        pop();
        return;
      }
      case K::exp_forall:
      case K::exp_exists: {
        out += "(";
        out += f->kind() == K::exp_forall ? "all " : "ex ";
        const std::string name = fresh_name();
        out += name;
        out += " in exp(";
        term(f->terms()[0], out);
        out += ", ";
        term(f->terms()[1], out);
        out += ")) ";
        stack_.push_back(name);
        formula(f->subs()[0], 3, out);
        pop();
        return;
      }
    }
    throw OrdError("unknown formula kind");
  }

  void term(const TermPtr& t, std::string& out) {
    switch (t->kind()) {
      case Term::Kind::free_var:
        out += t->name();
        return;
      case Term::Kind::bound_var: {
        if (t->index() >= stack_.size()) throw OrdError("cannot print a loose bound variable");
        out += stack_[stack_.size() - 1 - t->index()];
        return;
      }
      case Term::Kind::stage: {
        switch (t->stage_family()) {
          case StageKind::constructible:
            out += "L(";
            break;
          case StageKind::power:
            out += "V(";
            break;
          case StageKind::exponential:
            out += "E(";
            break;
        }
        out += print_ord(t->level_ord());
        out += ")";
        return;
      }
      case Term::Kind::levelled_var:
        out += "var(";
        out += std::to_string(t->var_id());
        out += ",";
        out += print_ord(t->level_ord());
        out += ")";
        return;
      case Term::Kind::comprehension: {
        out += "{ ";
        const std::string name = fresh_name();
        out += name;
        out += " in ";
        term(t->base(), out);
        out += " | ";
        stack_.push_back(name);
        formula(t->body(), 0, out);
        pop();
        out += " }";
        return;
      }
    }
    throw OrdError("unknown term kind");
  }

 private:
  void atom(const FormulaPtr& f, std::string_view rel, std::string& out) {
    term(f->terms()[0], out);
    out += rel;
    term(f->terms()[1], out);
  }

  void binary(const FormulaPtr& f, std::string_view op, int level, int min_level,
              std::string& out) {
    const bool paren = min_level > level;
    if (paren) out += "(";
    formula(f->subs()[0], level, out);
    out += op;
    formula(f->subs()[1], level + 1, out);
    if (paren) out += ")";
  }

  std::string fresh_name() {
    while (true) {
      std::string name = "x" + std::to_string(counter_++);
      if (!avoid_.contains(name)) return name;
    }
  }

  std::string push_fresh() {
    std::string name = fresh_name();
    stack_.push_back(name);
    return name;
  }

  void pop() { stack_.pop_back(); }

  std::set<std::string> avoid_;
  std::vector<std::string> stack_;
  int counter_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, Theory theory) {
  FormulaParser parser(text);
  FormulaPtr f = parser.parse_formula_all();
  require_well_formed(*f, theory);
  return f;
}

TermPtr parse_term_text(std::string_view text) {
  FormulaParser parser(text);
  return parser.parse_term_all();
}

std::string print_formula(const FormulaPtr& f) {
  FormulaPrinter printer(free_vars(*f));
  std::string out;
  printer.formula(f, 0, out);
  return out;
}

std::string print_term(const TermPtr& t) {
  std::set<std::string> avoid;
  collect_free_vars(*t, avoid);
  FormulaPrinter printer(std::move(avoid));
  std::string out;
  printer.term(t, out);
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.antecedent[i]);
  }
  out += out.empty() ? "=>" : " =>";
  if (s.succedent) {
    out += " ";
    out += print_formula(s.succedent);
  }
  return out;
}

}  // namespace ordforge
