#include "ordforge/proof_io.hpp"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "ordforge/formula_io.hpp"

namespace ordforge {

namespace {

struct Sexp {
  enum class Kind : std::uint8_t { list, atom, str };
  Kind kind;
  std::string text;
  std::vector<Sexp> items;
  std::size_t offset = 0;
};

[[noreturn]] void syntax_error(std::size_t offset, const std::string& msg) {
  throw ParseError("proof syntax error at offset " + std::to_string(offset) +
                   ": " + msg);
}

class SexpReader {
 public:
  explicit SexpReader(std::string_view src) : src_(src) {}

  Sexp read_document() {
    skip_ws();
    Sexp top = read();
    skip_ws();
    if (pos_ != src_.size()) syntax_error(pos_, "trailing input after proof");
    return top;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    if (pos_ >= src_.size()) syntax_error(pos_, "unexpected end of input");
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp list{Sexp::Kind::list, {}, {}, start};
      while (true) {
        skip_ws();
        if (pos_ >= src_.size()) syntax_error(start, "unterminated list");
        if (src_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') syntax_error(pos_, "unmatched ')'");
    if (c == '"') {
      ++pos_;
      std::string text;
      while (true) {
        if (pos_ >= src_.size()) syntax_error(start, "unterminated string");
        const char d = src_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= src_.size()) syntax_error(start, "unterminated escape");
          const char e = src_[pos_++];
          if (e != '"' && e != '\\')
            syntax_error(pos_ - 1, "unknown escape character");
          text.push_back(e);
        } else {
          text.push_back(d);
        }
      }
      return Sexp{Sexp::Kind::str, std::move(text), {}, start};
    }
    std::string text;
    while (pos_ < src_.size()) {
      const char d = src_[pos_];
      if (d == '(' || d == ')' || d == '"' ||
          std::isspace(static_cast<unsigned char>(d)))
        break;
      text.push_back(d);
      ++pos_;
    }
    if (text.empty()) syntax_error(pos_, "unexpected character");
    return Sexp{Sexp::Kind::atom, std::move(text), {}, start};
  }
};

const Sexp& expect_list(const Sexp& s, const char* what) {
  if (s.kind != Sexp::Kind::list)
    syntax_error(s.offset, std::string("expected a list for ") + what);
  return s;
}

const std::string& expect_atom(const Sexp& s, const char* what) {
  if (s.kind != Sexp::Kind::atom)
    syntax_error(s.offset, std::string("expected an atom for ") + what);
  return s.text;
}

Sequent parse_seq(const Sexp& s, Theory theory) {
  expect_list(s, "sequent");
  if (s.items.size() != 3 || s.items[0].kind != Sexp::Kind::atom ||
      s.items[0].text != "seq")
    syntax_error(s.offset, "sequent must be (seq (...) (...))");
  const Sexp& ante = expect_list(s.items[1], "antecedent");
  const Sexp& succ = expect_list(s.items[2], "succedent");
  std::vector<FormulaPtr> antecedent;
  for (const Sexp& item : ante.items) {
    if (item.kind != Sexp::Kind::str)
      syntax_error(item.offset, "antecedent entries must be quoted formulas");
    antecedent.push_back(parse_formula(item.text, theory));
  }
  FormulaPtr succedent;
  if (succ.items.size() > 1)
    syntax_error(succ.offset, "succedent holds at most one formula");
  if (!succ.items.empty()) {
    if (succ.items[0].kind != Sexp::Kind::str)
      syntax_error(succ.items[0].offset, "succedent must be a quoted formula");
    succedent = parse_formula(succ.items[0].text, theory);
  }
  return make_sequent(std::move(antecedent), std::move(succedent));
}

DerivationPtr parse_node(const Sexp& s, Theory theory) {
  expect_list(s, "proof node");
  if (s.items.size() < 2)
    syntax_error(s.offset, "proof node needs a head and a rule name");
  const std::string& head = expect_atom(s.items[0], "node head");
  if (head != "rule" && head != "axiom")
    syntax_error(s.items[0].offset, "node head must be 'rule' or 'axiom'");
  RuleTag tag = RuleTag::cut;
  try {
    tag = rule_from_name(expect_atom(s.items[1], "rule name"));
  } catch (const OrdError&) {
    syntax_error(s.items[1].offset, "unknown rule name: " + s.items[1].text);
  }
  if ((head == "axiom") != is_axiom(tag))
    syntax_error(s.items[0].offset, "node head does not match the rule tag");

  bool have_conclusion = false;
  Sequent conclusion;
  std::vector<DerivationPtr> premises;
  bool have_premises = false;
  std::string variable;

  std::size_t i = 2;
  while (i < s.items.size()) {
    const std::string& key = expect_atom(s.items[i], "keyword");
    if (i + 1 >= s.items.size())
      syntax_error(s.items[i].offset, "keyword without a value");
    const Sexp& value = s.items[i + 1];
    if (key == ":conclusion") {
      if (have_conclusion)
        syntax_error(s.items[i].offset, "duplicate :conclusion");
      conclusion = parse_seq(value, theory);
      have_conclusion = true;
    } else if (key == ":premises") {
      if (have_premises) syntax_error(s.items[i].offset, "duplicate :premises");
      if (is_axiom(tag))
        syntax_error(s.items[i].offset, "axioms take no premises");
      for (const Sexp& child : expect_list(value, "premises").items)
        premises.push_back(parse_node(child, theory));
      have_premises = true;
    } else if (key == ":var") {
      if (!variable.empty()) syntax_error(s.items[i].offset, "duplicate :var");
      variable = expect_atom(value, "variable name");
      if (variable.empty() || variable[0] == ':')
        syntax_error(value.offset, "bad variable name");
    } else {
      syntax_error(s.items[i].offset, "unknown keyword: " + key);
    }
    i += 2;
  }
  if (!have_conclusion) syntax_error(s.offset, "node is missing :conclusion");
  if (!is_axiom(tag) && !have_premises)
    syntax_error(s.offset, "rule node is missing :premises");
  return make_derivation(tag, std::move(conclusion), std::move(premises),
                         std::move(variable));
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string seq_text(const Sequent& s) {
  std::string out = "(seq (";
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out.push_back(' ');
    out += quoted(print_formula(s.antecedent[i]));
  }
  out += ") (";
  if (s.succedent) out += quoted(print_formula(s.succedent));
  out += "))";
  return out;
}

void print_node(const Derivation& d, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  out += pad;
  out += is_axiom(d.rule) ? "(axiom " : "(rule ";
  out += rule_name(d.rule);
  out += '\n';
  if (!d.variable.empty()) {
    out += pad;
    out += "  :var ";
    out += d.variable;
    out += '\n';
  }
  out += pad;
  out += "  :conclusion ";
  out += seq_text(d.conclusion);
  if (!is_axiom(d.rule)) {
    out += '\n';
    out += pad;
    out += "  :premises (";
    for (const auto& p : d.premises) {
      out += '\n';
      print_node(*p, out, indent + 4);
    }
    out += ')';
  }
  out += ')';
}

}  // namespace

DerivationPtr parse_proof(std::string_view text, Theory theory) {
  SexpReader reader(text);
  return parse_node(reader.read_document(), theory);
}

std::string print_proof(const Derivation& d) {
  std::string out;
  print_node(d, out, 0);
  out.push_back('\n');
  return out;
}

}  // namespace ordforge
