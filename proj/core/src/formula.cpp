#include "ordforge/formula.hpp"

#include <algorithm>
#include <utility>

namespace ordforge {

namespace {

std::size_t combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

std::string_view theory_name(Theory t) {
  switch (t) {
    case Theory::ikp:
      return "ikp";
    case Theory::ikpp:
      return "ikpp";
    case Theory::ikpe:
      return "ikpe";
  }
  throw OrdError("unknown theory");
}

Theory theory_from_name(std::string_view name) {
  if (name == "ikp") return Theory::ikp;
  if (name == "ikpp") return Theory::ikpp;
  if (name == "ikpe") return Theory::ikpe;
  throw ParseError("unknown theory name: " + std::string(name));
}

TermPtr Term::free_var(std::string name) {
  if (name.empty()) throw OrdError("free variable needs a name");
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::free_var;
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::bound_var(std::size_t index) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::bound_var;
  t->index_ = index;
  return t;
}

TermPtr Term::stage(StageKind family, Ord level) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::stage;
  t->stage_kind_ = family;
  t->level_ = std::move(level);
  return t;
}

TermPtr Term::levelled_var(std::size_t id, Ord level) {
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::levelled_var;
  t->index_ = id;
  t->level_ = std::move(level);
  return t;
}

TermPtr Term::comprehension(TermPtr base, FormulaPtr body) {
  if (!base || !body) throw OrdError("comprehension needs a base and a body");
  auto t = std::make_shared<Term>();
  t->kind_ = Kind::comprehension;
  t->base_ = std::move(base);
  t->body_ = std::move(body);
  return t;
}

const std::string& Term::name() const {
  if (kind_ != Kind::free_var) throw OrdError("term has no name");
  return name_;
}

std::size_t Term::index() const {
  if (kind_ != Kind::bound_var) throw OrdError("term has no bound index");
  return index_;
}

std::size_t Term::var_id() const {
  if (kind_ != Kind::levelled_var) throw OrdError("term has no variable id");
  return index_;
}

StageKind Term::stage_family() const {
  if (kind_ != Kind::stage) throw OrdError("term is not a stage");
  return stage_kind_;
}

const Ord& Term::level_ord() const {
  if (kind_ != Kind::stage && kind_ != Kind::levelled_var)
    throw OrdError("term carries no level subscript");
  return level_;
}

const TermPtr& Term::base() const {
  if (kind_ != Kind::comprehension) throw OrdError("term has no base");
  return base_;
}

const FormulaPtr& Term::body() const {
  if (kind_ != Kind::comprehension) throw OrdError("term has no body");
  return body_;
}

bool Term::operator==(const Term& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::free_var:
      return name_ == other.name_;
    case Kind::bound_var:
      return index_ == other.index_;
    case Kind::stage:
      return stage_kind_ == other.stage_kind_ && level_ == other.level_;
    case Kind::levelled_var:
      return index_ == other.index_ && level_ == other.level_;
    case Kind::comprehension:
      return *base_ == *other.base_ && *body_ == *other.body_;
  }
  return false;
}

namespace {

std::size_t arity_terms(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::member:
    case K::equal:
    case K::subset:
      return 2;
    case K::func:
      return 3;
    case K::bounded_forall:
    case K::bounded_exists:
    case K::subset_forall:
    case K::subset_exists:
      return 1;
    case K::exp_forall:
    case K::exp_exists:
      return 2;
    default:
      return 0;
  }
}

std::size_t arity_subs(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::member:
    case K::equal:
    case K::subset:
    case K::func:
      return 0;
    case K::negation:
      return 1;
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      return 2;
    default:
      return 1;  // all quantifier kinds
  }
}

}  // namespace

FormulaPtr Formula::make(Kind kind, std::vector<TermPtr> terms, std::vector<FormulaPtr> subs) {
  if (terms.size() != arity_terms(kind) || subs.size() != arity_subs(kind))
    throw OrdError("formula node arity mismatch");
  for (const auto& t : terms)
    if (!t) throw OrdError("null term in formula");
  for (const auto& s : subs)
    if (!s) throw OrdError("null subformula");
  return FormulaPtr(new Formula(kind, std::move(terms), std::move(subs)));
}

FormulaPtr Formula::member(TermPtr s, TermPtr t) {
  return make(Kind::member, {std::move(s), std::move(t)}, {});
}
FormulaPtr Formula::equal(TermPtr s, TermPtr t) {
  return make(Kind::equal, {std::move(s), std::move(t)}, {});
}
FormulaPtr Formula::subset(TermPtr s, TermPtr t) {
  return make(Kind::subset, {std::move(s), std::move(t)}, {});
}
FormulaPtr Formula::func(TermPtr f, TermPtr a, TermPtr b) {
  return make(Kind::func, {std::move(f), std::move(a), std::move(b)}, {});
}
FormulaPtr Formula::negation(FormulaPtr a) { return make(Kind::negation, {}, {std::move(a)}); }
FormulaPtr Formula::conjunction(FormulaPtr a, FormulaPtr b) {
  return make(Kind::conjunction, {}, {std::move(a), std::move(b)});
}
FormulaPtr Formula::disjunction(FormulaPtr a, FormulaPtr b) {
  return make(Kind::disjunction, {}, {std::move(a), std::move(b)});
}
FormulaPtr Formula::implication(FormulaPtr a, FormulaPtr b) {
  return make(Kind::implication, {}, {std::move(a), std::move(b)});
}
FormulaPtr Formula::forall(FormulaPtr body) { return make(Kind::forall, {}, {std::move(body)}); }
FormulaPtr Formula::exists(FormulaPtr body) { return make(Kind::exists, {}, {std::move(body)}); }
FormulaPtr Formula::bounded_forall(TermPtr t, FormulaPtr body) {
  return make(Kind::bounded_forall, {std::move(t)}, {std::move(body)});
}
FormulaPtr Formula::bounded_exists(TermPtr t, FormulaPtr body) {
  return make(Kind::bounded_exists, {std::move(t)}, {std::move(body)});
}
FormulaPtr Formula::subset_forall(TermPtr t, FormulaPtr body) {
  return make(Kind::subset_forall, {std::move(t)}, {std::move(body)});
}
FormulaPtr Formula::subset_exists(TermPtr t, FormulaPtr body) {
  return make(Kind::subset_exists, {std::move(t)}, {std::move(body)});
}
FormulaPtr Formula::exp_forall(TermPtr a, TermPtr b, FormulaPtr body) {
  return make(Kind::exp_forall, {std::move(a), std::move(b)}, {std::move(body)});
}
FormulaPtr Formula::exp_exists(TermPtr a, TermPtr b, FormulaPtr body) {
  return make(Kind::exp_exists, {std::move(a), std::move(b)}, {std::move(body)});
}

bool Formula::is_atom() const {
  return kind_ == Kind::member || kind_ == Kind::equal || kind_ == Kind::subset ||
         kind_ == Kind::func;
}

bool Formula::is_quantifier() const {
  switch (kind_) {
    case Kind::forall:
    case Kind::exists:
    case Kind::bounded_forall:
    case Kind::bounded_exists:
    case Kind::subset_forall:
    case Kind::subset_exists:
    case Kind::exp_forall:
    case Kind::exp_exists:
      return true;
    default:
      return false;
  }
}

bool Formula::binds() const { return is_quantifier(); }

bool Formula::operator==(const Formula& other) const {
  if (kind_ != other.kind_) return false;
  if (terms_.size() != other.terms_.size() || subs_.size() != other.subs_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(*terms_[i] == *other.terms_[i])) return false;
  for (std::size_t i = 0; i < subs_.size(); ++i)
    if (!(*subs_[i] == *other.subs_[i])) return false;
  return true;
}

std::size_t hash_value(const Term& t) {
  std::size_t h = static_cast<std::size_t>(t.kind()) + 0x51ed2701;
  switch (t.kind()) {
    case Term::Kind::free_var:
      h = combine(h, std::hash<std::string>{}(t.name()));
      break;
    case Term::Kind::bound_var:
      h = combine(h, t.index());
      break;
    case Term::Kind::stage:
      h = combine(h, static_cast<std::size_t>(t.stage_family()));
      h = combine(h, hash_value(t.level_ord()));
      break;
    case Term::Kind::levelled_var:
      h = combine(h, t.var_id());
      h = combine(h, hash_value(t.level_ord()));
      break;
    case Term::Kind::comprehension:
      h = combine(h, hash_value(*t.base()));
      h = combine(h, hash_value(*t.body()));
      break;
  }
  return h;
}

std::size_t hash_value(const Formula& f) {
  std::size_t h = static_cast<std::size_t>(f.kind()) + 0x2b0271e9;
  for (const auto& t : f.terms()) h = combine(h, hash_value(*t));
  for (const auto& s : f.subs()) h = combine(h, hash_value(*s));
  return h;
}

Sequent make_sequent(std::vector<FormulaPtr> antecedent, FormulaPtr succedent) {
  std::vector<FormulaPtr> dedup;
  for (auto& f : antecedent) {
    if (!f) throw OrdError("null formula in sequent");
    if (!contains_formula(dedup, *f)) dedup.push_back(std::move(f));
  }
  return Sequent{std::move(dedup), std::move(succedent)};
}

bool contains_formula(const std::vector<FormulaPtr>& set, const Formula& f) {
  return std::any_of(set.begin(), set.end(), [&](const FormulaPtr& g) { return *g == f; });
}

bool formula_set_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  for (const auto& f : a)
    if (!contains_formula(b, *f)) return false;
  for (const auto& g : b)
    if (!contains_formula(a, *g)) return false;
  return true;
}

bool sequent_equal(const Sequent& a, const Sequent& b) {
  if (static_cast<bool>(a.succedent) != static_cast<bool>(b.succedent)) return false;
  if (a.succedent && !(*a.succedent == *b.succedent)) return false;
  return formula_set_equal(a.antecedent, b.antecedent);
}

std::vector<FormulaPtr> with_formula(std::vector<FormulaPtr> set, FormulaPtr f) {
  if (!contains_formula(set, *f)) set.push_back(std::move(f));
  return set;
}

std::vector<FormulaPtr> without_formula(const std::vector<FormulaPtr>& set, const Formula& f) {
  std::vector<FormulaPtr> out;
  for (const auto& g : set)
    if (!(*g == f)) out.push_back(g);
  return out;
}

TermPtr shift_term(const TermPtr& t, std::int64_t delta, std::size_t cutoff) {
  switch (t->kind()) {
    case Term::Kind::free_var:
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      return t;
    case Term::Kind::bound_var: {
      const std::size_t i = t->index();
      if (i < cutoff) return t;
      const std::int64_t shifted = static_cast<std::int64_t>(i) + delta;
      if (shifted < static_cast<std::int64_t>(cutoff))
        throw OrdError("bound index shifted below its cutoff");
      return Term::bound_var(static_cast<std::size_t>(shifted));
    }
    case Term::Kind::comprehension: {
      TermPtr base = shift_term(t->base(), delta, cutoff);
      FormulaPtr body = shift_formula(t->body(), delta, cutoff + 1);
      if (base == t->base() && body == t->body()) return t;
      return Term::comprehension(std::move(base), std::move(body));
    }
  }
  throw OrdError("unknown term kind");
}

FormulaPtr shift_formula(const FormulaPtr& f, std::int64_t delta, std::size_t cutoff) {
  const std::size_t inner = cutoff + (f->binds() ? 1 : 0);
  bool changed = false;
  std::vector<TermPtr> terms;
  terms.reserve(f->terms().size());
  for (const auto& t : f->terms()) {
    terms.push_back(shift_term(t, delta, cutoff));
    changed = changed || terms.back() != t;
  }
  std::vector<FormulaPtr> subs;
  subs.reserve(f->subs().size());
  for (const auto& s : f->subs()) {
    subs.push_back(shift_formula(s, delta, inner));
    changed = changed || subs.back() != s;
  }
  if (!changed) return f;
  return Formula::make(f->kind(), std::move(terms), std::move(subs));
}

static FormulaPtr open_formula_at(const FormulaPtr& f, std::size_t depth, const TermPtr& repl);

static TermPtr open_term_at(const TermPtr& t, std::size_t depth, const TermPtr& repl) {
  switch (t->kind()) {
    case Term::Kind::free_var:
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      return t;
    case Term::Kind::bound_var: {
      const std::size_t i = t->index();
      if (i == depth) return shift_term(repl, static_cast<std::int64_t>(depth));
      if (i > depth) return Term::bound_var(i - 1);
      return t;
    }
    case Term::Kind::comprehension: {
      TermPtr base = open_term_at(t->base(), depth, repl);
      FormulaPtr body = open_formula_at(t->body(), depth + 1, repl);
      if (base == t->base() && body == t->body()) return t;
      return Term::comprehension(std::move(base), std::move(body));
    }
  }
  throw OrdError("unknown term kind");
}

static FormulaPtr open_formula_at(const FormulaPtr& f, std::size_t depth, const TermPtr& repl) {
  const std::size_t inner = depth + (f->binds() ? 1 : 0);
  bool changed = false;
  std::vector<TermPtr> terms;
  terms.reserve(f->terms().size());
  for (const auto& t : f->terms()) {
    terms.push_back(open_term_at(t, depth, repl));
    changed = changed || terms.back() != t;
  }
  std::vector<FormulaPtr> subs;
  subs.reserve(f->subs().size());
  for (const auto& s : f->subs()) {
    subs.push_back(open_formula_at(s, inner, repl));
    changed = changed || subs.back() != s;
  }
  if (!changed) return f;
  return Formula::make(f->kind(), std::move(terms), std::move(subs));
}

FormulaPtr open_bound(const FormulaPtr& body, const TermPtr& s) {
  return open_formula_at(body, 0, s);
}

static FormulaPtr abstract_formula_at(const FormulaPtr& f, std::size_t depth,
                                      const std::string& name);

static TermPtr abstract_term_at(const TermPtr& t, std::size_t depth, const std::string& name) {
  switch (t->kind()) {
    case Term::Kind::free_var:
      if (t->name() == name) return Term::bound_var(depth);
      return t;
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      return t;
    case Term::Kind::bound_var:
      if (t->index() >= depth) return Term::bound_var(t->index() + 1);
      return t;
    case Term::Kind::comprehension: {
      TermPtr base = abstract_term_at(t->base(), depth, name);
      FormulaPtr body = abstract_formula_at(t->body(), depth + 1, name);
      if (base == t->base() && body == t->body()) return t;
      return Term::comprehension(std::move(base), std::move(body));
    }
  }
  throw OrdError("unknown term kind");
}

static FormulaPtr abstract_formula_at(const FormulaPtr& f, std::size_t depth,
                                      const std::string& name) {
  const std::size_t inner = depth + (f->binds() ? 1 : 0);
  bool changed = false;
  std::vector<TermPtr> terms;
  terms.reserve(f->terms().size());
  for (const auto& t : f->terms()) {
    terms.push_back(abstract_term_at(t, depth, name));
    changed = changed || terms.back() != t;
  }
  std::vector<FormulaPtr> subs;
  subs.reserve(f->subs().size());
  for (const auto& s : f->subs()) {
    subs.push_back(abstract_formula_at(s, inner, name));
    changed = changed || subs.back() != s;
  }
  if (!changed) return f;
  return Formula::make(f->kind(), std::move(terms), std::move(subs));
}

FormulaPtr abstract_free(const FormulaPtr& f, const std::string& name) {
  return abstract_formula_at(f, 0, name);
}

static FormulaPtr subst_formula_at(const FormulaPtr& f, std::size_t depth, const std::string& name,
                                   const TermPtr& repl);

static TermPtr subst_term_at(const TermPtr& t, std::size_t depth, const std::string& name,
                             const TermPtr& repl) {
  switch (t->kind()) {
    case Term::Kind::free_var:
      if (t->name() == name) return shift_term(repl, static_cast<std::int64_t>(depth));
      return t;
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
    case Term::Kind::bound_var:
      return t;
    case Term::Kind::comprehension: {
      TermPtr base = subst_term_at(t->base(), depth, name, repl);
      FormulaPtr body = subst_formula_at(t->body(), depth + 1, name, repl);
      if (base == t->base() && body == t->body()) return t;
      return Term::comprehension(std::move(base), std::move(body));
    }
  }
  throw OrdError("unknown term kind");
}

static FormulaPtr subst_formula_at(const FormulaPtr& f, std::size_t depth, const std::string& name,
                                   const TermPtr& repl) {
  const std::size_t inner = depth + (f->binds() ? 1 : 0);
  bool changed = false;
  std::vector<TermPtr> terms;
  terms.reserve(f->terms().size());
  for (const auto& t : f->terms()) {
    terms.push_back(subst_term_at(t, depth, name, repl));
    changed = changed || terms.back() != t;
  }
  std::vector<FormulaPtr> subs;
  subs.reserve(f->subs().size());
  for (const auto& s : f->subs()) {
    subs.push_back(subst_formula_at(s, inner, name, repl));
    changed = changed || subs.back() != s;
  }
  if (!changed) return f;
  return Formula::make(f->kind(), std::move(terms), std::move(subs));
}

TermPtr subst_free_term(const TermPtr& t, const std::string& name, const TermPtr& repl) {
  return subst_term_at(t, 0, name, repl);
}

FormulaPtr subst_free(const FormulaPtr& f, const std::string& name, const TermPtr& repl) {
  return subst_formula_at(f, 0, name, repl);
}

bool has_loose_bound(const Term& t, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::free_var:
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      return false;
    case Term::Kind::bound_var:
      return t.index() >= depth;
    case Term::Kind::comprehension:
      return has_loose_bound(*t.base(), depth) || has_loose_bound(*t.body(), depth + 1);
  }
  throw OrdError("unknown term kind");
}

bool has_loose_bound(const Formula& f, std::size_t depth) {
  const std::size_t inner = depth + (f.binds() ? 1 : 0);
  for (const auto& t : f.terms())
    if (has_loose_bound(*t, depth)) return true;
  for (const auto& s : f.subs())
    if (has_loose_bound(*s, inner)) return true;
  return false;
}

void collect_free_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::free_var:
      out.insert(t.name());
      return;
    case Term::Kind::bound_var:
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      return;
    case Term::Kind::comprehension:
      collect_free_vars(*t.base(), out);
      collect_free_vars(*t.body(), out);
      return;
  }
}

void collect_free_vars(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms()) collect_free_vars(*t, out);
  for (const auto& s : f.subs()) collect_free_vars(*s, out);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect_free_vars(f, out);
  return out;
}

std::set<std::string> free_vars(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& f : s.antecedent) collect_free_vars(*f, out);
  if (s.succedent) collect_free_vars(*s.succedent, out);
  return out;
}

namespace {

bool quantifier_legal(Formula::Kind k, Theory theory) {
  using K = Formula::Kind;
  if (k == K::subset_forall || k == K::subset_exists) return theory == Theory::ikpp;
  if (k == K::exp_forall || k == K::exp_exists || k == K::func) return theory == Theory::ikpe;
  return true;
}

bool repertoire_ok_term(const Term& t, Theory theory);

bool repertoire_ok(const Formula& f, Theory theory) {
  if (!quantifier_legal(f.kind(), theory)) return false;
  for (const auto& t : f.terms())
    if (!repertoire_ok_term(*t, theory)) return false;
  for (const auto& s : f.subs())
    if (!repertoire_ok(*s, theory)) return false;
  return true;
}

bool repertoire_ok_term(const Term& t, Theory theory) {
  if (t.kind() == Term::Kind::comprehension)
    return repertoire_ok_term(*t.base(), theory) && repertoire_ok(*t.body(), theory);
  return true;
}

bool delta0_rec(const Formula& f, Theory theory) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::member:
    case K::equal:
    case K::subset:
    case K::func:
      return true;
    case K::negation:
    case K::conjunction:
    case K::disjunction:
    case K::implication: {
      for (const auto& s : f.subs())
        if (!delta0_rec(*s, theory)) return false;
      return true;
    }
    case K::bounded_forall:
    case K::bounded_exists:
      return delta0_rec(*f.subs()[0], theory);
    case K::subset_forall:
    case K::subset_exists:
      return theory == Theory::ikpp && delta0_rec(*f.subs()[0], theory);
    case K::exp_forall:
    case K::exp_exists:
      return theory == Theory::ikpe && delta0_rec(*f.subs()[0], theory);
    case K::forall:
    case K::exists:
      return false;
  }
  return false;
}

struct SigmaPi {
  bool sigma;
  bool pi;
};

SigmaPi sigma_pi_rec(const Formula& f, Theory theory) {
  using K = Formula::Kind;
  if (delta0_rec(f, theory)) return {true, true};
  switch (f.kind()) {
    case K::conjunction:
    case K::disjunction: {
      const SigmaPi a = sigma_pi_rec(*f.subs()[0], theory);
      const SigmaPi b = sigma_pi_rec(*f.subs()[1], theory);
      return {a.sigma && b.sigma, a.pi && b.pi};
    }
    case K::bounded_forall:
    case K::bounded_exists:
    case K::subset_forall:
    case K::subset_exists:
    case K::exp_forall:
    case K::exp_exists:
      return sigma_pi_rec(*f.subs()[0], theory);
    case K::forall:
      return {false, sigma_pi_rec(*f.subs()[0], theory).pi};
    case K::exists:
      return {sigma_pi_rec(*f.subs()[0], theory).sigma, false};
    case K::implication: {
      const SigmaPi a = sigma_pi_rec(*f.subs()[0], theory);
      const SigmaPi b = sigma_pi_rec(*f.subs()[1], theory);
      return {a.pi && b.sigma, a.sigma && b.pi};
    }
    case K::negation: {
      const SigmaPi a = sigma_pi_rec(*f.subs()[0], theory);
      return {a.pi, a.sigma};
    }
    default:
      return {true, true};  // atoms are delta0 and handled above
  }
}

bool strict_sigma_rec(const Formula& f, Theory theory) {
  using K = Formula::Kind;
  if (delta0_rec(f, theory)) return true;
  switch (f.kind()) {
    case K::conjunction:
    case K::disjunction:
      return strict_sigma_rec(*f.subs()[0], theory) && strict_sigma_rec(*f.subs()[1], theory);
    case K::bounded_forall:
    case K::bounded_exists:
      return strict_sigma_rec(*f.subs()[0], theory);
    case K::subset_forall:
    case K::subset_exists:
      return theory == Theory::ikpp && strict_sigma_rec(*f.subs()[0], theory);
    case K::exp_forall:
    case K::exp_exists:
      return theory == Theory::ikpe && strict_sigma_rec(*f.subs()[0], theory);
    case K::exists:
      return strict_sigma_rec(*f.subs()[0], theory);
    default:
      return false;
  }
}

}  // namespace

bool well_formed(const Formula& f, Theory theory) {
  return repertoire_ok(f, theory) && !has_loose_bound(f, 0);
}

void require_well_formed(const Formula& f, Theory theory) {
  if (!repertoire_ok(f, theory))
    throw TheoryMismatch("quantifier form outside the language of " +
                         std::string(theory_name(theory)));
  if (has_loose_bound(f, 0)) throw OrdError("formula has an unbound variable index");
}

Classification classify(const Formula& f, Theory theory) {
  require_well_formed(f, theory);
  const bool d0 = delta0_rec(f, theory);
  const SigmaPi sp = sigma_pi_rec(f, theory);
  return Classification{d0, sp.sigma, sp.pi, strict_sigma_rec(f, theory)};
}

bool is_delta0(const Formula& f, Theory theory) {
  require_well_formed(f, theory);
  return delta0_rec(f, theory);
}

bool is_strict_sigma(const Formula& f, Theory theory) {
  require_well_formed(f, theory);
  return strict_sigma_rec(f, theory);
}

bool delta0_shape(const Formula& f, Theory theory) {
  return repertoire_ok(f, theory) && delta0_rec(f, theory);
}

namespace {

TermPtr bv(std::size_t i) { return Term::bound_var(i); }

TermPtr up(const TermPtr& t, std::size_t k) {
  return shift_term(t, static_cast<std::int64_t>(k));
}

FormulaPtr equality_expansion(const TermPtr& s, const TermPtr& t) {
  return Formula::conjunction(
      Formula::bounded_forall(s, Formula::member(bv(0), up(t, 1))),
      Formula::bounded_forall(t, Formula::member(bv(0), up(s, 1))));
}

FormulaPtr subset_expansion(const TermPtr& s, const TermPtr& t) {
  return Formula::bounded_forall(s, Formula::member(bv(0), up(t, 1)));
}

// u = {y}
FormulaPtr singleton_of(const TermPtr& u, const TermPtr& y) {
  return Formula::conjunction(
      Formula::member(y, u),
      Formula::bounded_forall(u, Formula::equal(bv(0), up(y, 1))));
}

// v = {y, z}
FormulaPtr unordered_pair_of(const TermPtr& v, const TermPtr& y, const TermPtr& z) {
  return Formula::conjunction(
      Formula::member(y, v),
      Formula::conjunction(
          Formula::member(z, v),
          Formula::bounded_forall(v, Formula::disjunction(Formula::equal(bv(0), up(y, 1)),
                                                          Formula::equal(bv(0), up(z, 1))))));
}

// p = {{y},{y,z}}, the ordered pair (y,z)
FormulaPtr ordered_pair_of(const TermPtr& p, const TermPtr& y, const TermPtr& z) {
  FormulaPtr has_sing = Formula::bounded_exists(p, singleton_of(bv(0), up(y, 1)));
  FormulaPtr has_pair = Formula::bounded_exists(p, unordered_pair_of(bv(0), up(y, 1), up(z, 1)));
  FormulaPtr only = Formula::bounded_forall(
      p, Formula::disjunction(singleton_of(bv(0), up(y, 1)),
                              unordered_pair_of(bv(0), up(y, 1), up(z, 1))));
  return Formula::conjunction(has_sing, Formula::conjunction(has_pair, only));
}

// (y,z) is a member of x
FormulaPtr pair_member(const TermPtr& x, const TermPtr& y, const TermPtr& z) {
  return Formula::bounded_exists(x, ordered_pair_of(bv(0), up(y, 1), up(z, 1)));
}

}  // namespace

FormulaPtr fun_expand(const TermPtr& f, const TermPtr& a, const TermPtr& b) {
  // every member of f is an ordered pair from a x b
  FormulaPtr graph = Formula::bounded_forall(
      f, Formula::bounded_exists(
             up(a, 1), Formula::bounded_exists(up(b, 2), ordered_pair_of(bv(2), bv(1), bv(0)))));
  // every member of a has an image in b
  FormulaPtr total = Formula::bounded_forall(
      a, Formula::bounded_exists(up(b, 1), pair_member(up(f, 2), bv(1), bv(0))));
  // images are unique
  FormulaPtr unique = Formula::bounded_forall(
      a, Formula::bounded_forall(
             up(b, 1),
             Formula::bounded_forall(
                 up(b, 2),
                 Formula::implication(
                     Formula::conjunction(pair_member(up(f, 3), bv(2), bv(1)),
                                          pair_member(up(f, 3), bv(2), bv(0))),
                     Formula::equal(bv(1), bv(0))))));
  return expand_sugar(Formula::conjunction(Formula::conjunction(graph, total), unique));
}

TermPtr expand_sugar_term(const TermPtr& t) {
  if (t->kind() != Term::Kind::comprehension) return t;
  TermPtr base = expand_sugar_term(t->base());
  FormulaPtr body = expand_sugar(t->body());
  if (base == t->base() && body == t->body()) return t;
  return Term::comprehension(std::move(base), std::move(body));
}

FormulaPtr expand_sugar(const FormulaPtr& f) {
  std::vector<TermPtr> terms;
  terms.reserve(f->terms().size());
  for (const auto& t : f->terms()) terms.push_back(expand_sugar_term(t));
  std::vector<FormulaPtr> subs;
  subs.reserve(f->subs().size());
  for (const auto& s : f->subs()) subs.push_back(expand_sugar(s));
  switch (f->kind()) {
    case Formula::Kind::equal:
      return equality_expansion(terms[0], terms[1]);
    case Formula::Kind::subset:
      return subset_expansion(terms[0], terms[1]);
    case Formula::Kind::func:
      return fun_expand(terms[0], terms[1], terms[2]);
    default:
      break;
  }
  bool changed = false;
  for (std::size_t i = 0; i < terms.size(); ++i) changed = changed || terms[i] != f->terms()[i];
  for (std::size_t i = 0; i < subs.size(); ++i) changed = changed || subs[i] != f->subs()[i];
  if (!changed) return f;
  return Formula::make(f->kind(), std::move(terms), std::move(subs));
}

FormulaPtr relativize(const FormulaPtr& f, const TermPtr& z) {
  if (!z || has_loose_bound(*z, 0)) throw OrdError("relativization bound must be closed");
  switch (f->kind()) {
    case Formula::Kind::forall:
      return Formula::bounded_forall(z, relativize(f->subs()[0], z));
    case Formula::Kind::exists:
      return Formula::bounded_exists(z, relativize(f->subs()[0], z));
    default: {
      if (f->subs().empty()) return f;
      std::vector<FormulaPtr> subs;
      subs.reserve(f->subs().size());
      bool changed = false;
      for (const auto& s : f->subs()) {
        subs.push_back(relativize(s, z));
        changed = changed || subs.back() != s;
      }
      if (!changed) return f;
      return Formula::make(f->kind(), f->terms(), std::move(subs));
    }
  }
}

Ord level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::free_var:
      return Ord::zero();
    case Term::Kind::bound_var:
      throw OrdError("bound variable has no level");
    case Term::Kind::stage:
      if (t.stage_family() == StageKind::exponential)
        throw NoLevel("exponentiation stages carry no level");
      return t.level_ord();
    case Term::Kind::levelled_var:
      return t.level_ord();
    case Term::Kind::comprehension:
      return level(*t.base());
  }
  throw OrdError("unknown term kind");
}

Ord mbound(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::free_var:
      return Ord::zero();
    case Term::Kind::bound_var:
      throw OrdError("bound variable has no position measure");
    case Term::Kind::stage:
      if (t.stage_family() != StageKind::exponential)
        throw OrdError("position measure applies to exponentiation-family terms");
      return t.level_ord();
    case Term::Kind::levelled_var:
      return t.level_ord();
    case Term::Kind::comprehension: {
      Ord m = mbound(*t.base());
      for (const auto& s : term_slots(*t.body())) m = max(m, mbound(*s));
      return add(m, Ord::one());
    }
  }
  throw OrdError("unknown term kind");
}

namespace {

void k_formula(const Formula& f, std::set<Ord>& out);

void k_term(const Term& t, std::set<Ord>& out) {
  switch (t.kind()) {
    case Term::Kind::free_var:
    case Term::Kind::bound_var:
      return;
    case Term::Kind::stage:
    case Term::Kind::levelled_var:
      out.insert(t.level_ord());
      return;
    case Term::Kind::comprehension:
      k_term(*t.base(), out);
      k_formula(*t.body(), out);
      return;
  }
}

void k_formula(const Formula& f, std::set<Ord>& out) {
  for (const auto& t : f.terms()) k_term(*t, out);
  for (const auto& s : f.subs()) k_formula(*s, out);
}

}  // namespace

std::vector<Ord> k_of(const Formula& f) {
  std::set<Ord> out;
  k_formula(f, out);
  return std::vector<Ord>(out.begin(), out.end());
}

std::vector<Ord> k_of(const Sequent& s) {
  std::set<Ord> out;
  for (const auto& f : s.antecedent) k_formula(*f, out);
  if (s.succedent) k_formula(*s.succedent, out);
  return std::vector<Ord>(out.begin(), out.end());
}

namespace {

void slots_rec(const Formula& f, std::vector<TermPtr>& out) {
  for (const auto& t : f.terms()) {
    if (has_loose_bound(*t, 0)) continue;
    const bool present = std::any_of(out.begin(), out.end(),
                                     [&](const TermPtr& u) { return *u == *t; });
    if (!present) out.push_back(t);
  }
  for (const auto& s : f.subs()) slots_rec(*s, out);
}

}  // namespace

std::vector<TermPtr> term_slots(const Formula& f) {
  std::vector<TermPtr> out;
  slots_rec(f, out);
  return out;
}

}  // namespace ordforge
