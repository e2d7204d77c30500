#include "ordforge/hierarchy.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

#include "ordforge/formula_io.hpp"

namespace ordforge {

namespace {

constexpr std::size_t kDefaultCap = 4;
constexpr std::size_t kHardCap = 5;
// Largest quantifier range any single enumeration may walk.
constexpr std::size_t kEnumLimit = 65536;

std::size_t initial_cap() {
  const char* raw = std::getenv("ORDFORGE_STAGE_CAP");
  if (raw == nullptr) return kDefaultCap;
  char* end = nullptr;
  const unsigned long value = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || value > kHardCap) return kDefaultCap;
  return static_cast<std::size_t>(value);
}

std::atomic<std::size_t>& cap_slot() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

}  // namespace

HFSet::HFSet(std::vector<HFSet> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (const HFSet& e : elements_) rank_ = std::max(rank_, e.rank() + 1);
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool HFSet::subset_of(const HFSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

bool HFSet::operator<(const HFSet& other) const {
  return std::lexicographical_compare(elements_.begin(), elements_.end(),
                                      other.elements_.begin(), other.elements_.end());
}

HFSet hf_pair(const HFSet& a, const HFSet& b) { return HFSet({a, b}); }

HFSet hf_ordered_pair(const HFSet& a, const HFSet& b) {
  return HFSet({hf_pair(a, b), HFSet({a})});
}

namespace {

struct HFParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos));
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  HFSet parse_set() {
    skip_space();
    if (pos >= text.size() || text[pos] != '{') fail("expected '{'");
    ++pos;
    std::vector<HFSet> members;
    skip_space();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return HFSet(std::move(members));
    }
    while (true) {
      members.push_back(parse_set());
      skip_space();
      if (pos >= text.size()) fail("unterminated set");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == '}') {
        ++pos;
        return HFSet(std::move(members));
      }
      fail("expected ',' or '}'");
    }
  }
};

}  // namespace

HFSet parse_hf(std::string_view text) {
  HFParser parser{text};
  HFSet result = parser.parse_set();
  parser.skip_space();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return result;
}

std::string print_hf(const HFSet& x) {
  std::string out = "{";
  bool first = true;
  for (const HFSet& e : x.elements()) {
    if (!first) out += ",";
    first = false;
    out += print_hf(e);
  }
  out += "}";
  return out;
}

std::size_t stage_cap() { return cap_slot().load(); }

void set_stage_cap(std::size_t cap) {
  if (cap > kHardCap)
    throw StageCapExceeded("the stage cap is hard-limited to " + std::to_string(kHardCap));
  cap_slot().store(cap);
}

const std::vector<HFSet>& stage(std::size_t n) {
  if (n > stage_cap())
    throw StageCapExceeded("stage " + std::to_string(n) + " is above the enumeration cap " +
                           std::to_string(stage_cap()));
  static std::mutex mutex;
  static std::array<std::vector<HFSet>, kHardCap + 1> memo;
  static std::size_t built = 0;
  std::lock_guard<std::mutex> lock(mutex);
  while (built <= n) {
    if (built > 0) {
      const std::vector<HFSet>& prev = memo[built - 1];
      std::vector<HFSet>& next = memo[built];
      next.reserve(std::size_t{1} << prev.size());
      for (std::size_t mask = 0; mask < (std::size_t{1} << prev.size()); ++mask) {
        std::vector<HFSet> members;
        for (std::size_t i = 0; i < prev.size(); ++i)
          if (mask & (std::size_t{1} << i)) members.push_back(prev[i]);
        next.push_back(HFSet(std::move(members)));
      }
      std::sort(next.begin(), next.end());
    }
    ++built;
  }
  return memo[n];
}

HFSet stage_set(std::size_t n) {
  std::vector<HFSet> members = stage(n);
  return HFSet(std::move(members));
}

bool stage_contains(const HFSet& x, std::size_t n) {
  if (n > kHardCap)
    throw StageCapExceeded("membership is only decided through stage " +
                           std::to_string(kHardCap));
  return x.rank() < n;
}

namespace {

// Kuratowski decoding: e = {{x, y}, {x}} yields (x, y); {{x}} yields (x, x).
bool decode_pair(const HFSet& e, HFSet& first, HFSet& second) {
  if (e.size() == 1) {
    const HFSet& inner = e.elements()[0];
    if (inner.size() != 1) return false;
    first = inner.elements()[0];
    second = first;
    return true;
  }
  if (e.size() != 2) return false;
  const HFSet& lo = e.elements()[0];
  const HFSet& hi = e.elements()[1];
  const HFSet* single = lo.size() == 1 ? &lo : hi.size() == 1 ? &hi : nullptr;
  const HFSet* both = lo.size() == 2 ? &lo : hi.size() == 2 ? &hi : nullptr;
  if (single == nullptr || both == nullptr) return false;
  first = single->elements()[0];
  if (!both->contains(first)) return false;
  second = both->elements()[0] == first ? both->elements()[1] : both->elements()[0];
  return true;
}

bool eval_func(const HFSet& f, const HFSet& a, const HFSet& b) {
  std::map<HFSet, HFSet> graph;
  for (const HFSet& e : f.elements()) {
    HFSet x, y;
    if (!decode_pair(e, x, y)) return false;
    if (!a.contains(x) || !b.contains(y)) return false;
    const auto [it, inserted] = graph.emplace(x, y);
    if (!inserted && it->second != y) return false;
  }
  for (const HFSet& x : a.elements())
    if (graph.find(x) == graph.end()) return false;
  return true;
}

class Evaluator {
 public:
  explicit Evaluator(const Assignment& v) : v_(v) {}

  HFSet term(const TermPtr& t) {
    switch (t->kind()) {
      case Term::Kind::free_var:
        return lookup(t->name(), t);
      case Term::Kind::bound_var: {
        if (t->index() >= env_.size()) throw OrdError("loose bound variable in evaluation");
        return env_[env_.size() - 1 - t->index()];
      }
      case Term::Kind::stage: {
        if (!t->level_ord().is_finite())
          throw StageCapExceeded("only finite stages have an enumeration");
        return stage_set(static_cast<std::size_t>(t->level_ord().finite_value()));
      }
      case Term::Kind::levelled_var:
        return lookup(print_term(t), t);
      case Term::Kind::comprehension: {
        const HFSet base = term(t->base());
        std::vector<HFSet> members;
        for (const HFSet& e : base.elements()) {
          env_.push_back(e);
          const bool keep = formula(t->body());
          env_.pop_back();
          if (keep) members.push_back(e);
        }
        return HFSet(std::move(members));
      }
    }
    throw OrdError("unhandled term kind");
  }

  bool formula(const FormulaPtr& f) {
    switch (f->kind()) {
      case Formula::Kind::member: {
        const HFSet s = term(f->terms()[0]);
        return term(f->terms()[1]).contains(s);
      }
      case Formula::Kind::equal:
        return term(f->terms()[0]) == term(f->terms()[1]);
      case Formula::Kind::subset:
        return term(f->terms()[0]).subset_of(term(f->terms()[1]));
      case Formula::Kind::func:
        return eval_func(term(f->terms()[0]), term(f->terms()[1]), term(f->terms()[2]));
      case Formula::Kind::negation:
        return !formula(f->subs()[0]);
      case Formula::Kind::conjunction:
        return formula(f->subs()[0]) && formula(f->subs()[1]);
      case Formula::Kind::disjunction:
        return formula(f->subs()[0]) || formula(f->subs()[1]);
      case Formula::Kind::implication:
        return !formula(f->subs()[0]) || formula(f->subs()[1]);
      case Formula::Kind::forall:
      case Formula::Kind::exists:
        throw ClassViolation("unbounded quantifier under bounded evaluation");
      case Formula::Kind::bounded_forall:
      case Formula::Kind::bounded_exists: {
        const HFSet bound = term(f->terms()[0]);
        return quantify(bound.elements(), f->subs()[0],
                        f->kind() == Formula::Kind::bounded_forall);
      }
      case Formula::Kind::subset_forall:
      case Formula::Kind::subset_exists: {
        const HFSet bound = term(f->terms()[0]);
        return quantify(subsets_of(bound), f->subs()[0],
                        f->kind() == Formula::Kind::subset_forall);
      }
      case Formula::Kind::exp_forall:
      case Formula::Kind::exp_exists: {
        const HFSet a = term(f->terms()[0]);
        const HFSet b = term(f->terms()[1]);
        return quantify(functions_from_to(a, b), f->subs()[0],
                        f->kind() == Formula::Kind::exp_forall);
      }
    }
    throw OrdError("unhandled formula kind");
  }

 private:
  HFSet lookup(const std::string& key, const TermPtr& t) {
    const auto it = v_.find(key);
    if (it == v_.end()) throw OrdError("no value assigned to variable '" + key + "'");
    if (t->kind() == Term::Kind::levelled_var && t->level_ord().is_finite() &&
        it->second.rank() > t->level_ord().finite_value())
      throw OrdError("the value of " + key + " lies above its level");
    return it->second;
  }

  bool quantify(const std::vector<HFSet>& range, const FormulaPtr& body, bool universal) {
    for (const HFSet& e : range) {
      env_.push_back(e);
      const bool holds = formula(body);
      env_.pop_back();
      if (holds != universal) return !universal;
    }
    return universal;
  }

  static std::vector<HFSet> subsets_of(const HFSet& bound) {
    if (bound.size() > 16)
      throw StageCapExceeded("subset quantifier over a bound with more than 16 elements");
    std::vector<HFSet> out;
    out.reserve(std::size_t{1} << bound.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << bound.size()); ++mask) {
      std::vector<HFSet> members;
      for (std::size_t i = 0; i < bound.size(); ++i)
        if (mask & (std::size_t{1} << i)) members.push_back(bound.elements()[i]);
      out.push_back(HFSet(std::move(members)));
    }
    return out;
  }

  static std::vector<HFSet> functions_from_to(const HFSet& a, const HFSet& b) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      count *= b.size();
      if (count > kEnumLimit)
        throw StageCapExceeded("function-space quantifier over more than " +
                               std::to_string(kEnumLimit) + " witnesses");
    }
    std::vector<HFSet> out;
    if (count == 0) return out;
    out.reserve(count);
    std::vector<std::size_t> image(a.size(), 0);
    while (true) {
      std::vector<HFSet> pairs;
      pairs.reserve(a.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        pairs.push_back(hf_ordered_pair(a.elements()[i], b.elements()[image[i]]));
      out.push_back(HFSet(std::move(pairs)));
      std::size_t i = 0;
      while (i < image.size() && ++image[i] == b.size()) image[i++] = 0;
      if (i == image.size()) break;
    }
    return out;
  }

  const Assignment& v_;
  std::vector<HFSet> env_;
};

}  // namespace

bool eval_bounded(const FormulaPtr& f, const Assignment& v, Theory theory) {
  require_well_formed(*f, theory);
  if (!is_delta0(*f, theory))
    throw ClassViolation("the formula is not bounded for " + std::string(theory_name(theory)));
  return Evaluator(v).formula(f);
}

bool sat_stage(const FormulaPtr& f, std::size_t n, Theory theory) {
  require_well_formed(*f, theory);
  if (!free_vars(*f).empty())
    throw ClassViolation("stage satisfaction needs a closed sentence");
  if (!classify(*f, theory).sigma)
    throw ClassViolation("stage satisfaction needs a Sigma sentence");
  const std::string world = "@stage";
  Assignment v;
  v.emplace(world, stage_set(n));
  return eval_bounded(relativize(f, Term::free_var(world)), v, theory);
}

}  // namespace ordforge
