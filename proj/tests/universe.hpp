#pragma once

#include <unordered_set>
#include <vector>

#include "ordforge/collapse.hpp"
#include "ordforge/ordinal.hpp"

namespace ordforge::testing {

// Every normal form of syntactic size at most `max_size` over the atoms
// {0, 1, w, W} under add, veblen and psi.  Sizes: the four atoms cost 1,
// psi(a) costs 1+|a|, an irreducible phi(a,b) costs 1+|a|+|b|, and a sum
// costs the total of its summands.  Reducible applications are not counted
// here; their values already appear at their own (smaller) size.
inline std::vector<Ord> normal_form_universe(int max_size) {
  const auto sz = [](int n) { return static_cast<std::size_t>(n); };
  // parts[s]: single-summand normal forms of size s; ords[s]: all of size s.
  std::vector<std::vector<Ord>> parts(sz(max_size) + 1);
  std::vector<std::vector<Ord>> ords(sz(max_size) + 1);
  std::unordered_set<Ord> seen;
  auto emit_part = [&](const Ord& t, int size) {
    if (seen.insert(t).second) {
      parts[sz(size)].push_back(t);
      ords[sz(size)].push_back(t);
    }
  };
  auto emit_sum = [&](const Ord& t, int size) {
    if (seen.insert(t).second) ords[sz(size)].push_back(t);
  };

  if (max_size < 1) return {};
  emit_sum(Ord::zero(), 1);
  emit_part(Ord::one(), 1);
  emit_part(Ord::omega(), 1);
  emit_part(Ord::big_omega(), 1);

  for (int s = 2; s <= max_size; ++s) {
    for (const Ord& a : ords[sz(s - 1)]) {
      try {
        emit_part(psi(a), s);
      } catch (const NonNormalPsiArgument&) {
      }
    }
    for (int i = 1; i <= s - 2; ++i) {
      const int j = s - 1 - i;
      for (const Ord& a : ords[sz(i)]) {
        for (const Ord& b : ords[sz(j)]) {
          const Ord t = veblen(a, b);
          // keep only irreducible applications; rewritten values already
          // appear with their own smaller size
          if (t.parts().size() == 1 && t.parts().front().kind == Ord::Kind::veblen &&
              *t.parts().front().first == a && *t.parts().front().second == b) {
            emit_part(t, s);
          }
        }
      }
    }
    // multi-summand forms: a leading summand prepended to a smaller sum whose
    // summands do not exceed it
    for (int i = 1; i <= s - 1; ++i) {
      for (const Ord& lead : parts[sz(i)]) {
        for (const Ord& rest : ords[sz(s - i)]) {
          if (rest.is_zero()) continue;
          const Ord rest_lead = Ord::from_parts({rest.parts().front()});
          if (compare(lead, rest_lead) == Cmp::less) continue;
          std::vector<Ord::Part> all = lead.parts();
          all.insert(all.end(), rest.parts().begin(), rest.parts().end());
          emit_sum(Ord::from_parts(std::move(all)), s);
        }
      }
    }
  }

  std::vector<Ord> all;
  for (const auto& bucket : ords)
    for (const Ord& t : bucket) all.push_back(t);
  return all;
}

}  // namespace ordforge::testing
