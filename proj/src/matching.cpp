#include "amorse/matching.hpp"

#include <algorithm>
#include <set>
#include <string_view>
#include <unordered_map>

#include "amorse/errors.hpp"

namespace amorse {

namespace {

bool by_id(const BasedComplex& c, std::size_t x, std::size_t y) { return c.cell(x).id < c.cell(y).id; }

}  // namespace

const char* to_string(CellClass c) noexcept {
  switch (c) {
    case CellClass::Up:
      return "up";
    case CellClass::Down:
      return "down";
    case CellClass::Critical:
      return "critical";
  }
  return "?";
}

std::vector<std::string> ElementClass::of_class(CellClass c) const {
  std::vector<std::string> out;
  for (const auto& [id, cls] : classes) {
    if (cls == c) out.push_back(id);
  }
  return out;
}

void MatchingView::match(std::size_t down, std::size_t up) {
  partner_.at(down) = up;
  partner_.at(up) = down;
  cls_[down] = CellClass::Down;
  cls_[up] = CellClass::Up;
}

void MatchingView::unmatch(std::size_t down, std::size_t up) {
  partner_.at(down) = npos;
  partner_.at(up) = npos;
  cls_[down] = CellClass::Critical;
  cls_[up] = CellClass::Critical;
}

MatchingView index_matching(const BasedComplex& c, const Matching& m) {
  using K = MatchingError::Kind;
  MatchingView view(c.size());
  for (const auto& [down, up] : m.pairs) {
    auto a = c.find(down);
    auto b = c.find(up);
    if (!a || !b) {
      throw MatchingError(K::UnknownCell, down, up, "pair (" + down + ", " + up + ") names an unknown cell");
    }
    RingElement w = RingElement::zero(c.ring());
    if (c.cell(*b).dim == c.cell(*a).dim + 1) w = covering_weight(c, up, down);
    if (w.is_zero()) {
      throw MatchingError(K::NotACoveringPair, down, up, "(" + down + ", " + up + ") is not a covering pair");
    }
    for (std::size_t x : {*a, *b}) {
      if (!view.is_critical(x)) {
        throw MatchingError(K::ElementMatchedTwice, down, up, "'" + c.cell(x).id + "' is matched more than once");
      }
    }
    if (!w.try_invert()) {
      throw MatchingError(K::NonInvertibleWeight, down, up,
                          "weight " + w.to_string() + " of (" + down + ", " + up + ") is not invertible in " +
                              c.ring().to_string());
    }
    view.match(*a, *b);
  }
  return view;
}

ElementClass validate_matching(const BasedComplex& c, const Matching& m) {
  MatchingView view = index_matching(c, m);
  ElementClass out;
  for (std::size_t i = 0; i < c.size(); ++i) out.classes.emplace(c.cell(i).id, view.class_of(i));
  return out;
}

std::vector<std::vector<std::size_t>> up_digraph(const BasedComplex& c, const MatchingView& m) {
  std::vector<std::vector<std::size_t>> adj(c.size());
  for (std::size_t b = 0; b < c.size(); ++b) {
    if (m.class_of(b) != CellClass::Up) continue;
    for (const auto& t : c.faces(b)) {
      std::size_t next = m.up_of(t.cell);
      if (next != MatchingView::npos && next != b) adj[b].push_back(next);
    }
    std::sort(adj[b].begin(), adj[b].end(), [&](std::size_t x, std::size_t y) { return by_id(c, x, y); });
  }
  return adj;
}

AcyclicityResult is_acyclic(const BasedComplex& c, const MatchingView& m) {
  auto adj = up_digraph(c, m);
  std::vector<std::size_t> ups;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (m.class_of(i) == CellClass::Up) ups.push_back(i);
  }
  std::sort(ups.begin(), ups.end(), [&](std::size_t x, std::size_t y) { return by_id(c, x, y); });

  enum class Color : unsigned char { White, Grey, Black };
  std::vector<Color> color(c.size(), Color::White);
  // Explicit stack of (node, next edge) so deep matchings cannot overflow.
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root : ups) {
    if (color[root] != Color::White) continue;
    stack.emplace_back(root, 0);
    color[root] = Color::Grey;
    while (!stack.empty()) {
      auto& [node, edge] = stack.back();
      if (edge == adj[node].size()) {
        color[node] = Color::Black;
        stack.pop_back();
        continue;
      }
      std::size_t next = adj[node][edge++];
      if (color[next] == Color::Grey) {
        AcyclicityResult r{false, {}};
        auto from = std::find_if(stack.begin(), stack.end(), [next](const auto& f) { return f.first == next; });
        for (auto it = from; it != stack.end(); ++it) r.witness.push_back(c.cell(it->first).id);
        return r;
      }
      if (color[next] == Color::White) {
        color[next] = Color::Grey;
        stack.emplace_back(next, 0);
      }
    }
  }
  return {};
}

AcyclicityResult is_acyclic(const BasedComplex& c, const Matching& m) { return is_acyclic(c, index_matching(c, m)); }

LinearExtension linear_extension(const BasedComplex& c, const Matching& m) {
  MatchingView view = index_matching(c, m);
  auto co = cofaces(c);
  const int top = c.top_dim();

  // For a down cell a: faces of u(a) other than a that are not placed yet.
  std::vector<std::size_t> pending(c.size(), 0);
  for (std::size_t b = 0; b < c.size(); ++b) {
    std::size_t a = view.down_of(b);
    if (a != MatchingView::npos) pending[a] = c.faces(b).size() - 1;
  }

  LinearExtension out;
  out.order.reserve(c.size());
  std::vector<bool> placed(c.size(), false);
  std::set<std::pair<std::string_view, std::size_t>> ready;
  int rank = 0;

  auto place = [&](std::size_t x) {
    placed[x] = true;
    out.order.push_back(c.cell(x).id);
    for (std::size_t up : co[x]) {
      std::size_t a = view.down_of(up);
      if (a == MatchingView::npos || a == x) continue;
      if (--pending[a] == 0 && c.cell(a).dim == rank && !placed[a]) ready.emplace(c.cell(a).id, a);
    }
  };

  for (; rank <= top; ++rank) {
    std::vector<std::size_t> critical;
    std::size_t downs = 0;
    ready.clear();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c.cell(i).dim != rank || placed[i]) continue;
      if (view.is_critical(i)) {
        critical.push_back(i);
      } else if (view.class_of(i) == CellClass::Down) {
        ++downs;
        if (pending[i] == 0) ready.emplace(c.cell(i).id, i);
      }
    }
    std::sort(critical.begin(), critical.end(), [&](std::size_t x, std::size_t y) { return by_id(c, x, y); });
    for (std::size_t x : critical) place(x);
    while (downs > 0) {
      if (ready.empty()) {
        auto cycle = is_acyclic(c, view);
        throw MorseError(MorseError::Kind::NotAcyclic,
                         "no linear extension: the matching has a cycle in dimension " + std::to_string(rank + 1),
                         cycle.witness);
      }
      std::size_t a = ready.begin()->second;
      ready.erase(ready.begin());
      place(a);
      place(view.up_of(a));
      --downs;
    }
  }
  return out;
}

std::optional<std::string> check_linear_extension(const BasedComplex& c, const Matching& m, const LinearExtension& l) {
  MatchingView view = index_matching(c, m);
  if (l.order.size() != c.size()) return "extension has " + std::to_string(l.order.size()) + " cells, complex has " + std::to_string(c.size());
  std::vector<std::size_t> pos(c.size(), MatchingView::npos);
  for (std::size_t p = 0; p < l.order.size(); ++p) {
    auto i = c.find(l.order[p]);
    if (!i) return "unknown cell '" + l.order[p] + "'";
    if (pos[*i] != MatchingView::npos) return "cell '" + l.order[p] + "' appears twice";
    pos[*i] = p;
  }
  for (std::size_t b = 0; b < c.size(); ++b) {
    for (const auto& t : c.faces(b)) {
      if (pos[t.cell] > pos[b]) return "'" + c.cell(t.cell).id + "' is placed after its cofacet '" + c.cell(b).id + "'";
    }
    std::size_t a = view.down_of(b);
    if (a != MatchingView::npos && pos[b] != pos[a] + 1) {
      return "'" + c.cell(b).id + "' does not directly follow '" + c.cell(a).id + "'";
    }
  }
  int last = -1;
  for (const auto& id : l.order) {
    std::size_t i = c.index_of(id);
    if (view.class_of(i) == CellClass::Up) continue;
    if (c.cell(i).dim < last) return "rank decreases at '" + id + "' among down and critical cells";
    last = c.cell(i).dim;
  }
  return std::nullopt;
}

namespace {

// Would matching (a, b) close a cycle in the up digraph of `view`?
bool closes_cycle(const BasedComplex& c, const std::vector<std::vector<std::size_t>>& co, const MatchingView& view,
                  std::size_t a, std::size_t b) {
  std::vector<bool> target(c.size(), false);
  bool any_target = false;
  for (std::size_t x : co[a]) {
    if (x != b && view.class_of(x) == CellClass::Up) target[x] = any_target = true;
  }
  if (!any_target) return false;
  std::vector<bool> seen(c.size(), false);
  std::vector<std::size_t> stack;
  auto push_successors = [&](std::size_t x, std::size_t own_down) {
    for (const auto& t : c.faces(x)) {
      if (t.cell == own_down) continue;
      std::size_t next = view.up_of(t.cell);
      if (next != MatchingView::npos && !seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  };
  push_successors(b, a);
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    if (target[x]) return true;
    push_successors(x, view.down_of(x));
  }
  return false;
}

}  // namespace

Matching greedy_matching(const BasedComplex& c) {
  auto co = cofaces(c);
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (c.cell(x).dim != c.cell(y).dim) return c.cell(x).dim < c.cell(y).dim;
    return by_id(c, x, y);
  });

  MatchingView view(c.size());
  Matching out;
  for (std::size_t a : order) {
    if (!view.is_critical(a)) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t b : co[a]) {
      if (view.is_critical(b) && covering_weight(c, c.cell(b).id, c.cell(a).id).try_invert()) candidates.push_back(b);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) { return by_id(c, x, y); });
    for (std::size_t b : candidates) {
      if (closes_cycle(c, co, view, a, b)) continue;
      view.match(a, b);
      out.pairs.push_back(MatchedPair{c.cell(a).id, c.cell(b).id});
      break;
    }
  }
  return out;
}

}  // namespace amorse
