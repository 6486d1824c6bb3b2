#include "doctest.h"

#include "amorse/errors.hpp"
#include "amorse/morse.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace amorse;
using namespace amorse::testing;

namespace {

const RingSpec Z = RingSpec::integers();

RingElement z(long v) { return RingElement(Z, v); }

AlternatingPath path(std::string s, std::vector<MatchedPair> steps, std::string t) {
  return AlternatingPath{std::move(s), std::move(steps), std::move(t)};
}

/// Another valid extension: adjacent blocks (a critical cell, or a matched
/// pair) swapped at random whenever the result still passes the checker.
LinearExtension shuffle_extension(Rng& rng, const BasedComplex& c, const Matching& m, LinearExtension l) {
  std::map<std::string, std::string> up_of;
  for (const auto& p : m.pairs) up_of[p.down] = p.up;
  std::vector<std::vector<std::string>> blocks;
  for (std::size_t i = 0; i < l.order.size(); ++i) {
    auto it = up_of.find(l.order[i]);
    if (it != up_of.end()) {
      blocks.push_back({l.order[i], it->second});
      ++i;
    } else {
      blocks.push_back({l.order[i]});
    }
  }
  for (int round = 0; round < 4 * static_cast<int>(blocks.size()); ++round) {
    if (blocks.size() < 2) break;
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(blocks.size()) - 2));
    std::swap(blocks[i], blocks[i + 1]);
    LinearExtension candidate;
    for (const auto& b : blocks) candidate.order.insert(candidate.order.end(), b.begin(), b.end());
    if (check_linear_extension(c, m, candidate)) std::swap(blocks[i], blocks[i + 1]);
  }
  LinearExtension out;
  for (const auto& b : blocks) out.order.insert(out.order.end(), b.begin(), b.end());
  return out;
}

Matching prefix_matching(const BasedComplex& c, const Matching& m, const LinearExtension& l, std::size_t k) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < l.order.size(); ++i) pos[l.order[i]] = i;
  Matching sorted = m;
  std::sort(sorted.pairs.begin(), sorted.pairs.end(),
            [&](const MatchedPair& x, const MatchedPair& y) { return pos.at(x.up) < pos.at(y.up); });
  sorted.pairs.resize(k);
  (void)c;
  return sorted;
}

DecompositionError::Kind decomposition_error(const BasedComplex& c, const Decomposition& d) {
  try {
    verify_decomposition(c, d);
  } catch (const DecompositionError& e) {
    return e.kind();
  }
  FAIL("expected a decomposition error");
  return DecompositionError::Kind::NotABasis;
}

/// Random instance from a handful of families over several rings.
BasedComplex random_instance(Rng& rng, int i) {
  switch (i % 5) {
    case 0:
      return random_simplicial(rng, 7, 3, 6);
    case 1:
      return random_rescale(rng, random_simplicial(rng, 7, 3, 6, RingSpec::rationals()));
    case 2:
      return random_simplicial(rng, 7, 3, 6, RingSpec::integers_mod(6));
    case 3:
      return random_graph_complex(rng, uniform(rng, 1, 6), uniform(rng, 1, 9), RingSpec::rationals());
    default:
      return random_graph_complex(rng, uniform(rng, 1, 6), uniform(rng, 1, 9), Z);
  }
}

}  // namespace

TEST_SUITE("morse") {
  TEST_CASE("enumerate_paths examples") {
    BasedComplex interval = load_complex_fixture("interval.json");
    Matching im = load_matching_fixture("interval_matching.json");
    CHECK(enumerate_paths(interval, im, "v1").empty());

    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Matching m = load_matching_fixture("triangle_circle_matching.json");
    auto paths = enumerate_paths(circle, m, "e12");
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == path("e12", {{"v1", "e01"}}, "v0"));
    CHECK(paths[1] == path("e12", {{"v2", "e02"}}, "v0"));

    auto empty = enumerate_paths(circle, Matching{}, "e12");
    REQUIRE(empty.size() == 2);
    CHECK(empty[0] == path("e12", {}, "v1"));
    CHECK(empty[1] == path("e12", {}, "v2"));
  }

  TEST_CASE("enumerate_paths with all targets") {
    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Matching m = load_matching_fixture("triangle_circle_matching.json");
    auto paths = enumerate_paths(circle, m, "e12", PathOptions{PathTargets::All, kDefaultPathBudget});
    // t may be d(b_n): e12 > v1 < e01 > v1 is a path.
    CHECK(paths.size() == 6);
    int direct = 0;
    Chain sum(Z, 0);
    for (const auto& p : paths) {
      direct += p.steps.empty();
      sum.add(p.target, path_weight(circle, p));
    }
    CHECK(direct == 2);
    CHECK(sum.is_zero());
  }

  TEST_CASE("enumerate_paths errors") {
    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Matching m = load_matching_fixture("triangle_circle_matching.json");
    try {
      enumerate_paths(circle, m, "e12", PathOptions{PathTargets::Critical, 1});
      FAIL("expected PathBudgetExceeded");
    } catch (const MorseError& e) {
      CHECK(e.kind() == MorseError::Kind::PathBudgetExceeded);
    }
    CHECK(enumerate_paths(circle, m, "e12", PathOptions{PathTargets::Critical, 2}).size() == 2);

    BasedComplex two = load_complex_fixture("two_cycle.json");
    try {
      enumerate_paths(two, load_matching_fixture("two_cycle_matching.json"), "e1");
      FAIL("expected NotAcyclic");
    } catch (const MorseError& e) {
      CHECK(e.kind() == MorseError::Kind::NotAcyclic);
    }
  }

  TEST_CASE("path_weight examples") {
    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    CHECK(path_weight(circle, path("e12", {}, "v2")) == z(1));
    CHECK(path_weight(circle, path("e12", {{"v2", "e02"}}, "v0")) == z(1));
    CHECK(path_weight(circle, path("e12", {{"v1", "e01"}}, "v0")) == z(-1));
    try {
      path_weight(circle, path("e12", {}, "v0"));
      FAIL("expected InvariantViolated");
    } catch (const MorseError& e) {
      CHECK(e.kind() == MorseError::Kind::InvariantViolated);
    }
    BasedComplex doubled = load_complex_fixture("doubled_segment.json");
    CHECK_THROWS_AS(path_weight(doubled, path("e", {{"v0", "e"}}, "v1")), RingError);
    BasedComplex over_q = change_ring(doubled, RingSpec::rationals());
    // (-1) * w(e > v0) * w(e > v1) / w(e > v0) = -2.
    CHECK(path_weight(over_q, path("e", {{"v0", "e"}}, "v1")) == RingElement(RingSpec::rationals(), -2L));
  }

  TEST_CASE("normalize_basis examples") {
    BasedComplex interval = load_complex_fixture("interval.json");
    Matching im = load_matching_fixture("interval_matching.json");
    BasedComplex n = normalize_basis(interval, im);
    CHECK(covering_weight(n, "e", "v0") == z(1));
    CHECK(covering_weight(n, "e", "v1") == z(1));
    CHECK(normalize_basis(n, im) == n);

    BasedComplex q = change_ring(load_complex_fixture("doubled_segment.json"), RingSpec::rationals());
    BasedComplex nq = normalize_basis(q, im);
    CHECK(covering_weight(nq, "e", "v0").is_one());
    CHECK(covering_weight(nq, "e", "v1") == RingElement(RingSpec::rationals(), 2L));
  }

  TEST_CASE("normalize_basis scales the boundary of down cells") {
    // Matching (e01, t) has w(t > e01) = 1; matching (e02, t) has weight -1,
    // which flips the sign of the boundary of e02.
    BasedComplex t = load_complex_fixture("filled_triangle.json");
    BasedComplex n = normalize_basis(t, Matching{{{"e02", "t"}}});
    CHECK(covering_weight(n, "t", "e02").is_one());
    CHECK(covering_weight(n, "e02", "v0") == z(1));
    CHECK(covering_weight(n, "e02", "v2") == z(-1));
    CHECK_NOTHROW(validate_complex(n));
  }

  TEST_CASE("morse_boundary examples") {
    BasedComplex interval = load_complex_fixture("interval.json");
    MorseComplex mi = morse_boundary(interval, load_matching_fixture("interval_matching.json"));
    REQUIRE(mi.complex.size() == 1);
    CHECK(mi.complex.cell(0) == Cell{"v1", 0});

    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    MorseComplex mc = morse_boundary(circle, load_matching_fixture("triangle_circle_matching.json"));
    REQUIRE(mc.complex.size() == 2);
    CHECK(mc.complex.cell(0) == Cell{"v0", 0});
    CHECK(mc.complex.cell(1) == Cell{"e12", 1});
    CHECK(mc.complex.faces(1).empty());

    CHECK(morse_boundary(circle, Matching{}).complex == circle);
    CHECK_THROWS_AS(morse_boundary(load_complex_fixture("two_cycle.json"), load_matching_fixture("two_cycle_matching.json")),
                    MorseError);
  }

  TEST_CASE("reduce_by_elimination examples") {
    BasedComplex interval = load_complex_fixture("interval.json");
    Decomposition di = reduce_by_elimination(interval, load_matching_fixture("interval_matching.json"));
    CHECK(di.morse.complex.size() == 1);
    CHECK(di.atoms == std::vector<AtomSummand>{{"e", "v0", 1}});
    // a^1 = d(e) = v1 - v0.
    Chain a(Z, 0);
    a.add("v1", z(1));
    a.add("v0", z(-1));
    CHECK(di.final_basis.at("v0") == a);
    CHECK_NOTHROW(verify_decomposition(interval, di));

    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Matching m = load_matching_fixture("triangle_circle_matching.json");
    Decomposition dc = reduce_by_elimination(circle, m);
    CHECK(dc.morse.complex == morse_boundary(circle, m).complex);
    CHECK(dc.atoms.size() == 2);
    for (const auto& atom : dc.atoms) CHECK(atom.dim == 1);
    // e12 absorbs -w(e12 > v1) e01 at step one and -w(e12 > v2) e02 at step two.
    Chain e12(Z, 1);
    e12.add("e12", z(1));
    e12.add("e01", z(1));
    e12.add("e02", z(-1));
    CHECK(dc.final_basis.at("e12") == e12);
    CHECK_NOTHROW(verify_decomposition(circle, dc));

    Decomposition de = reduce_by_elimination(circle, Matching{});
    CHECK(de.morse.complex == circle);
    CHECK(de.atoms.empty());
  }

  TEST_CASE("elimination rejects bad orders") {
    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Matching m = load_matching_fixture("triangle_circle_matching.json");
    try {
      reduce_by_elimination(circle, m, LinearExtension{{"v0", "v1", "v2", "e01", "e02", "e12"}});
      FAIL("expected OrderViolation");
    } catch (const MorseError& e) {
      CHECK(e.kind() == MorseError::Kind::OrderViolation);
    }
  }

  TEST_CASE("paths and elimination agree") {
    Rng rng(31);
    for (int i = 0; i < 250; ++i) {
      BasedComplex c = random_instance(rng, i);
      Matching m = (i % 2) ? greedy_matching(c) : random_matching(rng, c);
      if (!is_acyclic(c, m)) continue;
      MorseComplex paths = morse_boundary(c, m);
      LinearExtension l = linear_extension(c, m);
      CHECK(reduce_by_elimination(c, m, l, EliminationOptions{true, std::nullopt}).morse.complex == paths.complex);
      LinearExtension other = shuffle_extension(rng, c, m, l);
      REQUIRE_FALSE(check_linear_extension(c, m, other));
      Decomposition d = reduce_by_elimination(c, m, other, EliminationOptions{true, std::nullopt});
      CHECK(d.morse.complex == paths.complex);
      CHECK(d.atoms.size() == m.size());
      CHECK_NOTHROW(verify_decomposition(c, d));
      CHECK_NOTHROW(validate_complex(paths.complex));

      auto listed = morse_boundary_by_path_list(c, m);
      for (const auto& cell : paths.complex.cells()) CHECK(paths.complex.boundary(cell.id) == listed.at(cell.id));
    }
  }

  TEST_CASE("each elimination step matches the paths of the processed pairs") {
    Rng rng(32);
    for (int i = 0; i < 120; ++i) {
      BasedComplex c = random_instance(rng, i);
      Matching m = greedy_matching(c);
      LinearExtension l = shuffle_extension(rng, c, m, linear_extension(c, m));
      BasedComplex normalized = normalize_basis(c, m);
      for (std::size_t k = 0; k <= m.size(); ++k) {
        Decomposition d = reduce_by_elimination(c, m, l, EliminationOptions{true, k});
        Matching prefix = prefix_matching(c, m, l, k);
        CHECK(d.atoms.size() == k);
        CHECK(d.morse.complex == morse_boundary(normalized, prefix).complex);
        CHECK_NOTHROW(verify_decomposition(c, d));
      }
    }
  }

  TEST_CASE("Morse boundaries square to zero and counts cancel") {
    Rng rng(33);
    for (int i = 0; i < 150; ++i) {
      BasedComplex c = random_instance(rng, i);
      Matching m = greedy_matching(c);
      MorseComplex mc = morse_boundary(c, m);
      CHECK_NOTHROW(validate_complex(mc.complex));
      long chi = 0, chi_m = 0;
      for (const auto& cell : c.cells()) chi += (cell.dim % 2 ? -1 : 1);
      for (const auto& cell : mc.complex.cells()) chi_m += (cell.dim % 2 ? -1 : 1);
      CHECK(chi == chi_m);
      CHECK(mc.complex.size() == c.size() - 2 * m.size());
    }
  }

  TEST_CASE("normalization leaves the Morse complex unchanged") {
    Rng rng(34);
    for (int i = 0; i < 150; ++i) {
      BasedComplex c = random_instance(rng, i);
      Matching m = greedy_matching(c);
      BasedComplex n = normalize_basis(c, m);
      CHECK(morse_boundary(n, m).complex == morse_boundary(c, m).complex);
      CHECK(reduce_by_elimination(n, m).morse.complex == reduce_by_elimination(c, m).morse.complex);
      for (const auto& p : m.pairs) CHECK(covering_weight(n, p.up, p.down).is_one());
    }
  }

  TEST_CASE("projective plane over several rings") {
    for (const RingSpec& ring : {Z, RingSpec::rationals(), RingSpec::integers_mod(2), RingSpec::integers_mod(6)}) {
      BasedComplex c = projective_plane(ring);
      Matching m = greedy_matching(c);
      Decomposition d = reduce_by_elimination(c, m, linear_extension(c, m), EliminationOptions{true, std::nullopt});
      CHECK(d.morse.complex == morse_boundary(c, m).complex);
      CHECK_NOTHROW(verify_decomposition(c, d));
    }
  }

  TEST_CASE("verify_decomposition rejects forgeries") {
    BasedComplex interval = load_complex_fixture("interval.json");
    Matching im = load_matching_fixture("interval_matching.json");
    Decomposition good = reduce_by_elimination(interval, im);

    Decomposition missing = good;
    missing.atoms.clear();
    CHECK(decomposition_error(interval, missing) == DecompositionError::Kind::NotABasis);

    Decomposition singular = good;
    singular.final_basis.at("v0") = Chain(Z, 0);
    CHECK(decomposition_error(interval, singular) == DecompositionError::Kind::NotABasis);

    Decomposition doubled = good;
    doubled.final_basis.at("v0").add_scaled(good.final_basis.at("v0"), z(1));
    CHECK(decomposition_error(interval, doubled) == DecompositionError::Kind::NotABasis);

    Decomposition identity = good;
    for (auto& [id, chain] : identity.final_basis) {
      chain = Chain(Z, interval.cell(interval.index_of(id)).dim);
      chain.add(id, z(1));
    }
    CHECK(decomposition_error(interval, identity) == DecompositionError::Kind::CrossTermsRemain);

    // d(e) = 2 (v1 - v0): a valid basis over Z, but the atom block is 2.
    BasedComplex seg = load_complex_fixture("doubled_segment.json");
    Decomposition weak{MorseComplex{BasedComplex(Z)}, {{"e", "v0", 1}}, {}};
    weak.morse.complex.add_cell("v1", 0);
    Chain e(Z, 1), v0(Z, 0), v1(Z, 0);
    e.add("e", z(1));
    v0.add("v1", z(1));
    v0.add("v0", z(-1));
    v1.add("v1", z(1));
    weak.final_basis = {{"e", e}, {"v0", v0}, {"v1", v1}};
    CHECK(decomposition_error(seg, weak) == DecompositionError::Kind::AtomNotUnit);
    // Over Q the same block is a unit.
    BasedComplex seg_q = change_ring(seg, RingSpec::rationals());
    Decomposition weak_q{MorseComplex{BasedComplex(RingSpec::rationals())}, weak.atoms, {}};
    weak_q.morse.complex.add_cell("v1", 0);
    for (const auto& [id, chain] : weak.final_basis) {
      Chain q(RingSpec::rationals(), chain.dim());
      for (const auto& [o, coeff] : chain.terms()) q.add(o, RingElement(RingSpec::rationals(), coeff.value()));
      weak_q.final_basis.emplace(id, q);
    }
    CHECK_NOTHROW(verify_decomposition(seg_q, weak_q));

    BasedComplex circle = load_complex_fixture("triangle_circle.json");
    Decomposition dc = reduce_by_elimination(circle, load_matching_fixture("triangle_circle_matching.json"));
    Decomposition forged = dc;
    Chain bogus(Z, 0);
    bogus.add("v0", z(1));
    forged.morse.complex.set_boundary("e12", bogus);
    CHECK(decomposition_error(circle, forged) == DecompositionError::Kind::MorseBlockMismatch);
  }
}
