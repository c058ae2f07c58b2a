#include <doctest.h>

#include <random>

#include "poslog/model.hpp"
#include "poslog/syntax.hpp"
#include "support/fixtures.hpp"

using namespace poslog;
namespace pt = poslog::testing;

namespace {

Term v(const std::string& n) { return Term::mk_var(n); }

// Oracle: f and g evaluate identically on every structure in `pool` under
// every assignment of `context`.
bool equivalent_on(const std::vector<Structure>& pool, const Formula& f,
                   const Formula& g, const std::vector<TypedVar>& context) {
  for (const auto& m : pool)
    for (const auto& a : all_assignments(m, context))
      if (eval(m, f, a) != eval(m, g, a)) return false;
  return true;
}

}  // namespace

TEST_CASE("well_sorted: context inference and errors") {
  Signature sig;
  sig.sorts = {"elem", "other"};
  sig.functions.push_back({"f", {0}, 1});
  sig.relations.push_back({"P0", {0}});

  SUBCASE("Top has empty context") {
    auto r = well_sorted(top(), sig);
    REQUIRE(r.has_value());
    CHECK(r.value->empty());
  }
  SUBCASE("atom lookup") {
    auto r = well_sorted(atom(0, {v("x")}), sig);
    REQUIRE(r.has_value());
    CHECK(r.value->at("x") == 0);
  }
  SUBCASE("sort clash through function application") {
    // P0(f(x)) where f: elem -> other, P0: (elem)
    auto r = well_sorted(atom(0, {Term::mk_app(0, {v("x")})}), sig);
    REQUIRE(!r.has_value());
    CHECK(r.error->code == "SortMismatch");
    CHECK(!r.error->path.empty());
  }
  SUBCASE("unknown arity") {
    auto r = well_sorted(atom(0, {v("x"), v("y")}), sig);
    REQUIRE(!r.has_value());
    CHECK(r.error->code == "ArityMismatch");
  }
  SUBCASE("eq between distinct sorts") {
    auto r = well_sorted(eq(v("x"), Term::mk_app(0, {v("x")})), sig);
    REQUIRE(!r.has_value());
    CHECK(r.error->code == "SortMismatch");
  }
  SUBCASE("binder shadows free variable cleanly") {
    Formula f = conj({atom(0, {v("x")}),
                      exists({{"x", 1}}, eq(v("x"), v("x")))});
    auto r = well_sorted(f, sig);
    REQUIRE(r.has_value());
    CHECK(r.value->at("x") == 0);
  }
}

TEST_CASE("prenex: standard pull-out") {
  Signature sig = pt::sig_binary();
  // exists x. D(x,x) & exists y. D(x,y)  ->  one prenex block
  Formula f = exists({{"x", 0}},
                     conj({atom(0, {v("x"), v("x")}),
                           exists({{"y", 0}}, atom(0, {v("x"), v("y")}))}));
  Formula p = to_prenex_existential(f);
  REQUIRE(p.kind == Formula::Kind::Exists);
  CHECK(p.binders.size() == 2);
  CHECK(is_quantifier_free(p.children[0]));

  auto pool = pt::all_structures_up_to(sig, 1, 3);
  CHECK(equivalent_on(pool, f, p, {}));
}

TEST_CASE("prenex: identity on quantifier-free input") {
  Formula f = conj({eq(v("x"), v("y")), top()});
  Formula p = to_prenex_existential(f);
  REQUIRE(p.kind == Formula::Kind::Exists);
  CHECK(p.binders.empty());
  CHECK(p.children[0] == f);
}

TEST_CASE("prenex: renames clashing binders across disjuncts") {
  Signature sig = pt::sig_two_preds();
  // (exists x. P0(x)) | (exists x. P1(x))
  Formula f = disj({exists({{"x", 0}}, atom(0, {v("x")})),
                    exists({{"x", 0}}, atom(1, {v("x")}))});
  Formula p = to_prenex_existential(f);
  REQUIRE(p.kind == Formula::Kind::Exists);
  CHECK(p.binders.size() == 2);
  CHECK(p.binders[0].name != p.binders[1].name);
  // Exhaustive evaluation over all structures of size 1..4.
  auto pool = pt::all_structures_up_to(sig, 1, 4);
  CHECK(equivalent_on(pool, f, p, {}));
}

TEST_CASE("regular disjunction: identity and distribution cases") {
  Signature sig = pt::sig_two_preds();
  SUBCASE("atom becomes a single disjunct") {
    auto r = to_regular_disjunction(atom(0, {v("x")}));
    REQUIRE(r.has_value());
    REQUIRE(r.value->kind == Formula::Kind::Or);
    CHECK(r.value->children.size() == 1);
    CHECK(r.value->children[0].kind == Formula::Kind::Exists);
  }
  SUBCASE("conjunction distributes over disjunction") {
    Formula f = conj({disj({atom(0, {v("x")}), atom(1, {v("x")})}),
                      atom(0, {v("y")})});
    auto r = to_regular_disjunction(f);
    REQUIRE(r.has_value());
    CHECK(r.value->children.size() == 2);
    auto pool = pt::all_structures_up_to(sig, 0, 3);
    CHECK(equivalent_on(pool, f, *r, {{"x", 0}, {"y", 0}}));
  }
  SUBCASE("exists distributes over or") {
    Formula f = exists({{"y", 0}}, disj({atom(0, {v("y")}), atom(1, {v("y")})}));
    auto r = to_regular_disjunction(f);
    REQUIRE(r.has_value());
    CHECK(r.value->children.size() == 2);
    // Equivalent on all structures of size <= 4, empty ones included.
    auto pool = pt::all_structures_up_to(sig, 0, 4);
    CHECK(equivalent_on(pool, f, *r, {}));
  }
  SUBCASE("blowup guard") {
    std::vector<Formula> big;
    for (int i = 0; i < 14; ++i)
      big.push_back(disj({atom(0, {v("x" + std::to_string(i))}),
                          atom(1, {v("x" + std::to_string(i))})}));
    auto r = to_regular_disjunction(conj(big), 1000);
    REQUIRE(!r.has_value());
    CHECK(r.error->code == "ExponentialBlowup");
  }
}

TEST_CASE("canonicalize: alpha-invariance, commutativity, idempotence") {
  Signature sig = pt::sig_two_preds();
  SUBCASE("alpha-equivalent binders") {
    Formula a = exists({{"x", 0}}, atom(0, {v("x")}));
    Formula b = exists({{"y", 0}}, atom(0, {v("y")}));
    CHECK(canonicalize(a) == canonicalize(b));
  }
  SUBCASE("And child order") {
    Formula a = conj({atom(1, {v("x")}), atom(0, {v("x")})});
    Formula b = conj({atom(0, {v("x")}), atom(1, {v("x")})});
    CHECK(canonicalize(a) == canonicalize(b));
  }
  SUBCASE("idempotent on random formulas") {
    std::mt19937 rng(7);
    std::vector<TypedVar> ctx = {{"x", 0}, {"y", 0}};
    for (int i = 0; i < 100; ++i) {
      Formula f = pt::random_formula(rng, sig, ctx, 3);
      Formula c = canonicalize(f);
      CHECK(canonicalize(c) == c);
    }
  }
  SUBCASE("canonicalize preserves semantics") {
    std::mt19937 rng(11);
    std::vector<TypedVar> ctx = {{"x", 0}, {"y", 0}};
    auto pool = pt::all_structures_up_to(sig, 1, 2);
    for (int i = 0; i < 60; ++i) {
      Formula f = pt::random_formula(rng, sig, ctx, 3);
      CHECK(equivalent_on(pool, f, canonicalize(f), ctx));
    }
  }
}

TEST_CASE("normal-form soundness: random formulas vs eval oracle") {
  Signature sig = pt::sig_two_preds();
  std::mt19937 rng(23);
  std::vector<TypedVar> ctx = {{"x", 0}, {"y", 0}};
  auto pool = pt::all_structures_up_to(sig, 1, 3);
  for (int i = 0; i < 80; ++i) {
    Formula f = pt::random_formula(rng, sig, ctx, 3);
    Formula p = to_prenex_existential(f);
    auto r = to_regular_disjunction(f);
    REQUIRE(r.has_value());
    CHECK(equivalent_on(pool, f, p, ctx));
    CHECK(equivalent_on(pool, f, *r, ctx));
  }
}

TEST_CASE("printing round facts") {
  Signature sig = pt::sig_const3();
  Formula f = disj({eq(v("x"), Term::mk_const(0)), eq(v("x"), Term::mk_const(1))});
  CHECK(to_string(f, sig) == "x = c0 | x = c1");
  Sentence s;
  s.premise = eq(Term::mk_const(0), Term::mk_const(1));
  s.conclusion = bot();
  CHECK(to_string(s, sig) == "c0 = c1 -> false");
  CHECK(s.h_universal());
}
