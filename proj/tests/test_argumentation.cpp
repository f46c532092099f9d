#include <doctest.h>

#include <algorithm>
#include <random>

#include "vafex/argumentation.hpp"
#include "vafex/errors.hpp"
#include "vafex/rng.hpp"

using namespace vafex;

namespace {

ArgumentationFramework make_af(
    std::initializer_list<const char*> args,
    std::initializer_list<std::pair<const char*, const char*>> attacks) {
  ArgumentationFramework af;
  for (const char* a : args) af.add_argument(a);
  for (const auto& [from, to] : attacks) af.add_attack(from, to);
  return af;
}

bool is_subset(const ExtensionSet& a, const ExtensionSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ArgumentationFramework random_af(std::mt19937_64& rng, int max_args,
                                 double density) {
  const int n = 1 + static_cast<int>(uniform_unit(rng) * max_args);
  ArgumentationFramework af;
  std::vector<ArgumentId> ids;
  for (int i = 0; i < n; ++i) {
    ids.push_back("a" + std::to_string(i));
    af.add_argument(ids.back());
  }
  for (const auto& from : ids) {
    for (const auto& to : ids) {
      if (uniform_unit(rng) < density) af.add_attack(from, to);
    }
  }
  return af;
}

ExtensionSet random_subset(std::mt19937_64& rng,
                           const ArgumentationFramework& af) {
  ExtensionSet s;
  for (const auto& id : af.arguments()) {
    if (uniform_unit(rng) < 0.5) s.insert(id);
  }
  return s;
}

}  // namespace

TEST_CASE("set_attacks follows the attack relation") {
  auto af = make_af({"A", "B"}, {{"A", "B"}});
  CHECK(set_attacks(af, {"A"}, "B"));
  CHECK_FALSE(set_attacks(af, {}, "B"));

  auto chain = make_af({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK_FALSE(set_attacks(chain, {"A"}, "C"));

  CHECK_THROWS_AS(set_attacks(af, {"A"}, "Z"), UnknownArgumentError);
  CHECK_THROWS_AS(set_attacks(af, {"Z"}, "B"), UnknownArgumentError);
}

TEST_CASE("conflict-free sets contain no internal attack") {
  auto af = make_af({"A", "B"}, {{"A", "B"}});
  CHECK_FALSE(is_conflict_free(af, {"A", "B"}));
  CHECK(is_conflict_free(af, {"A"}));
  CHECK(is_conflict_free(af, {}));

  auto self = make_af({"A"}, {{"A", "A"}});
  CHECK_FALSE(is_conflict_free(self, {"A"}));
}

TEST_CASE("defends requires counter-attacking every attacker") {
  auto chain = make_af({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK(defends(chain, {"A"}, "C"));

  auto af = make_af({"A", "B"}, {{"B", "A"}});
  CHECK_FALSE(defends(af, {}, "A"));

  auto lone = make_af({"A"}, {});
  CHECK(defends(lone, {}, "A"));
}

TEST_CASE("characteristic function collects defended arguments") {
  auto chain = make_af({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK(characteristic_function(chain, {}) == ExtensionSet{"A"});
  CHECK(characteristic_function(chain, {"A"}) == ExtensionSet{"A", "C"});

  auto mutual = make_af({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  CHECK(characteristic_function(mutual, {}) == ExtensionSet{});
}

TEST_CASE("grounded extension on the reinstatement chain") {
  auto chain = make_af({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK(grounded_extension(chain) == ExtensionSet{"A", "C"});
}

TEST_CASE("grounded extension of a mutual attack is empty") {
  auto mutual = make_af({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  CHECK(grounded_extension(mutual) == ExtensionSet{});
}

TEST_CASE("grounded extension of the empty framework") {
  CHECK(grounded_extension(ArgumentationFramework{}) == ExtensionSet{});
}

TEST_CASE("complete-extension enumeration on small frameworks") {
  auto mutual = make_af({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  auto exts = enumerate_complete_extensions(mutual);
  REQUIRE(exts.size() == 3);
  CHECK(exts[0] == ExtensionSet{});
  CHECK(exts[1] == ExtensionSet{"A"});
  CHECK(exts[2] == ExtensionSet{"B"});

  auto chain = make_af({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  auto chain_exts = enumerate_complete_extensions(chain);
  REQUIRE(chain_exts.size() == 1);
  CHECK(chain_exts[0] == ExtensionSet{"A", "C"});

  auto empty_exts = enumerate_complete_extensions(ArgumentationFramework{});
  REQUIRE(empty_exts.size() == 1);
  CHECK(empty_exts[0] == ExtensionSet{});
}

TEST_CASE("enumeration refuses oversized frameworks") {
  ArgumentationFramework af;
  for (int i = 0; i < 17; ++i) af.add_argument("a" + std::to_string(i));
  CHECK_THROWS_AS(enumerate_complete_extensions(af), SizeBoundError);
  CHECK_NOTHROW(enumerate_complete_extensions(af, 17));
}

TEST_CASE("grounded equals the minimal complete extension (oracle)") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 500; ++trial) {
    const double density = 0.1 + 0.4 * uniform_unit(rng);
    ArgumentationFramework af = random_af(rng, 10, density);
    ExtensionSet ge = grounded_extension(af);

    CHECK(is_conflict_free(af, ge));
    for (const auto& id : ge) CHECK(defends(af, ge, id));

    auto completes = enumerate_complete_extensions(af);
    CHECK(std::find(completes.begin(), completes.end(), ge) != completes.end());
    for (const auto& complete : completes) {
      CHECK(is_subset(ge, complete));
    }
  }
}

TEST_CASE("characteristic function is monotone") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    ArgumentationFramework af = random_af(rng, 12, 0.3 * uniform_unit(rng));
    ExtensionSet s2 = random_subset(rng, af);
    ExtensionSet s1;
    for (const auto& id : s2) {
      if (uniform_unit(rng) < 0.5) s1.insert(id);
    }
    CHECK(is_subset(characteristic_function(af, s1),
                    characteristic_function(af, s2)));
  }
}

TEST_CASE("unattacked frameworks ground to all arguments") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    ArgumentationFramework af = random_af(rng, 10, 0.0);
    CHECK(grounded_extension(af) == af.arguments());
  }
}

TEST_CASE("grounded extension is deterministic") {
  std::mt19937_64 rng(123);
  ArgumentationFramework af = random_af(rng, 10, 0.3);
  CHECK(grounded_extension(af) == grounded_extension(af));
}

TEST_CASE("framework json form is sorted and stable") {
  auto af = make_af({"B", "A", "C"}, {{"C", "A"}, {"A", "B"}});
  nlohmann::json j = af.to_json();
  CHECK(j["arguments"] == nlohmann::json({"A", "B", "C"}));
  CHECK(j["attacks"][0] == nlohmann::json({"A", "B"}));
  CHECK(j["attacks"][1] == nlohmann::json({"C", "A"}));
  CHECK(ArgumentationFramework::from_json(j) == af);
}

TEST_CASE("attacks require registered endpoints") {
  ArgumentationFramework af;
  af.add_argument("A");
  CHECK_THROWS_AS(af.add_attack("A", "B"), UnknownArgumentError);
}
