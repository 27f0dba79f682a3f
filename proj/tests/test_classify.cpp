#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/error.hpp"
#include "qf/util.hpp"

using namespace qf;

namespace {

std::vector<QuandleRecord> classify_builtin(int n, int jobs = 1) {
  const GroupDatabase* db = n >= 2 ? &builtin_transitive_groups(n) : nullptr;
  return classify_indecomposable(n, db, jobs);
}

}  // namespace

TEST_CASE("classification counts at small sizes") {
  CHECK(classify_builtin(1).size() == 1);
  CHECK(classify_builtin(2).empty());
  CHECK(classify_builtin(3).size() == 1);
  auto r4 = classify_builtin(4);
  REQUIRE(r4.size() == 1);
  auto tetra = conjugation_rack(PermGroup::alternating(4),
                                {Permutation::parse_cycles("(1,2,3)", 4)});
  CHECK(r4[0].table == canonical_form(tetra));
  CHECK(classify_builtin(6).size() == 2);
}

TEST_CASE("brute force counts at small sizes") {
  CHECK(brute_force_indecomposable(5).size() == 3);
  CHECK(brute_force_indecomposable(7).size() == 5);
  CHECK(brute_force_indecomposable(8).size() == 3);
  CHECK_THROWS_AS(brute_force_indecomposable(9), error);
}

TEST_CASE("oracle equivalence at size 7") {
  auto brute = brute_force_indecomposable(7);
  auto recs = classify_builtin(7);
  REQUIRE(brute.size() == recs.size());
  for (size_t i = 0; i < brute.size(); ++i) CHECK(brute[i] == recs[i].table);
}

TEST_CASE("q_count") {
  CHECK(q_count(1) == 1);
  CHECK(q_count(2) == 0);
  CHECK(q_count(5) == 3);
  CHECK_THROWS_WITH_AS(q_count(10), doctest::Contains("no group database"), error);
}

TEST_CASE("records carry their invariants") {
  for (int n = 1; n <= 6; ++n) {
    auto recs = classify_builtin(n);
    for (size_t i = 0; i + 1 < recs.size(); ++i) CHECK(recs[i].table < recs[i + 1].table);
    int index = 1;
    for (const auto& rec : recs) {
      CHECK(rec.size == n);
      CHECK(rec.index == index++);
      CHECK(rec.table.is_quandle());
      CHECK(is_indecomposable(rec.table));
      CHECK(canonical_form(rec.table) == rec.table);
      auto inn = inner_group(rec.table);
      CHECK(inn.is_transitive());
      CHECK(rec.inner_group_order == inn.order());
      CHECK(rec.crossed_set == is_crossed_set(rec.table));
      CHECK(rec.faithful == is_faithful(rec.table));
    }
  }
}

TEST_CASE("classification is independent of the job count") {
  auto serial = classify_builtin(6, 1);
  auto parallel = classify_builtin(6, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].table == parallel[i].table);
}

TEST_CASE("prime sizes are affine") {
  for (int p : {3, 5, 7}) {
    for (const auto& rec : classify_builtin(p)) {
      bool affine = false;
      for (int t = 2; t < p && !affine; ++t)
        affine = find_isomorphism(rec.table, affine_quandle_zn(p, t)).has_value();
      CHECK(affine);
    }
  }
}

TEST_CASE("small_quandle") {
  QuandleDatabase db;
  for (int n = 1; n <= 6; ++n) db.insert(n, classify_builtin(n));
  auto tetra = conjugation_rack(PermGroup::alternating(4),
                                {Permutation::parse_cycles("(1,2,3)", 4)});
  CHECK(small_quandle(db, 4, 1) == canonical_form(tetra));
  CHECK_THROWS_WITH_AS(small_quandle(db, 2, 1), doctest::Contains("out of range"), error);
  CHECK_THROWS_WITH_AS(small_quandle(db, 9, 1), doctest::Contains("no size"), error);
  CHECK_THROWS_AS(small_quandle(db, 5, 4), error);
}

TEST_CASE("classification runs over a large-degree group list") {
  // A partial degree-12 list (regular cyclic, dihedral, alternating,
  // symmetric). Not a complete classification input, but it drives the
  // same code paths a full external database would: stabilizers and
  // centers inside groups of order up to 12!.
  auto pc = [](const std::string& text) { return Permutation::parse_cycles(text, 12); };
  GroupDatabase db;
  db.degree = 12;
  db.groups.push_back(PermGroup(12, {pc("(1,2,3,4,5,6,7,8,9,10,11,12)")}));
  db.groups.push_back(
      PermGroup(12, {pc("(1,2,3,4,5,6,7,8,9,10,11,12)"), pc("(2,12)(3,11)(4,10)(5,9)(6,8)")}));
  db.groups.push_back(PermGroup::alternating(12));
  db.groups.push_back(PermGroup::symmetric(12));
  for (const auto& g : db.groups) CHECK(g.is_transitive());

  auto recs = classify_indecomposable(12, &db, 2);
  for (const auto& rec : recs) {
    CHECK(rec.size == 12);
    CHECK(rec.table.is_quandle());
    CHECK(is_indecomposable(rec.table));
    CHECK(canonical_form(rec.table) == rec.table);
  }
  auto again = classify_indecomposable(12, &db, 1);
  REQUIRE(again.size() == recs.size());
  for (size_t i = 0; i < recs.size(); ++i) CHECK(again[i].table == recs[i].table);
}

TEST_CASE("database round trip") {
  QuandleDatabase db;
  for (int n = 1; n <= 6; ++n) db.insert(n, classify_builtin(n));
  std::ostringstream os;
  db_write(db, os);
  std::istringstream is(os.str());
  auto back = db_read(is);
  CHECK(back.sizes() == db.sizes());
  for (int n : db.sizes()) {
    REQUIRE(back.records(n).size() == db.records(n).size());
    for (size_t i = 0; i < db.records(n).size(); ++i) {
      CHECK(back.records(n)[i].table == db.records(n)[i].table);
      CHECK(back.records(n)[i].index == db.records(n)[i].index);
      CHECK(back.records(n)[i].inner_group_order == db.records(n)[i].inner_group_order);
    }
  }
  // Size 2 has q = 0 and still round-trips as an empty section.
  CHECK(back.has_size(2));
  CHECK(back.records(2).empty());
}

TEST_CASE("database rejects corruption") {
  QuandleDatabase db;
  db.insert(4, classify_builtin(4));
  std::ostringstream os;
  db_write(db, os);
  std::string text = os.str();

  // Flipped byte: checksum failure.
  std::string flipped = text;
  flipped[text.find("[4 1]") + 1] = '9';
  std::istringstream bad1(flipped);
  CHECK_THROWS_WITH_AS(db_read(bad1), doctest::Contains("checksum"), error);

  // Valid checksum over a non-rack table: validation failure.
  size_t mark = text.rfind("checksum ");
  std::string body = text.substr(0, mark);
  // Body lines: QDB1, [4 1], size line "4", then the four table rows.
  size_t row_start = 0;
  for (int newlines = 0; newlines < 3; ++newlines) row_start = body.find('\n', row_start) + 1;
  body[row_start] = body[body.find(' ', row_start) + 1];  // first entry := second entry
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  std::istringstream bad2(body + "checksum " + buf + "\n");
  CHECK_THROWS_AS(db_read(bad2), error);

  // Wrong version line.
  std::istringstream bad3("QDB2\nchecksum 0000000000000000\n");
  CHECK_THROWS_AS(db_read(bad3), error);
}
