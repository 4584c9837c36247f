#include <doctest.h>

#include "thg/error.hpp"
#include "thg/spacecat.hpp"

using namespace thg;

namespace {

ErrorKind kind_of(const std::string& doc) {
  try {
    load_model(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("document loaded without error: " << doc);
  return ErrorKind::Internal;
}

std::string path_of(const std::string& doc) {
  try {
    load_model(doc);
  } catch (const Error& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("RP3 catalog entry") {
  SpaceModel x = Catalog::builtin().space("RP3");
  CHECK(std::get<FgAbelian>(x.pi1) == FgAbelian::cyclic(2));
  CHECK(x.pi_at(3) == FgAbelian::free(1));
  CHECK(x.pi_at(2).is_trivial());
  for (int i = 1; i <= x.truncation; ++i) {
    auto g = x.gottlieb_at(i);
    REQUIRE(g);
    CHECK(g->kind == SubgroupData::Kind::Full);
  }
}

TEST_CASE("S3 carries the standard table") {
  SpaceModel x = Catalog::builtin().space("S3");
  CHECK(x.truncation == 6);
  CHECK(x.pi_at(3) == FgAbelian::free(1));
  CHECK(x.pi_at(4) == FgAbelian::cyclic(2));
  CHECK(x.pi_at(5) == FgAbelian::cyclic(2));
  CHECK(x.pi_at(6) == FgAbelian::cyclic(12));
  CHECK_THROWS_AS(x.pi_at(7), Error);
  try {
    x.pi_at(7);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("invalid documents") {
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[1]}})") ==
        ErrorKind::InvariantViolation);
  CHECK(path_of(R"({"kind":"space","name":"X","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[1]}})") ==
        "$.pi1.torsion[0]");
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":2,"aspherical":true,"pi1":{"rank":1,"torsion":[]},
                    "pi":{"2":{"rank":1,"torsion":[]}}})") == ErrorKind::InvariantViolation);
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[]},
                    "colour":"red"})") == ErrorKind::SchemaViolation);
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":2)") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[]},
                    "pi":{"3":{"rank":1,"torsion":[]}}})") == ErrorKind::InvariantViolation);
  CHECK(kind_of(R"({"kind":"space","name":"X","truncation":3,"aspherical":false,"pi1":{"rank":0,"torsion":[]},
                    "pi":{"3":{"rank":0,"torsion":[4]}},"gottlieb":{"3":{"generators":[[1,0]]}}})") ==
        ErrorKind::InvariantViolation);
  CHECK(kind_of(R"({"kind":"transformation","space":"S3","group":{"catalog":"Z2"},"free":true,
                    "action":{"t":{"3":[[2]]}}})") == ErrorKind::InvariantViolation);
  CHECK(kind_of(R"({"kind":"transformation","space":"S3","group":{"catalog":"Z2"},"free":true,
                    "action":{"u":{"3":[[1]]}}})") == ErrorKind::NotFound);
  CHECK(kind_of(R"({"kind":"transformation","space":"T3","group":{"catalog":"Z2"},"free":true,
                    "action":{"t":{"1":[[1,0,0],[0,-1,0],[0,0,-1]]}},"cocycle":{"t,t":[0,1,0]}})") ==
        ErrorKind::InvariantViolation);
  // The trivial cocycle makes (0, t) a torsion element, contradicting freeness on an aspherical space.
  CHECK(kind_of(R"({"kind":"transformation","space":"T3","group":{"catalog":"Z2"},"free":true,
                    "action":{"t":{"1":[[1,0,0],[0,-1,0],[0,0,-1]]}},"cocycle":{"t,t":[0,0,0]}})") ==
        ErrorKind::InvariantViolation);
  CHECK(kind_of(R"({"kind":"transformation","space":"S3","group":{"catalog":"Z4"},"free":true,"g0":["e","t"]})") ==
        ErrorKind::InvariantViolation);
}

TEST_CASE("every catalog model round-trips through serialization") {
  const Catalog& c = Catalog::builtin();
  for (const auto& name : c.space_names()) {
    CAPTURE(name);
    SpaceModel x = c.space(name);
    std::string once = serialize(x);
    Model back = load_model(once, &c);
    CHECK(serialize(back) == once);
  }
  for (const auto& name : c.transformation_names()) {
    CAPTURE(name);
    TransformationModel tg = c.transformation(name);
    std::string once = serialize(tg);
    Model back = load_model(once, &c);
    CHECK(serialize(back) == once);
  }
}

TEST_CASE("catalog encodes the transformation data") {
  const Catalog& c = Catalog::builtin();
  TransformationModel t3 = c.transformation("t3-z2");
  CHECK(t3.action_at(t3.group.index_of("t"), 1) == IntMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  TransformationModel cube = c.transformation("s3cubed-z2");
  CHECK(cube.action_at(cube.group.index_of("t"), 3) == IntMatrix::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  TransformationModel rp3 = c.transformation("rp3-z2z2");
  CHECK(rp3.group.label() == "Z2xZ2");
  CHECK(rp3.cocycle);
}

TEST_CASE("orbit spaces") {
  const Catalog& c = Catalog::builtin();
  SpaceModel q = orbit_space(c.transformation("rp3-z2z2")).model;
  REQUIRE(std::holds_alternative<CayleyGroup>(q.pi1));
  CHECK(is_isomorphic(std::get<CayleyGroup>(q.pi1), from_catalog("Q8")));

  SpaceModel t = orbit_space(c.transformation("t3-z2")).model;
  REQUIRE(std::holds_alternative<VirtAbelian>(t.pi1));
  const auto& v = std::get<VirtAbelian>(t.pi1);
  CHECK(center_summary(v).group == FgAbelian::free(1));
  CHECK(abelianization(v) == canonical_form(1, {2, 2}));
  CHECK(t.gottlieb_at(1)->kind == SubgroupData::Kind::Center);

  OrbitSpace cube = orbit_space(c.transformation("s3cubed-z2"));
  CHECK(pi1_order(cube.model.pi1) == ExtNat(2));
  CHECK(cube.model.pi_at(3) == FgAbelian::free(3));
  CHECK(cube.g1_rule == OrbitG1Rule::ActionKernel);
  CHECK(cube.model.gottlieb_at(1)->kind == SubgroupData::Kind::Trivial);

  OrbitSpace lens = orbit_space(c.transformation("s3-q8"));
  CHECK(lens.g1_rule == OrbitG1Rule::SphereCatalog);
}

TEST_CASE("orbit spaces keep higher groups and multiply the fundamental group order") {
  const Catalog& c = Catalog::builtin();
  std::vector<std::string> names = c.transformation_names();
  for (int d = 1; d <= 7; ++d) names.push_back("S" + std::to_string(d) + "-antipodal");
  for (const auto& name : names) {
    CAPTURE(name);
    TransformationModel tg = c.transformation(name);
    if (!tg.free) continue;
    SpaceModel o = orbit_space(tg).model;
    CHECK(o.truncation == tg.space.truncation);
    for (int i = 2; i <= o.truncation; ++i) CHECK(o.pi_at(i) == tg.space.pi_at(i));
    CHECK(pi1_order(o.pi1) == ExtNat(static_cast<long>(tg.group.order())) * pi1_order(tg.space.pi1));
  }
}

TEST_CASE("non-free actions and missing cocycles") {
  TransformationModel tg = Catalog::builtin().transformation("t3-z2");
  tg.free = false;
  CHECK_THROWS_AS(orbit_space(tg), Error);
  TransformationModel no_cocycle = Catalog::builtin().transformation("rp3-z2z2");
  no_cocycle.cocycle.reset();
  try {
    orbit_space(no_cocycle);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("sphere templates") {
  const Catalog& c = Catalog::builtin();
  SpaceModel s5 = c.space("S5");
  CHECK(s5.truncation == 5);
  CHECK(s5.pi_at(5) == FgAbelian::free(1));
  CHECK_FALSE(s5.gottlieb_at(5));
  SpaceModel s4 = c.space("S4");
  CHECK(s4.gottlieb_at(4)->kind == SubgroupData::Kind::Trivial);
  TransformationModel a4 = c.transformation("S4-antipodal");
  CHECK(a4.action_at(a4.group.index_of("t"), 4) == IntMatrix::from_rows({{-1}}));
  CHECK_THROWS_AS(c.space("S0"), Error);
  CHECK_THROWS_AS(c.transformation("nothing"), Error);
}

TEST_CASE("catalog from in-memory documents") {
  std::vector<std::pair<std::string, std::string>> docs = {
      {"b.json", R"({"kind":"transformation","space":"P","group":{"catalog":"Z3"},"free":true})"},
      {"a.json", R"({"kind":"space","name":"P","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[]}})"},
  };
  Catalog c = Catalog::from_documents(docs);
  CHECK(c.space_names() == std::vector<std::string>{"P"});
  CHECK(c.transformation_names() == std::vector<std::string>{"b"});
  docs.push_back({"c.json", R"({"kind":"space","name":"P","truncation":2,"aspherical":false,"pi1":{"rank":0,"torsion":[]}})"});
  CHECK_THROWS_AS(Catalog::from_documents(docs), Error);
}
