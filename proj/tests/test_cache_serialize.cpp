#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quatforms/cache.hpp"
#include "quatforms/errors.hpp"
#include "quatforms/serialize.hpp"

using namespace quatforms;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("quatforms_test_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("atomic writes leave only the target") {
  fs::path d = scratch("atomic");
  atomic_write(d / "sub" / "x.json", "first");
  atomic_write(d / "sub" / "x.json", "second");
  CHECK(slurp(d / "sub" / "x.json") == "second");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d / "sub")) ++files;
  CHECK(files == 1);
  fs::remove_all(d);
}

TEST_CASE("cache directory resolution") {
  ::setenv(kCacheDirEnv, "/tmp/from-env", 1);
  CHECK(resolve_cache_dir("/tmp/flag") == fs::path("/tmp/flag"));
  CHECK(resolve_cache_dir("") == fs::path("/tmp/from-env"));
  ::unsetenv(kCacheDirEnv);
  CHECK(!resolve_cache_dir("").has_value());
}

TEST_CASE("result cache round-trip and misses") {
  fs::path d = scratch("results");
  auto& cache = ResultCache::global();
  cache.set_directory(d);
  REQUIRE(cache.enabled());
  Json v = {{"b", 2}, {"a", 1}};
  CHECK(!cache.load("kind", "key-1").has_value());
  cache.store("kind", "key-1", v);
  auto got = cache.load("kind", "key-1");
  REQUIRE(got.has_value());
  CHECK(got->dump() == v.dump());

  fs::path file = fs::directory_iterator(d / "kind")->path();
  Json doc = Json::parse(slurp(file));
  doc["key"] = "other";
  atomic_write(file, doc.dump());
  CHECK(!cache.load("kind", "key-1").has_value());

  atomic_write(file, "{not json");
  CHECK(!cache.load("kind", "key-1").has_value());

  cache.set_directory(std::nullopt);
  CHECK(!cache.enabled());
  fs::remove_all(d);
}

TEST_CASE("JSON keys keep insertion order") {
  LevelSpec level{11, 1, 1, GammaStyle::Projective, Character::Quadratic};
  CHECK(level_json(level).dump() ==
        R"({"p":11,"n":1,"e":1,"gamma_style":"projective","character":"quadratic","recipe":"diagonal"})");
  CHECK(level_key(level) != level_key(LevelSpec{11, 1, 1, GammaStyle::Projective}));
  Json poly = int_poly_json(int_poly_from({-1, 0, 1}));
  CHECK(poly.begin().key() == "text");
  CHECK(poly["coefficients"].dump() == R"(["-1","0","1"])");
  CHECK(quat_json(Quat(1, 1, 1, 1)).dump() == "[1,1,1,1]");
}
