#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "goldsplit/io.hpp"
#include "goldsplit/problems.hpp"
#include "test_util.hpp"

using namespace goldsplit;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("goldsplit-io-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

LibsvmData parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("LIBSVM lines") {
  const LibsvmData one = parse_text("+1 3:0.5 7:1\n");
  CHECK(one.A.rows() == 1);
  CHECK(one.A.cols() == 7);
  CHECK(one.A.nonZeros() == 2);
  CHECK(one.A.coeff(0, 2) == 0.5);
  CHECK(one.A.coeff(0, 6) == 1.0);
  CHECK(one.labels(0) == 1.0);

  const LibsvmData empty = parse_text("");
  CHECK(empty.A.rows() == 0);
  CHECK(empty.A.cols() == 0);
  CHECK(empty.labels.size() == 0);

  const LibsvmData commented = parse_text("# header\n\n-1 1:2 # trailing\n1 2:3\n");
  CHECK(commented.A.rows() == 2);
  CHECK(commented.labels(0) == -1.0);

  CHECK(parse_text("0 1:1\n1 2:1\n").labels == Eigen::Vector2d(-1.0, 1.0));
  CHECK(parse_text("2 1:1\n1 2:1\n").labels == Eigen::Vector2d(1.0, -1.0));

  std::istringstream wide("1 2:1\n");
  CHECK(parse_libsvm(wide, Index{10}).A.cols() == 10);
}

TEST_CASE("LIBSVM parse errors carry the line number") {
  auto line_of = [](const std::string& text) {
    try {
      parse_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1L;
  };
  CHECK(line_of("1 1:1\n1 2:x\n") == 2);
  CHECK(line_of("1 1:1\n-1 1:1\nabc 1:1\n") == 3);
  CHECK(line_of("1 0:1\n") == 1);
  CHECK(line_of("1 1-1\n") == 1);
  CHECK_THROWS_AS(parse_text("1 1:1\n2 1:1\n3 1:1\n"), DataError);
}

TEST_CASE("LIBSVM round trip") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Index> row(0, 29), col(0, 14);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::vector<Triplet> t;
  for (int k = 0; k < 120; ++k) t.push_back({row(rng), col(rng), val(rng)});
  for (Index r = 0; r < 30; ++r) t.push_back({r, 14, 1.0 + r});  // every row non-empty, full width
  const SparseMatrix A = sparse_from_triplets(30, 15, t);
  Vector labels(30);
  for (Index i = 0; i < 30; ++i) labels(i) = i % 3 == 0 ? 1.0 : -1.0;

  std::ostringstream out;
  write_libsvm(out, A, labels);
  std::istringstream in(out.str());
  const LibsvmData back = parse_libsvm(in);
  CHECK(back.A.rows() == 30);
  CHECK(back.A.cols() == 15);
  CHECK((Matrix(back.A) - Matrix(A)).norm() == 0.0);
  CHECK((back.labels - labels).norm() == 0.0);
}

TEST_CASE("PGM round trip") {
  Matrix img(3, 4);
  img << 0.0, 1.0, 0.5, 0.25, 1.0, 1.0, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5;
  std::ostringstream out;
  write_pgm(out, img);
  CHECK(out.str().rfind("P5", 0) == 0);
  std::istringstream in(out.str());
  const Matrix back = read_pgm(in);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK((back - img).cwiseAbs().maxCoeff() <= 0.5 / 255.0 + 1e-12);

  std::istringstream bad("P2\n1 1\n255\n0\n");
  CHECK_THROWS(read_pgm(bad));
}

TEST_CASE("instance manifest round trip") {
  GenSpec spec = default_spec(Family::fused_lasso);
  spec.m = 12;
  spec.n = 9;
  spec.seed = 4;
  InstanceData data = generate_data(spec);
  data.F_star = ReferenceValue{0.125, "unit test"};
  const fs::path dir = scratch_dir("manifest");
  const fs::path manifest = write_instance(dir, data);
  CHECK(fs::exists(manifest));
  CHECK(manifest.filename() == "manifest.json");

  const InstanceData back = read_instance(dir);
  CHECK(back.spec.m == 12);
  CHECK(back.spec.seed == 4);
  REQUIRE(back.F_star);
  CHECK(back.F_star->value == 0.125);
  CHECK(back.F_star->provenance == "unit test");
  for (const auto& [key, m] : data.dense) CHECK((back.dense.at(key).array() == m.array()).all());
  for (const auto& [key, v] : data.vectors) CHECK((back.vectors.at(key).array() == v.array()).all());

  const ProblemInstance a = assemble(data), b = assemble(read_instance(manifest));
  CHECK(objective(a, a.x0) == objective(b, b.x0));

  // Sparse payloads as well.
  GenSpec ls = default_spec(Family::logistic2);
  ls.m = 30;
  ls.n = 8;
  const InstanceData sparse = generate_data(ls);
  const fs::path sdir = scratch_dir("sparse");
  write_instance(sdir, sparse);
  const InstanceData sback = read_instance(sdir);
  for (const auto& [key, m] : sparse.sparse) CHECK((Matrix(sback.sparse.at(key)) - Matrix(m)).norm() == 0.0);

  fs::remove_all(dir);
  fs::remove_all(sdir);
}

TEST_CASE("binary payloads are little-endian float64") {
  const fs::path dir = scratch_dir("bin");
  const double values[] = {1.0, -2.5, 1e-300};
  write_binary_doubles(dir / "x.bin", values, 3);
  CHECK(fs::file_size(dir / "x.bin") == 24);
  std::ifstream in(dir / "x.bin", std::ios::binary);
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  // 1.0 = 0x3FF0000000000000, least significant byte first.
  CHECK(bytes[7] == 0x3F);
  CHECK(bytes[6] == 0xF0);
  CHECK(bytes[0] == 0x00);
  CHECK(read_binary_doubles(dir / "x.bin") == std::vector<double>{1.0, -2.5, 1e-300});
  fs::remove_all(dir);
}

TEST_CASE("generator settings as JSON") {
  GenSpec s = default_spec(Family::graphnet);
  s.alpha = 3.0;
  s.seed = 99;
  const GenSpec back = spec_from_json(spec_to_json(s));
  CHECK(back.family == Family::graphnet);
  CHECK(back.alpha == 3.0);
  CHECK(back.seed == 99);
  CHECK(back.n1 == s.n1);

  const GenSpec partial = spec_from_json(nlohmann::json{{"family", "lasso"}, {"m", 40}});
  CHECK(partial.m == 40);
  CHECK(partial.n == GenSpec{}.n);
  CHECK_THROWS(spec_from_json(nlohmann::json{{"family", "lasso"}, {"mm", 40}}));
}

}  // TEST_SUITE
