#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bhfm/io.hpp"

using namespace bhfm;

namespace {

NearFieldSet small_data() {
  WaveContext c;
  c.sensors = 24;
  c.n_boundary = 64;
  return add_noise(build_near_field(c, make_curve(Shape::peanut(), 64)), 0.02, 77);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bhfm_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("near-field files round-trip bit-exactly") {
  const NearFieldSet d = small_data();
  std::stringstream ss;
  io::write_near_field(ss, d);
  const std::string text = ss.str();
  CHECK(text.rfind("# k R M delta seed shape n_boundary\n# 2 3 24 0.02 77 peanut 64\n", 0) == 0);

  const NearFieldSet back = io::read_near_field(ss);
  CHECK(back.U == d.U);
  CHECK(back.L == d.L);
  CHECK(back.context.k == d.context.k);
  CHECK(back.context.radius == d.context.radius);
  CHECK(back.context.sensors == 24);
  CHECK(back.context.n_boundary == 64);
  CHECK(back.noise.delta == 0.02);
  CHECK(back.noise.seed == 77u);
  CHECK(back.shape == "peanut");

  std::stringstream again;
  io::write_near_field(again, back);
  CHECK(again.str() == text);

  const auto path = scratch("data.txt");
  io::save_near_field(path.string(), d);
  CHECK(io::load_near_field(path.string()).U == d.U);
}

TEST_CASE("round-tripped data reconstructs identically") {
  const NearFieldSet d = small_data();
  std::stringstream ss;
  io::write_near_field(ss, d);
  const NearFieldSet back = io::read_near_field(ss);
  ReconstructionOptions o;
  o.grid = GridSpec{-2, 2, -2, 2, 25, 25};
  CHECK(reconstruct(d, o).grid.values == reconstruct(back, o).grid.values);
}

TEST_CASE("malformed near-field files are rejected") {
  const auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return io::read_near_field(is);
  };
  const std::string head = "# k R M delta seed shape n_boundary\n# 2 3 2 0 0 kite 64\n";
  const std::string rec = "0 0 1 0 1 0\n0 1 1 0 1 0\n1 0 1 0 1 0\n1 1 1 0 1 0\n";
  CHECK(parse(head + rec).U.rows() == 2);
  CHECK_THROWS_AS(parse("garbage\n"), IoError);
  CHECK_THROWS_AS(parse("# k R M delta seed shape n_boundary\n# 2 3 2 0 0 kite\n" + rec), IoError);
  CHECK_THROWS_AS(parse(head + "0 0 1 0 1 0\n"), IoError);
  CHECK_THROWS_AS(parse(head + rec + "0 0 1 0 1 0\n"), IoError);
  CHECK_THROWS_AS(parse(head + "0 0 1 0 1 0\n0 1 1 0 1 0\n1 0 1 0 1 0\n2 1 1 0 1 0\n"), IoError);
  CHECK_THROWS_AS(parse(head + "0 0 1 0 1 0\n0 1 1 0 1 0\n1 0 1 0 1 0\n1 1 1 x 1 0\n"), IoError);
  CHECK_THROWS_AS(parse(head + "0 0 1 0 1 0\n0 1 1 0 1 0\n1 0 1 0 1 0\n1 1 1 0 1\n"), IoError);
  CHECK_THROWS_AS(io::load_near_field("/nonexistent/file.txt"), IoError);
}

TEST_CASE("grid writers") {
  IndicatorGrid g{GridSpec{0, 1, 0, 2, 2, 3}, {0.0, 0.25, 0.5, 0.75, 1.0, 0.1}};
  std::ostringstream csv;
  io::write_grid_csv(csv, g);
  CHECK(csv.str() == "x,y,value\n0,0,0\n1,0,0.25\n0,1,0.5\n1,1,0.75\n0,2,1\n1,2,0.10000000000000001\n");

  std::ostringstream pgm;
  io::write_grid_pgm(pgm, g);
  const std::string bytes = pgm.str();
  const std::string header = "P5\n2 3\n255\n";
  REQUIRE(bytes.size() == header.size() + 6);
  CHECK(bytes.substr(0, header.size()) == header);
  const auto px = [&](std::size_t i) { return static_cast<unsigned char>(bytes[header.size() + i]); };
  CHECK(px(0) == 255);  // top row is y = ymax
  CHECK(px(1) == 26);
  CHECK(px(4) == 0);
  CHECK(px(5) == 64);

  const auto path = scratch("grid.csv");
  io::save_grid_csv(path.string(), g);
  CHECK(slurp(path.string()) == csv.str());
}

TEST_CASE("metadata") {
  io::Metadata m;
  m["shape"] = "kite";
  m["alpha"] = 1e-4;
  m["nx"] = 200;
  const auto path = scratch("meta.json");
  io::save_metadata(path.string(), m);
  const io::Metadata back = io::load_metadata(path.string());
  CHECK(back == m);
  CHECK(back.begin().key() == "shape");
  std::ofstream(scratch("bad.json")) << "{ not json";
  CHECK_THROWS_AS(io::load_metadata(scratch("bad.json").string()), IoError);
}

TEST_CASE("reconstruction is deterministic") {
  const NearFieldSet d = small_data();
  ReconstructionOptions o;
  o.grid = GridSpec{-2, 2, -2, 2, 25, 25};
  std::ostringstream a, b;
  io::write_grid_csv(a, reconstruct(d, o).grid);
  io::write_grid_csv(b, reconstruct(d, o).grid);
  CHECK(a.str() == b.str());
}
