#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qws/io.hpp"
#include "qws/manifest.hpp"

using namespace qws;

namespace {
std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}
}  // namespace

TEST_CASE("g17 formatting round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1.25e-17, 0.0,
                   3.14159265358979323846}) {
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("CSV writers are deterministic byte for byte") {
  Eigen::MatrixXcd m(2, 2);
  m << std::complex<double>(1.5, -0.25), std::complex<double>(0, 1),
      std::complex<double>(-2, 0), std::complex<double>(0.1, 0.2);

  const std::string p1 = temp_path("qws_m1.csv");
  const std::string p2 = temp_path("qws_m2.csv");
  write_matrix_csv(p1, m);
  write_matrix_csv(p2, m);
  CHECK(sha256_file(p1) == sha256_file(p2));

  const std::string text = slurp(p1);
  CHECK(text.rfind("row,col,re,im\n", 0) == 0);
  CHECK(text.find("1,1,1.5,-0.25\n") != std::string::npos);
  CHECK(text.find("2,2,0.10000000000000001,0.20000000000000001\n") !=
        std::string::npos);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("column CSV aligns headers and data") {
  const std::string p = temp_path("qws_cols.csv");
  write_columns_csv(p, {"nu", "f"}, {{1.0, 2.0}, {4.0, 16.0}});
  const std::string text = slurp(p);
  CHECK(text == "nu,f\n1,4\n2,16\n");
  std::remove(p.c_str());

  CHECK_THROWS(write_columns_csv(p, {"a"}, {{1.0}, {2.0}}));
}

TEST_CASE("known SHA-256 vectors") {
  const std::string p = temp_path("qws_hash.bin");
  {
    std::ofstream out(p, std::ios::binary);
  }
  CHECK(sha256_file(p) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  {
    std::ofstream out(p, std::ios::binary);
    out << "abc";
  }
  CHECK(sha256_file(p) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::remove(p.c_str());
}

TEST_CASE("manifest records artifacts with hashes") {
  const std::string art = temp_path("qws_artifact.csv");
  write_vector_csv(art, Eigen::Vector3d(1, 2, 3), "value");

  RunManifest man;
  man.command = "demo";
  man.arguments = {"--nu", "3"};
  man.out_dir = std::filesystem::temp_directory_path().string();
  man.seed = 42;
  man.tolerances["unitarity"] = 1e-12;
  man.add_artifact(art);

  const std::string mp = temp_path("qws_manifest.json");
  man.write(mp);
  const std::string text = slurp(mp);
  CHECK(text.find("\"version\": \"0.1.0\"") != std::string::npos);
  CHECK(text.find("\"qws_artifact.csv\"") != std::string::npos);
  CHECK(text.find(sha256_file(art)) != std::string::npos);
  std::remove(art.c_str());
  std::remove(mp.c_str());
}

TEST_CASE("grid CSV and the image writer") {
  Eigen::MatrixXd grid(2, 3);
  grid << 0.0, 0.5, 1.0, 2.0, 0.25, 0.125;
  const std::string p = temp_path("qws_grid.csv");
  write_grid_csv(p, grid);
  CHECK(slurp(p) == "0,0.5,1\n2,0.25,0.125\n");
  std::remove(p.c_str());

  const std::string png = temp_path("qws_grid.png");
  if (png_supported()) {
    write_grayscale_png(png, grid);
    const std::string bytes = slurp(png);
    REQUIRE(bytes.size() > 8);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0x89);
    CHECK(bytes.substr(1, 3) == "PNG");
    std::remove(png.c_str());
  } else {
    CHECK_THROWS(write_grayscale_png(png, grid));
  }
}
