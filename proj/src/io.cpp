#include "qws/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "qws/errors.hpp"

#ifdef QWS_HAVE_PNG
#include <png.h>
#endif

namespace qws {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ToleranceError("io: cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw ToleranceError("io: short write to " + path);
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream out = open_out(path);
  out << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (r + 1) << ',' << (c + 1) << ',' << format_g17(m(r, c).real())
          << ',' << format_g17(m(r, c).imag()) << '\n';
  finish(out, path);
}

void write_real_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_out(path);
  out << "row,col,value\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (r + 1) << ',' << (c + 1) << ',' << format_g17(m(r, c)) << '\n';
  finish(out, path);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header) {
  std::ofstream out = open_out(path);
  out << "index," << header << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << (i + 1) << ',' << format_g17(v(i)) << '\n';
  finish(out, path);
}

void write_columns_csv(const std::string& path,
                       const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns) {
  if (headers.empty() || headers.size() != columns.size())
    throw ToleranceError("io: column/header count mismatch");
  const size_t rows = columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw ToleranceError("io: ragged columns");

  std::ofstream out = open_out(path);
  for (size_t i = 0; i < headers.size(); ++i)
    out << headers[i] << (i + 1 < headers.size() ? ',' : '\n');
  for (size_t r = 0; r < rows; ++r)
    for (size_t i = 0; i < columns.size(); ++i)
      out << format_g17(columns[i][r]) << (i + 1 < columns.size() ? ',' : '\n');
  finish(out, path);
}

void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid) {
  std::ofstream out = open_out(path);
  for (Eigen::Index j = 0; j < grid.rows(); ++j) {
    for (Eigen::Index i = 0; i < grid.cols(); ++i)
      out << format_g17(grid(j, i)) << (i + 1 < grid.cols() ? ',' : '\n');
  }
  finish(out, path);
}

bool png_supported() {
#ifdef QWS_HAVE_PNG
  return true;
#else
  return false;
#endif
}

#ifdef QWS_HAVE_PNG
void write_grayscale_png(const std::string& path, const Eigen::MatrixXd& grid) {
  const int w = static_cast<int>(grid.cols());
  const int h = static_cast<int>(grid.rows());
  if (w < 1 || h < 1) throw ToleranceError("io: empty image grid");
  const double peak = grid.maxCoeff();
  const double scale = peak > 0 ? 255.0 / peak : 0.0;

  std::vector<unsigned char> pixels(static_cast<size_t>(w) * h);
  std::vector<png_bytep> row_ptrs(h);
  for (int j = 0; j < h; ++j) {
    // image row 0 is the top: flip so larger y is higher in the picture
    unsigned char* row = pixels.data() + static_cast<size_t>(j) * w;
    for (int i = 0; i < w; ++i) {
      const double v = std::max(0.0, grid(h - 1 - j, i)) * scale;
      row[i] = static_cast<unsigned char>(v > 255.0 ? 255.0 : v + 0.5);
    }
    row_ptrs[j] = row;
  }

  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw ToleranceError("io: cannot open " + path + " for writing");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw ToleranceError("io: png encoding failed for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}
#else
void write_grayscale_png(const std::string& path, const Eigen::MatrixXd&) {
  throw ToleranceError("io: PNG support not compiled in (wanted " + path + ")");
}
#endif

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ToleranceError("io: cannot open " + path + " for hashing");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw ToleranceError("io: digest init failed");

  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    if (got > 0 &&
        EVP_DigestUpdate(ctx.get(), buf, static_cast<size_t>(got)) != 1)
      throw ToleranceError("io: digest update failed");
  }

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw ToleranceError("io: digest final failed");

  static const char* hex = "0123456789abcdef";
  std::string out(2 * len, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace qws
