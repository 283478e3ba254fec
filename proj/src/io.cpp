#include "goldsplit/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "goldsplit/problems.hpp"

namespace goldsplit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(std::endian::native == std::endian::little, "payload files assume a little-endian host");

double parse_double(std::string_view token, long line_no, const char* what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw ParseError(std::string("non-numeric ") + what + " '" + std::string(token) + "'", line_no);
  }
  return value;
}

long long parse_index(std::string_view token, long line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError("bad feature index '" + std::string(token) + "'", line_no);
  }
  if (value < 1) throw ParseError("feature indices are 1-based", line_no);
  return value;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("failed to format a value");
  out.append(buf, ptr);
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void write_binary_ints(const fs::path& path, const std::vector<std::int64_t>& values) {
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(std::int64_t)));
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<std::int64_t> read_binary_ints(const fs::path& path) {
  auto in = open_in(path);
  const auto size = fs::file_size(path);
  if (size % sizeof(std::int64_t) != 0) throw DataError(path.string() + ": size is not a multiple of 8");
  std::vector<std::int64_t> values(size / sizeof(std::int64_t));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(size));
  if (!in) throw DataError("failed reading " + path.string());
  return values;
}

// Skips whitespace and comment lines between PGM header tokens.
std::string pgm_token(std::istream& in) {
  std::string token;
  while (true) {
    const int c = in.peek();
    if (c == EOF) break;
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      in.get();
      continue;
    }
    token.push_back(static_cast<char>(in.get()));
  }
  return token;
}

}  // namespace

LibsvmData parse_libsvm(std::istream& in, std::optional<Index> n_cols) {
  std::vector<Triplet> triplets;
  std::vector<double> raw_labels;
  Index max_col = 0;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    const double label = parse_double(token, line_no, "label");
    const auto row = static_cast<Index>(raw_labels.size());
    raw_labels.push_back(label);
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) throw ParseError("expected idx:val, got '" + token + "'", line_no);
      std::string_view view(token);
      const auto idx = parse_index(view.substr(0, colon), line_no);
      const double value = parse_double(view.substr(colon + 1), line_no, "value");
      const auto col = static_cast<Index>(idx - 1);
      max_col = std::max(max_col, col + 1);
      triplets.push_back({row, col, value});
    }
  }
  const Index cols = n_cols.value_or(max_col);
  if (cols < max_col) throw DataError("libsvm: feature index exceeds the requested column count");

  std::set<double> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() > 2) throw DataError("libsvm: more than two distinct labels");
  Vector labels(static_cast<Index>(raw_labels.size()));
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    const double v = raw_labels[i];
    double mapped;
    if (distinct.size() == 2) {
      mapped = v == *distinct.begin() ? -1.0 : 1.0;
    } else {
      mapped = v > 0.0 ? 1.0 : -1.0;
    }
    labels(static_cast<Index>(i)) = mapped;
  }
  LibsvmData out;
  out.A = sparse_from_triplets(static_cast<Index>(raw_labels.size()), cols, triplets);
  out.labels = std::move(labels);
  return out;
}

LibsvmData parse_libsvm_file(const fs::path& path, std::optional<Index> n_cols) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_libsvm(in, n_cols);
}

void write_libsvm(std::ostream& out, const SparseMatrix& A, const Vector& labels) {
  if (A.rows() != labels.size()) throw DimensionError("write_libsvm: labels do not match the rows");
  std::string line;
  for (Index i = 0; i < A.rows(); ++i) {
    line.clear();
    const double label = labels(i);
    if (label == 1.0) {
      line += "+1";
    } else if (label == -1.0) {
      line += "-1";
    } else {
      append_double(line, label);
    }
    for (SparseMatrix::InnerIterator it(A, i); it; ++it) {
      line += ' ';
      line += std::to_string(it.col() + 1);
      line += ':';
      append_double(line, it.value());
    }
    out << line << '\n';
  }
}

Matrix read_pgm(std::istream& in) {
  if (pgm_token(in) != "P5") throw ParseError("not a binary PGM (P5) image", 1);
  auto number = [&](const char* what) {
    const std::string tok = pgm_token(in);
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value <= 0) {
      throw ParseError(std::string("bad PGM ") + what, 1);
    }
    return value;
  };
  const long cols = number("width");
  const long rows = number("height");
  const long maxval = number("maxval");
  if (maxval > 255) throw ParseError("only 8-bit PGM images are supported", 1);
  in.get();  // single whitespace after the header
  std::vector<unsigned char> bytes(static_cast<std::size_t>(rows * cols));
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw ParseError("truncated PGM pixel data", 1);
  Matrix img(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      img(i, j) = static_cast<double>(bytes[static_cast<std::size_t>(i * cols + j)]) / static_cast<double>(maxval);
    }
  }
  return img;
}

Matrix read_pgm_file(const fs::path& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const Matrix& image) {
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  std::vector<unsigned char> bytes(static_cast<std::size_t>(image.size()));
  for (Index i = 0; i < image.rows(); ++i) {
    for (Index j = 0; j < image.cols(); ++j) {
      const double v = std::clamp(image(i, j), 0.0, 1.0);
      bytes[static_cast<std::size_t>(i * image.cols() + j)] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_pgm_file(const fs::path& path, const Matrix& image) {
  auto out = open_out(path);
  write_pgm(out, image);
}

void write_binary_doubles(const fs::path& path, const double* values, std::size_t count) {
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(values), static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<double> read_binary_doubles(const fs::path& path) {
  auto in = open_in(path);
  const auto size = fs::file_size(path);
  if (size % sizeof(double) != 0) throw DataError(path.string() + ": size is not a multiple of 8");
  std::vector<double> values(size / sizeof(double));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(size));
  if (!in) throw DataError("failed reading " + path.string());
  return values;
}

json spec_to_json(const GenSpec& s) {
  json j;
  j["family"] = to_string(s.family);
  j["seed"] = s.seed;
  switch (s.family) {
    case Family::lasso:
      j["m"] = s.m;
      j["n"] = s.n;
      j["s"] = s.s;
      j["scheme"] = to_string(s.scheme);
      j["q"] = s.q;
      j["lambda"] = s.lambda;
      break;
    case Family::fused_lasso:
      j["m"] = s.m;
      j["n"] = s.n;
      j["lambda1"] = s.lambda1;
      j["lambda2"] = s.lambda2;
      break;
    case Family::logistic1:
    case Family::logistic2:
      j["m"] = s.m;
      j["n"] = s.n;
      j["density"] = s.density;
      j["libsvm_path"] = s.libsvm_path;
      j["lambda1"] = s.lambda1;
      j["lambda2"] = s.lambda2;
      if (s.logistic_lambda) j["lambda"] = *s.logistic_lambda;
      break;
    case Family::graphnet:
      j["n1"] = s.n1;
      j["n2"] = s.n2;
      j["m"] = s.m;
      j["alpha"] = s.alpha;
      j["sparsity_fraction"] = s.sparsity_fraction;
      j["lambda1"] = s.lambda1;
      j["lambda2"] = s.lambda2;
      break;
    case Family::inpainting:
      j["missing_fraction"] = s.missing_fraction;
      j["lambda"] = s.lambda;
      j["image_path"] = s.image_path;
      j["image_rows"] = s.image_rows;
      j["image_cols"] = s.image_cols;
      break;
    case Family::strongly_convex:
      j["m"] = s.m;
      j["n"] = s.n;
      j["ridge_eps"] = s.ridge_eps;
      j["lambda"] = s.lambda;
      break;
  }
  if (s.noise_sd >= 0.0) j["noise_sd"] = s.noise_sd;
  return j;
}

GenSpec spec_from_json(const json& j) {
  GenSpec s;
  if (!j.is_object()) throw ParameterError("problem settings must be a JSON object");
  if (j.contains("family")) s.family = parse_family(j.at("family").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "family") continue;
      if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "m") s.m = value.get<Index>();
      else if (key == "n") s.n = value.get<Index>();
      else if (key == "s") s.s = value.get<Index>();
      else if (key == "scheme") s.scheme = parse_lasso_scheme(value.get<std::string>());
      else if (key == "q") s.q = value.get<double>();
      else if (key == "lambda") {
        s.lambda = value.get<double>();
        if (s.family == Family::logistic1 || s.family == Family::logistic2) s.logistic_lambda = s.lambda;
      } else if (key == "lambda1") s.lambda1 = value.get<double>();
      else if (key == "lambda2") s.lambda2 = value.get<double>();
      else if (key == "n1") s.n1 = value.get<Index>();
      else if (key == "n2") s.n2 = value.get<Index>();
      else if (key == "alpha") s.alpha = value.get<double>();
      else if (key == "sparsity_fraction") s.sparsity_fraction = value.get<double>();
      else if (key == "noise_sd") s.noise_sd = value.get<double>();
      else if (key == "missing_fraction") s.missing_fraction = value.get<double>();
      else if (key == "image_path") s.image_path = value.get<std::string>();
      else if (key == "image_rows") s.image_rows = value.get<Index>();
      else if (key == "image_cols") s.image_cols = value.get<Index>();
      else if (key == "libsvm_path") s.libsvm_path = value.get<std::string>();
      else if (key == "density") s.density = value.get<double>();
      else if (key == "ridge_eps") s.ridge_eps = value.get<double>();
      else throw ParameterError("unknown problem settings key '" + key + "'");
    } catch (const json::exception& e) {
      throw ParameterError("problem settings key '" + key + "': " + e.what());
    }
  }
  return s;
}

fs::path write_instance(const fs::path& dir, const InstanceData& data) {
  fs::create_directories(dir);
  json manifest;
  manifest["format"] = "goldsplit-instance";
  manifest["version"] = 1;
  manifest["spec"] = spec_to_json(data.spec);
  manifest["notes"] = data.notes;
  json scalars = json::object();
  for (const auto& [k, v] : data.scalars) scalars[k] = v;
  manifest["scalars"] = scalars;
  if (data.F_star) {
    manifest["F_star"] = {{"value", data.F_star->value}, {"provenance", data.F_star->provenance}};
  }

  json payloads = json::array();
  for (const auto& [name, M] : data.dense) {
    // Eigen stores column-major; the files are row-major.
    const RowMatrix rm = M;
    const std::string file = name + ".bin";
    write_binary_doubles(dir / file, rm.data(), static_cast<std::size_t>(rm.size()));
    payloads.push_back({{"name", name}, {"kind", "dense"}, {"rows", M.rows()}, {"cols", M.cols()}, {"file", file}});
  }
  for (const auto& [name, S] : data.sparse) {
    SparseMatrix c = S;
    c.makeCompressed();
    std::vector<std::int64_t> indptr(c.outerIndexPtr(), c.outerIndexPtr() + c.rows() + 1);
    std::vector<std::int64_t> indices(c.innerIndexPtr(), c.innerIndexPtr() + c.nonZeros());
    write_binary_ints(dir / (name + ".indptr.bin"), indptr);
    write_binary_ints(dir / (name + ".indices.bin"), indices);
    write_binary_doubles(dir / (name + ".data.bin"), c.valuePtr(), static_cast<std::size_t>(c.nonZeros()));
    payloads.push_back({{"name", name},
                        {"kind", "csr"},
                        {"rows", c.rows()},
                        {"cols", c.cols()},
                        {"nnz", c.nonZeros()},
                        {"indptr", name + ".indptr.bin"},
                        {"indices", name + ".indices.bin"},
                        {"data", name + ".data.bin"}});
  }
  for (const auto& [name, v] : data.vectors) {
    const std::string file = name + ".bin";
    write_binary_doubles(dir / file, v.data(), static_cast<std::size_t>(v.size()));
    payloads.push_back({{"name", name}, {"kind", "vector"}, {"size", v.size()}, {"file", file}});
  }
  manifest["payloads"] = payloads;

  const fs::path path = dir / "manifest.json";
  auto out = open_out(path);
  out << manifest.dump(2) << '\n';
  return path;
}

InstanceData read_instance(const fs::path& manifest_or_dir) {
  const fs::path path = fs::is_directory(manifest_or_dir) ? manifest_or_dir / "manifest.json" : manifest_or_dir;
  const fs::path dir = path.parent_path();
  json manifest;
  try {
    auto in = open_in(path);
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (manifest.value("format", "") != "goldsplit-instance") throw DataError(path.string() + ": not an instance manifest");

  InstanceData data;
  try {
    data.spec = spec_from_json(manifest.at("spec"));
    if (manifest.contains("notes")) data.notes = manifest.at("notes").get<std::vector<std::string>>();
    if (manifest.contains("scalars")) {
      for (const auto& [k, v] : manifest.at("scalars").items()) data.scalars[k] = v.get<double>();
    }
    if (manifest.contains("F_star")) {
      const auto& fs_json = manifest.at("F_star");
      data.F_star = ReferenceValue{fs_json.at("value").get<double>(), fs_json.at("provenance").get<std::string>()};
    }
    for (const auto& p : manifest.at("payloads")) {
      const auto name = p.at("name").get<std::string>();
      const auto kind = p.at("kind").get<std::string>();
      if (kind == "dense") {
        const auto rows = p.at("rows").get<Index>(), cols = p.at("cols").get<Index>();
        auto values = read_binary_doubles(dir / p.at("file").get<std::string>());
        if (static_cast<Index>(values.size()) != rows * cols) throw DataError(name + ": payload size mismatch");
        data.dense[name] = Eigen::Map<const RowMatrix>(values.data(), rows, cols);
      } else if (kind == "csr") {
        const auto rows = p.at("rows").get<Index>(), cols = p.at("cols").get<Index>();
        const auto indptr = read_binary_ints(dir / p.at("indptr").get<std::string>());
        const auto indices = read_binary_ints(dir / p.at("indices").get<std::string>());
        const auto values = read_binary_doubles(dir / p.at("data").get<std::string>());
        if (static_cast<Index>(indptr.size()) != rows + 1 || indices.size() != values.size() ||
            indptr.back() != static_cast<std::int64_t>(values.size())) {
          throw DataError(name + ": inconsistent CSR payload");
        }
        std::vector<Triplet> triplets;
        triplets.reserve(values.size());
        for (Index r = 0; r < rows; ++r) {
          for (auto k = indptr[static_cast<std::size_t>(r)]; k < indptr[static_cast<std::size_t>(r) + 1]; ++k) {
            triplets.push_back({r, static_cast<Index>(indices[static_cast<std::size_t>(k)]),
                                values[static_cast<std::size_t>(k)]});
          }
        }
        data.sparse[name] = sparse_from_triplets(rows, cols, triplets);
      } else if (kind == "vector") {
        auto values = read_binary_doubles(dir / p.at("file").get<std::string>());
        if (static_cast<Index>(values.size()) != p.at("size").get<Index>()) {
          throw DataError(name + ": payload size mismatch");
        }
        data.vectors[name] = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
      } else {
        throw DataError(name + ": unknown payload kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return data;
}

}  // namespace goldsplit
