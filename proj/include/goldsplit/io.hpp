#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "goldsplit/linops.hpp"
#include "json.hpp"

namespace goldsplit {

struct GenSpec;
struct InstanceData;

struct LibsvmData {
  SparseMatrix A;
  Vector labels;  // in {-1, +1}
};

/// `label idx:val idx:val ...` per line with 1-based indices. Two distinct
/// labels map to -1 (smaller) and +1 (larger); a single label maps to +1 when
/// positive and -1 otherwise. Blank lines and `#` comments are skipped.
/// The column count is the largest index seen unless `n_cols` is given.
LibsvmData parse_libsvm(std::istream& in, std::optional<Index> n_cols = std::nullopt);
LibsvmData parse_libsvm_file(const std::filesystem::path& path, std::optional<Index> n_cols = std::nullopt);

/// Writes every stored entry, labels as +1/-1 when they are +-1.
void write_libsvm(std::ostream& out, const SparseMatrix& A, const Vector& labels);

/// 8-bit binary PGM (P5); pixel values are scaled to [0, 1].
Matrix read_pgm(std::istream& in);
Matrix read_pgm_file(const std::filesystem::path& path);
/// Values are clamped to [0, 1] and rounded to 8 bits.
void write_pgm(std::ostream& out, const Matrix& image);
void write_pgm_file(const std::filesystem::path& path, const Matrix& image);

/// Writes `manifest.json` and one little-endian float64 `.bin` payload per
/// array into `dir` (created if needed). Dense arrays are row-major; CSR arrays
/// use `<name>.indptr.bin`, `<name>.indices.bin` (int64) and `<name>.data.bin`.
/// Returns the manifest path.
std::filesystem::path write_instance(const std::filesystem::path& dir, const InstanceData& data);
/// Accepts the manifest file or its directory.
InstanceData read_instance(const std::filesystem::path& manifest_or_dir);

nlohmann::json spec_to_json(const GenSpec& spec);
/// Missing keys keep their defaults; unknown keys are rejected.
GenSpec spec_from_json(const nlohmann::json& j);

void write_binary_doubles(const std::filesystem::path& path, const double* values, std::size_t count);
std::vector<double> read_binary_doubles(const std::filesystem::path& path);

}  // namespace goldsplit
