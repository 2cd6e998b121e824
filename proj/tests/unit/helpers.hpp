#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "modshift/embedding.hpp"

namespace testing {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("modshift_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline fs::path write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline fs::path source_dir() { return MODSHIFT_SOURCE_DIR; }
inline fs::path test_data() { return source_dir() / "tests" / "data"; }
inline fs::path fixture_dir() { return source_dir() / "data" / "fixture"; }

inline modshift::EmbeddingSpace random_space(std::mt19937_64& rng, std::size_t words, std::size_t dim,
                                             const std::string& prefix = "w") {
  std::normal_distribution<double> normal;
  std::vector<std::string> vocab;
  std::vector<double> values;
  for (std::size_t i = 0; i < words; ++i) {
    vocab.push_back(prefix + std::to_string(i));
    for (std::size_t d = 0; d < dim; ++d) values.push_back(normal(rng));
  }
  return {{}, dim, std::move(vocab), std::move(values)};
}

}  // namespace testing
