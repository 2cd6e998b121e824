#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

namespace modshift {

/// Column layout of one norms TSV. Indices are zero-based. A first line
/// whose value columns do not parse as numbers is treated as a header.
struct NormsColumns {
  std::size_t word = 0;
  std::size_t value = 1;
};

struct VadColumns {
  std::size_t word = 0;
  std::size_t valence = 1;
  std::size_t arousal = 2;
  std::size_t dominance = 3;
};

struct NormsLoadReport {
  std::size_t concreteness_rows = 0;
  std::size_t vad_rows = 0;
  std::size_t frequency_rows = 0;
  std::size_t rejected_out_of_range = 0;
  std::size_t rejected_malformed = 0;
  std::size_t duplicates_ignored = 0;
};

/// Per-word human norms: concreteness on [1, 5], VAD on [0, 1], and a raw
/// corpus frequency count.
struct WordNorms {
  std::unordered_map<std::string, double> concreteness;
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> arousal;
  std::unordered_map<std::string, double> dominance;
  std::unordered_map<std::string, double> frequency;
  NormsLoadReport report;

  static std::optional<double> lookup(const std::unordered_map<std::string, double>& m,
                                      const std::string& word);

  /// True iff concreteness, all three VAD scores and a frequency are known.
  bool complete(const std::string& word) const;
};

struct NormsPaths {
  std::filesystem::path concreteness;
  std::filesystem::path vad;
  std::filesystem::path frequency;
  NormsColumns concreteness_columns{0, 1};
  VadColumns vad_columns{};
  NormsColumns frequency_columns{0, 1};
};

/// Throws DataError for unreadable files or a file with zero usable rows.
/// Out-of-range and malformed rows are skipped and counted in the report;
/// the first occurrence of a repeated word wins.
WordNorms load_norms(const NormsPaths& paths);

}  // namespace modshift
