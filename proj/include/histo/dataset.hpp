#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace histo {

/// The four BACH tissue classes, ordinal 0..3 in this order.
enum class ClassLabel : int { Normal = 0, Benign = 1, InSitu = 2, Invasive = 3 };

inline constexpr int kNumClasses = 4;

std::string_view class_name(ClassLabel label);

/// Case-insensitive parse; spaces and hyphens are stripped, so "in situ",
/// "In-Situ" and "insitu" all map to InSitu. Throws on unknown strings.
ClassLabel parse_class_label(std::string_view text);

enum class Split : int { Unassigned = 0, Train = 1, Test = 2 };

std::string_view split_name(Split s);
Split parse_split(std::string_view text);

struct ManifestEntry {
    std::string id;
    std::string path;  // as written in the CSV; relative paths resolve against root
    ClassLabel label = ClassLabel::Normal;
    Split split = Split::Unassigned;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;  // order preserved by every operation
    std::string provenance;
    std::filesystem::path root;  // directory the manifest was loaded from

    /// Absolute path of an entry, resolving relative paths against root.
    std::filesystem::path resolve(const ManifestEntry& e) const;
};

/// Reads a manifest CSV with header `id,path,label,split`. UTF-8, LF or CRLF.
/// Errors carry the offending line number.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Writes the manifest CSV; entry paths are emitted verbatim.
void save_manifest(const DatasetManifest& m, const std::filesystem::path& path);

/// Per class: sort entry ids lexicographically, shuffle with a seeded
/// Fisher-Yates (splitmix64 keyed on seed and class ordinal), mark the first
/// train_per_class entries train and the rest test. Entry order is preserved;
/// only split fields change.
DatasetManifest split_dataset(const DatasetManifest& m, int train_per_class, std::uint64_t seed);

struct ClassCounts {
    // [split][class], splits indexed by the Split enum
    std::array<std::array<std::int64_t, kNumClasses>, 3> counts{};
    std::int64_t total = 0;

    std::int64_t at(Split s, ClassLabel c) const {
        return counts[static_cast<int>(s)][static_cast<int>(c)];
    }
};

ClassCounts class_counts(const DatasetManifest& m);

}  // namespace histo
