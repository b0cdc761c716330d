#include "histo/dataset.hpp"

#include "histo/rng.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace histo {

std::string_view class_name(ClassLabel label) {
    switch (label) {
        case ClassLabel::Normal: return "Normal";
        case ClassLabel::Benign: return "Benign";
        case ClassLabel::InSitu: return "InSitu";
        case ClassLabel::Invasive: return "Invasive";
    }
    throw std::logic_error("class_name: invalid label");
}

ClassLabel parse_class_label(std::string_view text) {
    std::string key;
    for (char c : text) {
        if (c == ' ' || c == '-' || c == '_') continue;
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (key == "normal") return ClassLabel::Normal;
    if (key == "benign") return ClassLabel::Benign;
    if (key == "insitu") return ClassLabel::InSitu;
    if (key == "invasive") return ClassLabel::Invasive;
    throw std::runtime_error("unknown label \"" + std::string(text) + "\"");
}

std::string_view split_name(Split s) {
    switch (s) {
        case Split::Unassigned: return "unassigned";
        case Split::Train: return "train";
        case Split::Test: return "test";
    }
    throw std::logic_error("split_name: invalid split");
}

Split parse_split(std::string_view text) {
    std::string key;
    for (char c : text) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key.empty() || key == "unassigned") return Split::Unassigned;
    if (key == "train") return Split::Train;
    if (key == "test") return Split::Test;
    throw std::runtime_error("unknown split \"" + std::string(text) + "\"");
}

std::filesystem::path DatasetManifest::resolve(const ManifestEntry& e) const {
    std::filesystem::path p(e.path);
    if (p.is_absolute()) return p;
    return root / p;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_manifest: cannot open " + path.string());

    DatasetManifest m;
    m.root = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    m.provenance = path.string();

    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("load_manifest: empty file " + path.string());
    if (strip_cr(line) != "id,path,label,split")
        throw std::runtime_error("load_manifest: bad header in " + path.string() +
                                 " (expected id,path,label,split)");

    std::set<std::string> seen_ids;
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (fields.size() != 4)
            throw std::runtime_error("load_manifest: malformed row at " + where + " (expected 4 fields, got " +
                                     std::to_string(fields.size()) + ")");
        ManifestEntry e;
        e.id = fields[0];
        e.path = fields[1];
        if (e.id.empty()) throw std::runtime_error("load_manifest: empty id at " + where);
        if (e.path.empty()) throw std::runtime_error("load_manifest: empty path at " + where);
        try {
            e.label = parse_class_label(fields[2]);
            e.split = parse_split(fields[3]);
        } catch (const std::runtime_error& err) {
            throw std::runtime_error("load_manifest: " + std::string(err.what()) + " at " + where);
        }
        if (!seen_ids.insert(e.id).second)
            throw std::runtime_error("load_manifest: duplicate id \"" + e.id + "\" at " + where);
        m.entries.push_back(std::move(e));
    }
    return m;
}

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("save_manifest: cannot open " + path.string());
    f << "id,path,label,split\n";
    for (const ManifestEntry& e : m.entries) {
        f << e.id << ',' << e.path << ',' << class_name(e.label) << ',' << split_name(e.split)
          << '\n';
    }
    if (!f) throw std::runtime_error("save_manifest: write failed on " + path.string());
}

DatasetManifest split_dataset(const DatasetManifest& m, int train_per_class, std::uint64_t seed) {
    if (train_per_class < 0) throw std::invalid_argument("split_dataset: train_per_class must be >= 0");

    std::array<std::vector<std::string>, kNumClasses> ids_by_class;
    for (const ManifestEntry& e : m.entries) ids_by_class[static_cast<int>(e.label)].push_back(e.id);

    std::map<std::string, Split> assignment;
    for (int c = 0; c < kNumClasses; ++c) {
        auto& ids = ids_by_class[c];
        if (static_cast<int>(ids.size()) < train_per_class)
            throw std::runtime_error("split_dataset: class " +
                                     std::string(class_name(static_cast<ClassLabel>(c))) + " has " +
                                     std::to_string(ids.size()) + " entries, need " +
                                     std::to_string(train_per_class));
        std::sort(ids.begin(), ids.end());
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        shuffle(ids, rng);
        for (std::size_t i = 0; i < ids.size(); ++i)
            assignment[ids[i]] = static_cast<int>(i) < train_per_class ? Split::Train : Split::Test;
    }

    DatasetManifest out = m;
    for (ManifestEntry& e : out.entries) e.split = assignment.at(e.id);
    return out;
}

ClassCounts class_counts(const DatasetManifest& m) {
    ClassCounts cc;
    for (const ManifestEntry& e : m.entries) {
        ++cc.counts[static_cast<int>(e.split)][static_cast<int>(e.label)];
        ++cc.total;
    }
    return cc;
}

}  // namespace histo
