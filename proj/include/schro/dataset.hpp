#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "schro/image.hpp"

namespace schro {

struct DatasetEntry {
  std::filesystem::path path;
  std::string label;
};

// Labelled image listing built from a <root>/<class_name>/<files> layout;
// the class label is the directory name.
struct DatasetIndex {
  std::vector<DatasetEntry> entries;  // sorted by (label, filename)
  std::vector<std::string> classes;   // sorted distinct labels
};

// Scans root for class subdirectories containing .png/.pgm files. An empty
// result is not an error here; callers decide.
DatasetIndex scan_dataset(const std::filesystem::path& root);

// Writes/reads the index as `path,label` CSV rows.
void write_index_csv(const std::filesystem::path& path, const DatasetIndex& index);

// Non-overlapping tile x tile crops in row-major order; remainder pixels are
// discarded. An image smaller than the tile yields an empty sequence.
std::vector<GreyImage> tile_image(const GreyImage& image, Eigen::Index tile);

// In-memory synthetic dataset: four texture families (grating, checkerboard,
// filtered noise, step edges) cycled over classes with per-class parameter
// jitter; fully determined by the seed.
struct SynthDataset {
  std::vector<std::string> class_names;  // size = classes
  std::vector<GreyImage> images;         // classes * per_class, class-major
  std::vector<int> labels;               // index into class_names
};

SynthDataset synth_texture_dataset(int classes, int per_class, Eigen::Index size,
                                   std::uint64_t seed);

// Writes a SynthDataset to disk as <root>/<class_name>/img_NNN.pgm plus
// <root>/index.csv, returning the index.
DatasetIndex write_synth_dataset(const std::filesystem::path& root,
                                 const SynthDataset& dataset);

}  // namespace schro
