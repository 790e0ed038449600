#include "schro/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "schro/rng.hpp"

namespace schro {
namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".pgm";
}

std::uint8_t quantize(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

GreyImage make_grating(Eigen::Index size, double frequency, double theta, double phase,
                       double amplitude, Rng& rng) {
  GreyImage img(size, size);
  const double fx = frequency * std::cos(theta) / static_cast<double>(size);
  const double fy = frequency * std::sin(theta) / static_cast<double>(size);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) {
      const double arg = 2.0 * std::numbers::pi *
                             (fx * static_cast<double>(x) + fy * static_cast<double>(y)) +
                         phase;
      const double v = 128.0 + amplitude * std::sin(arg) + rng.uniform(-6.0, 6.0);
      img.pixels(y, x) = quantize(v);
    }
  return img;
}

GreyImage make_checkerboard(Eigen::Index size, Eigen::Index cell, Eigen::Index ox,
                            Eigen::Index oy, double lo, double hi, Rng& rng) {
  GreyImage img(size, size);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) {
      const Eigen::Index cx = (x + ox) / cell;
      const Eigen::Index cy = (y + oy) / cell;
      const double base = ((cx + cy) % 2 == 0) ? lo : hi;
      img.pixels(y, x) = quantize(base + rng.uniform(-5.0, 5.0));
    }
  return img;
}

GreyImage make_filtered_noise(Eigen::Index size, int blur_radius, int passes, Rng& rng) {
  Eigen::ArrayXXd field(size, size);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) field(y, x) = rng.uniform(0.0, 255.0);

  // Separable box blur with edge clamping.
  const auto clamp_idx = [size](Eigen::Index i) {
    return i < 0 ? 0 : (i >= size ? size - 1 : i);
  };
  Eigen::ArrayXXd tmp(size, size);
  for (int pass = 0; pass < passes; ++pass) {
    for (Eigen::Index y = 0; y < size; ++y)
      for (Eigen::Index x = 0; x < size; ++x) {
        double acc = 0;
        for (int i = -blur_radius; i <= blur_radius; ++i)
          acc += field(y, clamp_idx(x + i));
        tmp(y, x) = acc / (2 * blur_radius + 1);
      }
    for (Eigen::Index y = 0; y < size; ++y)
      for (Eigen::Index x = 0; x < size; ++x) {
        double acc = 0;
        for (int i = -blur_radius; i <= blur_radius; ++i)
          acc += tmp(clamp_idx(y + i), x);
        field(y, x) = acc / (2 * blur_radius + 1);
      }
  }

  const double lo = field.minCoeff();
  const double hi = field.maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  GreyImage img(size, size);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x)
      img.pixels(y, x) = quantize((field(y, x) - lo) * scale);
  return img;
}

GreyImage make_steps(Eigen::Index size, Eigen::Index min_width, Eigen::Index max_width,
                     bool vertical, Rng& rng) {
  // Piecewise-constant stripes with random widths and levels; jump
  // magnitudes vary from stripe to stripe.
  std::vector<std::uint8_t> profile(static_cast<std::size_t>(size));
  Eigen::Index pos = 0;
  while (pos < size) {
    const Eigen::Index width =
        min_width + static_cast<Eigen::Index>(rng.below(
                        static_cast<std::uint64_t>(max_width - min_width + 1)));
    const std::uint8_t level =
        static_cast<std::uint8_t>(16 + rng.below(225));  // 16..240
    for (Eigen::Index i = 0; i < width && pos < size; ++i, ++pos)
      profile[static_cast<std::size_t>(pos)] = level;
  }
  GreyImage img(size, size);
  Rng jitter(rng.next_u64());
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) {
      const std::uint8_t base = profile[static_cast<std::size_t>(vertical ? x : y)];
      img.pixels(y, x) = quantize(static_cast<double>(base) + jitter.uniform(-4.0, 4.0));
    }
  return img;
}

}  // namespace

DatasetIndex scan_dataset(const fs::path& root) {
  DatasetIndex index;
  if (!fs::is_directory(root)) return index;

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());

  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && has_image_extension(entry.path()))
        files.push_back(entry.path());
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    index.classes.push_back(dir.filename().string());
    for (const auto& f : files) index.entries.push_back({f, dir.filename().string()});
  }
  return index;
}

void write_index_csv(const fs::path& path, const DatasetIndex& index) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  for (const auto& entry : index.entries)
    out << entry.path.string() << ',' << entry.label << '\n';
  if (!out) throw IoError(path.string() + ": short write");
}

std::vector<GreyImage> tile_image(const GreyImage& image, Eigen::Index tile) {
  if (tile < 1) throw std::invalid_argument("tile_image: tile must be >= 1");
  const Eigen::Index nx = image.width() / tile;
  const Eigen::Index ny = image.height() / tile;
  std::vector<GreyImage> tiles;
  tiles.reserve(static_cast<std::size_t>(nx * ny));
  for (Eigen::Index ty = 0; ty < ny; ++ty)
    for (Eigen::Index tx = 0; tx < nx; ++tx) {
      GreyImage t(tile, tile);
      t.pixels = image.pixels.block(ty * tile, tx * tile, tile, tile);
      tiles.push_back(std::move(t));
    }
  return tiles;
}

SynthDataset synth_texture_dataset(int classes, int per_class, Eigen::Index size,
                                   std::uint64_t seed) {
  if (classes < 2) throw std::invalid_argument("synth_texture_dataset: classes must be >= 2");
  if (per_class < 1)
    throw std::invalid_argument("synth_texture_dataset: per_class must be >= 1");
  if (size < 8) throw std::invalid_argument("synth_texture_dataset: size must be >= 8");

  static const char* kFamilies[4] = {"grating", "checker", "fnoise", "steps"};

  SynthDataset ds;
  ds.class_names.reserve(static_cast<std::size_t>(classes));
  ds.images.reserve(static_cast<std::size_t>(classes) * per_class);
  ds.labels.reserve(static_cast<std::size_t>(classes) * per_class);

  for (int c = 0; c < classes; ++c) {
    const int family = c % 4;
    const int variant = c / 4;
    char name[32];
    std::snprintf(name, sizeof(name), "c%02d_%s", c, kFamilies[family]);
    ds.class_names.emplace_back(name);

    const std::uint64_t class_seed =
        splitmix64(seed ^ (0x517CC1B727220A95ull * static_cast<std::uint64_t>(c + 1)));
    Rng class_rng(class_seed);

    // Per-class base parameters, jittered per image below.
    const double grating_freq = 3.0 + 2.0 * variant + class_rng.uniform(0.0, 3.0);
    const double grating_theta = class_rng.uniform(0.0, std::numbers::pi);
    const double grating_amp = 70.0 + class_rng.uniform(0.0, 40.0);
    const Eigen::Index checker_cell =
        6 + 4 * variant + static_cast<Eigen::Index>(class_rng.below(9));
    const int blur_radius = 1 + (variant + static_cast<int>(class_rng.below(2))) % 3;
    const int blur_passes = 2 + static_cast<int>(class_rng.below(2));
    const Eigen::Index step_min = 4 + 2 * variant + static_cast<Eigen::Index>(class_rng.below(4));
    const Eigen::Index step_max = step_min + 8 + static_cast<Eigen::Index>(class_rng.below(8));
    const bool step_vertical = class_rng.below(2) == 0;

    for (int i = 0; i < per_class; ++i) {
      const std::uint64_t image_seed = splitmix64(
          class_seed ^ (0x2545F4914F6CDD1Dull * static_cast<std::uint64_t>(i + 1)));
      Rng rng(image_seed);
      GreyImage img;
      switch (family) {
        case 0:
          img = make_grating(size, grating_freq * rng.uniform(0.95, 1.05),
                             grating_theta + rng.uniform(-0.08, 0.08),
                             rng.uniform(0.0, 2.0 * std::numbers::pi), grating_amp, rng);
          break;
        case 1:
          img = make_checkerboard(
              size, checker_cell, static_cast<Eigen::Index>(rng.below(
                                      static_cast<std::uint64_t>(checker_cell))),
              static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(checker_cell))),
              56.0 + rng.uniform(0.0, 16.0), 184.0 + rng.uniform(0.0, 16.0), rng);
          break;
        case 2:
          img = make_filtered_noise(size, blur_radius, blur_passes, rng);
          break;
        default:
          img = make_steps(size, step_min, step_max, step_vertical, rng);
          break;
      }
      ds.images.push_back(std::move(img));
      ds.labels.push_back(c);
    }
  }
  return ds;
}

DatasetIndex write_synth_dataset(const fs::path& root, const SynthDataset& dataset) {
  fs::create_directories(root);
  for (const auto& name : dataset.class_names) fs::create_directories(root / name);

  DatasetIndex index;
  index.classes = dataset.class_names;
  std::vector<int> counters(dataset.class_names.size(), 0);
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    const int label = dataset.labels[i];
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03d.pgm",
                  counters[static_cast<std::size_t>(label)]++);
    const fs::path path = root / dataset.class_names[static_cast<std::size_t>(label)] / name;
    write_pgm(path, dataset.images[i]);
    index.entries.push_back({path, dataset.class_names[static_cast<std::size_t>(label)]});
  }
  return index;
}

}  // namespace schro
