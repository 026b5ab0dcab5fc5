#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "isowave/image.hpp"
#include "isowave/wavelets.hpp"

namespace isowave {

// P2 (ASCII) and P5 (binary) greyscale, maxval up to 65535; 16-bit P5 samples
// are big-endian per the netpbm convention. Samples load as raw floats in
// [0, maxval].
RealImage read_pgm(const std::filesystem::path& path);

// Writes P5 by default (P2 when ascii = true). maxval is 255 unless the data
// exceeds it, then 65535; samples are rounded and clamped, so integer-valued
// in-range images round-trip exactly.
void write_pgm(const RealImage& image, const std::filesystem::path& path,
               bool ascii = false);

// Minimal n-dimensional container: four ASCII header lines
//   NDF1
//   dims d0 d1 ...
//   dtype f64|c128
//   layout standard|shifted|physical|spatial
// a blank line, then the little-endian row-major payload (complex values
// interleaved re,im). f64 payloads are spatial images, c128 are spectra.
using NdfData = std::variant<RealImage, ComplexSpectrum>;

NdfData read_ndf(const std::filesystem::path& path);
RealImage read_ndf_image(const std::filesystem::path& path);
ComplexSpectrum read_ndf_spectrum(const std::filesystem::path& path);

void write_ndf(const RealImage& image, const std::filesystem::path& path);
void write_ndf(const ComplexSpectrum& spectrum, const std::filesystem::path& path);

/// Ties a directory of per-(level, band) coefficient files together.
struct PyramidManifest {
    WaveletKind wavelet = WaveletKind::Simoncelli;
    std::map<std::string, double> wavelet_params;
    int levels = 1;
    int bands = 1;
    Dims input_dims;  // pre-padding input size
    int scale_factor = 2;

    struct Entry {
        int level = 0;
        int band = 0;
        std::string path;  // relative to the manifest location
    };
    std::vector<Entry> entries;
    std::string approximation_path;

    // Throws ConsistencyError on structural violations (entry count,
    // level/band ranges, scale factor).
    void validate() const;
};

PyramidManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const PyramidManifest& manifest, const std::filesystem::path& path);

}  // namespace isowave
