#include "isowave/formats.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "isowave/errors.hpp"

namespace isowave {

namespace {

// Skips PGM whitespace and '#' comments, then reads one unsigned integer.
unsigned long next_pnm_value(std::istream& in, const char* what) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c))
        throw IoError(std::string("PGM header: expected ") + what);
    unsigned long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<unsigned long>(c - '0');
        if (value > 1000000000UL) throw IoError("PGM header: value out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

}  // namespace

RealImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
        throw IoError(path.string() + ": not a PGM file (bad magic)");
    const bool binary = magic[1] == '5';

    const std::size_t width = next_pnm_value(in, "width");
    const std::size_t height = next_pnm_value(in, "height");
    const unsigned long maxval = next_pnm_value(in, "maxval");
    if (width == 0 || height == 0) throw IoError(path.string() + ": zero image size");
    if (maxval == 0 || maxval > 65535)
        throw IoError(path.string() + ": maxval must be in 1..65535");

    RealImage image({height, width});
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        int sep = in.get();
        if (sep == EOF || !std::isspace(sep))
            throw IoError(path.string() + ": malformed raster separator");
        const bool wide = maxval > 255;
        std::vector<unsigned char> raw(image.size() * (wide ? 2 : 1));
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw IoError(path.string() + ": truncated pixel data");
        for (std::size_t i = 0; i < image.size(); ++i) {
            unsigned v = wide ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1]
                              : raw[i];
            image.data[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < image.size(); ++i) {
            unsigned long v;
            try {
                v = next_pnm_value(in, "pixel value");
            } catch (const IoError&) {
                throw IoError(path.string() + ": truncated pixel data");
            }
            image.data[i] = static_cast<double>(v);
        }
    }
    return image;
}

void write_pgm(const RealImage& image, const std::filesystem::path& path, bool ascii) {
    image.validate();
    if (image.dims.size() != 2)
        throw std::invalid_argument("write_pgm: image must be 2-D");

    std::vector<long> rounded(image.size());
    long peak = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
        long v = std::lround(std::max(0.0, std::min(65535.0, image.data[i])));
        rounded[i] = v;
        peak = std::max(peak, v);
    }
    const unsigned maxval = peak > 255 ? 65535u : 255u;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << (ascii ? "P2" : "P5") << '\n'
        << image.dims[1] << ' ' << image.dims[0] << '\n'
        << maxval << '\n';
    if (ascii) {
        for (std::size_t i = 0; i < rounded.size(); ++i)
            out << rounded[i] << ((i + 1) % image.dims[1] == 0 ? '\n' : ' ');
    } else if (maxval > 255) {
        std::vector<unsigned char> raw(rounded.size() * 2);
        for (std::size_t i = 0; i < rounded.size(); ++i) {
            raw[2 * i] = static_cast<unsigned char>(rounded[i] >> 8);
            raw[2 * i + 1] = static_cast<unsigned char>(rounded[i] & 0xff);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        std::vector<unsigned char> raw(rounded.size());
        for (std::size_t i = 0; i < rounded.size(); ++i)
            raw[i] = static_cast<unsigned char>(rounded[i]);
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

std::string read_header_line(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line))
        throw IoError(path.string() + ": truncated NDF header");
    return line;
}

}  // namespace

NdfData read_ndf(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    if (read_header_line(in, path) != "NDF1")
        throw IoError(path.string() + ": not an NDF file (bad magic)");

    std::istringstream dims_line(read_header_line(in, path));
    std::string tag;
    dims_line >> tag;
    if (tag != "dims") throw IoError(path.string() + ": missing dims header");
    Dims dims;
    std::size_t d;
    while (dims_line >> d) {
        if (d == 0) throw IoError(path.string() + ": zero-length axis");
        dims.push_back(d);
    }
    if (dims.empty()) throw IoError(path.string() + ": empty dims header");

    std::istringstream dtype_line(read_header_line(in, path));
    std::string dtype;
    dtype_line >> tag >> dtype;
    if (tag != "dtype") throw IoError(path.string() + ": missing dtype header");
    if (dtype != "f64" && dtype != "c128")
        throw IoError(path.string() + ": unknown dtype tag \"" + dtype + "\"");

    std::istringstream layout_line(read_header_line(in, path));
    std::string layout_name;
    layout_line >> tag >> layout_name;
    if (tag != "layout") throw IoError(path.string() + ": missing layout header");

    if (!read_header_line(in, path).empty())
        throw IoError(path.string() + ": missing blank separator line");

    const std::size_t total = total_size(dims);
    if (dtype == "f64") {
        if (layout_name != "spatial")
            throw IoError(path.string() + ": f64 payload requires spatial layout");
        RealImage image(dims);
        in.read(reinterpret_cast<char*>(image.data.data()),
                static_cast<std::streamsize>(total * sizeof(double)));
        if (static_cast<std::size_t>(in.gcount()) != total * sizeof(double))
            throw IoError(path.string() + ": payload length mismatch");
        if (in.peek() != EOF)
            throw IoError(path.string() + ": payload length mismatch (trailing bytes)");
        return image;
    }

    FrequencyLayout layout;
    try {
        layout = layout_from_string(layout_name);
    } catch (const std::invalid_argument&) {
        throw IoError(path.string() + ": unknown layout tag \"" + layout_name + "\"");
    }
    ComplexSpectrum spectrum(dims, layout);
    in.read(reinterpret_cast<char*>(spectrum.data.data()),
            static_cast<std::streamsize>(total * sizeof(std::complex<double>)));
    if (static_cast<std::size_t>(in.gcount()) != total * sizeof(std::complex<double>))
        throw IoError(path.string() + ": payload length mismatch");
    if (in.peek() != EOF)
        throw IoError(path.string() + ": payload length mismatch (trailing bytes)");
    return spectrum;
}

RealImage read_ndf_image(const std::filesystem::path& path) {
    NdfData data = read_ndf(path);
    if (auto* image = std::get_if<RealImage>(&data)) return std::move(*image);
    throw ConsistencyError(path.string() + ": expected f64 spatial data");
}

ComplexSpectrum read_ndf_spectrum(const std::filesystem::path& path) {
    NdfData data = read_ndf(path);
    if (auto* spectrum = std::get_if<ComplexSpectrum>(&data)) return std::move(*spectrum);
    throw ConsistencyError(path.string() + ": expected c128 spectrum data");
}

namespace {

void write_ndf_header(std::ostream& out, const Dims& dims, const char* dtype,
                      const std::string& layout) {
    out << "NDF1\ndims";
    for (std::size_t d : dims) out << ' ' << d;
    out << "\ndtype " << dtype << "\nlayout " << layout << "\n\n";
}

}  // namespace

void write_ndf(const RealImage& image, const std::filesystem::path& path) {
    image.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    write_ndf_header(out, image.dims, "f64", "spatial");
    out.write(reinterpret_cast<const char*>(image.data.data()),
              static_cast<std::streamsize>(image.data.size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path.string());
}

void write_ndf(const ComplexSpectrum& spectrum, const std::filesystem::path& path) {
    spectrum.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    write_ndf_header(out, spectrum.dims, "c128", to_string(spectrum.layout));
    out.write(reinterpret_cast<const char*>(spectrum.data.data()),
              static_cast<std::streamsize>(spectrum.data.size() *
                                           sizeof(std::complex<double>)));
    if (!out) throw IoError("write failed: " + path.string());
}

void PyramidManifest::validate() const {
    if (levels < 1) throw ConsistencyError("manifest: levels must be >= 1");
    if (bands < 1) throw ConsistencyError("manifest: bands must be >= 1");
    if (scale_factor != 2) throw ConsistencyError("manifest: unsupported scale factor");
    if (input_dims.empty()) throw ConsistencyError("manifest: empty input_dims");
    for (std::size_t d : input_dims)
        if (d == 0) throw ConsistencyError("manifest: zero-length axis");
    if (entries.size() != static_cast<std::size_t>(levels) * static_cast<std::size_t>(bands))
        throw ConsistencyError("manifest: entry count mismatch (expected levels * bands)");
    std::set<std::pair<int, int>> seen;
    for (const auto& entry : entries) {
        if (entry.level < 1 || entry.level > levels)
            throw ConsistencyError("manifest: entry level out of range");
        if (entry.band < 1 || entry.band > bands)
            throw ConsistencyError("manifest: entry band out of range");
        if (entry.path.empty()) throw ConsistencyError("manifest: empty entry path");
        if (!seen.emplace(entry.level, entry.band).second)
            throw ConsistencyError("manifest: duplicate (level, band) entry");
    }
    if (approximation_path.empty())
        throw ConsistencyError("manifest: missing approximation path");
    if (auto it = wavelet_params.find("kappa"); it != wavelet_params.end())
        if (!(it->second > 0.0))
            throw ConsistencyError("manifest: kappa must be positive");
    if (auto it = wavelet_params.find("held_order"); it != wavelet_params.end()) {
        double order = it->second;
        if (order != std::floor(order) || order < 0 || order > 5)
            throw ConsistencyError("manifest: held_order must be an integer in 0..5");
    }
}

PyramidManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": manifest parse error: " + e.what());
    }

    PyramidManifest manifest;
    try {
        const std::string kind = doc.at("wavelet").get<std::string>();
        try {
            manifest.wavelet = wavelet_from_string(kind);
        } catch (const std::invalid_argument& e) {
            throw ConsistencyError(path.string() + ": " + e.what());
        }
        for (auto& [key, value] : doc.at("wavelet_params").items())
            manifest.wavelet_params[key] = value.get<double>();
        manifest.levels = doc.at("levels").get<int>();
        manifest.bands = doc.at("bands").get<int>();
        manifest.input_dims = doc.at("input_dims").get<Dims>();
        manifest.scale_factor = doc.at("scale_factor").get<int>();
        for (const auto& item : doc.at("entries")) {
            PyramidManifest::Entry entry;
            entry.level = item.at("level").get<int>();
            entry.band = item.at("band").get<int>();
            entry.path = item.at("path").get<std::string>();
            manifest.entries.push_back(std::move(entry));
        }
        manifest.approximation_path = doc.at("approximation").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConsistencyError(path.string() + ": manifest field error: " + e.what());
    }
    manifest.validate();
    return manifest;
}

void write_manifest(const PyramidManifest& manifest, const std::filesystem::path& path) {
    manifest.validate();
    nlohmann::json doc;
    doc["wavelet"] = to_string(manifest.wavelet);
    doc["wavelet_params"] = nlohmann::json::object();
    for (const auto& [key, value] : manifest.wavelet_params)
        doc["wavelet_params"][key] = value;
    doc["levels"] = manifest.levels;
    doc["bands"] = manifest.bands;
    doc["input_dims"] = manifest.input_dims;
    doc["scale_factor"] = manifest.scale_factor;
    doc["entries"] = nlohmann::json::array();
    for (const auto& entry : manifest.entries)
        doc["entries"].push_back({{"level", entry.level},
                                  {"band", entry.band},
                                  {"path", entry.path}});
    doc["approximation"] = manifest.approximation_path;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace isowave
