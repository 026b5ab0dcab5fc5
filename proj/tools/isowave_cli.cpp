// Batch front end over the isowave library. Every subcommand reads its
// inputs, computes, stages all outputs to temp files, then renames, so a
// failed invocation never leaves partial results behind.
//
// Exit codes: 0 success, 2 I/O failure, 3 bad parameter, 4 consistency
// violation (manifest vs. files), 1 anything unexpected.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "isowave/errors.hpp"
#include "isowave/formats.hpp"
#include "isowave/frequency.hpp"
#include "isowave/phase.hpp"
#include "isowave/pyramid.hpp"
#include "isowave/riesz.hpp"
#include "isowave/wavelets.hpp"

namespace fs = std::filesystem;
using namespace isowave;

namespace {

// Collects temp-file writes and renames them into place only when the whole
// command has succeeded. Uncommitted temps are removed on unwind.
class OutputStager {
public:
    fs::path stage(const fs::path& target) {
        fs::path tmp = target;
        tmp += ".tmp";
        staged_.emplace_back(tmp, target);
        return tmp;
    }

    void commit() {
        for (const auto& [tmp, target] : staged_) fs::rename(tmp, target);
        staged_.clear();
    }

    ~OutputStager() {
        for (const auto& [tmp, target] : staged_) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    }

private:
    std::vector<std::pair<fs::path, fs::path>> staged_;
};

RealImage read_image_any(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input: " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    in.close();
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
    if (std::string(magic, 4) == "NDF1") return read_ndf_image(path);
    throw IoError("unrecognized image format: " + path.string());
}

enum class OutFormat { Auto, Pgm, Ndf };

OutFormat resolve_format(OutFormat requested, const fs::path& path) {
    if (requested != OutFormat::Auto) return requested;
    const std::string ext = path.extension().string();
    if (ext == ".pgm" || ext == ".pnm") return OutFormat::Pgm;
    if (ext == ".ndf") return OutFormat::Ndf;
    throw std::invalid_argument("cannot infer output format from '" + ext +
                                "'; pass --format pgm|ndf");
}

void ensure_parent(const fs::path& path) {
    const fs::path parent = path.parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

// rescale maps [-1, 1] to the 8-bit range for display; raw values that small
// would round to nothing in a PGM.
void write_image_out(const RealImage& image, const fs::path& path, OutFormat format,
                     OutputStager& stager, bool rescale_display) {
    ensure_parent(path);
    const fs::path tmp = stager.stage(path);
    if (resolve_format(format, path) == OutFormat::Ndf) {
        write_ndf(image, tmp);
        return;
    }
    if (rescale_display) {
        RealImage scaled = image;
        for (double& v : scaled.data) v = (v + 1.0) * 0.5 * 255.0;
        write_pgm(scaled, tmp);
    } else {
        write_pgm(image, tmp);
    }
}

std::string detail_filename(int level, int band) {
    return "detail_s" + std::to_string(level) + "_h" + std::to_string(band) + ".ndf";
}

std::string dims_string(const Dims& dims) {
    std::string out;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        if (a) out += "x";
        out += std::to_string(dims[a]);
    }
    return out;
}

RealImage crop_to(const RealImage& full, const Dims& dims) {
    if (full.dims == dims) return full;
    RealImage out(dims);
    out.spacing = full.spacing;
    out.origin = full.origin;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data[i] = full.data[flat_index(full.dims, coords_of(dims, i))];
    return out;
}

struct WaveletFlags {
    std::string name = "simoncelli";
    double kappa = 0.75;
    int held_order = 0;

    WaveletFunction make() const {
        return make_wavelet(wavelet_from_string(name), kappa, held_order);
    }
};

void add_wavelet_flags(CLI::App* cmd, WaveletFlags& flags) {
    cmd->add_option("--wavelet", flags.name,
                    "mother wavelet: vow | held | simoncelli | shannon");
    cmd->add_option("--kappa", flags.kappa, "vow steepness in (0, pi/2)");
    cmd->add_option("--held-order", flags.held_order, "held polynomial order 0..5");
}

void cmd_forward(const fs::path& input, const fs::path& outdir,
                 const WaveletFlags& flags, int levels, int bands) {
    const RealImage image = read_image_any(input);
    const int cap = max_levels(image.dims);
    if (levels < 1 || levels > cap)
        throw std::invalid_argument("levels " + std::to_string(levels) +
                                    " out of range for " + dims_string(image.dims) +
                                    " input (max levels: " + std::to_string(cap) + ")");
    if (bands < 1) throw std::invalid_argument("bands must be >= 1");

    const WaveletFunction wavelet = flags.make();
    const PyramidCoefficients coeffs =
        forward_pyramid(forward_dft(pad_to_levels(image, levels)), levels, bands, wavelet);

    fs::create_directories(outdir);
    OutputStager stager;
    PyramidManifest manifest;
    manifest.wavelet = wavelet.kind;
    if (wavelet.kind == WaveletKind::Vow) manifest.wavelet_params["kappa"] = flags.kappa;
    if (wavelet.kind == WaveletKind::Held)
        manifest.wavelet_params["held_order"] = flags.held_order;
    manifest.levels = levels;
    manifest.bands = bands;
    manifest.input_dims = image.dims;
    for (int s = 1; s <= levels; ++s) {
        for (int h = 1; h <= bands; ++h) {
            const std::string name = detail_filename(s, h);
            write_ndf(coeffs.detail(s, h), stager.stage(outdir / name));
            manifest.entries.push_back({s, h, name});
        }
    }
    write_ndf(coeffs.approximation, stager.stage(outdir / "approximation.ndf"));
    manifest.approximation_path = "approximation.ndf";
    write_manifest(manifest, stager.stage(outdir / "manifest.json"));
    stager.commit();
}

void cmd_inverse(const fs::path& manifest_path, const fs::path& output,
                 OutFormat format) {
    const PyramidManifest manifest = read_manifest(manifest_path);
    const fs::path dir = manifest_path.parent_path();
    const Dims padded = padded_dims(manifest.input_dims, manifest.levels);

    PyramidCoefficients coeffs;
    coeffs.input_dims = padded;
    coeffs.levels = manifest.levels;
    coeffs.bands = manifest.bands;
    double kappa = 0.75;
    int held_order = 0;
    if (auto it = manifest.wavelet_params.find("kappa"); it != manifest.wavelet_params.end())
        kappa = it->second;
    if (auto it = manifest.wavelet_params.find("held_order");
        it != manifest.wavelet_params.end())
        held_order = static_cast<int>(it->second);
    coeffs.wavelet = make_wavelet(manifest.wavelet, kappa, held_order);
    coeffs.details.resize(manifest.levels, std::vector<ComplexSpectrum>(manifest.bands));

    auto load_spectrum = [&dir](const std::string& rel, const Dims& expected) {
        const fs::path path = dir / rel;
        if (!fs::exists(path))
            throw ConsistencyError("manifest references missing file: " + path.string());
        ComplexSpectrum spectrum;
        try {
            spectrum = read_ndf_spectrum(path);
        } catch (const IoError& e) {
            throw ConsistencyError(std::string("unreadable coefficient file: ") + e.what());
        }
        if (spectrum.dims != expected)
            throw ConsistencyError("coefficient dims mismatch in " + path.string() +
                                   ": expected " + dims_string(expected) + ", got " +
                                   dims_string(spectrum.dims));
        if (spectrum.layout != FrequencyLayout::Standard)
            throw ConsistencyError("coefficient file " + path.string() +
                                   " is not in standard layout");
        return spectrum;
    };

    for (const auto& entry : manifest.entries) {
        Dims expected = padded;
        for (auto& n : expected) n >>= (entry.level - 1);
        coeffs.detail(entry.level, entry.band) = load_spectrum(entry.path, expected);
    }
    Dims approx_dims = padded;
    for (auto& n : approx_dims) n >>= manifest.levels;
    coeffs.approximation = load_spectrum(manifest.approximation_path, approx_dims);

    const RealImage full = inverse_dft(inverse_pyramid(coeffs)).image;
    OutputStager stager;
    write_image_out(crop_to(full, manifest.input_dims), output, format, stager, false);
    stager.commit();
}

void cmd_phase(const fs::path& input, const fs::path& output, const WaveletFlags& flags,
               int levels, int bands, double k_sigmas, const fs::path& band_outdir,
               OutFormat format) {
    const RealImage image = read_image_any(input);
    OutputStager stager;
    PhasePipelineOptions options;
    if (!band_outdir.empty()) {
        fs::create_directories(band_outdir);
        options.band_sink = [&](int level, int band, const RealImage& phase_band) {
            const std::string name =
                "band_s" + std::to_string(level) + "_h" + std::to_string(band) + ".ndf";
            write_ndf(phase_band, stager.stage(band_outdir / name));
        };
    }
    const RealImage result =
        riesz_wavelet_phase_pipeline(image, flags.make(), levels, bands, k_sigmas, options);
    write_image_out(result, output, format, stager, true);
    stager.commit();
}

void cmd_riesz(const fs::path& input, int order, const fs::path& outdir) {
    const RealImage image = read_image_any(input);
    const RieszBank bank = generate_riesz_bank(order, image.dims);
    const auto filtered = apply_riesz(bank, forward_dft(image));

    fs::create_directories(outdir);
    OutputStager stager;
    double worst_residual = 0.0;
    for (std::size_t c = 0; c < filtered.size(); ++c) {
        const InverseDftResult result = inverse_dft(filtered[c]);
        worst_residual = std::max(worst_residual, result.max_imag_residual);
        std::string name = "riesz_n";
        for (std::size_t a = 0; a < bank.index_order[c].size(); ++a) {
            if (a) name += "-";
            name += std::to_string(bank.index_order[c][a]);
        }
        write_ndf(result.image, stager.stage(outdir / (name + ".ndf")));
    }
    if (worst_residual > 1e-6)
        std::cerr << "warning: imaginary residual " << worst_residual
                  << " discarded (input has energy at Nyquist bins)\n";
    stager.commit();
}

void cmd_structure_tensor(const std::vector<fs::path>& inputs, double sigma, int radius,
                          const fs::path& outdir) {
    std::vector<RealImage> images;
    images.reserve(inputs.size());
    for (const auto& path : inputs) images.push_back(read_image_any(path));

    const EigenField field = structure_tensor(images, sigma, radius);
    fs::create_directories(outdir);
    OutputStager stager;
    write_ndf(coherency(field), stager.stage(outdir / "coherency.ndf"));
    write_ndf(projection_image(field, images, field.n_inputs),
              stager.stage(outdir / "projection.ndf"));
    stager.commit();
}

void cmd_profile(const WaveletFlags& flags, int bands, int samples,
                 const fs::path& output) {
    const ProfileTable table = emit_profile(flags.make(), bands, samples);
    ensure_parent(output);
    OutputStager stager;
    const fs::path tmp = stager.stage(output);
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open output: " + output.string());
    write_profile_csv(table, out);
    out.close();
    if (!out) throw IoError("failed writing " + output.string());
    stager.commit();
}

void cmd_info(const fs::path& input) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoError("cannot open input: " + input.string());
    char magic[4] = {};
    in.read(magic, 4);
    in.close();

    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        const RealImage image = read_pgm(input);
        std::cout << "format: pgm\n"
                  << "dims: " << dims_string(image.dims) << "\n"
                  << "max levels: " << max_levels(image.dims) << "\n";
        return;
    }
    if (std::string(magic, 4) != "NDF1")
        throw IoError("unrecognized input format: " + input.string());

    const NdfData data = read_ndf(input);
    if (std::holds_alternative<RealImage>(data)) {
        const auto& image = std::get<RealImage>(data);
        std::cout << "format: ndf\n"
                  << "dtype: f64\n"
                  << "dims: " << dims_string(image.dims) << "\n"
                  << "max levels: " << max_levels(image.dims) << "\n";
        return;
    }
    const auto& spectrum = std::get<ComplexSpectrum>(data);
    std::cout << "format: ndf\n"
              << "dtype: c128\n"
              << "dims: " << dims_string(spectrum.dims) << "\n"
              << "max levels: " << max_levels(spectrum.dims) << "\n"
              << "layout: " << to_string(spectrum.layout) << "\n";
    const ComplexSpectrum standard = spectrum.layout == FrequencyLayout::Shifted
                                         ? unshift_layout(spectrum)
                                         : spectrum;
    std::cout << "hermitian: " << (is_hermitian(standard, 1e-9) ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isotropic band-limited wavelet pyramids, Riesz transforms, "
                 "monogenic phase analysis, and structure tensors"};
    app.require_subcommand(1);

    fs::path input, output, outdir, manifest_path, band_outdir;
    std::vector<fs::path> inputs;
    WaveletFlags forward_flags, phase_flags, profile_flags;
    int levels = 1, bands = 1, order = 1, samples = 512, radius = 2;
    double k_sigmas = 2.0, sigma = 1.0;
    std::string format_name = "auto";

    const std::map<std::string, OutFormat> format_map{
        {"auto", OutFormat::Auto}, {"pgm", OutFormat::Pgm}, {"ndf", OutFormat::Ndf}};

    CLI::App* forward = app.add_subcommand("forward", "decompose an image into pyramid coefficients");
    forward->add_option("--input,-i", input, "input image (PGM or NDF)")->required();
    forward->add_option("--outdir", outdir, "directory for coefficients + manifest")->required();
    add_wavelet_flags(forward, forward_flags);
    forward->add_option("--levels", levels, "pyramid depth")->required();
    forward->add_option("--bands", bands, "radial sub-bands per level");

    CLI::App* inverse = app.add_subcommand("inverse", "reconstruct an image from a manifest");
    inverse->add_option("--input,-i", manifest_path, "manifest.json path")->required();
    inverse->add_option("--output,-o", output, "output image path")->required();
    inverse->add_option("--format", format_name, "pgm | ndf (default: by extension)")
        ->check(CLI::IsMember({"auto", "pgm", "ndf"}));

    CLI::App* phase = app.add_subcommand("phase", "multiscale soft-threshold phase analysis");
    phase->add_option("--input,-i", input, "input image (PGM or NDF)")->required();
    phase->add_option("--output,-o", output, "output image path")->required();
    add_wavelet_flags(phase, phase_flags);
    phase->add_option("--levels", levels, "pyramid depth")->required();
    phase->add_option("--bands", bands, "radial sub-bands per level");
    phase->add_option("--k-sigmas", k_sigmas, "amplitude threshold at mean + k*std");
    phase->add_option("--band-outdir", band_outdir, "also dump per-band phase images here");
    phase->add_option("--format", format_name, "pgm | ndf (default: by extension)")
        ->check(CLI::IsMember({"auto", "pgm", "ndf"}));

    CLI::App* riesz = app.add_subcommand("riesz", "write spatial Riesz component images");
    riesz->add_option("--input,-i", input, "input image (PGM or NDF)")->required();
    riesz->add_option("--order", order, "transform order N >= 1");
    riesz->add_option("--outdir", outdir, "directory for component files")->required();

    CLI::App* tensor = app.add_subcommand("structure-tensor",
                                          "orientation and coherency from input channels");
    tensor->add_option("--input,-i", inputs, "two or more input images")->required();
    tensor->add_option("--sigma", sigma, "Gaussian window sigma > 0");
    tensor->add_option("--radius", radius, "window truncation radius >= 1");
    tensor->add_option("--outdir", outdir, "directory for coherency + projection")->required();

    CLI::App* profile = app.add_subcommand("profile", "tabulate radial filter profiles as CSV");
    add_wavelet_flags(profile, profile_flags);
    profile->add_option("--bands", bands, "radial sub-bands");
    profile->add_option("--samples", samples, "row count");
    profile->add_option("--output,-o", output, "CSV path")->required();

    CLI::App* info = app.add_subcommand("info", "print dims, max levels, layout");
    info->add_option("--input,-i", input, "input file (PGM or NDF)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        const OutFormat format = format_map.at(format_name);
        if (forward->parsed())
            cmd_forward(input, outdir, forward_flags, levels, bands);
        else if (inverse->parsed())
            cmd_inverse(manifest_path, output, format);
        else if (phase->parsed())
            cmd_phase(input, output, phase_flags, levels, bands, k_sigmas, band_outdir,
                      format);
        else if (riesz->parsed())
            cmd_riesz(input, order, outdir);
        else if (tensor->parsed())
            cmd_structure_tensor(inputs, sigma, radius, outdir);
        else if (profile->parsed())
            cmd_profile(profile_flags, bands, samples, output);
        else if (info->parsed())
            cmd_info(input);
        return 0;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
