#pragma once

#include "lspec/dynamics.hpp"
#include "lspec/reconstruct.hpp"
#include "lspec/spectrum.hpp"
#include "lspec/thermo.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lspec {

inline constexpr const char* kCodeVersion = "0.1.0";

/// %.17g: round-trip safe, byte-stable.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& p);
std::string hex64(std::uint64_t v);

/// Collects every emitted file; written last as manifest.json with the
/// config hash, code version, wall time and per-file checksums.
class RunManifest {
  public:
    RunManifest(std::filesystem::path dir, std::uint64_t config_hash);
    void add(const std::filesystem::path& file);
    void write(double wall_time_s) const;

  private:
    std::filesystem::path dir_;
    std::uint64_t config_hash_;
    std::vector<std::filesystem::path> files_;
};

/// CSV writers; every file starts with a '#' units line.
void write_time_series_csv(const std::filesystem::path& p, const ComplexTimeSeries& ts);
void write_coarse_csv(const std::filesystem::path& p, const CoarseGrained& cg);
void write_coarse_sidecar(const std::filesystem::path& p, const CoarseGrained& cg,
                          std::uint64_t model_hash);
void write_spectrum_csv(const std::filesystem::path& p, const Spectrum& s);
void write_thermo_csv(const std::filesystem::path& p, const ThermoCurve& curve,
                      const VectorXd* exact);

/// Raw little-endian float64 matrix dumps (no header; dims live in the
/// sidecar JSON): complex column-major (re,im) pairs for eigenvectors,
/// real column-major for Gamma/R.
void write_vectors_binary(const std::filesystem::path& p, const Spectrum& s);
void write_matrix_binary(const std::filesystem::path& p, const MatrixXd& m);

void write_text(const std::filesystem::path& p, const std::string& body);

const char* coarse_kind_name(CoarseKind kind);

} // namespace lspec
