#include "lspec/output.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace lspec {

namespace {

std::ofstream open_out(const std::filesystem::path& p, std::ios::openmode mode = {}) {
    std::ofstream out(p, std::ios::binary | mode);
    if (!out) throw io_error("cannot open " + p.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) throw io_error("write failed for " + p.string());
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw io_error("cannot open " + p.string() + " for hashing");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(bytes);
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

RunManifest::RunManifest(std::filesystem::path dir, std::uint64_t config_hash)
    : dir_(std::move(dir)), config_hash_(config_hash) {}

void RunManifest::add(const std::filesystem::path& file) { files_.push_back(file); }

void RunManifest::write(double wall_time_s) const {
    nlohmann::json j;
    j["code_version"] = kCodeVersion;
    j["config_hash"] = hex64(config_hash_);
    j["wall_time_s"] = wall_time_s;
    j["outputs"] = nlohmann::json::array();
    for (const auto& f : files_) {
        j["outputs"].push_back({{"file", f.filename().string()},
                                {"fnv1a64", hex64(fnv1a64_file(f))}});
    }
    auto out = open_out(dir_ / "manifest.json");
    out << j.dump(2) << '\n';
    finish(out, dir_ / "manifest.json");
}

void write_time_series_csv(const std::filesystem::path& p, const ComplexTimeSeries& ts) {
    auto out = open_out(p);
    out << "# times in units of 1/J_z\n";
    out << "t,re,im\n";
    for (int k = 0; k < ts.grid.samples(); ++k)
        out << format_double(ts.grid.time(k)) << ',' << format_double(ts.values(k).real())
            << ',' << format_double(ts.values(k).imag()) << '\n';
    finish(out, p);
}

void write_coarse_csv(const std::filesystem::path& p, const CoarseGrained& cg) {
    auto out = open_out(p);
    out << "# energies in units of J_z\n";
    out << "E,value,valid_flag\n";
    for (int i = 0; i < cg.grid.points; ++i)
        out << format_double(cg.grid.energy(i)) << ',' << format_double(cg.values(i)) << ','
            << int(cg.valid[static_cast<std::size_t>(i)]) << '\n';
    finish(out, p);
}

const char* coarse_kind_name(CoarseKind kind) {
    switch (kind) {
        case CoarseKind::dos: return "dos";
        case CoarseKind::a_r: return "a_r";
        case CoarseKind::a_c: return "a_c";
        case CoarseKind::fock_sigma: return "fock_sigma";
    }
    return "unknown";
}

void write_coarse_sidecar(const std::filesystem::path& p, const CoarseGrained& cg,
                          std::uint64_t model_hash) {
    nlohmann::json j;
    j["kind"] = coarse_kind_name(cg.kind);
    j["T"] = cg.T;
    j["model_hash"] = hex64(model_hash);
    j["grid"] = {{"e_min", cg.grid.e_min}, {"e_max", cg.grid.e_max}, {"points", cg.grid.points}};
    auto out = open_out(p);
    out << j.dump(2) << '\n';
    finish(out, p);
}

void write_spectrum_csv(const std::filesystem::path& p, const Spectrum& s) {
    auto out = open_out(p);
    out << "# energies in units of J_z\n";
    out << "n,E_n\n";
    for (int n = 0; n < s.dim(); ++n)
        out << n << ',' << format_double(s.energies(n)) << '\n';
    finish(out, p);
}

void write_thermo_csv(const std::filesystem::path& p, const ThermoCurve& curve,
                      const VectorXd* exact) {
    auto out = open_out(p);
    out << "# beta in units of 1/J_z\n";
    out << (exact ? "beta,value,valid_flag,exact\n" : "beta,value,valid_flag\n");
    for (Eigen::Index i = 0; i < curve.betas.size(); ++i) {
        out << format_double(curve.betas(i)) << ',' << format_double(curve.values(i)) << ','
            << int(curve.valid[static_cast<std::size_t>(i)]);
        if (exact) out << ',' << format_double((*exact)(i));
        out << '\n';
    }
    finish(out, p);
}

namespace {

void write_le_doubles(std::ofstream& out, const double* data, std::size_t count) {
    // IEEE-754 little-endian lanes; this sandbox and every target we care
    // about is little-endian already, so a raw dump is the documented layout
    static_assert(sizeof(double) == 8);
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * 8));
}

} // namespace

void write_vectors_binary(const std::filesystem::path& p, const Spectrum& s) {
    auto out = open_out(p);
    // column-major (re,im) pairs; Eigen's MatrixXcd is already exactly that
    write_le_doubles(out, reinterpret_cast<const double*>(s.vectors.data()),
                     static_cast<std::size_t>(s.vectors.size()) * 2);
    finish(out, p);
}

void write_matrix_binary(const std::filesystem::path& p, const MatrixXd& m) {
    auto out = open_out(p);
    write_le_doubles(out, m.data(), static_cast<std::size_t>(m.size()));
    finish(out, p);
}

void write_text(const std::filesystem::path& p, const std::string& body) {
    auto out = open_out(p);
    out << body;
    finish(out, p);
}

} // namespace lspec
