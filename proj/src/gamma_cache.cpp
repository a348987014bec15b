#include "bloch/gamma_cache.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace bloch {

namespace {

constexpr char kMagic[8] = {'B', 'L', 'O', 'C', 'H', 'G', 'A', 'M'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& os, uint32_t v) { os.write(reinterpret_cast<char*>(&v), 4); }
void put_u64(std::ostream& os, uint64_t v) { os.write(reinterpret_cast<char*>(&v), 8); }
uint32_t get_u32(std::istream& is) {
    uint32_t v;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
uint64_t get_u64(std::istream& is) {
    uint64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

void put_matrix(std::ostream& os, const Matrix& m) {
    for (long long i = 0; i < m.rows(); ++i)
        for (long long j = 0; j < m.cols(); ++j) {
            double re = m(i, j).real(), im = m(i, j).imag();
            os.write(reinterpret_cast<char*>(&re), 8);
            os.write(reinterpret_cast<char*>(&im), 8);
        }
}

Matrix get_matrix(std::istream& is, long long rows, long long cols) {
    Matrix m(rows, cols);
    for (long long i = 0; i < rows; ++i)
        for (long long j = 0; j < cols; ++j) {
            double re, im;
            is.read(reinterpret_cast<char*>(&re), 8);
            is.read(reinterpret_cast<char*>(&im), 8);
            m(i, j) = cdouble(re, im);
        }
    return m;
}

}  // namespace

void save_gamma_set(const std::filesystem::path& file, const GammaSet& g) {
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("save_gamma_set: cannot open " + tmp.string());
        os.write(kMagic, 8);
        put_u32(os, kVersion);
        put_u32(os, (uint32_t)g.group.k);
        put_u32(os, (uint32_t)g.twoS);
        put_u32(os, g.group.parity == Parity::Even ? 1 : 0);
        put_u64(os, (uint64_t)g.dim());
        put_u32(os, (uint32_t)g.gammas.size());
        put_u32(os, g.chirality.size() ? 1 : 0);
        char tag[32] = {0};
        std::strncpy(tag, g.construction.c_str(), sizeof(tag) - 1);
        os.write(tag, sizeof(tag));
        for (auto& m : g.gammas) put_matrix(os, m);
        for (auto& m : g.generators) put_matrix(os, m);
        if (g.chirality.size()) put_matrix(os, g.chirality);
        if (!os) throw std::runtime_error("save_gamma_set: write failed");
    }
    std::filesystem::rename(tmp, file);  // atomic publish
}

GammaSet load_gamma_set(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("load_gamma_set: cannot open " + file.string());
    char magic[8];
    is.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("load_gamma_set: bad magic in " + file.string());
    uint32_t version = get_u32(is);
    if (version != kVersion) throw std::runtime_error("load_gamma_set: unsupported version");
    GammaSet g;
    g.group.k = (int)get_u32(is);
    g.twoS = (int)get_u32(is);
    g.group.parity = get_u32(is) ? Parity::Even : Parity::Odd;
    long long dim = (long long)get_u64(is);
    uint32_t nmat = get_u32(is);
    bool has_chir = get_u32(is) != 0;
    char tag[32];
    is.read(tag, sizeof(tag));
    g.construction.assign(tag, strnlen(tag, sizeof(tag)));
    for (uint32_t i = 0; i < nmat; ++i) g.gammas.push_back(get_matrix(is, dim, dim));
    int n = g.n();
    for (int i = 0; i < n * (n - 1) / 2; ++i) g.generators.push_back(get_matrix(is, dim, dim));
    if (has_chir) g.chirality = get_matrix(is, dim, dim);
    if (!is) throw std::runtime_error("load_gamma_set: truncated file " + file.string());
    return g;
}

std::string gamma_set_to_json(const GammaSet& g) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"group\":\"" << g.group.name() << "\",\"twoS\":" << g.twoS << ",\"dim\":" << g.dim()
       << ",\"construction\":\"" << g.construction << "\",\"gammas\":[";
    for (size_t m = 0; m < g.gammas.size(); ++m) {
        if (m) os << ",";
        os << "[";
        const Matrix& M = g.gammas[m];
        for (long long i = 0; i < M.rows(); ++i) {
            if (i) os << ",";
            os << "[";
            for (long long j = 0; j < M.cols(); ++j) {
                if (j) os << ",";
                os << "[" << M(i, j).real() << "," << M(i, j).imag() << "]";
            }
            os << "]";
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

std::filesystem::path cache_path(const std::filesystem::path& dir, Group group, int twoS,
                                 const std::string& construction) {
    return dir / (group.name() + "_2s" + std::to_string(twoS) + "_" + construction + ".gam");
}

GammaSet cached_gamma_set(const std::filesystem::path& dir, Group group, int twoS,
                          const std::string& construction,
                          const std::function<GammaSet()>& make) {
    std::filesystem::create_directories(dir);
    auto file = cache_path(dir, group, twoS, construction);
    if (std::filesystem::exists(file)) {
        GammaSet g = load_gamma_set(file);
        if (g.group == group && g.twoS == twoS) return g;
    }
    GammaSet g = make();
    save_gamma_set(file, g);
    return g;
}

}  // namespace bloch
