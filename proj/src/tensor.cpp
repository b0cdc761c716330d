#include "histo/tensor.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace histo {

namespace {

constexpr char kMagic[4] = {'H', 'D', 'T', '1'};
constexpr std::uint8_t kDtypeF64 = 0;

static_assert(std::endian::native == std::endian::little,
              "tensor container IO assumes a little-endian host");

}  // namespace

void save_tensor_file(const Tensor& t, const std::filesystem::path& path) {
    if (t.dims.empty()) throw std::invalid_argument("save_tensor_file: dims must be nonempty");
    if (t.element_count() != t.data.size())
        throw std::invalid_argument("save_tensor_file: length mismatch between dims and data");

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("save_tensor_file: cannot open " + tmp.string());
        f.write(kMagic, 4);
        const std::uint8_t dtype = kDtypeF64;
        const std::uint8_t ndim = static_cast<std::uint8_t>(t.dims.size());
        f.write(reinterpret_cast<const char*>(&dtype), 1);
        f.write(reinterpret_cast<const char*>(&ndim), 1);
        f.write(reinterpret_cast<const char*>(t.dims.data()),
                static_cast<std::streamsize>(t.dims.size() * sizeof(std::uint32_t)));
        f.write(reinterpret_cast<const char*>(t.data.data()),
                static_cast<std::streamsize>(t.data.size() * sizeof(double)));
        if (!f) throw std::runtime_error("save_tensor_file: write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Tensor load_tensor_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_tensor_file: cannot open " + path.string());

    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_tensor_file: bad magic in " + path.string());

    std::uint8_t dtype = 0, ndim = 0;
    f.read(reinterpret_cast<char*>(&dtype), 1);
    f.read(reinterpret_cast<char*>(&ndim), 1);
    if (!f) throw std::runtime_error("load_tensor_file: truncation in " + path.string());
    if (dtype != kDtypeF64)
        throw std::runtime_error("load_tensor_file: unsupported dtype tag " + std::to_string(dtype));
    if (ndim == 0) throw std::runtime_error("load_tensor_file: zero-dimensional tensor");

    Tensor t;
    t.dims.resize(ndim);
    f.read(reinterpret_cast<char*>(t.dims.data()),
           static_cast<std::streamsize>(ndim * sizeof(std::uint32_t)));
    if (!f) throw std::runtime_error("load_tensor_file: truncation in " + path.string());

    const std::size_t n = t.element_count();
    t.data.resize(n);
    f.read(reinterpret_cast<char*>(t.data.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!f || static_cast<std::size_t>(f.gcount()) != n * sizeof(double))
        throw std::runtime_error("load_tensor_file: length mismatch (truncation) in " + path.string());

    // trailing bytes also indicate a corrupt container
    f.peek();
    if (!f.eof())
        throw std::runtime_error("load_tensor_file: length mismatch (trailing bytes) in " +
                                 path.string());
    return t;
}

}  // namespace histo
